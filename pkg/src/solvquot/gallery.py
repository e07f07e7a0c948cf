"""Built-in example specs."""

from __future__ import annotations

from pathlib import Path

EXAMPLES: dict[str, str] = {
    "weitzenboeck": """\
# additive group acting through the Weitzenboeck derivation
field Q
vars x y w
unipotent z1
map x = x + y*z1
map y = y
map w = w + x*z1 + (1/2)*y*z1^2
""",
    "charp_slice": """\
# in characteristic 2 the slice x has degree 2
field Fp 2
vars x y
unipotent z1
map x = x + y*z1 + z1^2
map y = y
""",
    "shear": """\
field Q
vars x1 x2
unipotent z1
map x1 = x1 + x2*z1
map x2 = x2
""",
    "scaling": """\
field Q
vars x1 x2
torus t1
map x1 = t1*x1
map x2 = t1*x2
""",
    "ga_gm": """\
# additive and multiplicative factor on Q[x, y, u]
field Q
vars x y u
unipotent z1
torus t1
char z1 = 1
map x = t1*x + t1*y*z1
map y = t1*y
map u = u
""",
    "affine_diagonal": """\
# x -> a x + b acting diagonally on two points
field Q
vars x1 x2
unipotent z1
torus t1
char z1 = t1
map x1 = t1*x1 + z1
map x2 = t1*x2 + z1
""",
}


def write_examples(directory: str | Path, force: bool = False) -> list[Path]:
    """Write every example as ``<name>.sq``; refuses to touch an existing
    directory unless ``force``."""
    d = Path(directory)
    if d.exists() and not force:
        raise FileExistsError(f"{d} exists; use --force to overwrite")
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, text in EXAMPLES.items():
        p = d / f"{name}.sq"
        p.write_text(text)
        out.append(p)
    return out
