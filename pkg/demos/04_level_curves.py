"""Level curves and maximum points as SVG files, in the style of a two-panel figure.

Writes into ``demos/out/``.  The closed-form domains are sampled on a
400 x 400 grid; the polygon uses the finite-element mesh.
"""
import pathlib

from maxloc import cli

here = pathlib.Path(__file__).parent
out = here / "out"
out.mkdir(exist_ok=True)

runs = [
    ["--domain", "right-isosceles", "--problem", "torsion"],
    ["--domain", "right-isosceles", "--problem", "groundstate"],
    ["--domain", "half-disk", "--problem", "torsion"],
    ["--domain", "half-disk", "--problem", "groundstate"],
    ["--polygon", str(here / "figure1_triangle.txt"), "--problem", "torsion", "--level", "5"],
    ["--polygon", str(here / "figure1_triangle.txt"), "--problem", "groundstate", "--level", "5"],
]
for i, args in enumerate(runs):
    where = "polygon" if args[0] == "--polygon" else args[1]
    name = f"{where}_{args[3]}"
    path = out / f"{i:02d}_{name}.svg"
    cli.main(["plot", *args, "--out", str(path)])
    print("wrote", path)
