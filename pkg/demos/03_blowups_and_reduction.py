"""Blowing up plane foliations: exceptional orders, dicritical points, transport.

Run:  python demos/03_blowups_and_reduction.py
"""

from webfol import (
    LocalFoliation,
    Polynomial,
    SurfaceNumbers,
    blowup_point,
    canonical_transform,
    reduced_check,
)

x, y = Polynomial.variables(2)
zero = Polynomial.zero(2)
one = Polynomial.constant(2, 1)

print("Three classic local pictures, blown up at the origin.")
for name, foliation in (
    ("regular point   dy           ", LocalFoliation(zero, one)),
    ("saddle          y dx + x dy  ", LocalFoliation(y, x)),
    ("radial          x dy - y dx  ", LocalFoliation(-y, x)),
):
    result = blowup_point(foliation)
    chart = (f"({result.chart1.a.render(['x', 't'])}) dx "
             f"+ ({result.chart1.b.render(['x', 't'])}) dt")
    print(f"  {name} ->  l = {result.l}, dicritical = {str(result.dicritical):5}  "
          f"chart 1: {chart}")

print()
print("The exceptional order l drives the canonical intersection numbers:")
numbers = SurfaceNumbers(kf2=1, kfkx=-3)
print(f"  start at (KF^2, KF.KX) = ({numbers.kf2}, {numbers.kfkx})")
for l, label in ((1, "reduced singularity"), (0, "regular point"), (2, "radial-type")):
    moved = canonical_transform(numbers, l)
    print(f"  l = {l} ({label:19}) -> ({moved.kf2}, {moved.kfkx})")
print("  A reduced singularity changes nothing, so blowing down towards a")
print("  minimal model only ever crosses regular points or reduced singularities.")

print()
print("Reducedness of a singularity is decided exactly from the linear part:")
cases = [
    ("diag(1, -1)  saddle      ", [[1, 0], [0, -1]]),
    ("diag(1, 1)   radial      ", [[1, 0], [0, 1]]),
    ("diag(1, 0)   saddle-node ", [[1, 0], [0, 0]]),
    ("[[0,1],[0,0]] nilpotent  ", [[0, 1], [0, 0]]),
    ("[[2,1],[1,2]] ratio 3    ", [[2, 1], [1, 2]]),
    ("[[2,1],[2,2]] ratio 3+2V2", [[2, 1], [2, 2]]),
    ("[[0,-1],[1,0]] rotation  ", [[0, -1], [1, 0]]),
]
for label, matrix in cases:
    result = reduced_check(matrix)
    verdict = "reduced" if result.reduced else f"NOT reduced ({result.reason}"
    if result.quotient is not None:
        verdict += f" = {result.quotient}"
    if not result.reduced:
        verdict += ")"
    print(f"  {label} -> {verdict}")

print()
print("The cusp form d(y^2 - x^3) needs one blow-up step of its resolution:")
cusp = LocalFoliation(-3 * x * x, 2 * y)
result = blowup_point(cusp)
print(f"  l = {result.l}, dicritical = {result.dicritical}")
print(f"  chart 1: ({result.chart1.a.render(['x', 't'])}) dx "
      f"+ ({result.chart1.b.render(['x', 't'])}) dt")
print("  Compose further blow-ups by feeding a chart back into blowup_point")
print("  after recentring at the singular point of interest.")
