"""Walk through the exact series pipeline.

A p-valent planar map with a spanning forest gets weight z per face and u
per non-root tree.  The generating function F(z, u) comes from a pair of
implicitly defined series (R, S); this script solves them order by order,
prints the first coefficients, and shows the (u+1)-positivity that makes
the whole range u >= -1 combinatorially meaningful.
"""

from forestmaps.series import ZSeries
from forestmaps.solver import solve
from forestmaps.upoly import UPoly

print("=== cubic maps (p = 3), symbolic u ===")
out = solve(3, 6)
print("R =", out.R)
print()
print("F =", out.F)
print()
print("The z^3 coefficient 6 + 4u says: ten forested cubic maps with 3 faces,")
print("six carrying a spanning tree and four a two-component forest.")
print()

print("=== leaf-rooted and root-edge-outside variants ===")
print("G =", out.G)
print("H =", out.H)
print()

print("=== the shifted variable mu = u + 1 ===")
z = ZSeries.z(6, UPoly(), UPoly((1,)))
for label, series in (
    ("(R - z)/u", (out.R - z).divide_by_u()),
    ("S / u", out.S.divide_by_u()),
    ("S~ / u", out.S_tilde.divide_by_u()),
):
    mu = series.to_mu()
    flag = all(c.nonneg() for c in mu.coeffs)
    print("%-10s in mu: %s" % (label, mu))
    print("           all mu-coefficients nonnegative:", flag)
print()
print("Nonnegativity in mu is what lets u run down to -1: it rewrites the")
print("forest weights as weights on tree-rooted maps by internal activity.")
