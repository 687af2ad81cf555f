"""Webs, their projective symmetries, and the polynomial system that cuts them out.

Run:  python demos/02_webs_and_symmetries.py
"""

from webfol import (
    Polynomial,
    ProjMap,
    SymForm,
    SymTensor,
    export_system,
    group_closure,
    invariance_system,
    preserves,
    preserving_candidates,
    pullback,
    verify_bound,
    web_aut_bound,
)

x, y, z = Polynomial.variables(3)

print("The pencil of conics x y = c z^2 is the foliation yz dx + xz dy - 2xy dz.")
conic = SymForm(2, 1, {(1, 0, 0): y * z, (0, 1, 0): x * z, (0, 0, 1): -2 * x * y})
print(f"  web degree d = {conic.degree}")

swap = ProjMap.swap(3, 0, 1)
print(f"  swapping x and y preserves it: {preserves(swap, conic)}")
print(f"  pullback equals the form itself: {pullback(swap, conic).coeffs == conic.coeffs}")

group = group_closure([swap], conic)
bound = web_aut_bound(conic.degree, conic.k, conic.N)
print(f"  closure of the swap: order {group.order}; exact order bound "
      f"(d+2k)^((N+1)^2-1) = {bound}")
print(f"  order respects the bound: {verify_bound(group.order, conic.degree, conic.k, conic.N)}")

print()
print("A fully symmetric pencil, spanned by x^3 + y^3 + z^3 and xyz:")
F, G = x ** 3 + y ** 3 + z ** 3, x * y * z
sym = SymForm(2, 1, {
    (1, 0, 0): F * G.partial(0) - G * F.partial(0),
    (0, 1, 0): F * G.partial(1) - G * F.partial(1),
    (0, 0, 1): F * G.partial(2) - G * F.partial(2),
})
cycle = ProjMap.permutation([1, 2, 0])
print(f"  web degree d = {sym.degree}")
print(f"  the 3-cycle alone generates order {group_closure([cycle], sym).order}")
full = group_closure([swap, cycle], sym)
print(f"  swap and 3-cycle together generate order {full.order}")

print()
print("Generators need not be guessed: searching the 24 signed permutation")
print("matrices certifies each group from below, the bound from above.")
for label, web in (("conic pencil", conic), ("symmetric pencil", sym)):
    found = preserving_candidates(web)
    order = group_closure(found, web).order
    bound = web_aut_bound(web.degree, web.k, web.N)
    print(f"  {label}: {len(found)} preservers found, closure order {order}, "
          f"bound {bound}")

print()
print("Symmetries are the zeros of an explicit polynomial system in the 9 matrix")
print("entries.  For the radial foliation sampled at (1,1,1):")
radial = SymForm(2, 1, {(1, 0, 0): -y, (0, 1, 0): x})
system = invariance_system(radial, [[1, 1, 1]])
print(export_system(system, "text"))

print("Every generator vanishes on every symmetry found above (here: the identity):")
values = system.evaluate_at_matrix(ProjMap.identity(3))
print(f"  values at the identity matrix: {[str(v) for v in values]}")

print()
print("A 2-web: the superposition of two line pencils, as a symmetric square.")
alpha = SymTensor(3, 1, {(1, 0, 0): -y, (0, 1, 0): x})
beta = SymTensor(3, 1, {(0, 1, 0): -z, (0, 0, 1): y})
web = SymForm.from_tensor(alpha.sym_mul(beta))
print(f"  k = {web.k}, web degree d = {web.degree}, "
      f"bound {web_aut_bound(web.degree, web.k, web.N)}")
