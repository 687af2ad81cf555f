"""Tour of plane foliations: degrees, flows that preserve them, tangency forms.

Run:  python demos/01_plane_foliations_and_flows.py
"""

from webfol import (
    NonGenericLineError,
    Polynomial,
    SymForm,
    flow_preserves,
    lie_derivative,
    restrict_to_line,
)

x, y, z = Polynomial.variables(3)
zero = Polynomial.zero(3)

print("A degree-2 foliation of the projective plane, written in homogeneous")
print("coordinates as  -y z^2 dx + (x z^2 + y^2 z) dy - y^3 dz:")
form = SymForm(
    2, 1, {(1, 0, 0): -y * z * z, (0, 1, 0): x * z * z + y * y * z, (0, 0, 1): -y ** 3}
)
print(f"  web degree d = {form.degree}, so the canonical degree is d - 1 = {form.degree - 1}")
print(f"  radial contraction vanishes: {form.euler_contraction().is_zero}")

print()
print("The shear field y d/dx generates a flow; its Lie derivative on the form:")
shear = [y, zero, zero]
print(f"  L_v omega = {lie_derivative(shear, form).render()}")
print(f"  flow preserves the foliation: {flow_preserves(shear, form)}")

print()
print("Not every linear flow works; the diagonal field x d/dx fails:")
print(f"  flow preserves: {flow_preserves([x, zero, zero], form)}")

print()
print("The radial foliation x dy - y dx (lines through one point) has d = 0")
radial = SymForm(2, 1, {(1, 0, 0): -y, (0, 1, 0): x})
print(f"  canonical degree {radial.degree - 1}")

print()
print("Restricting to a line counts tangencies.  On the far line z = 0 the")
print("radial form restricts to the constant binary form:")
binary = restrict_to_line(radial, [1, 0, 0], [0, 1, 0])
print(f"  degree {binary.degree}, coefficients {[str(c) for c in binary.coefficients]}")

print()
print("Lines through the centre (0:0:1) are leaves, so the restriction degenerates:")
try:
    restrict_to_line(radial, [0, 0, 1], [1, 0, 0])
except NonGenericLineError as exc:
    print(f"  refused: {exc}")

print()
print("On the degree-2 example a generic line sees d = 2 tangency points:")
binary = restrict_to_line(form, [1, 0, 1], [0, 1, 1])
print(f"  binary form of degree {binary.degree}: coefficients "
      f"{[str(c) for c in binary.coefficients]}")
