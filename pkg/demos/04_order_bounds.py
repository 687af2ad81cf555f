"""Exact order bounds for web and foliation symmetries, at any integer size.

Run:  python demos/04_order_bounds.py
"""

from webfol import (
    CharNumbers,
    duality_transform,
    foliation_aut_bound,
    int_to_decimal,
    pluricanonical_multiple,
    section_bound,
    tangency_numbers,
    very_ampleness_threshold,
    web_aut_bound,
)

print("Order bound (d + 2k)^((N+1)^2 - 1) for k-webs of degree d on P^N:")
print("  d  k  N  bound")
for d, k, n in ((0, 1, 2), (1, 1, 2), (2, 1, 2), (3, 1, 2), (1, 2, 2), (2, 3, 2), (1, 1, 3)):
    print(f"  {d}  {k}  {n}  {web_aut_bound(d, k, n)}")

print()
print("For plane foliations (k = 1, N = 2) this reads (d + 2)^8.")

print()
print("The bound for a foliation with ample canonical bundle on a surface is")
print("driven by two intersection numbers.  The smallest interesting case,")
print("(KF^2, KF.KX) = (1, -3):")
report = foliation_aut_bound(1, -3)
print(f"  pluricanonical multiple        m = {report.m}")
print(f"  section cap                    h0 <= {report.h0_cap} (ambient cap N <= {report.n_cap})")
print(f"  tangency numbers               {report.d_n2} and {report.d_n1}")
print(f"  final bound                    {report.base}^{report.exponent}")
print(f"  which has                      {report.digit_count} decimal digits")
decimal = int_to_decimal(report.final_bound)
print(f"  first digits: {decimal[:40]}...")
print(f"  last digits:  ...{decimal[-20:]}")

print()
print("Behind m sits the effective very-ampleness threshold for the bundle:")
for l2, lkx in ((1, -3), (1, 0), (2, -1)):
    k0, least = very_ampleness_threshold(l2, lkx)
    m = pluricanonical_multiple(l2, lkx)
    print(f"  (L^2, L.KX) = ({l2}, {lkx}): threshold k0 = {k0}, "
          f"least valid multiple {least}, bound uses m = {m} > k0")

print()
print("A second pair, (1, 0), pushes past two million digits but stays exact:")
big = foliation_aut_bound(1, 0)
print(f"  m = {big.m}, bound {big.base}^{big.exponent}, {big.digit_count} digits")

print()
print("Characteristic-number bookkeeping for the dual pair reverses the vector:")
d_n2, d_n1 = tangency_numbers(7, 1)
numbers = CharNumbers(values=tuple([0] * 48 + [d_n2, d_n1]), N=50)
dual = duality_transform(numbers)
print(f"  positions N-2, N-1 carry {d_n2}, {d_n1}; the dual web on the dual space")
print(f"  has multidegree {dual.values[0]} and degree {dual.values[1]}")
print(f"  h0 cap from the section bound: {section_bound(7, 1)}")
