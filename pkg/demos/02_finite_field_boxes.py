#!/usr/bin/env python3
"""GF(q^n) arithmetic, traces, and box sums.

The field is modeled with an explicit monic irreducible modulus and a
power-basis coordinate system, so a "box" is the set of elements whose
coordinates lie in [1, H].  Multiplicative characters read off the dlog
table; additive characters come from the trace map.
"""

import numpy as np

from charsumlab import (FieldCharacter, RealPolynomial, additive_char,
                        box_elements, box_mixed_sum, build_field, fmul, trace)

spec = build_field(7, 2)
print(f"GF(49) with modulus polynomial {spec.modpoly} (low degree first)")
print(f"generator has coordinates {spec.generator.coeffs}")

x = spec.element((0, 1))
print(f"\nx * x = {fmul(x, x).coeffs}   (reduction mod the modulus)")
print(f"Tr(x) = {trace(spec, x)}, Tr(1) = {trace(spec, spec.one())}")

a = spec.element((1, 1))
psi_sum = sum(additive_char(spec, a, spec.from_encoding(e)) for e in range(spec.size))
print(f"|sum of the additive character| = {abs(psi_sum):.2e}  (orthogonality)")

chi = FieldCharacter(spec, 5)
print(f"\nmultiplicative character with index 5 has order {chi.order}")

box = box_elements(spec, 3)
print(f"the 3^2 box holds {len(box)} distinct elements")

F = RealPolynomial.from_terms(2, {(1, 0): 0.2, (0, 2): 0.45, (1, 1): 0.13})
for H in (2, 3, 4, 5, 6):
    s = box_mixed_sum(chi, F, H)
    print(f"  H = {H}:  |box sum| = {abs(s):7.4f}   trivial bound {H**2}")

encs = np.arange(spec.size)
vals = chi.value_many(encs)
print(f"\n|sum of chi over the whole field| = {abs(vals.sum()):.2e}")
