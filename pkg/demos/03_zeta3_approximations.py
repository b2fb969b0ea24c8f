#!/usr/bin/env python3
"""zeta(3) from exponential-series truncations.

The exponential-series identity behind the P family turns, at k = 2 and
truncation depth 1, into a closed-form-like approximation: solve a two-term
exponential equation near a unit-circle root of z^4 + 5z^2 + 1 =
(90 zeta(3)/pi^3)(z^3 + z) and read zeta(3) back off the polynomial.  A second
scheme does the same through Q_2.  The identity itself (and the sech-series
companion for S_k) is verified with certified residual enclosures.
"""

from fractions import Fraction

from mpmath import mp

from circlezero import approx1_zeta3, approx2_zeta3, zeta_odd
from circlezero.approx import (
    auxiliary_zeros,
    ramanujan_identity_residual,
    sech_identity_residual,
)

F = Fraction

ref = zeta_odd(3, 192)
print(f"certified zeta(3) = {mp.nstr(ref.midpoint, 30)} (+/- {mp.nstr(ref.radius, 3)})")

for result in (approx1_zeta3(128), approx2_zeta3(128)):
    est = mp.nstr(result.zeta3_estimate.midpoint, 12)
    print(f"\n{result.scheme}: root z = {mp.nstr(result.root.re.midpoint, 8)} "
          f"{mp.nstr(result.root.im.midpoint, 8)} i")
    print(f"  estimate {est}  ->  {result.matched_decimals} leading digits match")
    print(f"  constraint residual < {float(result.constraint_residual.upper):.1e} "
          f"after {result.newton_steps} Newton steps")

print("\nidentity residuals (certified enclosures containing 0):")
for k, z in ((2, (F(1), F(0))), (5, (F(3, 2), F(0))), (3, (F(3, 10), F(7, 10)))):
    se = ramanujan_identity_residual(k, z, None, bits=192)
    zs = f"{z[0]}" if z[1] == 0 else f"{z[0]}+{z[1]}i"
    print(f"  exponential identity k={k}, z={zs}: N={se.n_terms}, "
          f"width {se.residual_width():.1e}, contains 0: {se.encloses_zero()}")
for k, z in ((1, F(1)), (4, F(1, 2))):
    se = sech_identity_residual(k, z, None, bits=192)
    print(f"  sech identity k={k}, z={z}: N={se.n_terms}, "
          f"width {se.residual_width():.1e}, contains 0: {se.encloses_zero()}")

print("\nauxiliary-function zeros vs the roots of P_k:")
for k in (2, 4):
    pairs = auxiliary_zeros(k, 128)
    dists = [p.distance for p in pairs if p.converged]
    print(f"  k={k}: {len(dists)}/{len(pairs)} pairings converged, "
          f"distances {min(dists):.2e} .. {max(dists):.2e}")
