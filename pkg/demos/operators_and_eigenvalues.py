"""Walk through super-Macdonald polynomials and the deformed operator families.

Run with ``python3 demos/operators_and_eigenvalues.py``.
"""

from qmacdo import Partition, Ring, fat_hook_contains
from qmacdo import diffops as ops
from qmacdo import spectra
from qmacdo.superpoly import is_in_Lambda_nm, super_P

R = Ring(x=1, y=1)  # q, t symbolic
lam = Partition((2, 1))

sp = super_P(lam, R)
print(f"SP_{lam.to_text()}(x1; y1) =\n  {sp}\n")
print("quasi-invariant:", is_in_Lambda_nm(sp))

# SP_lam vanishes exactly outside the fat (n, m)-hook
box = Partition((2, 2))
print(f"(2,2) in the (1,1)-hook: {fat_hook_contains(1, 1, box)};  SP_(2,2) == 0: {super_P(box, R).is_zero()}\n")

# Eigenvalue of the second NS-type operator is g_2 evaluated on the spectral vector
H = ops.ns_series(R, 2)
point = spectra.spectral_vector(lam, 1, 1, R)
g2 = R.scalars()(spectra.G_natural(R, 2)[2].substitute(point))
print("spectral vector:", {k: str(v) for k, v in point.items()})
print("eigenvalue of H^2:", g2)
print("H^2 SP - g_2 SP == 0:", (H[2].apply(sp) - R(g2) * sp).is_zero(), "\n")

# The two families commute as operators
D = ops.mr_series_swap(R, 2)
print("[H^1, D^2] is the zero operator:", ops.commutator(H[1], D[2]).is_zero())
print("Wronski relation at k = 3 holds as an operator:", ops.wronski_operator(3, R).is_zero())
