"""Check kernel identities degree by degree at a rational parameter point.

Run with ``python3 demos/kernel_identity.py``.
"""

from qmacdo import Ring
from qmacdo.kernels import verify_kernel_identity

q, t = "2/3", "5/2"
full = Ring(x=1, y=1, z=1, w=1, q=q, t=t)
no_w = Ring(x=1, y=1, z=1, q=q, t=t)


def summary(label, checks):
    bad = [c for c in checks if not c.ok]
    print(f"{label:<40} {len(checks) - len(bad)}/{len(checks)} residuals vanish")


for family in ("H", "D"):
    summary(f"Phi kernel, family {family}, (1,1;1,1)", verify_kernel_identity(family, full, 2, 3))

summary("Psi kernel, (1,1;1,0)", verify_kernel_identity("H", no_w, 2, 3, kernel="psi"))
summary("Psi kernel, (1,1;1,1)", verify_kernel_identity("H", full, 2, 3, kernel="psi"))
summary("dilated Psi kernel, (1,1;1,1)", verify_kernel_identity("H", full, 2, 3, kernel="psi-dilated"))
