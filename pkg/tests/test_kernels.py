import random
from fractions import Fraction as F

import pytest

from qmacdo.diffops import ns_series
from qmacdo.errors import BasisError, PoleError, TruncationTooSmall
from qmacdo.kernels import (
    apply_at_point,
    heine_sides,
    kajihara_phi,
    kernel_bank_swap_residual,
    kernel_param_swap_residual,
    phi_kernel,
    pi_kernel,
    psi_kernel,
    restriction_image,
    verify_kajihara,
    verify_kernel_identity,
    verify_restriction,
)
from qmacdo.field import qpochhammer
from qmacdo.partitions import Partition
from qmacdo.ring import Ring, TruncSeries

QE, TE = F(2, 3), F(5, 2)


def test_phi_kernel_small_cases():
    R = Ring(x=1, z=1)
    assert phi_kernel(R, 0).to_mrat().is_one()
    x1, z1, q, t = R.var("x", 1), R.var("z", 1), R.q, R.t
    assert phi_kernel(R, 1).to_mrat() == 1 + (1 - t) / (1 - q) / t * x1 * z1
    R2 = Ring(y=1, z=1)
    assert phi_kernel(R2, 2).to_mrat() == 1 - R2.var("y", 1) * R2.var("z", 1)


def test_kernel_constant_term_and_degree():
    R = Ring(x=1, y=1, z=2, w=1, q=QE, t=TE)
    s = phi_kernel(R, 3)
    assert s.terms[(0, 0, 0)].is_one()
    assert all(sum(k) <= 3 for k in s.terms)


def test_psi_kernel_small_cases():
    R = Ring(x=1, y=1, z=1, w=1)
    assert psi_kernel(R, 0).to_mrat().is_one()
    R0 = Ring(y=2, z=1)
    t = R0.t
    expect = (1 - t * R0.var("y", 1) * R0.var("z", 1)) * (1 - t * R0.var("y", 2) * R0.var("z", 1))
    assert psi_kernel(R0, 4).to_mrat() == expect


@pytest.mark.parametrize("n,m,N", [(1, 1, 1), (2, 1, 2), (1, 2, 1)])
def test_psi_is_dilated_phi_without_w(n, m, N):
    R = Ring(x=n, y=m, z=N)
    t = R.t
    dil = {v: t * R.var(v[0], int(v[1:])) for v in R.names if v[0] in "xy"}
    phi = TruncSeries.from_mrat(phi_kernel(R, 2).to_mrat().substitute(dil), ("z", "w"), 2)
    assert psi_kernel(R, 2) == phi == pi_kernel(R, 2)
    assert psi_kernel(R, 2, "dilated") == psi_kernel(R, 2)


def test_pi_kernel_rejects_w():
    with pytest.raises(ValueError):
        pi_kernel(Ring(x=1, z=1, w=1), 2)
    with pytest.raises(ValueError):
        psi_kernel(Ring(x=1, z=1), 2, "other")


def test_kajihara_phi_basics():
    q = F(3, 7)
    s = kajihara_phi([F(2, 5)], [F(1)], [F(-3, 4)], [F(5, 3)], q, 0)
    assert s.coeffs == [1]
    a, b, c = F(2, 5), F(-3, 4), F(5, 3)
    X = F(7, 2)
    s = kajihara_phi([a], [X], [b], [c], q, 4)
    for k in range(5):
        expect = qpochhammer(a, q, k) * qpochhammer(b * X, q, k) / (qpochhammer(q, q, k) * qpochhammer(c * X, q, k))
        assert s[k] == expect
    assert kajihara_phi([a], [F(1)], [b], [c], q, 1)[1] == (1 - a) * (1 - b) / ((1 - q) * (1 - c))


def test_kajihara_pole():
    with pytest.raises(PoleError):
        kajihara_phi([F(2)], [F(1)], [F(3)], [F(1)], F(1, 2), 2)


def test_heine_symbolic():
    S = Ring()
    q, t = S.q, S.t
    a, b, c = q * t, 3 * t, t**2 / 5
    lhs, rhs = heine_sides(a, b, c, q, 4)
    assert all((lhs[r] - rhs[r]).is_zero() for r in range(5))


def _params(rng, K, L):
    def r():
        v = F(rng.randint(2, 30), rng.randint(2, 30))
        return v if v != 1 else F(3, 7)
    return {"q": r(), "a": [r() for _ in range(K)], "X": [r() for _ in range(K)], "b": [r() for _ in range(L)],
            "Y": [r() for _ in range(L)], "c": r()}


@pytest.mark.parametrize("K,L", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_kajihara_transformation(K, L):
    rng = random.Random(K * 10 + L)
    checks = verify_kajihara(K, L, _params(rng, K, L), 3)
    assert checks and all(c.ok for c in checks)
    forms = {c.instance.split("form=")[1] for c in checks}
    assert forms == ({"general", "specialised", "heine"} if K == L == 1 else {"general", "specialised"})


def test_kajihara_detects_a_perturbation():
    from qmacdo.kernels import kajihara_sides

    p = _params(random.Random(9), 2, 1)
    lhs, rhs = kajihara_sides(p["a"], p["X"], p["b"], p["Y"], p["c"], p["q"], 3)
    p["c"] += F(1, 1000)
    _, rhs2 = kajihara_sides(p["a"], p["X"], p["b"], p["Y"], p["c"], p["q"], 3)
    assert lhs.coeffs == rhs.coeffs
    assert lhs.coeffs != rhs2.coeffs


@pytest.mark.parametrize("family", ["H", "D"])
def test_kernel_identity_small(family):
    R = Ring(x=1, y=1, z=1, w=1, q=QE, t=TE)
    checks = verify_kernel_identity(family, R, 2, 3)
    assert [c.index for c in checks] == ["r=0", "r=1", "r=2"]
    assert all(c.ok for c in checks)


def test_kernel_identity_mixed_ranks():
    R = Ring(x=2, y=1, z=1, w=2, q=F(-3, 4), t=F(7, 5))
    assert all(c.ok for c in verify_kernel_identity("D", R, 2, 3))


def test_kernel_identity_fails_for_mismatched_kernel():
    """Replacing the kernel by a plain Cauchy-type product must break the identity."""
    R = Ring(x=1, y=1, z=1, w=1, q=QE, t=TE)
    import qmacdo.kernels as K

    orig = K.phi_kernel
    K.phi_kernel = lambda ring, d: orig(ring, d) * TruncSeries.from_mrat(1 - ring.var("x", 1) * ring.var("z", 1), ("z", "w"), d)
    try:
        checks = verify_kernel_identity("H", R, 1, 2)
    finally:
        K.phi_kernel = orig
    assert not checks[1].ok


def test_psi_kernel_identity_without_w():
    R = Ring(x=1, y=1, z=1, q=QE, t=TE)
    assert all(c.ok for c in verify_kernel_identity("H", R, 2, 4, kernel="psi"))
    with pytest.raises(ValueError):
        verify_kernel_identity("D", R, 1, 2, kernel="psi")


def test_psi_stated_form_needs_dilation_once_w_is_present():
    R = Ring(x=1, y=1, z=1, w=1, q=F(2, 3), t=F(5, 7))
    stated = verify_kernel_identity("H", R, 2, 3, kernel="psi")
    dilated = verify_kernel_identity("H", R, 2, 3, kernel="psi-dilated")
    assert not all(c.ok for c in stated)
    assert all(c.ok for c in dilated)


def test_negative_degree():
    with pytest.raises(TruncationTooSmall):
        verify_kernel_identity("H", Ring(x=1, z=1), 1, -1)


def test_bank_and_parameter_swaps():
    E = Ring(q=QE, t=TE)
    assert kernel_bank_swap_residual(E, 2, 1, 1, 2, 3).is_zero()
    assert kernel_param_swap_residual(Ring(), 1, 1, 1, 1, 3).is_zero()
    with pytest.raises(ValueError):
        kernel_param_swap_residual(E, 1, 1, 1, 1, 2)


def test_apply_at_point_matches_symbolic_apply():
    R = Ring(z=2, q=QE, t=TE)
    op = ns_series(R, 2, ("z", "w"))[2]
    f = R.var("z", 1) ** 2 + R.var("z", 2)
    S = R.scalars()
    point = {"z1": S(F(3, 5)), "z2": S(F(-7, 4))}
    assert apply_at_point(op, f, point) == S.convert(op.apply(f), point)


def test_restriction_examples():
    R = Ring(x=1, y=1, q=QE, t=TE)
    for fam in ("H", "D"):
        checks = verify_restriction(fam, 1, R, 1)
        assert len(checks) == 4 and all(c.ok for c in checks)
    img = restriction_image("H", 0, (1,), 3, R)
    assert img == {Partition((1,)): R.scalars().one}


def test_restriction_needs_enough_variables():
    with pytest.raises(BasisError):
        restriction_image("H", 1, (2, 1), 2, Ring(q=QE, t=TE))
