import random
from fractions import Fraction

import pytest

from qmacdo.diffops import deformed_MR, deformed_NS, hat_variant
from qmacdo.errors import BasisError
from qmacdo.partitions import Partition, fat_hook_contains, partitions_up_to
from qmacdo.ring import Ring, USeries
from qmacdo.spectra import (
    E_natural,
    E_natural_coeff,
    G_natural,
    G_natural_coeff,
    duality_residuals,
    evaluate_at,
    exp_log_residuals,
    expand_in_p_star,
    g_star_independence,
    g_star_stability_residual,
    harish_chandra_violations,
    is_in_Lambda_natural,
    jacobian_determinant,
    jacobian_independence,
    jacobian_witness,
    newton_residual,
    p_natural,
    p_star_product,
    phi_natural,
    script_E,
    script_G,
    script_G_hook,
    shifted_g_star,
    shifted_p_star,
    spectral_vector,
    wronski_scalar_check,
)
from qmacdo.superpoly import super_P

P = Partition


def useries_equal(a: USeries, b: USeries, order: int) -> bool:
    return all(a[r] == b[r] for r in range(order + 1))


def test_first_coefficients():
    R = Ring(x=1)
    x1, q, t = R.var("x", 1), R.q, R.t
    assert G_natural_coeff(0, R).is_one() and E_natural_coeff(0, R).is_one()
    assert G_natural_coeff(1, R) == (1 - t) / (1 - q) * (x1 - 1)
    assert E_natural_coeff(1, R) == x1 - 1
    assert p_natural(1, R) == x1 - 1


def test_p_natural_formula():
    R = Ring(x=2, y=2)
    q, t = R.q, R.t
    x1, x2 = R.bank("x")
    y1, y2 = R.bank("y")
    r = 2
    expect = (x1**r - 1) + (x2**r - 1) * t ** (-r) + (1 - q**r) / (1 - t ** (-r)) * (
        (y1**r - t ** (-2 * r)) + (y2**r - t ** (-2 * r)) * q**r
    )
    assert p_natural(r, R) == expect
    with pytest.raises(ValueError):
        p_natural(0, R)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_p_natural_vanishes_at_empty_partition(n, m):
    R = Ring(x=n, y=m)
    point = spectral_vector((), n, m, R)
    for r in range(1, 4):
        assert evaluate_at(p_natural(r, R), point).is_zero()


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_newton(n, m):
    R = Ring(x=n, y=m, q=Fraction(2, 3), t=Fraction(5, 2))
    for r in range(1, 6):
        assert newton_residual(r, R).is_zero()


def test_newton_symbolic():
    R = Ring(x=2, y=1)
    for r in range(1, 5):
        assert newton_residual(r, R).is_zero()


def test_wronski_scalar():
    R = Ring(x=1)
    q, t = R.q, R.t
    assert (1 - q) * G_natural_coeff(1, R) - (1 - t) * E_natural_coeff(1, R) == R.zero
    R22 = Ring(x=2, y=2)
    for k in range(1, 5):
        assert wronski_scalar_check(k, R22)
    R0 = Ring()
    for k in range(1, 4):
        assert wronski_scalar_check(k, R0)


def test_wronski_detects_a_wrong_sign():
    R = Ring(x=1, y=1)
    G, E = G_natural(R, 2), E_natural(R, 2)
    q, t = R.q, R.t
    # drop the alternating sign (E[r] already carries (-1)^r e_r) and the identity must fail
    bad = sum(((1 - t**r * q ** (2 - r)) * (-1) ** r * E[r] * G[2 - r] for r in range(3)), R.zero)
    assert not bad.is_zero()


def test_telescoping_of_E():
    R = Ring(x=1, y=1)
    point = spectral_vector((2, 1), 1, 1, R)
    E = E_natural(R, 3)
    tele = script_E((2, 1), R, 3)
    for r in range(4):
        assert evaluate_at(E[r], point) == R(tele[r])


def test_script_G_examples():
    S = Ring()
    G = script_G((), S, 3)
    assert G[0].is_one() and all(G[r].is_zero() for r in range(1, 4))
    G1 = script_G((1,), S, 2)
    assert G1[1] == -(1 - S.t)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2)])
def test_script_G_paths_agree(n, m):
    R = Ring(x=n, y=m)
    for lam in partitions_up_to(5):
        if not fat_hook_contains(n, m, lam):
            continue
        direct = script_G(lam, R, 3)
        assert useries_equal(direct, script_G_hook(lam, n, m, R, 3), 3)
        if lam.size <= 4:
            point = spectral_vector(lam, n, m, R)
            G = G_natural(R, 3)
            for r in range(4):
                assert evaluate_at(G[r], point) == R(direct[r])


def test_spectral_vector():
    R = Ring(x=2, y=1)
    q, t = R.q, R.t
    v = spectral_vector((3, 1, 1), 2, 1, R)
    assert v == {"x1": q**3, "x2": q, "y1": t ** (-3)}
    w = spectral_vector((3, 1, 1), 2, 1, R, inverted=True)
    assert w == {"x1": q ** (-3), "x2": 1 / q, "y1": t**3}


@pytest.mark.parametrize("n,m", [(2, 1), (1, 2)])
def test_duality(n, m):
    assert all(res.is_zero() for res in duality_residuals(n, m, 4, Ring()))
    with pytest.raises(ValueError):
        duality_residuals(n, m, 2, Ring(q=2, t=3))


def test_lambda_natural_membership():
    R = Ring(x=2, y=2)
    for r in range(1, 4):
        assert is_in_Lambda_natural(G_natural_coeff(r, R))
        assert is_in_Lambda_natural(E_natural_coeff(r, R))
        assert is_in_Lambda_natural(p_natural(r, R))
    assert not is_in_Lambda_natural(R.var("x", 1))
    assert not is_in_Lambda_natural(sum(R.bank("x"), R.zero))


def test_shifted_functions():
    R = Ring(z=3)
    assert shifted_g_star(0, R).is_one()
    t = R.t
    z = R.bank("z")
    assert shifted_p_star(2, R) == (z[0] ** 2 - 1) + (z[1] ** 2 - 1) * t**-2 + (z[2] ** 2 - 1) * t**-4
    assert p_star_product((2, 1), R) == shifted_p_star(2, R) * shifted_p_star(1, R)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_stability(N):
    base = Ring(q=Fraction(3, 5), t=Fraction(-7, 4))
    for r in range(4):
        assert g_star_stability_residual(r, N, base).is_zero()


def test_exp_log():
    assert all(res.is_zero() for res in exp_log_residuals(Ring(z=2), 4))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1)])
def test_phi_natural_maps_g_star(n, m):
    R = Ring(x=n, y=m, z=5, q=Fraction(2, 3), t=Fraction(5, 2))
    assert phi_natural({P((1,)): 1}, R) == p_natural(1, R)
    for r in range(1, 5):
        coeffs = expand_in_p_star(shifted_g_star(r, R), r)
        assert phi_natural(coeffs, R) == G_natural_coeff(r, R), r
    prod = shifted_g_star(2, R) * shifted_g_star(1, R)
    assert phi_natural(expand_in_p_star(prod, 3), R) == G_natural_coeff(2, R) * G_natural_coeff(1, R)


def test_expand_in_p_star_rejects_outside_span():
    R = Ring(z=2, q=Fraction(2, 3), t=Fraction(5, 2))
    with pytest.raises(BasisError):
        expand_in_p_star(R.var("z", 1), 1)


def test_jacobian():
    R = Ring(x=1)
    assert jacobian_determinant(R).is_one()
    for n, m in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        assert jacobian_independence(Ring(x=n, y=m, q=Fraction(2, 3), t=Fraction(5, 2)))
    coeff, closed = jacobian_witness(Ring(x=2, y=1))
    assert coeff == closed and not coeff.is_zero()


def test_g_star_independence():
    rank, count = g_star_independence(4, 4, Ring(q=Fraction(2, 3), t=Fraction(5, 2)))
    assert rank == count == 12


def test_harish_chandra_sampling():
    R = Ring(x=1, y=1, q=Fraction(2, 3), t=Fraction(5, 2))
    assert harish_chandra_violations(R, 2, 5, 20, random.Random(3)) == []


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1)])
def test_eigenvalues(n, m):
    R = Ring(x=n, y=m, q=Fraction(2, 3), t=Fraction(5, 2))
    G, E = G_natural(R, 2), E_natural(R, 2)
    for lam in partitions_up_to(3):
        if not fat_hook_contains(n, m, lam):
            continue
        f = super_P(lam, R)
        point = spectral_vector(lam, n, m, R)
        for r in (1, 2):
            assert deformed_NS(r, R).apply(f) == evaluate_at(G[r], point) * f
            assert deformed_MR(r, R).apply(f) == evaluate_at(E[r] * (-1) ** r, point) * f


def test_hat_eigenvalues_use_inverted_parameters():
    R = Ring(x=1, y=1)
    q, t = R.q, R.t
    Ri = Ring(x=1, y=1)
    inv = {"q": 1 / q, "t": 1 / t}
    for lam in [(1,), (2,), (2, 1)]:
        f = super_P(lam, R)
        point = spectral_vector(lam, 1, 1, R, inverted=True)
        G = [R.convert(g, inv) for g in G_natural(Ri, 2).coeffs]
        ev = evaluate_at(G[1], point)
        assert hat_variant("H", 1, R).apply(f) == ev * f
        plain = evaluate_at(G_natural(R, 1)[1], point)
        assert hat_variant("H", 1, R).apply(f) != plain * f
