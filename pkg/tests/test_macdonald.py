from fractions import Fraction

import pytest

from qmacdo.diffops import classical_D
from qmacdo.errors import NotContained, RankError
from qmacdo.macdonald import (
    g_r,
    is_symmetric,
    lr_coefficients,
    macdonald_P,
    macdonald_Q,
    monomial_symmetric,
    power_sum,
    power_sum_product,
    skew_P,
)
from qmacdo.partitions import Partition, b_lambda, partitions_of, partitions_up_to, z_lambda
from qmacdo.ring import Ring

P = Partition
S = Ring()
E = Ring(q=Fraction(2, 3), t=Fraction(5, 2))


def test_small_cases():
    R = Ring(x=3)
    assert macdonald_P((), R).is_one()
    assert macdonald_P((1,), R) == power_sum(1, R)
    assert macdonald_Q((), R).is_one()
    assert macdonald_Q((1,), R) == (1 - R.t) / (1 - R.q) * power_sum(1, R)


def test_two_row_in_two_variables():
    R = Ring(x=2)
    q, t = R.q, R.t
    expect = monomial_symmetric(P((2,)), R) + (1 + q) * (1 - t) / (1 - q * t) * monomial_symmetric(P((1, 1)), R)
    assert macdonald_P((2,), R) == expect


def test_rank_error():
    with pytest.raises(RankError):
        macdonald_P((1, 1, 1), Ring(x=2))


def test_q_inverted_scaling():
    R = Ring(x=3)
    q, t = R.q, R.t
    lhs = macdonald_Q((2, 1), R, params=(1 / q, 1 / t))
    assert lhs == (q / t) ** 3 * macdonald_Q((2, 1), R)


@pytest.mark.parametrize("lam", list(partitions_up_to(5)))
def test_p_invariant_under_inversion(lam):
    R = Ring(x=max(len(lam), 1))
    assert macdonald_P(lam, R, params=(1 / R.q, 1 / R.t)) == macdonald_P(lam, R)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_first_order_eigenvalue(N):
    R = Ring(x=N)
    D1 = classical_D(R)[1]
    q, t = R.q, R.t
    for lam in partitions_up_to(5 if N < 3 else 4):
        if len(lam) > N:
            continue
        f = macdonald_P(lam, R)
        ev = sum((q ** lam.part(i) * t ** (N - i) for i in range(1, N + 1)), R.zero)
        assert D1.apply(f) == ev * f, lam


def test_symmetry():
    R = Ring(x=3, q=Fraction(3, 5), t=Fraction(-7, 2))
    assert is_symmetric(macdonald_P((2, 1), R), "x")
    assert not is_symmetric(R.var("x", 1) ** 2 + R.var("x", 2), "x")


@pytest.mark.parametrize("d", range(5))
def test_cauchy_truncation(d):
    R = Ring(x=2, z=2, q=Fraction(2, 3), t=Fraction(5, 2))
    lhs = R.zero
    rhs = R.zero
    for lam in partitions_of(d):
        rhs = rhs + power_sum_product(lam, R, "x") * power_sum_product(lam, R, "z") / R(z_lambda(lam, E.q, E.t))
        if len(lam) <= 2:
            lhs = lhs + macdonald_P(lam, R, "x") * macdonald_Q(lam, R, "z")
    assert lhs == rhs


def test_g_r():
    R = Ring(x=3)
    assert g_r(0, R).is_one()
    assert g_r(1, R) == (1 - R.t) / (1 - R.q) * power_sum(1, R)
    assert g_r(1, R) == macdonald_Q((1,), R)
    # g_r = Q_(r) as well
    assert g_r(2, R) == macdonald_Q((2,), R)


def test_lr_identity_element():
    assert lr_coefficients((), (2, 1), S) == {P((2, 1)): S.one}


def test_lr_square_of_one_box():
    R = Ring(x=2)
    c = lr_coefficients((1,), (1,), R)
    assert set(c) == {P((2,)), P((1, 1))} and all(not v.is_zero() for v in c.values())
    Q1 = macdonald_Q((1,), R)
    assert Q1 * Q1 == sum((R(v) * macdonald_Q(lam, R) for lam, v in c.items()), R.zero)


def test_lr_symmetric_and_supported():
    for k in range(1, 6):
        for j in range(0, k + 1):
            for mu in partitions_of(j):
                for nu in partitions_of(k - j):
                    a = lr_coefficients(mu, nu, E)
                    assert a == lr_coefficients(nu, mu, E)
                    for lam in a:
                        assert lam.size == k and lam.contains(mu) and lam.contains(nu)


@pytest.mark.parametrize("mu,nu", [((1,), (1,)), ((2,), (1,)), ((1, 1), (1,)), ((2, 1), (1,)), ((2,), (2,))])
def test_lr_stable_in_number_of_variables(mu, nu):
    k = sum(mu) + sum(nu)
    abstract = lr_coefficients(mu, nu, S)
    assert lr_coefficients(mu, nu, S, N=k) == abstract
    assert lr_coefficients(mu, nu, S, N=k + 1) == abstract


def test_skew():
    R = Ring(x=2)
    assert skew_P((2, 1), (), R) == macdonald_P((2, 1), R)
    assert skew_P((2, 1), (2, 1), R).is_one()
    oracle = sum((R(lr_coefficients(mu, (1,), R).get(P((2,)), R.zero)) * macdonald_P(mu, R) for mu in [P((1,))]), R.zero)
    sk = skew_P((2,), (1,), R)
    assert sk == oracle and not sk.is_zero()
    with pytest.raises(NotContained):
        skew_P((2,), (1, 1), R)


def test_b_lambda_relates_p_and_q():
    R = Ring(x=3)
    lam = P((2, 1))
    assert macdonald_Q(lam, R) == R(b_lambda(lam, R.q, R.t)) * macdonald_P(lam, R)


@pytest.mark.parametrize("lam", [(2,), (2, 1), (3, 1), (2, 2), (2, 1, 1)])
def test_skew_branching_rule(lam):
    R3 = Ring(x=3, q=Fraction(3, 7), t=Fraction(-5, 3))
    R = Ring(x=2, z=1, q=Fraction(3, 7), t=Fraction(-5, 3))
    whole = R.convert(macdonald_P(lam, R3), {"x3": R.var("z", 1)})
    lam = P(lam)
    total = R.zero
    for k in range(lam.size + 1):
        for nu in partitions_of(k):
            if len(nu) <= 1 and lam.contains(nu):
                total = total + skew_P(lam, nu, R, "x") * macdonald_P(nu, R, "z")
    assert whole == total
