"""Super-Macdonald polynomials, the quasi-invariant algebra and deformed power sums.

Bi-symmetric polynomials are plain :class:`MRat` values in a ring with an
``x`` bank of arity n and a ``y`` bank of arity m; the predicates below check
the extra structure.
"""

from __future__ import annotations

from .errors import RankError
from .macdonald import (
    _params,
    lr_coefficients,
    macdonald_P,
    macdonald_Q,
    is_symmetric,
    skew_P,
)
from .partitions import Partition, b_lambda, fat_hook_contains, subpartitions
from .ring import MRat, Ring, msum


def _safe_Q(lam: Partition, ring: Ring, bank: str, params) -> MRat:
    try:
        return macdonald_Q(lam, ring, bank, params)
    except RankError:
        return ring.zero


def super_P(lam, ring: Ring, params=None, banks: tuple[str, str] = ("x", "y")) -> MRat:
    """SP_lambda(x, y) = sum_{nu in lam} (-t)^|nu| P_{lam/nu}(x; q, t) Q_{nu'}(y; t, q).

    ``params`` replaces (q, t); ``banks`` names the banks playing the x and y roles.
    """
    lam = Partition(lam)
    S, a, b = _params(ring, params)
    xb, yb = banks
    if not fat_hook_contains(ring.arity[xb], ring.arity[yb], lam):
        return ring.zero
    B = ring(b)
    terms = []
    for nu in subpartitions(lam):
        if len(nu.conjugate()) > ring.arity[yb] and nu:
            continue
        skew = skew_P(lam, nu, ring, xb, (a, b))
        if skew.is_zero():
            continue
        terms.append((-B) ** nu.size * skew * _safe_Q(nu.conjugate(), ring, yb, (b, a)))
    return msum(terms, ring)


def super_P_double_sum(lam, ring: Ring, params=None) -> MRat:
    """Same polynomial from the double sum over (mu, nu) with explicit LR coefficients."""
    lam = Partition(lam)
    S, a, b = _params(ring, params)
    n = ring.arity["x"]
    B = ring(b)
    terms = []
    for nu in subpartitions(lam):
        Qy = _safe_Q(nu.conjugate(), ring, "y", (b, a))
        if Qy.is_zero():
            continue
        for mu in subpartitions(lam):
            if mu.size + nu.size != lam.size or len(mu) > n:
                continue
            c = lr_coefficients(mu, nu, ring, (a, b)).get(lam)
            if c is None or c.is_zero():
                continue
            terms.append((-B) ** nu.size * ring(c) * macdonald_P(mu, ring, "x", (a, b)) * Qy)
    return msum(terms, ring)


def super_Q(lam, ring: Ring, params=None, banks=("x", "y")) -> MRat:
    S, a, b = _params(ring, params)
    return ring(b_lambda(Partition(lam), a, b)) * super_P(lam, ring, (a, b), banks)


def deformed_newton_sum(r: int, ring: Ring, params=None) -> MRat:
    """p_r(x, y; q, t) = sum x_i^r + (1 - q^r)/(1 - t^-r) sum y_j^r."""
    if r < 1:
        raise ValueError("r must be positive")
    S, a, b = _params(ring, params)
    A, B = ring(a), ring(b)
    xs = msum((v**r for v in ring.bank("x")), ring)
    ys = msum((v**r for v in ring.bank("y")), ring)
    return xs + (1 - A**r) / (1 - B ** (-r)) * ys


def phi_restriction(f: dict, ring: Ring, params=None) -> MRat:
    """Map a power-sum expansion {Partition: scalar} along p_r -> p_r(x, y; q, t)."""
    cache: dict[int, MRat] = {}
    terms = []
    for lam, c in f.items():
        term = ring(c)
        for part in Partition(lam):
            if part not in cache:
                cache[part] = deformed_newton_sum(part, ring, params)
            term = term * cache[part]
        terms.append(term)
    return msum(terms, ring)


def quasi_invariance_residuals(p: MRat, i: int, j: int) -> MRat:
    """(T_{q,x_i} - T_{t,y_j}^{-1}) p restricted to x_i = y_j."""
    ring = p.ring
    xi, yj = ring.var_index("x", i), ring.var_index("y", j)
    diff = p.scale({xi: (1, 0)}) - p.scale({yj: (0, -1)})
    return diff.substitute({f"x{i}": ring.var("y", j)})


def is_in_Lambda_nm(p: MRat) -> bool:
    """Separate symmetry plus the quasi-invariance condition on every (i, j)."""
    ring = p.ring
    if not (is_symmetric(p, "x") and is_symmetric(p, "y")):
        return False
    n, m = ring.arity["x"], ring.arity["y"]
    return all(
        quasi_invariance_residuals(p, i, j).is_zero()
        for i in range(1, n + 1)
        for j in range(1, m + 1)
    )
