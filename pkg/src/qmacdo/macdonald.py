"""Macdonald polynomials P, Q by Gram-Schmidt, Littlewood-Richardson type
coefficients, skew polynomials and the g_r generators.

Symmetric functions of a fixed degree are handled abstractly in the
power-sum basis (products are concatenation of partitions); they are
specialised to a variable bank only at the end.  Scalars live in
``ring.scalars()`` and are cached per parameter pair.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from functools import lru_cache

from .errors import NotContained, RankError, SpecialParams
from .linalg import solve
from .partitions import Partition, b_lambda, partitions_of, z_lambda
from .ring import MRat, Ring, USeries, bank_coefficients, msum

_cache: dict = {}
_cache_lock = threading.Lock()


def _memo(key, compute):
    # values are deterministic, so a lost race only costs time
    if key in _cache:
        return _cache[key]
    value = compute()
    with _cache_lock:
        _cache[key] = value
    return value


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


# -- integer transition matrices ------------------------------------------------


def _count_assignments(rho: Partition, mu: Partition) -> int:
    """Coefficient of m_mu in p_rho: ways to drop the parts of rho into slots with sums mu."""
    slots = list(mu)

    def rec(i):
        if i == len(rho):
            return int(all(s == 0 for s in slots))
        total = 0
        for j in range(len(slots)):
            if slots[j] >= rho[i]:
                slots[j] -= rho[i]
                total += rec(i + 1)
                slots[j] += rho[i]
        return total

    return rec(0)


@lru_cache(maxsize=None)
def p_to_m(k: int) -> tuple[tuple[int, ...], ...]:
    """L[rho][mu] with p_rho = sum_mu L[rho][mu] m_mu, indexed by partitions_of(k)."""
    parts = partitions_of(k)
    return tuple(tuple(_count_assignments(r, m) for m in parts) for r in parts)


@lru_cache(maxsize=None)
def m_to_p(k: int) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of :func:`p_to_m`: m_mu = sum_rho M[mu][rho] p_rho."""
    L = [[Fraction(v) for v in row] for row in p_to_m(k)]
    size = len(L)
    inv = []
    for j in range(size):
        e = [Fraction(int(i == j)) for i in range(size)]
        # solve x L = e_j  <=>  L^T x = e_j
        LT = [[L[r][c] for r in range(size)] for c in range(size)]
        inv.append(solve(LT, e, Fraction(0)))
    return tuple(tuple(row) for row in inv)


# -- abstract symmetric functions -------------------------------------------------


class SymFunc:
    """Symmetric function as a dict Partition -> scalar in the power-sum basis."""

    __slots__ = ("S", "p")

    def __init__(self, S: Ring, p: dict):
        self.S = S
        self.p = {k: v for k, v in p.items() if not v.is_zero()}

    def __add__(self, other):
        out = dict(self.p)
        for k, v in other.p.items():
            out[k] = out[k] + v if k in out else v
        return SymFunc(self.S, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SymFunc":
        return SymFunc(self.S, {k: v * c for k, v in self.p.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        out: dict = {}
        for a, ca in self.p.items():
            for b, cb in other.p.items():
                key = Partition(sorted(a + b, reverse=True))
                out.setdefault(key, []).append(ca * cb)
        return SymFunc(self.S, {k: msum(v, self.S) for k, v in out.items()})

    def degree_parts(self) -> set[int]:
        return {k.size for k in self.p}

    def to_m(self) -> dict:
        """Monomial-basis coefficients (homogeneous pieces handled separately)."""
        out: dict = {}
        for k in self.degree_parts():
            parts = partitions_of(k)
            L = p_to_m(k)
            pos = {r: i for i, r in enumerate(parts)}
            for mu_i, mu in enumerate(parts):
                acc = msum((c * L[pos[r]][mu_i] for r, c in self.p.items() if r.size == k), self.S)
                if not acc.is_zero():
                    out[mu] = acc
        return out

    @classmethod
    def from_m(cls, S: Ring, coeffs: dict) -> "SymFunc":
        out: dict = {}
        for mu, c in coeffs.items():
            k = mu.size
            parts = partitions_of(k)
            M = m_to_p(k)
            row = M[parts.index(mu)]
            for rho, v in zip(parts, row):
                if v:
                    out.setdefault(rho, []).append(c * v)
        return cls(S, {k: msum(v, S) for k, v in out.items()})

    def __eq__(self, other):
        return isinstance(other, SymFunc) and self.p == other.p


def inner(f: SymFunc, g: SymFunc, a: MRat, b: MRat) -> MRat:
    """<p_lambda, p_mu> = delta z_lambda(a, b)."""
    S = f.S
    return msum((c * g.p[k] * z_lambda(k, a, b) for k, c in f.p.items() if k in g.p), S)


def _params(ring: Ring, params) -> tuple[Ring, MRat, MRat]:
    S = ring.scalars()
    if params is None:
        return S, S.q, S.t
    a, b = params
    return S, S(a), S(b)


def _pkey(S: Ring, a: MRat, b: MRat) -> tuple:
    return (S.fingerprint, a.to_text(), b.to_text())


def _gram_schmidt(k: int, S: Ring, a: MRat, b: MRat) -> dict:
    """P_lambda for all |lambda| = k as SymFunc, via Gram-Schmidt along increasing lex order."""
    parts = list(reversed(partitions_of(k)))  # (1^k) ... (k)
    basis = {}
    norms = {}
    for lam in parts:
        vec = SymFunc.from_m(S, {lam: S.one})
        for mu in basis:
            c = inner(vec, basis[mu], a, b)
            if not c.is_zero():
                vec = vec - basis[mu].scale(c / norms[mu])
        nrm = inner(vec, vec, a, b)
        if nrm.is_zero():
            raise SpecialParams(f"Gram-Schmidt pivot vanished at {lam}")
        basis[lam] = vec
        norms[lam] = nrm
    return basis


def sym_P(lam, S: Ring, a: MRat, b: MRat) -> SymFunc:
    lam = Partition(lam)
    key = ("P", lam.size, _pkey(S, a, b))
    table = _memo(key, lambda: _gram_schmidt(lam.size, S, a, b))
    return table[lam]


def sym_Q(lam, S: Ring, a: MRat, b: MRat) -> SymFunc:
    return sym_P(lam, S, a, b).scale(b_lambda(Partition(lam), a, b))


def sym_P_m(lam, S: Ring, a: MRat, b: MRat) -> dict:
    key = ("Pm", Partition(lam), _pkey(S, a, b))
    return _memo(key, lambda: sym_P(lam, S, a, b).to_m())


# -- specialisation to a bank -------------------------------------------------------


def monomial_symmetric(mu: Partition, ring: Ring, bank: str = "x") -> MRat:
    key = ("m", Partition(mu), ring._key, bank)

    def compute():
        N = ring.arity[bank]
        if len(mu) > N:
            return ring.zero
        exps = tuple(mu) + (0,) * (N - len(mu))
        idx = [ring.var_index(bank, i) for i in range(1, N + 1)]
        terms = {}
        for perm in set(itertools.permutations(exps)):
            full = [0] * len(ring.names)
            for k, e in zip(idx, perm):
                full[k] = e
            terms[tuple(full)] = 1
        return ring._wrap_poly(ring.ctx.from_dict(terms))

    return _memo(key, compute)


def specialize(f: SymFunc | dict, ring: Ring, bank: str = "x") -> MRat:
    """Evaluate a symmetric function (SymFunc or monomial-coefficient dict) in a bank."""
    coeffs = f.to_m() if isinstance(f, SymFunc) else f
    N = ring.arity[bank]
    return msum(
        (ring(c) * monomial_symmetric(mu, ring, bank) for mu, c in coeffs.items() if len(mu) <= N),
        ring,
    )


def power_sum(r: int, ring: Ring, bank: str = "x") -> MRat:
    return msum((v**r for v in ring.bank(bank)), ring)


def power_sum_product(lam, ring: Ring, bank: str = "x") -> MRat:
    out = ring.one
    for part in Partition(lam):
        out = out * power_sum(part, ring, bank)
    return out


def macdonald_P(lam, ring: Ring, bank: str = "x", params=None) -> MRat:
    """Monic (in m_lambda) Macdonald polynomial in the variables of ``bank``."""
    lam = Partition(lam)
    N = ring.arity[bank]
    if len(lam) > N:
        raise RankError(f"l({lam.to_text()}) > {N}")
    S, a, b = _params(ring, params)
    key = ("Pspec", lam, ring._key, bank, _pkey(S, a, b))
    return _memo(key, lambda: specialize(sym_P_m(lam, S, a, b), ring, bank))


def macdonald_Q(lam, ring: Ring, bank: str = "x", params=None) -> MRat:
    S, a, b = _params(ring, params)
    return macdonald_P(lam, ring, bank, (a, b)) * ring(b_lambda(Partition(lam), a, b))


def g_r(r: int, ring: Ring, bank: str = "x", params=None) -> MRat:
    """u^r coefficient of prod_i (t x_i u; q)_inf / (x_i u; q)_inf."""
    S, a, b = _params(ring, params)
    qq, tt = ring(a), ring(b)
    series = USeries([ring.one] + [ring.zero] * r)
    for v in ring.bank(bank):
        series = series * USeries.from_qbinomial(tt, qq, v, r)
    return series[r]


# -- Littlewood-Richardson type coefficients ----------------------------------------


def _peel(coeffs: dict, k: int, S: Ring, a: MRat, b: MRat, allowed=None) -> dict:
    """Expand a degree-k monomial-basis vector in the P basis (unitriangular back-solve)."""
    rem = dict(coeffs)
    out = {}
    for lam in partitions_of(k):  # most dominant first
        if allowed is not None and not allowed(lam):
            continue
        c = rem.get(lam)
        if c is None or c.is_zero():
            continue
        out[lam] = c
        for mu, v in sym_P_m(lam, S, a, b).items():
            if allowed is not None and not allowed(mu):
                continue
            rem[mu] = rem[mu] - c * v if mu in rem else -(c * v)
    leftover = [v for v in rem.values() if not v.is_zero()]
    if leftover:
        raise ArithmeticError("monomial vector is not in the span of the P basis")
    return out


def lr_coefficients(mu, nu, ring: Ring, params=None, N: int | None = None) -> dict:
    """hat c^lambda_{mu nu} with Q_mu Q_nu = sum_lambda hat c Q_lambda (scalars of ``ring``).

    By default the product is formed abstractly, which agrees with working in
    N = |mu| + |nu| variables; passing ``N`` recomputes it from polynomials in
    exactly N variables instead.
    """
    mu, nu = Partition(mu), Partition(nu)
    S, a, b = _params(ring, params)
    k = mu.size + nu.size
    key = ("LR", mu, nu, N, _pkey(S, a, b))

    def compute():
        if N is None:
            prod = sym_Q(mu, S, a, b) * sym_Q(nu, S, a, b)
            mcoeffs = prod.to_m() if k else {Partition(): S.one}
            allowed = None
        else:
            R = S.with_banks(z=N)
            poly = macdonald_Q(mu, R, "z", (a, b)) * macdonald_Q(nu, R, "z", (a, b))
            mcoeffs = _monomial_coefficients(poly, R, "z", k)
            allowed = lambda lam: len(lam) <= N  # noqa: E731
        pcoeffs = _peel(mcoeffs, k, S, a, b, allowed)
        return {lam: c / b_lambda(lam, a, b) for lam, c in pcoeffs.items()}

    return _memo(key, compute)


def _monomial_coefficients(poly: MRat, ring: Ring, bank: str, k: int) -> dict:
    """Read m_lambda coefficients of a homogeneous symmetric polynomial."""
    N = ring.arity[bank]
    coeffs = bank_coefficients(poly, (bank,))
    out = {}
    for lam in partitions_of(k):
        if len(lam) <= N:
            target = tuple(lam) + (0,) * (N - len(lam))
            if target in coeffs:
                out[lam] = coeffs[target]
    return out


def skew_P(lam, nu, ring: Ring, bank: str = "x", params=None) -> MRat:
    """P_{lambda/nu} = sum_mu hat c^lambda_{mu nu} P_mu."""
    lam, nu = Partition(lam), Partition(nu)
    if not lam.contains(nu):
        raise NotContained(f"{nu.to_text()} not contained in {lam.to_text()}")
    S, a, b = _params(ring, params)
    N = ring.arity[bank]
    terms = []
    for mu in partitions_of(lam.size - nu.size):
        if len(mu) > N or not lam.contains(mu):
            continue
        c = lr_coefficients(mu, nu, ring, (a, b)).get(lam)
        if c is not None and not c.is_zero():
            terms.append(ring(c) * macdonald_P(mu, ring, bank, (a, b)))
    return msum(terms, ring)


def is_symmetric(f: MRat, bank: str) -> bool:
    """Invariance under all adjacent transpositions of the bank."""
    ring = f.ring
    N = ring.arity[bank]
    for i in range(1, N):
        a, b = f"{bank}{i}", f"{bank}{i + 1}"
        if f.substitute({a: ring.var(bank, i + 1), b: ring.var(bank, i)}) != f:
            return False
    return True
