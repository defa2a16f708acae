"""q-difference operators with rational coefficients.

An operator is a finite sum ``sum_k c_k(v) T^k`` where ``k`` assigns to each
acted-on variable ``v_i`` a multiplicative shift ``v_i -> q^a t^b v_i``.
The acted-on variables are listed explicitly as ring indices, so the same
type serves operators in (x, y) and in (z, w).
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable

from .errors import ConventionError, PoleError
from .field import qbinomial_coefficients, qpochhammer
from .ring import MRat, Ring, msum
from .superpoly import is_in_Lambda_nm

Shift = tuple[tuple[int, int], ...]
Param = tuple[int, int]  # q^a t^b

Q_ = (1, 0)
T_ = (0, 1)


def _pmul(p: Param, k: int) -> Param:
    return (p[0] * k, p[1] * k)


def _pinv(p: Param) -> Param:
    return (-p[0], -p[1])


def _pval(ring: Ring, p: Param) -> MRat:
    return ring.q ** p[0] * ring.t ** p[1]


class DiffOp:
    """Normal form: shift keys merged, zero coefficients dropped."""

    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring: Ring, vars: tuple[int, ...], terms: dict[Shift, MRat] | None = None):
        self.ring = ring
        self.vars = tuple(vars)
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors -----------------------------------------------------------
    @classmethod
    def identity(cls, ring: Ring, vars) -> "DiffOp":
        vars = tuple(vars)
        return cls(ring, vars, {tuple((0, 0) for _ in vars): ring.one})

    @classmethod
    def zero(cls, ring: Ring, vars) -> "DiffOp":
        return cls(ring, tuple(vars), {})

    @classmethod
    def shift(cls, ring: Ring, vars, key: Shift, coeff: MRat | None = None) -> "DiffOp":
        return cls(ring, tuple(vars), {tuple(key): coeff if coeff is not None else ring.one})

    @classmethod
    def from_terms(cls, ring: Ring, vars, items: Iterable[tuple[Shift, MRat]]) -> "DiffOp":
        buckets: dict[Shift, list[MRat]] = {}
        for k, c in items:
            buckets.setdefault(tuple(k), []).append(c)
        return cls(ring, tuple(vars), {k: msum(v, ring) for k, v in buckets.items()})

    # -- algebra -----------------------------------------------------------------
    def _check(self, other: "DiffOp"):
        if other.ring != self.ring or other.vars != self.vars:
            raise ValueError("operators act on different variables")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return DiffOp(self.ring, self.vars, out)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.ring, self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        c = self.ring(c)
        return DiffOp(self.ring, self.vars, {k: v * c for k, v in self.terms.items()})

    def _scale_map(self, key: Shift) -> dict[int, tuple[int, int]]:
        return {v: s for v, s in zip(self.vars, key) if s != (0, 0)}

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self o other: other's coefficients are shifted by self's shift."""
        self._check(other)
        items = []
        for ka, ca in sorted(self.terms.items()):
            smap = self._scale_map(ka)
            for kb, cb in sorted(other.terms.items()):
                key = tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(ka, kb))
                items.append((key, ca * cb.scale(smap)))
        return DiffOp.from_terms(self.ring, self.vars, items)

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, f: MRat) -> MRat:
        return msum((c * f.scale(self._scale_map(k)) for k, c in sorted(self.terms.items())), self.ring)

    def conjugate_coefficients(self, scaling: dict[int, tuple[int, int]]) -> "DiffOp":
        """Coefficients c(v) -> c(v scaled); multiplicative shifts are unaffected."""
        return DiffOp(self.ring, self.vars, {k: c.scale(scaling) for k, c in self.terms.items()})

    def reorder(self, vars) -> "DiffOp":
        vars = tuple(vars)
        pos = [self.vars.index(v) for v in vars]
        return DiffOp(self.ring, vars, {tuple(k[p] for p in pos): c for k, c in self.terms.items()})

    def convert(self, ring: Ring) -> "DiffOp":
        """Move to a ring with the same variable names (e.g. symbolic -> evaluation)."""
        names = [self.ring.names[v] for v in self.vars]
        vars = tuple(ring.index[n] for n in names)
        return DiffOp(ring, vars, {k: ring.convert(c) for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.vars == other.vars and self.terms == other.terms

    # -- text -----------------------------------------------------------------------
    def to_text(self) -> str:
        """One line per shift monomial: ``coeff | mu=(..) | I=(..)``.

        ``mu`` lists the q-exponents of the x-type variables, ``I`` the
        t-exponents of the y-type variables; a shift that mixes q and t is
        written ``a:b``.
        """
        names = [self.ring.names[v] for v in self.vars]
        lines = []
        for key in sorted(self.terms, reverse=True):
            xs, ys = [], []
            for name, (a, b) in zip(names, key):
                if name[0] in "xz":
                    xs.append(str(a) if b == 0 else f"{a}:{b}")
                else:
                    ys.append(str(b) if a == 0 else f"{a}:{b}")
            lines.append(f"{self.terms[key].to_text()} | mu=({','.join(xs)}) | I=({','.join(ys)})")
        return "\n".join(lines)

    def __repr__(self):
        return f"DiffOp({len(self.terms)} terms)"


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b) - b.compose(a)


# -- coefficient functions ------------------------------------------------------------


def _subsets(m: int) -> list[tuple[int, ...]]:
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=m)]


def _compositions(n: int, total_max: int) -> list[tuple[int, ...]]:
    return [mu for mu in itertools.product(range(total_max + 1), repeat=n) if sum(mu) <= total_max]


def _vandermonde_ratio(vs: list[MRat], factors: list[MRat]) -> MRat:
    """Delta(f v) / Delta(v) with Delta(v) = prod_{i<j} (v_i - v_j)."""
    out = vs[0].ring.one if vs else None
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            out = out * (factors[i] * vs[i] - factors[j] * vs[j]) / (vs[i] - vs[j])
    return out


def ns_coefficient(mu, I, X: list[MRat], Y: list[MRat], Qv: MRat, Tv: MRat) -> MRat:
    """B_{mu,I}(X, Y) for parameters (Qv, Tv)."""
    ring = Qv.ring
    n, m = len(X), len(Y)
    out = ring.one
    if n:
        out = _vandermonde_ratio(X, [Qv ** mu[i] for i in range(n)])
    for i in range(n):
        for j in range(n):
            r = X[i] / X[j]
            out = out * qpochhammer(Tv * r, Qv, mu[i]) / qpochhammer(Qv * r, Qv, mu[i])
    for i in range(m):
        for j in range(m):
            if I[i] and not I[j]:
                out = out * (Y[i] - Qv * Y[j]) / (Y[i] - Y[j])
    for i in range(n):
        for j in range(m):
            r = X[i] / Y[j]
            if I[j]:
                out = out * (1 - r / Tv) / (1 - Qv ** mu[i] * r)
            else:
                out = out * (1 - r / Qv) / (1 - Qv ** (mu[i] - 1) * r)
    return out


def mr_coefficient(I, mu, X: list[MRat], Y: list[MRat], Qv: MRat, Tv: MRat) -> MRat:
    """A_{I,mu}(X, Y) for parameters (Qv, Tv)."""
    ring = Qv.ring
    n, m = len(X), len(Y)
    out = ring.one
    for i in range(n):
        for j in range(n):
            if I[i] and not I[j]:
                out = out * (X[i] - X[j] / Tv) / (X[i] - X[j])
    if m:
        out = out * _vandermonde_ratio(Y, [Tv ** (-mu[i]) for i in range(m)])
    Ti = 1 / Tv
    for i in range(m):
        for j in range(m):
            r = Y[i] / Y[j]
            out = out * qpochhammer(r / Qv, Ti, mu[i]) / qpochhammer(r / Tv, Ti, mu[i])
    for i in range(m):
        for j in range(n):
            r = Y[i] / X[j]
            if I[j]:
                out = out * (1 - Qv * r) / (1 - Tv ** (-mu[i]) * r)
            else:
                out = out * (1 - Tv * r) / (1 - Tv ** (1 - mu[i]) * r)
    return out


def B_coeff(mu, I, ring: Ring, params: tuple[Param, Param] = (Q_, T_)) -> MRat:
    X, Y = ring.bank("x"), ring.bank("y")
    return ns_coefficient(tuple(mu), tuple(I), X, Y, _pval(ring, params[0]), _pval(ring, params[1]))


def A_coeff(I, mu, ring: Ring, params: tuple[Param, Param] = (Q_, T_)) -> MRat:
    X, Y = ring.bank("x"), ring.bank("y")
    return mr_coefficient(tuple(I), tuple(mu), X, Y, _pval(ring, params[0]), _pval(ring, params[1]))


# -- generating series ----------------------------------------------------------------------


def _bank_vars(ring: Ring, bank: str) -> list[int]:
    return [ring.var_index(bank, i) for i in range(1, ring.arity[bank] + 1)]


_op_cache: dict = {}


def _cached(key, compute):
    if key not in _op_cache:
        _op_cache[key] = compute()
    return _op_cache[key]


def ns_series(ring: Ring, order: int, banks=("x", "y"), params: tuple[Param, Param] = (Q_, T_)) -> list[DiffOp]:
    """[u^r] of the prefactored NS generating series, r = 0..order.

    The operator acts on ``banks`` (X role, Y role) with parameters (Q, T)
    given as monomials q^a t^b.
    """
    key = ("NS", ring._key, order, banks, params)
    return _cached(key, lambda: _ns_series(ring, order, banks, params))


def _ns_series(ring, order, banks, params):
    Qp, Tp = params
    Qv, Tv = _pval(ring, Qp), _pval(ring, Tp)
    xv, yv = _bank_vars(ring, banks[0]), _bank_vars(ring, banks[1])
    X, Y = ring.bank(banks[0]), ring.bank(banks[1])
    n, m = len(X), len(Y)
    vars = tuple(xv + yv)
    # (T^{1-n} Q^m u; Q)_inf / (T u; Q)_inf = sum_s (T^{-n} Q^m; Q)_s / (Q; Q)_s (T u)^s
    pref = qbinomial_coefficients(Tv ** (-n) * Qv**m, Qv, order)
    pref = [c * Tv**s for s, c in enumerate(pref)]
    raw: list[list] = [[] for _ in range(order + 1)]
    step = Tv ** (1 - n) * Qv**m
    for I in _subsets(m):
        k = sum(I)
        if k > order:
            continue
        for mu in _compositions(n, order - k):
            deg = sum(mu) + k
            c = step ** sum(mu) * (-Tv) ** k * Qv ** comb(k, 2) * ns_coefficient(mu, I, X, Y, Qv, Tv)
            shift = tuple(_pmul(Qp, a) for a in mu) + tuple(_pmul(Tp, -b) for b in I)
            raw[deg].append((shift, c))
    out = []
    for r in range(order + 1):
        items = [(s, c * pref[r - d]) for d in range(r + 1) for s, c in raw[d]]
        out.append(DiffOp.from_terms(ring, vars, items))
    return out


def mr_series_direct(ring: Ring, order: int, banks=("x", "y"), params=(Q_, T_)) -> list[DiffOp]:
    """[(-u)^r] of the prefactored MR generating series, built from A_{I,mu}."""
    key = ("MRd", ring._key, order, banks, params)
    return _cached(key, lambda: _mr_series_direct(ring, order, banks, params))


def _mr_series_direct(ring, order, banks, params):
    Qp, Tp = params
    Qv, Tv = _pval(ring, Qp), _pval(ring, Tp)
    xv, yv = _bank_vars(ring, banks[0]), _bank_vars(ring, banks[1])
    X, Y = ring.bank(banks[0]), ring.bank(banks[1])
    n, m = len(X), len(Y)
    vars = tuple(xv + yv)
    # (Q^m T^{-n} u; T^-1)_inf / (u; T^-1)_inf
    pref = qbinomial_coefficients(Qv**m * Tv ** (-n), 1 / Tv, order)
    raw: list[list] = [[] for _ in range(order + 1)]
    step = Qv**m * Tv ** (-n)
    for I in _subsets(n):
        k = sum(I)
        if k > order:
            continue
        for mu in _compositions(m, order - k):
            deg = sum(mu) + k
            c = step ** sum(mu) * (-1) ** k * Tv ** (-comb(k, 2)) * mr_coefficient(I, mu, X, Y, Qv, Tv)
            shift = tuple(_pmul(Qp, a) for a in I) + tuple(_pmul(Tp, -b) for b in mu)
            raw[deg].append((shift, c))
    out = []
    for r in range(order + 1):
        items = [(s, c * pref[r - d] * (-1) ** r) for d in range(r + 1) for s, c in raw[d]]
        out.append(DiffOp.from_terms(ring, vars, items))
    return out


def mr_series_swap(ring: Ring, order: int, banks=("x", "y"), params=(Q_, T_)) -> list[DiffOp]:
    """MR series from the NS series with roles swapped: D(x,y;u;Q,T) = H(y,x;Qu;T^-1,Q^-1)."""
    Qp, Tp = params
    Qv = _pval(ring, Qp)
    swapped = ns_series(ring, order, (banks[1], banks[0]), (_pinv(Tp), _pinv(Qp)))
    vars = tuple(_bank_vars(ring, banks[0]) + _bank_vars(ring, banks[1]))
    return [op.reorder(vars).scale((-Qv) ** r) for r, op in enumerate(swapped)]


def deformed_NS(r: int, ring: Ring, banks=("x", "y"), params=(Q_, T_)) -> DiffOp:
    return ns_series(ring, r, banks, params)[r]


def deformed_MR(r: int, ring: Ring, banks=("x", "y"), params=(Q_, T_), via: str = "swap") -> DiffOp:
    if via == "swap":
        return mr_series_swap(ring, r, banks, params)[r]
    if via == "direct":
        return mr_series_direct(ring, r, banks, params)[r]
    raise ValueError(f"unknown construction {via!r}")


def hat_variant(family: str, r: int, ring: Ring) -> DiffOp:
    """F^r(x, q t y; q^-1, t^-1) for family 'H' or 'D'."""
    inv = ((-1, 0), (0, -1))
    if family == "H":
        op = deformed_NS(r, ring, params=inv)
    elif family == "D":
        op = deformed_MR(r, ring, params=inv)
    else:
        raise ValueError("family must be 'H' or 'D'")
    return op.conjugate_coefficients({v: (1, 1) for v in _bank_vars(ring, "y")})


# -- classical operators ------------------------------------------------------------------------


def classical_D(ring: Ring, bank: str = "x") -> list[DiffOp]:
    """[D_n^0, ..., D_n^n] with D_n(x;u) = sum_r (-u)^r D_n^r."""
    X = ring.bank(bank)
    n = len(X)
    vars = tuple(_bank_vars(ring, bank))
    t = ring.t
    ops = [[] for _ in range(n + 1)]
    for I in _subsets(n):
        c = t ** comb(sum(I), 2)
        for i in range(n):
            for j in range(n):
                if I[i] and not I[j]:
                    c = c * (t * X[i] - X[j]) / (X[i] - X[j])
        ops[sum(I)].append((tuple((a, 0) for a in I), c))
    return [DiffOp.from_terms(ring, vars, items) for items in ops]


def classical_H(ring: Ring, order: int, bank: str = "x") -> list[DiffOp]:
    """[H_n^0, ..., H_n^order] with H_n(x;u) = sum_r u^r H_n^r."""
    X = ring.bank(bank)
    n = len(X)
    vars = tuple(_bank_vars(ring, bank))
    q, t = ring.q, ring.t
    ops = [[] for _ in range(order + 1)]
    for mu in _compositions(n, order):
        c = _vandermonde_ratio(X, [q**a for a in mu]) if n else ring.one
        for i in range(n):
            for j in range(n):
                rr = X[i] / X[j]
                c = c * qpochhammer(t * rr, q, mu[i]) / qpochhammer(q * rr, q, mu[i])
        ops[sum(mu)].append((tuple((a, 0) for a in mu), c))
    return [DiffOp.from_terms(ring, vars, items) for items in ops]


# -- zero certification ----------------------------------------------------------------------------


def _triangular_form(op: DiffOp) -> tuple[list[int], list[int], dict]:
    ring = op.ring
    names = [ring.names[v] for v in op.vars]
    xpos = [k for k, nm in enumerate(names) if nm[0] == "x"]
    ypos = [k for k, nm in enumerate(names) if nm[0] == "y"]
    if len(xpos) + len(ypos) != len(names):
        raise ConventionError("certification needs an operator in the x, y banks")
    table = {}
    for key, c in op.terms.items():
        mu = []
        for k in xpos:
            a, b = key[k]
            if b != 0 or a < 0:
                raise ConventionError(f"x-shift {key[k]} is not a non-negative power of q")
            mu.append(a)
        nu = []
        for k in ypos:
            a, b = key[k]
            if a != 0 or b > 0:
                raise ConventionError(f"y-shift {key[k]} is not a non-positive power of t")
            nu.append(-b)
        table[(tuple(mu), tuple(nu))] = c
    return xpos, ypos, table


def _phi_specialised(mu, nu, alpha, beta, d, ring: Ring) -> MRat:
    """phi_{mu,nu}(x, y; z_{alpha,beta})."""
    q, t = ring.q, ring.t
    X, Y = ring.bank("x"), ring.bank("y")
    zs = [t / (q ** alpha[i] * X[i]) for i in range(len(X))]
    for j in range(len(Y)):
        zs += [t ** (beta[j] + k) / Y[j] for k in range(1, d - beta[j] + 1)]
    out = ring.one
    for i, x in enumerate(X):
        if mu[i]:
            for z in zs:
                out = out * qpochhammer(x * z / t, q, mu[i]) / qpochhammer(x * z, q, mu[i])
    for i, y in enumerate(Y):
        if nu[i]:
            for z in zs:
                out = out * (1 - t ** (-nu[i]) * y * z) / (1 - y * z)
    return out


def certify_zero(op: DiffOp, via: str = "coefficients"):
    """Decide whether ``op`` is the zero operator.

    ``coefficients``: structural check of the normal form.  ``specialization``:
    pair the operator with the kernel at the lemma's special z-points, degree by
    degree; returns (is_zero, first nonvanishing (alpha, beta) or None).
    """
    if via == "coefficients":
        return op.is_zero()
    if via != "specialization":
        raise ValueError(f"unknown mode {via!r}")
    _, _, table = _triangular_form(op)
    if not table:
        return True, None
    ring = op.ring
    n, m = ring.arity["x"], ring.arity["y"]
    d = max(sum(mu) + sum(nu) for mu, nu in table)
    for total in range(d + 1):
        for alpha in _compositions(n, total):
            rest = total - sum(alpha)
            for beta in _compositions(m, rest):
                if sum(beta) != rest:
                    continue
                terms = []
                for (mu, nu), c in table.items():
                    terms.append(c * _phi_specialised(mu, nu, alpha, beta, d, ring))
                if not msum(terms, ring).is_zero():
                    return False, (alpha, beta)
    return True, None


# -- structural properties of the coefficients ------------------------------------------------


def implication_residuals(ring: Ring, total: int) -> list[tuple[str, tuple, MRat]]:
    """The four vanishing statements for B_{mu,I} along x_1 = y_1, for |mu| + |I| <= total.

    Returns (label, (mu, I), residual) for every statement that applies.
    """
    n, m = ring.arity["x"], ring.arity["y"]
    if n < 1 or m < 1:
        raise ValueError("needs at least one x and one y variable")
    q, t = ring.q, ring.t
    x1, y1 = ring.var_index("x", 1), ring.var_index("y", 1)
    on_line = {"x1": ring.var("y", 1)}

    def restrict(f: MRat) -> MRat:
        return f.substitute(on_line)

    out = []
    for I in _subsets(m):
        k = sum(I)
        if k > total:
            continue
        for mu in _compositions(n, total - k):
            B = B_coeff(mu, I, ring)
            down_y = B.scale({y1: (0, -1)})
            up_x = B.scale({x1: (1, 0)})
            key = (mu, I)
            if I[0]:
                out.append(("I", key, restrict(down_y)))
                continue
            if mu[0] == 0:
                out.append(("III", key, restrict(up_x - down_y)))
                continue
            out.append(("II", key, restrict(up_x)))
            mu2 = (mu[0] - 1,) + tuple(mu[1:])
            I2 = (1,) + tuple(I[1:])
            partner = B_coeff(mu2, I2, ring).scale({x1: (1, 0)})
            out.append(("IV", key, restrict(down_y + t**n * q ** (k - m) * partner)))
    return out


def equivariance_residuals(ring: Ring, total: int) -> list[tuple[tuple, MRat]]:
    """B_{mu,I}(sigma x, tau y) - B_{sigma^-1 mu, tau^-1 I}(x, y) for adjacent transpositions."""
    n, m = ring.arity["x"], ring.arity["y"]
    out = []
    swaps = [("x", i) for i in range(1, n)] + [("y", j) for j in range(1, m)]
    for I in _subsets(m):
        k = sum(I)
        if k > total:
            continue
        for mu in _compositions(n, total - k):
            B = B_coeff(mu, I, ring)
            for bank, i in swaps:
                a, b = ring.var(bank, i), ring.var(bank, i + 1)
                moved = B.substitute({f"{bank}{i}": b, f"{bank}{i + 1}": a})
                mu2, I2 = list(mu), list(I)
                vec = mu2 if bank == "x" else I2
                vec[i - 1], vec[i] = vec[i], vec[i - 1]
                out.append(((mu, I, bank, i), moved - B_coeff(tuple(mu2), tuple(I2), ring)))
    return out


def preserves_algebra(op: DiffOp, f: MRat) -> bool:
    """True iff op(f) is a polynomial in the quasi-invariant algebra."""
    g = op.apply(f)
    return g.is_polynomial() and is_in_Lambda_nm(g)


def wronski_operator(k: int, ring: Ring) -> DiffOp:
    """sum_{r+s=k} (-1)^r (1 - t^r q^s) D^r H^s, which should vanish."""
    q, t = ring.q, ring.t
    H = ns_series(ring, k)
    D = mr_series_swap(ring, k)
    out = DiffOp.zero(ring, H[0].vars)
    for r in range(k + 1):
        s = k - r
        out = out + (D[r] * H[s]).scale((-1) ** r * (1 - t**r * q**s))
    return out


__all__ = [
    "DiffOp",
    "commutator",
    "B_coeff",
    "A_coeff",
    "ns_series",
    "mr_series_direct",
    "mr_series_swap",
    "deformed_NS",
    "deformed_MR",
    "hat_variant",
    "classical_D",
    "classical_H",
    "certify_zero",
    "implication_residuals",
    "equivariance_residuals",
    "wronski_operator",
    "preserves_algebra",
    "PoleError",
]
