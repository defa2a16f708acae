"""Eigenvalue generating functions, shifted symmetric polynomials and the
scalar identities (Wronski, Newton, exp-log, Jacobian) that tie them together."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import BasisError
from .field import qpochhammer
from .linalg import determinant, rank, solve
from .partitions import Partition, fat_hook_contains, hook_split, partitions_up_to
from .ring import MRat, Ring, USeries, bank_coefficients, msum


def _unit(ring: Ring, order: int) -> USeries:
    return USeries([ring.one] + [ring.zero] * order)


# -- product functions -------------------------------------------------------------


def G_natural(ring: Ring, order: int, xbank: str = "x", ybank: str = "y") -> USeries:
    """G^natural_{n,m}(x, y; u) truncated at u^order."""
    q, t = ring.q, ring.t
    X, Y = ring.bank(xbank), ring.bank(ybank)
    n = len(X)
    out = _unit(ring, order)
    for i, x in enumerate(X, start=1):
        out = out * USeries.from_qbinomial(t, q, x * t ** (1 - i), order)
        out = out * USeries.from_qbinomial(1 / t, q, t ** (2 - i), order)
    for j, y in enumerate(Y, start=1):
        num = USeries.geometric_ratio(t * y * q ** (j - 1), ring.zero, order)
        den = USeries.geometric_ratio(t ** (1 - n) * q ** (j - 1), ring.zero, order).inverse()
        out = out * num * den
    return out


def E_natural(ring: Ring, order: int) -> USeries:
    """E^natural_{n,m}(x, y; u) as a plain u-series (coefficients (-1)^r e_r)."""
    q, t = ring.q, ring.t
    X, Y = ring.bank("x"), ring.bank("y")
    n = len(X)
    out = _unit(ring, order)
    for i, x in enumerate(X, start=1):
        out = out * USeries.geometric_ratio(x * t ** (1 - i), t ** (1 - i), order)
    for j, y in enumerate(Y, start=1):
        out = out * USeries.from_qbinomial(q, 1 / t, t ** (-n) * q ** (j - 1), order)
        out = out * USeries.from_qbinomial(1 / q, 1 / t, y * q**j, order)
    return out


def G_natural_coeff(r: int, ring: Ring) -> MRat:
    """g_r^natural."""
    return G_natural(ring, r)[r]


def E_natural_coeff(r: int, ring: Ring) -> MRat:
    """e_r^natural."""
    return E_natural(ring, r)[r] * (-1) ** r


def p_natural(r: int, ring: Ring) -> MRat:
    """Deformed shifted power sum p_r^natural."""
    if r < 1:
        raise ValueError("r must be positive")
    q, t = ring.q, ring.t
    X, Y = ring.bank("x"), ring.bank("y")
    n = len(X)
    xs = msum(((x**r - 1) * t ** (r * (1 - i)) for i, x in enumerate(X, start=1)), ring)
    ys = msum(((y**r - t ** (-r * n)) * q ** (r * (j - 1)) for j, y in enumerate(Y, start=1)), ring)
    return xs + (1 - q**r) / (1 - t ** (-r)) * ys


def script_G(lam, ring: Ring, order: int) -> USeries:
    """G_lambda(u) = prod_i (t^{1-i} u; q)_{lam_i} / (t^{2-i} u; q)_{lam_i} over the scalars."""
    S = ring.scalars()
    q, t = S.q, S.t
    out = _unit(S, order)
    for i, part in enumerate(Partition(lam), start=1):
        out = out * _poch_u(t ** (1 - i), q, part, S, order)
        out = out * _poch_u(t ** (2 - i), q, part, S, order).inverse()
    return out


def script_G_hook(lam, n: int, m: int, ring: Ring, order: int) -> USeries:
    """The same product rewritten through the (mu, nu) hook data."""
    S = ring.scalars()
    q, t = S.q, S.t
    mu, nu = hook_split(n, m, lam)
    out = _unit(S, order)
    for i in range(1, n + 1):
        part = mu.part(i)
        out = out * _poch_u(t ** (1 - i), q, part, S, order)
        out = out * _poch_u(t ** (2 - i), q, part, S, order).inverse()
    for j in range(1, m + 1):
        num = USeries.geometric_ratio(t ** (1 - nu.part(j) - n) * q ** (j - 1), S.zero, order)
        den = USeries.geometric_ratio(t ** (1 - n) * q ** (j - 1), S.zero, order)
        out = out * num * den.inverse()
    return out


def script_E(lam, ring: Ring, order: int) -> USeries:
    """prod_i (1 - q^{lam_i} t^{1-i} u) / (1 - t^{1-i} u), the telescoped value of E^natural."""
    S = ring.scalars()
    q, t = S.q, S.t
    out = _unit(S, order)
    for i, part in enumerate(Partition(lam), start=1):
        out = out * USeries.geometric_ratio(q**part * t ** (1 - i), t ** (1 - i), order)
    return out


def _poch_u(a: MRat, base: MRat, k: int, S: Ring, order: int) -> USeries:
    """(a u; base)_k as a u-series."""
    out = _unit(S, order)
    for i in range(k):
        out = out * USeries.geometric_ratio(a * base**i, S.zero, order)
    return out


def spectral_vector(lam, n: int, m: int, ring: Ring, inverted: bool = False) -> dict[str, MRat]:
    """{x_i: q^{mu_i}, y_j: t^{-nu_j - n}}; ``inverted`` gives (q^{-mu}, t^{nu + n})."""
    mu, nu = hook_split(n, m, lam)
    q, t = ring.q, ring.t
    sign = -1 if inverted else 1
    point = {f"x{i}": q ** (sign * mu.part(i)) for i in range(1, n + 1)}
    point.update({f"y{j}": t ** (-sign * (nu.part(j) + n)) for j in range(1, m + 1)})
    return point


def evaluate_at(f: MRat, point: dict[str, MRat]) -> MRat:
    return f.substitute(point)


# -- identities -------------------------------------------------------------------------


def wronski_residual(k: int, ring: Ring) -> MRat:
    """sum_{r+s=k} (-1)^r (1 - t^r q^s) e_r g_s."""
    q, t = ring.q, ring.t
    G, E = G_natural(ring, k), E_natural(ring, k)
    terms = []
    for r in range(k + 1):
        e_r = E[r] * (-1) ** r
        terms.append((-1) ** r * (1 - t**r * q ** (k - r)) * e_r * G[k - r])
    return msum(terms, ring)


def wronski_scalar_check(k: int, ring: Ring) -> bool:
    return wronski_residual(k, ring).is_zero()


def newton_residual(r: int, ring: Ring) -> MRat:
    """r e_r - sum_{s=1}^r (-1)^{s-1} p_s e_{r-s}."""
    E = E_natural(ring, r)
    e = [E[k] * (-1) ** k for k in range(r + 1)]
    rhs = msum(((-1) ** (s - 1) * p_natural(s, ring) * e[r - s] for s in range(1, r + 1)), ring)
    return e[r] * r - rhs


def duality_residuals(n: int, m: int, order: int, base: Ring) -> list[MRat]:
    """G^natural_{m,n}(y, x; qu; t^-1, q^-1) - E^natural_{n,m}(x, y; u; q, t), coefficientwise.

    The left side is built in a ring whose 'x' bank plays y and vice versa, then
    converted by renaming; parameters are inverted/swapped by substitution.
    """
    R = base.with_banks(x=n, y=m)
    E = E_natural(R, order)
    Rs = base.with_banks(x=m, y=n)
    G = G_natural(Rs, order)
    rename = {f"x{i}": R.var("y", i) for i in range(1, m + 1)}
    rename.update({f"y{j}": R.var("x", j) for j in range(1, n + 1)})
    if R.symbolic:
        rename.update({"q": 1 / R.t, "t": 1 / R.q})
        out = []
        for r in range(order + 1):
            g = R.convert(G[r], rename)
            out.append(g * R.q**r - E[r])
        return out
    raise ValueError("the duality check swaps q and t, which needs symbolic mode")


# -- quasi-invariance in shifted variables --------------------------------------------------


def is_in_Lambda_natural(p: MRat) -> bool:
    """Shifted symmetry in x_i t^{1-i} and y_j q^{j-1}, plus the shifted condition."""
    ring = p.ring
    q, t = ring.q, ring.t
    n, m = ring.arity["x"], ring.arity["y"]
    for i in range(1, n):
        a, b = ring.var("x", i), ring.var("x", i + 1)
        # swap x_i t^{1-i} <-> x_{i+1} t^{-i}
        if p.substitute({f"x{i}": b / t, f"x{i + 1}": a * t}) != p:
            return False
    for j in range(1, m):
        a, b = ring.var("y", j), ring.var("y", j + 1)
        if p.substitute({f"y{j}": b * q, f"y{j + 1}": a / q}) != p:
            return False
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            xi, yj = ring.var_index("x", i), ring.var_index("y", j)
            diff = p.scale({xi: (1, 0)}) - p.scale({yj: (0, -1)})
            on = diff.substitute({f"x{i}": ring.var("y", j) * q ** (j - 1) * t ** (i - 1)})
            if not on.is_zero():
                return False
    return True


# -- shifted symmetric functions ----------------------------------------------------------------


def G_star(ring: Ring, order: int, bank: str) -> USeries:
    q, t = ring.q, ring.t
    out = _unit(ring, order)
    for i, z in enumerate(ring.bank(bank), start=1):
        out = out * USeries.from_qbinomial(t, q, z * t ** (1 - i), order)
        out = out * USeries.from_qbinomial(1 / t, q, t ** (2 - i), order)
    return out


def shifted_g_star(r: int, ring: Ring, bank: str = "z") -> MRat:
    return G_star(ring, r, bank)[r]


def shifted_p_star(r: int, ring: Ring, bank: str = "z") -> MRat:
    t = ring.t
    return msum(((z**r - 1) * t ** (r * (1 - i)) for i, z in enumerate(ring.bank(bank), start=1)), ring)


def p_star_product(lam, ring: Ring, bank: str = "z") -> MRat:
    out = ring.one
    for part in Partition(lam):
        out = out * shifted_p_star(part, ring, bank)
    return out


def expand_in_p_star(f: MRat, degree: int, bank: str = "z") -> dict[Partition, MRat]:
    """Solve f = sum_{|lam| <= degree} c_lam p*_lam by comparing monomial coefficients."""
    ring = f.ring
    S = ring.scalars()
    basis = list(partitions_up_to(degree))
    vectors = [bank_coefficients(p_star_product(lam, ring, bank), (bank,)) for lam in basis]
    target = bank_coefficients(f, (bank,))
    monos = sorted(set(target).union(*vectors))
    matrix = [[vec.get(mono, S.zero) for vec in vectors] for mono in monos]
    rhs = [target.get(mono, S.zero) for mono in monos]
    sol = solve(matrix, rhs, S.zero)
    if sol is None:
        raise BasisError("not in the span of the p* basis (too few variables?)")
    return {lam: c for lam, c in zip(basis, sol) if not c.is_zero()}


def phi_natural(f: dict, ring: Ring) -> MRat:
    """Multiplicative extension of p*_r -> p^natural_r applied to a p*-expansion."""
    cache: dict[int, MRat] = {}
    terms = []
    for lam, c in f.items():
        term = ring(c)
        for part in Partition(lam):
            if part not in cache:
                cache[part] = p_natural(part, ring)
            term = term * cache[part]
        terms.append(term)
    return msum(terms, ring)


def exp_log_residuals(ring: Ring, order: int, bank: str = "z") -> list[MRat]:
    """G*_N(u) - exp(sum_r u^r/r (1 - t^r)/(1 - q^r) p*_r), coefficientwise."""
    q, t = ring.q, ring.t
    G = G_star(ring, order, bank)
    log = [ring.zero] + [
        shifted_p_star(r, ring, bank) * (1 - t**r) / (1 - q**r) * Fraction(1, r) for r in range(1, order + 1)
    ]
    E = USeries(log).exp()
    return [G[r] - E[r] for r in range(order + 1)]


def g_star_stability_residual(r: int, N: int, base: Ring) -> MRat:
    """g*_r(z_1..z_{N-1}, 1) - g*_r(z_1..z_{N-1})."""
    big = base.with_banks(z=N)
    small = base.with_banks(z=N - 1)
    lhs = small.convert(shifted_g_star(r, big), {f"z{N}": small.one})
    return lhs - shifted_g_star(r, small)


# -- Jacobian -------------------------------------------------------------------------------------------


def jacobian_determinant(ring: Ring) -> MRat:
    n, m = ring.arity["x"], ring.arity["y"]
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{j}" for j in range(1, m + 1)]
    ps = [p_natural(r, ring) for r in range(1, n + m + 1)]
    matrix = [[p.derivative(v) for v in names] for p in ps]
    return determinant(matrix, ring.one)


def jacobian_witness(ring: Ring) -> tuple[MRat, MRat]:
    """(coefficient of x2 x3^2 .. xn^{n-1} y1^n .. ym^{n+m-1} in the Jacobian, closed form)."""
    n, m = ring.arity["x"], ring.arity["y"]
    q, t = ring.q, ring.t
    det = jacobian_determinant(ring)
    mono = tuple(range(n)) + tuple(n + j for j in range(m))
    coeff = bank_coefficients(det, ("x", "y")).get(mono, ring.scalars().zero)
    closed = ring.one
    for k in range(1, n + 1):
        closed = closed * k * t ** (k * (1 - k))
    closed = closed * qpochhammer(q ** (n + 1), q, m) / qpochhammer(t ** (-n - 1), 1 / t, m)
    rising = 1
    for j in range(m):
        rising *= n + 1 + j
    closed = closed * rising
    for j in range(1, m + 1):
        closed = closed * q ** ((n + j) * (j - 1))
    return ring(coeff), closed


def jacobian_independence(ring: Ring) -> bool:
    return not jacobian_determinant(ring).is_zero()


def g_star_independence(N: int, degree: int, base: Ring) -> tuple[int, int]:
    """(rank, count) of the products g*_lam, |lam| <= degree, in N variables."""
    ring = base.with_banks(z=N)
    S = ring.scalars()
    g = [shifted_g_star(r, ring) for r in range(degree + 1)]
    vectors = []
    for lam in partitions_up_to(degree):
        prod = ring.one
        for part in lam:
            prod = prod * g[part]
        vectors.append(bank_coefficients(prod, ("z",)))
    monos = sorted(set().union(*vectors))
    matrix = [[vec.get(mono, S.zero) for mono in monos] for vec in vectors]
    return rank(matrix), len(vectors)


def random_relation(rng: random.Random, K: int, terms: int = 3, max_exp: int = 2) -> dict[tuple[int, ...], int]:
    """A small random polynomial F in K variables as {exponent tuple: integer coefficient}."""
    out: dict[tuple[int, ...], int] = {}
    while len(out) < terms:
        exps = tuple(rng.randint(0, max_exp) for _ in range(K))
        out[exps] = rng.choice([c for c in range(-5, 6) if c])
    return out


def _apply_relation(F: dict, values: list):
    total = values[0] * 0
    for exps, c in F.items():
        term = values[0] * 0 + c
        for v, e in zip(values, exps):
            term = term * v**e
        total = total + term
    return total


def harish_chandra_violations(ring: Ring, K: int, D: int, trials: int, rng: random.Random) -> list[dict]:
    """Random F with F(g_1, .., g_K) formally nonzero must not vanish on every spectral point.

    Returns the relations that do vanish on all spectral vectors with |lam| <= D
    (an empty list means no violation was found).
    """
    n, m = ring.arity["x"], ring.arity["y"]
    G = G_natural(ring, K)
    gens = [G[r] for r in range(1, K + 1)]
    S = ring.scalars()
    spectra = []
    for lam in partitions_up_to(D):
        if fat_hook_contains(n, m, lam):
            point = spectral_vector(lam, n, m, ring)
            spectra.append([S(g.substitute(point)) for g in gens])
    violations = []
    done = 0
    while done < trials:
        F = random_relation(rng, K)
        if _apply_relation(F, gens).is_zero():
            continue
        done += 1
        if all(_apply_relation(F, vals).is_zero() for vals in spectra):
            violations.append(F)
    return violations
