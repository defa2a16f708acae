"""Kernel functions, Kajihara/Heine series and identity-verification drivers.

Every driver returns a list of :class:`Check` records; a check passes when its
residual is exactly zero.
"""

from __future__ import annotations

import random
import time

from .diffops import mr_series_swap, ns_series
from .errors import BasisError, PoleError, TruncationTooSmall
from .field import qpochhammer, random_rational
from .linalg import solve
from .macdonald import macdonald_Q, power_sum_product
from .partitions import Partition, partitions_up_to
from .ring import MRat, Ring, TruncSeries, USeries, msum, q_binomial_series
from .report import Check
from .superpoly import phi_restriction, super_P


def _residual_text(value) -> str:
    if isinstance(value, MRat):
        return "0" if value.is_zero() else value.to_text()
    return "0" if value == 0 else str(value)


# -- kernel products ------------------------------------------------------------------------


def _finite_block(ring: Ring, factor: MRat, banks, d: int) -> TruncSeries:
    return TruncSeries.from_mrat(factor, banks, d)


def phi_kernel(ring: Ring, d: int) -> TruncSeries:
    """Phi_{n,m;N,M}(x, y; z, w) to total z,w-degree d; arities come from ``ring``."""
    q, t = ring.q, ring.t
    banks = ("z", "w")
    out = TruncSeries.one(ring, banks, d)
    X, Y, Z, W = (ring.bank(b) for b in "xyzw")
    for x in X:
        for z in Z:
            out = out * q_binomial_series(t, q, x * z / t, d, banks)
    for y in Y:
        for w in W:
            out = out * q_binomial_series(1 / q, 1 / t, q * y * w, d, banks)
    for x in X:
        for w in W:
            out = out * _finite_block(ring, 1 - x * w, banks, d)
    for y in Y:
        for z in Z:
            out = out * _finite_block(ring, 1 - y * z, banks, d)
    return out


def psi_kernel(ring: Ring, d: int, form: str = "stated") -> TruncSeries:
    """Psi_{n,m;N,M}, the kernel suited to |q|, |t| < 1.

    ``form="stated"`` uses (q t y w; t)/(t y w; t) for the y,w block. That
    block breaks the NS kernel identity as soon as M > 0. ``form="dilated"``
    uses (q t^2 y w; t)/(t^2 y w; t), which is Phi(t x, t y; z, w) read for
    |t| < 1 and satisfies the identity for every M. Both agree when M = 0.
    """
    if form not in ("stated", "dilated"):
        raise ValueError(f"unknown Psi form {form!r}")
    q, t = ring.q, ring.t
    gauge = t if form == "stated" else t * t
    banks = ("z", "w")
    out = TruncSeries.one(ring, banks, d)
    X, Y, Z, W = (ring.bank(b) for b in "xyzw")
    for x in X:
        for z in Z:
            out = out * q_binomial_series(t, q, x * z, d, banks)
    for y in Y:
        for w in W:
            out = out * q_binomial_series(q, t, gauge * y * w, d, banks)
    for x in X:
        for w in W:
            out = out * _finite_block(ring, 1 - t * x * w, banks, d)
    for y in Y:
        for z in Z:
            out = out * _finite_block(ring, 1 - t * y * z, banks, d)
    return out


def pi_kernel(ring: Ring, d: int) -> TruncSeries:
    """Pi_{n,m;N}(x, y; z) = prod (t x z; q)/(x z; q) * prod (1 - t y z)."""
    if ring.arity["w"]:
        raise ValueError("Pi uses a single z bank (no w variables)")
    return psi_kernel(ring, d)


def spdef_expansion(ring: Ring, d: int) -> TruncSeries:
    """sum_{|lam| <= d, l(lam) <= N} t^-|lam| SP_lam(x, y) Q_lam(z) as a series."""
    if ring.arity["w"]:
        raise ValueError("the expansion needs M = 0")
    N = ring.arity["z"]
    t = ring.t
    terms = []
    for lam in partitions_up_to(d):
        if len(lam) > N:
            continue
        sp = super_P(lam, ring)
        if sp.is_zero():
            continue
        terms.append(t ** (-lam.size) * sp * macdonald_Q(lam, ring, "z"))
    return TruncSeries.from_mrat(msum(terms, ring), ("z", "w"), d)


# -- Kajihara / Heine ------------------------------------------------------------------------


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, MRat) else v == 0


def _delta(vals):
    out = 1
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            out = out * (vals[i] - vals[j])
    return out


def _compositions_exact(K: int, total: int):
    if K == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_exact(K - 1, total - first):
            yield (first,) + rest


def kajihara_phi(a, X, b, c, q, order: int) -> USeries:
    """phi^{K,L}(a; X | b; c; u) as a u-series truncated at ``order``.

    ``a`` and ``X`` have length K, ``b`` and ``c`` length L.  Values may be
    Fractions or scalar ring elements.
    """
    K, L = len(a), len(b)
    if len(X) != K or len(c) != L:
        raise ValueError("a/X and b/c must have matching lengths")
    one = q * 0 + 1
    base = _delta(X)
    coeffs = []
    for k in range(order + 1):
        acc = one * 0
        for gamma in _compositions_exact(K, k):
            term = _delta([X[i] * q ** gamma[i] for i in range(K)]) / base if K > 1 else one
            for i in range(K):
                g = gamma[i]
                if not g:
                    continue
                for j in range(K):
                    r = X[i] / X[j]
                    den = qpochhammer(q * r, q, g)
                    if _is_zero(den):
                        raise PoleError("(q X_i/X_j; q)_k vanished")
                    term = term * qpochhammer(a[j] * r, q, g) / den
                for l in range(L):
                    den = qpochhammer(X[i] * c[l], q, g)
                    if _is_zero(den):
                        raise PoleError("(X_i c_l; q)_k vanished")
                    term = term * qpochhammer(X[i] * b[l], q, g) / den
            acc = acc + term
        coeffs.append(acc)
    return USeries(coeffs)


def _prod(vals, one):
    out = one
    for v in vals:
        out = out * v
    return out


def kajihara_sides(a, X, b, Y, c, q, order: int) -> tuple[USeries, USeries]:
    """Both sides of the rank-changing transformation, as u-series."""
    one = q * 0 + 1
    K, L = len(a), len(b)
    alpha, beta = _prod(a, one), _prod(b, one)
    lhs = kajihara_phi(a, X, [b[k] * Y[k] for k in range(L)], [c * Y[k] for k in range(L)], q, order)
    arg = alpha * beta / c**L
    pref = USeries.from_qbinomial(arg, q, one, order)
    rhs_series = kajihara_phi([c / bk for bk in b], Y, [c * X[i] / a[i] for i in range(K)], [c * X[i] for i in range(K)], q, order)
    rhs = pref * rhs_series.rescale(arg)
    return lhs, rhs


def kajihara_specialised_sides(a, X, b, Y, q, order: int) -> tuple[USeries, USeries]:
    """The c = 1, b -> 1/b, u -> u/alpha form, written symmetrically in (a, X) and (b, Y)."""
    one = q * 0 + 1
    alpha, beta = _prod(a, one), _prod(b, one)

    def side(aa, XX, bb, YY, scale):
        inner = kajihara_phi(aa, XX, [YY[k] / bb[k] for k in range(len(bb))], list(YY), q, order)
        return USeries.from_qbinomial(1 / scale, q, one, order) * inner.rescale(1 / scale)

    return side(a, X, b, Y, alpha), side(b, Y, a, X, beta)


def heine_sides(a, b, c, q, order: int) -> tuple[USeries, USeries]:
    one = q * 0 + 1
    lhs = kajihara_phi([a], [one], [b], [c], q, order)
    arg = a * b / c
    rhs = USeries.from_qbinomial(arg, q, one, order) * kajihara_phi([c / a], [one], [c / b], [c], q, order).rescale(arg)
    return lhs, rhs


def _series_checks(suite, instance, lhs: USeries, rhs: USeries, start: float) -> list[Check]:
    diff = lhs - rhs
    return [
        Check(suite, instance, f"u^{r}", _residual_text(diff[r]), time.perf_counter() - start)
        for r in range(diff.order + 1)
    ]


def verify_kajihara(K: int, L: int, params: dict, order: int) -> list[Check]:
    """Residuals of the general, specialised and (for K = L = 1) Heine forms.

    ``params`` holds q, a (K), X (K), b (L), Y (L), c.
    """
    q = params["q"]
    a, X, b, Y, c = (params[k] for k in ("a", "X", "b", "Y", "c"))
    inst = f"K={K} L={L}"
    start = time.perf_counter()
    out = _series_checks("kajihara", inst + " form=general", *kajihara_sides(a, X, b, Y, c, q, order), start)
    start = time.perf_counter()
    out += _series_checks("kajihara", inst + " form=specialised", *kajihara_specialised_sides(a, X, b, Y, q, order), start)
    if K == L == 1:
        start = time.perf_counter()
        # the rank-one case is Heine with b -> b X Y and c -> c X Y
        lhs, rhs = heine_sides(a[0], b[0] * X[0] * Y[0], c * X[0] * Y[0], q, order)
        out += _series_checks("kajihara", inst + " form=heine", lhs, rhs, start)
    return out


# -- kernel identities -------------------------------------------------------------------------


def _family_series(family: str, ring: Ring, order: int, banks):
    if family == "H":
        return ns_series(ring, order, banks)
    if family == "D":
        return mr_series_swap(ring, order, banks)
    raise ValueError("family must be 'H' or 'D'")


def verify_kernel_identity(family: str, ring: Ring, order: int, d: int, kernel: str = "phi") -> list[Check]:
    """(F^r(x, y) - F^r(z, w)) K = 0 on every z,w-homogeneous part of degree <= d.

    Both operators preserve z,w-homogeneity (their coefficients are homogeneous
    of degree zero), so each homogeneous part is checked on its own.
    """
    if d < 0:
        raise TruncationTooSmall("degree must be non-negative")
    if kernel not in ("phi", "psi", "psi-dilated"):
        raise ValueError(f"unknown kernel {kernel!r}")
    if kernel != "phi" and family != "H":
        raise ValueError("the Psi kernel pairs with the NS family only")
    if kernel == "phi":
        K = phi_kernel(ring, d)
    else:
        K = psi_kernel(ring, d, "stated" if kernel == "psi" else "dilated")
    left = _family_series(family, ring, order, ("x", "y"))
    right = _family_series(family, ring, order, ("z", "w"))
    n, m, N, M = (ring.arity[b] for b in "xyzw")
    inst = f"family={family} kernel={kernel} n={n} m={m} N={N} M={M} d={d}"
    out = []
    parts = [K.homogeneous_part(k) for k in range(d + 1)]
    for r in range(order + 1):
        start = time.perf_counter()
        bad = None
        for k, part in enumerate(parts):
            res = left[r].apply(part) - right[r].apply(part)
            if not res.is_zero():
                bad = (k, res)
                break
        text = "0" if bad is None else f"degree {bad[0]}: {bad[1].to_text()}"
        out.append(Check("kernel", inst, f"r={r}", text, time.perf_counter() - start))
    return out


# -- restriction ----------------------------------------------------------------------------------


def apply_at_point(op, f: MRat, point: dict[str, MRat]) -> MRat:
    """(op f)(point) as a scalar, evaluating each shifted term separately.

    Summing the shifted terms symbolically first would build a common
    denominator over every coefficient, which is hopeless in many variables.
    """
    ring = op.ring
    S = ring.scalars()
    q, t = S.q, S.t
    terms = []
    for key, c in sorted(op.terms.items()):
        shifted = dict(point)
        for v, (a, b) in zip(op.vars, key):
            name = ring.names[v]
            shifted[name] = point[name] * q**a * t**b
        terms.append(S.convert(c, point) * S.convert(f, shifted))
    return msum(terms, S)


def restriction_image(family: str, r: int, lam, N: int, base: Ring, rng: random.Random | None = None) -> dict[Partition, MRat]:
    """F_N^r p_lam in N variables, expanded in power sums of degree <= |lam|.

    The expansion is recovered from exact values at random rational points,
    using more points than unknowns; an inconsistent system raises BasisError.
    """
    lam = Partition(lam)
    if N < lam.size:
        raise BasisError(f"N={N} is smaller than |lambda|={lam.size}")
    rng = rng or random.Random(0)
    RN = base.with_banks(z=N)
    S = RN.scalars()
    op = _family_series(family, RN, r, ("z", "w"))[r]
    f = power_sum_product(lam, RN, "z")
    basis = list(partitions_up_to(lam.size))
    rows, rhs = [], []
    while len(rows) < len(basis) + 3:
        values = [random_rational(rng) for _ in range(N)]
        point = {f"z{i}": S.const(v) for i, v in enumerate(values, start=1)}
        try:
            rhs.append(apply_at_point(op, f, point))
        except PoleError:
            continue
        power = [sum(v**k for v in values) for k in range(lam.size + 1)]
        rows.append([S.const(_prod((power[k] for k in rho), 1)) for rho in basis])
    sol = solve(rows, rhs, S.zero)
    if sol is None:
        raise BasisError("no consistent power-sum expansion (too few variables?)")
    return {rho: c for rho, c in zip(basis, sol) if not c.is_zero()}


def verify_restriction(family: str, r: int, ring: Ring, d: int, seed: int = 0) -> list[Check]:
    """phi(F_N^r p_lam) = F_{n,m}^r phi(p_lam) for |lam| <= d, plus N vs N+1 stability."""
    n, m = ring.arity["x"], ring.arity["y"]
    N = d + r + n + m
    op = _family_series(family, ring, r, ("x", "y"))[r]
    out = []
    for lam in partitions_up_to(d):
        start = time.perf_counter()
        inst = f"family={family} n={n} m={m} lam={lam.to_text()} N={N}"
        image = restriction_image(family, r, lam, N, ring, random.Random(seed))
        image_next = restriction_image(family, r, lam, N + 1, ring, random.Random(seed + 1))
        lhs = phi_restriction(image, ring)
        rhs = op.apply(phi_restriction({lam: ring.scalars().one}, ring))
        out.append(Check("restriction", inst, f"r={r}", _residual_text(lhs - rhs), time.perf_counter() - start))
        stable = "0" if _dict_eq(image, image_next) else "power-sum expansions differ between N and N+1"
        out.append(Check("restriction", inst + " stability", f"r={r}", stable, time.perf_counter() - start))
    return out


def _dict_eq(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all((a.get(k) is not None and b.get(k) is not None and a[k] == b[k]) for k in keys)


# -- symmetries -------------------------------------------------------------------------------------


def kernel_bank_swap_residual(base: Ring, n: int, m: int, N: int, M: int, d: int) -> MRat:
    """Phi_{n,m;N,M}(x,y;z,w) - Phi_{N,M;n,m}(z,w;x,y).

    Every monomial of the kernel has equal x,y- and z,w-degree, so truncating
    either side at degree d keeps the same terms.
    """
    R = base.with_banks(x=n, y=m, z=N, w=M)
    Rs = base.with_banks(x=N, y=M, z=n, w=m)
    rename = {f"x{i}": R.var("z", i) for i in range(1, N + 1)}
    rename.update({f"y{j}": R.var("w", j) for j in range(1, M + 1)})
    rename.update({f"z{i}": R.var("x", i) for i in range(1, n + 1)})
    rename.update({f"w{j}": R.var("y", j) for j in range(1, m + 1)})
    return phi_kernel(R, d).to_mrat() - R.convert(phi_kernel(Rs, d).to_mrat(), rename)


def kernel_param_swap_residual(base: Ring, n: int, m: int, N: int, M: int, d: int) -> MRat:
    """Phi_{n,m;N,M}(x,y;z,w;q,t) - Phi_{m,n;M,N}(y,x;w,z;1/t,1/q); symbolic mode only."""
    if not base.symbolic:
        raise ValueError("parameter swap needs symbolic q, t")
    R = base.with_banks(x=n, y=m, z=N, w=M)
    Rs = base.with_banks(x=m, y=n, z=M, w=N)
    rename = {f"x{i}": R.var("y", i) for i in range(1, m + 1)}
    rename.update({f"y{j}": R.var("x", j) for j in range(1, n + 1)})
    rename.update({f"z{i}": R.var("w", i) for i in range(1, M + 1)})
    rename.update({f"w{j}": R.var("z", j) for j in range(1, N + 1)})
    rename.update({"q": 1 / R.t, "t": 1 / R.q})
    other = R.convert(phi_kernel(Rs, d).to_mrat(), rename)
    return phi_kernel(R, d).to_mrat() - other


def spdef_residual(ring: Ring, d: int) -> MRat:
    return phi_kernel(ring, d).to_mrat() - spdef_expansion(ring, d).to_mrat()


__all__ = [
    "Check",
    "phi_kernel",
    "psi_kernel",
    "pi_kernel",
    "spdef_expansion",
    "kajihara_phi",
    "kajihara_sides",
    "kajihara_specialised_sides",
    "heine_sides",
    "verify_kajihara",
    "verify_kernel_identity",
    "apply_at_point",
    "restriction_image",
    "verify_restriction",
    "kernel_bank_swap_residual",
    "kernel_param_swap_residual",
    "spdef_residual",
]

