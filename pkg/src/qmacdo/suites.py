"""Verification suites: configuration, parameter points and per-suite drivers.

Every suite returns ``(header, checks)``.  Parameter points are drawn
deterministically from the seed, so identical configurations give identical
reports.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from . import diffops as ops
from . import kernels, spectra
from .errors import ConfigError, PoleError
from .field import is_non_special, parse_rational, random_nonspecial_points, random_rational
from .partitions import Partition, fat_hook_contains, hook_split, partitions_up_to
from .report import Check
from .ring import MRat, Ring
from .superpoly import deformed_newton_sum, is_in_Lambda_nm, super_P, super_P_double_sum, super_Q

SUITES = (
    "kajihara",
    "kernel",
    "commute",
    "eigen",
    "wronski",
    "newton",
    "hc-generators",
    "restriction",
    "preserve",
    "independence",
    "superpoly",
    "certify",
)

IDENTITIES = {
    "kajihara": "rank-changing multiple basic hypergeometric transformation; Heine's transformation at K = L = 1",
    "kernel": "kernel identities for the deformed NS and MR generating series (Psi kernel for NS)",
    "commute": "commutativity of the deformed NS, MR and hatted operators",
    "eigen": "super-Macdonald polynomials as joint eigenfunctions with spectral-vector eigenvalues",
    "wronski": "Wronski-type relations between the two eigenvalue families and operator families",
    "newton": "Newton identities between e-natural and the deformed shifted power sums",
    "hc-generators": "Harish-Chandra layer: shifted symmetric generators and their images",
    "restriction": "restriction maps intertwine the stable and deformed operators",
    "preserve": "the operators preserve the quasi-invariant algebra; coefficient implications",
    "independence": "algebraic independence of the deformed shifted power sums (Jacobian)",
    "superpoly": "fat-hook vanishing, quasi-invariance and parameter symmetries of SP",
    "certify": "zero certification by coefficients versus kernel specialization",
}


@dataclass
class SuiteConfig:
    suite: str
    n: int = 1
    m: int = 1
    N: int = 1
    M: int = 1
    rmax: int | None = None
    order: int = 4
    deg: int | None = None
    weight: int | None = None
    lam: tuple[int, ...] | None = None
    r: int | None = None
    K: int = 1
    L: int = 1
    q: str | None = None
    t: str | None = None
    symbolic: bool = False
    seed: int = 0
    points: int = 2
    family: str = "both"
    trials: int = 50

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        for name in ("n", "m", "N", "M", "order", "K", "L", "points", "trials"):
            if getattr(self, name) < 0:
                raise ConfigError(f"--{name} must be non-negative")
        for name in ("rmax", "deg", "weight", "r"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ConfigError(f"--{name} must be non-negative")
        if (self.q is None) != (self.t is None):
            raise ConfigError("give both --q and --t, or neither")
        if self.symbolic and self.q is not None:
            raise ConfigError("--symbolic cannot be combined with explicit --q/--t")
        if self.family not in ("H", "D", "both"):
            raise ConfigError("--family must be H, D or both")
        if self.points < 1:
            raise ConfigError("--points must be at least 1")

    def get(self, name: str, default: int) -> int:
        value = getattr(self, name)
        return default if value is None else value


# -- parameter points -----------------------------------------------------------------------


@dataclass
class Point:
    label: str
    q: Fraction | None = None
    t: Fraction | None = None

    def ring(self, **banks) -> Ring:
        if self.q is None:
            return Ring(**banks)
        return Ring(**banks, q=self.q, t=self.t)


@dataclass
class Points:
    """The parameter points a suite runs at, plus a deterministic resampler."""

    items: list[Point]
    bound: int
    tag: str = ""
    fixed: bool = True

    def resample(self, index: int, attempt: int) -> Point:
        if self.fixed:
            raise ConfigError("the chosen q, t hit a pole; pick other values")
        rng = random.Random(f"resample:{self.tag}:{index}:{attempt}")
        q, t = next(random_nonspecial_points(rng, self.bound))
        return Point(f"q={q} t={t} (resampled)", q, t)


def parameter_points(cfg: SuiteConfig, bound: int) -> Points:
    """Symbolic, the user's (q, t), or ``cfg.points`` random non-special points."""
    if cfg.symbolic:
        return Points([Point("symbolic")], bound)
    if cfg.q is not None:
        q, t = parse_rational(cfg.q), parse_rational(cfg.t)
        if q in (0, 1, -1) or t in (0, 1, -1):
            raise ConfigError("q and t must avoid 0 and +-1")
        if not is_non_special(q, t, bound):
            raise ConfigError(f"q={q}, t={t} is special (q^i t^j = 1 with i + j <= {bound})")
        return Points([Point(f"q={q} t={t}", q, t)], bound)
    rng = random.Random(f"points:{cfg.seed}")
    stream = random_nonspecial_points(rng, bound)
    items = [Point(f"q={q} t={t}", q, t) for q, t in (next(stream) for _ in range(cfg.points))]
    return Points(items, bound, tag=str(cfg.seed), fixed=False)


def run_at_points(points: Points, body: Callable[[Point], list[Check]], suite: str) -> list[Check]:
    """Run ``body`` at every point; a pole in evaluation mode triggers a documented resample."""

    def one(index: int, point: Point) -> list[Check]:
        for attempt in range(10):
            try:
                return body(point)
            except PoleError as exc:
                if point.q is None:
                    return [Check(suite, point.label, "pole", f"pole: {exc}")]
                point = points.resample(index, attempt)
        return [Check(suite, point.label, "pole", "pole: resampling failed ten times")]

    results = dispatch([lambda i=i, p=p: one(i, p) for i, p in enumerate(points.items)])
    return [c for chunk in results for c in chunk]


def worker_count() -> int:
    try:
        cap = int(os.environ.get("QMACDO_THREADS", "0"))
    except ValueError as exc:
        raise ConfigError("QMACDO_THREADS must be an integer") from exc
    default = min(4, os.cpu_count() or 1)
    return max(1, min(cap, default) if cap > 0 else default)


def dispatch(jobs: list[Callable]) -> list:
    """Run independent jobs on a worker pool; results come back in job order."""
    workers = worker_count()
    if workers == 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: job(), jobs))


# -- helpers --------------------------------------------------------------------------------


def _text(value) -> str:
    if isinstance(value, MRat):
        return "0" if value.is_zero() else value.to_text()
    return "0" if value == 0 else str(value)


def _op_text(op: ops.DiffOp) -> str:
    if op.is_zero():
        return "0"
    key, coeff = min(op.terms.items())
    return f"{len(op.terms)} nonzero shift terms, e.g. {coeff.to_text()} at {key}"


def _timed(suite, instance, index, compute) -> Check:
    start = time.perf_counter()
    value = compute()
    residual = value if isinstance(value, str) else _text(value)
    return Check(suite, instance, index, residual, time.perf_counter() - start)


def _bool(flag: bool, failure: str) -> str:
    return "0" if flag else failure


def _families(cfg: SuiteConfig) -> list[str]:
    return ["H", "D"] if cfg.family == "both" else [cfg.family]


# -- suites -----------------------------------------------------------------------------------


def suite_kajihara(cfg: SuiteConfig) -> list[Check]:
    order = cfg.order
    K, L = cfg.K, cfg.L
    if K < 1 or L < 1:
        raise ConfigError("--K and --L must be at least 1")
    checks = []
    for index in range(1 if cfg.q is not None or cfg.symbolic else cfg.points):
        rng = random.Random(f"kajihara:{cfg.seed}:{index}")
        for _ in range(20):
            if cfg.symbolic:
                q = Ring().q
            elif cfg.q is not None:
                q = parse_rational(cfg.q)
            else:
                q = random_rational(rng)
            params = {
                "q": q,
                "a": [random_rational(rng) for _ in range(K)],
                "X": [random_rational(rng) for _ in range(K)],
                "b": [random_rational(rng) for _ in range(L)],
                "Y": [random_rational(rng) for _ in range(L)],
                "c": random_rational(rng),
            }
            try:
                found = kernels.verify_kajihara(K, L, params, order)
            except (PoleError, ZeroDivisionError):
                continue
            label = "symbolic q" if cfg.symbolic else f"q={q}"
            for c in found:
                c.instance = f"{c.instance} set={index} {label}"
            checks += found
            break
        else:
            checks.append(Check("kajihara", f"K={K} L={L} set={index}", "pole", "pole: no regular parameter set found"))
    return checks


def suite_kernel(cfg: SuiteConfig) -> list[Check]:
    rmax, deg = cfg.get("rmax", 2), cfg.get("deg", 4)
    points = parameter_points(cfg, 2 * max(rmax, deg, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m, z=cfg.N, w=cfg.M)
        out = []
        for fam in _families(cfg):
            out += kernels.verify_kernel_identity(fam, R, rmax, deg)
            if fam == "H":
                # the stated Psi only holds without w variables
                R0 = point.ring(x=cfg.n, y=cfg.m, z=cfg.N)
                out += kernels.verify_kernel_identity("H", R0, rmax, deg, kernel="psi")
                if cfg.M:
                    out += kernels.verify_kernel_identity("H", R, rmax, deg, kernel="psi-dilated")
        for c in out:
            c.instance += f" {point.label}"
        return out

    return run_at_points(points, body, "kernel")


def suite_commute(cfg: SuiteConfig) -> list[Check]:
    rmax = cfg.get("rmax", 3)
    points = parameter_points(cfg, 2 * max(rmax, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        H, D = ops.ns_series(R, rmax), ops.mr_series_swap(R, rmax)
        hat_max = min(rmax, 2)
        Hh = [ops.hat_variant("H", r, R) for r in range(hat_max + 1)]
        Dh = [ops.hat_variant("D", r, R) for r in range(hat_max + 1)]
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        out = []
        for r in range(1, rmax + 1):
            for s in range(1, rmax + 1):
                pairs = [("H,D", H[r], D[s])]
                if r < s:
                    pairs += [("H,H", H[r], H[s]), ("D,D", D[r], D[s])]
                for name, a, b in pairs:
                    out.append(_timed("commute", inst, f"[{name}] r={r} s={s}", lambda a=a, b=b: _op_text(ops.commutator(a, b))))
        for r in range(1, hat_max + 1):
            for s in range(1, hat_max + 1):
                for name, a, b in [("Hhat,H", Hh[r], H[s]), ("Dhat,D", Dh[r], D[s]), ("Hhat,D", Hh[r], D[s])]:
                    out.append(_timed("commute", inst, f"[{name}] r={r} s={s}", lambda a=a, b=b: _op_text(ops.commutator(a, b))))
        return out

    return run_at_points(points, body, "commute")


def _eigen_partitions(cfg: SuiteConfig) -> list[Partition]:
    if cfg.lam is not None:
        lam = Partition(cfg.lam)
        hook_split(cfg.n, cfg.m, lam)  # raises NotInHook outside the fat hook
        return [lam]
    weight = cfg.get("weight", 4)
    return [lam for lam in partitions_up_to(weight) if fat_hook_contains(cfg.n, cfg.m, lam)]


def suite_eigen(cfg: SuiteConfig) -> list[Check]:
    rmax = cfg.r if cfg.r is not None else cfg.get("rmax", 3)
    rs = [cfg.r] if cfg.r is not None else list(range(rmax + 1))
    lams = _eigen_partitions(cfg)
    points = parameter_points(cfg, 2 * max(rmax + max((l.size for l in lams), default=0), 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        S = R.scalars()
        H, D = ops.ns_series(R, rmax), ops.mr_series_swap(R, rmax)
        G, E = spectra.G_natural(R, rmax), spectra.E_natural(R, rmax)
        out = []
        for lam in lams:
            sp = super_P(lam, R)
            pt = spectra.spectral_vector(lam, cfg.n, cfg.m, R)
            gi, ei = inverted_eigenvalues(point, lam, cfg.n, cfg.m, rmax)
            inst = f"n={cfg.n} m={cfg.m} lam={lam.to_text() or '0'} {point.label}"
            for r in rs:
                cases = [
                    ("H", H[r], S(G[r].substitute(pt))),
                    ("D", D[r], S((E[r] * (-1) ** r).substitute(pt))),
                    ("Hhat", ops.hat_variant("H", r, R), S(gi[r])),
                    ("Dhat", ops.hat_variant("D", r, R), S(ei[r])),
                ]
                for name, op, value in cases:
                    check = _timed("eigen", inst, f"{name} r={r}", lambda op=op, value=value: op.apply(sp) - R(value) * sp)
                    check.extra = {"eigenvalue": value.to_text()}
                    out.append(check)
        return out

    return run_at_points(points, body, "eigen")


def inverted_eigenvalues(point: Point, lam, n: int, m: int, order: int) -> tuple[list, list]:
    """g_r and e_r at parameters (1/q, 1/t), evaluated on the inverted spectral point.

    The hatted operators are the plain ones at inverted parameters (with y
    rescaled), so these are their eigenvalues on SP_lam.
    """
    mu, nu = hook_split(n, m, lam)
    if point.q is None:
        R = Ring(x=n, y=m)
        q, t = R.q, R.t
        target = {f"x{i}": q ** (-mu.part(i)) for i in range(1, n + 1)}
        target.update({f"y{j}": t ** (nu.part(j) + n) for j in range(1, m + 1)})
        target.update({"q": 1 / q, "t": 1 / t})
        S = R.scalars()
        G, E = spectra.G_natural(R, order), spectra.E_natural(R, order)
        return ([S(c.substitute(target)) for c in G.coeffs],
                [S(c.substitute(target)) * (-1) ** r for r, c in enumerate(E.coeffs)])
    Ri = Ring(x=n, y=m, q=1 / point.q, t=1 / point.t)
    target = {f"x{i}": Ri.const(point.q ** (-mu.part(i))) for i in range(1, n + 1)}
    target.update({f"y{j}": Ri.const(point.t ** (nu.part(j) + n)) for j in range(1, m + 1)})
    G, E = spectra.G_natural(Ri, order), spectra.E_natural(Ri, order)
    return ([c.substitute(target).constant_value() for c in G.coeffs],
            [c.substitute(target).constant_value() * (-1) ** r for r, c in enumerate(E.coeffs)])


def suite_wronski(cfg: SuiteConfig) -> list[Check]:
    kmax = cfg.get("rmax", 5)
    opk = min(kmax, 3)
    points = parameter_points(cfg, 2 * max(kmax, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        out = [_timed("wronski", inst, f"scalar k={k}", lambda k=k: spectra.wronski_residual(k, R)) for k in range(1, kmax + 1)]
        out += [
            _timed("wronski", inst, f"operator k={k}", lambda k=k: _op_text(ops.wronski_operator(k, R)))
            for k in range(1, opk + 1)
        ]
        return out

    return run_at_points(points, body, "wronski")


def suite_newton(cfg: SuiteConfig) -> list[Check]:
    rmax = cfg.get("rmax", 5)
    points = parameter_points(cfg, 2 * max(rmax, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        return [_timed("newton", inst, f"r={r}", lambda r=r: spectra.newton_residual(r, R)) for r in range(1, rmax + 1)]

    return run_at_points(points, body, "newton")


def suite_hc(cfg: SuiteConfig) -> list[Check]:
    rmax = cfg.get("rmax", 4)
    weight = cfg.get("weight", 6)
    points = parameter_points(cfg, 2 * max(rmax, weight, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        base = R.scalars()
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        out = []
        for r in range(1, rmax + 1):

            def image(r=r):
                RN = base.with_banks(x=cfg.n, y=cfg.m, z=r)
                expansion = spectra.expand_in_p_star(spectra.shifted_g_star(r, RN), r)
                return spectra.phi_natural(expansion, RN) - RN(spectra.G_natural_coeff(r, R))

            out.append(_timed("hc-generators", inst, f"phi(g*_{r}) = g_{r}", image))
        for r in range(min(rmax, 3) + 1):
            out.append(_timed("hc-generators", inst, f"g_{r} shifted quasi-invariant",
                              lambda r=r: _bool(spectra.is_in_Lambda_natural(spectra.G_natural_coeff(r, R)), "fails")))
            out.append(_timed("hc-generators", inst, f"e_{r} shifted quasi-invariant",
                              lambda r=r: _bool(spectra.is_in_Lambda_natural(spectra.E_natural_coeff(r, R)), "fails")))
        RN = base.with_banks(z=max(cfg.N, 1))
        for r, res in enumerate(spectra.exp_log_residuals(RN, rmax)):
            out.append(Check("hc-generators", inst + f" N={RN.arity['z']}", f"exp-log u^{r}", _text(res)))
        for N in range(2, 5):
            for r in range(4):
                out.append(_timed("hc-generators", inst, f"stability N={N} r={r}",
                                  lambda N=N, r=r: spectra.g_star_stability_residual(r, N, base)))
        rk, count = spectra.g_star_independence(4, 4, base)
        out.append(Check("hc-generators", inst + " N=4", "g* products independent (|lam| <= 4)",
                         _bool(rk == count, f"rank {rk} < {count}")))
        rng = random.Random(f"hc:{cfg.seed}")
        bad = spectra.harish_chandra_violations(R, 3, weight, cfg.trials, rng)
        out.append(Check("hc-generators", inst + f" D={weight}", f"{cfg.trials} random relations nonvanishing on spectra",
                         _bool(not bad, f"{len(bad)} relations vanish: {bad[:2]}")))
        return out

    return run_at_points(points, body, "hc-generators")


def suite_restriction(cfg: SuiteConfig) -> list[Check]:
    rmax, deg = cfg.get("rmax", 2), cfg.get("deg", 3)
    points = parameter_points(cfg, 2 * max(rmax + deg, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        out = []
        for fam in _families(cfg):
            for r in range(rmax + 1):
                out += kernels.verify_restriction(fam, r, R, deg, seed=cfg.seed)
        for c in out:
            c.instance += f" {point.label}"
        return out

    return run_at_points(points, body, "restriction")


def suite_preserve(cfg: SuiteConfig) -> list[Check]:
    deg, rmax, weight = cfg.get("deg", 3), cfg.get("rmax", 3), cfg.get("weight", 4)
    if cfg.n < 1 or cfg.m < 1:
        raise ConfigError("preserve needs n, m >= 1")
    points = parameter_points(cfg, 2 * max(rmax + weight, deg, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        out = []
        for label, (mu, I), res in ops.implication_residuals(R, deg):
            out.append(Check("preserve", inst, f"implication {label} mu={mu} I={I}", _text(res)))
        for (mu, I, bank, i), res in ops.equivariance_residuals(R, deg):
            out.append(Check("preserve", inst, f"equivariance mu={mu} I={I} swap {bank}{i}", _text(res)))
        inputs = [(f"SP_{lam.to_text() or '0'}", super_P(lam, R)) for lam in partitions_up_to(weight)]
        inputs = [(name, f) for name, f in inputs if not f.is_zero()]
        inputs += [(f"p_{r}", deformed_newton_sum(r, R)) for r in range(1, 4)]
        H, D = ops.ns_series(R, rmax), ops.mr_series_swap(R, rmax)
        for r in range(1, rmax + 1):
            for name, f in inputs:
                for fam, op in (("H", H[r]), ("D", D[r])):
                    out.append(_timed("preserve", inst, f"{fam}^{r} {name} stays in algebra",
                                      lambda op=op, f=f: _bool(ops.preserves_algebra(op, f), "leaves the algebra")))
        return out

    return run_at_points(points, body, "preserve")


def suite_independence(cfg: SuiteConfig) -> list[Check]:
    points = parameter_points(cfg, 2 * (cfg.n + cfg.m + 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        out = [_timed("independence", inst, "jacobian nonzero",
                      lambda: _bool(spectra.jacobian_independence(R), "jacobian vanishes"))]

        def witness():
            coeff, closed = spectra.jacobian_witness(R)
            if closed.is_zero():
                return "closed form vanishes"
            return coeff - closed

        out.append(_timed("independence", inst, "witness coefficient matches closed form", witness))
        return out

    return run_at_points(points, body, "independence")


def suite_superpoly(cfg: SuiteConfig) -> list[Check]:
    weight = cfg.get("weight", 5)
    points = parameter_points(cfg, 2 * max(weight + 1, 1))

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        q, t = R.q, R.t
        out = []
        for lam in partitions_up_to(weight + 1):
            name = lam.to_text() or "0"
            if not fat_hook_contains(cfg.n, cfg.m, lam):
                out.append(_timed("superpoly", inst, f"SP_{name} vanishes outside hook", lambda lam=lam: super_P(lam, R)))
                continue
            if lam.size > weight:
                continue
            sp = super_P(lam, R)
            out.append(Check("superpoly", inst, f"SP_{name} nonzero in hook", _bool(not sp.is_zero(), "vanishes")))
            out.append(_timed("superpoly", inst, f"SP_{name} quasi-invariant",
                              lambda sp=sp: _bool(is_in_Lambda_nm(sp), "fails")))
            if lam.size <= 4:
                out.append(_timed("superpoly", inst, f"SP_{name} skew form = double sum",
                                  lambda lam=lam, sp=sp: sp - super_P_double_sum(lam, R)))
                y_scaled = {f"y{j}": R.var("y", j) / (q * t) for j in range(1, cfg.m + 1)}
                out.append(_timed("superpoly", inst, f"SP_{name} inverted parameters",
                                  lambda lam=lam, sp=sp: super_P(lam, R, (1 / q, 1 / t)) - sp.substitute(y_scaled)))
                out.append(_timed("superpoly", inst, f"SP_{name} role swap",
                                  lambda lam=lam, sp=sp: super_Q(lam.conjugate(), R, (1 / t, 1 / q), banks=("y", "x"))
                                  - (-q) ** (-lam.size) * sp))
        return out

    return run_at_points(points, body, "superpoly")


def suite_certify(cfg: SuiteConfig) -> list[Check]:
    points = parameter_points(cfg, 8)

    def body(point: Point) -> list[Check]:
        R = point.ring(x=cfg.n, y=cfg.m)
        H, D = ops.ns_series(R, 3), ops.mr_series_swap(R, 3)
        pairs = [(H[1], H[2]), (H[1], H[3]), (H[2], H[3]), (D[1], D[2]), (D[1], D[3]),
                 (D[2], D[3]), (H[1], D[1]), (H[1], D[2]), (H[2], D[1]), (H[2], D[2])]
        rng = random.Random(f"certify:{cfg.seed}")
        inst = f"n={cfg.n} m={cfg.m} {point.label}"
        out = []
        xs, ys = R.bank("x"), R.bank("y")
        for k, (a, b) in enumerate(pairs):
            zero = ops.commutator(a, b)
            key = tuple((rng.randint(0, 2), 0) for _ in xs) + tuple((0, -rng.randint(0, 1)) for _ in ys)
            coeff = R(rng.randint(1, 9)) * xs[0] ** rng.randint(0, 1) / (xs[0] - R.q * ys[0])
            perturbed = zero + ops.DiffOp.shift(R, zero.vars, key, coeff)
            for label, op, expect_zero in (("zero", zero, True), ("perturbed", perturbed, False)):
                by_coeff = ops.certify_zero(op)
                by_spec, pivot = ops.certify_zero(op, "specialization")
                agree = by_coeff == by_spec == expect_zero
                located = expect_zero or pivot is not None
                text = "0" if agree and located else f"coefficients={by_coeff} specialization={by_spec} pivot={pivot}"
                c = Check("certify", inst, f"{label} #{k}", text)
                c.extra = {"pivot": str(pivot)}
                out.append(c)
        return out

    return run_at_points(points, body, "certify")


RUNNERS: dict[str, Callable[[SuiteConfig], list[Check]]] = {
    "kajihara": suite_kajihara,
    "kernel": suite_kernel,
    "commute": suite_commute,
    "eigen": suite_eigen,
    "wronski": suite_wronski,
    "newton": suite_newton,
    "hc-generators": suite_hc,
    "restriction": suite_restriction,
    "preserve": suite_preserve,
    "independence": suite_independence,
    "superpoly": suite_superpoly,
    "certify": suite_certify,
}


def run_suite(cfg: SuiteConfig) -> tuple[dict, list[Check]]:
    cfg.validate()
    checks = RUNNERS[cfg.suite](cfg)
    config = {k: v for k, v in asdict(cfg).items() if v is not None}
    if config.get("lam") is not None:
        config["lam"] = list(config["lam"])
    header = {"suite": cfg.suite, "identity": IDENTITIES[cfg.suite], "config": config}
    return header, checks
