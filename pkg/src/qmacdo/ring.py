"""Sparse multivariate rational functions over Q(q, t) or Q.

A :class:`Ring` fixes the variable banks ``x, y, z, w`` (1-based indices) and
the parameter mode.  In symbolic mode ``q`` and ``t`` are extra polynomial
generators, so an element is a single reduced fraction of two polynomials in
all variables; in evaluation mode ``q`` and ``t`` are rational constants.
Multiplicative shifts ``v -> q^a t^b v`` with negative exponents are handled
natively, which is what makes Laurent coefficients such as ``x_i / (t y_j)``
unproblematic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

import flint

from .errors import PoleError
from .field import is_root_of_unity_free, parse_rational

BANKS = ("x", "y", "z", "w")

Scale = tuple[int, int]  # (q-exponent, t-exponent)


def _fmpq(value) -> flint.fmpq:
    if isinstance(value, flint.fmpq):
        return value
    value = Fraction(value)
    return flint.fmpq(value.numerator, value.denominator)


def _frac(value: flint.fmpq) -> Fraction:
    return Fraction(int(value.p), int(value.q))


class Ring:
    """Polynomial ring context; create elements through its helpers."""

    def __init__(self, x: int = 0, y: int = 0, z: int = 0, w: int = 0, *, q=None, t=None):
        if (q is None) != (t is None):
            raise ValueError("give both q and t, or neither (symbolic mode)")
        self.arity = {"x": x, "y": y, "z": z, "w": w}
        if any(a < 0 for a in self.arity.values()):
            raise ValueError("bank arities must be non-negative")
        self.symbolic = q is None
        if not self.symbolic:
            q, t = parse_rational(q), parse_rational(t)
            if q == 0 or t == 0:
                raise ValueError("q and t must be nonzero")
            if not (is_root_of_unity_free(q) and is_root_of_unity_free(t)):
                raise ValueError("q and t must not be roots of unity")
        self.qval = q
        self.tval = t
        names = ["q", "t"] if self.symbolic else []
        for bank in BANKS:
            names += [f"{bank}{i}" for i in range(1, self.arity[bank] + 1)]
        self.names = tuple(names)
        self.index = {name: k for k, name in enumerate(names)}
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names, "deglex")
        self._gens = self.ctx.gens()
        self._key = (self.names, self.qval, self.tval)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        banks = ", ".join(f"{b}={a}" for b, a in self.arity.items() if a)
        mode = "symbolic" if self.symbolic else f"q={self.qval}, t={self.tval}"
        return f"Ring({banks}{', ' if banks else ''}{mode})"

    @property
    def fingerprint(self) -> tuple:
        """Identifies the scalar field (mode and parameter values)."""
        return (self.symbolic, self.qval, self.tval)

    def with_banks(self, **arity) -> "Ring":
        """Same parameter mode, different banks."""
        full = {b: arity.get(b, 0) for b in BANKS}
        if self.symbolic:
            return Ring(**full)
        return Ring(**full, q=self.qval, t=self.tval)

    def scalars(self) -> "Ring":
        return self.with_banks()

    # -- elements ---------------------------------------------------------------
    def _wrap_poly(self, poly) -> "MRat":
        return MRat(self, poly, self.ctx.constant(1), reduced=True)

    @cached_property
    def one(self) -> "MRat":
        return self._wrap_poly(self.ctx.constant(1))

    @cached_property
    def zero(self) -> "MRat":
        return self._wrap_poly(self.ctx.constant(0))

    def const(self, value) -> "MRat":
        return self._wrap_poly(self.ctx.constant(_fmpq(value)))

    @cached_property
    def q(self) -> "MRat":
        if self.symbolic:
            return self._wrap_poly(self._gens[0])
        return self.const(self.qval)

    @cached_property
    def t(self) -> "MRat":
        if self.symbolic:
            return self._wrap_poly(self._gens[1])
        return self.const(self.tval)

    def var(self, bank: str, i: int) -> "MRat":
        if not 1 <= i <= self.arity[bank]:
            raise IndexError(f"{bank}{i} not in {self!r}")
        return self._wrap_poly(self._gens[self.index[f"{bank}{i}"]])

    def bank(self, bank: str) -> list["MRat"]:
        return [self.var(bank, i) for i in range(1, self.arity[bank] + 1)]

    def var_index(self, bank: str, i: int) -> int:
        return self.index[f"{bank}{i}"]

    def __call__(self, value) -> "MRat":
        """Coerce ints, rationals, text and elements of compatible rings."""
        if isinstance(value, MRat):
            if value.ring == self:
                return value
            return self.convert(value)
        if isinstance(value, (int, Fraction, flint.fmpq)):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def convert(self, value: "MRat", mapping: Mapping[str, "MRat"] | None = None) -> "MRat":
        """Move ``value`` into this ring, matching variables by name.

        ``mapping`` overrides the image of individual source variables.
        Symbolic q, t are evaluated when this ring is in evaluation mode.
        """
        src = value.ring
        mapping = dict(mapping or {})
        images = []
        used = None
        for name in src.names:
            if name in mapping:
                images.append(self(mapping[name]))
            elif name in self.index:
                images.append(self._wrap_poly(self._gens[self.index[name]]))
            elif name == "q":
                images.append(self.q)
            elif name == "t":
                images.append(self.t)
            else:
                used = value.variables() if used is None else used
                if name in used:
                    raise ValueError(f"variable {name} has no image in {self!r}")
                images.append(self.zero)
        if not src.symbolic and not self.symbolic and src.fingerprint != self.fingerprint:
            raise ValueError("cannot move values between different evaluation points")
        return _compose(value, images, self)

    # -- text ---------------------------------------------------------------------
    _TERM = re.compile(r"^([a-z]\d*)(?:\^(-?\d+))?$")

    def parse(self, text: str) -> "MRat":
        """Parse the canonical grammar produced by :meth:`MRat.to_text`."""
        text = text.strip()
        if text.startswith("(") and ")/(" in text:
            depth = 0
            for k, ch in enumerate(text):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            num, rest = text[1:k], text[k + 1 :]
            if rest.startswith("/(") and rest.endswith(")"):
                return self.parse(num) / self.parse(rest[2:-1])
        total = self.zero
        for chunk in text.split(" + "):
            total = total + self._parse_term(chunk.strip())
        return total

    def _parse_term(self, chunk: str) -> "MRat":
        coeff, _, rest = chunk.partition(" * ")
        try:
            value = self.const(parse_rational(coeff))
        except ValueError:
            value, rest = self.one, chunk
        for factor in rest.split():
            m = self._TERM.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name == "q":
                base = self.q
            elif name == "t":
                base = self.t
            else:
                base = self._wrap_poly(self._gens[self.index[name]])
            value = value * base**exp
        return value

    def sum(self, items: Iterable["MRat"]) -> "MRat":
        return msum(items, self)


def _compose(value: "MRat", images: list["MRat"], ring: Ring) -> "MRat":
    if all(img.den.is_constant() for img in images):
        polys = [img.num * (1 / img.den.leading_coefficient()) for img in images]
        if polys:
            num = value.num.compose(*polys, ctx=ring.ctx)
            den = value.den.compose(*polys, ctx=ring.ctx)
        else:
            num = ring.ctx.constant(value.num.leading_coefficient()) if not value.num.is_zero() else ring.ctx.constant(0)
            den = ring.ctx.constant(value.den.leading_coefficient())
        if den.is_zero():
            raise PoleError("denominator vanishes after substitution")
        return MRat(ring, num, den)
    return _eval_poly(value.num, images, ring) / _nonzero(_eval_poly(value.den, images, ring))


def _nonzero(x: "MRat") -> "MRat":
    if x.is_zero():
        raise PoleError("denominator vanishes after substitution")
    return x


def _eval_poly(poly, images: list["MRat"], ring: Ring) -> "MRat":
    """Evaluate a polynomial at rational images term by term."""
    powers: dict[tuple[int, int], MRat] = {}
    total = []
    for exps, c in poly.to_dict().items():
        term = ring.const(c)
        for k, e in enumerate(exps):
            if e:
                key = (k, e)
                if key not in powers:
                    powers[key] = images[k] ** e
                term = term * powers[key]
        total.append(term)
    return msum(total, ring)


def msum(items: Iterable["MRat"], ring: Ring) -> "MRat":
    """Sum with a single normalisation at the end (common denominator by lcm)."""
    items = [x for x in items if not x.is_zero()]
    if not items:
        return ring.zero
    if len(items) == 1:
        return items[0]
    den = items[0].den
    for x in items[1:]:
        if x.den != den:
            g = den.gcd(x.den)
            den = den * (x.den / g)
    num = ring.ctx.constant(0)
    for x in items:
        num += x.num * (den / x.den)
    return MRat(ring, num, den)


class MRat:
    """Reduced fraction num/den with a monic (deglex leading coefficient 1) denominator."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: Ring, num, den=None, *, reduced: bool = False, coprime: bool = False):
        self.ring = ring
        if den is None:
            den = ring.ctx.constant(1)
        if not reduced:
            if den.is_zero():
                raise PoleError("zero denominator")
            if num.is_zero():
                num, den = ring.ctx.constant(0), ring.ctx.constant(1)
            elif not coprime and not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num = num / g
                    den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    # -- predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        """Polynomial over the scalars: the denominator may involve only q and t."""
        if self.den.is_constant():
            return True
        names = self.ring.names
        return all(
            names[k] in ("q", "t") for exps in self.den.to_dict() for k, e in enumerate(exps) if e
        )

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return Fraction(0)
        return _frac(self.num.leading_coefficient())

    def variables(self) -> set[str]:
        out = set()
        for poly in (self.num, self.den):
            for exps in poly.to_dict():
                out.update(self.ring.names[k] for k, e in enumerate(exps) if e)
        return out

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "MRat":
        if isinstance(other, MRat):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        return self.ring(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return MRat(self.ring, self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        a = other.den / g
        b = self.den / g
        return MRat(self.ring, self.num * a + other.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return MRat(self.ring, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.ring.zero
        if self.den.is_constant() and other.den.is_constant():
            return MRat(self.ring, self.num * other.num, self.den * other.den)
        a_num, a_den, b_num, b_den = self.num, self.den, other.num, other.den
        g1 = a_num.gcd(b_den)
        if not g1.is_constant():
            a_num, b_den = a_num / g1, b_den / g1
        g2 = b_num.gcd(a_den)
        if not g2.is_constant():
            b_num, a_den = b_num / g2, a_den / g2
        return MRat(self.ring, a_num * b_num, a_den * b_den, coprime=True)

    __rmul__ = __mul__

    def inverse(self) -> "MRat":
        if self.is_zero():
            raise PoleError("division by zero")
        return MRat(self.ring, self.den, self.num, coprime=True)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return MRat(self.ring, self.num**k, self.den**k, reduced=True)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    # -- substitution ---------------------------------------------------------
    def scale(self, factors: Mapping[int, Scale]) -> "MRat":
        """Apply ``v_k -> q^a t^b v_k`` for each variable index ``k -> (a, b)``."""
        factors = {k: s for k, s in factors.items() if s != (0, 0)}
        if not factors or self.is_zero():
            return self
        ring = self.ring
        if not ring.symbolic or all(a >= 0 and b >= 0 for a, b in factors.values()):
            images = list(ring._gens)
            for k, (a, b) in factors.items():
                if ring.symbolic:
                    images[k] = images[k] * ring._gens[0] ** a * ring._gens[1] ** b
                else:
                    images[k] = images[k] * _fmpq(ring.qval**a * ring.tval**b)
            num = self.num.compose(*images, ctx=ring.ctx)
            den = self.den.compose(*images, ctx=ring.ctx)
            return MRat(ring, num, den, coprime=True)
        num, nq, nt = _scale_laurent(self.num, factors, ring)
        den, dq, dt = _scale_laurent(self.den, factors, ring)
        eq, et = nq - dq, nt - dt
        q, t = ring._gens[0], ring._gens[1]
        if eq > 0:
            num = num * q**eq
        elif eq < 0:
            den = den * q ** (-eq)
        if et > 0:
            num = num * t**et
        elif et < 0:
            den = den * t ** (-et)
        return MRat(ring, num, den, coprime=True)

    def substitute(self, assignments: Mapping[str, "MRat"]) -> "MRat":
        """Simultaneous substitution of named variables; raises PoleError if the
        denominator vanishes identically."""
        return self.ring.convert(self, assignments)

    def evaluate(self, values: Mapping[str, object]) -> "MRat":
        return self.substitute({k: self.ring(v) for k, v in values.items()})

    def derivative(self, name: str) -> "MRat":
        k = self.ring.index[name]
        n, d = self.num, self.den
        return MRat(self.ring, n.derivative(k) * d - n * d.derivative(k), d * d)

    # -- output -----------------------------------------------------------------
    def to_text(self) -> str:
        num = poly_to_text(self.num, self.ring)
        if self.den.is_one():
            return num
        return f"({num})/({poly_to_text(self.den, self.ring)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MRat({self.to_text()})"


def _scale_laurent(poly, factors, ring: Ring):
    """Scale, then divide out the largest q^a t^b; returns (poly', a, b) with
    scaled(poly) = poly' q^a t^b."""
    items = []
    for exps, c in poly.to_dict().items():
        exps = list(exps)
        for k, (a, b) in factors.items():
            e = exps[k]
            if e:
                exps[0] += a * e
                exps[1] += b * e
        items.append((exps, c))
    q_off = min(e[0] for e, _ in items)
    t_off = min(e[1] for e, _ in items)
    out = {}
    for exps, c in items:
        exps[0] -= q_off
        exps[1] -= t_off
        out[tuple(exps)] = c
    return ring.ctx.from_dict(out), q_off, t_off


def poly_to_text(poly, ring: Ring) -> str:
    """Canonical text: terms ``c * q^a t^b x1^e ...`` in descending deglex order."""
    if poly.is_zero():
        return "0"
    terms = []
    items = sorted(poly.to_dict().items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    for exps, c in items:
        factors = []
        for name, e in zip(ring.names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        coeff = str(_frac(c))
        terms.append(f"{coeff} * {' '.join(factors)}" if factors else coeff)
    return " + ".join(terms)


def bank_coefficients(value: "MRat", banks: tuple[str, ...]) -> dict[tuple[int, ...], "MRat"]:
    """Coefficients of ``value`` as a polynomial in the variables of ``banks``,
    returned as scalars of ``value.ring.scalars()`` keyed by exponent tuples."""
    ring = value.ring
    idx = [ring.var_index(b, i) for b in banks for i in range(1, ring.arity[b] + 1)]
    rest = [k for k in range(len(ring.names)) if k not in idx]
    used = value.variables()
    if any(ring.names[k] not in ("q", "t") and ring.names[k] in used for k in rest):
        raise ValueError("only scalar variables may remain outside the banks")
    den_vars = {k for exps in value.den.to_dict() for k, e in enumerate(exps) if e}
    if den_vars & set(idx):
        raise ValueError("denominator involves bank variables")
    S = ring.scalars()
    den = S.convert(MRat(ring, value.den, reduced=True))
    keep = [k for k in rest if ring.names[k] in ("q", "t")]
    buckets: dict = {}
    for exps, c in value.num.to_dict().items():
        buckets.setdefault(tuple(exps[k] for k in idx), {})[tuple(exps[k] for k in keep)] = c
    return {mono: MRat(S, S.ctx.from_dict(d)) / den for mono, d in buckets.items()}


# -- truncated series in the z, w banks -------------------------------------------


class TruncSeries:
    """Power series in designated banks, truncated at total degree ``degree``.

    ``terms`` maps exponent tuples (over the series variables, bank order) to
    coefficients, which are MRat values free of the series variables.
    """

    def __init__(self, ring: Ring, banks: tuple[str, ...], degree: int, terms=None):
        self.ring = ring
        self.banks = banks
        self.degree = degree
        self.svars = [(b, i) for b in banks for i in range(1, ring.arity[b] + 1)]
        self.terms: dict[tuple[int, ...], MRat] = {}
        for mono, c in (terms or {}).items():
            if sum(mono) <= degree and not c.is_zero():
                self.terms[mono] = c

    @classmethod
    def one(cls, ring, banks, degree) -> "TruncSeries":
        s = cls(ring, banks, degree)
        s.terms[tuple(0 for _ in s.svars)] = ring.one
        return s

    def _like(self, terms) -> "TruncSeries":
        return TruncSeries(self.ring, self.banks, self.degree, terms)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self._like({k: v * other for k, v in self.terms.items()})
        if other.degree != self.degree or other.banks != self.banks:
            raise ValueError("incompatible series")
        out: dict[tuple[int, ...], list[MRat]] = {}
        for ma, ca in self.terms.items():
            da = sum(ma)
            for mb, cb in other.terms.items():
                if da + sum(mb) > self.degree:
                    continue
                key = tuple(a + b for a, b in zip(ma, mb))
                out.setdefault(key, []).append(ca * cb)
        return self._like({k: msum(v, self.ring) for k, v in out.items()})

    __rmul__ = __mul__

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out)

    def __sub__(self, other):
        return self + other * (-1)

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.terms == other.terms

    def truncate(self, degree: int) -> "TruncSeries":
        return TruncSeries(self.ring, self.banks, degree, self.terms)

    def monomial(self, mono) -> MRat:
        out = self.ring.one
        for (b, i), e in zip(self.svars, mono):
            if e:
                out = out * self.ring.var(b, i) ** e
        return out

    def homogeneous_part(self, k: int) -> MRat:
        return msum((c * self.monomial(m) for m, c in self.terms.items() if sum(m) == k), self.ring)

    def to_mrat(self) -> MRat:
        return msum((c * self.monomial(m) for m, c in self.terms.items()), self.ring)

    @classmethod
    def from_mrat(cls, value: MRat, banks, degree) -> "TruncSeries":
        """Split a polynomial (in the series variables) into series form."""
        ring = value.ring
        s = cls(ring, banks, degree)
        idx = [ring.var_index(b, i) for b, i in s.svars]
        if any(exps[k] for exps in value.den.to_dict() for k in idx):
            raise ValueError("series form needs a polynomial in the series variables")
        buckets: dict[tuple, dict] = {}
        for exps, c in value.num.to_dict().items():
            mono = tuple(exps[k] for k in idx)
            if sum(mono) > degree:
                continue
            rest = list(exps)
            for k in idx:
                rest[k] = 0
            buckets.setdefault(mono, {})[tuple(rest)] = c
        inv = value.den
        for mono, d in buckets.items():
            s.terms[mono] = MRat(ring, ring.ctx.from_dict(d), inv)
        return s

    def to_text(self) -> str:
        lines = []
        for mono in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            name = " ".join(f"{b}{i}^{e}" if e > 1 else f"{b}{i}" for (b, i), e in zip(self.svars, mono) if e) or "1"
            lines.append(f"{name} | {self.terms[mono].to_text()}")
        return "\n".join(lines)


def split_monomial(g: MRat, banks: tuple[str, ...]) -> tuple[MRat, tuple[int, ...]]:
    """Write a monomial ``g`` as (coefficient free of ``banks``) * (series monomial)."""
    ring = g.ring
    if len(g.num.to_dict()) != 1 or len(g.den.to_dict()) != 1:
        raise ValueError("gauge must be a single monomial")
    svars = [(b, i) for b in banks for i in range(1, ring.arity[b] + 1)]
    (ne, nc), = g.num.to_dict().items()
    (de, dc), = g.den.to_dict().items()
    mono = []
    rest_n, rest_d = list(ne), list(de)
    for b, i in svars:
        k = ring.var_index(b, i)
        mono.append(ne[k] - de[k])
        rest_n[k] = rest_d[k] = 0
    if any(e < 0 for e in mono):
        raise ValueError("gauge must have non-negative series exponents")
    coeff = MRat(ring, ring.ctx.from_dict({tuple(rest_n): nc}), ring.ctx.from_dict({tuple(rest_d): dc}))
    return coeff, tuple(mono)


def q_binomial_series(a: MRat, base: MRat, gauge: MRat, degree: int, banks=("z", "w")) -> TruncSeries:
    """Truncation of (a g; base)_inf / (g; base)_inf = sum_k (a; base)_k/(base; base)_k g^k."""
    from .field import qbinomial_coefficients

    ring = gauge.ring
    coeff, mono = split_monomial(gauge, banks)
    step = sum(mono)
    if step == 0:
        raise ValueError("gauge must involve a series variable")
    kmax = degree // step
    coeffs = qbinomial_coefficients(ring(a), ring(base), kmax)
    s = TruncSeries(ring, banks, degree)
    power = ring.one
    for k in range(kmax + 1):
        s.terms[tuple(k * e for e in mono)] = coeffs[k] * power
        power = power * coeff
    return s


# -- power series in an auxiliary variable u ------------------------------------------


class USeries:
    """Truncated power series sum_{r <= order} c_r u^r with coefficients in any ring-like type."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: list, zero=None):
        self.coeffs = list(coeffs)
        self.zero = zero if zero is not None else coeffs[0] * 0

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, r: int):
        return self.coeffs[r] if r < len(self.coeffs) else self.zero

    def __mul__(self, other):
        if not isinstance(other, USeries):
            return USeries([c * other for c in self.coeffs], self.zero)
        order = min(self.order, other.order)
        out = []
        for r in range(order + 1):
            acc = self.zero
            for s in range(r + 1):
                acc = acc + self.coeffs[s] * other.coeffs[r - s]
            out.append(acc)
        return USeries(out, self.zero)

    def __rmul__(self, other):
        return USeries([other * c for c in self.coeffs], self.zero)

    def __add__(self, other):
        order = min(self.order, other.order)
        return USeries([self.coeffs[r] + other.coeffs[r] for r in range(order + 1)], self.zero)

    def __sub__(self, other):
        order = min(self.order, other.order)
        return USeries([self.coeffs[r] - other.coeffs[r] for r in range(order + 1)], self.zero)

    def rescale(self, factor) -> "USeries":
        """u -> factor * u."""
        out, power = [], None
        for r, c in enumerate(self.coeffs):
            power = factor**r if power is None else power * factor
            out.append(c * power if r else c)
        return USeries(out, self.zero)

    def inverse(self) -> "USeries":
        c0 = self.coeffs[0]
        inv0 = 1 / c0
        out = [inv0]
        for r in range(1, self.order + 1):
            acc = self.zero
            for s in range(1, r + 1):
                acc = acc + self.coeffs[s] * out[r - s]
            out.append(-acc * inv0)
        return USeries(out, self.zero)

    def exp(self) -> "USeries":
        """exp of a series with vanishing constant term, via r e_r = sum k a_k e_{r-k}."""
        if not _iszero(self.coeffs[0]):
            raise ValueError("exp needs a zero constant term")
        one = self.zero + 1
        out = [one]
        for r in range(1, self.order + 1):
            acc = self.zero
            for k in range(1, r + 1):
                acc = acc + self.coeffs[k] * out[r - k] * k
            out.append(acc * Fraction(1, r))
        return USeries(out, self.zero)

    def __eq__(self, other):
        order = min(self.order, other.order)
        return all(self.coeffs[r] == other.coeffs[r] for r in range(order + 1))

    @classmethod
    def from_qbinomial(cls, a, base, g, order: int) -> "USeries":
        """(a g u; base)_inf / (g u; base)_inf truncated at u^order."""
        from .field import qbinomial_coefficients

        coeffs = qbinomial_coefficients(a, base, order)
        out, power = [], None
        for r, c in enumerate(coeffs):
            power = g ** 0 if power is None else power * g
            out.append(c * power)
        return cls(out)

    @classmethod
    def geometric_ratio(cls, a, b, order: int) -> "USeries":
        """(1 - a u) / (1 - b u)."""
        out = [a * 0 + 1]
        power = None
        for r in range(1, order + 1):
            power = b ** (r - 1) if power is None else power * b
            out.append(power * b - a * power)
        return cls(out)


def _iszero(x) -> bool:
    try:
        return x.is_zero()
    except AttributeError:
        return x == 0
