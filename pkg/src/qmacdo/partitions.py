"""Partitions, hook statistics and the fat (n, m)-hook."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Iterator

from .errors import NotInHook


class Partition(tuple):
    """Weakly decreasing tuple of positive parts; the empty partition is ``Partition()``."""

    def __new__(cls, parts=()):
        if isinstance(parts, str):
            parts = [int(p) for p in parts.split(",") if p.strip()]
        parts = [int(p) for p in parts if p]
        if any(p < 0 for p in parts):
            raise ValueError("parts must be non-negative")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """lambda_i with 1-based i, zero beyond the length."""
        return self[i - 1] if i <= len(self) else 0

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition([sum(1 for p in self if p >= j) for j in range(1, self[0] + 1)])

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        return self.conjugate()[j - 1] - i

    def multiplicities(self) -> Counter:
        return Counter(self)

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def dominates(self, other: "Partition") -> bool:
        if self.size != other.size:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.part(i + 1)
            b += other.part(i + 1)
            if a < b:
                return False
        return True

    def to_text(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Partition({self.to_text()!r})"


@lru_cache(maxsize=None)
def partitions_of(k: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of k in reverse lexicographic order ((k) first, (1^k) last)."""
    if max_part is None:
        max_part = k
    if k == 0:
        return (Partition(),)
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_up_to(weight: int) -> Iterator[Partition]:
    """All partitions of weight <= ``weight``, graded, reverse-lex within a degree."""
    for k in range(weight + 1):
        yield from partitions_of(k)


def subpartitions(lam: Partition) -> Iterator[Partition]:
    """All nu contained in lam."""
    def rec(i, bound):
        if i == len(lam):
            yield ()
            return
        for p in range(min(bound, lam[i]), -1, -1):
            if p == 0:
                yield ()
            else:
                for rest in rec(i + 1, p):
                    yield (p,) + rest
    for parts in rec(0, lam[0] if lam else 0):
        yield Partition(parts)


def fat_hook_contains(n: int, m: int, lam: Partition) -> bool:
    """lambda_{n+1} <= m."""
    if n < 0 or m < 0:
        raise ValueError("n, m must be non-negative")
    return Partition(lam).part(n + 1) <= m


def hook_split(n: int, m: int, lam: Partition) -> tuple[Partition, Partition]:
    """mu = (lambda_1..lambda_n), nu = (lambda_{n+1}, lambda_{n+2}, ...)'."""
    lam = Partition(lam)
    if not fat_hook_contains(n, m, lam):
        raise NotInHook(f"{lam} is not in H_{{{n},{m}}}")
    mu = Partition(lam[:n])
    nu = Partition(lam[n:]).conjugate()
    return mu, nu


def b_lambda(lam: Partition, q, t):
    """prod over cells of (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l)."""
    lam = Partition(lam)
    conj = lam.conjugate()
    out = q**0
    for i, j in lam.cells():
        a = lam[i - 1] - j
        l = conj[j - 1] - i
        out = out * (1 - q**a * t ** (l + 1)) / (1 - q ** (a + 1) * t**l)
    return out


def z_lambda_int(lam: Partition) -> int:
    out = 1
    for part, mult in Counter(lam).items():
        out *= part**mult * factorial(mult)
    return out


def z_lambda(lam: Partition, q, t):
    """prod_i i^{m_i} m_i! * prod_i (1 - q^{lambda_i}) / (1 - t^{lambda_i})."""
    out = q**0 * z_lambda_int(lam)
    for part in lam:
        out = out * (1 - q**part) / (1 - t**part)
    return out
