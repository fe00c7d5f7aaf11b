"""Permutations of {0, ..., n-1}.

Products are read left to right: ``compose(a, b)`` applies ``a`` first and
then ``b``, so ``compose(a, b)[i] == b[a[i]]``.  Cycle notation is 1-based
(``"(1,2,3)"``) while image arrays are 0-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("permutation degree must be positive")
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a bijection of 0..{n - 1}: {self.images}")

    @classmethod
    def from_images(cls, images: Iterable[int]) -> Permutation:
        return cls(tuple(int(i) for i in images))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based cycle notation such as ``"(1,2)(3,4,5)"``; ``"()"`` is the identity."""
        stripped = text.strip()
        if stripped in ("", "()", "1", "id"):
            return identity(degree)
        if _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"could not parse permutation {text!r}")
        images = list(range(degree))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(stripped):
            parts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
            if not parts:
                continue
            points = [int(p) - 1 for p in parts]
            for pt in points:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt + 1} outside 1..{degree}")
                if pt in seen:
                    raise ValueError(f"point {pt + 1} repeated in {text!r}")
                seen.add(pt)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def to_cycles(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.to_cycles()


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("degree must be at least 1")
    return Permutation(tuple(range(n)))


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    _check_degrees(a, b)
    bi = b.images
    return Permutation(tuple(bi[x] for x in a.images))


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for i, v in enumerate(a.images):
        out[v] = i
    return Permutation(tuple(out))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a^-1 b^-1 a b``."""
    _check_degrees(a, b)
    return compose(compose(inverse(a), inverse(b)), compose(a, b))


def order(a: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in a.cycles()), 1)


def power(a: Permutation, k: int) -> Permutation:
    if k < 0:
        a, k = inverse(a), -k
    result = identity(a.degree)
    base = a
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def product(perms: Sequence[Permutation]) -> Permutation:
    if not perms:
        raise ValueError("empty product has no degree")
    return reduce(compose, perms)
