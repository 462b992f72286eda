"""Arithmetic in D_n and three-reflection generating sets.

An element ``r^i f^k`` is stored as ``(rot=i, refl=bool(k))``.  The product
rule is ``(r^i f^j)(r^k f^m) = r^(i + (-1)^j k) f^(j xor m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .errors import InvalidArgumentError
from .residues import ResidueSet

MIN_N = 3


@dataclass(frozen=True, order=True)
class DihedralElement:
    n: int
    rot: int
    refl: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError(f"n must be positive, got {self.n}")
        object.__setattr__(self, "rot", self.rot % self.n)
        object.__setattr__(self, "refl", bool(self.refl))

    @classmethod
    def identity(cls, n: int) -> DihedralElement:
        return cls(n, 0, False)

    @classmethod
    def rotation(cls, n: int, i: int) -> DihedralElement:
        return cls(n, i, False)

    @classmethod
    def reflection(cls, n: int, i: int) -> DihedralElement:
        return cls(n, i, True)

    @property
    def index(self) -> int:
        """Position in the flat ordering: rotations ``0..n-1``, then reflections."""
        return self.rot + self.n * self.refl

    @classmethod
    def from_index(cls, n: int, idx: int) -> DihedralElement:
        if not 0 <= idx < 2 * n:
            raise InvalidArgumentError(f"index {idx} out of range for D_{n}")
        return cls(n, idx % n, idx >= n)

    def is_identity(self) -> bool:
        return self.rot == 0 and not self.refl

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return multiply(self, other)

    def __str__(self) -> str:
        if self.rot == 0:
            return "f" if self.refl else "e"
        return f"r^{self.rot} f" if self.refl else f"r^{self.rot}"


def elements(n: int) -> Iterator[DihedralElement]:
    """All ``2n`` elements in index order."""
    for idx in range(2 * n):
        yield DihedralElement.from_index(n, idx)


def multiply(x: DihedralElement, y: DihedralElement) -> DihedralElement:
    if x.n != y.n:
        raise InvalidArgumentError(f"modulus mismatch: D_{x.n} vs D_{y.n}")
    rot = x.rot - y.rot if x.refl else x.rot + y.rot
    return DihedralElement(x.n, rot, x.refl != y.refl)


def inverse(x: DihedralElement) -> DihedralElement:
    if x.refl:
        return x
    return DihedralElement(x.n, -x.rot, False)


def conjugate(g: DihedralElement, s: DihedralElement) -> DihedralElement:
    """Return ``g s g^-1``."""
    return multiply(multiply(g, s), inverse(g))


def project(x: DihedralElement) -> int:
    """The rotation index ``i`` of ``r^i f^k``; the reflection flag is dropped."""
    return x.rot


@dataclass(frozen=True)
class GeneratingSet:
    """The three reflections ``{f, r^a f, r^b f}`` held as offsets ``{0, a, b}``.

    ``a`` and ``b`` are kept in the order given (reduced mod ``n``); the set
    itself is unordered, so ``(a, b)`` and ``(b, a)`` describe the same
    reflections.  Construction does not require the set to generate D_n.
    """

    n: int
    a: int
    b: int

    def __post_init__(self):
        n = self.n
        if n < MIN_N:
            raise InvalidArgumentError(
                f"three distinct reflections need n >= {MIN_N}, got {n}"
            )
        a, b = self.a % n, self.b % n
        if a == 0 or b == 0 or a == b:
            raise InvalidArgumentError(
                f"offsets 0, {self.a}, {self.b} are not distinct mod {n}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_offsets(cls, offsets: ResidueSet) -> GeneratingSet:
        members = list(offsets)
        if len(members) != 3 or members[0] != 0:
            raise InvalidArgumentError(f"offsets must be {{0, a, b}}, got {members}")
        return cls(offsets.n, members[1], members[2])

    @property
    def offsets(self) -> ResidueSet:
        return ResidueSet(self.n, (0, self.a, self.b))

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def reflections(self) -> tuple[DihedralElement, DihedralElement, DihedralElement]:
        n = self.n
        return (
            DihedralElement.reflection(n, 0),
            DihedralElement.reflection(n, self.a),
            DihedralElement.reflection(n, self.b),
        )

    def generating_gcd(self) -> int:
        return gcd(gcd(self.a, self.b), self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "a": self.a, "b": self.b}

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.reflections()) + "}"


def is_generating(S: GeneratingSet) -> bool:
    return S.generating_gcd() == 1


def closure(S: GeneratingSet) -> set[DihedralElement]:
    """Subgroup generated by ``S``, found by multiplying until nothing new appears.

    Independent of the gcd criterion in :func:`is_generating`; used to check it.
    """
    gens = S.reflections()
    seen = {DihedralElement.identity(S.n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def orbit_pairs(n: int, a: int, b: int) -> set[tuple[int, int]]:
    """The relabelings of ``{f, r^a f, r^b f}`` obtained by calling each of
    the three reflections ``f`` and ordering the other two both ways."""
    a, b = a % n, b % n
    raw = [(a, b), (b, a), (-a, b - a), (b - a, -a), (-b, a - b), (a - b, -b)]
    return {(x % n, y % n) for x, y in raw}


def canonical_form(S: GeneratingSet) -> GeneratingSet:
    a, b = min(orbit_pairs(S.n, S.a, S.b))
    return GeneratingSet(S.n, a, b)


def negated(S: GeneratingSet) -> GeneratingSet:
    """Image of ``S`` under the automorphism ``r -> r^-1``.

    Shares all word-length statistics with ``S`` but is deliberately kept
    out of :func:`canonical_form`.
    """
    return GeneratingSet(S.n, -S.a, -S.b)


def canonical_pairs(n: int) -> list[tuple[int, int]]:
    """Canonical ``(a, b)`` of every relabeling orbit in D_n, generating or not, sorted."""
    reps = set()
    for a in range(1, n):
        for b in range(a + 1, n):
            reps.add(min(orbit_pairs(n, a, b)))
    return sorted(reps)
