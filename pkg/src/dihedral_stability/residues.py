"""Set algebra over the cyclic group Z_n.

Subsets of Z_n are stored densely as an ``int`` bitmask: bit ``i`` is set
exactly when the residue ``i`` is a member.  Translation by ``k`` is then a
cyclic bit rotation, so a sumset ``A + B`` costs one rotation per member of
the smaller operand.  Moduli stay desk-scale (a few thousand at most), where
the dense form beats any sparse structure.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator

from .errors import InvalidArgumentError

__all__ = [
    "ResidueSet",
    "rotate",
    "iter_bits",
    "full_mask",
    "sumset",
    "sum_masks",
    "diffset",
    "negate",
    "translate",
    "stabilizer",
    "stabilizer_mask",
    "is_subgroup",
    "cyclic_subgroup",
    "coset_decomposition",
    "divisors",
]


def full_mask(n: int) -> int:
    return (1 << n) - 1


def rotate(mask: int, k: int, n: int) -> int:
    """Translate the set encoded by ``mask`` by ``k`` in Z_n."""
    k %= n
    if k == 0:
        return mask
    return ((mask << k) | (mask >> (n - k))) & ((1 << n) - 1)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reverse(mask: int, n: int) -> int:
    # i -> -i mod n
    out = mask & 1
    for i in iter_bits(mask & ~1):
        out |= 1 << (n - i)
    return out


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


class ResidueSet:
    """An immutable subset of Z_n.

    Members are reduced mod ``n`` on construction, so ``ResidueSet(5, [-1])``
    is ``{4}``.  Iteration is in ascending order.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, members: Iterable[int] = ()):
        if n < 1:
            raise InvalidArgumentError(f"modulus must be positive, got {n}")
        mask = 0
        for m in members:
            mask |= 1 << (m % n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> ResidueSet:
        if mask < 0 or mask >> n:
            raise InvalidArgumentError(f"mask has bits outside Z_{n}")
        obj = cls.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "mask", mask)
        return obj

    @classmethod
    def full(cls, n: int) -> ResidueSet:
        return cls.from_mask(n, full_mask(n))

    @classmethod
    def zero(cls, n: int) -> ResidueSet:
        return cls.from_mask(n, 1)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueSet is immutable")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, int):
            return False
        return bool(self.mask >> (x % self.n) & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __le__(self, other: ResidueSet) -> bool:
        _check_same(self, other)
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return f"ResidueSet({self.n}, {list(self)})"

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def is_full(self) -> bool:
        return self.mask == full_mask(self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "members": list(self)}

    @classmethod
    def from_json(cls, data: dict) -> ResidueSet:
        return cls(data["n"], data["members"])


def _check_same(A: ResidueSet, B: ResidueSet) -> None:
    if A.n != B.n:
        raise InvalidArgumentError(f"modulus mismatch: {A.n} != {B.n}")


def sum_masks(a: int, b: int, n: int) -> int:
    """Sumset of two bitmask-encoded subsets of Z_n."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    out = 0
    for k in iter_bits(b):
        out |= rotate(a, k, n)
    return out


def sumset(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    """Return ``{a + b : a in A, b in B}``."""
    _check_same(A, B)
    return ResidueSet.from_mask(A.n, sum_masks(A.mask, B.mask, A.n))


def negate(A: ResidueSet) -> ResidueSet:
    return ResidueSet.from_mask(A.n, _reverse(A.mask, A.n))


def diffset(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    """Return ``{a - b : a in A, b in B}``."""
    _check_same(A, B)
    return ResidueSet.from_mask(A.n, sum_masks(A.mask, _reverse(B.mask, B.n), A.n))


def translate(A: ResidueSet, k: int) -> ResidueSet:
    return ResidueSet.from_mask(A.n, rotate(A.mask, k, A.n))


def stabilizer_mask(mask: int, n: int) -> int:
    # Stab(A) is a subgroup of Z_n, hence <d> for its least positive element d,
    # which divides n.  A is a union of cosets of Stab(A), so |<d>| = n/d
    # divides |A|.  The empty set is fixed by every translate.
    size = mask.bit_count()
    for d in divisors(n):
        if size % (n // d) == 0 and rotate(mask, d, n) == mask:
            return _multiples_mask(d, n)
    raise AssertionError("unreachable: d = n always stabilizes")


def stabilizer(A: ResidueSet) -> ResidueSet:
    """Return ``{g : g + A = A}``; for the empty set this is all of Z_n."""
    return ResidueSet.from_mask(A.n, stabilizer_mask(A.mask, A.n))


def _multiples_mask(d: int, n: int) -> int:
    out = 0
    for k in range(0, n, d):
        out |= 1 << k
    return out


def cyclic_subgroup(c: int, n: int) -> ResidueSet:
    """Return the subgroup of Z_n generated by ``c``."""
    if not 0 <= c < n:
        raise InvalidArgumentError(f"generator {c} not in [0, {n})")
    return ResidueSet.from_mask(n, _multiples_mask(gcd(c, n), n))


def is_subgroup(H: ResidueSet) -> bool:
    if 0 not in H:
        return False
    return all(rotate(H.mask, h, H.n) == H.mask for h in H)


def coset_decomposition(A: ResidueSet, H: ResidueSet) -> list[tuple[int, bool]]:
    """List the cosets of ``H`` that meet ``A``.

    Each entry is ``(representative, complete)`` where the representative is
    the smallest member of the coset and ``complete`` says whether the whole
    coset lies inside ``A``.  Entries are sorted by representative.
    """
    _check_same(A, H)
    if not is_subgroup(H):
        raise InvalidArgumentError(f"{H!r} is not a subgroup of Z_{H.n}")
    n = A.n
    # H = <d> with d its least positive element (or n when H = {0})
    d = next(iter_bits(H.mask & ~1), n)
    out = []
    for rep in range(d):
        coset = rotate(H.mask, rep, n)
        hit = coset & A.mask
        if hit:
            out.append((rep, hit == coset))
    return out
