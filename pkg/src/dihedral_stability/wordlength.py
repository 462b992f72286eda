"""Minimal word lengths in D_n under a three-reflection generating set.

Two independent engines:

* ``bfs_lengths`` walks the Cayley graph from the identity.
* ``sumset_lengths`` iterates the projected levels ``W'_l``: since every
  letter is a reflection, words of even length are rotations and words of odd
  length are reflections, and ``W'_{l+1}`` is ``W'_l + S'`` for even ``l`` and
  ``W'_l - S'`` for odd ``l``.  Because ``0`` is an offset the levels are
  nested, so ``l_S(r^i)`` is the first even level holding ``i`` and
  ``l_S(r^i f)`` the first odd one.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .dihedral import DihedralElement, GeneratingSet, is_generating
from .errors import InternalError, NonGeneratingError
from .residues import ResidueSet, full_mask, iter_bits, sum_masks

__all__ = [
    "WordLengthTable",
    "WPrimeSequence",
    "bfs_lengths",
    "sumset_lengths",
    "w_prime_sequence",
    "iter_level_masks",
    "word_lengths",
]


@dataclass(frozen=True)
class WordLengthTable:
    n: int
    S: GeneratingSet
    rotation_lengths: tuple[int, ...]
    reflection_lengths: tuple[int, ...]
    engine: str

    def length(self, g: DihedralElement) -> int:
        lengths = self.reflection_lengths if g.refl else self.rotation_lengths
        return lengths[g.rot]

    def same_lengths(self, other: WordLengthTable) -> bool:
        return (
            self.n == other.n
            and self.rotation_lengths == other.rotation_lengths
            and self.reflection_lengths == other.reflection_lengths
        )

    def max_length(self) -> int:
        return max(max(self.rotation_lengths), max(self.reflection_lengths))

    def rows(self) -> Iterator[tuple[str, int, int, int]]:
        for refl, lengths in ((0, self.rotation_lengths), (1, self.reflection_lengths)):
            for i, length in enumerate(lengths):
                yield str(DihedralElement(self.n, i, bool(refl))), i, refl, length

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("element,rot,refl_flag,length\n")
        for row in self.rows():
            buf.write(",".join(str(x) for x in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "S": self.S.to_json(),
            "engine": self.engine,
            "rotation_lengths": list(self.rotation_lengths),
            "reflection_lengths": list(self.reflection_lengths),
        }


@dataclass(frozen=True)
class WPrimeSequence:
    n: int
    S: GeneratingSet
    levels: tuple[ResidueSet, ...]

    def to_json(self) -> list[list[int]]:
        return [list(level) for level in self.levels]


def _require_generating(S: GeneratingSet) -> None:
    if not is_generating(S):
        raise NonGeneratingError(S.n, S.a, S.b, S.generating_gcd())


def bfs_lengths(n: int, S: GeneratingSet) -> WordLengthTable:
    """Word lengths by breadth-first search on the right Cayley graph."""
    if S.n != n:
        raise ValueError(f"generating set lives in D_{S.n}, not D_{n}")
    _require_generating(S)
    offsets = (0, S.a, S.b)
    # index i < n is r^i; index n + i is r^i f.  Right-multiplying by r^c f:
    #   r^i   . r^c f = r^(i+c) f
    #   r^i f . r^c f = r^(i-c)
    dist = [-1] * (2 * n)
    dist[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        d = dist[x] + 1
        if x < n:
            nbrs = [n + (x + c) % n for c in offsets]
        else:
            i = x - n
            nbrs = [(i - c) % n for c in offsets]
        for y in nbrs:
            if dist[y] < 0:
                dist[y] = d
                queue.append(y)
    if min(dist) < 0:
        raise InternalError(f"BFS left unreachable elements for generating set {S.pair}")
    return WordLengthTable(n, S, tuple(dist[:n]), tuple(dist[n:]), "bfs")


def iter_level_masks(n: int, a: int, b: int) -> Iterator[int]:
    """Yield the bitmasks of ``W'_0, W'_1, W'_2, ...`` indefinitely."""
    plus = 1 | 1 << (a % n) | 1 << (b % n)
    minus = 1 | 1 << (-a % n) | 1 << (-b % n)
    level = 1
    while True:
        yield level
        level = sum_masks(level, plus, n)
        yield level
        level = sum_masks(level, minus, n)


def sumset_lengths(n: int, S: GeneratingSet) -> WordLengthTable:
    """Word lengths from the parity-alternating sumset iteration."""
    if S.n != n:
        raise ValueError(f"generating set lives in D_{S.n}, not D_{n}")
    _require_generating(S)
    full = full_mask(n)
    lengths = ([-1] * n, [-1] * n)
    seen = [0, 0]
    cap = 2 * n + 2
    for l, level in enumerate(iter_level_masks(n, S.a, S.b)):
        parity = l & 1
        for i in iter_bits(level & ~seen[parity]):
            lengths[parity][i] = l
        seen[parity] |= level
        if seen[0] == full and seen[1] == full:
            break
        if l >= cap:
            raise InternalError(f"level cap {cap} reached for generating set {S.pair}")
    return WordLengthTable(n, S, tuple(lengths[0]), tuple(lengths[1]), "sumset")


def word_lengths(n: int, S: GeneratingSet, engine: str = "sumset") -> WordLengthTable:
    if engine == "sumset":
        return sumset_lengths(n, S)
    if engine == "bfs":
        return bfs_lengths(n, S)
    raise ValueError(f"unknown engine {engine!r}")


def w_prime_sequence(n: int, S: GeneratingSet, l_max: int | None = None) -> WPrimeSequence:
    """Levels ``W'_0 .. W'_{l_max}``; ``S`` need not generate D_n."""
    if S.n != n:
        raise ValueError(f"generating set lives in D_{S.n}, not D_{n}")
    if l_max is None:
        l_max = n + 1
    levels = []
    for l, mask in enumerate(iter_level_masks(n, S.a, S.b)):
        if l > l_max:
            break
        levels.append(ResidueSet.from_mask(n, mask))
    return WPrimeSequence(n, S, tuple(levels))
