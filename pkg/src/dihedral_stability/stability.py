"""The stability metric lambda_1 and the bounds it obeys.

``lambda1(D_n, S)`` is the largest word length of a conjugate ``g s g^-1``
with ``g`` in D_n and ``s`` one of the three generating reflections.  Every
such conjugate is a reflection, so it never exceeds the longest reflection.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple

from .additive import is_prime
from .dihedral import DihedralElement, GeneratingSet, canonical_form
from .errors import InvalidArgumentError
from .wordlength import WordLengthTable, iter_level_masks, word_lengths


def half_bound(n: int) -> int:
    """The general ceiling floor(n/2) + 1."""
    return n // 2 + 1


def third_bound(p: int) -> int:
    """The prime-modulus ceiling floor(p/3) + 1."""
    return p // 3 + 1


def odd_third_bound(p: int) -> int:
    """Smallest odd ``l`` with ``3l >= p``.

    Reflections only occur at odd levels, so this is the first level at which
    the growth floor ``min(3l, p)`` forces every reflection to appear.  It
    exceeds :func:`third_bound` by one whenever floor(p/3) + 1 is even.
    """
    l = -(-p // 3)
    return l if l % 2 else l + 1


@dataclass(frozen=True)
class LambdaReport:
    n: int
    S: GeneratingSet
    canonical: GeneratingSet
    lambda1: int
    witness: tuple[DihedralElement, DihedralElement]
    max_reflection_length: int
    bound_n_half: int
    bound_prime_third: int | None
    prime_condition_met: bool
    engine: str

    @property
    def tight(self) -> bool:
        return self.lambda1 == self.bound_n_half

    def to_json(self) -> dict:
        g, s = self.witness
        return {
            "n": self.n,
            "S": self.S.to_json(),
            "canonical": self.canonical.to_json(),
            "lambda1": self.lambda1,
            "witness": {"g": str(g), "s": str(s)},
            "max_reflection_length": self.max_reflection_length,
            "bound_n_half": self.bound_n_half,
            "bound_prime_third": self.bound_prime_third,
            "prime_condition_met": self.prime_condition_met,
            "tight": self.tight,
            "engine": self.engine,
        }

    csv_header = "n,a,b,lambda1,max_refl_len,bound,tight"

    def csv_row(self) -> str:
        return (
            f"{self.n},{self.S.a},{self.S.b},{self.lambda1},"
            f"{self.max_reflection_length},{self.bound_n_half},{str(self.tight).lower()}"
        )


def max_reflection_length(table: WordLengthTable) -> int:
    return max(table.reflection_lengths)


def prime_condition(n: int, S: GeneratingSet) -> bool:
    """``n`` prime and ``0, a, b, -a, -b, a-b, b-a`` pairwise distinct mod ``n``."""
    if not is_prime(n):
        return False
    a, b = S.a, S.b
    values = {x % n for x in (0, a, b, -a, -b, a - b, b - a)}
    return len(values) == 7


def lambda1_from_table(table: WordLengthTable) -> tuple[int, tuple[DihedralElement, DihedralElement]]:
    """Max of ``l_S(g s g^-1)`` and the first ``(g, s)`` attaining it.

    Pairs are scanned with ``g`` in index order (rotations, then reflections)
    and ``s`` in the order ``f, r^a f, r^b f``.  Conjugation is done in closed
    form: ``r^i . r^c f . r^-i = r^(c+2i) f`` and
    ``r^i f . r^c f . r^i f = r^(2i-c) f``.
    """
    n = table.n
    refl = table.reflection_lengths
    offsets = (0, table.S.a, table.S.b)
    best, best_at = -1, (0, 0)
    for g in range(2 * n):
        i = g % n
        sign = 1 if g < n else -1
        for k, c in enumerate(offsets):
            length = refl[(2 * i + sign * c) % n]
            if length > best:
                best, best_at = length, (g, k)
    g = DihedralElement.from_index(n, best_at[0])
    s = table.S.reflections()[best_at[1]]
    return best, (g, s)


def lambda1(n: int, S: GeneratingSet, engine: str = "sumset") -> LambdaReport:
    table = word_lengths(n, S, engine)
    value, witness = lambda1_from_table(table)
    met = prime_condition(n, S)
    return LambdaReport(
        n=n,
        S=S,
        canonical=canonical_form(S),
        lambda1=value,
        witness=witness,
        max_reflection_length=max_reflection_length(table),
        bound_n_half=half_bound(n),
        bound_prime_third=third_bound(n) if met else None,
        prime_condition_met=met,
        engine=engine,
    )


def growth_shortfalls(n: int, S: GeneratingSet, floor) -> list[tuple[int, int, int]]:
    """Levels where ``|W'_l|`` falls below ``floor(l)``, as ``(l, size, floor)``.

    Levels are walked from ``l = 1`` until ``W'_l`` is all of Z_n; past that
    point every level is full and ``floor(l) <= n`` cannot be violated.
    """
    out = []
    cap = 2 * n + 2
    full = (1 << n) - 1
    for l, level in enumerate(iter_level_masks(n, S.a, S.b)):
        if l == 0:
            continue
        size = level.bit_count()
        want = floor(l)
        if size < want:
            out.append((l, size, want))
        if level == full or l >= cap:
            break
    return out


def check_growth(n: int, S: GeneratingSet) -> list[tuple[int, int, int]]:
    """Shortfalls against ``|W'_l| >= min(2l + 1, n)``; empty when the floor holds."""
    return growth_shortfalls(n, S, lambda l: min(2 * l + 1, n))


def check_prime_growth(p: int, S: GeneratingSet) -> list[tuple[int, int, int]]:
    """Shortfalls against ``|W'_l| >= min(3l, p)``.  Requires :func:`prime_condition`."""
    if not prime_condition(p, S):
        raise InvalidArgumentError(
            f"prime growth floor needs p prime with seven distinct differences; got p={p}, S={S.pair}"
        )
    return growth_shortfalls(p, S, lambda l: min(3 * l, p))


def sharpness_prediction(n: int) -> int:
    """Longest reflection under offsets ``{0, 1, n-1}``, by ``n mod 4``."""
    return n // 2 + 1 if n % 4 in (0, 1) else n // 2


@dataclass(frozen=True)
class SharpnessReport:
    n: int
    measured_max_reflection_length: int
    predicted: int

    @property
    def match(self) -> bool:
        return self.measured_max_reflection_length == self.predicted

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "measured_max_reflection_length": self.measured_max_reflection_length,
            "predicted": self.predicted,
            "match": self.match,
        }


def check_sharpness(n: int, engine: str = "sumset") -> SharpnessReport:
    if n < 3:
        raise InvalidArgumentError(f"n must be at least 3, got {n}")
    table = word_lengths(n, GeneratingSet(n, 1, n - 1), engine)
    return SharpnessReport(n, max_reflection_length(table), sharpness_prediction(n))


def sqrt_presentation(n: int) -> GeneratingSet:
    """Offsets ``{0, 1, isqrt(n)}``."""
    if n < 5:
        raise InvalidArgumentError(f"need n >= 5 so that 0, 1, isqrt(n) are distinct; got {n}")
    return GeneratingSet(n, 1, isqrt(n))


def sqrt_length_bound(n: int) -> int:
    # r^a f = (r^m f . f)^q (r f . f)^s f with a = q*m + s, m = isqrt(n),
    # q < ceil(n/m), s <= m - 1
    m = isqrt(n)
    return 2 * (m - 1) + 2 * -(-n // m) + 1


class SqrtBound(NamedTuple):
    max_length: int
    bound: int
    holds: bool


def check_sqrt_bound(n: int, engine: str = "sumset") -> SqrtBound:
    """Longest word of any element under :func:`sqrt_presentation`, against the explicit bound."""
    table = word_lengths(n, sqrt_presentation(n), engine)
    longest = table.max_length()
    bound = sqrt_length_bound(n)
    return SqrtBound(longest, bound, longest <= bound)
