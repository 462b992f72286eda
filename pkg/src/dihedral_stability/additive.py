"""Checkers for the Cauchy-Davenport and Kneser theorems over Z_n.

Both theorems are established facts.  They are used here as oracles for the
:mod:`residues` kernel: a failed check means the sumset or stabilizer code
is wrong, never that the theorem is.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .residues import (
    ResidueSet,
    divisors,
    rotate,
    stabilizer,
    stabilizer_mask,
    sumset,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_nonempty(*sets: ResidueSet) -> None:
    for s in sets:
        if not s:
            raise InvalidArgumentError("input sets must be nonempty")


def check_cauchy_davenport(A: ResidueSet, B: ResidueSet, p: int) -> bool:
    """Return whether ``|A + B| >= min(p, |A| + |B| - 1)`` in Z_p."""
    if not is_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    if A.n != p or B.n != p:
        raise InvalidArgumentError(f"sets must live in Z_{p}")
    _require_nonempty(A, B)
    return len(sumset(A, B)) >= min(p, len(A) + len(B) - 1)


@dataclass(frozen=True)
class KneserReport:
    n: int
    A: ResidueSet
    B: ResidueSet
    H: ResidueSet
    lhs: int
    rhs: int
    hypothesis_met: bool
    identity_holds: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": list(self.A),
            "B": list(self.B),
            "H": list(self.H),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "hypothesis_met": self.hypothesis_met,
            "identity_holds": self.identity_holds,
        }


def check_kneser(A: ResidueSet, B: ResidueSet) -> KneserReport:
    if A.n != B.n:
        raise InvalidArgumentError(f"modulus mismatch: {A.n} != {B.n}")
    _require_nonempty(A, B)
    total = sumset(A, B)
    H = stabilizer(total)
    lhs = len(total)
    rhs = len(sumset(A, H)) + len(sumset(B, H)) - len(H)
    return KneserReport(
        n=A.n,
        A=A,
        B=B,
        H=H,
        lhs=lhs,
        rhs=rhs,
        hypothesis_met=lhs < len(A) + len(B),
        identity_holds=lhs == rhs,
    )


def random_nonempty_subset(n: int, rng: random.Random) -> ResidueSet:
    """Include each residue with probability 1/2, rejecting the empty set."""
    while True:
        mask = rng.getrandbits(n)
        if mask:
            return ResidueSet.from_mask(n, mask)


def cauchy_davenport_trials(p: int, trials: int, seed: int) -> list[tuple[ResidueSet, ResidueSet]]:
    """Run random Cauchy-Davenport checks in Z_p; return the failing pairs.

    Every prime gets its own generator derived from ``seed`` so runs over
    several primes are reproducible independently of order.
    """
    rng = random.Random(f"{seed}:{p}")
    failures = []
    for _ in range(trials):
        A = random_nonempty_subset(p, rng)
        B = random_nonempty_subset(p, rng)
        if not check_cauchy_davenport(A, B, p):
            failures.append((A, B))
    return failures


def _pair_sums(a_mask: int, n: int) -> np.ndarray:
    # out[B] = mask of A + B for every B in [0, 2^n), built one bit at a time
    out = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        lo, hi = 1 << j, 1 << (j + 1)
        out[lo:hi] = out[:lo] | rotate(a_mask, j, n)
    return out


def kneser_exhaustive(n: int) -> tuple[int, list[tuple[int, int]]]:
    """Check the Kneser identity for every pair of nonempty subsets of Z_n.

    Returns ``(pairs_meeting_hypothesis, failures)`` where failures are
    ``(mask_A, mask_B)`` pairs.  Stabilizers come from the kernel's
    :func:`stabilizer_mask`; sums of each ``A`` against all ``B`` at once are
    vectorized with numpy.
    """
    if n < 1 or n > 20:
        raise InvalidArgumentError("exhaustive Kneser check supports 1 <= n <= 20")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    popcount = np.array([m.bit_count() for m in range(size)], dtype=np.int64)
    stab = np.array([stabilizer_mask(m, n) for m in range(size)], dtype=np.int64)
    # every stabilizer is <d> for a divisor d; precompute X + <d> for all X
    subgroups = {}
    for d in divisors(n):
        h = 0
        for k in range(0, n, d):
            h |= 1 << k
        subgroups[h] = _pair_sums(h, n)

    checked = 0
    failures: list[tuple[int, int]] = []
    for a_mask in range(1, size):
        sums = _pair_sums(a_mask, n)[1:]
        lhs = popcount[sums]
        hyp = lhs < popcount[a_mask] + popcount[1:]
        if not hyp.any():
            continue
        H = stab[sums]
        a_plus_h = np.empty_like(H)
        b_plus_h = np.empty_like(H)
        for h, table in subgroups.items():
            sel = H == h
            if sel.any():
                a_plus_h[sel] = table[a_mask]
                b_plus_h[sel] = table[masks[1:][sel]]
        rhs = popcount[a_plus_h] + popcount[b_plus_h] - popcount[H]
        bad = hyp & (lhs != rhs)
        checked += int(hyp.sum())
        for b_mask in (np.nonzero(bad)[0] + 1).tolist():
            failures.append((a_mask, b_mask))
    return checked, failures
