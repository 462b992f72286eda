"""Exhaustive scans over all three-reflection generating sets of D_n.

Two scans:

* :func:`scan_stabilizers` looks for a level ``W'_l`` whose stabilizer is a
  proper nontrivial subgroup of Z_n (the expectation is that none exists).
* :func:`survey_lambda` tabulates lambda_1 for one representative of every
  relabeling orbit and aborts if the floor(n/2) + 1 ceiling is ever exceeded.

Work is split per ``n``; results are sorted before they are returned so
sequential and parallel runs agree exactly.
"""

from __future__ import annotations

import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .dihedral import GeneratingSet, canonical_pairs, orbit_pairs
from .errors import InvalidArgumentError, VerificationFailure
from .residues import ResidueSet, full_mask, rotate, stabilizer_mask
from .stability import half_bound, lambda1
from .wordlength import iter_level_masks

log = logging.getLogger(__name__)

CHECKPOINT_EVERY = 100

StabilizerFn = Callable[[int, int], int]


def _check_range(n_min: int, n_max: int) -> None:
    if not 3 <= n_min <= n_max:
        raise InvalidArgumentError(f"need 3 <= n_min <= n_max, got [{n_min}, {n_max}]")


def parallel_map(fn, items: Iterable, jobs: int = 1) -> Iterator:
    """Order-preserving map, in worker processes when ``jobs > 1``."""
    if jobs <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, items)


def generating_canonical_pairs(n: int) -> tuple[list[tuple[int, int]], int]:
    """Canonical generating pairs for ``n`` and the count of skipped non-generating orbits."""
    keep, skipped = [], 0
    for a, b in canonical_pairs(n):
        if gcd(gcd(a, b), n) == 1:
            keep.append((a, b))
        else:
            skipped += 1
    return keep, skipped


@dataclass(frozen=True)
class Counterexample:
    n: int
    a: int
    b: int
    l: int
    stabilizer: ResidueSet

    def to_json(self) -> dict:
        return {"n": self.n, "a": self.a, "b": self.b, "l": self.l,
                "stabilizer": list(self.stabilizer)}


@dataclass
class ConjectureScanResult:
    n_range: tuple[int, int]
    sets_scanned: int = 0
    levels_checked: int = 0
    nongenerating_skipped: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "n_range": list(self.n_range),
            "sets_scanned": self.sets_scanned,
            "levels_checked": self.levels_checked,
            "nongenerating_skipped": self.nongenerating_skipped,
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "confirmed": self.confirmed,
        }


def _scan_set(n: int, a: int, b: int, stab: StabilizerFn) -> dict:
    full = full_mask(n)
    trivial = 1
    bad = []
    levels = 0
    for l, level in enumerate(iter_level_masks(n, a, b)):
        if l == 0:
            continue
        levels += 1
        h = stab(level, n)
        if h != trivial and h != full:
            bad.append({"l": l, "stabilizer": ResidueSet.from_mask(n, h).members})
        if level == full:
            break
    return {"n": n, "a": a, "b": b, "levels": levels, "counterexamples": bad}


def _scan_n(task: tuple[int, list[tuple[int, int]], StabilizerFn]) -> list[dict]:
    n, pairs, stab = task
    return [_scan_set(n, a, b, stab) for a, b in pairs]


def _load_checkpoint(path: Path) -> dict[tuple[int, int, int], dict]:
    """Read finished records; a torn trailing line from an interrupted write is
    dropped and the file rewritten so later appends start on a clean line."""
    done = {}
    if not path.exists():
        return done
    good, torn = [], False
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            log.warning("dropping malformed checkpoint line in %s", path)
            torn = True
            continue
        good.append(line)
        done[(rec["n"], rec["a"], rec["b"])] = rec
    if torn:
        path.write_text("".join(line + "\n" for line in good))
    return done


def scan_stabilizers(
    n_min: int,
    n_max: int,
    jobs: int = 1,
    checkpoint: str | os.PathLike | None = None,
    stabilizer_fn: StabilizerFn = stabilizer_mask,
) -> ConjectureScanResult:
    """Check that every ``W'_l`` has stabilizer ``{0}`` or all of Z_n.

    Covers each canonical generating pair for ``n_min <= n <= n_max`` and
    levels ``l = 1`` through the first full level inclusive.  With a
    ``checkpoint`` path, one JSON line per finished ``(n, a, b)`` is appended
    in batches of 100, and pairs already present are not recomputed.
    """
    _check_range(n_min, n_max)
    path = Path(checkpoint) if checkpoint is not None else None
    done = _load_checkpoint(path) if path else {}

    result = ConjectureScanResult((n_min, n_max))
    tasks = []
    records: dict[tuple[int, int, int], dict] = {}
    for n in range(n_min, n_max + 1):
        pairs, skipped = generating_canonical_pairs(n)
        result.nongenerating_skipped += skipped
        pending = []
        for a, b in pairs:
            rec = done.get((n, a, b))
            if rec is None:
                pending.append((a, b))
            else:
                records[(n, a, b)] = rec
        tasks.append((n, pending, stabilizer_fn))

    buffer: list[dict] = []

    def flush():
        if path and buffer:
            with path.open("a") as fh:
                for rec in buffer:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
        buffer.clear()

    for batch in parallel_map(_scan_n, tasks, jobs):
        for rec in batch:
            records[(rec["n"], rec["a"], rec["b"])] = rec
            buffer.append(rec)
            if len(buffer) >= CHECKPOINT_EVERY:
                flush()
    flush()

    for key in sorted(records):
        rec = records[key]
        result.sets_scanned += 1
        result.levels_checked += rec["levels"]
        for bad in rec["counterexamples"]:
            result.counterexamples.append(
                Counterexample(rec["n"], rec["a"], rec["b"], bad["l"],
                               ResidueSet(rec["n"], bad["stabilizer"]))
            )
    return result


def _brute_stabilizer(mask: int, n: int) -> int:
    out = 0
    for g in range(n):
        if rotate(mask, g, n) == mask:
            out |= 1 << g
    return out


def reverify(result: ConjectureScanResult) -> list[Counterexample]:
    """Counterexample entries that do not survive recomputation.

    Each entry is rebuilt from ``(n, a, b, l)`` alone: the level is iterated
    afresh and its stabilizer found by trying every translate.  An entry is
    returned if the recorded stabilizer differs, or if it is in fact trivial
    or full.
    """
    bogus = []
    for c in result.counterexamples:
        levels = iter_level_masks(c.n, c.a, c.b)
        level = next(m for l, m in enumerate(levels) if l == c.l)
        h = _brute_stabilizer(level, c.n)
        if h != c.stabilizer.mask or h in (1, full_mask(c.n)):
            bogus.append(c)
    return bogus


@dataclass(frozen=True)
class SurveyRow:
    n: int
    a: int
    b: int
    lambda1: int
    max_reflection_length: int
    bound: int
    prime_condition_met: bool

    @property
    def tight(self) -> bool:
        return self.lambda1 == self.bound

    def to_json(self) -> dict:
        return {
            "n": self.n, "a": self.a, "b": self.b,
            "lambda1": self.lambda1,
            "max_reflection_length": self.max_reflection_length,
            "bound": self.bound,
            "tight": self.tight,
            "prime_condition_met": self.prime_condition_met,
        }


SURVEY_CSV_HEADER = "n,a,b,lambda1,max_refl_len,bound,tight,prime_condition_met"


def survey_csv(rows: Iterable[SurveyRow]) -> str:
    buf = io.StringIO()
    buf.write(SURVEY_CSV_HEADER + "\n")
    for r in rows:
        buf.write(
            f"{r.n},{r.a},{r.b},{r.lambda1},{r.max_reflection_length},{r.bound},"
            f"{str(r.tight).lower()},{str(r.prime_condition_met).lower()}\n"
        )
    return buf.getvalue()


def _survey_n(task: tuple[int, str]) -> list[SurveyRow]:
    n, engine = task
    pairs, _ = generating_canonical_pairs(n)
    rows = []
    for a, b in pairs:
        rep = lambda1(n, GeneratingSet(n, a, b), engine)
        rows.append(SurveyRow(n, a, b, rep.lambda1, rep.max_reflection_length,
                              rep.bound_n_half, rep.prime_condition_met))
    return rows


def survey_lambda(n_min: int, n_max: int, jobs: int = 1, engine: str = "sumset") -> list[SurveyRow]:
    """One :class:`SurveyRow` per canonical generating orbit, sorted by ``(n, a, b)``.

    Raises :class:`VerificationFailure` on the first row whose lambda_1
    exceeds floor(n/2) + 1.
    """
    _check_range(n_min, n_max)
    rows = []
    tasks = [(n, engine) for n in range(n_min, n_max + 1)]
    for batch in parallel_map(_survey_n, tasks, jobs):
        for row in batch:
            if row.lambda1 > half_bound(row.n):
                raise VerificationFailure(
                    f"lambda1 = {row.lambda1} exceeds floor(n/2)+1 = {half_bound(row.n)} "
                    f"for n={row.n}, offsets {{0, {row.a}, {row.b}}}"
                )
        rows.extend(batch)
    rows.sort(key=lambda r: (r.n, r.a, r.b))
    return rows


def bound_attainment(rows: Iterable[SurveyRow]) -> dict[int, bool]:
    """For each ``n`` in ``rows``, whether some set reaches floor(n/2) + 1."""
    out: dict[int, bool] = {}
    for r in rows:
        out[r.n] = out.get(r.n, False) or r.tight
    return out


def orbit_coverage(n: int) -> tuple[int, int]:
    """``(covered, expected)`` counts of ordered pairs ``1 <= a != b <= n-1``
    reached by expanding every canonical orbit; equal when the orbits
    partition the pairs exactly once."""
    covered = []
    for a, b in canonical_pairs(n):
        covered.extend(orbit_pairs(n, a, b))
    if len(covered) != len(set(covered)):
        return -1, (n - 1) * (n - 2)
    return len(covered), (n - 1) * (n - 2)
