"""Assemble S-boxes from chosen bit-planes, and a seeded search over them.

The pipeline is: choose ``n`` BCNs, keep them only if each is balanced,
stack them into a table, and keep the table only if it is a permutation.
Balance of every plane is necessary for bijectivity but not sufficient,
hence the second gate.

Randomness is counter-based: candidate ``i`` under seed ``s`` draws from a
Philox generator keyed by ``(s, i)``.  A candidate therefore depends only on
``(seed, i)``, never on which worker evaluated it or in what order.
"""
from __future__ import annotations

import enum
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, count as counter, product
from typing import Iterator, Sequence

import numpy as np

from .bcn import Bcn, pack_plane, bcn_to_polynomial, bcns_to_sbox, is_balanced
from .gfpoly import is_irreducible
from .sbox import SBox, is_proper

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


class Verdict(str, enum.Enum):
    ACCEPTED = "accepted"
    REJECTED_UNBALANCED = "rejected-unbalanced"
    REJECTED_NOT_BIJECTIVE = "rejected-not-bijective"


class Mode(str, enum.Enum):
    RANDOM = "random"
    EXHAUSTIVE = "exhaustive"


class Sampler(str, enum.Enum):
    #: planes drawn one after another, each split evenly inside every class
    #: fixed by the planes above it; marginally each plane is a uniform
    #: balanced vector and the stack is always a permutation
    REFINE = "refine"
    #: each plane an independent uniform balanced vector
    INDEPENDENT = "independent"
    #: each plane an arbitrary uniform vector (exercises the balance gate)
    UNIFORM = "uniform"


@dataclass(frozen=True)
class CandidateReport:
    bcns: tuple[Bcn, ...]
    balanced: tuple[bool, ...]
    assembled: SBox | None
    proper: bool | None
    verdict: Verdict

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPTED


@dataclass(frozen=True)
class SearchConfig:
    n: int
    seed: int = 0
    count: int | None = 1
    mode: Mode = Mode.RANDOM
    require_irreducible: bool = False
    sampler: Sampler = Sampler.REFINE
    #: stop after this many candidate indices even if ``count`` is unmet
    max_candidates: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "sampler", Sampler(self.sampler))
        if self.n < 2:
            raise ValueError("bit width must be >= 2")
        if self.mode is Mode.EXHAUSTIVE and self.n != 2:
            raise ValueError("exhaustive mode is only feasible for n = 2")
        if self.mode is Mode.RANDOM and self.count is None:
            raise ValueError("random mode needs a count")
        if self.count is not None and self.count < 0:
            raise ValueError("count must be >= 0")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def generate(bcns: Sequence[Bcn]) -> CandidateReport:
    """Run the balance gate, assemble, then run the bijectivity gate."""
    bcns = tuple(bcns)
    if not bcns:
        raise ValueError("need at least one BCN")
    n = bcns[0].n
    if any(b.n != n for b in bcns) or len(bcns) != n:
        raise ValueError(f"expected {n} BCNs of width {n}")
    balanced = tuple(is_balanced(b) for b in bcns)
    if not all(balanced):
        return CandidateReport(bcns, balanced, None, None, Verdict.REJECTED_UNBALANCED)
    sbox = bcns_to_sbox(bcns)
    proper = is_proper(sbox)
    verdict = Verdict.ACCEPTED if proper else Verdict.REJECTED_NOT_BIJECTIVE
    return CandidateReport(bcns, balanced, sbox, proper, verdict)


# -- candidate sampling ----------------------------------------------------------

def candidate_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(index << 64) | (seed & MASK64)))


def _label(n: int, values: Sequence[int]) -> tuple[Bcn, ...]:
    return tuple(Bcn(n, v, n - i, "out") for i, v in enumerate(values))


def sample_candidate(n: int, seed: int, index: int, sampler: Sampler = Sampler.REFINE) -> tuple[Bcn, ...]:
    """The BCN tuple for candidate ``index``, highest plane first."""
    rng = candidate_rng(seed, index)
    size = 1 << n
    half = size // 2
    values = []
    if sampler is Sampler.REFINE:
        cell = np.zeros(size, dtype=np.int64)
        pos = np.arange(size)
        for depth in range(n):
            width = size >> depth
            order = np.lexsort((rng.random(size), cell))
            bits = np.empty(size, dtype=np.int64)
            bits[order] = (pos % width) < width // 2
            values.append(pack_plane(bits))
            cell = cell * 2 + bits
    elif sampler is Sampler.INDEPENDENT:
        for _ in range(n):
            bits = np.zeros(size, dtype=np.uint8)
            bits[rng.permutation(size)[:half]] = 1
            values.append(pack_plane(bits))
    else:
        for _ in range(n):
            values.append(pack_plane(rng.integers(0, 2, size, dtype=np.uint8)))
    return _label(n, values)


def balanced_values(n: int) -> list[int]:
    """Every balanced ``2**n``-bit value, ascending."""
    size = 1 << n
    vals = [sum(1 << (size - 1 - j) for j in ones) for ones in combinations(range(size), size // 2)]
    return sorted(vals)


def exhaustive_candidates(n: int) -> Iterator[tuple[Bcn, ...]]:
    """All tuples of balanced planes in lexicographic order (n = 2 only)."""
    if n != 2:
        raise ValueError("exhaustive enumeration is only feasible for n = 2")
    vals = balanced_values(n)
    for combo in product(vals, repeat=n):
        yield _label(n, combo)


def _all_irreducible(bcns: Sequence[Bcn]) -> bool:
    return all(b.value > 1 and is_irreducible(bcn_to_polynomial(b)) for b in bcns)


def irreducible_filter_is_empty(n: int) -> bool:
    """Whether no proper ``n``-bit S-box has only irreducible planes.

    A balanced plane has ``2**(n-1)`` ones, an even count, so its polynomial
    vanishes at 1 and is divisible by ``x + 1``.  It can then be irreducible
    only if it *is* ``x + 1``, which has two terms, so only for ``n = 2``.
    Distinct planes are needed for a permutation, and one candidate plane
    cannot fill ``n >= 2`` slots.
    """
    return n >= 2


# -- search ----------------------------------------------------------------------

def _evaluate(config: SearchConfig, index: int) -> CandidateReport:
    return generate(sample_candidate(config.n, config.seed, index, config.sampler))


def _keep(config: SearchConfig, rep: CandidateReport) -> bool:
    if not rep.accepted:
        return False
    return not config.require_irreducible or _all_irreducible(rep.bcns)


def search(config: SearchConfig, workers: int = 1, batch: int = 256) -> Iterator[tuple[tuple[Bcn, ...], SBox]]:
    """Yield ``(bcns, sbox)`` for accepted candidates in candidate-index order.

    ``workers > 1`` evaluates batches on a thread pool; the output is the
    same for any worker count.
    """
    if config.count == 0:
        return
    emitted = 0
    if config.mode is Mode.EXHAUSTIVE:
        for bcns in exhaustive_candidates(config.n):
            rep = generate(bcns)
            if _keep(config, rep):
                yield rep.bcns, rep.assembled
                emitted += 1
                if config.count is not None and emitted >= config.count:
                    return
        return
    if config.require_irreducible and irreducible_filter_is_empty(config.n):
        log.info("no proper %d-bit S-box has all-irreducible planes; nothing to emit", config.n)
        return
    limit = config.max_candidates
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        start = 0
        while limit is None or start < limit:
            stop = start + batch if limit is None else min(start + batch, limit)
            idx = range(start, stop)
            if pool is None:
                reports = (_evaluate(config, i) for i in idx)
            else:
                reports = pool.map(_evaluate, [config] * len(idx), idx)
            for rep in reports:
                if _keep(config, rep):
                    yield rep.bcns, rep.assembled
                    emitted += 1
                    if emitted >= config.count:
                        return
            start = stop
        log.warning("candidate limit %d reached after %d of %d hits", limit, emitted, config.count)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


@dataclass
class CandidateStats:
    trials: int = 0
    tally: Counter = field(default_factory=Counter)
    #: accepted candidates dropped by the irreducibility filter
    filtered_reducible: int = 0

    @property
    def accepted(self) -> int:
        return self.tally[Verdict.ACCEPTED]

    @property
    def rejected_unbalanced(self) -> int:
        return self.tally[Verdict.REJECTED_UNBALANCED]

    @property
    def rejected_not_bijective(self) -> int:
        return self.tally[Verdict.REJECTED_NOT_BIJECTIVE]

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "accepted": self.accepted,
            "rejected_unbalanced": self.rejected_unbalanced,
            "rejected_not_bijective": self.rejected_not_bijective,
            "filtered_reducible": self.filtered_reducible,
        }


def candidate_stats(config: SearchConfig, trials: int) -> CandidateStats:
    """Tally verdicts over ``trials`` candidates.

    Random mode draws candidate indices ``0 .. trials-1`` with the
    configured sampler; exhaustive mode walks the first ``trials`` tuples
    of the balanced space (36 of them at n = 2).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    stats = CandidateStats()
    if config.mode is Mode.EXHAUSTIVE:
        source = exhaustive_candidates(config.n)
    else:
        source = (sample_candidate(config.n, config.seed, i, config.sampler) for i in counter())
    for _, bcns in zip(range(trials), source):
        rep = generate(bcns)
        stats.trials += 1
        stats.tally[rep.verdict] += 1
        if rep.accepted and config.require_irreducible and not _all_irreducible(rep.bcns):
            stats.filtered_reducible += 1
    return stats
