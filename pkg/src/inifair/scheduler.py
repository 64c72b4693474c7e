"""Edge-pair scheduling for two adjacent numerology blocks.

UE indices ``s`` and ``t`` are 1-based positions in the input lists.  Only the
boundary-facing UE of each block is chosen by the algorithms; the remaining
UEs keep their input order, the first of them placed next to the edge UE and
the rest filling outwards.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerology import UeProfile

RANDOM = "random"
EDGE_FAIRNESS = "edge-fairness"
OVERALL_FAIRNESS = "overall-fairness"


@dataclass(frozen=True)
class PairSelection:
    s: int
    t: int
    po_db: float


@dataclass(frozen=True)
class CandidateSet:
    r: float
    th_p: float
    pairs: tuple[PairSelection, ...]
    pl: tuple[float, ...]


@dataclass(frozen=True)
class ScheduleDecision:
    edge_pair: PairSelection
    order1: tuple[UeProfile, ...]
    order2: tuple[UeProfile, ...]
    algorithm: str


def power_offset(p1: float, p2: float) -> float:
    return abs(p1 - p2)


def _check(ues1, ues2):
    if not ues1 or not ues2:
        raise ValueError("both numerologies need at least one UE")


def _orders(ues1: Sequence[UeProfile], ues2: Sequence[UeProfile], s: int, t: int):
    rest1 = [ue for i, ue in enumerate(ues1, 1) if i != s]
    rest2 = [ue for i, ue in enumerate(ues2, 1) if i != t]
    # NUM-1 faces the boundary with its last element, NUM-2 with its first
    order1 = tuple(rest1[::-1]) + (ues1[s - 1],)
    order2 = (ues2[t - 1],) + tuple(rest2)
    return order1, order2


def _all_pairs(ues1, ues2):
    return [
        PairSelection(s, t, power_offset(u.power_db, v.power_db))
        for s, u in enumerate(ues1, 1)
        for t, v in enumerate(ues2, 1)
    ]


def schedule_algo1(ues1: Sequence[UeProfile], ues2: Sequence[UeProfile]) -> ScheduleDecision:
    """Put the pair with the smallest power offset at the boundary.

    Ties go to the smallest ``s``, then the smallest ``t``.
    """
    _check(ues1, ues2)
    best = min(_all_pairs(ues1, ues2), key=lambda p: (p.po_db, p.s, p.t))
    return ScheduleDecision(best, *_orders(ues1, ues2, best.s, best.t), EDGE_FAIRNESS)


def average_power(p1: float, p2: float, averaging: str = "db") -> float:
    """Mean power level of a pair, in dB.

    ``"db"`` averages the dB values; ``"linear"`` averages milliwatt-style
    linear powers and converts back.
    """
    if averaging == "db":
        return (p1 + p2) / 2
    if averaging == "linear":
        return float(10 * np.log10((10 ** (p1 / 10) + 10 ** (p2 / 10)) / 2))
    raise ValueError(f"averaging must be 'db' or 'linear', got {averaging!r}")


def build_candidates(
    ues1: Sequence[UeProfile], ues2: Sequence[UeProfile], r: float = 2.0, averaging: str = "db"
) -> CandidateSet:
    if not r >= 1:
        raise ValueError(f"r must be >= 1, got {r!r}")
    _check(ues1, ues2)
    pairs = _all_pairs(ues1, ues2)
    th_p = r * min(p.po_db for p in pairs)
    chosen = tuple(p for p in pairs if p.po_db <= th_p)
    pl = tuple(
        average_power(ues1[p.s - 1].power_db, ues2[p.t - 1].power_db, averaging) for p in chosen
    )
    return CandidateSet(r, th_p, chosen, pl)


def schedule_algo2(
    ues1: Sequence[UeProfile], ues2: Sequence[UeProfile], r: float = 2.0, averaging: str = "db"
) -> ScheduleDecision:
    """Among pairs with offset within ``r`` times the minimum, take the lowest-power one.

    Ties are broken by smaller offset, then ``s``, then ``t``.
    """
    cands = build_candidates(ues1, ues2, r, averaging)
    _, best = min(zip(cands.pl, cands.pairs), key=lambda x: (x[0], x[1].po_db, x[1].s, x[1].t))
    return ScheduleDecision(best, *_orders(ues1, ues2, best.s, best.t), OVERALL_FAIRNESS)


def schedule_random(ues1: Sequence[UeProfile], ues2: Sequence[UeProfile], seed) -> ScheduleDecision:
    """Independent uniform permutations of both blocks."""
    _check(ues1, ues2)
    rng = np.random.default_rng(seed)
    perm1 = rng.permutation(len(ues1))
    perm2 = rng.permutation(len(ues2))
    order1 = tuple(ues1[i] for i in perm1)
    order2 = tuple(ues2[i] for i in perm2)
    s, t = int(perm1[-1]) + 1, int(perm2[0]) + 1
    pair = PairSelection(s, t, power_offset(ues1[s - 1].power_db, ues2[t - 1].power_db))
    return ScheduleDecision(pair, order1, order2, RANDOM)


def schedule(algorithm: str, ues1, ues2, *, r: float = 2.0, seed=None, averaging: str = "db"):
    """Dispatch by short name: ``random``, ``algo1`` or ``algo2``."""
    if algorithm == "random":
        return schedule_random(ues1, ues2, seed)
    if algorithm == "algo1":
        return schedule_algo1(ues1, ues2)
    if algorithm == "algo2":
        return schedule_algo2(ues1, ues2, r, averaging)
    raise ValueError(f"unknown algorithm {algorithm!r}")
