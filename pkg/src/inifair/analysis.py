"""Monte-Carlo INI/SIR estimation and empirical CDFs."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .numerology import SpectrumAllocation
from .ofdm import SymbolGrid, demodulate, random_grid, synthesize

# trials per vectorized batch; fixed so sums never depend on how work is split
CHUNK = 64


@dataclass(frozen=True)
class SirReport:
    per_bin_sir_db: dict[int, np.ndarray]
    per_ue_sir_db: dict[str, float]
    desired_power: dict[int, np.ndarray]
    interference_power: dict[int, np.ndarray]
    trials: int
    seed: int

    def bin_rows(self, alloc: SpectrumAllocation):
        """(numerology, absolute_bin, ue_id, sir_db) for every allocated subcarrier."""
        for which in (1, 2):
            bins = alloc.reference_bins(which)
            for b, owner, sir in zip(bins, alloc.owners(which), self.per_bin_sir_db[which]):
                yield which, int(b), owner, float(sir)


@dataclass(frozen=True)
class CdfCurve:
    values: np.ndarray
    probs: np.ndarray

    def __len__(self):
        return len(self.values)

    def __call__(self, x):
        """Evaluate the step CDF at ``x``."""
        return np.searchsorted(self.values, x, side="right") / len(self.values)

    def quantile(self, q):
        return np.quantile(self.values, q)

    def iqr(self) -> float:
        return float(np.subtract(*np.quantile(self.values, [0.75, 0.25])))


def _to_db(num, den):
    with np.errstate(divide="ignore"):
        return 10 * np.log10(num / den)


def ue_sir_db(desired: np.ndarray, interference: np.ndarray) -> float:
    """Aggregate SIR of a group of bins: total desired over total interference."""
    return float(_to_db(np.sum(desired), np.sum(interference)))


def estimate_sir(alloc: SpectrumAllocation, trials: int = 1000, seed: int = 0) -> SirReport:
    """Average per-subcarrier INI over ``trials`` random-data realizations.

    Trial ``t`` draws its QPSK data from ``default_rng(seed + t)``. The
    interference seen by a block is what its receiver picks up while only the
    other block transmits; interference powers are averaged over symbols and
    trials before any ratio is formed.
    """
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    trials = int(trials)
    n1, n2 = alloc.n1, alloc.n2
    totals = {1: np.zeros(n1), 2: np.zeros(n2)}

    if n1 and n2:
        for lo in range(0, trials, CHUNK):
            idx = range(lo, min(lo + CHUNK, trials))
            grids = {1: [], 2: []}
            for t in idx:
                rng = np.random.default_rng(seed + t)
                for which in (1, 2):
                    grids[which].append(random_grid(alloc, which, rng).qam_symbols)
            signals = {}
            for which in (1, 2):
                grid = SymbolGrid(which, np.stack(grids[which]), alloc.amplitudes(which))
                signals[which] = synthesize(alloc, grid, which)
            for victim, aggressor in ((1, 2), (2, 1)):
                rx = demodulate(signals[aggressor], alloc, victim)
                totals[victim] += np.sum(np.mean(np.abs(rx) ** 2, axis=-2), axis=0)

    desired, interference, per_bin = {}, {}, {}
    for which in (1, 2):
        desired[which] = alloc.amplitudes(which) ** 2
        interference[which] = totals[which] / trials
        per_bin[which] = _to_db(desired[which], interference[which])

    per_ue = {}
    for which in (1, 2):
        for ue in alloc.ues(which):
            first, count = alloc.ranges[ue.id]
            sl = slice(first, first + count)
            per_ue[ue.id] = ue_sir_db(desired[which][sl], interference[which][sl])
    return SirReport(per_bin, per_ue, desired, interference, trials, seed)


def per_ue_sir(report: SirReport, alloc: SpectrumAllocation) -> list[tuple[str, float]]:
    """Per-UE SIR in allocation order (NUM-1 low to high, then NUM-2)."""
    out = []
    for which in (1, 2):
        desired = report.desired_power[which]
        interference = report.interference_power[which]
        for ue in alloc.ues(which):
            if ue.id not in report.per_ue_sir_db:
                raise KeyError(f"UE {ue.id!r} is not covered by this report")
            first, count = alloc.ranges[ue.id]
            if first + count > len(desired):
                raise KeyError(f"UE {ue.id!r} lies outside the report's bins")
            sl = slice(first, first + count)
            out.append((ue.id, ue_sir_db(desired[sl], interference[sl])))
    return out


def empirical_cdf(samples) -> CdfCurve:
    values = np.sort(np.asarray(samples, dtype=float).ravel())
    if values.size == 0:
        raise ValueError("empirical_cdf needs at least one sample")
    return CdfCurve(values, np.arange(1, values.size + 1) / values.size)


def max_cdf_distance(a: CdfCurve, b: CdfCurve) -> float:
    """Largest vertical gap between two empirical CDFs."""
    return float(stats.ks_2samp(a.values, b.values).statistic)
