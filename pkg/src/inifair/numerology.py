"""Numerologies, users and two-block spectrum allocations.

Frequencies are expressed on the reference grid: bin ``b`` sits at
``b * delta_f_ref``.  A numerology with scaling exponent ``k`` has
subcarriers ``2**k`` reference bins wide.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class ConfigurationError(ValueError):
    """Invalid numerology or experiment parameter."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class AllocationError(ValueError):
    """The requested UE layout does not fit the reference grid."""

    def __init__(self, required: int, available: int):
        super().__init__(
            f"allocation needs {required} reference bins but only {available} are available"
        )
        self.required = required
        self.available = available


@dataclass(frozen=True)
class Numerology:
    k: int
    delta_f_ref: float  # kHz
    n_ref: int
    cp_ratio: float
    delta_f: float  # kHz
    n_fft: int
    n_cp: int | None  # None for timing-only (table) numerologies
    t_cp: float  # microseconds
    slot_duration: float  # milliseconds
    symbols_per_slot: int

    @property
    def symbol_duration(self) -> float:
        """Useful symbol duration in microseconds."""
        return 1e3 / self.delta_f

    @property
    def bins_per_subcarrier(self) -> int:
        return 2 ** self.k

    @property
    def symbol_length(self) -> int:
        """Samples per CP-prefixed symbol at the common sampling rate."""
        if self.n_cp is None:
            raise ConfigurationError("cp_ratio", "timing-only numerology has no sample-level CP")
        return self.n_fft + self.n_cp


def make_numerology(
    k: int,
    delta_f_ref: float = 15.0,
    n_ref: int = 4096,
    cp_ratio: float = 1 / 16,
    *,
    slot_duration_ref: float = 1.0,
    symbols_per_slot: int = 14,
    timing_only: bool = False,
) -> Numerology:
    """Build the numerology with subcarrier spacing ``2**k * delta_f_ref``.

    With ``timing_only=True`` the CP is not required to be a whole number of
    samples and ``n_cp`` is left as ``None``; such numerologies describe the
    NR timing table but cannot be synthesized.
    """
    if int(k) != k or k < 0:
        raise ConfigurationError("k", f"must be a non-negative integer, got {k!r}")
    k = int(k)
    if not delta_f_ref > 0:
        raise ConfigurationError("delta_f_ref", f"must be positive, got {delta_f_ref!r}")
    if int(n_ref) != n_ref or n_ref < 1:
        raise ConfigurationError("n_ref", f"must be a positive integer, got {n_ref!r}")
    n_ref = int(n_ref)
    if n_ref % 2 ** k:
        raise ConfigurationError("n_fft", f"n_ref={n_ref} is not divisible by 2**k={2 ** k}")
    if not 0 <= cp_ratio < 1:
        raise ConfigurationError("cp_ratio", f"must lie in [0, 1), got {cp_ratio!r}")
    n_fft = n_ref // 2 ** k

    n_cp = None
    if not timing_only:
        cp_samples = Fraction(cp_ratio).limit_denominator(1 << 20) * n_fft
        if cp_samples.denominator != 1:
            raise ConfigurationError(
                "cp_ratio",
                f"CP sample count {float(cp_samples):g} (= {cp_ratio:g} x {n_fft}) is not an integer",
            )
        n_cp = int(cp_samples)

    delta_f = delta_f_ref * 2 ** k
    return Numerology(
        k=k,
        delta_f_ref=float(delta_f_ref),
        n_ref=n_ref,
        cp_ratio=float(cp_ratio),
        delta_f=float(delta_f),
        n_fft=n_fft,
        n_cp=n_cp,
        t_cp=cp_ratio * 1e3 / delta_f,
        slot_duration=slot_duration_ref / 2 ** k,
        symbols_per_slot=symbols_per_slot,
    )


@dataclass(frozen=True)
class UeProfile:
    id: str
    numerology_index: int
    power_db: float
    n_subcarriers: int

    def __post_init__(self):
        if self.numerology_index not in (1, 2):
            raise ValueError(f"UE {self.id}: numerology_index must be 1 or 2")
        if self.n_subcarriers < 1:
            raise ValueError(f"UE {self.id}: n_subcarriers must be >= 1")
        if not np.isfinite(self.power_db):
            raise ValueError(f"UE {self.id}: power_db must be finite")

    @property
    def amplitude(self) -> float:
        return float(np.sqrt(10 ** (self.power_db / 10)))


@dataclass(frozen=True)
class SpectrumAllocation:
    """Two adjacent numerology blocks; NUM-1 below, NUM-2 above.

    ``order1[-1]`` and ``order2[0]`` are the edge UEs.  ``ranges`` maps each
    UE id to its first subcarrier index and count within its own block.
    """

    num1: Numerology
    num2: Numerology
    order1: tuple[UeProfile, ...]
    order2: tuple[UeProfile, ...]
    guard_subcarriers: int
    start_bin: int
    ranges: dict[str, tuple[int, int]] = field(repr=False)

    @property
    def n_ref(self) -> int:
        return self.num1.n_ref

    @property
    def n1(self) -> int:
        return sum(ue.n_subcarriers for ue in self.order1)

    @property
    def n2(self) -> int:
        return sum(ue.n_subcarriers for ue in self.order2)

    def shift_bins(self, which: int = 2) -> int:
        """Reference bin of the first subcarrier of a block.

        The first NUM-2 subcarrier sits ``guard + 1`` reference bins above the
        last NUM-1 subcarrier.
        """
        if which == 1:
            return self.start_bin
        last1 = self.start_bin + self.num1.bins_per_subcarrier * (self.n1 - 1)
        return last1 + 1 + self.guard_subcarriers

    @property
    def edge1(self) -> UeProfile | None:
        return self.order1[-1] if self.order1 else None

    @property
    def edge2(self) -> UeProfile | None:
        return self.order2[0] if self.order2 else None

    def ues(self, which: int) -> tuple[UeProfile, ...]:
        return self.order1 if which == 1 else self.order2

    def numerology(self, which: int) -> Numerology:
        return self.num1 if which == 1 else self.num2

    def n_subcarriers(self, which: int) -> int:
        return self.n1 if which == 1 else self.n2

    def ue(self, ue_id: str) -> UeProfile:
        for ue in self.order1 + self.order2:
            if ue.id == ue_id:
                return ue
        raise KeyError(f"unknown UE id {ue_id!r}")

    def reference_bins(self, which: int) -> np.ndarray:
        """Reference-grid bin at the centre of every subcarrier of a block."""
        num = self.numerology(which)
        return self.shift_bins(which) + num.bins_per_subcarrier * np.arange(self.n_subcarriers(which))

    def amplitudes(self, which: int) -> np.ndarray:
        """Per-subcarrier linear amplitude of a block."""
        ues = self.ues(which)
        if not ues:
            return np.zeros(0)
        return np.repeat([ue.amplitude for ue in ues], [ue.n_subcarriers for ue in ues])

    def owners(self, which: int) -> list[str]:
        return [ue.id for ue in self.ues(which) for _ in range(ue.n_subcarriers)]

    def occupied_span(self) -> tuple[int, int]:
        """First and one-past-last reference bin of the occupied band."""
        return self.start_bin, self.shift_bins(2) + self.num2.bins_per_subcarrier * self.n2


def build_allocation(
    num1: Numerology,
    num2: Numerology,
    order1,
    order2,
    guard: int = 0,
    start_bin: int | None = None,
) -> SpectrumAllocation:
    """Lay out two numerology blocks contiguously on the reference grid.

    NUM-1 UEs are placed in ascending frequency in ``order1`` order, then
    ``guard`` empty reference bins, then NUM-2 UEs in ``order2`` order. By
    default the occupied band is centred in the grid.

    One of the orders may be empty, giving a single-numerology allocation.
    """
    order1, order2 = tuple(order1), tuple(order2)
    if num1.n_ref != num2.n_ref or num1.delta_f_ref != num2.delta_f_ref:
        raise ConfigurationError("n_ref", "both numerologies must share the reference grid")
    if not order1 and not order2:
        raise ValueError("allocation needs at least one UE")
    if guard < 0:
        raise ConfigurationError("guard", f"must be >= 0, got {guard}")
    for which, ues in ((1, order1), (2, order2)):
        for ue in ues:
            if ue.numerology_index != which:
                raise ValueError(f"UE {ue.id} belongs to numerology {ue.numerology_index}, not {which}")
    ids = [ue.id for ue in order1 + order2]
    if len(set(ids)) != len(ids):
        raise ValueError("UE ids must be unique")

    n1 = sum(ue.n_subcarriers for ue in order1)
    n2 = sum(ue.n_subcarriers for ue in order2)
    required = num1.bins_per_subcarrier * n1 + guard + num2.bins_per_subcarrier * n2
    if required > num1.n_ref:
        raise AllocationError(required, num1.n_ref)
    if start_bin is None:
        start_bin = (num1.n_ref - required) // 2
    elif start_bin < 0 or start_bin + required > num1.n_ref:
        raise AllocationError(start_bin + required, num1.n_ref)

    ranges = {}
    for ues in (order1, order2):
        first = 0
        for ue in ues:
            ranges[ue.id] = (first, ue.n_subcarriers)
            first += ue.n_subcarriers
    return SpectrumAllocation(num1, num2, order1, order2, guard, start_bin, ranges)
