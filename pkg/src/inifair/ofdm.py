"""CP-OFDM synthesis and demodulation on a common sampling grid.

All blocks are sampled at ``n_ref * delta_f_ref``.  Each numerology runs its
own ``n_fft``-point transform with subcarriers in bins ``0..n-1`` and is then
moved to its place on the reference grid by a complex-exponential shift.
Transforms are orthonormal, so equal amplitudes give equal power spectral
density in both numerologies.

Arrays may carry leading batch axes (one per Monte-Carlo trial, typically).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numerology import ConfigurationError, SpectrumAllocation

QPSK = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / np.sqrt(2)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolGrid:
    """Unit-energy data symbols of one numerology, shape ``(..., n_symbols, n_sc)``."""

    numerology_index: int
    qam_symbols: np.ndarray
    amplitude_scale: np.ndarray

    @property
    def cells(self) -> np.ndarray:
        return self.qam_symbols * self.amplitude_scale


@dataclass(frozen=True)
class BasebandSignal:
    samples: np.ndarray
    sample_rate: float  # kHz

    def __len__(self):
        return self.samples.shape[-1]

    @property
    def power(self) -> float:
        return float(np.mean(np.abs(self.samples) ** 2))


def window_length(alloc: SpectrumAllocation) -> int:
    """Samples in one alignment window (one symbol of the narrowest numerology)."""
    lengths = [alloc.num1.symbol_length, alloc.num2.symbol_length]
    window = max(lengths)
    if any(window % n for n in lengths):
        raise ConfigurationError(
            "cp_ratio", f"symbol lengths {lengths} do not align to a common window"
        )
    return window


def symbols_per_window(alloc: SpectrumAllocation, which: int) -> int:
    return window_length(alloc) // alloc.numerology(which).symbol_length


@lru_cache(maxsize=64)
def _shift(bins: int, n_ref: int, length: int) -> np.ndarray:
    n = np.arange(length)
    return np.exp(2j * np.pi * ((bins * n) % n_ref) / n_ref)


def random_grid(alloc: SpectrumAllocation, which: int, rng: np.random.Generator, batch=()) -> SymbolGrid:
    """Independent uniform QPSK symbols filling one numerology's window."""
    shape = tuple(batch) + (symbols_per_window(alloc, which), alloc.n_subcarriers(which))
    symbols = QPSK[rng.integers(0, 4, size=shape)]
    return SymbolGrid(which, symbols, alloc.amplitudes(which))


def synthesize(alloc: SpectrumAllocation, grid: SymbolGrid, which: int) -> BasebandSignal:
    num = alloc.numerology(which)
    n_sc = alloc.n_subcarriers(which)
    n_sym = symbols_per_window(alloc, which)
    cells = np.asarray(grid.cells)
    if grid.numerology_index != which or cells.shape[-2:] != (n_sym, n_sc):
        raise DimensionError(
            f"grid shape {cells.shape[-2:]} for numerology {grid.numerology_index} does not "
            f"match numerology {which}: ({n_sym}, {n_sc})"
        )
    batch = cells.shape[:-2]
    freq = np.zeros(batch + (n_sym, num.n_fft), dtype=complex)
    freq[..., :n_sc] = cells
    body = np.fft.ifft(freq, axis=-1, norm="ortho")
    symbols = np.concatenate([body[..., num.n_fft - num.n_cp:], body], axis=-1)
    samples = symbols.reshape(batch + (n_sym * num.symbol_length,))
    samples = samples * _shift(alloc.shift_bins(which), num.n_ref, samples.shape[-1])
    return BasebandSignal(samples, num.n_ref * num.delta_f_ref)


def compose(sig1: BasebandSignal, sig2: BasebandSignal) -> BasebandSignal:
    if sig1.samples.shape != sig2.samples.shape:
        raise DimensionError(f"cannot add signals of shape {sig1.samples.shape} and {sig2.samples.shape}")
    if sig1.sample_rate != sig2.sample_rate:
        raise DimensionError(f"sample rates differ: {sig1.sample_rate} vs {sig2.sample_rate}")
    return BasebandSignal(sig1.samples + sig2.samples, sig1.sample_rate)


def demodulate(sig: BasebandSignal, alloc: SpectrumAllocation, which: int) -> np.ndarray:
    """Receive one numerology: undo its shift, strip CPs, FFT each symbol.

    Returns the allocated bins, shape ``(..., n_symbols, n_sc)``.
    """
    num = alloc.numerology(which)
    samples = np.asarray(sig.samples)
    window = window_length(alloc)
    if samples.shape[-1] != window:
        raise DimensionError(f"signal has {samples.shape[-1]} samples, window is {window}")
    n_sym = window // num.symbol_length
    y = samples * np.conj(_shift(alloc.shift_bins(which), num.n_ref, window))
    y = y.reshape(samples.shape[:-1] + (n_sym, num.symbol_length))[..., num.n_cp:]
    return np.fft.fft(y, axis=-1, norm="ortho")[..., : alloc.n_subcarriers(which)]
