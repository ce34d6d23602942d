"""Sparse multimode bosonic Fock-state algebra.

States are sparse maps from per-mode occupation tuples to complex amplitudes.
Heralded pipelines keep amplitudes relative to their original input state, so
intermediate states are intentionally unnormalized and event probabilities are
read off as squared norms; nothing is renormalized mid-pipeline.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Iterable, Mapping

Occupation = tuple[int, ...]

# Amplitudes below this magnitude are destructive-interference residue (e.g.
# filtered Fock components); dropping them keeps term counts small without
# touching anything asserted at the 1e-10 level or coarser.
PRUNE_THRESHOLD = 1e-14

_UNIT_NORM_ATOL = 1e-10


class FockState:
    """Sparse complex-amplitude expansion over occupation vectors.

    Instances are immutable: every operation returns a new state, so states can
    be shared freely across concurrent workers. The ``normalized`` flag
    documents whether the state is a physical unit-norm state or a
    relative-amplitude (heralded) expansion.
    """

    __slots__ = ("_mode_count", "_terms", "_normalized")

    def __init__(
        self,
        mode_count: int,
        terms: Mapping[Occupation, complex],
        *,
        normalized: bool = False,
    ) -> None:
        if mode_count < 1:
            raise ValueError(f"mode_count must be positive, got {mode_count}")
        pruned: dict[Occupation, complex] = {}
        for occ, amp in terms.items():
            occ = tuple(int(n) for n in occ)
            if len(occ) != mode_count:
                raise ValueError(
                    f"occupation {occ} has {len(occ)} modes, expected {mode_count}"
                )
            if any(n < 0 for n in occ):
                raise ValueError(f"occupation {occ} has a negative photon count")
            value = complex(amp)
            if abs(value) >= PRUNE_THRESHOLD:
                pruned[occ] = value
        self._mode_count = mode_count
        self._terms = pruned
        self._normalized = bool(normalized)
        if self._normalized:
            total = sum(abs(a) ** 2 for a in pruned.values())
            if abs(total - 1.0) > _UNIT_NORM_ATOL:
                raise ValueError(
                    f"state flagged normalized but its squared norm is {total!r}"
                )

    @property
    def mode_count(self) -> int:
        return self._mode_count

    @property
    def normalized(self) -> bool:
        return self._normalized

    @property
    def terms(self) -> Mapping[Occupation, complex]:
        """Read-only view of the stored (occupation, amplitude) pairs."""
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return (
            f"FockState(mode_count={self._mode_count}, terms={len(self._terms)}, "
            f"normalized={self._normalized})"
        )


def make_fock(mode_count: int, occupation: Iterable[int]) -> FockState:
    """Single-term basis state |n_1, ..., n_d> with amplitude 1."""
    occ = tuple(int(n) for n in occupation)
    if len(occ) != mode_count:
        raise ValueError(
            f"occupation has {len(occ)} entries but mode_count is {mode_count}"
        )
    return FockState(mode_count, {occ: 1.0}, normalized=True)


def make_coherent_truncated(alpha: complex, cutoff: int) -> FockState:
    """Single-mode coherent state truncated at photon number ``cutoff``.

    Amplitudes follow the Poisson law exp(-|alpha|^2/2) * alpha^n / sqrt(n!).
    The Gaussian prefactor is kept exactly, so the stored amplitudes are the
    true coherent-state amplitudes and the truncated norm is below one; the
    state is therefore flagged unnormalized.
    """
    if cutoff < 0:
        raise ValueError(f"cutoff must be non-negative, got {cutoff}")
    alpha = complex(alpha)
    amp = complex(math.exp(-0.5 * abs(alpha) ** 2))
    terms = {(0,): amp}
    for n in range(1, cutoff + 1):
        amp = amp * alpha / math.sqrt(n)
        terms[(n,)] = amp
    return FockState(1, terms, normalized=False)


def tensor(a: FockState, b: FockState) -> FockState:
    """Tensor product; occupations concatenate and amplitudes multiply."""
    terms = {}
    for occ_a, amp_a in a.terms.items():
        for occ_b, amp_b in b.terms.items():
            terms[occ_a + occ_b] = amp_a * amp_b
    return FockState(
        a.mode_count + b.mode_count,
        terms,
        normalized=a.normalized and b.normalized,
    )


def norm_sq(state: FockState) -> float:
    """Sum of squared amplitude magnitudes over all stored terms."""
    return sum(abs(amp) ** 2 for amp in state.terms.values())


def amplitude(state: FockState, occupation: Iterable[int]) -> complex:
    """Stored amplitude of ``occupation``, or exactly zero when absent."""
    occ = tuple(int(n) for n in occupation)
    if len(occ) != state.mode_count:
        raise ValueError(
            f"occupation has {len(occ)} entries but the state has "
            f"{state.mode_count} modes"
        )
    return state.terms.get(occ, 0j)


def restrict_total_photons(state: FockState, n_total: int) -> FockState:
    """Keep only the terms whose occupations sum to ``n_total`` (unnormalized)."""
    kept = {
        occ: amp for occ, amp in state.terms.items() if sum(occ) == n_total
    }
    return FockState(state.mode_count, kept, normalized=False)


def state_rows(state: FockState) -> list[tuple[Occupation, float, float]]:
    """Serialize as (occupation, real, imag) rows in lexicographic order."""
    return [
        (occ, amp.real, amp.imag) for occ, amp in sorted(state.terms.items())
    ]
