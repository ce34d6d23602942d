"""Optical elements and heralded detection acting on sparse Fock states.

Beam-splitter convention: U(theta) = exp[i*theta*(a_i^dag a_j + a_i a_j^dag)],
so transmitted amplitudes scale by cos(theta) and reflected amplitudes pick up
a factor i*sin(theta). Every sign elsewhere in the package is validated against
this single convention; there are no per-element sign flags.

Detectors are ideal and photon-number resolving: a detection projects onto an
exact photon count and removes the measured mode (destructive detection).
"""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .fock import FockState, norm_sq
from .fock import tensor as _tensor
from .fock import make_fock as _make_fock


@dataclass(frozen=True)
class BeamSplitter:
    """Two-mode splitter with transmissivity cos^2(theta)."""

    mode_i: int
    mode_j: int
    theta: float


@dataclass(frozen=True)
class PhaseShifter:
    """Single-mode phase: each term gains exp(i*phi*n_mode)."""

    mode: int
    phi: float


@dataclass(frozen=True)
class CrossKerr:
    """Diagonal two-mode nonlinearity: each term gains exp(i*chi*n_i*n_j)."""

    mode_i: int
    mode_j: int
    chi: float


@dataclass(frozen=True)
class PolarizingBS:
    """Polarizing splitter over two (H, V) submode pairs.

    H submodes pass straight through. The V submodes of the two paths are
    exchanged, and each reflected V photon picks up the same factor i as a
    fully reflecting beam splitter.
    """

    path_i: tuple[int, int]
    path_j: tuple[int, int]


Element = BeamSplitter | PhaseShifter | CrossKerr | PolarizingBS


@dataclass(frozen=True)
class HeraldedOutcome:
    """Unnormalized post-measurement state plus its relative herald probability.

    ``herald_probability`` is the squared norm of the surviving state divided
    by the squared norm of the pre-measurement state, i.e. the probability of
    the detection pattern for a unit-norm input.
    """

    state: FockState
    herald_probability: float


_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


@lru_cache(maxsize=None)
def bs_matrix_element(m: int, n: int, p: int, q: int, theta: float) -> complex:
    """Photon-number matrix element <p,q|U(theta)|m,n> of a beam splitter.

    Obtained by binomially expanding
    (cos(theta) a^dag + i sin(theta) b^dag)^m (cos(theta) b^dag + i sin(theta) a^dag)^n
    and reading off the a^dag^p b^dag^q monomial. Zero whenever p+q != m+n.
    """
    if min(m, n, p, q) < 0:
        raise ValueError("photon numbers must be non-negative")
    if p + q != m + n:
        return 0j
    c = math.cos(theta)
    s = math.sin(theta)
    acc = 0j
    for j in range(max(0, p - n), min(m, p) + 1):
        low = j + n - p
        acc += (
            comb(m, j)
            * comb(n, low)
            * c ** (2 * j + n - p)
            * (1j * s) ** (m + p - 2 * j)
        )
    scale = math.sqrt(factorial(p) * factorial(q) / (factorial(m) * factorial(n)))
    return acc * scale


def _check_mode(state: FockState, mode: int) -> None:
    if not 0 <= mode < state.mode_count:
        raise ValueError(
            f"mode index {mode} out of range for {state.mode_count} modes"
        )


def _apply_beam_splitter(state: FockState, e: BeamSplitter) -> FockState:
    _check_mode(state, e.mode_i)
    _check_mode(state, e.mode_j)
    if e.mode_i == e.mode_j:
        raise ValueError("beam splitter modes must be distinct")
    out: dict[tuple[int, ...], complex] = defaultdict(complex)
    for occ, amp in state.terms.items():
        m, n = occ[e.mode_i], occ[e.mode_j]
        total = m + n
        if total == 0:
            out[occ] += amp
            continue
        scattered = list(occ)
        for p in range(total + 1):
            coef = bs_matrix_element(m, n, p, total - p, e.theta)
            if coef:
                scattered[e.mode_i] = p
                scattered[e.mode_j] = total - p
                out[tuple(scattered)] += amp * coef
    return FockState(state.mode_count, out, normalized=state.normalized)


def _apply_phase_shifter(state: FockState, e: PhaseShifter) -> FockState:
    _check_mode(state, e.mode)
    terms = {
        occ: amp * cmath.exp(1j * e.phi * occ[e.mode])
        for occ, amp in state.terms.items()
    }
    return FockState(state.mode_count, terms, normalized=state.normalized)


def _apply_cross_kerr(state: FockState, e: CrossKerr) -> FockState:
    _check_mode(state, e.mode_i)
    _check_mode(state, e.mode_j)
    if e.mode_i == e.mode_j:
        raise ValueError("cross-Kerr modes must be distinct")
    terms = {
        occ: amp * cmath.exp(1j * e.chi * occ[e.mode_i] * occ[e.mode_j])
        for occ, amp in state.terms.items()
    }
    return FockState(state.mode_count, terms, normalized=state.normalized)


def _apply_polarizing_bs(state: FockState, e: PolarizingBS) -> FockState:
    indices = (*e.path_i, *e.path_j)
    if len(set(indices)) != 4:
        raise ValueError("polarizing splitter needs four distinct submodes")
    for mode in indices:
        _check_mode(state, mode)
    i_v, j_v = e.path_i[1], e.path_j[1]
    terms = {}
    for occ, amp in state.terms.items():
        reflected = occ[i_v] + occ[j_v]
        swapped = list(occ)
        swapped[i_v], swapped[j_v] = occ[j_v], occ[i_v]
        terms[tuple(swapped)] = amp * _I_POW[reflected % 4]
    return FockState(state.mode_count, terms, normalized=state.normalized)


def apply_element(state: FockState, element: Element) -> FockState:
    """Apply one optical element exactly, returning a new state."""
    if isinstance(element, BeamSplitter):
        return _apply_beam_splitter(state, element)
    if isinstance(element, PhaseShifter):
        return _apply_phase_shifter(state, element)
    if isinstance(element, CrossKerr):
        return _apply_cross_kerr(state, element)
    if isinstance(element, PolarizingBS):
        return _apply_polarizing_bs(state, element)
    raise TypeError(f"unknown element {element!r}")


def project_photons(state: FockState, mode: int, k: int) -> HeraldedOutcome:
    """Detect exactly ``k`` photons in ``mode`` and remove that mode.

    Surviving amplitudes are left untouched, so the outcome state stays
    relative to whatever reference the input carried. An empty outcome is a
    valid zero state with herald probability 0.
    """
    _check_mode(state, mode)
    if k < 0:
        raise ValueError("photon count must be non-negative")
    if state.mode_count == 1:
        raise ValueError("cannot remove the only remaining mode")
    before = norm_sq(state)
    kept = {
        occ[:mode] + occ[mode + 1 :]: amp
        for occ, amp in state.terms.items()
        if occ[mode] == k
    }
    outcome = FockState(state.mode_count - 1, kept, normalized=False)
    probability = norm_sq(outcome) / before if before > 0.0 else 0.0
    return HeraldedOutcome(outcome, probability)


def apply_fsf(state: FockState, mode: int, k_filter: int) -> HeraldedOutcome:
    """Fock state filter: remove the |k_filter> component from ``mode``.

    Composite of a fresh single-photon ancilla, a beam splitter with
    transmissivity k/(k+1) (theta = arctan(1/sqrt(k))), and a heralding
    single-photon detection on the ancilla. Surviving amplitudes follow
    C_n -> C_n * cos^(n+1)(theta) * (1 - n*tan^2(theta)), which vanishes
    exactly at n = k_filter.
    """
    _check_mode(state, mode)
    if k_filter < 1:
        raise ValueError(f"filter order must be at least 1, got {k_filter}")
    theta = math.atan(1.0 / math.sqrt(k_filter))
    ancilla = state.mode_count
    mixed = apply_element(
        _tensor(state, _make_fock(1, (1,))),
        BeamSplitter(mode, ancilla, theta),
    )
    return project_photons(mixed, ancilla, 1)


def two_photon_herald(
    state: FockState, tap_b: int, tap_c: int, psi_k: float
) -> HeraldedOutcome:
    """Two-fold single-photon coincidence on the taps of a sub-block.

    Circuit route: phase psi_k on ``tap_c``, a 50:50 recombining splitter on
    the taps, then single-photon detections on both. Equals, up to one global
    constant, the direct projector (i/sqrt(2)) (<2,0| + e^(2i psi_k) <0,2|) on
    the taps (see :func:`two_photon_projector`).
    """
    _check_mode(state, tap_b)
    _check_mode(state, tap_c)
    if tap_b == tap_c:
        raise ValueError("tap modes must be distinct")
    before = norm_sq(state)
    work = apply_element(state, PhaseShifter(tap_c, psi_k))
    work = apply_element(work, BeamSplitter(tap_b, tap_c, math.pi / 4))
    # Project the higher tap first so the lower index stays valid.
    hi, lo = (tap_b, tap_c) if tap_b > tap_c else (tap_c, tap_b)
    work = project_photons(work, hi, 1).state
    work = project_photons(work, lo, 1).state
    probability = norm_sq(work) / before if before > 0.0 else 0.0
    return HeraldedOutcome(work, probability)


def two_photon_projector(
    state: FockState, tap_b: int, tap_c: int, psi_k: float
) -> HeraldedOutcome:
    """Projector route for :func:`two_photon_herald`.

    Applies (i/sqrt(2)) (<2,0| + e^(2i psi_k) <0,2|) directly on the taps and
    removes them.
    """
    _check_mode(state, tap_b)
    _check_mode(state, tap_c)
    if tap_b == tap_c:
        raise ValueError("tap modes must be distinct")
    before = norm_sq(state)
    prefactor = 1j / math.sqrt(2.0)
    phased = prefactor * cmath.exp(2j * psi_k)
    hi, lo = (tap_b, tap_c) if tap_b > tap_c else (tap_c, tap_b)
    out: dict[tuple[int, ...], complex] = defaultdict(complex)
    for occ, amp in state.terms.items():
        taps = (occ[tap_b], occ[tap_c])
        if taps == (2, 0):
            coef = prefactor
        elif taps == (0, 2):
            coef = phased
        else:
            continue
        rest = occ[:lo] + occ[lo + 1 : hi] + occ[hi + 1 :]
        out[rest] += coef * amp
    outcome = FockState(state.mode_count - 2, out, normalized=False)
    probability = norm_sq(outcome) / before if before > 0.0 else 0.0
    return HeraldedOutcome(outcome, probability)
