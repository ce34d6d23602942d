"""End-to-end generation pipelines for d-mode N-photon NOON states.

Four schemes are simulated exactly on the sparse Fock representation:

1. d coherent inputs pass through floor(N/2) Fock-state-filter blocks and the
   N-photon sector is postselected at the end.
2. an evenly split N-photon input passes through the same filter blocks; no
   postselection is needed because the photon number is fixed.
3. a cascade of d-1 entanglement generators built from two-photon
   interference, fed by N-photon inputs (a polarization doubling of every
   path handles odd N).
4. a cascade of d-1 cross-Kerr interferometer generators, each heralded on a
   single-photon detection.

All amplitudes stay relative to the original input, so generation
probabilities are squared norms of the extracted NOON components. Methods 3
and 4 require d to be a power of two; the cascade is a balanced binary tree
(each occupied-or-superposed mode is paired with a fresh mode level by level),
which is what makes the final component amplitudes equal.
"""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass

from .elements import (
    BeamSplitter,
    CrossKerr,
    HeraldedOutcome,
    PhaseShifter,
    PolarizingBS,
    apply_element,
    apply_fsf,
    project_photons,
    two_photon_herald,
)
from .fock import (
    FockState,
    amplitude,
    make_coherent_truncated,
    make_fock,
    norm_sq,
    restrict_total_photons,
    tensor,
)


@dataclass(frozen=True)
class MethodConfig:
    """Configuration for one generation run.

    ``alpha`` is the coherent amplitude used by method 1 only; when omitted it
    defaults to the optimal value sqrt(N/d). ``per_mode_cutoff`` (method 1
    only) defaults to N, which is exact for the postselected N-photon sector:
    filtration never raises a mode's occupation, so terms above N per mode
    cannot contribute to a total of N.
    """

    method: int
    d: int
    N: int
    alpha: complex | None = None
    per_mode_cutoff: int | None = None
    tolerance: float = 1e-10

    def __post_init__(self) -> None:
        if self.method not in (1, 2, 3, 4):
            raise ValueError(f"method must be 1, 2, 3 or 4, got {self.method}")
        if self.d < 2:
            raise ValueError(f"d must be at least 2, got {self.d}")
        if self.N < 1:
            raise ValueError(f"N must be at least 1, got {self.N}")
        if self.method in (3, 4) and self.d & (self.d - 1):
            raise ValueError("d must be a power of two for methods 3 and 4")
        if self.per_mode_cutoff is not None and self.per_mode_cutoff < 0:
            raise ValueError("per_mode_cutoff must be non-negative")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class NoonReport:
    """Extracted NOON content of a final pipeline state.

    ``component_amplitudes[j]`` is the amplitude of the basis state with all N
    photons in mode j, relative to the pipeline input. ``sign_pattern`` holds
    the component phases after factoring out the phase of the first nonzero
    component (entries are 0 for components below tolerance).
    ``residual_norm`` is the squared norm of everything else left in the state.
    """

    d: int
    N: int
    component_amplitudes: tuple[complex, ...]
    generation_probability: float
    sign_pattern: tuple[complex, ...]
    balanced: bool
    residual_norm: float

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "N": self.N,
            "component_amplitudes": [
                [c.real, c.imag] for c in self.component_amplitudes
            ],
            "generation_probability": self.generation_probability,
            "sign_pattern": [[s.real, s.imag] for s in self.sign_pattern],
            "balanced": self.balanced,
            "residual_norm": self.residual_norm,
        }


def extract_noon(state: FockState, n_photons: int, tolerance: float = 1e-10) -> NoonReport:
    """Read the d NOON component amplitudes out of a final state."""
    d = state.mode_count
    components = []
    for j in range(d):
        occ = tuple(n_photons if i == j else 0 for i in range(d))
        components.append(amplitude(state, occ))
    probability = sum(abs(c) ** 2 for c in components)
    residual = max(0.0, norm_sq(state) - probability)
    magnitudes = [abs(c) for c in components]
    balanced = max(magnitudes) - min(magnitudes) <= tolerance
    reference = next((c for c in components if abs(c) > tolerance), None)
    if reference is None:
        signs = tuple(1 + 0j for _ in components)
    else:
        ref_phase = reference / abs(reference)
        signs = tuple(
            (c / abs(c)) / ref_phase if abs(c) > tolerance else 0j
            for c in components
        )
    return NoonReport(
        d=d,
        N=n_photons,
        component_amplitudes=tuple(components),
        generation_probability=probability,
        sign_pattern=signs,
        balanced=balanced,
        residual_norm=residual,
    )


def split_evenly(n_photons: int, d: int) -> FockState:
    """Split |N> evenly over d modes.

    Chain of d-1 beam splitters, the j-th (1-based) with transmissivity
    1/(d+1-j), followed by per-mode phase shifters exp[-i*(pi/2)*(j-1)*n_j]
    that cancel the reflection phases. The result carries amplitude
    sqrt(N!/(n_1!...n_d!)) / d^(N/2) on every occupation summing to N.
    """
    if n_photons < 1:
        raise ValueError(f"photon number must be at least 1, got {n_photons}")
    if d < 2:
        raise ValueError(f"mode count must be at least 2, got {d}")
    state = make_fock(d, (n_photons,) + (0,) * (d - 1))
    for j in range(1, d):
        transmissivity = 1.0 / (d + 1 - j)
        theta = math.acos(math.sqrt(transmissivity))
        state = apply_element(state, BeamSplitter(j - 1, j, theta))
    for mode in range(1, d):
        state = apply_element(state, PhaseShifter(mode, -0.5 * math.pi * mode))
    return state


def _zero_report(d: int, n_photons: int, tolerance: float) -> NoonReport:
    return extract_noon(FockState(d, {}), n_photons, tolerance)


def run_method1(cfg: MethodConfig) -> NoonReport:
    """Coherent inputs, Fock-state filtration, and N-photon postselection.

    Each of the d modes starts in a truncated coherent state. Block k applies
    a k-filter to every mode (a d-fold single-photon coincidence); after
    floor(N/2) blocks every surviving per-mode occupation lies in
    {0, M+1, M+2, ...}, so the postselected N-photon sector contains only the
    NOON components.
    """
    if cfg.method != 1:
        raise ValueError("run_method1 requires method=1")
    alpha = cfg.alpha if cfg.alpha is not None else math.sqrt(cfg.N / cfg.d)
    cutoff = cfg.per_mode_cutoff if cfg.per_mode_cutoff is not None else cfg.N
    single = make_coherent_truncated(alpha, cutoff)
    state = single
    for _ in range(cfg.d - 1):
        state = tensor(state, single)
    for k in range(1, cfg.N // 2 + 1):
        for mode in range(cfg.d):
            state = apply_fsf(state, mode, k).state
            if not state:
                return _zero_report(cfg.d, cfg.N, cfg.tolerance)
    sector = restrict_total_photons(state, cfg.N)
    return extract_noon(sector, cfg.N, cfg.tolerance)


def run_method2(cfg: MethodConfig) -> NoonReport:
    """Evenly split N-photon input through the same filtration blocks.

    Block k annihilates every component with k or N-k photons in any mode, so
    after floor(N/2) blocks only the NOON components survive; no final
    postselection is needed.
    """
    if cfg.method != 2:
        raise ValueError("run_method2 requires method=2")
    state = split_evenly(cfg.N, cfg.d)
    for k in range(1, cfg.N // 2 + 1):
        for mode in range(cfg.d):
            state = apply_fsf(state, mode, k).state
            if not state:
                return _zero_report(cfg.d, cfg.N, cfg.tolerance)
    return extract_noon(state, cfg.N, cfg.tolerance)


def generator_even(state: FockState, path_a: int, n_photons: int) -> HeraldedOutcome:
    """Entanglement generator for even N: reduce two photons per sub-block.

    Appends a fresh mode holding |N> and runs N/2 sub-blocks. Sub-block k taps
    both modes with splitters of transmissivity (N-k)/(N-k+1) and heralds a
    two-fold coincidence behind a 50:50 recombiner with tap phase 2*pi*k/N.
    On a pure |N> input the output is an equal-magnitude two-mode NOON state;
    on a vacuum input the internal |N> is fully consumed and the generator
    reduces to a scalar factor.

    The fresh mode receives the next unused index; taps are created and
    removed inside each sub-block.
    """
    if n_photons < 2 or n_photons % 2:
        raise ValueError(
            f"even-N generator requires even N >= 2, got {n_photons}"
        )
    before = norm_sq(state)
    internal = state.mode_count
    work = tensor(state, make_fock(1, (n_photons,)))
    for k in range(1, n_photons // 2 + 1):
        theta = math.acos(math.sqrt((n_photons - k) / (n_photons - k + 1)))
        psi = 2.0 * math.pi * k / n_photons
        tap_b = work.mode_count
        tap_c = tap_b + 1
        work = tensor(work, make_fock(2, (0, 0)))
        work = apply_element(work, BeamSplitter(path_a, tap_b, theta))
        work = apply_element(work, BeamSplitter(tap_c, internal, theta))
        work = two_photon_herald(work, tap_b, tap_c, psi).state
        if not work:
            return HeraldedOutcome(FockState(internal + 1, {}), 0.0)
    probability = norm_sq(work) / before if before > 0.0 else 0.0
    return HeraldedOutcome(work, probability)


def _erased_single_photon_herald(
    state: FockState,
    watched: tuple[int, int],
    unwatched: tuple[int, int],
    v_weight: complex,
) -> FockState:
    """Polarization-erasing single-photon detection on a (H, V) port pair.

    Keeps the terms with exactly one photon at the watched port (either
    polarization, summed coherently; the V click carries the extra weight
    ``v_weight``) and none at the unwatched port, then deletes all four
    submodes.
    """
    watched_h, watched_v = watched
    other_h, other_v = unwatched
    drop = sorted((watched_h, watched_v, other_h, other_v), reverse=True)
    out: dict[tuple[int, ...], complex] = defaultdict(complex)
    for occ, amp in state.terms.items():
        if occ[other_h] or occ[other_v]:
            continue
        clicks = (occ[watched_h], occ[watched_v])
        if clicks == (1, 0):
            coef = 1.0 + 0j
        elif clicks == (0, 1):
            coef = v_weight
        else:
            continue
        rest = list(occ)
        for index in drop:
            del rest[index]
        out[tuple(rest)] += coef * amp
    return FockState(state.mode_count - 4, out, normalized=False)


def _swap_modes(state: FockState, mode_i: int, mode_j: int) -> FockState:
    terms = {}
    for occ, amp in state.terms.items():
        swapped = list(occ)
        swapped[mode_i], swapped[mode_j] = occ[mode_j], occ[mode_i]
        terms[tuple(swapped)] = amp
    return FockState(state.mode_count, terms, normalized=state.normalized)


def generator_odd(state: FockState, path_a: int, n_photons: int) -> HeraldedOutcome:
    """Entanglement generator for odd N using polarization doubling.

    Every path is a consecutive (H, V) submode pair; ``path_a`` is a path
    index. The incoming content must be H-polarized; the generator appends a
    fresh path whose internal |N> input is V-polarized and runs N sub-blocks,
    each reducing one photon: taps with transmissivity (2N-k)/(2N-k+1), tap
    phase 2*pi*k/N, a polarizing splitter merging the taps, and a
    polarization-erasing single-photon detection on the port that can receive
    both tap routes.

    The detection basis carries a fixed relative phase pi/(2N) on the V click;
    together with the i-reflection convention of the polarizing splitter this
    pins the relative sign of the two output components to +1 for
    N = 3 (mod 4) and -1 for N = 1 (mod 4). After the sub-blocks the fresh
    path's polarization is relabelled V -> H (an ideal half-wave plate) so
    cascaded generators always see H-polarized content.
    """
    if n_photons < 1 or n_photons % 2 == 0:
        raise ValueError(f"odd-N generator requires odd N >= 1, got {n_photons}")
    if state.mode_count % 2:
        raise ValueError("polarized states need an even number of submodes")
    path_h, path_v = 2 * path_a, 2 * path_a + 1
    if path_v >= state.mode_count:
        raise ValueError(f"path index {path_a} out of range")
    before = norm_sq(state)
    internal_h = state.mode_count
    internal_v = internal_h + 1
    work = tensor(state, make_fock(2, (0, n_photons)))
    v_click_weight = cmath.exp(0.5j * math.pi / n_photons)
    for k in range(1, n_photons + 1):
        theta = math.acos(
            math.sqrt((2 * n_photons - k) / (2 * n_photons - k + 1))
        )
        psi = 2.0 * math.pi * k / n_photons
        tap = work.mode_count
        b_h, b_v, c_h, c_v = tap, tap + 1, tap + 2, tap + 3
        work = tensor(work, make_fock(4, (0, 0, 0, 0)))
        work = apply_element(work, BeamSplitter(path_h, b_h, theta))
        work = apply_element(work, BeamSplitter(path_v, b_v, theta))
        work = apply_element(work, BeamSplitter(c_h, internal_h, theta))
        work = apply_element(work, BeamSplitter(c_v, internal_v, theta))
        work = apply_element(work, PhaseShifter(c_h, psi))
        work = apply_element(work, PhaseShifter(c_v, psi))
        work = apply_element(work, PolarizingBS((b_h, b_v), (c_h, c_v)))
        work = _erased_single_photon_herald(
            work, (b_h, b_v), (c_h, c_v), v_click_weight
        )
        if not work:
            return HeraldedOutcome(FockState(internal_v + 1, {}), 0.0)
    work = _swap_modes(work, internal_h, internal_v)
    probability = norm_sq(work) / before if before > 0.0 else 0.0
    return HeraldedOutcome(work, probability)


def generator_kerr(state: FockState, path_a: int) -> HeraldedOutcome:
    """Cross-Kerr entanglement generator heralded on one single photon.

    Appends a fresh partner mode (vacuum), a single-photon mode and a fourth
    interferometer arm. A chi = pi cross-Kerr medium sits between two nested
    50:50 interferometers (the outer pair on the single-photon arms, the inner
    pair on the Fock arms, the second of each reversed). A -pi/2 per-photon
    phase on the partner mode aligns the two output components, so a pure |N>
    input yields (|N,0> + |0,N>)/2 and a vacuum input passes through with
    amplitude 1 while the photon still exits at the heralding detector.
    """
    before = norm_sq(state)
    partner = state.mode_count
    herald_mode = partner + 1
    kerr_arm = partner + 2
    quarter = math.pi / 4
    work = tensor(state, make_fock(3, (0, 1, 0)))
    work = apply_element(work, BeamSplitter(herald_mode, kerr_arm, quarter))
    work = apply_element(work, BeamSplitter(path_a, partner, quarter))
    work = apply_element(work, CrossKerr(path_a, kerr_arm, math.pi))
    work = apply_element(work, BeamSplitter(path_a, partner, -quarter))
    work = apply_element(work, BeamSplitter(herald_mode, kerr_arm, -quarter))
    work = apply_element(work, PhaseShifter(partner, -0.5 * math.pi))
    work = project_photons(work, kerr_arm, 0).state
    work = project_photons(work, herald_mode, 1).state
    probability = norm_sq(work) / before if before > 0.0 else 0.0
    return HeraldedOutcome(work, probability)


def _cascade_levels(d: int) -> int:
    return d.bit_length() - 1


def collapse_polarization(state: FockState) -> FockState:
    """Merge each (H, V) submode pair into one path occupation."""
    if state.mode_count % 2:
        raise ValueError("polarized states need an even number of submodes")
    paths = state.mode_count // 2
    out: dict[tuple[int, ...], complex] = defaultdict(complex)
    for occ, amp in state.terms.items():
        collapsed = tuple(occ[2 * i] + occ[2 * i + 1] for i in range(paths))
        out[collapsed] += amp
    return FockState(paths, out, normalized=state.normalized)


def run_method3(cfg: MethodConfig) -> NoonReport:
    """Cascade of d-1 two-photon-interference entanglement generators.

    Generators are arranged as a balanced binary tree: level by level, every
    live mode is paired with a fresh mode (for d=4 the pairings are (1,2),
    then (2,3) and (1,4)). Even and odd N dispatch to the matching generator;
    odd N runs on polarization-doubled paths which are summed for the final
    readout.
    """
    if cfg.method != 3:
        raise ValueError("run_method3 requires method=3")
    even = cfg.N % 2 == 0
    state = make_fock(1, (cfg.N,)) if even else make_fock(2, (cfg.N, 0))
    live = [0]
    for _ in range(_cascade_levels(cfg.d)):
        for path in reversed(live.copy()):
            fresh = state.mode_count if even else state.mode_count // 2
            if even:
                outcome = generator_even(state, path, cfg.N)
            else:
                outcome = generator_odd(state, path, cfg.N)
            state = outcome.state
            live.append(fresh)
            if not state:
                return _zero_report(cfg.d, cfg.N, cfg.tolerance)
    if not even:
        state = collapse_polarization(state)
    return extract_noon(state, cfg.N, cfg.tolerance)


def run_method4(cfg: MethodConfig) -> NoonReport:
    """Cascade of d-1 cross-Kerr generators in the same balanced tree."""
    if cfg.method != 4:
        raise ValueError("run_method4 requires method=4")
    state = make_fock(1, (cfg.N,))
    live = [0]
    for _ in range(_cascade_levels(cfg.d)):
        for path in reversed(live.copy()):
            fresh = state.mode_count
            state = generator_kerr(state, path).state
            live.append(fresh)
            if not state:
                return _zero_report(cfg.d, cfg.N, cfg.tolerance)
    return extract_noon(state, cfg.N, cfg.tolerance)


_RUNNERS = {1: run_method1, 2: run_method2, 3: run_method3, 4: run_method4}


def run_method(cfg: MethodConfig) -> NoonReport:
    """Dispatch to the configured generation pipeline."""
    return _RUNNERS[cfg.method](cfg)
