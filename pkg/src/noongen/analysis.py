"""Closed-form analysis of the four generation schemes.

Generation probabilities and component magnitudes are evaluated in log space
(via lgamma) so that sweeps far beyond the simulable range do not overflow;
method 4 is returned exactly as 1/d. The sweep tables pair every closed form
with a direct simulation wherever the grid point is cheap enough to simulate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from math import lgamma, log

from . import pipelines

METHODS = (1, 2, 3, 4)

# Ceilings for the simulation columns of sweeps and verification grids; the
# closed-form columns have no such limit.
SIM_MAX_D = 4
SIM_MAX_N = 6

SWEEP_CSV_HEADER = "method,d,N,alpha_sq,p_closed,p_sim,rel_err"


@dataclass(frozen=True)
class ResourceCount:
    """Hardware tallies for one (method, d, N) configuration.

    ``odd_n_variant`` marks the odd-N flavor of method 3, which doubles the
    splitter and phase-shifter counts relative to the even-N flavor.
    """

    beam_splitters: int
    phase_shifters: int
    spcd_detectors: int
    fock_inputs: int
    single_photon_inputs: int
    odd_n_variant: bool = False


@dataclass(frozen=True)
class LossModel:
    """Scalar component inefficiencies: detectors and single-photon sources."""

    eta_detector: float
    eta_single_photon: float

    def __post_init__(self) -> None:
        for name, value in (
            ("eta_detector", self.eta_detector),
            ("eta_single_photon", self.eta_single_photon),
        ):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _check_method(method: int) -> None:
    if method not in METHODS:
        raise ValueError(f"method must be 1, 2, 3 or 4, got {method}")


def _check_d_n(method: int, d: int, n_photons: int) -> None:
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if n_photons < 1:
        raise ValueError(f"N must be at least 1, got {n_photons}")
    if method in (3, 4) and d & (d - 1):
        raise ValueError("d must be a power of two for methods 3 and 4")


def optimal_alpha_sq(d: int, n_photons: int) -> float:
    """Coherent intensity N/d that maximizes the method-1 probability.

    At this value the mean total photon number of the d coherent inputs
    equals N.
    """
    if d < 1 or n_photons < 1:
        raise ValueError("d and N must be at least 1")
    return n_photons / d


def closed_form_probability(
    method: int, d: int, n_photons: int, alpha_sq: float | None = None
) -> float:
    """Generation probability of a d-mode N-photon NOON state.

    ``alpha_sq`` applies to method 1 only; omitted, the optimal value N/d is
    used. Factorials are evaluated through lgamma, so large-N sweeps stay
    finite.
    """
    _check_method(method)
    _check_d_n(method, d, n_photons)
    n = n_photons
    m = n // 2
    if method == 1:
        if alpha_sq is None:
            alpha_sq = optimal_alpha_sq(d, n)
        if alpha_sq < 0.0:
            raise ValueError(f"alpha_sq must be non-negative, got {alpha_sq}")
        if alpha_sq == 0.0:
            return 0.0
        log_p = (
            log(d)
            - d * alpha_sq
            + n * log(alpha_sq)
            + lgamma(n)
            - (n + d) * log(m + 1)
            - log(n)
            - 2.0 * lgamma(n - m)
            - 2.0 * lgamma(m + 1)
        )
        return math.exp(log_p)
    if method == 2:
        log_p = (
            2.0 * lgamma(n)
            - (n - 1) * log(d)
            - (n + d) * log(m + 1)
            - 2.0 * lgamma(n - m)
            - 2.0 * lgamma(m + 1)
        )
        return math.exp(log_p)
    if method == 3:
        log_p = -(n - 1) * log(d) + (d - 1) * (
            lgamma(n + 1) - n * log(2.0) - n * log(n)
        )
        return math.exp(log_p)
    return 1.0 / d


def generator_magnitudes(n_photons: int) -> tuple[float, float]:
    """Magnitudes of the method-3 generator coefficients.

    Returns (|splitting coefficient|, |pass-through coefficient|): the factor
    attached to each branch when the generator splits an |N> input into a
    two-mode NOON pair, and the factor when a vacuum input consumes the
    internal |N>. Identical for the even- and odd-N generator flavors.
    """
    if n_photons < 1:
        raise ValueError(f"N must be at least 1, got {n_photons}")
    n = n_photons
    half_log_fact = 0.5 * lgamma(n + 1)
    split = math.exp(half_log_fact - n * log(2.0) - 0.5 * n * log(n))
    passthrough = math.exp(half_log_fact - 0.5 * n * log(2.0) - 0.5 * n * log(n))
    return split, passthrough


def closed_form_component_magnitude(
    method: int, d: int, n_photons: int, alpha_sq: float | None = None
) -> float:
    """Magnitude of each NOON component amplitude, from its own closed form.

    Evaluated independently of :func:`closed_form_probability`; the two are
    tied by probability = d * magnitude**2.
    """
    _check_method(method)
    _check_d_n(method, d, n_photons)
    n = n_photons
    m = n // 2
    if method == 1:
        if alpha_sq is None:
            alpha_sq = optimal_alpha_sq(d, n)
        if alpha_sq < 0.0:
            raise ValueError(f"alpha_sq must be non-negative, got {alpha_sq}")
        if alpha_sq == 0.0:
            return 0.0
        log_c = (
            -0.5 * d * alpha_sq
            + 0.5 * n * log(alpha_sq)
            + lgamma(n)
            - 0.5 * (n + d) * log(m + 1)
            - 0.5 * lgamma(n + 1)
            - lgamma(n - m)
            - lgamma(m + 1)
        )
        return math.exp(log_c)
    if method == 2:
        log_c = (
            lgamma(n)
            - 0.5 * n * log(d)
            - 0.5 * (n + d) * log(m + 1)
            - lgamma(n - m)
            - lgamma(m + 1)
        )
        return math.exp(log_c)
    if method == 3:
        split, passthrough = generator_magnitudes(n)
        levels = d.bit_length() - 1
        return split**levels * passthrough ** (d - 1 - levels)
    return 1.0 / d


def asymptotic_ratio(n_photons: int) -> float:
    """Probability ratio of method 2 over optimal method 1: (N-1)! e^N / N^(N-1).

    Approaches sqrt(2*pi*N) from above as N grows.
    """
    if n_photons < 2:
        raise ValueError(f"N must be at least 2, got {n_photons}")
    n = n_photons
    return math.exp(lgamma(n) + n - (n - 1) * log(n))


def resource_counts(method: int, d: int, n_photons: int) -> ResourceCount:
    """Component tallies for one configuration."""
    _check_method(method)
    _check_d_n(method, d, n_photons)
    m = n_photons // 2
    if method == 1:
        return ResourceCount(d * m, 0, d * m, 0, d * m)
    if method == 2:
        return ResourceCount(d * m + d - 1, d, d * m, 1, d * m)
    if method == 3:
        blocks = d - 1
        if n_photons % 2 == 0:
            return ResourceCount(
                3 * n_photons * blocks // 2,
                n_photons * blocks // 2,
                n_photons * blocks,
                d,
                0,
            )
        return ResourceCount(
            3 * n_photons * blocks,
            n_photons * blocks,
            n_photons * blocks,
            d,
            0,
            odd_n_variant=True,
        )
    return ResourceCount(4 * (d - 1), d - 1, d - 1, 1, d - 1)


def loss_adjusted_probability(
    probability: float, counts: ResourceCount, losses: LossModel
) -> float:
    """Scale an ideal probability by detector and single-photon efficiencies."""
    if not 0.0 <= probability <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {probability}")
    return (
        probability
        * losses.eta_detector**counts.spcd_detectors
        * losses.eta_single_photon**counts.single_photon_inputs
    )


def simulated_probability(
    method: int, d: int, n_photons: int, alpha_sq: float | None = None
) -> float:
    """Generation probability from a full circuit simulation."""
    alpha = None if alpha_sq is None else math.sqrt(alpha_sq)
    cfg = pipelines.MethodConfig(method=method, d=d, N=n_photons, alpha=alpha)
    return pipelines.run_method(cfg).generation_probability


@dataclass(frozen=True)
class SweepSpec:
    """One sweep request: vary d at fixed N, or vary N at fixed d.

    ``alpha_sq`` fixes the method-1 intensity; None means the optimal N/d at
    every grid point. Simulation columns are filled only within the
    (SIM_MAX_D, SIM_MAX_N) ceilings and only when ``simulate`` is set.
    """

    methods: tuple[int, ...]
    vary: str
    fixed: int
    values: tuple[int, ...]
    alpha_sq: float | None = None
    simulate: bool = True

    def __post_init__(self) -> None:
        if self.vary not in ("d", "N"):
            raise ValueError(f"vary must be 'd' or 'N', got {self.vary!r}")
        if not self.methods:
            raise ValueError("at least one method is required")
        for method in self.methods:
            _check_method(method)
        if not self.values:
            raise ValueError("sweep values must be non-empty")
        minimum = 2 if self.vary == "d" else 1
        if min(self.values) < minimum:
            raise ValueError(
                f"swept {self.vary} values must be at least {minimum}"
            )
        if self.fixed < (1 if self.vary == "d" else 2):
            raise ValueError(f"fixed value {self.fixed} out of range")
        if self.alpha_sq is not None and self.alpha_sq < 0.0:
            raise ValueError("alpha_sq must be non-negative")


@dataclass(frozen=True)
class SweepRow:
    method: int
    d: int
    N: int
    alpha_sq: float | None
    p_closed: float
    p_sim: float | None
    rel_err: float | None


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate a sweep in deterministic (method, d, N) order.

    Methods 3 and 4 emit only power-of-two d points; other grid points are
    skipped rather than reported as errors, mirroring how the comparison plots
    are drawn.
    """
    rows: list[SweepRow] = []
    for method in sorted(set(spec.methods)):
        for value in sorted(set(spec.values)):
            d, n = (value, spec.fixed) if spec.vary == "d" else (spec.fixed, value)
            if method in (3, 4) and d & (d - 1):
                continue
            alpha_sq = None
            if method == 1:
                alpha_sq = (
                    spec.alpha_sq if spec.alpha_sq is not None else n / d
                )
            p_closed = closed_form_probability(method, d, n, alpha_sq)
            p_sim = rel_err = None
            if spec.simulate and d <= SIM_MAX_D and n <= SIM_MAX_N:
                p_sim = simulated_probability(method, d, n, alpha_sq)
                if p_closed > 0.0:
                    rel_err = abs(p_sim - p_closed) / p_closed
                else:
                    rel_err = abs(p_sim)
            rows.append(
                SweepRow(method, d, n, alpha_sq, p_closed, p_sim, rel_err)
            )
    return rows


def format_float(value: float) -> str:
    """Deterministic 12-significant-digit rendering, scientific below 1e-4."""
    if value != value:
        return "nan"
    if value == 0.0:
        return "0"
    if abs(value) < 1e-4:
        return f"{value:.11e}"
    return f"{value:.12g}"


def _csv_cell(value: float | None) -> str:
    return "" if value is None else format_float(value)


def sweep_to_csv(rows: list[SweepRow]) -> str:
    """Render sweep rows as CSV (empty cells where simulation was skipped)."""
    lines = [SWEEP_CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                (
                    f"M{row.method}",
                    str(row.d),
                    str(row.N),
                    _csv_cell(row.alpha_sq),
                    format_float(row.p_closed),
                    _csv_cell(row.p_sim),
                    _csv_cell(row.rel_err),
                )
            )
        )
    return "\n".join(lines) + "\n"


def json_float(value: float) -> float:
    """Round to 12 significant digits for stable JSON output."""
    return float(f"{value:.12g}")


def sweep_rows_to_dicts(rows: list[SweepRow]) -> list[dict]:
    out = []
    for row in rows:
        out.append(
            {
                "method": f"M{row.method}",
                "d": row.d,
                "N": row.N,
                "alpha_sq": None if row.alpha_sq is None else json_float(row.alpha_sq),
                "p_closed": json_float(row.p_closed),
                "p_sim": None if row.p_sim is None else json_float(row.p_sim),
                "rel_err": None if row.rel_err is None else json_float(row.rel_err),
            }
        )
    return out


def sweep_to_json(rows: list[SweepRow]) -> str:
    return json.dumps(sweep_rows_to_dicts(rows), indent=2) + "\n"
