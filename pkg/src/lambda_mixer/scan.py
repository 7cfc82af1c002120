"""Sweep engine: transmission spectra and absorber-depth scans.

Grid points are independent, so sweeps are embarrassingly parallel; results
are assembled by index, which makes the output deterministic and identical
for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.signal import find_peaks

from .errors import DomainError, SingularityError
from .model import EitMedium, Scenario, SweepSpec
from .propagation import coupling_entries, expm2
from .susceptibility import (
    absorber_response,
    chi_abs,
    effective_depth,
    light_shift,
    susceptibility_depth_scale,
)

DETUNING_AXIS = "two-photon-detuning"
DEPTH_AXIS = "absorber-depth"

DEFAULT_DETUNING_POINTS = 401
DEFAULT_WINDOW_WIDTHS = 20.0


@dataclass(frozen=True)
class SpectrumRecord:
    """One grid point of a sweep.

    For detuning sweeps the axis value is the two-photon detuning (MHz); for
    absorber-depth sweeps it is the effective depth and the intensities are
    the detuning-maximized peak values.
    """

    axis_value: float
    probe_transmission: float
    stokes_output: float
    absorber_profile: float
    eit_reference: float
    flagged: bool = False


def eit_linewidth(eit: EitMedium) -> float:
    """Power-broadened EIT window scale |omega_c|^2 / (gamma_ge * sqrt(depth))."""
    if eit.omega_c == 0.0 or eit.depth == 0.0:
        return eit.gamma_ge
    return eit.omega_c**2 / (eit.gamma_ge * math.sqrt(eit.depth))


def default_detuning_spec(eit: EitMedium, points: int = DEFAULT_DETUNING_POINTS) -> SweepSpec:
    """Linear detuning grid covering the EIT window, FWM sidebands, and absorber."""
    half = DEFAULT_WINDOW_WIDTHS * eit_linewidth(eit)
    return SweepSpec(axis=DETUNING_AXIS, start=-half, stop=half, points=points)


def _shape_profile(scenario: Scenario) -> Optional[Callable[[float], complex]]:
    """Peak-normalized complex absorber shape, or None when none is derivable."""
    absorber = scenario.absorber
    if absorber is None:
        return None
    depth = effective_depth(absorber)
    if scenario.options.exact_absorber:
        line = scenario.line
        if line is None:
            raise DomainError("the exact absorber profile requires atomic line data")
        if depth == 0.0:  # nothing to normalize the susceptibility against
            return None
        scale = susceptibility_depth_scale(absorber, line)
        shift = light_shift(absorber)
        center = absorber.center_offset + (shift if scenario.options.apply_light_shift else 0.0)
        # the full susceptibility peaks at the light-shifted two-photon
        # resonance; translate it so the peak sits at the configured center
        # (turning the shift off models retuning the Raman control)
        offset = shift - center

        def profile(delta: float) -> complex:
            # conj(-i * chi) is the loss seen by the conjugated idler.
            return 1j * chi_abs(absorber, line, delta + offset).conjugate() * scale / depth

        return profile
    try:
        return absorber_response(absorber, scenario.options.apply_light_shift).lineshape
    except DomainError:
        if depth == 0.0:  # degenerate width but lossless; harmless
            return None
        raise


def absorber_loss_profile(
    scenario: Scenario,
) -> tuple[Callable[[float], complex], float]:
    """Peak-normalized complex loss profile and the effective absorber depth.

    The profile is oriented for the conjugated-idler equation: its value is 1
    at the line center and its conjugate is the physical idler response.  The
    loss subtracted from the idler diagonal is depth times the profile.
    """
    profile = _shape_profile(scenario)
    if profile is None:
        return (lambda delta: 0j), 0.0
    return profile, effective_depth(scenario.absorber)


def _evaluate_point(
    eit: EitMedium,
    profile: Callable[[float], complex],
    depth: float,
    seed: float,
    delta: float,
) -> SpectrumRecord:
    try:
        lam = profile(delta)
        m00, m01, m10, m11 = coupling_entries(eit, depth * lam, delta)
        t00, t01, t10, t11 = expm2(m00, m01, m10, m11)
        probe = abs(t00 + t01 * seed) ** 2
        stokes = abs(t10 + t11 * seed) ** 2
        reference = math.exp(2.0 * m00.real)
        if not all(map(math.isfinite, (probe, stokes, reference))):
            raise OverflowError("non-finite intensity")
        return SpectrumRecord(
            axis_value=delta,
            probe_transmission=probe,
            stokes_output=stokes,
            absorber_profile=abs(lam) ** 2,
            eit_reference=reference,
        )
    except (SingularityError, OverflowError):
        return SpectrumRecord(
            axis_value=delta,
            probe_transmission=0.0,
            stokes_output=0.0,
            absorber_profile=0.0,
            eit_reference=0.0,
            flagged=True,
        )


def _parallel_map(fn, items: Sequence, workers: Optional[int]) -> list:
    n = len(items)
    if workers is None:
        workers = 1
    workers = max(1, min(int(workers), n))
    if workers == 1:
        return [fn(x) for x in items]
    chunks = np.array_split(np.arange(n), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(lambda idx: [fn(items[i]) for i in idx], c) for c in chunks]
        out: list = []
        for fut in futures:
            out.extend(fut.result())
    return out


def sweep_detuning(
    scenario: Scenario,
    spec: Optional[SweepSpec] = None,
    workers: Optional[int] = None,
) -> list[SpectrumRecord]:
    """Transmission spectrum versus two-photon detuning."""
    if spec is None:
        spec = default_detuning_spec(scenario.eit)
    if spec.axis != DETUNING_AXIS:
        raise DomainError(f"sweep_detuning requires axis {DETUNING_AXIS!r}, got {spec.axis!r}")
    profile, depth = absorber_loss_profile(scenario)
    seed = scenario.options.stokes_seed
    eit = scenario.eit

    def point(delta: float) -> SpectrumRecord:
        return _evaluate_point(eit, profile, depth, seed, float(delta))

    records = _parallel_map(point, list(spec.grid()), workers)
    if scenario.options.normalize_stokes == "max":
        records = _renormalize_stokes(records)
    return records


def _renormalize_stokes(records: list[SpectrumRecord]) -> list[SpectrumRecord]:
    peak = max((r.stokes_output for r in records if not r.flagged), default=0.0)
    if peak <= 0.0:
        return records
    return [
        SpectrumRecord(
            axis_value=r.axis_value,
            probe_transmission=r.probe_transmission,
            stokes_output=r.stokes_output / peak,
            absorber_profile=r.absorber_profile,
            eit_reference=r.eit_reference,
            flagged=r.flagged,
        )
        for r in records
    ]


def _refined_peak(values: np.ndarray) -> float:
    """Grid maximum with three-point parabolic refinement of the peak value."""
    i = int(np.argmax(values))
    if i == 0 or i == len(values) - 1:
        return float(values[i])
    y0, y1, y2 = float(values[i - 1]), float(values[i]), float(values[i + 1])
    curv = y0 - 2.0 * y1 + y2
    if curv >= 0.0:  # flat or degenerate; keep the grid maximum
        return y1
    return y1 - 0.125 * (y2 - y0) ** 2 / curv


def peak_outputs(
    scenario: Scenario,
    depth_override: float,
    inner_spec: Optional[SweepSpec] = None,
) -> SpectrumRecord:
    """Detuning-maximized probe/Stokes outputs at one absorber depth."""
    if inner_spec is None:
        inner_spec = default_detuning_spec(scenario.eit)
    profile = _shape_profile(scenario)
    if profile is None:
        if depth_override != 0.0:
            raise DomainError(
                "overriding the absorber depth requires an absorber section "
                "with a derivable line shape"
            )

        def profile(delta: float) -> complex:
            return 0j

    seed = scenario.options.stokes_seed
    eit = scenario.eit
    grid = inner_spec.grid()
    records = [_evaluate_point(eit, profile, depth_override, seed, float(d)) for d in grid]
    flagged = any(r.flagged for r in records)
    clean = [r for r in records if not r.flagged] or records
    probe = np.array([r.probe_transmission for r in clean])
    stokes = np.array([r.stokes_output for r in clean])
    reference = np.array([r.eit_reference for r in clean])
    i_probe = int(np.argmax(probe))
    return SpectrumRecord(
        axis_value=depth_override,
        probe_transmission=_refined_peak(probe),
        stokes_output=_refined_peak(stokes),
        absorber_profile=clean[i_probe].absorber_profile,
        eit_reference=_refined_peak(reference),
        flagged=flagged,
    )


def sweep_absorber_depth(
    scenario: Scenario,
    spec: SweepSpec,
    workers: Optional[int] = None,
    inner_spec: Optional[SweepSpec] = None,
) -> list[SpectrumRecord]:
    """Peak probe/Stokes outputs as a function of the effective absorber depth.

    The scenario's absorber sets the line shape; its effective depth is
    replaced by each grid value in turn.
    """
    if spec.axis != DEPTH_AXIS:
        raise DomainError(f"sweep_absorber_depth requires axis {DEPTH_AXIS!r}, got {spec.axis!r}")
    if inner_spec is None:
        inner_spec = default_detuning_spec(scenario.eit)

    def point(depth: float) -> SpectrumRecord:
        return peak_outputs(scenario, float(depth), inner_spec)

    return _parallel_map(point, list(spec.grid()), workers)


def asymmetry_metric(records: Sequence[SpectrumRecord]) -> float:
    """Mirror asymmetry of the probe spectrum, in [0, 1].

    L1 difference between the probe curve and its mirror image about zero
    detuning, normalized so a symmetric curve gives 0 and a curve wholly on
    one side gives 1.  The grid must be symmetric about 0.
    """
    deltas = np.array([r.axis_value for r in records])
    tol = 1e-9 * max(1.0, float(np.abs(deltas).max()))
    if not np.all(np.abs(deltas + deltas[::-1]) <= tol):
        raise DomainError("asymmetry metric requires a grid symmetric about zero detuning")
    p = np.array([r.probe_transmission for r in records])
    q = p[::-1]
    mass = float(np.sum(p + q))
    if mass == 0.0:
        return 0.0
    return float(np.sum(np.abs(p - q)) / mass)


def count_peaks(records: Sequence[SpectrumRecord], rel_prominence: float = 1e-3) -> int:
    """Number of local maxima of the probe curve above a relative prominence floor."""
    p = np.array([r.probe_transmission for r in records])
    peaks, _ = find_peaks(p, prominence=rel_prominence * float(p.max()))
    return int(peaks.size)
