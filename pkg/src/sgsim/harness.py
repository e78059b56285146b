"""Scenario assembly, stock configurations, reports, and check routines.

A Scenario bundles everything one beam-splitting run needs: the physical
config, spin, initial coefficients, a gradient schedule, and the grid and
step count used whenever the split-step reference is requested.  run()
turns a Scenario into a Report of closed-form observables plus optional
cross-checks; the CLI in sgsim.cli is a thin wrapper over these calls.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import BOHR_MAGNETON_SI, HBAR_SI, ExperimentConfig, GradientSegment, Grid
from .observables import (entanglement_entropy, peak_separation, position_density_z,
                          spin_rdm)
from .oracle import SampledSpinor, matrix_exponential, dense_hamiltonian, split_step_evolve
from .propagator import (HybridState, dense_factored_matrix, evolve_segments,
                         gaussian_hybrid, sample_state)
from .spin_algebra import SpinQN
from .wavepacket import from_gaussian, moments, sample

VALID_OUTPUTS = ("density", "entropy-timeline", "compare-table", "bch-check")

# Stock grid for silver-scale runs: the beams deflect ~7.3e-5 m, so a
# +-6e-4 m window keeps them far from the periodic seam.
SILVER_GRID = Grid(z_min=-6e-4, z_max=6e-4, n=4096)
SILVER_ORACLE_STEPS = 4096


def default_silver_config() -> ExperimentConfig:
    """Historical silver-beam parameters: 660 m/s furnace beam, 3.5 cm
    magnet, 0.1 T bias field, 10 T/cm gradient.  Gaussian widths map the
    0.03 mm slit to sigma = half width; mass and g factor are the standard
    silver values (107.87 u, g ~= 2).
    """
    return ExperimentConfig(
        mass=1.79e-25,
        g_factor=2.0,
        bohr_magneton=BOHR_MAGNETON_SI,
        hbar=HBAR_SI,
        b0=0.1,
        beta=1000.0,
        v0=660.0,
        sigma_x=1.5e-5,
        sigma_y=1.5e-5,
        sigma_z=1.5e-5,
        magnet_length=0.035,
    )


def scaled_config(b0: float = 1.0, beta: float = 0.5, sigma: float = 1.0) -> ExperimentConfig:
    """Order-one test profile: hbar = M = 1 and gamma = -1, so formulas can
    be checked without silver-scale exponents.
    """
    return ExperimentConfig(
        mass=1.0, g_factor=1.0, bohr_magneton=1.0, hbar=1.0,
        b0=b0, beta=beta, v0=1.0,
        sigma_x=sigma, sigma_y=sigma, sigma_z=sigma, magnet_length=1.0,
    )


def interferometer_segments(beta: float, T: float) -> tuple[GradientSegment, ...]:
    """Gradient flip sequence +beta, -beta, +beta over T, 2T, T.  The kick
    integrates to zero and the beams re-merge at 4T.
    """
    return (GradientSegment(beta, T),
            GradientSegment(-beta, 2 * T),
            GradientSegment(beta, T))


@dataclass(frozen=True, eq=False)
class Scenario:
    cfg: ExperimentConfig
    spin: SpinQN
    initial_coeffs: np.ndarray
    segments: tuple[GradientSegment, ...]
    grid: Grid
    oracle_steps: int = SILVER_ORACLE_STEPS
    outputs: tuple[str, ...] = ("density",)

    def __post_init__(self) -> None:
        if self.initial_coeffs.shape != (self.spin.dim,):
            raise ValueError(
                f"need {self.spin.dim} coefficients, got {self.initial_coeffs.shape}")
        total = float(np.sum(np.abs(self.initial_coeffs) ** 2))
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"coefficients must be normalized, sum |c|^2 = {total}")
        if self.oracle_steps < 1:
            raise ValueError("oracle_steps must be >= 1")
        for out in self.outputs:
            if out not in VALID_OUTPUTS:
                raise ValueError(f"unknown output {out!r}, expected one of {VALID_OUTPUTS}")

    @property
    def total_duration(self) -> float:
        return sum(seg.duration for seg in self.segments)


@dataclass(frozen=True, eq=False)
class Report:
    """Results of one scenario run.  deflection_m maps an m label such as
    '+1/2' to the final z centroid of that component.
    """

    transit_time_s: float
    deflection_m: dict[str, float]
    peak_separation_m: float | None
    entropy_nats: float
    oracle_l2_error: float | None = None
    bch_state_error: float | None = None
    density: np.ndarray | None = None  # columns z, p(z)
    entropy_timeline: np.ndarray | None = None  # columns t, S

    def __post_init__(self) -> None:
        scalars = [self.transit_time_s, self.entropy_nats,
                   *self.deflection_m.values()]
        for opt in (self.peak_separation_m, self.oracle_l2_error, self.bch_state_error):
            if opt is not None:
                scalars.append(opt)
        if not all(math.isfinite(x) for x in scalars):
            raise ValueError("report scalars must be finite")

    def json_dict(self) -> dict:
        doc = {
            "transit_time_s": self.transit_time_s,
            "deflection_m": self.deflection_m,
            "peak_separation_m": self.peak_separation_m,
            "entropy_nats": self.entropy_nats,
        }
        if self.oracle_l2_error is not None:
            doc["oracle_l2_error"] = self.oracle_l2_error
        if self.bch_state_error is not None:
            doc["bch_state_error"] = self.bch_state_error
        return doc


def _oracle_final_state(sc: Scenario, st0: HybridState) -> SampledSpinor:
    """Split-step the initial state through the schedule, spreading the
    step budget over segments in proportion to duration.
    """
    psi = sample_state(st0, sc.grid)
    total = sc.total_duration
    for seg in sc.segments:
        if seg.duration == 0:
            continue
        steps = max(1, round(sc.oracle_steps * seg.duration / total))
        psi = split_step_evolve(psi, seg.duration, steps, sc.cfg.with_beta(seg.beta))
    return psi


def oracle_density_error(sc: Scenario) -> float:
    """Relative L2 distance between closed-form and split-step densities."""
    st0 = gaussian_hybrid(sc.spin, sc.initial_coeffs, sc.cfg)
    st = evolve_segments(st0, list(sc.segments), sc.cfg)
    rho_exact = position_density_z(st, sc.grid).values
    rho_num = _oracle_final_state(sc, st0).density()
    return float(np.linalg.norm(rho_num - rho_exact) / np.linalg.norm(rho_exact))


def run(sc: Scenario) -> Report:
    """Evolve the scenario in closed form and collect observables."""
    cfg = sc.cfg
    st0 = gaussian_hybrid(sc.spin, sc.initial_coeffs, cfg)
    st = evolve_segments(st0, list(sc.segments), cfg)

    deflection = {
        sc.spin.label(m): moments(p, cfg.hbar).centroid
        for m, p in zip(sc.spin.m_values(), st.z_packets)
    }
    profile = position_density_z(st, sc.grid)
    entropy = entanglement_entropy(spin_rdm(st))

    oracle_err = None
    if "compare-table" in sc.outputs:
        oracle_err = oracle_density_error(sc)

    timeline = None
    if "entropy-timeline" in sc.outputs:
        timeline = entropy_timeline(sc, samples=33)

    bch_err = None
    if "bch-check" in sc.outputs:
        bch_err = bch_check(sc.spin).state_error

    density = None
    if "density" in sc.outputs:
        density = np.column_stack([sc.grid.z, profile.values])

    return Report(
        transit_time_s=cfg.transit_time,
        deflection_m=deflection,
        peak_separation_m=peak_separation(profile),
        entropy_nats=entropy,
        oracle_l2_error=oracle_err,
        bch_state_error=bch_err,
        density=density,
        entropy_timeline=timeline,
    )


def _evolve_until(st0: HybridState, segments: Sequence[GradientSegment],
                  cfg: ExperimentConfig, t: float) -> HybridState:
    """State after the first t seconds of the schedule."""
    st = st0
    remaining = t
    for seg in segments:
        if remaining <= 0:
            break
        step = min(seg.duration, remaining)
        if step > 0:
            st = evolve_segments(st, [GradientSegment(seg.beta, step)], cfg)
        remaining -= step
    return st


def entropy_timeline(sc: Scenario, samples: int) -> np.ndarray:
    """Entanglement entropy at evenly spaced times across the schedule;
    returns an array with columns (t, entropy).
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    st0 = gaussian_hybrid(sc.spin, sc.initial_coeffs, sc.cfg)
    times = np.linspace(0.0, sc.total_duration, samples)
    out = np.empty((samples, 2))
    for i, t in enumerate(times):
        st = _evolve_until(st0, sc.segments, sc.cfg, t)
        out[i] = t, entanglement_entropy(spin_rdm(st))
    return out


# ---------------------------------------------------------------------------
# factorization check against the dense matrix exponential

class BCHCheck(NamedTuple):
    """state_error: worst relative L2 error of the factored propagator
    against expm(-iHt/hbar) over a family of localized probe Gaussians.
    operator_error: raw entrywise max difference of the two matrices.

    The two metrics differ by design.  On a periodic grid the sawtooth z
    breaks [z, p] = i hbar at the seam; expm scatters off that jump while
    the factored operator translates cleanly through it, so columns near
    the boundary disagree at order one no matter how fine the grid.  On
    states kept away from the seam (the only regime where the periodic
    model represents the real line) the two agree to machine precision.
    """

    state_error: float
    operator_error: float


def bch_check(spin: SpinQN, n: int = 64, t: float = 0.7,
              window: float = 16.0) -> BCHCheck:
    """Compare the factored propagator with the brute-force exponential of
    the same discrete Hamiltonian, in order-one scaled units.
    """
    grid = Grid(z_min=-window, z_max=window, n=n)
    cfg = scaled_config()
    u_fact = dense_factored_matrix(grid, t, cfg, spin)
    h = dense_hamiltonian(grid, cfg, spin)
    u_exact = matrix_exponential(h, -1j * t / cfg.hbar)

    diff = u_fact - u_exact
    operator_error = float(np.abs(diff).max())

    state_error = 0.0
    for sigma in (1.0, 1.4):
        for z0 in (-4.0, 0.0, 3.0):
            for k0 in (-1.0, 0.0, 1.5):
                probe = sample(from_gaussian(sigma, z0, k0), grid)
                probe /= np.linalg.norm(probe)
                for i in range(spin.dim):
                    vec = np.zeros(spin.dim * n, dtype=complex)
                    vec[i * n:(i + 1) * n] = probe
                    err = np.linalg.norm(diff @ vec)
                    state_error = max(state_error, float(err))
    return BCHCheck(state_error=state_error, operator_error=operator_error)


# ---------------------------------------------------------------------------
# JSON scenario files

_CONFIG_KEYS = {
    "mass_kg": "mass",
    "g_factor": "g_factor",
    "bohr_magneton_j_per_t": "bohr_magneton",
    "hbar_js": "hbar",
    "b0_tesla": "b0",
    "beta_tesla_per_m": "beta",
    "v0_m_per_s": "v0",
    "sigma_x_m": "sigma_x",
    "sigma_y_m": "sigma_y",
    "sigma_z_m": "sigma_z",
    "magnet_length_m": "magnet_length",
}
_TOP_KEYS = set(_CONFIG_KEYS) | {"twice_s", "coeffs", "segments", "grid",
                                 "oracle_steps", "outputs"}


def _parse_coeff(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(value[0], value[1])
    raise ValueError(f"coefficient must be a number or [re, im] pair, got {value!r}")


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a Scenario from a JSON document; unknown keys are rejected so
    typos fail loudly.  Omitted physics keys fall back to the silver
    defaults; omitted segments mean one full transit at the configured beta.
    """
    if not isinstance(doc, dict):
        raise ValueError("config root must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "twice_s" not in doc or "coeffs" not in doc:
        raise ValueError("config requires twice_s and coeffs")

    silver = default_silver_config()
    cfg_kwargs = {field: getattr(silver, field) for field in _CONFIG_KEYS.values()}
    for key, field in _CONFIG_KEYS.items():
        if key in doc:
            cfg_kwargs[field] = float(doc[key])
    cfg = ExperimentConfig(**cfg_kwargs)

    spin = SpinQN(int(doc["twice_s"]))
    coeffs = np.array([_parse_coeff(v) for v in doc["coeffs"]])
    nrm = np.linalg.norm(coeffs)
    if nrm == 0:
        raise ValueError("coefficients are all zero")
    coeffs = coeffs / nrm

    if "segments" in doc:
        segments = tuple(
            GradientSegment(float(seg["beta_tesla_per_m"]), float(seg["duration_s"]))
            for seg in doc["segments"])
    else:
        segments = (GradientSegment(cfg.beta, cfg.transit_time),)

    grid_doc = doc.get("grid", {})
    grid = Grid(
        z_min=float(grid_doc.get("z_min_m", SILVER_GRID.z_min)),
        z_max=float(grid_doc.get("z_max_m", SILVER_GRID.z_max)),
        n=int(grid_doc.get("n", SILVER_GRID.n)),
    )

    return Scenario(
        cfg=cfg,
        spin=spin,
        initial_coeffs=coeffs,
        segments=segments,
        grid=grid,
        oracle_steps=int(doc.get("oracle_steps", SILVER_ORACLE_STEPS)),
        outputs=tuple(doc.get("outputs", ("density",))),
    )


def load_scenario(path: str) -> Scenario:
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))
