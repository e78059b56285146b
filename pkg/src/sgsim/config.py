"""Experiment configuration containers.

Everything downstream (analytic propagation, split-step checks, observables)
reads physical parameters from these dataclasses.  SI units throughout unless
a config is built explicitly with scaled constants (hbar = mass = 1 style);
the code never assumes a unit system, it only combines the fields it is given.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

# CODATA 2018 values, used by the stock silver-beam configuration.
HBAR_SI = 1.054571817e-34  # J s
BOHR_MAGNETON_SI = 9.2740100783e-24  # J / T


@dataclass(frozen=True)
class ExperimentConfig:
    """Beam and magnet parameters.

    mass          particle mass
    g_factor      Lande g factor (dimensionless)
    bohr_magneton magnetic moment scale
    hbar          reduced Planck constant
    b0            uniform field along z inside the magnet
    beta          field gradient dB_z/dz
    v0            longitudinal beam speed (x direction)
    sigma_x/y/z   initial Gaussian widths of the wavepacket
    magnet_length extent of the field region along the beam
    """

    mass: float
    g_factor: float
    bohr_magneton: float
    hbar: float
    b0: float
    beta: float
    v0: float
    sigma_x: float
    sigma_y: float
    sigma_z: float
    magnet_length: float

    def __post_init__(self) -> None:
        for name in ("mass", "hbar", "sigma_x", "sigma_y", "sigma_z",
                     "magnet_length"):
            value = getattr(self, name)
            if not (value > 0 and np.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        for name in ("g_factor", "bohr_magneton", "b0", "beta", "v0"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def gamma(self) -> float:
        """Gyromagnetic ratio -g mu_B / hbar (rad per second per field unit)."""
        return -self.g_factor * self.bohr_magneton / self.hbar

    @property
    def transit_time(self) -> float:
        """Time spent inside the field region at speed v0."""
        if self.v0 <= 0:
            raise ValueError("transit time requires v0 > 0")
        return self.magnet_length / self.v0

    def with_beta(self, beta: float) -> "ExperimentConfig":
        """Copy of this config with a different gradient."""
        return dataclasses.replace(self, beta=beta)


@dataclass(frozen=True)
class GradientSegment:
    """One leg of a gradient schedule: hold `beta` for `duration`."""

    beta: float
    duration: float

    def __post_init__(self) -> None:
        if not (self.duration >= 0 and np.isfinite(self.duration)):
            raise ValueError(f"duration must be >= 0, got {self.duration}")
        if not np.isfinite(self.beta):
            raise ValueError("beta must be finite")


@dataclass(frozen=True)
class Grid:
    """Uniform periodic z grid for sampled-wavefunction work.

    n must be a power of two: every consumer goes through the FFT and the
    split-step error analysis assumes exact step halving/doubling.
    """

    z_min: float
    z_max: float
    n: int

    def __post_init__(self) -> None:
        if not self.z_max > self.z_min:
            raise ValueError("need z_max > z_min")
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 2, got {self.n}")

    @property
    def length(self) -> float:
        return self.z_max - self.z_min

    @property
    def dz(self) -> float:
        return self.length / self.n

    @property
    def z(self) -> np.ndarray:
        """Sample points; z_max itself is excluded (periodic wrap)."""
        return self.z_min + self.dz * np.arange(self.n)

    @property
    def k(self) -> np.ndarray:
        """FFT-ordered angular wavenumbers."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dz)
