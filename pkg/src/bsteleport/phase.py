"""Phase-difference statistics of the entangled resource.

The splitter advances each transferred photon's phase by a fixed quarter
turn, so the resource coefficients carry an i^n twist on top of a real
rotation profile.  Phase readings here are referenced to the frame with
that twist removed, where the coefficient sequence is real up to a
global phase; for balanced inputs the profile is then symmetric about
pi/2 and peaks there at a balanced splitter.  The joint probability of
a reading is the squared modulus of the Fourier series of the twisted
coefficients, and sampling it on a uniform grid is an inverse DFT.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .protocol import FidelityGrid, map_cells, split_total
from .states import ResourceCoeffs, ResourceParams, resource_coeffs

# exact unit phases i^k for k = 0..3
_I_POW = np.array([1.0, 1.0j, -1.0, -1.0j])

DEFAULT_PHASE_GRID = 4096
MIN_PHASE_GRID = 16
# relative slack when locating the argmax, so flat profiles with float
# dust still resolve to their first grid point
_ARGMAX_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """Phase-difference probability profile on a uniform grid over [0, 2pi)."""

    phi_axis: np.ndarray
    values: np.ndarray
    beta: float
    m: float
    total: int


def _twisted(coeffs: np.ndarray) -> np.ndarray:
    """Coefficients in the quadrature frame: entry n gains an exact i^n."""
    n = np.arange(len(coeffs))
    return _I_POW[n % 4] * coeffs


def joint_phase_prob(resource: ResourceCoeffs, phi_minus: float) -> float:
    """Probability density (unnormalized) of phase-difference value phi_minus."""
    n = np.arange(resource.total + 1)
    z = complex(np.dot(np.exp(1j * phi_minus * n), _twisted(resource.coeffs)))
    return z.real * z.real + z.imag * z.imag


def _profile_values(coeffs: np.ndarray, grid_size: int) -> np.ndarray:
    # k-th inverse-DFT entry is (1/K) sum_n e^{2pi i n k / K} c_n
    z = grid_size * np.fft.ifft(_twisted(coeffs), n=grid_size)
    return z.real**2 + z.imag**2


def phase_profile(params: ResourceParams, grid_size: int = DEFAULT_PHASE_GRID) -> PhaseProfile:
    """Profile of the phase-difference probability for one resource."""
    if grid_size < MIN_PHASE_GRID:
        raise ValueError(f"grid_size must be at least {MIN_PHASE_GRID}")
    coeffs = resource_coeffs(params).coeffs
    phi_axis = 2.0 * np.pi * np.arange(grid_size) / grid_size
    return PhaseProfile(phi_axis, _profile_values(coeffs, grid_size), params.beta, params.m, params.total)


def phase_argmax(resource: ResourceCoeffs, grid_size: int = DEFAULT_PHASE_GRID) -> tuple[float, float]:
    """Location and value of the profile maximum on the uniform grid.

    Ties within relative tolerance of the maximum resolve to the smallest
    phi, so constant profiles report phi = 0.
    """
    if grid_size < MIN_PHASE_GRID:
        raise ValueError(f"grid_size must be at least {MIN_PHASE_GRID}")
    values = _profile_values(resource.coeffs, grid_size)
    v_max = float(values.max())
    if v_max <= 0.0:
        return 0.0, v_max
    idx = int(np.argmax(values >= v_max * (1.0 - _ARGMAX_RTOL)))
    return 2.0 * np.pi * idx / grid_size, v_max


def _argmax_cell(task) -> float:
    n_in, m_in, beta, grid_size = task
    res = resource_coeffs(ResourceParams(n_in, m_in, beta))
    return phase_argmax(res, grid_size)[0]


def phase_argmax_map(
    total: int,
    beta_axis,
    m_axis,
    grid_size: int = DEFAULT_PHASE_GRID,
    workers: int | None = None,
) -> FidelityGrid:
    """Most likely phase difference over a (beta, m) grid at fixed total.

    Cells whose m is incompatible with the total are filled with NaN, as
    in the fidelity sweep.
    """
    beta_axis = np.asarray(beta_axis, dtype=float)
    m_axis = np.asarray(m_axis, dtype=float)
    if len(beta_axis) == 0 or len(m_axis) == 0:
        raise ValueError("axes must be non-empty")
    if np.any(beta_axis < 0.0) or np.any(beta_axis > np.pi):
        raise ValueError("beta axis must lie in [0, pi]")
    if grid_size < MIN_PHASE_GRID:
        raise ValueError(f"grid_size must be at least {MIN_PHASE_GRID}")

    splits = [split_total(total, m) for m in m_axis]
    for m, split in zip(m_axis, splits):
        if split is None:
            warnings.warn(f"m={m:g} incompatible with total={total}; row marked invalid")

    tasks = []
    for split in splits:
        if split is None:
            continue
        n_in, m_in = split
        for beta in beta_axis:
            tasks.append((n_in, m_in, float(beta), grid_size))
    results = map_cells(_argmax_cell, tasks, workers)

    values = np.full((len(m_axis), len(beta_axis)), np.nan)
    it = iter(results)
    for i, split in enumerate(splits):
        if split is None:
            continue
        for k in range(len(beta_axis)):
            values[i, k] = next(it)
    return FidelityGrid(beta_axis, m_axis, values, total, "phase-argmax")
