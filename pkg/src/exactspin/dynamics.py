"""Exact time evolution of observables under the rotated models.

Evolution is spectral: a state expressed in the closed-form eigenbasis
only rotates coefficient phases, so any expectation value at any time is
an O(dim^2) bilinear form with the rotated observable matrix U O U†.
That matrix is computed once per (j, angles, observable) and cached.

The printed population-evolution formula for the quadratic model is also
evaluated verbatim (no conjugates, squared ladder factor, as printed) as
a diagnostic series for comparison against the exact evolution.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, energy_values
from .rotation import RotationAngles, apply_rotation, rotation_matrix
from .su2 import _check_j, m_floats, operator_matrix

__all__ = [
    "EigenbasisState",
    "TimeSeries",
    "to_eigenbasis",
    "state_at",
    "rotated_observable",
    "evolve_observable",
    "paper_jz_series",
    "revival_time",
    "envelope_metric",
]

EVOLVE_OBSERVABLES = ("Jz", "Jy", "Jx")

_obs_cache: dict[tuple, np.ndarray] = {}
_obs_cache_lock = threading.Lock()
_OBS_CACHE_MAX = 16


@dataclass(frozen=True)
class EigenbasisState:
    """Coefficients C_m of a state over the rotated eigenbasis, ascending m."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", c)
        norm2 = float(np.sum(np.abs(c) ** 2))
        if abs(norm2 - 1.0) > 1e-10:
            raise ValueError(f"eigenbasis coefficients not normalized: sum |C|^2 = {norm2}")

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class TimeSeries:
    """Sampled expectation values over a strictly increasing time grid."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError(f"times {t.shape} and values {v.shape} must be equal-length 1-d")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)


def to_eigenbasis(params: ModelParams, j, psi0: np.ndarray) -> EigenbasisState:
    """Coefficients C_m = <j,m|U|psi0> of a lab-basis state."""
    j = _check_j(j)
    psi0 = np.asarray(psi0, dtype=complex)
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"initial state must be unit norm, got {norm}")
    return EigenbasisState(apply_rotation(j, params.angles, psi0))


def state_at(params: ModelParams, j, state: EigenbasisState, t: float) -> np.ndarray:
    """Lab-basis state at time t: U† (C * exp(-i E t))."""
    j = _check_j(j)
    phases = np.exp(-1j * energy_values(params, j) * float(t))
    return apply_rotation(j, params.angles, state.coeffs * phases, dagger=True)


def rotated_observable(params: ModelParams, j, obs: str) -> np.ndarray:
    """U O U† in the eigen-label basis, cached per (j, angles, obs)."""
    j = _check_j(j)
    if obs not in EVOLVE_OBSERVABLES:
        raise ValueError(f"obs must be one of {EVOLVE_OBSERVABLES}, got {obs!r}")
    key = (j.twice, params.angles.theta, params.angles.phi, obs)
    with _obs_cache_lock:
        cached = _obs_cache.get(key)
    if cached is not None:
        return cached
    u = rotation_matrix(j, params.angles)
    mat = u @ operator_matrix(j, obs) @ u.conj().T
    with _obs_cache_lock:
        if key not in _obs_cache:
            if len(_obs_cache) >= _OBS_CACHE_MAX:
                _obs_cache.pop(next(iter(_obs_cache)))
            _obs_cache[key] = mat
        mat = _obs_cache[key]
    return mat


def evolve_observable(params: ModelParams, j, state: EigenbasisState, obs: str,
                      times) -> TimeSeries:
    """Exact expectation series <O>(t) = c(t)† (U O U†) c(t), c(t) = C e^{-iEt}."""
    j = _check_j(j)
    times = np.asarray(times, dtype=float)
    if state.dim != j.twice + 1:
        raise ValueError(f"state dim {state.dim} does not match 2j+1 = {j.twice + 1}")
    mat = rotated_observable(params, j, obs)
    energies = energy_values(params, j)
    ct = state.coeffs[None, :] * np.exp(-1j * np.outer(times, energies))
    raw = np.sum(ct.conj() * (ct @ mat.T), axis=1)
    worst_imag = float(np.max(np.abs(raw.imag))) if raw.size else 0.0
    if worst_imag > 1e-9:
        raise ArithmeticError(f"expectation value has imaginary part {worst_imag:.3e}")
    return TimeSeries(times=times, values=raw.real, label=f"<{obs}>")


def paper_jz_series(params: ModelParams, j, state: EigenbasisState, times) -> TimeSeries:
    """The printed population-evolution formula, evaluated verbatim.

    Adjacent-coefficient products C_m C_{m-1} appear without conjugation
    and the ladder factor appears squared (no square root), exactly as
    printed; the total-spin label in the factor is read as j.  Intended
    only for comparison against evolve_observable.
    """
    if params.order != 2:
        raise ValueError(f"printed formula is defined for order 2, got {params.order}")
    j = _check_j(j)
    times = np.asarray(times, dtype=float)
    if state.dim != j.twice + 1:
        raise ValueError(f"state dim {state.dim} does not match 2j+1 = {j.twice + 1}")
    m = m_floats(j)
    jval = j.twice / 2.0
    energies = energy_values(params, j)
    phi = params.angles.phi
    total = np.zeros(times.shape, dtype=complex)
    c = state.coeffs
    for k in range(1, j.twice + 1):
        weight = c[k] * c[k - 1] * (jval * (jval + 1.0) - m[k] * (m[k] - 1.0))
        total += weight * np.cos(phi + (energies[k - 1] - energies[k]) * times)
    values = -math.sin(params.angles.theta) * total
    return TimeSeries(times=times, values=values.real, label="<Jz> printed formula")


def revival_time(params: ModelParams) -> float | None:
    """Quadratic-spectrum revival time pi/|a2|; None when the spectrum is linear."""
    if params.order != 2:
        return None
    a2 = params.coeffs[2]
    if a2 == 0.0:
        return None
    return math.pi / abs(a2)


def envelope_metric(series: TimeSeries, window: float) -> TimeSeries:
    """Sliding-window max-minus-min oscillation amplitude of a series."""
    t = series.times
    if t.size < 2:
        raise ValueError("series too short for an envelope")
    spacing = float(np.min(np.diff(t)))
    if not (window > spacing):
        raise ValueError(f"window {window} must exceed the grid spacing {spacing}")
    half = window / 2.0
    lo = np.searchsorted(t, t - half, side="left")
    hi = np.searchsorted(t, t + half, side="right")
    values = np.empty_like(series.values)
    for i in range(t.size):
        seg = series.values[lo[i]:hi[i]]
        values[i] = seg.max() - seg.min()
    return TimeSeries(times=t, values=values, label=f"envelope[{series.label}]")
