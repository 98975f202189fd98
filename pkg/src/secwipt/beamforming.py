"""MRT and zero-forcing beams plus beam/channel coupling power."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# relative residual below which target is treated as parallel to avoid
PARALLEL_TOL = 1e-9
UNIT_NORM_TOL = 1e-12


class BeamformingError(ValueError):
    pass


class DegenerateChannelError(BeamformingError):
    pass


class DegenerateGeometryError(BeamformingError):
    pass


class DimensionError(BeamformingError):
    pass


def _as_vector(h):
    return np.atleast_1d(np.asarray(h, dtype=complex))


@dataclass(frozen=True)
class BeamPair:
    """Information beam ``w_info`` and energy/AN beam ``w_energy``.

    Either beam may be ``None`` when the corresponding signal is absent
    (a corner of the no-AN time-sharing baseline).
    """

    w_info: np.ndarray | None
    w_energy: np.ndarray | None

    def __post_init__(self):
        for name in ("w_info", "w_energy"):
            w = getattr(self, name)
            if w is None:
                continue
            w = _as_vector(w)
            if abs(np.linalg.norm(w) - 1.0) > UNIT_NORM_TOL:
                raise BeamformingError(f"{name} must be unit norm, got norm {np.linalg.norm(w)}")
            w.setflags(write=False)
            object.__setattr__(self, name, w)


def mrt_beam(h) -> np.ndarray:
    """Maximum-ratio transmission beam ``h / ||h||``."""
    h = _as_vector(h)
    norm = np.linalg.norm(h)
    if norm == 0:
        raise DegenerateChannelError("MRT beam undefined for a zero channel")
    return h / norm


def zf_beam(target, avoid) -> np.ndarray:
    """Unit beam toward ``target`` restricted to the null space of ``avoid``.

    One Gram-Schmidt step: project ``target`` onto the orthogonal
    complement of ``avoid`` and normalize.
    """
    target = _as_vector(target)
    avoid = _as_vector(avoid)
    if target.shape != avoid.shape:
        raise DimensionError(f"shape mismatch {target.shape} vs {avoid.shape}")
    if target.size < 2:
        raise DimensionError("zero-forcing needs at least 2 antennas")
    t_norm = np.linalg.norm(target)
    a_norm2 = np.vdot(avoid, avoid).real
    if t_norm == 0 or a_norm2 == 0:
        raise DegenerateChannelError("zero-forcing needs nonzero target and avoid vectors")
    residual = target - (np.vdot(avoid, target) / a_norm2) * avoid
    # second pass removes round-off left by the first projection
    residual = residual - (np.vdot(avoid, residual) / a_norm2) * avoid
    r_norm = np.linalg.norm(residual)
    if r_norm < PARALLEL_TOL * t_norm:
        raise DegenerateGeometryError("target is parallel to the channel being nulled")
    return residual / r_norm


def coupling_power(h, w) -> float:
    """``|h^H w|^2``."""
    h = _as_vector(h)
    w = _as_vector(w)
    if h.shape != w.shape:
        raise DimensionError(f"shape mismatch {h.shape} vs {w.shape}")
    return float(abs(np.vdot(h, w)) ** 2)
