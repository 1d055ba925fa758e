"""Channel spin-1 state built from a polarized spin-1/2 beam and target.

Two routes to the statistical tensors are kept apart on purpose:
``stat_tensors_from_state`` works from the projected density matrix and
``stat_tensors_closed_form`` from the polarization vectors alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from channelspin import spin_algebra as sa
from channelspin.errors import (
    DomainError,
    FrameDegenerateError,
    ProjectionNullError,
    UnphysicalPolarizationError,
)

POLARIZATION_SLACK = 1e-12
TRIPLET_WEIGHT_CUTOFF = 1e-14
FRAME_DEGENERACY_TOL = 1e-12

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# columns: |1,+1>, |1,0>, |1,-1> expressed in the two-qubit basis
TRIPLET_BASIS = np.array(
    [
        [1, 0, 0],
        [0, _INV_SQRT2, 0],
        [0, _INV_SQRT2, 0],
        [0, 0, 1],
    ],
    dtype=complex,
)
TRIPLET_BASIS.setflags(write=False)


@dataclass(frozen=True)
class PolarizationVector:
    components: tuple

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        if len(comps) != 3 or not all(math.isfinite(c) for c in comps):
            raise DomainError(f"polarization needs three finite reals, got {self.components!r}")
        norm = math.sqrt(sum(c * c for c in comps))
        if norm > 1.0 + POLARIZATION_SLACK:
            raise UnphysicalPolarizationError(f"|p| = {norm:.6g} exceeds 1")
        object.__setattr__(self, "components", comps)

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.components)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.vec))


def _polarization(p) -> PolarizationVector:
    return p if isinstance(p, PolarizationVector) else PolarizationVector(tuple(p))


@dataclass(frozen=True)
class ChannelConfig:
    """Beam (p1) and target (p2) polarizations."""

    p1: PolarizationVector
    p2: PolarizationVector

    def __post_init__(self):
        object.__setattr__(self, "p1", _polarization(self.p1))
        object.__setattr__(self, "p2", _polarization(self.p2))

    @classmethod
    def from_slf(cls, p: float, theta: float) -> "ChannelConfig":
        """Equal magnitudes p at half-opening angle theta, lab frame == SLF.

        p1 = p (sin theta, 0, cos theta), p2 = p (-sin theta, 0, cos theta).
        """
        s, c = math.sin(theta), math.cos(theta)
        return cls((p * s, 0.0, p * c), (-p * s, 0.0, p * c))

    @property
    def dot(self) -> float:
        return float(self.p1.vec @ self.p2.vec)


@dataclass(frozen=True)
class StatTensors:
    """Statistical tensors t^k_q for k <= 2 stored as {(k, q): complex}."""

    values: dict = field(repr=False)

    def __getitem__(self, kq) -> complex:
        return self.values[kq]

    def keys(self):
        return sorted(self.values)

    def max_abs_diff(self, other: "StatTensors") -> float:
        return max(abs(self[kq] - other[kq]) for kq in self.keys())


@dataclass(frozen=True)
class Frame:
    x0: np.ndarray
    y0: np.ndarray
    z0: np.ndarray
    degenerate: bool = False

    def components(self, v) -> np.ndarray:
        """Coordinates of the lab vector v along (x0, y0, z0)."""
        v = np.asarray(v, dtype=float)
        return np.array([self.x0 @ v, self.y0 @ v, self.z0 @ v])

    @property
    def rotation(self) -> np.ndarray:
        """Rows are the frame axes; maps lab coordinates to frame coordinates."""
        return np.vstack([self.x0, self.y0, self.z0])


def qubit_density(p) -> np.ndarray:
    """rho = (I + sigma . p) / 2 for one spin-1/2."""
    x, y, z = _polarization(p).components
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=complex)


def product_state(cfg: ChannelConfig) -> np.ndarray:
    return sa.kron(qubit_density(cfg.p1), qubit_density(cfg.p2))


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduced 2x2 state of qubit ``keep`` (1 or 2) from a two-qubit matrix."""
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ajbj->ab", r)
    if keep == 2:
        return np.einsum("iaib->ab", r)
    raise DomainError("keep must be 1 or 2")


def triplet_projection(rho_c) -> tuple[np.ndarray, float]:
    """Restrict a two-qubit state to the triplet subspace.

    Returns the renormalized 3x3 matrix in the |1,+1>, |1,0>, |1,-1> basis
    and the pre-normalization weight Tr(Pi_S rho_c).
    """
    rho_c = sa.as_cmatrix(rho_c, dim=4)
    block = TRIPLET_BASIS.conj().T @ rho_c @ TRIPLET_BASIS
    weight = float(np.trace(block).real)
    if weight < TRIPLET_WEIGHT_CUTOFF:
        raise ProjectionNullError(f"triplet weight {weight:.3g} is below {TRIPLET_WEIGHT_CUTOFF}")
    return block / weight, weight


def channel_density(cfg: ChannelConfig) -> np.ndarray:
    """Spin-1 density matrix of the channel, first-principles route."""
    return triplet_projection(product_state(cfg))[0]


def stat_tensors_from_state(rho1) -> StatTensors:
    """t^k_q = Tr(rho tau^k_q) / Tr(rho) for a spin-1 density matrix."""
    rho1 = sa.as_cmatrix(rho1, dim=3)
    ops = sa.tensor_ops(1)
    tr = np.trace(rho1)
    return StatTensors({kq: complex(np.trace(rho1 @ ops[kq]) / tr) for kq in ops.keys()})


def density_from_tensors(t: StatTensors, j=1) -> np.ndarray:
    """Rebuild rho = 1/(2j+1) sum t^k_q tau^k_q^dag (unit trace)."""
    ops = sa.tensor_ops(j)
    rho = np.zeros((ops.dim, ops.dim), dtype=complex)
    for kq in ops.keys():
        rho += t[kq] * ops[kq].conj().T
    return rho / ops.dim


def stat_tensors_closed_form(cfg: ChannelConfig) -> StatTensors:
    """Statistical tensors of the channel state directly from p1 and p2."""
    a, b = cfg.p1.vec, cfg.p2.vec
    denom = 3.0 + cfg.dot
    if denom / 4.0 < TRIPLET_WEIGHT_CUTOFF:
        raise ProjectionNullError("configuration has no triplet weight")
    sa_, sb_ = sa.spherical_components(a), sa.spherical_components(b)
    values = {(0, 0): 1.0 + 0j}
    c1 = math.sqrt(6.0) / denom
    for q in (-1, 0, 1):
        values[(1, q)] = c1 * (sa_[q] + sb_[q])
    c2 = 2.0 * math.sqrt(3.0) / denom
    for q in range(-2, 3):
        values[(2, q)] = c2 * sa.rank2_product(a, b, q)
    return StatTensors(values)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _complete(z0: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to z0 (Gram-Schmidt on lab x, then y)."""
    for trial in (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])):
        v = trial - (trial @ z0) * z0
        if np.linalg.norm(v) > 1e-6:
            return _unit(v)
    raise AssertionError("unreachable: x and y cannot both be parallel to z0")


def slf_frame(cfg: ChannelConfig) -> Frame:
    """Special Lakin frame: z0 along p1 + p2, x0 in the (p1, p2) plane with
    p1 at azimuth 0, y0 = z0 x x0.

    When p1 + p2 vanishes, or p1 and p2 are collinear, the frame is completed
    deterministically and flagged degenerate.
    """
    p1, p2 = cfg.p1.vec, cfg.p2.vec
    s = p1 + p2
    degenerate = False
    if np.linalg.norm(s) >= FRAME_DEGENERACY_TOL:
        z0 = _unit(s)
    else:
        degenerate = True
        if np.linalg.norm(p1) >= FRAME_DEGENERACY_TOL:
            z0 = _unit(p1)
        else:
            z0 = np.array([0.0, 0.0, 1.0])
    perp = p1 - (p1 @ z0) * z0
    if not degenerate and np.linalg.norm(perp) >= FRAME_DEGENERACY_TOL:
        x0 = _unit(perp)
    else:
        degenerate = True
        x0 = _complete(z0)
    y0 = np.cross(z0, x0)
    return Frame(x0=x0, y0=y0, z0=z0, degenerate=degenerate)


def slf_components(p_mag1: float, p_mag2: float, theta: float) -> tuple[float, float, float, float]:
    """SLF Cartesian components (px1, pz1, px2, pz2); y components vanish.

    ``theta`` is half the angle between the two polarization vectors.
    """
    for p in (p_mag1, p_mag2):
        if not 0.0 <= p <= 1.0 + POLARIZATION_SLACK:
            raise UnphysicalPolarizationError(f"|p| = {p} outside [0, 1]")
    if not 0.0 <= theta <= math.pi / 2 + 1e-15:
        raise DomainError(f"theta = {theta} outside [0, pi/2]")
    c2 = math.cos(2 * theta)
    s_norm = math.sqrt(max(p_mag1**2 + p_mag2**2 + 2 * p_mag1 * p_mag2 * c2, 0.0))
    if s_norm <= 1e-14:
        raise FrameDegenerateError("p1 + p2 vanishes; SLF is undefined")
    px1 = p_mag1 * p_mag2 * math.sin(2 * theta) / s_norm
    pz1 = (p_mag1**2 + p_mag1 * p_mag2 * c2) / s_norm
    pz2 = (p_mag2**2 + p_mag1 * p_mag2 * c2) / s_norm
    return px1, pz1, -px1, pz2


def rotate_config(cfg: ChannelConfig, frame: Frame) -> ChannelConfig:
    """Express both polarization vectors in frame coordinates."""
    return ChannelConfig(tuple(frame.components(cfg.p1.vec)), tuple(frame.components(cfg.p2.vec)))
