"""Entanglement of the channel spin-1 state.

The covariance-matrix test C_ij = <s_i (x) s_j> - <s_i (x) I><I (x) s_j>
(negative C <=> entangled for exchange-symmetric two-qubit states) is paired
with a partial-transpose check so every verdict doubles as a self-test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from channelspin import spin_algebra as sa
from channelspin.channel_state import (
    TRIPLET_BASIS,
    ChannelConfig,
    product_state,
    triplet_projection,
)
from channelspin.errors import DomainError

DEFAULT_TOL = 1e-10
BISECTION_TOL = 1e-10
AXES = ("x", "y", "z")

_I2 = np.eye(2, dtype=complex)
_LOCAL_1 = [sa.kron(sa.pauli(a), _I2) for a in AXES]
_LOCAL_2 = [sa.kron(_I2, sa.pauli(a)) for a in AXES]
_CORR = [[sa.kron(sa.pauli(a), sa.pauli(b)) for b in AXES] for a in AXES]


@dataclass(frozen=True)
class EntanglementVerdict:
    cov_min_eig: float
    ppt_min_eig: float
    entangled: bool
    criterion_agreement: bool
    boundary: bool
    covariance: np.ndarray

    @property
    def diagonals(self) -> tuple[float, float, float]:
        return tuple(float(x) for x in np.diag(self.covariance))


@dataclass(frozen=True)
class ThetaInterval:
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


def symmetric_embedding(rho1) -> np.ndarray:
    """Lift a spin-1 density matrix to the triplet subspace of two qubits."""
    rho1 = sa.as_cmatrix(rho1, dim=3)
    return TRIPLET_BASIS @ rho1 @ TRIPLET_BASIS.conj().T


def covariance_matrix(rho) -> np.ndarray:
    """Real 3x3 spin-spin covariance matrix of a two-qubit state."""
    rho = sa.as_cmatrix(rho, dim=4)

    def ev(op):
        return float(np.trace(rho @ op).real)

    s1 = [ev(op) for op in _LOCAL_1]
    s2 = [ev(op) for op in _LOCAL_2]
    return np.array([[ev(_CORR[i][j]) - s1[i] * s2[j] for j in range(3)] for i in range(3)])


def canonical_diagonals(p: float, theta: float) -> tuple[float, float, float]:
    """Closed-form (Cxx, Cyy, Czz) in the SLF for equal magnitudes p.

    ``theta`` is half the opening angle. The formulas are well defined for
    any real theta, which the figure commands use to cover [0, pi].
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p = {p} outside [0, 1]")
    p2 = p * p
    s2 = math.sin(theta) ** 2
    c = math.cos(theta)
    n = 3.0 + p2 * math.cos(2 * theta)
    cxx = (1.0 - p2 * (1.0 + 2.0 * s2)) / n
    cyy = (1.0 - p2 * math.cos(2 * theta)) / n
    czz = (1.0 + p2 * (1.0 + 2.0 * c * c)) / n - (4.0 * p * c / n) ** 2
    return cxx, cyy, czz


def partial_transpose(rho, subsystem: int = 2) -> np.ndarray:
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    if subsystem == 2:
        return r.transpose(0, 3, 2, 1).reshape(4, 4)
    if subsystem == 1:
        return r.transpose(2, 1, 0, 3).reshape(4, 4)
    raise DomainError("subsystem must be 1 or 2")


def ppt_min_eigenvalue(rho, subsystem: int = 2) -> float:
    """Smallest eigenvalue of the partial transpose (negative <=> entangled)."""
    rho = sa.as_cmatrix(rho, dim=4)
    pt = partial_transpose(rho, subsystem)
    return float(np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))[0])


def cov_min_eigenvalue(cov: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(0.5 * (cov + cov.T))[0])


def state_verdict(rho, tol: float = DEFAULT_TOL) -> EntanglementVerdict:
    """Covariance and PPT verdict for a two-qubit state."""
    cov = covariance_matrix(rho)
    cmin = cov_min_eigenvalue(cov)
    pmin = ppt_min_eigenvalue(rho)
    entangled = cmin < -tol
    if abs(cmin) <= tol or abs(pmin) <= tol:
        agreement = True
    else:
        agreement = (cmin < 0) == (pmin < 0)
    return EntanglementVerdict(
        cov_min_eig=cmin,
        ppt_min_eig=pmin,
        entangled=entangled,
        criterion_agreement=agreement,
        boundary=-tol <= cmin <= 0.0,
        covariance=cov,
    )


def channel_two_qubit_state(cfg: ChannelConfig) -> np.ndarray:
    """product -> triplet projection -> symmetric embedding."""
    rho1, _ = triplet_projection(product_state(cfg))
    return symmetric_embedding(rho1)


def verdict(cfg: ChannelConfig, tol: float = DEFAULT_TOL) -> EntanglementVerdict:
    return state_verdict(channel_two_qubit_state(cfg), tol)


def _cov_min_at(p: float, theta: float) -> float:
    return verdict(ChannelConfig.from_slf(p, theta)).cov_min_eig


def _bisect(f, outside: float, inside: float) -> float:
    """Boundary between a point with f >= 0 and one with f < 0."""
    a, b = outside, inside
    while abs(b - a) > BISECTION_TOL:
        mid = 0.5 * (a + b)
        if f(mid) < 0.0:
            b = mid
        else:
            a = mid
    return 0.5 * (a + b)


def entangled_theta_intervals(p: float, resolution: int = 1000, tol: float = DEFAULT_TOL) -> list[ThetaInterval]:
    """Maximal theta-intervals in [0, pi/2] where the channel state is entangled.

    The grid has ``resolution`` steps; every change of verdict between grid
    points is refined by bisection on the covariance minimum eigenvalue.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p = {p} outside [0, 1]")
    if resolution < 100:
        raise DomainError("resolution must be at least 100")
    thetas = np.linspace(0.0, math.pi / 2, resolution + 1)
    values = [_cov_min_at(p, t) for t in thetas]
    inside = [v < -tol for v in values]

    def f(t):
        return _cov_min_at(p, t)

    intervals = []
    i = 0
    n = len(thetas)
    while i < n:
        if not inside[i]:
            i += 1
            continue
        start = i
        while i + 1 < n and inside[i + 1]:
            i += 1
        stop = i
        lo = thetas[0] if start == 0 else _bisect(f, thetas[start - 1], thetas[start])
        hi = thetas[-1] if stop == n - 1 else _bisect(f, thetas[stop + 1], thetas[stop])
        intervals.append(ThetaInterval(float(lo), float(hi)))
        i += 1
    return intervals


def entangled_measure(intervals: list[ThetaInterval]) -> float:
    return sum(iv.width for iv in intervals)
