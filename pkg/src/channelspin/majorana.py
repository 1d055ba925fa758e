"""Eigen-system of the channel spin-1 state and its Majorana constellations.

A spin-1 pure state sum_m C_m |1,m> is mapped to the polynomial
P(Z) = sum_k (-1)^k sqrt(binom(2j, k)) d_k Z^k, d_{j+m} = C_m, whose roots
Z = tan(alpha/2) exp(i beta) locate the constituent spinors on the Bloch
sphere. A root at infinity is the south pole.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from channelspin import spin_algebra as sa
from channelspin.channel_state import POLARIZATION_SLACK
from channelspin.errors import DegenerateGeometryError, DomainError, UnphysicalPolarizationError

TWO_PI = 2.0 * math.pi
POLE_TOL = 1e-12
ROOT_DEGREE_TOL = 1e-12
DEGENERACY_TOL = 1e-10
NORM_TOL = 1e-10


@dataclass(frozen=True)
class BlochPoint:
    alpha: float
    beta: float

    @property
    def cartesian(self) -> tuple[float, float, float]:
        sa_ = math.sin(self.alpha)
        return (sa_ * math.cos(self.beta), sa_ * math.sin(self.beta), math.cos(self.alpha))

    @property
    def spinor(self) -> np.ndarray:
        return np.array([math.cos(self.alpha / 2), math.sin(self.alpha / 2) * np.exp(1j * self.beta)])


def bloch_point(alpha: float, beta: float) -> BlochPoint:
    """Normalize to alpha in [0, pi], beta in [0, 2 pi); beta = 0 at the poles."""
    alpha = min(max(alpha, 0.0), math.pi)
    if alpha <= POLE_TOL or math.pi - alpha <= POLE_TOL:
        beta = 0.0
    else:
        beta = beta % TWO_PI
        if beta >= TWO_PI:
            beta = 0.0
    return BlochPoint(alpha, beta)


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in descending order with matching eigenvector columns.

    ``labels`` maps each sorted slot to the closed-form label (1, 2, 3) when
    the system comes from the closed form, else to its rank.
    """

    lambdas: np.ndarray
    vectors: np.ndarray
    labels: tuple = (1, 2, 3)
    degenerate: bool = False

    def vector(self, label: int) -> np.ndarray:
        return self.vectors[:, self.labels.index(label)]

    def value(self, label: int) -> float:
        return float(self.lambdas[self.labels.index(label)])


@dataclass(frozen=True)
class ConstellationEntry:
    weight: float
    points: tuple
    state: np.ndarray


@dataclass(frozen=True)
class Constellation:
    entries: tuple
    degenerate: bool = False

    @property
    def weights(self) -> list[float]:
        return [e.weight for e in self.entries]


def _check_p_theta(p: float, theta: float) -> None:
    if not 0.0 <= p <= 1.0 + POLARIZATION_SLACK:
        raise UnphysicalPolarizationError(f"p = {p} outside [0, 1]")
    if not 0.0 <= theta <= math.pi / 2 + 1e-15:
        raise DomainError(f"theta = {theta} outside [0, pi/2]")


def _block_terms(p: float, theta: float) -> tuple[float, float]:
    """(p^2 sin^2 theta, 2 p cos theta + R) with R the discriminant root.

    The eigenvector entries (1 + p cos)^2 - lam N equal -off^2 / g for the
    upper root and g for the lower one; this form avoids the cancellation
    of the direct difference at small p.
    """
    s2 = math.sin(theta) ** 2
    c = math.cos(theta)
    off = p * p * s2
    root = math.sqrt(off * off + 4 * p * p * c * c)
    return off, 2 * p * c + root


def _unit_real(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return sa.fix_phase(v / np.linalg.norm(v))


def channel_eigen_closed_form(p: float, theta: float) -> EigenSystem:
    """Closed-form spectrum and eigenvectors of the channel state in the SLF
    (equal beam and target magnitudes p, half opening angle theta)."""
    _check_p_theta(p, theta)
    p2 = p * p
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    n = 3.0 + p2 * math.cos(2 * theta)
    root = math.sqrt(p2 * p2 * s2 * s2 + 4 * p2 * c2)
    lam1 = (1 + p2 * c2 + root) / n
    lam2 = (1 + p2 * c2 - root) / n
    lam3 = (1 - p2) / n
    off, g = _block_terms(p, theta)
    if g > 0.0:
        # (off, 0, (1 + p cos)^2 - lam N) rescaled by g / off
        psi1 = _unit_real([g, 0.0, -off])
        psi2 = _unit_real([off, 0.0, g])
    else:
        # p = 0: every vector is an eigenvector
        psi1 = np.array([1, 0, 0], dtype=complex)
        psi2 = np.array([0, 0, 1], dtype=complex)
    vecs = {1: psi1, 2: psi2, 3: np.array([0, 1, 0], dtype=complex)}
    lams = {1: lam1, 2: lam2, 3: lam3}
    order = sorted(lams, key=lambda k: -lams[k])
    lambdas = np.array([lams[k] for k in order])
    vectors = np.column_stack([vecs[k] for k in order])
    gaps = np.abs(np.diff(lambdas))
    return EigenSystem(lambdas, vectors, tuple(order), bool(np.any(gaps < DEGENERACY_TOL)))


def numerical_eigen(rho1) -> EigenSystem:
    lambdas, vectors = sa.eig_hermitian(sa.as_cmatrix(rho1, dim=3))
    gaps = np.abs(np.diff(lambdas))
    return EigenSystem(lambdas, vectors, (1, 2, 3), bool(np.any(gaps < DEGENERACY_TOL)))


def majorana_polynomial(state) -> sa.ComplexPolynomial:
    """Majorana polynomial of a spin-j state given as C_m for m = j..-j."""
    c = np.asarray(state, dtype=complex)
    norm = np.linalg.norm(c)
    if norm == 0:
        raise DomainError("zero state has no Majorana representation")
    if abs(norm - 1.0) > NORM_TOL:
        raise DomainError(f"state is not normalized (|psi| = {norm:.12g})")
    two_j = len(c) - 1
    d = c[::-1]  # d_k with k = j + m
    coeffs = [(-1) ** k * math.sqrt(math.comb(two_j, k)) * d[k] for k in range(two_j + 1)]
    return sa.ComplexPolynomial(tuple(coeffs))


def _point_key(pt: BlochPoint) -> tuple[float, float]:
    # alphas equal up to rounding are ordered by beta
    return (round(pt.alpha, 10), pt.beta)


def _point_from_root(z: complex) -> BlochPoint:
    return bloch_point(2.0 * math.atan(abs(z)), math.atan2(z.imag, z.real))


def stellar_points(state) -> list[BlochPoint]:
    """The 2j Bloch-sphere points of a normalized spin-j state, sorted by
    (alpha, beta)."""
    roots, at_inf = sa.poly_roots(majorana_polynomial(state), tol=ROOT_DEGREE_TOL)
    points = [_point_from_root(z) for z in roots]
    points += [BlochPoint(math.pi, 0.0)] * at_inf
    return sorted(points, key=_point_key)


def state_from_points(points) -> np.ndarray:
    """Normalized symmetrized product of spinors, as C_m for m = j..-j.

    Phase is fixed so the largest component is real positive.
    """
    two_j = len(points)
    poly = np.array([1.0 + 0j])  # coefficients of prod_r (a_r Z - b_r), low power first
    for pt in points:
        a, b = pt.spinor
        poly = np.convolve(poly, np.array([-b, a]))
    d = np.array([poly[k] * (-1) ** k / math.sqrt(math.comb(two_j, k)) for k in range(two_j + 1)])
    c = d[::-1]
    return sa.fix_phase(c / np.linalg.norm(c))


def channel_spinor_angles(p: float, theta: float, which: int) -> list[BlochPoint]:
    """Spinor directions of the closed-form eigenvectors |psi_1> or |psi_2>.

    |psi_1> has both spinors in the x0-z0 plane (beta = 0, pi), |psi_2> in
    the y0-z0 plane (beta = pi/2, 3 pi/2).
    """
    _check_p_theta(p, theta)
    if which not in (1, 2):
        raise DomainError("which must be 1 or 2")
    s = math.sin(theta)
    if p == 0.0 or s == 0.0:
        raise DegenerateGeometryError("p sin(theta) = 0; use stellar_points on the eigenvector")
    off, g = _block_terms(p, theta)
    # ratio = ((1 + p cos)^2 - lam N) / (p^2 sin^2): -off/g for psi_1, g/off for psi_2
    ratio = -off / g if which == 1 else g / off
    alpha = 2.0 * math.atan(math.sqrt(abs(ratio)))
    betas = (0.0, math.pi) if which == 1 else (math.pi / 2, 3 * math.pi / 2)
    return sorted((bloch_point(alpha, b) for b in betas), key=_point_key)


def constellation(rho1) -> Constellation:
    """Numerical eigendecomposition of rho1 with stellar points per eigenvector."""
    eig = numerical_eigen(rho1)
    entries = tuple(
        ConstellationEntry(
            weight=float(eig.lambdas[i]),
            points=tuple(stellar_points(eig.vectors[:, i])),
            state=eig.vectors[:, i],
        )
        for i in range(3)
    )
    return Constellation(entries, eig.degenerate)
