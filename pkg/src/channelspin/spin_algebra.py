"""Small complex-matrix kernel: Pauli matrices, Clebsch-Gordan coefficients,
irreducible tensor operators, Hermitian eigensolves and polynomial roots.

Matrices are plain ``numpy`` complex arrays. Basis orderings used throughout:

* spin-1/2:  |up>, |down>
* spin-1:    |1,+1>, |1,0>, |1,-1>
* two qubits: |up up>, |up down>, |down up>, |down down>
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from channelspin.errors import ContractError, DomainError

SQRT2 = math.sqrt(2.0)
MAX_DIM = 4
MAX_CG_SPIN = 2

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


# --------------------------------------------------------------------------
# matrix helpers
# --------------------------------------------------------------------------

def as_cmatrix(m, dim: int | None = None) -> np.ndarray:
    """Validate and copy ``m`` into a square complex array.

    Raises ContractError on a non-square shape, a dimension outside 2..4
    (or different from ``dim`` when given), or non-finite entries.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if not 2 <= n <= MAX_DIM:
        raise ContractError(f"matrix dimension {n} outside 2..{MAX_DIM}")
    if dim is not None and n != dim:
        raise ContractError(f"expected a {dim}x{dim} matrix, got {n}x{n}")
    if not np.all(np.isfinite(a)):
        raise ContractError("matrix has non-finite entries")
    a.setflags(write=False)
    return a


def is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_psd(m: np.ndarray, tol: float = -1e-10) -> bool:
    """True when the smallest eigenvalue of the Hermitian part is >= tol."""
    h = 0.5 * (m + m.conj().T)
    return bool(np.linalg.eigvalsh(h)[0] >= tol)


def trace(m: np.ndarray) -> complex:
    return complex(np.trace(m))


def pauli(axis: str) -> np.ndarray:
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise DomainError(f"unknown Pauli axis {axis!r}; use 'x', 'y' or 'z'") from None


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.shape[0] * b.shape[0]
    if n > MAX_DIM:
        raise DomainError(f"Kronecker product of dimension {n} exceeds {MAX_DIM}")
    return np.kron(a, b)


# --------------------------------------------------------------------------
# angular momentum coupling
# --------------------------------------------------------------------------

def _twice(x) -> int:
    """2*x as an exact integer; x must be an integer or half-integer."""
    f = Fraction(x).limit_denominator(4) if isinstance(x, float) else Fraction(x)
    t = 2 * f
    if t.denominator != 1 or abs(float(x) - float(f)) > 1e-12:
        raise DomainError(f"{x!r} is not an integer or half-integer")
    return int(t)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Condon-Shortley phase).

    Evaluated with the Racah closed form in exact rational arithmetic.
    Supported for spins up to 2; an out-of-range spin or a triangle
    violation raises DomainError. Projections outside ``|m| <= j`` or with
    ``M != m1 + m2`` give 0.
    """
    tj1, tm1, tj2, tm2, tJ, tM = (_twice(v) for v in (j1, m1, j2, m2, J, M))
    for tj in (tj1, tj2, tJ):
        if tj < 0 or tj > 2 * MAX_CG_SPIN:
            raise DomainError(f"spin {tj / 2} outside supported range 0..{MAX_CG_SPIN}")
    if not abs(tj1 - tj2) <= tJ <= tj1 + tj2 or (tj1 + tj2 + tJ) % 2:
        raise DomainError(f"({j1}, {j2}) cannot couple to {J}")
    if tm1 + tm2 != tM:
        return 0.0
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tJ, tM)):
        if abs(tm) > tj or (tj + tm) % 2:
            return 0.0

    f = math.factorial
    # all quantities below are integers: (2j +- 2m)/2 etc.
    a = (tj1 + tj2 - tJ) // 2
    b = (tj1 - tj2 + tJ) // 2
    c = (-tj1 + tj2 + tJ) // 2
    d = (tj1 + tj2 + tJ) // 2 + 1
    pref = Fraction((tJ + 1) * f(a) * f(b) * f(c), f(d))
    pref *= (
        f((tJ + tM) // 2) * f((tJ - tM) // 2)
        * f((tj1 - tm1) // 2) * f((tj1 + tm1) // 2)
        * f((tj2 - tm2) // 2) * f((tj2 + tm2) // 2)
    )

    total = Fraction(0)
    for k in range(0, a + 1):
        dens = (
            k,
            a - k,
            (tj1 - tm1) // 2 - k,
            (tj2 + tm2) // 2 - k,
            (tJ - tj2 + tm1) // 2 + k,
            (tJ - tj1 - tm2) // 2 + k,
        )
        if min(dens) < 0:
            continue
        den = 1
        for x in dens:
            den *= f(x)
        total += Fraction((-1) ** k, den)

    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * math.sqrt(pref * total * total)


def spin_projections(j) -> list[Fraction]:
    """Projections m = j, j-1, ..., -j (descending, matches basis order)."""
    tj = _twice(j)
    return [Fraction(tj - 2 * i, 2) for i in range(tj + 1)]


@dataclass(frozen=True)
class TensorOperatorSet:
    """Irreducible tensor operators tau^k_q for one spin, Madison normalized.

    ``ops[(k, q)]`` is a (2j+1)x(2j+1) complex matrix with
    Tr(tau^k_q^dag tau^k'_q') = (2j+1) delta_kk' delta_qq'.
    """

    j: Fraction
    ops: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return int(2 * self.j + 1)

    @property
    def ranks(self) -> range:
        return range(0, int(2 * self.j) + 1)

    def keys(self):
        return [(k, q) for k in self.ranks for q in range(-k, k + 1)]

    def __getitem__(self, kq) -> np.ndarray:
        return self.ops[kq]


_TENSOR_CACHE: dict[Fraction, TensorOperatorSet] = {}


def tensor_ops(j) -> TensorOperatorSet:
    """Madison-normalized tensor operators for j = 1/2 or j = 1.

    Matrix elements follow Wigner-Eckart,
    <j m'| tau^k_q |j m> = sqrt(2k+1) <j m; k q | j m'>,
    which makes tau^0_0 the identity and fixes Tr(tau^dag tau) = 2j+1.
    """
    jf = Fraction(_twice(j), 2)
    if jf not in (Fraction(1, 2), Fraction(1)):
        raise DomainError(f"tensor operators only for j = 1/2 or 1, got {j}")
    if jf in _TENSOR_CACHE:
        return _TENSOR_CACHE[jf]

    ms = spin_projections(jf)
    n = len(ms)
    ops = {}
    for k in range(0, int(2 * jf) + 1):
        norm = math.sqrt(2 * k + 1)
        for q in range(-k, k + 1):
            t = np.zeros((n, n), dtype=complex)
            for row, mp in enumerate(ms):
                for col, m in enumerate(ms):
                    t[row, col] = norm * clebsch_gordan(jf, m, k, q, jf, mp)
            t.setflags(write=False)
            ops[(k, q)] = t
    result = TensorOperatorSet(j=jf, ops=ops)
    _TENSOR_CACHE[jf] = result
    return result


def spherical_components(v) -> dict[int, complex]:
    """Spherical components v_0 = v_z, v_{+-1} = -+(v_x +- i v_y)/sqrt(2)."""
    x, y, z = (float(c) for c in v)
    return {
        1: -(x + 1j * y) / SQRT2,
        0: complex(z),
        -1: (x - 1j * y) / SQRT2,
    }


def rank2_product(a, b, q: int) -> complex:
    """Rank-2 spherical coupling (a (x) b)^2_q of two real 3-vectors."""
    if abs(q) > 2:
        raise DomainError(f"q={q} outside -2..2")
    sa = spherical_components(a)
    sb = spherical_components(b)
    total = 0j
    for mu in (-1, 0, 1):
        nu = q - mu
        if abs(nu) > 1:
            continue
        total += clebsch_gordan(1, mu, 1, nu, 2, q) * sa[mu] * sb[nu]
    return total


# --------------------------------------------------------------------------
# eigensolver and polynomial roots
# --------------------------------------------------------------------------

def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude entry is real positive."""
    v = np.asarray(v, dtype=complex)
    i = int(np.argmax(np.abs(v)))
    if abs(v[i]) == 0:
        return v.copy()
    return v * (abs(v[i]) / v[i])


def eig_hermitian(m, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors (columns).

    Each eigenvector is phase-fixed so its largest component is real positive.
    """
    a = as_cmatrix(m)
    if not is_hermitian(a, tol):
        raise ContractError("eig_hermitian requires a Hermitian matrix")
    h = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(h)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    for col in range(v.shape[1]):
        v[:, col] = fix_phase(v[:, col])
    return w, v


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial sum_k coeffs[k] Z^k with a fixed nominal degree.

    Trailing (leading-power) zero coefficients are kept: a drop in actual
    degree is meaningful and shows up as roots at infinity.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def nominal_degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _sort_roots(roots) -> list[complex]:
    return sorted((complex(r) for r in roots), key=lambda r: (r.real, r.imag))


def poly_roots(p: ComplexPolynomial, tol: float = 0.0) -> tuple[list[complex], int]:
    """Finite roots and the number of roots at infinity.

    Leading coefficients with ``|c| <= tol * max|c|`` count as zero, each one
    adding a root at infinity. Degree <= 2 is solved in closed form (stable
    quadratic); higher degrees use companion-matrix eigenvalues.
    """
    if p.nominal_degree < 1:
        raise DomainError("polynomial must have nominal degree >= 1")
    c = list(p.coeffs)
    scale = max(abs(x) for x in c)
    if scale == 0:
        raise DomainError("all coefficients are zero")
    cut = tol * scale
    deg = p.nominal_degree
    while abs(c[deg]) <= cut:
        deg -= 1
    at_inf = p.nominal_degree - deg
    c = c[: deg + 1]

    if deg == 0:
        roots: list[complex] = []
    elif deg == 1:
        roots = [-c[0] / c[1]]
    elif deg == 2:
        a, b, cc = c[2], c[1], c[0]
        disc = cmath.sqrt(b * b - 4 * a * cc)
        # pick the sign that avoids cancellation in b +- disc
        if (b.conjugate() * disc).real < 0:
            disc = -disc
        qq = -0.5 * (b + disc)
        if qq == 0:
            roots = [0j, 0j]
        else:
            roots = [qq / a, cc / qq]
    else:
        comp = np.zeros((deg, deg), dtype=complex)
        comp[1:, :-1] = np.eye(deg - 1)
        comp[:, -1] = -np.array(c[:deg]) / c[deg]
        roots = list(np.linalg.eigvals(comp))
    return _sort_roots(roots), at_inf
