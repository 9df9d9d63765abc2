"""Dense operator and pure-state primitives.

All matrices are double-precision complex numpy arrays. ``HermitianOperator``
and ``PureState`` validate on construction and hold read-only copies, so they
can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidOperator, InvalidState

HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` (array-like or HermitianOperator) to a square complex array."""
    if isinstance(m, HermitianOperator):
        return m.matrix
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidOperator(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidOperator("matrix has non-finite entries")
    return arr


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        defect = hermiticity_defect(m)
        if defect > HERMITIAN_TOL:
            raise InvalidOperator(f"matrix is not Hermitian (defect {defect:.3e})")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> HermitianOperator:
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> HermitianOperator:
        return cls(np.zeros((dim, dim)))

    def __add__(self, other):
        if isinstance(other, HermitianOperator):
            _check_dims(self.dim, other.dim)
            return HermitianOperator(self.matrix + other.matrix)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, HermitianOperator):
            _check_dims(self.dim, other.dim)
            return HermitianOperator(self.matrix - other.matrix)
        return NotImplemented

    def __mul__(self, c):
        if isinstance(c, (int, float, np.floating, np.integer)):
            return HermitianOperator(float(c) * self.matrix)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return HermitianOperator(-self.matrix)

    def shifted(self, c: float) -> HermitianOperator:
        """Return ``self + c * I``."""
        return HermitianOperator(self.matrix + c * np.eye(self.dim))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        other = as_matrix(other)
        return other.shape == self.matrix.shape and bool(
            np.max(np.abs(self.matrix - other)) <= atol
        )


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex)
        if v.ndim != 1 or v.size < 1:
            raise InvalidState(f"expected a non-empty vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidState("state has non-finite amplitudes")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidState(f"state is not normalized (norm {norm!r})")
        object.__setattr__(self, "amplitudes", _frozen(v))

    @classmethod
    def normalized(cls, v) -> PureState:
        v = np.asarray(v, dtype=complex)
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or norm == 0.0:
            raise InvalidState("cannot normalize a zero or non-finite vector")
        return cls(v / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: PureState) -> complex:
        """<self|other>."""
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def _check_dims(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise DimensionError(f"dimension mismatch: {dims}")


def complex_expectation(m, psi: PureState) -> complex:
    """<psi|M|psi> for an arbitrary square matrix, real and imaginary parts kept."""
    m = as_matrix(m)
    _check_dims(m.shape[0], psi.dim)
    v = psi.amplitudes
    return complex(np.vdot(v, m @ v))


def expectation(a: HermitianOperator, psi: PureState) -> float:
    """Real expectation value of an observable."""
    if not isinstance(a, HermitianOperator):
        raise InvalidOperator("expectation requires a HermitianOperator")
    return complex_expectation(a.matrix, psi).real


def fluctuation(a: HermitianOperator, psi: PureState) -> HermitianOperator:
    """The deviation operator A - <A> I."""
    return a.shifted(-expectation(a, psi))


def variance(a: HermitianOperator, psi: PureState) -> float:
    """<(dA)^2>, evaluated as ||(A - <A>) psi||^2 and floored at zero."""
    if not isinstance(a, HermitianOperator):
        raise InvalidOperator("variance requires a HermitianOperator")
    _check_dims(a.dim, psi.dim)
    v = psi.amplitudes
    av = a.matrix @ v
    mean = np.vdot(v, av).real
    dv = av - mean * v
    return max(float(np.vdot(dv, dv).real), 0.0)


def uncertainty(a: HermitianOperator, psi: PureState) -> float:
    return float(np.sqrt(variance(a, psi)))


def _centered(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    return m - (np.trace(m) / n) * np.eye(n)


def commutator(a, b) -> np.ndarray:
    """[A, B] = AB - BA.

    Both arguments are shifted to zero trace first; the commutator is
    unchanged by identity shifts and this avoids rounding against a large
    diagonal offset.
    """
    a, b = as_matrix(a), as_matrix(b)
    _check_dims(a.shape[0], b.shape[0])
    a, b = _centered(a), _centered(b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    """{A, B} = AB + BA."""
    a, b = as_matrix(a), as_matrix(b)
    _check_dims(a.shape[0], b.shape[0])
    return a @ b + b @ a


def sym_antisym_split(
    a: HermitianOperator, b: HermitianOperator, psi: PureState
) -> tuple[float, float]:
    """Split <AB> into its symmetric and antisymmetric parts.

    Returns ``(s, a)`` with ``s = <{A,B}>/2`` (real) and ``a = |<[A,B]>/2|``.
    For Hermitian ``A, B``, ``|<AB>|^2 = s^2 + a^2``.
    """
    s = 0.5 * complex_expectation(anticommutator(a, b), psi).real
    anti = 0.5 * abs(complex_expectation(commutator(a, b), psi))
    return s, anti
