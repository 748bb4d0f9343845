"""Truncated spin-1/2 x two-mode Fock space and its elementary operators.

Basis convention: states |s, n1, n2> are ordered spin-major (all spin-up
states first, then all spin-down), then lexicographically by (n1, n2).
With sigma_0 = diag(1, -1) the spin-up block therefore occupies the first
half of every matrix.

Two truncation schemes are supported:

* per-mode: independent cutoffs n1 <= n_max_1, n2 <= n_max_2;
* total-number: a shared bound n1 + n2 <= N, which closes exactly under
  any operation that conserves the total boson number.

All constructed operators carry a reference to their basis and are
immutable after construction (the entry arrays are marked read-only), so
they can be shared freely between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

SPIN_UP = 1
SPIN_DOWN = -1


class Truncation(Enum):
    PER_MODE = "per-mode"
    TOTAL_NUMBER = "total-number"


class Hermiticity(Enum):
    """Advisory structure hint for an operator matrix, validated on demand."""

    HERMITIAN = "hermitian"
    ANTI_HERMITIAN = "anti-hermitian"
    UNITARY = "unitary"
    GENERAL = "general"


@dataclass(frozen=True)
class BasisSpec:
    """Defining data of a truncated basis.

    For TOTAL_NUMBER truncation both per-mode fields hold the shared bound.
    """

    truncation: Truncation
    n_max_1: int
    n_max_2: int

    def __post_init__(self) -> None:
        for name in ("n_max_1", "n_max_2"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.truncation is Truncation.TOTAL_NUMBER and self.n_max_1 != self.n_max_2:
            raise ValueError("total-number truncation uses a single shared cutoff")

    @classmethod
    def per_mode(cls, n_max_1: int, n_max_2: int | None = None) -> "BasisSpec":
        if n_max_2 is None:
            n_max_2 = n_max_1
        return cls(Truncation.PER_MODE, n_max_1, n_max_2)

    @classmethod
    def total_number(cls, n_max: int) -> "BasisSpec":
        return cls(Truncation.TOTAL_NUMBER, n_max, n_max)

    @property
    def cutoff(self) -> int:
        """Single identifying cutoff: the total bound, or max per-mode cutoff."""
        return max(self.n_max_1, self.n_max_2)

    @property
    def dimension(self) -> int:
        if self.truncation is Truncation.PER_MODE:
            return 2 * (self.n_max_1 + 1) * (self.n_max_2 + 1)
        n = self.n_max_1
        return (n + 1) * (n + 2)  # 2 * (n+1)(n+2)/2


@dataclass(frozen=True, eq=False)
class Basis:
    """Enumerated basis with a bijective index map state <-> position."""

    spec: BasisSpec
    states: tuple[tuple[int, int, int], ...]
    _index: dict = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.states)

    def index(self, spin: int, n1: int, n2: int) -> int:
        try:
            return self._index[(spin, n1, n2)]
        except KeyError:
            raise ValueError(f"state (s={spin}, n1={n1}, n2={n2}) outside basis") from None

    def state(self, k: int) -> tuple[int, int, int]:
        return self.states[k]

    def contains(self, spin: int, n1: int, n2: int) -> bool:
        return (spin, n1, n2) in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Basis) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)


def make_basis(spec: BasisSpec) -> Basis:
    """Enumerate the basis states of `spec` in the fixed canonical order."""
    states: list[tuple[int, int, int]] = []
    for spin in (SPIN_UP, SPIN_DOWN):
        for n1 in range(spec.n_max_1 + 1):
            if spec.truncation is Truncation.TOTAL_NUMBER:
                n2_top = spec.n_max_2 - n1
            else:
                n2_top = spec.n_max_2
            for n2 in range(n2_top + 1):
                states.append((spin, n1, n2))
    index = {state: k for k, state in enumerate(states)}
    basis = Basis(spec, tuple(states), index)
    assert basis.dimension == spec.dimension
    return basis


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex matrix tagged with its basis and a structure hint.

    The constructor takes ownership of `entries` and marks the stored
    array read-only; pass a copy if the caller needs to keep mutating it.
    """

    basis: Basis
    entries: np.ndarray
    hint: Hermiticity = Hermiticity.GENERAL

    def __post_init__(self) -> None:
        entries = np.ascontiguousarray(self.entries, dtype=np.complex128)
        dim = self.basis.dimension
        if entries.shape != (dim, dim):
            raise ValueError(f"entries shape {entries.shape} does not match basis dimension {dim}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.basis, self.entries.conj().T, self.hint)

    def validate(self, tol: float = 1e-12) -> float:
        """Check the structure hint; returns the deviation, raises if violated."""
        m = self.entries
        if self.hint is Hermiticity.HERMITIAN:
            dev = np.abs(m - m.conj().T).max()
        elif self.hint is Hermiticity.ANTI_HERMITIAN:
            dev = np.abs(m + m.conj().T).max()
        elif self.hint is Hermiticity.UNITARY:
            dev = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()
        else:
            return 0.0
        if dev > tol:
            raise ValueError(f"matrix violates {self.hint.value} hint: deviation {dev:.3e} > {tol:.1e}")
        return float(dev)

    def to_triplets(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Sparse COO view (rows, cols, values) of the nonzero entries."""
        rows, cols = np.nonzero(self.entries)
        return rows, cols, self.entries[rows, cols]

    def _check_same_basis(self, other: "OperatorMatrix") -> None:
        if self.basis != other.basis:
            raise ValueError("operators live on different bases")

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_same_basis(other)
        hint = self.hint if self.hint is other.hint and self.hint in (
            Hermiticity.HERMITIAN, Hermiticity.ANTI_HERMITIAN) else Hermiticity.GENERAL
        return OperatorMatrix(self.basis, self.entries + other.entries, hint)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self + (-other)

    def __neg__(self) -> "OperatorMatrix":
        hint = self.hint if self.hint in (Hermiticity.HERMITIAN, Hermiticity.ANTI_HERMITIAN) \
            else Hermiticity.GENERAL
        return OperatorMatrix(self.basis, -self.entries, hint)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        scalar = complex(scalar)
        if scalar.imag == 0.0 and self.hint in (Hermiticity.HERMITIAN, Hermiticity.ANTI_HERMITIAN):
            hint = self.hint
        else:
            hint = Hermiticity.GENERAL
        return OperatorMatrix(self.basis, scalar * self.entries, hint)

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_same_basis(other)
        return OperatorMatrix(self.basis, self.entries @ other.entries)


def identity_op(basis: Basis) -> OperatorMatrix:
    return OperatorMatrix(basis, np.eye(basis.dimension), Hermiticity.HERMITIAN)


def boson_ops(basis: Basis, mode: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Annihilation and creation matrices for one mode.

    a|n> = sqrt(n)|n-1> within the cutoff; the creation matrix is the exact
    conjugate transpose of the annihilation matrix.
    """
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode}")
    dim = basis.dimension
    a = np.zeros((dim, dim), dtype=np.complex128)
    for k, (spin, n1, n2) in enumerate(basis.states):
        if mode == 1 and n1 >= 1:
            a[basis.index(spin, n1 - 1, n2), k] = np.sqrt(n1)
        elif mode == 2 and n2 >= 1:
            a[basis.index(spin, n1, n2 - 1), k] = np.sqrt(n2)
    ann = OperatorMatrix(basis, a)
    return ann, ann.dagger()


def pauli_ops(basis: Basis) -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """(sigma_plus, sigma_minus, sigma_0), each tensored with the boson identity."""
    dim = basis.dimension
    sp = np.zeros((dim, dim), dtype=np.complex128)
    s0 = np.zeros((dim, dim), dtype=np.complex128)
    for k, (spin, n1, n2) in enumerate(basis.states):
        s0[k, k] = float(spin)
        if spin == SPIN_DOWN:
            sp[basis.index(SPIN_UP, n1, n2), k] = 1.0
    sigma_plus = OperatorMatrix(basis, sp)
    return sigma_plus, sigma_plus.dagger(), OperatorMatrix(basis, s0, Hermiticity.HERMITIAN)


def number_projector(
    basis: Basis,
    max_n1: int | None = None,
    max_n2: int | None = None,
    max_total: int | None = None,
) -> OperatorMatrix:
    """Diagonal 0/1 projector onto states satisfying every given occupation bound."""
    diag = np.ones(basis.dimension)
    for k, (_, n1, n2) in enumerate(basis.states):
        if max_n1 is not None and n1 > max_n1:
            diag[k] = 0.0
        if max_n2 is not None and n2 > max_n2:
            diag[k] = 0.0
        if max_total is not None and n1 + n2 > max_total:
            diag[k] = 0.0
    return OperatorMatrix(basis, np.diag(diag), Hermiticity.HERMITIAN)


def interior_projector(basis: Basis, margin: int = 1) -> OperatorMatrix:
    """Projector that drops the top `margin` occupation layers of the truncation.

    Operator identities of the untruncated algebra hold exactly on this
    interior; errors accumulate only in the discarded boundary layers.
    """
    if margin < 0:
        raise ValueError("margin must be non-negative")
    spec = basis.spec
    if spec.truncation is Truncation.TOTAL_NUMBER:
        return number_projector(basis, max_total=spec.n_max_1 - margin)
    return number_projector(basis, max_n1=spec.n_max_1 - margin, max_n2=spec.n_max_2 - margin)
