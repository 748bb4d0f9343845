"""Discrete symmetry operators and spectral reality analysis of the
imaginary-coupling Hamiltonian.

Antilinear operators are kept as (matrix, conjugation-flag) pairs and are
never folded into plain matrices: conjugating a Hamiltonian by an
antilinear operator must conjugate the Hamiltonian's entries, and a
matrix-only representation would silently compute the wrong thing.

The combined parity/time-reversal map used by check_pt follows the
convention in which time reversal flips every spin component and both
boson quadrature signs, so that parity and time reversal cancel on the
ladder operators.  Its net action conjugates all entries, swaps the two
spin-diagonal blocks, and negates the spin-flip blocks.  That map is a
well-defined antilinear superoperator but is not the conjugation by any
single matrix; the plain -i sigma_y K time reversal exchanges raising and
lowering operators instead and does NOT leave the number-conserving
coupling invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .fockspace import Basis, Hermiticity, OperatorMatrix, SPIN_DOWN, SPIN_UP
from .models import ModelParams, build_nonhermitian
from .spectra import diagonalize

REALITY_TOL = 1e-8  # reality detection threshold, two orders above solver dust


@dataclass(frozen=True)
class AntilinearOp:
    """Antilinear operator acting as v -> matrix_part @ conj(v)."""

    matrix_part: OperatorMatrix
    conjugates: bool = True

    def apply(self, vector: np.ndarray) -> np.ndarray:
        vec = np.conj(vector) if self.conjugates else np.asarray(vector)
        return self.matrix_part.entries @ vec

    def conjugate_operator(self, op: OperatorMatrix) -> OperatorMatrix:
        """Linear operator equal to A O A^-1 for this antilinear A."""
        if op.basis != self.matrix_part.basis:
            raise ValueError("operator and antilinear map live on different bases")
        m = self.matrix_part.entries
        inner = op.entries.conj() if self.conjugates else op.entries
        return OperatorMatrix(op.basis, m @ inner @ np.linalg.inv(m))


def parity_op(basis: Basis) -> OperatorMatrix:
    """Boson parity (-1)^(n1+n2), identity on spin; squares to the identity."""
    diag = np.array([(-1.0) ** (n1 + n2) for (_, n1, n2) in basis.states])
    return OperatorMatrix(basis, np.diag(diag), Hermiticity.HERMITIAN)


def time_reversal_op(basis: Basis) -> AntilinearOp:
    """Spin-1/2 time reversal -i sigma_y K, boson identity on the mode factors.

    Applying it twice to any real vector gives minus the vector.
    """
    dim = basis.dimension
    m = np.zeros((dim, dim), dtype=np.complex128)
    for k, (spin, n1, n2) in enumerate(basis.states):
        if spin == SPIN_UP:
            m[basis.index(SPIN_DOWN, n1, n2), k] = 1.0
        else:
            m[basis.index(SPIN_UP, n1, n2), k] = -1.0
    return AntilinearOp(OperatorMatrix(basis, m, Hermiticity.UNITARY), conjugates=True)


def pt_transform(h: OperatorMatrix) -> OperatorMatrix:
    """Combined parity/time-reversal image of h (see module docstring).

    Blockwise over the spin-major layout: diagonal spin blocks are
    conjugated and swapped, off-diagonal spin blocks are conjugated and
    negated in place.
    """
    half = h.dimension // 2
    m = h.entries
    out = np.empty_like(m)
    out[:half, :half] = m[half:, half:].conj()
    out[half:, half:] = m[:half, :half].conj()
    out[:half, half:] = -m[:half, half:].conj()
    out[half:, :half] = -m[half:, :half].conj()
    return OperatorMatrix(h.basis, out)


def check_pt(h: OperatorMatrix) -> float:
    """Frobenius norm of (PT) h (PT)^-1 - h under the combined map.

    For the imaginary-coupling Hamiltonian the image differs from h only in
    the sign of the omega0 sigma0 term, so the residual equals
    2|omega0| sqrt(dim) and vanishes at omega0 = 0.
    """
    return float(np.linalg.norm(pt_transform(h).entries - h.entries, "fro"))


def check_pseudo_hermitian(h: OperatorMatrix, eta: OperatorMatrix) -> float:
    """Frobenius norm of eta h eta^-1 - h^dagger for an invertible Hermitian metric."""
    if h.basis != eta.basis:
        raise ValueError("Hamiltonian and metric live on different bases")
    e = eta.entries
    dev = np.abs(e - e.conj().T).max()
    if dev > 1e-12:
        raise ValueError(f"metric is not Hermitian (deviation {dev:.3e})")
    try:
        condition = np.linalg.cond(e)
    except np.linalg.LinAlgError:
        condition = np.inf
    if not np.isfinite(condition) or condition > 1e12:
        raise ValueError("metric is singular or numerically non-invertible")
    eta_inv = np.linalg.inv(e)
    return float(np.linalg.norm(e @ h.entries @ eta_inv - h.entries.conj().T, "fro"))


def check_combined_symmetry(h: OperatorMatrix) -> float:
    """Frobenius norm of the commutator [h, P sigma0].

    Pseudo-Hermiticity with respect to two metrics implies symmetry under
    their ratio; for the imaginary-coupling Hamiltonian P sigma0 commutes
    with h for every gamma.
    """
    from .fockspace import pauli_ops

    _, _, s0 = pauli_ops(h.basis)
    g = parity_op(h.basis).entries @ s0.entries
    return float(np.linalg.norm(h.entries @ g - g @ h.entries, "fro"))


def conjugation_closure(eigenvalues: np.ndarray) -> float:
    """Largest matching distance between a spectrum and its complex conjugate.

    Uses an optimal assignment so that exactly degenerate real parts (which
    a lexicographic sort may order differently in the two sets) do not
    produce spurious mismatches.
    """
    vals = np.asarray(eigenvalues, dtype=np.complex128)
    cost = np.abs(vals[:, None] - vals.conj()[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@dataclass(frozen=True)
class RealityReport:
    """Reality of the k lowest-by-real-part levels across a gamma grid.

    detected_threshold is the first grid value whose low-lying spectrum
    acquires an imaginary part beyond REALITY_TOL, or None if reality
    survives the whole scanned range.
    """

    gamma_values: tuple[float, ...]
    max_imag_lowk: tuple[float, ...]
    k: int
    detected_threshold: float | None
    basis: Basis

    def __post_init__(self) -> None:
        if len(self.gamma_values) != len(self.max_imag_lowk):
            raise ValueError("gamma grid and imaginary-part lists must have equal length")


def reality_scan(
    params_template: ModelParams,
    basis: Basis,
    gamma_grid,
    k: int = 4,
) -> RealityReport:
    """Diagonalize the imaginary-coupling Hamiltonian along a gamma grid.

    Records max |Im| over the k lowest-by-real-part eigenvalues per grid
    point and detects the first reality-breaking gamma.  The lowest coupled
    block breaks at gamma^2 = (omega - 2 omega0)^2 / 8, which the detected
    threshold matches to within one grid step.
    """
    gammas = [float(g) for g in gamma_grid]
    if not gammas:
        raise ValueError("gamma grid must not be empty")
    if any(g < 0 for g in gammas):
        raise ValueError("gamma values must be non-negative")
    if any(b <= a for a, b in zip(gammas, gammas[1:])):
        raise ValueError("gamma grid must be strictly ascending")
    if k < 1:
        raise ValueError("k must be at least 1")

    max_imag: list[float] = []
    threshold: float | None = None
    for gamma in gammas:
        h = build_nonhermitian(replace(params_template, gamma=gamma), basis)
        spectrum = diagonalize(h)
        low = spectrum.eigenvalues[:k]
        worst = float(np.abs(low.imag).max())
        max_imag.append(worst)
        if threshold is None and worst > REALITY_TOL:
            threshold = gamma
    return RealityReport(tuple(gammas), tuple(max_imag), k, threshold, basis)
