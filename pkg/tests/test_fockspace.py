import numpy as np
import pytest

from jtrwa import (
    BasisSpec,
    Hermiticity,
    OperatorMatrix,
    SPIN_DOWN,
    SPIN_UP,
    boson_ops,
    identity_op,
    interior_projector,
    make_basis,
    number_projector,
    pauli_ops,
)


def test_per_mode_dimension():
    assert make_basis(BasisSpec.per_mode(1, 1)).dimension == 8


def test_total_number_dimension():
    assert make_basis(BasisSpec.total_number(2)).dimension == 12


@pytest.mark.parametrize(
    "spec", [BasisSpec.per_mode(3, 2), BasisSpec.total_number(4)]
)
def test_index_roundtrip_is_bijection(spec):
    basis = make_basis(spec)
    seen = set()
    for k in range(basis.dimension):
        state = basis.state(k)
        assert basis.index(*state) == k
        seen.add(state)
    assert len(seen) == basis.dimension == spec.dimension


def test_ordering_is_spin_major_then_lexicographic():
    basis = make_basis(BasisSpec.per_mode(1, 1))
    assert basis.states == (
        (SPIN_UP, 0, 0), (SPIN_UP, 0, 1), (SPIN_UP, 1, 0), (SPIN_UP, 1, 1),
        (SPIN_DOWN, 0, 0), (SPIN_DOWN, 0, 1), (SPIN_DOWN, 1, 0), (SPIN_DOWN, 1, 1),
    )


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_invalid_cutoff_rejected(bad):
    with pytest.raises(ValueError):
        BasisSpec.per_mode(bad, 1)
    with pytest.raises(ValueError):
        BasisSpec(BasisSpec.per_mode(1, 1).truncation, 1, bad)


def test_index_outside_basis_rejected():
    basis = make_basis(BasisSpec.per_mode(1, 1))
    with pytest.raises(ValueError):
        basis.index(SPIN_UP, 2, 0)


def test_annihilation_matrix_element():
    basis = make_basis(BasisSpec.per_mode(2, 2))
    a1, _ = boson_ops(basis, 1)
    row = basis.index(SPIN_UP, 0, 0)
    col = basis.index(SPIN_UP, 1, 0)
    assert a1.entries[row, col] == 1.0


def test_creation_is_exact_adjoint():
    basis = make_basis(BasisSpec.total_number(3))
    for mode in (1, 2):
        a, a_dag = boson_ops(basis, mode)
        assert np.array_equal(a_dag.entries, a.entries.conj().T)


@pytest.mark.parametrize(
    "spec", [BasisSpec.per_mode(4, 3), BasisSpec.total_number(5)]
)
def test_interior_canonical_commutator(spec):
    basis = make_basis(spec)
    proj = interior_projector(basis, margin=1).entries
    eye = np.eye(basis.dimension)
    for mode in (1, 2):
        a, a_dag = boson_ops(basis, mode)
        comm = a.entries @ a_dag.entries - a_dag.entries @ a.entries
        assert np.abs(proj @ (comm - eye) @ proj).max() <= 1e-14


def test_distinct_modes_commute_exactly():
    basis = make_basis(BasisSpec.per_mode(3, 3))
    a1, _ = boson_ops(basis, 1)
    a2, a2_dag = boson_ops(basis, 2)
    assert np.abs(a1.entries @ a2_dag.entries - a2_dag.entries @ a1.entries).max() == 0.0
    assert np.abs(a1.entries @ a2.entries - a2.entries @ a1.entries).max() == 0.0


def test_tensor_locality_spin_vs_boson():
    basis = make_basis(BasisSpec.per_mode(3, 2))
    sp, sm, s0 = pauli_ops(basis)
    for mode in (1, 2):
        a, _ = boson_ops(basis, mode)
        for sigma in (sp, sm, s0):
            assert np.abs(a.entries @ sigma.entries - sigma.entries @ a.entries).max() <= 1e-14


def test_sigma0_conjugation_flips_ladder_sign():
    basis = make_basis(BasisSpec.per_mode(2, 2))
    sp, sm, s0 = pauli_ops(basis)
    s0_inv = np.linalg.inv(s0.entries)
    assert np.abs(s0.entries @ sp.entries @ s0_inv + sp.entries).max() <= 1e-14
    assert np.abs(s0.entries @ sm.entries @ s0_inv + sm.entries).max() <= 1e-14


def test_spin_half_algebra():
    basis = make_basis(BasisSpec.per_mode(2, 2))
    sp, sm, s0 = pauli_ops(basis)
    eye = np.eye(basis.dimension)
    assert np.abs(sp.entries @ sm.entries + sm.entries @ sp.entries - eye).max() <= 1e-14
    assert np.abs(s0.entries @ s0.entries - eye).max() <= 1e-14
    assert np.array_equal(sp.dagger().entries, sm.entries)


def test_sigma0_eigenvalue_multiplicities():
    basis = make_basis(BasisSpec.total_number(3))
    _, _, s0 = pauli_ops(basis)
    vals = np.sort(np.linalg.eigvalsh(s0.entries))
    half = basis.dimension // 2
    assert np.allclose(vals[:half], -1.0)
    assert np.allclose(vals[half:], 1.0)


def test_hint_validation_catches_lies():
    basis = make_basis(BasisSpec.per_mode(1, 1))
    m = np.zeros((8, 8))
    m[0, 1] = 1.0
    lying = OperatorMatrix(basis, m, Hermiticity.HERMITIAN)
    with pytest.raises(ValueError, match="hermitian"):
        lying.validate()
    identity_op(basis).validate()


def test_entries_are_immutable():
    basis = make_basis(BasisSpec.per_mode(1, 1))
    op = identity_op(basis)
    with pytest.raises(ValueError):
        op.entries[0, 0] = 2.0


def test_triplet_view_roundtrip():
    basis = make_basis(BasisSpec.per_mode(2, 1))
    a1, _ = boson_ops(basis, 1)
    rows, cols, vals = a1.to_triplets()
    rebuilt = np.zeros_like(a1.entries)
    rebuilt[rows, cols] = vals
    assert np.array_equal(rebuilt, a1.entries)
    assert len(vals) == np.count_nonzero(a1.entries)


def test_operations_demand_matching_bases():
    a = identity_op(make_basis(BasisSpec.per_mode(1, 1)))
    b = identity_op(make_basis(BasisSpec.per_mode(2, 2)))
    with pytest.raises(ValueError, match="different bases"):
        _ = a @ b


def test_number_projector_bounds():
    basis = make_basis(BasisSpec.per_mode(3, 3))
    proj = number_projector(basis, max_n1=1, max_total=2)
    for k, (_, n1, n2) in enumerate(basis.states):
        expected = 1.0 if (n1 <= 1 and n1 + n2 <= 2) else 0.0
        assert proj.entries[k, k] == expected
