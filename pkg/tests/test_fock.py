import numpy as np
import pytest

from fredkinsim import (
    DensityMatrix,
    DimensionError,
    ModeDims,
    StateVector,
    annihilation,
    basis_state,
    coherent_state,
    creation,
    displacement,
    expectation,
    fock_state,
    identity,
    number,
    parity,
    product_state,
    tensor3,
    unitarity_defect,
)
from oracles import coherent_overlap


class TestModeDims:
    def test_validation(self):
        with pytest.raises(DimensionError):
            ModeDims(1, 5, 5)
        with pytest.raises(DimensionError):
            ModeDims(2, 0, 5)
        with pytest.raises(DimensionError):
            ModeDims(50, 50, 50)  # 125000 > default cap
        ModeDims(50, 50, 50, cap=200000)  # configurable cap

    def test_index_round_trip(self):
        dims = ModeDims(2, 3, 4)
        seen = set()
        for ia in range(2):
            for ib in range(3):
                for ic in range(4):
                    i = dims.encode(ia, ib, ic)
                    assert dims.decode(i) == (ia, ib, ic)
                    seen.add(i)
        assert seen == set(range(dims.total))

    def test_number_diag(self):
        dims = ModeDims(2, 3, 2)
        nb = dims.number_diag("b")
        i = dims.encode(1, 2, 0)
        assert nb[i] == 2


class TestLadder:
    def test_annihilation_dim2(self):
        assert np.array_equal(annihilation(2), np.array([[0, 1], [0, 0]], dtype=complex))

    def test_sqrt_elements(self):
        a = annihilation(3)
        assert a[1, 2] == pytest.approx(np.sqrt(2))

    def test_number_operator_action(self):
        n = creation(4) @ annihilation(4)
        v = fock_state(4, 2)
        assert np.allclose(n @ v, 2 * v)

    def test_invalid_dim(self):
        with pytest.raises(DimensionError):
            annihilation(1)

    def test_commutator_on_interior(self):
        # [a, a^dag] = 1 exactly below the top two levels; deviation confined
        # to the highest level
        d = 9
        comm = annihilation(d) @ creation(d) - creation(d) @ annihilation(d)
        assert np.allclose(comm[: d - 2, : d - 2], np.eye(d - 2)[: d - 2, : d - 2])
        assert comm[d - 1, d - 1] == pytest.approx(1 - d)


class TestTensor3:
    def test_identity(self):
        dims = ModeDims(2, 2, 2)
        op = tensor3(dims)
        assert np.array_equal(op.matrix, np.eye(8))

    def test_number_eigenvalue(self):
        dims = ModeDims(2, 2, 2)
        n_a = tensor3(dims, op_a=number(2))
        v = basis_state(dims, (1, 0, 0))
        assert expectation(v, n_a) == pytest.approx(1.0)

    def test_embedded_commutator(self):
        dims = ModeDims(2, 6, 4)
        b = tensor3(dims, op_b=annihilation(6))
        comm = (b @ b.dag() - b.dag() @ b).matrix
        # identity wherever mode b is below its top level, deviation confined there
        for i in range(dims.total):
            ia, ib, ic = dims.decode(i)
            expect = 1.0 if ib < 5 else 1.0 - 6
            assert comm[i, i] == pytest.approx(expect)
        assert np.allclose(comm - np.diag(np.diag(comm)), 0.0)

    def test_distinct_modes_commute(self):
        # integer entries keep all float intermediates exact, so the
        # commutator must vanish bit-for-bit
        rng = np.random.default_rng(3)
        dims = ModeDims(2, 3, 3)
        mb = (rng.integers(-3, 4, (3, 3)) + 1j * rng.integers(-3, 4, (3, 3))).astype(complex)
        mc = (rng.integers(-3, 4, (3, 3)) + 1j * rng.integers(-3, 4, (3, 3))).astype(complex)
        ob = tensor3(dims, op_b=mb)
        oc = tensor3(dims, op_c=mc)
        assert np.array_equal((ob @ oc).matrix, (oc @ ob).matrix)

    def test_associativity_matches_direct_kron(self):
        # integer entries make both kron groupings exact, so equality is
        # bit-for-bit
        rng = np.random.default_rng(4)
        dims = ModeDims(2, 3, 4)
        ma = rng.integers(-3, 4, (2, 2)).astype(complex)
        mb = rng.integers(-3, 4, (3, 3)).astype(complex)
        mc = rng.integers(-3, 4, (4, 4)).astype(complex)
        direct = np.kron(ma, np.kron(mb, mc))
        assert np.array_equal(tensor3(dims, ma, mb, mc).matrix, direct)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionError):
            tensor3(ModeDims(2, 3, 3), op_b=np.eye(4))


class TestDisplacement:
    def test_zero_is_identity(self):
        assert np.allclose(displacement(12, 0.0), np.eye(12))

    def test_vacuum_matrix_element(self):
        d = displacement(30, 1.0)
        assert abs(d[0, 0] - np.exp(-0.5)) < 1e-8

    def test_inverse(self):
        d = displacement(25, 0.7)
        dm = displacement(25, -0.7)
        assert np.max(np.abs(d @ dm - np.eye(25))) < 1e-8

    def test_unitarity_within_comfort(self):
        for z in (0.5, 1.2j, 1.0 + 1.0j):
            assert unitarity_defect(displacement(25, z)) < 1e-8

    def test_warns_beyond_comfort(self):
        with pytest.warns(UserWarning, match="truncated"):
            displacement(8, 2.0)

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            displacement(8, complex("nan"))


class TestParity:
    def test_dim2(self):
        assert np.array_equal(parity(2), np.diag([1.0, -1.0]).astype(complex))

    def test_vacuum(self):
        v = fock_state(6, 0)
        assert np.vdot(v, parity(6) @ v) == pytest.approx(1.0)

    def test_coherent_expectation(self):
        alpha = 0.5
        v = coherent_state(25, alpha)
        got = np.vdot(v, parity(25) @ v)
        assert abs(got - np.exp(-2 * abs(alpha) ** 2)) < 1e-8


class TestCoherentState:
    def test_vacuum_limit(self):
        assert np.array_equal(coherent_state(10, 0.0), fock_state(10, 0))

    def test_overlap_formula(self):
        a, b = 0.3, 0.5j
        va = coherent_state(30, a)
        vb = coherent_state(30, b)
        assert abs(np.vdot(vb, va) - coherent_overlap(b, a)) < 1e-9

    def test_mean_photon_number(self):
        v = coherent_state(30, 1.0)
        n = np.vdot(v, number(30) @ v).real
        assert abs(n - 1.0) < 1e-6

    def test_unit_norm(self):
        assert np.linalg.norm(coherent_state(20, 1.3 - 0.4j)) == pytest.approx(1.0)


class TestStatesAndExpectation:
    def test_vacuum_number(self):
        dims = ModeDims(2, 4, 4)
        vac = basis_state(dims, (0, 0, 0))
        n_b = tensor3(dims, op_b=number(4))
        assert expectation(vac, n_b) == 0

    def test_maximally_mixed(self):
        dims = ModeDims(2, 2, 2)
        rho = DensityMatrix(np.eye(8) / 8.0, dims)
        assert expectation(rho, tensor3(dims)) == pytest.approx(1.0)

    def test_coherent_eigenvalue(self):
        dims = ModeDims(2, 30, 2)
        psi = product_state(dims, fock_state(2, 0), coherent_state(30, 0.8), fock_state(2, 0))
        b = tensor3(dims, op_b=annihilation(30))
        assert abs(expectation(psi, b) - 0.8) < 1e-8

    def test_norm_enforced(self):
        dims = ModeDims(2, 2, 2)
        with pytest.raises(ValueError):
            StateVector(np.ones(8), dims)
        sv = StateVector.from_amplitudes(np.ones(8), dims)
        assert sv.norm() == pytest.approx(1.0)

    def test_density_validation(self):
        dims = ModeDims(2, 2, 2)
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(8), dims)  # trace 8
        bad = np.eye(8) / 8.0
        bad[0, 1] = 0.1
        with pytest.raises(ValueError):
            DensityMatrix(bad, dims)  # not Hermitian

    def test_expectation_dim_mismatch(self):
        dims = ModeDims(2, 2, 2)
        other = ModeDims(2, 3, 2)
        with pytest.raises(DimensionError):
            expectation(basis_state(dims, (0, 0, 0)), tensor3(other))


def test_operators_immutable():
    op = tensor3(ModeDims(2, 2, 2))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5.0
