import numpy as np
import pytest

from stabcom import oracle
from stabcom.circuit_io import PERES_MERMIN_PRODUCTS, demo, parse, random_circuit, random_pauli
from stabcom.pauli import parse_pauli as P


def ghz():
    return oracle.StateVector.zero(3).apply_gate("h", 0).apply_gate("cnot", 0, 1).apply_gate("cnot", 0, 2)


class TestMatrices:
    def test_y(self):
        assert np.allclose(oracle.pauli_matrix(P("+Y")), [[0, -1j], [1j, 0]])

    def test_minus_zz(self):
        assert np.allclose(oracle.pauli_matrix(P("-ZZ")), np.diag([-1, 1, 1, -1]))

    def test_leftmost_is_most_significant(self):
        assert np.allclose(oracle.pauli_matrix(P("ZI")), np.diag([1, 1, -1, -1]))

    def test_cnot_matrix(self):
        expected = np.eye(4)[[0, 1, 3, 2]]
        assert np.allclose(oracle.gate_matrix("cnot", (0, 1), 2), expected)
        assert np.allclose(oracle.gate_matrix("cnot", (1, 0), 2), np.eye(4)[[0, 3, 2, 1]])

    def test_gates_unitary(self):
        for name, qs in [("h", (1,)), ("s", (0,)), ("cnot", (2, 0))]:
            U = oracle.gate_matrix(name, qs, 3)
            assert np.allclose(U @ U.conj().T, np.eye(8))

    def test_apply_pauli_matches_matrix(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 5))
            psi = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
            p = random_pauli(n, rng)
            assert np.allclose(oracle.apply_pauli(psi, p), oracle.pauli_matrix(p) @ psi)

    def test_multiply_closure(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 4))
            a, b = random_pauli(n, rng), random_pauli(n, rng)
            assert np.allclose(oracle.pauli_matrix(a * b), oracle.pauli_matrix(a) @ oracle.pauli_matrix(b))


class TestMeasure:
    def test_zero_state_z(self):
        assert oracle.measure_pauli(oracle.StateVector.zero(1), P("Z")).p_plus == pytest.approx(1.0)

    def test_bell_iz(self):
        sv = oracle.StateVector.zero(2).apply_gate("h", 0).apply_gate("cnot", 0, 1)
        res = oracle.measure_pauli(sv, P("IZ"))
        assert res.p_plus == pytest.approx(0.5)
        assert res.plus.expectation(P("ZI")) == pytest.approx(1.0)
        assert res.minus.expectation(P("ZI")) == pytest.approx(-1.0)

    def test_ghz_xyy(self):
        res = oracle.measure_pauli(ghz(), P("XYY"))
        assert res.p_plus == pytest.approx(0.0, abs=1e-12)
        assert res.plus is None

    def test_ghz_xxx(self):
        assert ghz().expectation(P("XXX")) == pytest.approx(1.0)

    def test_rejects_identity_and_mismatch(self):
        sv = oracle.StateVector.zero(2)
        with pytest.raises(ValueError):
            oracle.measure_pauli(sv, P("-II"))
        with pytest.raises(ValueError):
            oracle.measure_pauli(sv, P("Z"))

    def test_norm_preserved(self, rng):
        for _ in range(30):
            c = random_circuit(3, 20, 0, rng)
            sv = oracle.StateVector.zero(3)
            for g in c.gates:
                sv = sv.apply_gate(g.name, *g.qubits)
            assert sv.norm() == pytest.approx(1.0, abs=oracle.NORM_TOL)
            res = oracle.measure_pauli(sv, random_pauli(3, rng))
            for b in (res.plus, res.minus):
                if b is not None:
                    assert b.norm() == pytest.approx(1.0, abs=1e-9)


class TestDistribution:
    def test_bell(self):
        dist = oracle.run_circuit_distribution(demo("bell"))
        assert dist.keys() == {(1, 1), (-1, -1)}
        assert dist[1, 1] == pytest.approx(0.5)

    def test_no_measurements(self):
        assert oracle.run_circuit_distribution(parse("qubits 2\nh 1\n")) == {(): 1.0}

    @pytest.mark.parametrize("ctx,product", sorted(PERES_MERMIN_PRODUCTS.items()))
    def test_peres_mermin(self, ctx, product):
        dist = oracle.run_circuit_distribution(demo(f"peres-mermin-{ctx}"))
        assert sum(dist.values()) == pytest.approx(1.0)
        for outcome in dist:
            assert np.prod(outcome) == product

    def test_sums_to_one(self, rng):
        for _ in range(30):
            dist = oracle.run_circuit_distribution(random_circuit(3, 15, 5, rng))
            assert sum(dist.values()) == pytest.approx(1.0)
            for p in dist.values():
                # stabilizer measurements only ever give dyadic probabilities
                assert p * 2 ** 5 == pytest.approx(round(p * 2 ** 5))

    def test_cap(self):
        with pytest.raises(oracle.OracleCapError):
            oracle.run_circuit_distribution(parse("qubits 13\nmeasure " + "Z" * 13))
        with pytest.raises(oracle.OracleCapError):
            oracle.pauli_matrix(P("ZZZ"), cap=2)
