import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabcom import oracle
from stabcom.pauli import (
    PauliElement,
    conjugate_cnot,
    conjugate_h,
    conjugate_s,
    drop_last,
    extend,
    format_pauli,
    identity,
    multiply,
    parse_pauli,
    swap_qubits,
    symplectic_product,
)

from conftest import pauli_elements

P = parse_pauli


def all_elements(n, phases=range(4)):
    for x, z in itertools.product(range(1 << n), repeat=2):
        for s in phases:
            yield PauliElement(n, x, z, s)


def mat(p):
    return oracle.pauli_matrix(p)


# single-qubit phase lookup built from 2x2 matrices: (x, z, x', z') -> exponent of i
def _lookup_table():
    table = {}
    for bx, bz, cx, cz in itertools.product((0, 1), repeat=4):
        a = PauliElement(1, bx, bz)
        b = PauliElement(1, cx, cz)
        prod = mat(a) @ mat(b)
        base = mat(PauliElement(1, bx ^ cx, bz ^ cz))
        for s in range(4):
            if np.allclose(prod, 1j ** s * base):
                table[bx, bz, cx, cz] = s
    return table


LOOKUP = _lookup_table()


def test_lookup_table_complete():
    assert len(LOOKUP) == 16


def test_multiply_matches_per_qubit_lookup(rng):
    for _ in range(500):
        n = int(rng.integers(1, 9))
        a = PauliElement(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
        b = PauliElement(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
        s = a.s + b.s
        for q in range(n):
            s += LOOKUP[(a.x >> q) & 1, (a.z >> q) & 1, (b.x >> q) & 1, (b.z >> q) & 1]
        assert multiply(a, b).s == s % 4


class TestMultiplyExamples:
    def test_z_squared(self):
        assert P("Z") * P("Z") == identity(1)

    def test_x_times_z_is_minus_i_y(self):
        r = P("X") * P("Z")
        assert (r.x, r.z, r.s) == (1, 1, 3)
        assert np.allclose(mat(r), np.array([[0, -1], [1, 0]]))

    def test_xx_times_zz_is_minus_yy(self):
        r = P("XX") * P("ZZ")
        assert r == P("-YY")
        assert np.allclose(mat(P("XX")) @ mat(P("ZZ")), mat(P("-YY")))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            P("X") * P("XX")


@pytest.mark.parametrize("n", [1, 2])
def test_multiply_exhaustive_against_matrices(n):
    elems = list(all_elements(n))
    mats = {p: mat(p) for p in elems}
    for a in elems:
        for b in elems:
            assert np.allclose(mats[multiply(a, b)], mats[a] @ mats[b], atol=1e-12)


def test_multiply_random_three_qubits(rng):
    for _ in range(1000):
        a, b = (PauliElement(3, int(rng.integers(8)), int(rng.integers(8)), int(rng.integers(4)))
                for _ in range(2))
        assert np.allclose(mat(a * b), mat(a) @ mat(b), atol=1e-12)


class TestSymplectic:
    def test_x_z(self):
        assert symplectic_product(P("X"), P("Z")) == 1

    def test_xx_zz(self):
        assert symplectic_product(P("XX"), P("ZZ")) == 0

    def test_iz_xx(self):
        assert symplectic_product(P("IZ"), P("XX")) == 1

    @pytest.mark.parametrize("n", [1, 2])
    def test_matches_matrix_commutation(self, n):
        for a in all_elements(n, (0,)):
            for b in all_elements(n, (0,)):
                ma, mb = mat(a), mat(b)
                commute = np.allclose(ma @ mb, mb @ ma)
                assert symplectic_product(a, b) == (0 if commute else 1)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(pauli_elements(n), pauli_elements(n))))
def test_hermitian_product_iff_commuting(pair):
    a, b = pair
    assert multiply(a, b).is_hermitian == (symplectic_product(a, b) == 0)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(pauli_elements(n, False), pauli_elements(n, False))))
def test_symplectic_symmetric(pair):
    a, b = pair
    assert symplectic_product(a, b) == symplectic_product(b, a)


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(*(pauli_elements(n, hermitian=False) for _ in range(3)))))
def test_multiply_associative(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(st.integers(1, 8).flatmap(pauli_elements))
def test_hermitian_squares_to_identity(p):
    assert p * p == identity(p.n)


class TestConjugation:
    def test_cnot_spreads_x(self):
        assert conjugate_cnot(P("XI"), 0, 1) == P("XX")

    def test_cnot_spreads_z_back(self):
        assert conjugate_cnot(P("IZ"), 0, 1) == P("ZZ")

    def test_h_swaps_x_z(self):
        assert conjugate_h(P("X"), 0) == P("Z")

    def test_s_on_x_and_y(self):
        # S X S^dag = Y and S Y S^dag = -X, from the 2x2 matrices
        S = np.diag([1, 1j])
        assert np.allclose(S @ mat(P("X")) @ S.conj().T, mat(P("Y")))
        assert np.allclose(S @ mat(P("Y")) @ S.conj().T, mat(P("-X")))
        assert conjugate_s(P("X"), 0) == P("Y")
        assert conjugate_s(P("Y"), 0) == P("-X")

    def test_bad_indices(self):
        with pytest.raises(IndexError):
            conjugate_h(P("X"), 1)
        with pytest.raises(ValueError):
            conjugate_cnot(P("XX"), 1, 1)

    @pytest.mark.parametrize("n", [1, 2])
    def test_exhaustive_against_matrices(self, n):
        cases = [("h", (q,)) for q in range(n)] + [("s", (q,)) for q in range(n)]
        cases += [("cnot", (c, t)) for c in range(n) for t in range(n) if c != t]
        for name, qs in cases:
            U = oracle.gate_matrix(name, qs, n)
            for p in all_elements(n):
                got = {"h": conjugate_h, "s": conjugate_s, "cnot": conjugate_cnot}[name](p, *qs)
                assert np.allclose(mat(got), U @ mat(p) @ U.conj().T, atol=1e-12), (name, qs, p)

    def test_random_three_qubits(self, rng):
        fns = {"h": conjugate_h, "s": conjugate_s, "cnot": conjugate_cnot}
        for _ in range(1000):
            p = PauliElement(3, int(rng.integers(8)), int(rng.integers(8)), int(rng.integers(4)))
            name = ["h", "s", "cnot"][int(rng.integers(3))]
            qs = tuple(int(q) for q in rng.choice(3, size=2 if name == "cnot" else 1, replace=False))
            U = oracle.gate_matrix(name, qs, 3)
            assert np.allclose(mat(fns[name](p, *qs)), U @ mat(p) @ U.conj().T, atol=1e-12)


class TestText:
    def test_parse_minus_xx(self):
        p = P("-XX")
        assert (p.x, p.z, p.s) == (0b11, 0, 2)

    def test_parse_y(self):
        p = P("+Y")
        assert (p.x, p.z, p.s) == (1, 1, 0)

    def test_round_trip_zz(self):
        assert format_pauli(P("ZZ")) == "+ZZ"

    def test_leftmost_is_qubit_zero(self):
        assert P("IZ").z == 0b10

    @pytest.mark.parametrize("bad", ["", "+", "XQ", "-", "x"])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            P(bad)

    @given(st.integers(1, 10).flatmap(pauli_elements))
    def test_round_trip(self, p):
        assert P(format_pauli(p)) == p


def test_invalid_construction():
    with pytest.raises(ValueError):
        PauliElement(1, 2, 0)
    with pytest.raises(ValueError):
        PauliElement(1, 0, 0, 4)
    with pytest.raises(ValueError):
        PauliElement(0, 0, 0)


def test_qubit_relabelling_helpers():
    assert extend(P("XY")) == P("XYI")
    assert drop_last(P("-XYI")) == P("-XY")
    with pytest.raises(ValueError):
        drop_last(P("XZ"))
    assert swap_qubits(P("XIY"), 0, 2) == P("YIX")


def test_sign_of_non_hermitian_raises():
    with pytest.raises(ValueError):
        PauliElement(1, 1, 0, 1).sign
