import numpy as np
import pytest
from hypothesis import strategies as st

from stabcom import oracle
from stabcom.com import ComState
from stabcom.pauli import PauliElement

# criterion number -> (title, passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pauli_elements(n, hermitian=True, nonidentity=False):
    phases = st.sampled_from([0, 2]) if hermitian else st.integers(0, 3)
    strat = st.builds(
        PauliElement,
        st.just(n),
        st.integers(0, (1 << n) - 1),
        st.integers(0, (1 << n) - 1),
        phases,
    )
    if nonidentity:
        strat = strat.filter(lambda p: not p.is_identity)
    return strat


def random_com_state(n, rng, depth=None):
    """init_random followed by a random H/S/CNOT circuit."""
    state = ComState.init_random(n, rng)
    for _ in range(depth if depth is not None else 6 * n):
        g = int(rng.integers(3 if n > 1 else 2))
        if g == 0:
            state.h(int(rng.integers(n)))
        elif g == 1:
            state.s(int(rng.integers(n)))
        else:
            c, t = rng.choice(n, size=2, replace=False)
            state.cnot(int(c), int(t))
    return state


def reconstruct(state, e):
    """Dense right-hand side v * i**w * prod M_k**m_k * prod C_k**c_k."""
    out = np.eye(2 ** state.n, dtype=complex)
    for g, b in zip(state.stabilizers, e.m):
        if b:
            out = out @ oracle.pauli_matrix(g)
    for g, b in zip(state.destabilizers, e.c):
        if b:
            out = out @ oracle.pauli_matrix(g)
    return e.v * (1j ** e.w) * out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k} {'PASS' if passed else 'FAIL'}  {title}  ({detail})")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def bell_com():
    """The Bell state {XX, ZZ; aZI, bIX} for a = b = +1."""
    def make(a=1, b=1, seed=0):
        state = ComState.from_signs([a, b], np.random.default_rng(seed))
        state.h(0)
        state.cnot(0, 1)
        return state
    return make
