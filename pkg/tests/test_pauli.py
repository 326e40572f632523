from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistlab.errors import DimensionMismatch
from twistlab.pauli import (
    PauliOperator,
    commutes,
    hermitian_form,
    is_hermitian,
    multiply,
    multiply_all,
    scale,
)

from conftest import pauli_matrix


def random_pauli(draw_n=st.integers(1, 6)):
    @st.composite
    def build(draw):
        n = draw(draw_n)
        x = draw(st.integers(0, 2**n - 1))
        z = draw(st.integers(0, 2**n - 1))
        phase = draw(st.integers(0, 3))
        return PauliOperator(n, x, z, phase)

    return build()


def test_zx_equals_i_y():
    z = PauliOperator.single(1, 0, "Z")
    x = PauliOperator.single(1, 0, "X")
    prod = multiply(z, x)
    assert prod.to_text() == "+iY"
    # and the reverse order differs by a sign
    assert multiply(x, z).to_text() == "-iY"


def test_all_single_site_products_match_matrix_oracle():
    letters = ["I", "X", "Y", "Z"]
    for a, b in itertools.product(letters, letters):
        pa = PauliOperator.single(1, 0, a) if a != "I" else PauliOperator.identity(1)
        pb = PauliOperator.single(1, 0, b) if b != "I" else PauliOperator.identity(1)
        got = pauli_matrix(multiply(pa, pb))
        want = pauli_matrix(pa) @ pauli_matrix(pb)
        assert np.allclose(got, want), f"{a}*{b}"


@given(random_pauli())
def test_multiply_identity(p):
    assert multiply(p, PauliOperator.identity(p.n)) == p
    assert multiply(PauliOperator.identity(p.n), p) == p


@given(random_pauli(), random_pauli())
def test_commutes_is_symmetric(p, q):
    if p.n != q.n:
        q = PauliOperator(p.n, q.x, q.z, q.phase)
    assert commutes(p, q) == commutes(q, p)


@given(random_pauli(), random_pauli())
def test_product_order_phase_antisymmetry(p, q):
    if p.n != q.n:
        q = PauliOperator(p.n, q.x, q.z, q.phase)
    pq, qp = multiply(p, q), multiply(q, p)
    assert pq.x == qp.x and pq.z == qp.z
    diff = (pq.phase - qp.phase) % 4
    assert (diff == 2) == (not commutes(p, q))
    assert diff in (0, 2)


@given(random_pauli(st.integers(1, 3)), random_pauli(st.integers(1, 3)),
       random_pauli(st.integers(1, 3)))
def test_multiply_associative(p, q, r):
    n = max(p.n, q.n, r.n)
    p, q, r = (PauliOperator(n, o.x, o.z, o.phase) for o in (p, q, r))
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


def test_exhaustive_small_n_matches_matrix_oracle():
    # every 1- and 2-site Pauli with every phase, against dense matrices
    for n in (1, 2):
        paulis = [
            PauliOperator(n, x, z, ph)
            for x in range(2**n) for z in range(2**n) for ph in range(4)
        ]
        for p in paulis[:: 3 if n == 2 else 1]:
            mp = pauli_matrix(p)
            assert is_hermitian(p) == bool(
                np.allclose(mp @ mp, np.eye(2**n)) and np.allclose(mp, mp.conj().T)
            )
        for p, q in itertools.islice(itertools.product(paulis, paulis), 0, None, 17):
            got = pauli_matrix(multiply(p, q))
            want = pauli_matrix(p) @ pauli_matrix(q)
            assert np.allclose(got, want)
            assert commutes(p, q) == np.allclose(
                pauli_matrix(p) @ pauli_matrix(q), pauli_matrix(q) @ pauli_matrix(p)
            )


def test_hermitian_examples():
    y = PauliOperator.single(3, 1, "Y")
    assert is_hermitian(y)
    i_z = scale(PauliOperator.single(1, 0, "Z"), 1)
    assert not is_hermitian(i_z)
    assert is_hermitian(hermitian_form(i_z))


@given(random_pauli())
def test_hermitian_iff_squares_to_identity(p):
    sq = multiply(p, p)
    squares_to_plus_identity = sq.x == 0 and sq.z == 0 and sq.phase == 0
    assert is_hermitian(p) == squares_to_plus_identity


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(PauliOperator.identity(2), PauliOperator.identity(3))
    with pytest.raises(DimensionMismatch):
        commutes(PauliOperator.identity(2), PauliOperator.identity(3))


@given(random_pauli())
def test_text_roundtrip(p):
    assert PauliOperator.from_text(p.to_text()) == p
    assert PauliOperator.from_text(p.to_sparse_text(), n=p.n) == p


def test_sparse_text_form():
    op = PauliOperator.from_letters(30, {13: "Z", 18: "X", 24: "Z", 25: "X"})
    assert op.to_sparse_text() == "+ Z13 X18 Z24 X25"
    op2 = hermitian_form(scale(op, 1))
    assert op2 == op


def test_multiply_all():
    ops = [PauliOperator.single(2, 0, "X"), PauliOperator.single(2, 0, "Z"),
           PauliOperator.single(2, 1, "Y")]
    assert multiply_all(ops) == multiply(multiply(ops[0], ops[1]), ops[2])
