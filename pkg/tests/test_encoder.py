import random

import pytest
from hypothesis import given, settings, strategies as st

from bamsr import gf as la
from bamsr.encoder import DataMatrix, encode_all, encode_node, encode_source, pack_data, psi_row
from bamsr.gf import FieldSpec
from bamsr.oracle import dense_encode
from bamsr.params import derive_params

GF7 = FieldSpec.prime(7)


def test_pack_worked_matrix():
    p = derive_params(1, 2, 4, GF7, [1, 2, 3, 4])
    M = pack_data([1, 2, 3, 4], p)
    assert [M.S(t) for t in range(1, 5)] == [[[1]], [[2]], [[3]], [[4]]]
    assert M.dense() == [[1, 2], [2, 3], [0, 4]]


def test_pack_block_layout_mu2():
    p = derive_params(2, 2, 7)
    src = list(range(1, p.file_size + 1))
    M = pack_data(src, p)
    assert M.S(1) == [[1, 2], [2, 3]]
    assert M.S(4) == [[10, 11], [11, 12]]
    D = M.dense()
    assert (len(D), len(D[0])) == (6, 4)
    # lone S_{2z} in the last block row, last block column
    assert [r[2:] for r in D[4:]] == M.S(4)
    assert [r[:2] for r in D[4:]] == [[0, 0], [0, 0]]


def test_pack_zero_and_wrong_length():
    p = derive_params(2, 3, 9)
    assert pack_data([0] * 36, p).dense() == la.zeros(14, 12)
    with pytest.raises(ValueError):
        pack_data([0] * 35, p)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32))
def test_pack_unpack_roundtrip_and_symmetry(mu, delta, seed):
    p = derive_params(mu, delta, (delta + 1) * mu + 2)
    rng = random.Random(seed)
    src = [rng.randrange(256) for _ in range(p.file_size)]
    M = pack_data(src, p)
    assert M.unpack() == src
    for blk in M.blocks:
        assert [list(r) for r in blk] == la.transpose([list(r) for r in blk])
    for bi in range(1, p.z + 2):
        for bj in range(1, p.z + 1):
            assert (M.block(bi, bj) is None) == (abs(bi - bj) > 1)


def test_psi_row():
    p = derive_params(1, 2, 4, GF7, [1, 2, 3, 4])
    assert psi_row(p, 2) == [2, 4, 1]
    assert psi_row(p, 1) == [1, 1, 1]
    q = derive_params(2, 3, 9)
    assert all(len(psi_row(q, j)) == (q.z + 1) * q.mu for j in range(1, 10))
    with pytest.raises(IndexError):
        psi_row(q, 10)


def test_worked_shares():
    p = derive_params(1, 2, 4, GF7, [1, 2, 3, 4])
    M = pack_data([1, 2, 3, 4], p)
    shares = encode_all(M, p)
    assert [s.symbols for s in shares] == [(3, 2), (3, 6), (0, 1), (1, 4)]
    # independent dense path
    assert [tuple(dense_encode(M, p, j)) for j in range(1, 5)] == [s.symbols for s in shares]


def test_zero_matrix_zero_share():
    p = derive_params(2, 3, 9)
    assert encode_node(pack_data([0] * 36, p), p, 4).symbols == (0,) * 12


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32))
def test_band_encoding_matches_dense(mu, delta, seed):
    p = derive_params(mu, delta, (delta + 1) * mu + 1)
    rng = random.Random(seed)
    M = pack_data([rng.randrange(256) for _ in range(p.file_size)], p)
    for s in encode_all(M, p):
        assert len(s.symbols) == p.alpha
        assert list(s.symbols) == dense_encode(M, p, s.node)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_linearity(seed):
    p = derive_params(2, 3, 9)
    F, rng = p.gf, random.Random(seed)
    s1 = [rng.randrange(256) for _ in range(36)]
    s2 = [rng.randrange(256) for _ in range(36)]
    e1, e2 = encode_source(s1, p), encode_source(s2, p)
    e12 = encode_source([F.add(a, b) for a, b in zip(s1, s2)], p)
    for a, b, c in zip(e1, e2, e12):
        assert c.symbols == tuple(F.add(x, y) for x, y in zip(a.symbols, b.symbols))
