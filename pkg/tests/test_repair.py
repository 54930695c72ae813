import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from bamsr import gf as la
from bamsr.encoder import NodeShare, encode_source, pack_data, psi_row
from bamsr.gf import FieldSpec
from bamsr.oracle import oracle_repair
from bamsr.params import HelperCountError, derive_params
from bamsr.repair import (RepairError, RepairPacket, make_repair_symbols, repair, repair_decode,
                          window_matrices)


def test_worked_packets_d2(worked):
    p, shares = worked
    assert make_repair_symbols(shares[1], 3, 2, p).symbols == (2, 4)
    assert make_repair_symbols(shares[2], 3, 2, p).symbols == (2, 5)


def test_worked_packets_d3(worked):
    p, shares = worked
    got = [make_repair_symbols(shares[h], 3, 3, p).symbols for h in (1, 2, 4)]
    assert got == [(6,), (0,), (4,)]


def test_worked_window_d2(worked):
    p, _ = worked
    w = window_matrices([1, 2], 3, 2, p)
    assert (w.m, w.beta) == (1, 2)
    assert w.omega[0] == [[1, 1], [2, 4]]
    assert w.theta[0] == [[2, 3]]
    assert w.xi[0] == [[6, 4]]


def test_worked_window_d3(worked):
    p, _ = worked
    w = window_matrices([1, 2, 4], 3, 3, p)
    assert w.beta == 1
    assert w.omega[0] == [[1, 1, 1], [2, 4, 1], [4, 2, 1]]


def test_worked_repair(worked):
    p, shares = worked
    ups = [RepairPacket(1, 3, 2, (2, 4)), RepairPacket(2, 3, 2, (2, 5))]
    assert repair_decode(3, ups, p).symbols == (0, 1)
    pk3 = [RepairPacket(h, 3, 3, (r,)) for h, r in ((1, 6), (2, 0), (4, 4))]
    assert repair_decode(3, pk3, p).symbols == (0, 1)
    M = pack_data([1, 2, 3, 4], p)
    assert oracle_repair(3, p, M).symbols == (0, 1)


def test_uncorrected_assembly_fails_worked_example(worked):
    p, _ = worked
    ups = [RepairPacket(1, 3, 2, (2, 4)), RepairPacket(2, 3, 2, (2, 5))]
    assert repair_decode(3, ups, p, carry_previous=False).symbols == (0, 2)


def test_zero_system_repairs_to_zero():
    p = derive_params(2, 3, 9)
    shares = {s.node: s for s in encode_source([0] * 36, p)}
    for d in p.D:
        assert repair(shares, 9, list(range(1, d + 1)), p).symbols == (0,) * 12


def test_omega_rows_are_consecutive_powers():
    p = derive_params(2, 3, 9)
    for d in p.D:
        helpers = list(range(1, d + 1))
        w = window_matrices(helpers, 9, d, p)
        for i in range(1, w.beta + 1):
            start = (i - 1) * w.m * p.mu
            assert w.omega[i - 1] == la.gv_matrix(p.gf, [p.point(h) for h in helpers], start, d)
            inv = w.theta[i - 1] + w.xi[i - 1]
            assert la.mat_mul(p.gf, inv, w.omega[i - 1]) == la.identity(d)
            assert len(w.theta[i - 1]) == d - p.mu and len(w.xi[i - 1]) == p.mu


def window_from_pieces(M, p, m, i):
    """Window-``i`` columns of M built only from M_i, S_{2im} and S_{2(i-1)m}."""
    mu, z = p.mu, p.z
    W = la.zeros((z + 1) * mu, m * mu)
    first = (i - 1) * m
    Mi = la.zeros(m * mu, m * mu)
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if abs(a - b) <= 1:
                blk = M.S(2 * first + a + b - 1)
                for r in range(mu):
                    for c in range(mu):
                        Mi[(a - 1) * mu + r][(b - 1) * mu + c] = blk[r][c]
    assert Mi == la.transpose(Mi)
    for r in range(m * mu):
        W[first * mu + r] = list(Mi[r])
    below = M.S(2 * i * m)
    for r in range(mu):
        W[i * m * mu + r][(m - 1) * mu:] = below[r]
    if i > 1:
        above = M.S(2 * (i - 1) * m)
        for r in range(mu):
            W[(first - 1) * mu + r][:mu] = above[r]
    return W, Mi


@pytest.mark.parametrize("mu, delta", [(1, 3), (2, 3), (2, 4), (3, 2)])
def test_window_partition_tiles_band(mu, delta):
    p = derive_params(mu, delta, (delta + 1) * mu + 1)
    rng = random.Random(mu * 10 + delta)
    M = pack_data([rng.randrange(1, 256) for _ in range(p.file_size)], p)
    dense = M.dense()
    for d in p.D:
        m = p.check_d(d)
        for i in range(1, p.beta[d] + 1):
            W, _ = window_from_pieces(M, p, m, i)
            cols = [row[(i - 1) * m * mu:i * m * mu] for row in dense]
            assert W == cols


@pytest.mark.parametrize("mu, delta", [(1, 3), (2, 3)])
def test_peeled_window_identity(mu, delta):
    p = derive_params(mu, delta, (delta + 1) * mu + 1)
    gf = p.gf
    rng = random.Random(5)
    src = [rng.randrange(256) for _ in range(p.file_size)]
    M = pack_data(src, p)
    shares = {s.node: s for s in encode_source(src, p)}
    f = p.n
    for d in p.D:
        m = p.check_d(d)
        seg = m * mu
        helpers = list(range(1, d + 1))
        w = window_matrices(helpers, f, d, p)
        psi_f = psi_row(p, f)
        for i in range(1, p.beta[d] + 1):
            col = [[make_repair_symbols(shares[h], f, d, p).symbols[i - 1]] for h in helpers]
            if i > 1:
                above = M.S(2 * (i - 1) * m)
                rf = psi_f[((i - 1) * m) * mu:((i - 1) * m + 1) * mu]
                for r, h in enumerate(helpers):
                    rh = psi_row(p, h)[((i - 1) * m - 1) * mu:((i - 1) * m) * mu]
                    term = la.mat_mul(gf, la.mat_mul(gf, [rh], above), [[v] for v in rf])[0][0]
                    col[r][0] = gf.sub(col[r][0], term)
            _, Mi = window_from_pieces(M, p, m, i)
            stacked = Mi + [[0] * (seg - mu) + row for row in M.S(2 * i * m)]
            rhs = la.mat_mul(gf, w.omega[i - 1],
                             la.mat_mul(gf, stacked, [[v] for v in psi_f[(i - 1) * seg:i * seg]]))
            assert col == rhs


@pytest.mark.parametrize("mu, delta, n", [(1, 3, 6), (2, 2, 8), (2, 3, 9), (3, 2, 10), (2, 1, 7)])
def test_exact_repair_all_nodes(mu, delta, n):
    p = derive_params(mu, delta, n)
    rng = random.Random(n * mu)
    src = [rng.randrange(256) for _ in range(p.file_size)]
    M = pack_data(src, p)
    shares = {s.node: s for s in encode_source(src, p)}
    for f in range(1, n + 1):
        others = [h for h in range(1, n + 1) if h != f]
        for d in p.D:
            subsets = list(itertools.combinations(others, d))
            if len(subsets) > 20:
                subsets = rng.sample(subsets, 20)
            for hs in subsets:
                packets = [make_repair_symbols(shares[h], f, d, p) for h in hs]
                assert all(len(pk.symbols) == p.alpha // (d - p.k + 1) for pk in packets)
                assert sum(len(pk.symbols) for pk in packets) == p.gamma[d]
                assert repair_decode(f, packets, p) == shares[f] == oracle_repair(f, p, M)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_helper_order_irrelevant(seed):
    p = derive_params(2, 3, 9)
    rng = random.Random(seed)
    src = [rng.randrange(256) for _ in range(36)]
    shares = {s.node: s for s in encode_source(src, p)}
    f = rng.randrange(1, 10)
    d = rng.choice(p.D)
    hs = rng.sample([h for h in range(1, 10) if h != f], d)
    packets = [make_repair_symbols(shares[h], f, d, p) for h in hs]
    rng.shuffle(packets)
    assert repair_decode(f, packets, p) == shares[f]


def test_repair_prime_field():
    p = derive_params(2, 2, 8, FieldSpec.prime(257))
    rng = random.Random(0)
    src = [rng.randrange(257) for _ in range(p.file_size)]
    shares = {s.node: s for s in encode_source(src, p)}
    for d in p.D:
        assert repair(shares, 2, [h for h in range(1, 9) if h != 2][:d], p) == shares[2]


def test_repair_errors(worked):
    p, shares = worked
    with pytest.raises(HelperCountError):
        make_repair_symbols(shares[1], 3, 1, p)
    with pytest.raises(RepairError):
        make_repair_symbols(shares[3], 3, 2, p)
    a = make_repair_symbols(shares[1], 3, 2, p)
    b = make_repair_symbols(shares[2], 3, 3, p)
    with pytest.raises(RepairError, match="mix"):
        repair_decode(3, [a, b], p)
    with pytest.raises(RepairError, match="duplicate"):
        repair_decode(3, [a, a], p)
    c = make_repair_symbols(shares[3], 1, 2, p)
    with pytest.raises(RepairError):
        repair_decode(3, [a, c], p)
    with pytest.raises(RepairError):
        repair_decode(3, [a], p)
    with pytest.raises(HelperCountError):
        repair_decode(3, [RepairPacket(1, 3, 4, (1,))] * 4, p)
    with pytest.raises(RepairError):
        repair_decode(1, [RepairPacket(1, 1, 2, (1, 1)), RepairPacket(2, 1, 2, (1, 1))], p)
    with pytest.raises(RepairError):
        make_repair_symbols(NodeShare(1, 1, (1,)), 3, 2, p)
