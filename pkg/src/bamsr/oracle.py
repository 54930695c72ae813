"""Brute-force reference decoders.

These solve the full linear systems directly with generic elimination and
share no structure with the fast paths beyond field arithmetic. They are
slow and meant for tests and the ``verify`` command.
"""

from __future__ import annotations

from typing import Sequence

from . import gf as la
from .encoder import DataMatrix, NodeShare, pack_data, psi_row
from .params import CodeParams


def _sym_from_vector(v: Sequence[int], mu: int) -> la.Matrix:
    S = la.zeros(mu, mu)
    it = iter(v)
    for a in range(mu):
        for b in range(a, mu):
            S[a][b] = S[b][a] = next(it)
    return S


def oracle_solve_sym_pair(gf: la.GF, X: la.Matrix, Psi: la.Matrix,
                          delta: Sequence[int]) -> tuple[la.Matrix, la.Matrix]:
    """Solve for the upper-triangle unknowns of ``A`` and ``B`` as one square system."""
    mu = len(Psi[0])
    t = mu * (mu + 1) // 2
    D = la.diag(list(delta))

    def image(unknowns: Sequence[int]) -> list[int]:
        A = _sym_from_vector(unknowns[:t], mu)
        B = _sym_from_vector(unknowns[t:], mu)
        Y = la.mat_add(gf, la.mat_mul(gf, Psi, A), la.mat_mul(gf, D, la.mat_mul(gf, Psi, B)))
        return [v for row in Y for v in row]

    cols = [image([int(u == c) for u in range(2 * t)]) for c in range(2 * t)]
    system = la.transpose(cols)
    rhs = [[v] for row in X for v in row]
    sol = [r[0] for r in la.solve(gf, system, rhs)]
    return _sym_from_vector(sol[:t], mu), _sym_from_vector(sol[t:], mu)


def dense_encode(M: DataMatrix, params: CodeParams, j: int) -> list[int]:
    return la.mat_mul(params.gf, [psi_row(params, j)], M.dense())[0]


def oracle_reconstruct(shares: Sequence[NodeShare], params: CodeParams) -> list[int]:
    """Solve ``Psi_DC M = X_DC`` for all ``F`` source symbols at once."""
    gf = params.gf
    nodes = [s.node for s in shares]
    Fsz = params.file_size

    def image(source: Sequence[int]) -> list[int]:
        M = pack_data(source, params)
        return [v for j in nodes for v in dense_encode(M, params, j)]

    cols = [image([int(u == c) for u in range(Fsz)]) for c in range(Fsz)]
    system = la.transpose(cols)
    rhs = [[v] for s in shares for v in s.symbols]
    return [r[0] for r in la.solve(gf, system, rhs)]


def oracle_repair(f: int, params: CodeParams, M: DataMatrix) -> NodeShare:
    return NodeShare(f, params.point(f), tuple(dense_encode(M, params, f)))
