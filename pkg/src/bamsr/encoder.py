"""Data-matrix packing and product-matrix encoding.

The data matrix has ``z + 1`` block rows and ``z`` block columns of
``mu x mu`` blocks; block ``(i, j)`` (1-based) is ``S_{i+j-1}`` when
``|i - j| <= 1`` and zero otherwise. Only the ``2z`` symmetric blocks are
stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import gf as la
from .params import CodeParams


@dataclass(frozen=True)
class NodeShare:
    node: int
    point: int
    symbols: tuple[int, ...]
    stripe: int = 0


@dataclass(frozen=True)
class DataMatrix:
    params: CodeParams
    blocks: tuple[tuple[tuple[int, ...], ...], ...]   # S_1..S_2z, each mu x mu

    def S(self, t: int) -> la.Matrix:
        """Block ``S_t`` (1-based) as a fresh list matrix."""
        return [list(r) for r in self.blocks[t - 1]]

    def block(self, i: int, j: int) -> Optional[la.Matrix]:
        """Block at block-row ``i``, block-column ``j`` (1-based); ``None`` if zero."""
        if abs(i - j) > 1:
            return None
        return self.S(i + j - 1)

    def dense(self) -> la.Matrix:
        p = self.params
        mu, z = p.mu, p.z
        M = la.zeros((z + 1) * mu, z * mu)
        for bi in range(1, z + 2):
            for bj in range(1, z + 1):
                blk = self.block(bi, bj)
                if blk is None:
                    continue
                for a in range(mu):
                    for b in range(mu):
                        M[(bi - 1) * mu + a][(bj - 1) * mu + b] = blk[a][b]
        return M

    def unpack(self) -> list[int]:
        mu = self.params.mu
        out = []
        for blk in self.blocks:
            for a in range(mu):
                out.extend(blk[a][a:])
        return out


def blocks_to_matrix(params: CodeParams, blocks: Sequence[la.Matrix]) -> DataMatrix:
    if len(blocks) != 2 * params.z:
        raise ValueError(f"expected {2 * params.z} blocks, got {len(blocks)}")
    return DataMatrix(params, tuple(tuple(tuple(r) for r in b) for b in blocks))


def pack_data(source: Sequence[int], params: CodeParams) -> DataMatrix:
    """Fill ``S_1..S_2z`` in order, each from its upper triangle row by row."""
    if len(source) != params.file_size:
        raise ValueError(f"source must have {params.file_size} symbols, got {len(source)}")
    gf = params.gf
    mu = params.mu
    it = iter(gf.check(s) for s in source)
    blocks = []
    for _ in range(2 * params.z):
        S = la.zeros(mu, mu)
        for a in range(mu):
            for b in range(a, mu):
                S[a][b] = S[b][a] = next(it)
        blocks.append(S)
    return blocks_to_matrix(params, blocks)


def psi_row(params: CodeParams, j: int) -> list[int]:
    e = params.point(j)
    return la.gv_matrix(params.gf, [e], 0, params.psi_len)[0]


def _row_times_block(gf: la.GF, row: Sequence[int], blk: la.Matrix) -> list[int]:
    return [gf.dot(row, col) for col in zip(*blk)]


def encode_row(M: DataMatrix, psi: Sequence[int]) -> list[int]:
    """``psi . M`` using only the three nonzero blocks of each block column."""
    p = M.params
    gf, mu, z = p.gf, p.mu, p.z
    out: list[int] = []
    for c in range(1, z + 1):
        seg = [0] * mu
        for r in (c - 1, c, c + 1):
            if not 1 <= r <= z + 1:
                continue
            part = _row_times_block(gf, psi[(r - 1) * mu:r * mu], M.block(r, c))
            seg = [gf.add(a, b) for a, b in zip(seg, part)]
        out.extend(seg)
    return out


def encode_node(M: DataMatrix, params: CodeParams, j: int, stripe: int = 0) -> NodeShare:
    return NodeShare(j, params.point(j), tuple(encode_row(M, psi_row(params, j))), stripe)


def encode_all(M: DataMatrix, params: CodeParams, stripe: int = 0) -> list[NodeShare]:
    return [encode_node(M, params, j, stripe) for j in range(1, params.n + 1)]


def encode_source(source: Sequence[int], params: CodeParams, stripe: int = 0) -> list[NodeShare]:
    return encode_all(pack_data(source, params), params, stripe)
