"""Data reconstruction from any ``k = mu + 1`` node shares."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gf as la
from .encoder import DataMatrix, NodeShare, blocks_to_matrix, encode_row, psi_row
from .params import CodeParams


class DecodeError(ValueError):
    pass


class DuplicateDiagonalError(DecodeError):
    pass


class VerificationError(DecodeError):
    """Decoded data does not re-encode to the inputs."""


def solve_sym_pair(gf: la.GF, X: la.Matrix, Psi: la.Matrix,
                   delta: Sequence[int]) -> tuple[la.Matrix, la.Matrix]:
    """Solve ``X = Psi A + diag(delta) Psi B`` for symmetric ``mu x mu`` ``A`` and ``B``.

    ``Psi`` is ``(mu+1) x mu`` with generalized-Vandermonde rows and ``delta``
    holds ``mu + 1`` distinct nonzero diagonal entries.

    With ``R = X Psi^T = P + diag(delta) Q`` where ``P = Psi A Psi^T`` and
    ``Q = Psi B Psi^T`` are symmetric, every off-diagonal pair of ``R`` gives
    ``Q_ij = (R_ij - R_ji) / (delta_i - delta_j)`` and ``P_ij = R_ij - delta_i Q_ij``.
    Row ``i`` of ``Q`` off the diagonal equals ``(psi_i B) . psi_j`` for the
    other ``mu`` rows, which pins down ``psi_i B``; stacking the first ``mu``
    such rows and inverting ``Psi[:mu]`` yields ``B``. ``A`` follows from ``P``
    the same way.
    """
    mu1 = len(Psi)
    mu = mu1 - 1
    if len(delta) != mu1 or len(X) != mu1:
        raise la.DimensionError("X, Psi and delta must have mu + 1 rows")
    if any(v == 0 for v in delta):
        raise DuplicateDiagonalError("diagonal entries must be nonzero")
    if len(set(delta)) != mu1:
        raise DuplicateDiagonalError("diagonal entries must be distinct")

    R = la.mat_mul(gf, X, la.transpose(Psi))
    Q = la.zeros(mu1, mu1)
    P = la.zeros(mu1, mu1)
    for i in range(mu1):
        for j in range(mu1):
            if i == j:
                continue
            Q[i][j] = gf.div(gf.sub(R[i][j], R[j][i]), gf.sub(delta[i], delta[j]))
            P[i][j] = gf.sub(R[i][j], gf.mul(delta[i], Q[i][j]))

    def recover(T: la.Matrix) -> la.Matrix:
        rows = []
        for i in range(mu):
            others = [j for j in range(mu1) if j != i]
            sub = [Psi[j] for j in others]
            rhs = [[T[i][j]] for j in others]
            rows.append([v[0] for v in la.solve(gf, sub, rhs)])
        return la.solve(gf, Psi[:mu], rows)

    A = recover(P)
    B = recover(Q)
    lhs = la.mat_add(gf, la.mat_mul(gf, Psi, A),
                     la.mat_mul(gf, la.diag(list(delta)), la.mat_mul(gf, Psi, B)))
    if lhs != [list(r) for r in X] or A != la.transpose(A) or B != la.transpose(B):
        raise VerificationError("symmetric pair does not reproduce X")
    return A, B


@dataclass(frozen=True)
class CollectorView:
    """Contents of ``k`` collected nodes, sorted by node index."""

    nodes: tuple[int, ...]
    X: tuple[tuple[int, ...], ...]          # k x alpha
    points: tuple[int, ...]
    lam: tuple[int, ...]                    # e^mu per node

    @classmethod
    def from_shares(cls, shares: Sequence[NodeShare], params: CodeParams) -> "CollectorView":
        if len(shares) != params.k:
            raise DecodeError(f"need exactly k={params.k} shares, got {len(shares)}")
        nodes = [s.node for s in shares]
        if len(set(nodes)) != len(nodes):
            raise DecodeError(f"duplicate node indices {nodes}")
        for s in shares:
            if len(s.symbols) != params.alpha:
                raise DecodeError(f"share {s.node} has {len(s.symbols)} symbols, expected {params.alpha}")
        ordered = sorted(shares, key=lambda s: s.node)
        pts = tuple(params.point(s.node) for s in ordered)
        return cls(tuple(s.node for s in ordered), tuple(tuple(s.symbols) for s in ordered), pts,
                   tuple(params.gf.pow(e, params.mu) for e in pts))

    def psi(self, gf: la.GF, mu: int, i: int) -> la.Matrix:
        """Column window ``i`` (1-based) of the collectors' coefficient rows."""
        return la.gv_matrix(gf, self.points, (i - 1) * mu, mu)

    def x(self, mu: int, i: int) -> la.Matrix:
        return [list(row[(i - 1) * mu:i * mu]) for row in self.X]


def peel_decode(view: CollectorView, params: CodeParams, peel: bool = True) -> list[la.Matrix]:
    """Recover ``S_1..S_2z`` window by window.

    ``peel=False`` skips removing the previous step's block and exists so the
    tests can show the subtraction is load-bearing.
    """
    gf, mu = params.gf, params.mu
    blocks: list[la.Matrix] = []
    for i in range(1, params.z + 1):
        Xi = view.x(mu, i)
        if i > 1 and peel:
            Xi = la.mat_sub(gf, Xi, la.mat_mul(gf, view.psi(gf, mu, i - 1), blocks[-1]))
        A, B = solve_sym_pair(gf, Xi, view.psi(gf, mu, i), view.lam)
        blocks.extend([A, B])
    return blocks


def verify_against(M: DataMatrix, view: CollectorView, params: CodeParams) -> None:
    for node, row in zip(view.nodes, view.X):
        if tuple(encode_row(M, psi_row(params, node))) != row:
            raise VerificationError(f"re-encoding disagrees with share of node {node}")


def reconstruct_matrix(shares: Sequence[NodeShare], params: CodeParams) -> DataMatrix:
    view = CollectorView.from_shares(shares, params)
    M = blocks_to_matrix(params, peel_decode(view, params))
    verify_against(M, view, params)
    return M


def reconstruct(shares: Sequence[NodeShare], params: CodeParams) -> list[int]:
    """Return the ``F`` source symbols encoded in ``shares``."""
    return reconstruct_matrix(shares, params).unpack()
