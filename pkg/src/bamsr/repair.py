"""Bandwidth-adaptive exact repair of a single failed node.

For ``d = (m + 1) mu`` each helper splits its share into ``beta(d)`` segments
of ``m mu`` symbols and sends one inner product per segment. The decoder
walks the segments in order; window ``i`` covers block columns
``(i-1)m+1 .. im`` of the data matrix, whose nonzero part is the symmetric
diagonal piece ``M_i``, the block ``S_{2im}`` underneath it and (for
``i >= 2``) the block ``S_{2(i-1)m}`` above it, already known from step
``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gf as la
from .encoder import NodeShare, psi_row
from .params import CodeParams


class RepairError(ValueError):
    pass


@dataclass(frozen=True)
class RepairPacket:
    helper: int
    failed: int
    d: int
    symbols: tuple[int, ...]
    stripe: int = 0


@dataclass(frozen=True)
class RepairWindow:
    d: int
    m: int
    beta: int
    helpers: tuple[int, ...]
    omega: tuple[la.Matrix, ...]
    theta: tuple[la.Matrix, ...]    # top (d - mu) rows of each inverse
    xi: tuple[la.Matrix, ...]       # bottom mu rows


def _segment(v: Sequence[int], i: int, size: int) -> list[int]:
    return list(v[(i - 1) * size:i * size])


def make_repair_symbols(share: NodeShare, f: int, d: int, params: CodeParams) -> RepairPacket:
    """Helper-side computation: ``r_i = x_h(i) . psi_f(i)`` for each segment."""
    m = params.check_d(d)
    if f == share.node:
        raise RepairError(f"node {f} cannot help repair itself")
    if len(share.symbols) != params.alpha:
        raise RepairError(f"share has {len(share.symbols)} symbols, expected {params.alpha}")
    gf = params.gf
    seg = m * params.mu
    psi_f = psi_row(params, f)
    r = tuple(gf.dot(_segment(share.symbols, i, seg), _segment(psi_f, i, seg))
              for i in range(1, params.beta[d] + 1))
    return RepairPacket(share.node, f, d, r, share.stripe)


def window_matrices(helpers: Sequence[int], f: int, d: int, params: CodeParams) -> RepairWindow:
    m = params.check_d(d)
    if len(helpers) != d:
        raise RepairError(f"need {d} helpers, got {len(helpers)}")
    gf, mu = params.gf, params.mu
    seg = m * mu
    beta = params.beta[d]
    omegas, thetas, xis = [], [], []
    for i in range(1, beta + 1):
        rows = []
        for h in helpers:
            e = params.point(h)
            phi = [gf.pow(e, t) for t in range(1, mu + 1)]
            rows.append(_segment(psi_row(params, h), i, seg)
                        + [gf.mul(gf.pow(e, i * m * mu), v) for v in phi])
        try:
            inv = la.inverse(gf, rows)
        except la.SingularMatrixError as exc:
            raise RepairError(f"repair matrix for window {i} is singular; corrupt points?") from exc
        omegas.append(rows)
        thetas.append(inv[:seg])
        xis.append(inv[seg:])
    return RepairWindow(d, m, beta, tuple(helpers), tuple(omegas), tuple(thetas), tuple(xis))


def _check_packets(f: int, packets: Sequence[RepairPacket], params: CodeParams) -> int:
    if not packets:
        raise RepairError("no repair packets")
    ds = {p.d for p in packets}
    if len(ds) != 1:
        raise RepairError(f"packets mix helper counts {sorted(ds)}")
    d = ds.pop()
    params.check_d(d)
    if any(p.failed != f for p in packets):
        raise RepairError(f"packets target different failed nodes than {f}")
    helpers = [p.helper for p in packets]
    if len(set(helpers)) != len(helpers):
        raise RepairError(f"duplicate helpers {helpers}")
    if f in helpers:
        raise RepairError(f"failed node {f} listed as helper")
    if len(packets) != d:
        raise RepairError(f"d={d} requires {d} packets, got {len(packets)}")
    for p in packets:
        if len(p.symbols) != params.beta[d]:
            raise RepairError(f"packet from {p.helper} has {len(p.symbols)} symbols, expected {params.beta[d]}")
    return d


def repair_decode(f: int, packets: Sequence[RepairPacket], params: CodeParams,
                  carry_previous: bool = True) -> NodeShare:
    """Regenerate the share of node ``f`` from ``d`` helper packets.

    Each segment is ``psi_f(i) M_i`` plus the ``S_{2im}`` term in its last
    ``mu`` coordinates plus, for ``i >= 2``, the ``S_{2(i-1)m}`` term in its
    first ``mu`` coordinates. ``carry_previous=False`` drops that last term;
    it only exists to show the term is required.
    """
    d = _check_packets(f, packets, params)
    gf, mu = params.gf, params.mu
    packets = sorted(packets, key=lambda p: p.helper)
    win = window_matrices([p.helper for p in packets], f, d, params)
    m, seg = win.m, win.m * mu

    ef = params.point(f)
    ef_mu = gf.pow(ef, mu)
    ef_mu_inv = gf.inv(ef_mu)
    hpts = [params.point(p.helper) for p in packets]
    phis = [[gf.pow(e, t) for t in range(1, mu + 1)] for e in hpts]

    out: list[int] = []
    prev = None  # e_f^{(i-1)m mu} phi_f S_{2(i-1)m} from the previous step
    for i in range(1, win.beta + 1):
        col = [[p.symbols[i - 1]] for p in packets]
        if prev is not None:
            shift = (i - 1) * m * mu - mu
            for r, (e, phi) in enumerate(zip(hpts, phis)):
                c = gf.mul(gf.pow(e, shift), gf.dot(phi, prev))
                col[r][0] = gf.sub(col[r][0], c)
        band = [v[0] for v in la.mat_mul(gf, win.theta[i - 1], col)]
        tail = [gf.mul(ef_mu, v[0]) for v in la.mat_mul(gf, win.xi[i - 1], col)]
        x_seg = band
        for t in range(mu):
            x_seg[seg - mu + t] = gf.add(x_seg[seg - mu + t], tail[t])
        if prev is not None and carry_previous:
            # S_{2(i-1)m} also feeds the first mu coordinates of this segment
            for t in range(mu):
                x_seg[t] = gf.add(x_seg[t], gf.mul(ef_mu_inv, prev[t]))
        out.extend(x_seg)
        prev = tail
    return NodeShare(f, ef, tuple(out), packets[0].stripe)


def repair(shares: dict[int, NodeShare], f: int, helpers: Sequence[int], params: CodeParams) -> NodeShare:
    """Convenience wrapper: build packets from ``shares`` of ``helpers`` and decode."""
    d = len(helpers)
    packets = [make_repair_symbols(shares[h], f, d, params) for h in helpers]
    return repair_decode(f, packets, params)
