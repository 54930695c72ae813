"""Many-stripe encoding, repair and reconstruction.

Every operation of the code is linear in its input symbols, so each one is
captured once as a matrix by running the single-stripe routine on unit
vectors, then applied to all stripes at once with numpy.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import gf as la
from .encoder import NodeShare, encode_source
from .params import CodeParams
from .reconstruct import reconstruct
from .repair import RepairPacket, make_repair_symbols, repair_decode


def linear_map(in_dim: int, fn: Callable[[list[int]], Sequence[int]]) -> la.Matrix:
    """``in_dim x out_dim`` matrix whose row ``u`` is ``fn(unit_u)``."""
    return [list(fn([int(i == u) for i in range(in_dim)])) for u in range(in_dim)]


@lru_cache(maxsize=64)
def encoder_map(params: CodeParams) -> la.Matrix:
    return linear_map(params.file_size,
                      lambda s: [v for sh in encode_source(s, params) for v in sh.symbols])


@lru_cache(maxsize=256)
def helper_map(params: CodeParams, h: int, f: int, d: int) -> la.Matrix:
    e = params.point(h)
    return linear_map(params.alpha,
                      lambda x: make_repair_symbols(NodeShare(h, e, tuple(x)), f, d, params).symbols)


@lru_cache(maxsize=256)
def repair_map(params: CodeParams, f: int, helpers: tuple[int, ...]) -> la.Matrix:
    d, b = len(helpers), params.beta.get(len(helpers))
    params.check_d(d)

    def fn(vec: list[int]) -> tuple[int, ...]:
        packets = [RepairPacket(h, f, d, tuple(vec[r * b:(r + 1) * b])) for r, h in enumerate(helpers)]
        return repair_decode(f, packets, params).symbols

    return linear_map(d * b, fn)


@lru_cache(maxsize=256)
def reconstruct_map(params: CodeParams, nodes: tuple[int, ...]) -> la.Matrix:
    a = params.alpha

    def fn(vec: list[int]) -> list[int]:
        shares = [NodeShare(j, params.point(j), tuple(vec[r * a:(r + 1) * a])) for r, j in enumerate(nodes)]
        return reconstruct(shares, params)

    return linear_map(len(nodes) * a, fn)


def encode_stripes(params: CodeParams, data: np.ndarray) -> np.ndarray:
    """``(S, F)`` source symbols to ``(S, n, alpha)`` shares."""
    out = la.apply_linear(params.gf, encoder_map(params), data)
    return out.reshape(len(data), params.n, params.alpha)


def helper_stripes(params: CodeParams, share: np.ndarray, h: int, f: int, d: int) -> np.ndarray:
    """``(S, alpha)`` share of helper ``h`` to ``(S, beta(d))`` repair symbols."""
    return la.apply_linear(params.gf, helper_map(params, h, f, d), share)


def repair_stripes(params: CodeParams, f: int, helpers: Sequence[int],
                   packets: np.ndarray) -> np.ndarray:
    """``(S, d, beta)`` packets, rows ordered as ``helpers``, to the ``(S, alpha)`` lost share."""
    order = sorted(range(len(helpers)), key=lambda r: helpers[r])
    hs = tuple(helpers[r] for r in order)
    flat = packets[:, order, :].reshape(len(packets), len(hs) * packets.shape[2])
    return la.apply_linear(params.gf, repair_map(params, f, hs), flat)


def reconstruct_stripes(params: CodeParams, nodes: Sequence[int], shares: np.ndarray) -> np.ndarray:
    """``(S, k, alpha)`` shares of ``nodes`` to ``(S, F)`` source symbols."""
    order = sorted(range(len(nodes)), key=lambda r: nodes[r])
    ns = tuple(nodes[r] for r in order)
    flat = shares[:, order, :].reshape(len(shares), len(ns) * params.alpha)
    return la.apply_linear(params.gf, reconstruct_map(params, ns), flat)
