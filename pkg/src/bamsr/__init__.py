"""Bandwidth-adaptive minimum-storage regenerating codes.

Any ``k = mu + 1`` of the ``n`` shares rebuild the data, and a lost share is
regenerated exactly from any ``d`` helpers, ``d`` in ``{2mu, ..., (delta+1)mu}``,
each sending ``alpha / (d - mu)`` symbols.
"""

from .encoder import DataMatrix, NodeShare, encode_all, encode_node, encode_source, pack_data, psi_row
from .gf import FieldSpec, GF, get_field, gv_matrix, solve
from .params import CodeParams, derive_params, msr_beta, prior_art_alpha, select_points
from .reconstruct import reconstruct, solve_sym_pair
from .repair import RepairPacket, make_repair_symbols, repair_decode, window_matrices

__all__ = [
    "CodeParams", "DataMatrix", "FieldSpec", "GF", "NodeShare", "RepairPacket",
    "derive_params", "encode_all", "encode_node", "encode_source", "get_field", "gv_matrix",
    "make_repair_symbols", "msr_beta", "pack_data", "prior_art_alpha", "psi_row",
    "reconstruct", "repair_decode", "select_points", "solve", "solve_sym_pair",
    "window_matrices",
]
