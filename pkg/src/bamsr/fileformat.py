"""Binary share / repair-packet files and the JSON manifest.

Share file layout (little-endian)::

    magic   5s   b"BAMSR"
    version u8
    field   u8 kind (0 prime, 1 binary) | u8 w | u24 p (prime) or polynomial mask (binary)
    mu, delta, n, node   u16 each
    stripes u64
    payload stripes * alpha symbols, 1 byte each when q <= 256 else 2

A repair packet file has the same header (``node`` is the helper) followed
by ``failed`` and ``d`` as u16, then ``stripes * beta(d)`` symbols.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .gf import FieldSpec

MAGIC = b"BAMSR"
VERSION = 1
SHARE_HEADER = struct.Struct("<5sBBB3sHHHHQ")
PACKET_EXTRA = struct.Struct("<HH")
MANIFEST_VERSION = 1


class FormatError(ValueError):
    """Malformed or inconsistent share, packet or manifest."""


def _crc32c_table() -> list[int]:
    table = []
    for i in range(256):
        c = i
        for _ in range(8):
            c = (c >> 1) ^ 0x82F63B78 if c & 1 else c >> 1
        table.append(c)
    return table


_CRC_TABLE = _crc32c_table()


def crc32c(data: bytes, crc: int = 0) -> int:
    """CRC-32C (Castagnoli, reflected polynomial 0x82F63B78)."""
    crc ^= 0xFFFFFFFF
    table = _CRC_TABLE
    for b in data:
        crc = table[(crc ^ b) & 0xFF] ^ (crc >> 8)
    return crc ^ 0xFFFFFFFF


def symbol_width(field: FieldSpec) -> int:
    return 1 if field.order <= 256 else 2


def _dtype(field: FieldSpec):
    return np.dtype("<u1") if symbol_width(field) == 1 else np.dtype("<u2")


def _field_bytes(field: FieldSpec) -> tuple[int, int, bytes]:
    kind = 0 if field.kind == "prime" else 1
    param = field.p if field.kind == "prime" else field.poly
    return kind, field.w, param.to_bytes(3, "little")


def _field_from(kind: int, w: int, param: bytes) -> FieldSpec:
    v = int.from_bytes(param, "little")
    if kind == 0:
        return FieldSpec.prime(v)
    if kind == 1:
        return FieldSpec.binary(w, v)
    raise FormatError(f"unknown field kind byte {kind}")


@dataclass(frozen=True)
class ShareHeader:
    field: FieldSpec
    mu: int
    delta: int
    n: int
    node: int
    stripes: int

    def pack(self) -> bytes:
        kind, w, param = _field_bytes(self.field)
        return SHARE_HEADER.pack(MAGIC, VERSION, kind, w, param,
                                 self.mu, self.delta, self.n, self.node, self.stripes)

    @classmethod
    def unpack(cls, buf: bytes) -> "ShareHeader":
        if len(buf) < SHARE_HEADER.size:
            raise FormatError("file too short for header")
        magic, ver, kind, w, param, mu, delta, n, node, stripes = SHARE_HEADER.unpack_from(buf)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}")
        if ver != VERSION:
            raise FormatError(f"unsupported version {ver}")
        return cls(_field_from(kind, w, param), mu, delta, n, node, stripes)


def write_share(path: Path, header: ShareHeader, symbols: np.ndarray) -> bytes:
    """Write a share with ``symbols`` of shape ``(stripes, alpha)``; returns the bytes written."""
    blob = header.pack() + np.ascontiguousarray(symbols, dtype=_dtype(header.field)).tobytes()
    Path(path).write_bytes(blob)
    return blob


def parse_share(blob: bytes, alpha_of) -> tuple[ShareHeader, np.ndarray]:
    """Parse share bytes; ``alpha_of(header)`` gives the per-stripe symbol count."""
    h = ShareHeader.unpack(blob)
    alpha = alpha_of(h)
    dt = _dtype(h.field)
    payload = blob[SHARE_HEADER.size:]
    if len(payload) != h.stripes * alpha * dt.itemsize:
        raise FormatError(f"share payload is {len(payload)} bytes, expected {h.stripes * alpha * dt.itemsize}")
    return h, np.frombuffer(payload, dtype=dt).astype(np.int64).reshape(h.stripes, alpha)


@dataclass(frozen=True)
class PacketHeader:
    share: ShareHeader    # node = helper index
    failed: int
    d: int

    def pack(self) -> bytes:
        return self.share.pack() + PACKET_EXTRA.pack(self.failed, self.d)

    @classmethod
    def unpack(cls, buf: bytes) -> "PacketHeader":
        sh = ShareHeader.unpack(buf)
        if len(buf) < SHARE_HEADER.size + PACKET_EXTRA.size:
            raise FormatError("file too short for packet header")
        failed, d = PACKET_EXTRA.unpack_from(buf, SHARE_HEADER.size)
        return cls(sh, failed, d)

    @property
    def size(self) -> int:
        return SHARE_HEADER.size + PACKET_EXTRA.size


def write_packet(path: Path, header: PacketHeader, symbols: np.ndarray) -> bytes:
    blob = header.pack() + np.ascontiguousarray(symbols, dtype=_dtype(header.share.field)).tobytes()
    Path(path).write_bytes(blob)
    return blob


def parse_packet(blob: bytes, beta_of) -> tuple[PacketHeader, np.ndarray]:
    h = PacketHeader.unpack(blob)
    beta = beta_of(h)
    dt = _dtype(h.share.field)
    payload = blob[h.size:]
    if len(payload) != h.share.stripes * beta * dt.itemsize:
        raise FormatError(f"packet payload is {len(payload)} bytes, expected {h.share.stripes * beta * dt.itemsize}")
    return h, np.frombuffer(payload, dtype=dt).astype(np.int64).reshape(h.share.stripes, beta)


@dataclass
class Manifest:
    field: FieldSpec
    mu: int
    delta: int
    n: int
    point_exponents: list[int]
    file_length: int
    padding: int
    stripes: int
    checksums: dict[int, str]
    version: int = MANIFEST_VERSION

    def to_json(self) -> str:
        return json.dumps({
            "format_version": self.version,
            "field": {"kind": self.field.kind, "p": self.field.p, "w": self.field.w,
                      "poly": self.field.poly},
            "mu": self.mu,
            "delta": self.delta,
            "n": self.n,
            "point_exponents": self.point_exponents,
            "file_length": self.file_length,
            "padding": self.padding,
            "stripes": self.stripes,
            "share_checksums": {str(j): c for j, c in sorted(self.checksums.items())},
        }, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Manifest":
        try:
            d = json.loads(text)
            if d["format_version"] != MANIFEST_VERSION:
                raise FormatError(f"unsupported manifest version {d['format_version']}")
            fs = d["field"]
            return cls(FieldSpec(fs["kind"], fs["p"], fs["w"], fs["poly"]), d["mu"], d["delta"], d["n"],
                       list(d["point_exponents"]), d["file_length"], d["padding"], d["stripes"],
                       {int(j): c for j, c in d["share_checksums"].items()})
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise FormatError(f"invalid manifest: {exc}") from exc


def checksum_hex(blob: bytes) -> str:
    return f"{crc32c(blob):08x}"
