"""Command-line interface.

Exit codes: 0 success, 2 usage (wrong number of inputs), 3 parameter,
4 integrity (checksum, header or decode mismatch), 5 I/O.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import codec
from .encoder import NodeShare
from .fileformat import (FormatError, Manifest, PacketHeader, ShareHeader, checksum_hex,
                         parse_packet, parse_share, write_packet, write_share)
from .gf import FieldError, FieldSpec
from .oracle import oracle_reconstruct
from .params import CodeParams, ParameterError, derive_params, params_from_exponents, prior_art_alpha
from .reconstruct import DecodeError, reconstruct
from .sim import SimConfig, run_sim, summarize

EXIT_USAGE, EXIT_PARAM, EXIT_INTEGRITY, EXIT_IO = 2, 3, 4, 5
MANIFEST_NAME = "manifest.json"


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def share_name(j: int) -> str:
    return f"share_{j:03d}.bin"


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CliFailure as exc:
            code, msg = exc.code, str(exc)
        except (ParameterError, FieldError) as exc:
            code, msg = EXIT_PARAM, str(exc)
        except (FormatError, DecodeError) as exc:
            code, msg = EXIT_INTEGRITY, str(exc)
        except OSError as exc:
            code, msg = EXIT_IO, str(exc)
        click.echo(f"error: {msg}", err=True)
        sys.exit(code)
    return wrapper


def _params_from_header(h: ShareHeader) -> CodeParams:
    return params_from_exponents(h.mu, h.delta, h.n, h.field, range(h.n))


def _read(path) -> bytes:
    return Path(path).read_bytes()


def _load_share(path) -> tuple[ShareHeader, np.ndarray, bytes]:
    blob = _read(path)
    h, arr = parse_share(blob, lambda hd: _params_from_header(hd).alpha)
    return h, arr, blob


def params_report(p: CodeParams) -> dict:
    rep = p.summary()
    prior = prior_art_alpha(p.D, p.k, p.n)
    rep["prior_art_alpha"] = prior
    rep["prior_art_ratio"] = prior // p.alpha if prior % p.alpha == 0 else prior / p.alpha
    rep["alpha_is_nth_root_of_prior_art"] = p.alpha ** p.n == prior
    return rep


@click.group()
def main():
    """Bandwidth-adaptive MSR regenerating code toolkit."""


@main.command("params")
@click.option("--mu", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--n", "n", type=int, default=None, help="node count (default d_delta + 1)")
@click.option("--field", "field_s", default="gf256", show_default=True)
@click.option("--json", "as_json", is_flag=True)
@_handle_errors
def cmd_params(mu, delta, n, field_s, as_json):
    """Print derived code parameters and the prior-art sub-packetization."""
    n = n if n is not None else (delta + 1) * mu + 1
    p = derive_params(mu, delta, n, FieldSpec.parse(field_s))
    rep = params_report(p)
    if as_json:
        click.echo(json.dumps(rep, indent=2))
        return
    click.echo(f"field {p.field}  mu={p.mu} delta={p.delta} n={p.n}")
    click.echo(f"alpha={p.alpha}  k={p.k}  F={p.file_size}  z={p.z}")
    click.echo(f"{'d':>6} {'beta':>6} {'gamma':>6}")
    for d in p.D:
        click.echo(f"{d:>6} {p.beta[d]:>6} {p.gamma[d]:>6}")
    click.echo(f"prior-art alpha = lcm(d-k+1)^n = {rep['prior_art_alpha']}")
    click.echo(f"this code alpha = {p.alpha}")
    click.echo(f"ratio = {rep['prior_art_ratio']}")


@main.command("encode")
@click.argument("input_file", type=click.Path(dir_okay=False))
@click.argument("outdir", type=click.Path(file_okay=False))
@click.option("--mu", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--field", "field_s", default="gf256", show_default=True)
@_handle_errors
def cmd_encode(input_file, outdir, mu, delta, n, field_s):
    """Split INPUT_FILE into n share files plus a manifest in OUTDIR."""
    field = FieldSpec.parse(field_s)
    p = derive_params(mu, delta, n, field)
    if field.order < 256:
        raise CliFailure(EXIT_PARAM, f"file encoding needs q >= 256 (one byte per symbol), got {field}")
    data = _read(input_file)
    F = p.file_size
    stripes = -(-len(data) // F)
    padding = stripes * F - len(data)
    src = np.frombuffer(data + bytes(padding), dtype=np.uint8).reshape(stripes, F)
    shares = codec.encode_stripes(p, src)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    sums = {}
    for j in range(1, n + 1):
        blob = write_share(out / share_name(j), ShareHeader(field, mu, delta, n, j, stripes), shares[:, j - 1, :])
        sums[j] = checksum_hex(blob)
    man = Manifest(field, mu, delta, n, list(p.exponents), len(data), padding, stripes, sums)
    (out / MANIFEST_NAME).write_text(man.to_json())
    click.echo(f"encoded {len(data)} bytes into {stripes} stripe(s) x {n} shares of {p.alpha} symbols")


@main.command("helper")
@click.argument("share_file", type=click.Path(dir_okay=False))
@click.option("--failed", "f", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def cmd_helper(share_file, f, d, output):
    """Compute the repair packet SHARE_FILE's node sends to rebuild node FAILED."""
    h, arr, _ = _load_share(share_file)
    p = _params_from_header(h)
    p.check_d(d)
    p.point(f)
    if f == h.node:
        raise CliFailure(EXIT_PARAM, f"node {f} cannot help repair itself")
    sym = codec.helper_stripes(p, arr, h.node, f, d)
    write_packet(Path(output), PacketHeader(h, f, d), sym)


@main.command("repair")
@click.argument("packet_files", nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option("--failed", "f", type=int, required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def cmd_repair(packet_files, f, output):
    """Regenerate the share of node FAILED from d helper packets."""
    parsed = []
    for path in packet_files:
        blob = _read(path)
        hdr = PacketHeader.unpack(blob)
        p = _params_from_header(hdr.share)
        p.check_d(hdr.d)
        parsed.append(parse_packet(blob, lambda ph: p.beta[ph.d]))
    headers = [ph for ph, _ in parsed]
    ds = {ph.d for ph in headers}
    if len(ds) != 1:
        raise CliFailure(EXIT_PARAM, f"packets mix helper counts {sorted(ds)}")
    d = ds.pop()
    base = headers[0].share
    for ph in headers:
        sh = ph.share
        if (sh.field, sh.mu, sh.delta, sh.n, sh.stripes) != (base.field, base.mu, base.delta, base.n, base.stripes):
            raise CliFailure(EXIT_INTEGRITY, "packet headers describe different codes or stripe counts")
        if ph.failed != f:
            raise CliFailure(EXIT_PARAM, f"packet from helper {sh.node} targets node {ph.failed}, not {f}")
    helpers = [ph.share.node for ph in headers]
    if len(set(helpers)) != len(helpers):
        raise CliFailure(EXIT_PARAM, f"duplicate helpers {helpers}")
    if f in helpers:
        raise CliFailure(EXIT_PARAM, f"failed node {f} is among the helpers")
    if len(parsed) != d:
        raise CliFailure(EXIT_USAGE, f"d={d} needs exactly {d} packets, got {len(parsed)}")
    p = _params_from_header(base)
    stack = np.stack([arr for _, arr in parsed], axis=1) if base.stripes else np.zeros((0, d, p.beta[d]), np.int64)
    rebuilt = codec.repair_stripes(p, f, helpers, stack)
    write_share(Path(output), ShareHeader(base.field, base.mu, base.delta, base.n, f, base.stripes), rebuilt)


def _load_for_manifest(manifest_path, share_files):
    man = Manifest.from_json(Path(manifest_path).read_text())
    p = params_from_exponents(man.mu, man.delta, man.n, man.field, man.point_exponents)
    loaded = {}
    problems = []
    for path in share_files:
        h, arr, blob = _load_share(path)
        if (h.field, h.mu, h.delta, h.n, h.stripes) != (man.field, man.mu, man.delta, man.n, man.stripes):
            problems.append(f"{path}: header does not match manifest")
            continue
        if man.checksums.get(h.node) != checksum_hex(blob):
            problems.append(f"{path}: checksum mismatch for node {h.node}")
            continue
        loaded[h.node] = arr
    return man, p, loaded, problems


@main.command("reconstruct")
@click.argument("manifest", type=click.Path(dir_okay=False))
@click.argument("share_files", nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def cmd_reconstruct(manifest, share_files, output):
    """Rebuild the original file from any k share files."""
    man, p, loaded, problems = _load_for_manifest(manifest, share_files)
    if problems:
        raise CliFailure(EXIT_INTEGRITY, "; ".join(problems))
    if len(loaded) < p.k:
        raise CliFailure(EXIT_USAGE, f"need k={p.k} distinct shares, got {len(loaded)}")
    nodes = sorted(loaded)[:p.k]
    stack = np.stack([loaded[j] for j in nodes], axis=1) if man.stripes else np.zeros((0, p.k, p.alpha), np.int64)
    src = codec.reconstruct_stripes(p, nodes, stack)
    if src.size and src.max() > 255:
        raise CliFailure(EXIT_INTEGRITY, "decoded symbols exceed one byte; shares are inconsistent")
    data = src.astype(np.uint8).tobytes()[:man.file_length]
    Path(output).write_bytes(data)


@main.command("verify")
@click.argument("manifest", type=click.Path(dir_okay=False))
@click.argument("share_files", nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option("--stripe", type=int, default=None, help="stripe to cross-check (default: middle)")
@_handle_errors
def cmd_verify(manifest, share_files, stripe):
    """Check checksums and cross-check the fast decoder against the brute-force oracle."""
    man, p, loaded, problems = _load_for_manifest(manifest, share_files)
    report = {"shares_checked": len(share_files), "problems": problems}
    if len(loaded) >= p.k and man.stripes:
        s = man.stripes // 2 if stripe is None else stripe
        if not 0 <= s < man.stripes:
            raise CliFailure(EXIT_USAGE, f"stripe {s} outside 0..{man.stripes - 1}")
        nodes = sorted(loaded)[:p.k]
        shares = [NodeShare(j, p.point(j), tuple(int(v) for v in loaded[j][s])) for j in nodes]
        fast = reconstruct(shares, p)
        slow = oracle_reconstruct(shares, p)
        report["stripe"] = s
        report["oracle_agrees"] = fast == slow
        if fast != slow:
            problems.append(f"stripe {s}: fast decoder and oracle disagree")
        full = codec.encode_stripes(p, np.array([fast], dtype=np.int64))[0]
        bad = [j for j in sorted(loaded) if not np.array_equal(full[j - 1], loaded[j][s])]
        report["inconsistent_nodes"] = bad
        if bad:
            problems.append(f"stripe {s}: shares of nodes {bad} disagree with the decoded data")
    report["ok"] = not problems
    click.echo(json.dumps(report, indent=2))
    if problems:
        sys.exit(EXIT_INTEGRITY)


@main.command("simulate")
@click.argument("config", type=click.Path(dir_okay=False))
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default="trace.csv", show_default=True)
@click.option("--summary", "summary_path", type=click.Path(dir_okay=False), default="summary.json",
              show_default=True)
@_handle_errors
def cmd_simulate(config, trace_path, summary_path):
    """Run the repair simulator described by a JSON CONFIG file."""
    try:
        cfg = json.loads(Path(config).read_text())
        sim_cfg = SimConfig.from_dict(cfg)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise CliFailure(EXIT_PARAM, f"invalid simulation config: {exc}") from exc
    trace = run_sim(sim_cfg)
    Path(trace_path).write_text(trace.to_csv())
    summary = summarize(trace)
    Path(summary_path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    click.echo(json.dumps(summary, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
