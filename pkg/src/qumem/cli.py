"""Command line interface.

Subcommands: encode, rewind, decode, wigner, fidelity, entropy,
index-build, index-query. All failures are reported on stderr as a single
line ``ERROR:<category>:<message>`` and a nonzero exit status; stdout and
every written artifact are byte-for-byte reproducible for identical inputs
and --seed.
"""

import argparse
import json
import sys

import numpy as np

from .codec import (
    decode_feature,
    encode_sequence,
    frame_feature,
    load_ledgers,
    patch_features,
    rewind,
    save_ledgers,
)
from .errors import InvalidArgumentError, InvalidDimensionError, QumemError
from .fock import FockKet, ket_to_density, sample_fock
from .images import read_image
from .index import EntropyIndex
from .metrics import fidelity_pure, wigner, wigner_to_csv, wigner_to_pgm


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise InvalidArgumentError("grid must be min:max:n, got %r" % spec)
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidArgumentError("grid must be min:max:n with numeric fields, got %r"
                                   % spec) from None
    if count < 1 or (count > 1 and not lo < hi) or (count == 1 and lo != hi):
        raise InvalidArgumentError("grid %r is not a valid inclusive range" % spec)
    return np.linspace(lo, hi, count)


def _parse_patch_cell(spec: str) -> tuple:
    try:
        row, col = (int(v) for v in spec.split(","))
    except ValueError:
        raise UsageError("patch cell must be row,col, got %r" % spec) from None
    return row, col


def _select_ledger(records, channel, patch_cell):
    picked = records
    if channel is not None:
        picked = [l for l in picked if l.channel == channel]
    if patch_cell is not None:
        picked = [l for l in picked if l.patch == tuple(patch_cell)]
    if len(picked) == 1:
        return picked[0]
    if not picked:
        raise InvalidArgumentError(
            "no ledger matches channel=%r patch=%r" % (channel, patch_cell)
        )
    raise InvalidArgumentError(
        "file holds %d ledgers; pick one with --channel and/or --patch-cell"
        % len(picked)
    )


def _ledger_id(path, ledger, multi):
    name = str(path)
    if multi:
        name += ":" + ledger.channel
        if ledger.patch is not None:
            name += ":%d,%d" % ledger.patch
    return name


def _print_ledger(ledger) -> None:
    head = "# channel=%s" % ledger.channel
    if ledger.patch is not None:
        head += " patch=%d,%d" % ledger.patch
    head += " frames=%d cutoff=%d kappa=%.12g nbar=%.12g" % (
        ledger.frame_count, ledger.cutoff, ledger.kappa, ledger.noise_nbar)
    print(head)
    print("frame\tdelta_re\tdelta_im\ttag_bits")
    for k, (delta, tag) in enumerate(zip(ledger.deltas, ledger.tags_bits), start=1):
        print("%d\t%.12g\t%.12g\t%.12g" % (k, delta.real, delta.imag, tag))


def _write_state(state: FockKet, path) -> None:
    payload = {
        "cutoff": state.cutoff,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def _load_frames(paths):
    frames = [read_image(p)[0] for p in paths]
    shapes = {f.shape for f in frames}
    if len(shapes) > 1:
        raise InvalidDimensionError(
            "frames have mixed dimensions or pixel formats: %s"
            % ", ".join(str(s) for s in sorted(shapes))
        )
    return frames


def _cmd_encode(args) -> None:
    frames = _load_frames(args.images)
    rgb = frames[0].ndim == 3
    ledgers = []
    if rgb:
        kappas = tuple(args.kappa_rgb) if args.kappa_rgb else (args.kappa,) * 3
        for idx, name in enumerate(("r", "g", "b")):
            planes = [f[:, :, idx] for f in frames]
            ledgers.extend(_encode_planes(planes, kappas[idx], name, args))
    else:
        ledgers.extend(_encode_planes(frames, args.kappa, "gray", args))
    save_ledgers(ledgers, args.out)
    for ledger in ledgers:
        _print_ledger(ledger)


def _encode_planes(planes, kappa, channel, args):
    if args.patch:
        grids = [patch_features(p, args.patch) for p in planes]
        out = []
        for i in range(args.patch):
            for j in range(args.patch):
                out.append(encode_sequence(
                    [g[i, j] for g in grids], kappa=kappa, nbar=args.nbar,
                    cutoff=args.cutoff, channel=channel, patch=(i, j)))
        return out
    feats = [frame_feature(p) for p in planes]
    return [encode_sequence(feats, kappa=kappa, nbar=args.nbar,
                            cutoff=args.cutoff, channel=channel)]


def _cmd_rewind(args) -> None:
    ledger = _select_ledger(load_ledgers(args.ledger), args.channel, args.patch_cell)
    state = rewind(ledger, args.frame)
    _write_state(state, args.out)
    if args.sample is not None:
        draws = np.atleast_1d(sample_fock(state, args.seed, size=args.sample))
        print(" ".join(str(int(d)) for d in draws))


def _cmd_decode(args) -> None:
    ledger = _select_ledger(load_ledgers(args.ledger), args.channel, args.patch_cell)
    print(repr(decode_feature(ledger, args.frame)))


def _cmd_wigner(args) -> None:
    ledger = _select_ledger(load_ledgers(args.ledger), args.channel, args.patch_cell)
    axis = _parse_grid(args.grid)
    grid = wigner(ket_to_density(rewind(ledger, args.frame)), axis, axis)
    base = args.out
    for suffix in (".csv", ".pgm"):
        if base.endswith(suffix):
            base = base[:-len(suffix)]
    wigner_to_csv(grid, base + ".csv")
    wigner_to_pgm(grid, base + ".pgm")
    print(base + ".csv")
    print(base + ".pgm")


def _cmd_fidelity(args) -> None:
    ledger = _select_ledger(load_ledgers(args.ledger), args.channel, args.patch_cell)
    k, j = args.frames
    print(repr(fidelity_pure(rewind(ledger, k), rewind(ledger, j))))


def _cmd_entropy(args) -> None:
    ledger = _select_ledger(load_ledgers(args.ledger), args.channel, args.patch_cell)
    print("frame\ttag_bits")
    for k, tag in enumerate(ledger.tags_bits, start=1):
        print("%d\t%r" % (k, tag))


def _cmd_index_build(args) -> None:
    index = EntropyIndex(width_bits=args.width)
    for path in args.ledgers:
        records = load_ledgers(path)
        for ledger in records:
            name = _ledger_id(path, ledger, multi=len(records) > 1)
            for k, tag in enumerate(ledger.tags_bits, start=1):
                index.register(name, k, tag)
    index.save(args.out)


def _cmd_index_query(args) -> None:
    index = EntropyIndex.load(args.index)
    for name, frame, tag in index.find(args.tag, args.tol):
        print("%s\t%d\t%r" % (name, frame, tag))


def _add_selectors(parser) -> None:
    parser.add_argument("--ledger", required=True, help="ledger JSON file")
    parser.add_argument("--channel", choices=("gray", "r", "g", "b"),
                        help="pick a channel when the file holds several ledgers")
    parser.add_argument("--patch-cell", type=_parse_patch_cell, metavar="ROW,COL",
                        help="pick a patch ledger")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qumem",
                     description="Delta-displacement qumode image memory")
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode image frames into a ledger")
    enc.add_argument("images", nargs="+", help="PGM/PPM frames, in order")
    enc.add_argument("--out", required=True, help="ledger JSON to write")
    enc.add_argument("--kappa", type=float, default=1.0, help="encoding gain")
    enc.add_argument("--kappa-rgb", type=float, nargs=3, metavar=("KR", "KG", "KB"),
                     help="per-channel gains for RGB input")
    enc.add_argument("--nbar", type=float, default=0.5, help="tagging noise photons")
    enc.add_argument("--cutoff", type=int, help="override the cutoff policy")
    enc.add_argument("--patch", type=int, help="split frames into an NxN patch grid")
    enc.add_argument("--seed", type=int, default=0, help="seed (encode is deterministic)")
    enc.set_defaults(handler=_cmd_encode)

    rew = sub.add_parser("rewind", help="retrieve a frame state by inverse displacement")
    _add_selectors(rew)
    rew.add_argument("--frame", type=int, required=True, help="frame index 0..N")
    rew.add_argument("--out", required=True, help="state dump JSON to write")
    rew.add_argument("--sample", type=int, metavar="SHOTS",
                     help="also print SHOTS Fock-basis measurement draws")
    rew.add_argument("--seed", type=int, default=0, help="seed for --sample")
    rew.set_defaults(handler=_cmd_rewind)

    dec = sub.add_parser("decode", help="classical readout of a frame feature")
    _add_selectors(dec)
    dec.add_argument("--frame", type=int, required=True)
    dec.set_defaults(handler=_cmd_decode)

    wig = sub.add_parser("wigner", help="phase-space map of a frame state")
    _add_selectors(wig)
    wig.add_argument("--frame", type=int, required=True)
    wig.add_argument("--grid", required=True, metavar="MIN:MAX:N",
                     help="inclusive axis spec used for both x and p")
    wig.add_argument("--out", required=True,
                     help="output base path; writes BASE.csv and BASE.pgm")
    wig.set_defaults(handler=_cmd_wigner)

    fid = sub.add_parser("fidelity", help="overlap of two frame states")
    _add_selectors(fid)
    fid.add_argument("--frames", type=int, nargs=2, metavar=("K", "J"), required=True)
    fid.set_defaults(handler=_cmd_fidelity)

    ent = sub.add_parser("entropy", help="print the stored entropy tags")
    _add_selectors(ent)
    ent.set_defaults(handler=_cmd_entropy)

    build = sub.add_parser("index-build", help="index ledger tags into buckets")
    build.add_argument("ledgers", nargs="+", help="ledger JSON files")
    build.add_argument("--width", type=float, default=0.05, help="bucket width in bits")
    build.add_argument("--out", required=True, help="index JSON to write")
    build.set_defaults(handler=_cmd_index_build)

    query = sub.add_parser("index-query", help="find frames near an entropy tag")
    query.add_argument("--index", required=True, help="index JSON file")
    query.add_argument("--tag", type=float, required=True)
    query.add_argument("--tol", type=float, required=True)
    query.set_defaults(handler=_cmd_index_query)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.handler(args)
    except UsageError as exc:
        print("ERROR:usage:%s" % exc, file=sys.stderr)
        return 2
    except QumemError as exc:
        print("ERROR:%s:%s" % (exc.category, exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print("ERROR:io:%s" % exc, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
