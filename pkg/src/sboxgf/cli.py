"""Command-line front end.

Exit status: 0 success, 1 domain error (improper box where one is required,
rejected candidate), 2 usage or parse error.  Data goes to stdout (or
``--output``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .analysis import analyze
from .bcn import Bcn, BcnFormatError, bcn_to_polynomial, bcns_to_sbox, format_bcn, parse_bcns, sbox_to_bcns
from .coeff import (
    CoeffFormatError,
    Order,
    big_sbox_probe,
    coefficient_degree,
    coeffs_from_sbox,
    format_coeff_file,
    named_generator,
    parse_coeff_file,
    sbox_from_coeffs,
)
from .generator import SearchConfig, candidate_stats, generate, search
from .gfpoly import PolynomialError, classify, format_polynomial, parse_polynomial
from .sbox import SBox, SBoxFormatError, format_sbox, is_proper, parse_sbox

log = logging.getLogger("sboxgf")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

PARSE_ERRORS = (SBoxFormatError, BcnFormatError, CoeffFormatError, PolynomialError)


def warn(msg: str):
    print(f"warning: {msg}", file=sys.stderr)


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _sbox_json(sbox: SBox) -> dict:
    return {"n": sbox.n, "entries": list(sbox.entries)}


def _bcn_json(b: Bcn) -> dict:
    return {
        "n": b.n,
        "plane": b.plane,
        "role": b.role,
        "bits": format(b.value, f"0{b.length}b"),
        "dec": str(b.value),
        "poly": format_polynomial(bcn_to_polynomial(b)),
    }


def _bcns_from_args(args) -> list[Bcn]:
    if args.values:
        if args.n is None:
            raise UsageError("--n is required with decimal BCN values")
        try:
            vals = [int(v, 0) for v in args.values]
        except ValueError:
            raise UsageError("BCN values must be integers") from None
        try:
            return [Bcn(args.n, v, args.n - i, "out") for i, v in enumerate(vals)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    bcns = [b for b in parse_bcns(_read(args.input)) if b.role == "out"]
    if not bcns:
        raise UsageError("no output BCNs in input")
    return sorted(bcns, key=lambda b: -b.plane)


# -- subcommands ---------------------------------------------------------------

def cmd_encode(args) -> tuple[int, str]:
    sbox = parse_sbox(_read(args.input))
    ins, outs = sbox_to_bcns(sbox)
    planes = (ins if args.inputs else []) + outs
    if args.format == "json":
        return EXIT_OK, json.dumps({"n": sbox.n, "bcns": [_bcn_json(b) for b in planes]}) + "\n"
    return EXIT_OK, "".join(format_bcn(b) + "\n" for b in planes)


def _emit_sbox(sbox: SBox, fmt: str, **extra) -> str:
    if fmt == "json":
        return json.dumps({**_sbox_json(sbox), **extra}) + "\n"
    return format_sbox(sbox)


def _improper(sbox: SBox, strict: bool):
    if not is_proper(sbox):
        if strict:
            raise DomainError("S-box is not a permutation")
        warn("S-box is not a permutation")


def cmd_decode(args) -> tuple[int, str]:
    bcns = _bcns_from_args(args)
    try:
        sbox = bcns_to_sbox(bcns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = _emit_sbox(sbox, args.format)
    _improper(sbox, args.strict)
    return EXIT_OK, text


def cmd_from_coeffs(args) -> tuple[int, str]:
    cf = parse_coeff_file(_read(args.input))
    order = Order.parse(args.order) if args.order else cf.order
    if cf.generator is not None:
        if not args.probe:
            raise UsageError(f"{cf.n}-bit generator files need --probe indices")
        try:
            idx = [int(t, 0) for t in args.probe]
        except ValueError:
            raise UsageError("probe indices must be integers") from None
        try:
            rep = big_sbox_probe(named_generator(cf.generator, cf.n), cf.n, idx)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.format == "json":
            body = {
                "n": cf.n,
                "order": order.value,
                "gen": cf.generator,
                "samples": [
                    {"index": str(j), "value": str(v), "degree": str(coefficient_degree(j, cf.n, order))}
                    for j, v in rep.samples
                ],
                "duplicates": [str(v) for v in rep.duplicates],
            }
            return EXIT_OK, json.dumps(body) + "\n"
        lines = [f"n={cf.n} order={order.value} gen={cf.generator}"]
        lines += [f"index={j} degree={coefficient_degree(j, cf.n, order)} value={v}" for j, v in rep.samples]
        lines.append("duplicates=" + (",".join(map(str, rep.duplicates)) or "none"))
        return EXIT_OK, "\n".join(lines) + "\n"
    res = sbox_from_coeffs(cf.poly, order)
    text = _emit_sbox(res.sbox, args.format, proper=res.proper)
    _improper(res.sbox, args.strict)
    return EXIT_OK, text


def cmd_to_coeffs(args) -> tuple[int, str]:
    sbox = parse_sbox(_read(args.input))
    order = Order.parse(args.order or "highest")
    poly = coeffs_from_sbox(sbox, order)
    if args.format == "json":
        return EXIT_OK, json.dumps({"n": poly.n, "order": order.value,
                                    "coeffs_descending": list(poly.descending())}) + "\n"
    return EXIT_OK, format_coeff_file(poly, order)


def cmd_generate(args) -> tuple[int, str]:
    bcns = _bcns_from_args(args)
    try:
        rep = generate(bcns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = EXIT_OK if rep.accepted else EXIT_DOMAIN
    if args.format == "json":
        body = {
            "verdict": rep.verdict.value,
            "balanced": list(rep.balanced),
            "proper": rep.proper,
            "sbox": _sbox_json(rep.assembled) if rep.assembled else None,
        }
        return status, json.dumps(body) + "\n"
    lines = [
        f"verdict={rep.verdict.value}",
        "balanced=" + ",".join("1" if b else "0" for b in rep.balanced),
        "proper=" + ("n/a" if rep.proper is None else str(rep.proper).lower()),
    ]
    text = "\n".join(lines) + "\n"
    if rep.assembled is not None:
        text += format_sbox(rep.assembled)
    if not rep.accepted:
        print(f"error: candidate {rep.verdict.value}", file=sys.stderr)
    return status, text


def cmd_search(args) -> tuple[int, str]:
    try:
        config = SearchConfig(
            n=args.n,
            seed=args.seed,
            count=args.count,
            mode=args.mode,
            require_irreducible=args.require_irreducible,
            sampler=args.sampler,
            max_candidates=args.max_candidates,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.stats is not None:
        try:
            st = candidate_stats(config, args.stats)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.format == "json":
            return EXIT_OK, json.dumps(st.as_dict()) + "\n"
        return EXIT_OK, "".join(f"{k}={v}\n" for k, v in st.as_dict().items())
    hits = list(search(config, workers=args.workers))
    if args.format == "json":
        body = [{"bcns": [str(b.value) for b in bcns], **_sbox_json(s)} for bcns, s in hits]
        return EXIT_OK, json.dumps(body) + "\n"
    return EXIT_OK, "\n".join(format_sbox(s) for _, s in hits)


def cmd_analyze(args) -> tuple[int, str]:
    sbox = parse_sbox(_read(args.input))
    try:
        rep = analyze(sbox, allow_large=args.allow_large)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.plot_dir:
        from .plotting import render_report_figures

        for path in render_report_figures(sbox, args.plot_dir, args.plot_prefix):
            log.info("wrote %s", path)
    return EXIT_OK, rep.to_json() + "\n" if args.format == "json" else rep.to_text()


def cmd_check(args) -> tuple[int, str]:
    sbox = parse_sbox(_read(args.input))
    ok = is_proper(sbox)
    text = json.dumps({"proper": ok}) + "\n" if args.format == "json" else f"proper={str(ok).lower()}\n"
    if not ok:
        print("error: S-box is not a permutation", file=sys.stderr)
    return (EXIT_OK if ok else EXIT_DOMAIN), text


def cmd_classify_poly(args) -> tuple[int, str]:
    text = args.poly if args.poly is not None else _read(args.input).strip()
    poly = parse_polynomial(text)
    pc = classify(poly, args.q)
    if args.format == "json":
        body = {"p": poly.p, "poly": format_polynomial(poly), "degree": poly.degree, **pc.as_dict()}
        return EXIT_OK, json.dumps(body) + "\n"
    lines = [
        f"p={poly.p}",
        f"poly={format_polynomial(poly)}",
        f"degree={poly.degree}",
        f"monic={str(pc.monic).lower()}",
        f"rank={pc.rank.value}",
        f"reducibility={pc.reducibility.value}",
    ]
    return EXIT_OK, "\n".join(lines) + "\n"


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sboxgf", description="S-box construction and analysis over GF polynomials")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("-i", "--input", help="input file (default: stdin)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("encode", help="S-box -> output BCNs with polynomial renderings")
    common(p)
    p.add_argument("--inputs", action="store_true", help="also emit the input (index) BCNs")
    p.set_defaults(func=cmd_encode)

    for name, func, hlp in (
        ("decode", cmd_decode, "output BCNs (highest plane first) -> S-box"),
        ("generate", cmd_generate, "balance gate + bijectivity gate on a BCN tuple"),
    ):
        p = sub.add_parser(name, help=hlp)
        common(p)
        p.add_argument("values", nargs="*", help="BCN decimals, highest plane first (needs --n)")
        p.add_argument("--n", type=int)
        if name == "decode":
            p.add_argument("--strict", action="store_true", help="exit 1 if the result is not a permutation")
        p.set_defaults(func=func)

    p = sub.add_parser("from-coeffs", help="coefficient file -> S-box (or probes for 32/64 bits)")
    common(p)
    p.add_argument("--order", choices=("highest", "lowest"), help="override the file's reading order")
    p.add_argument("--probe", nargs="+", metavar="INDEX", help="probe indices for gen= files")
    p.add_argument("--strict", action="store_true", help="exit 1 if the result is not a permutation")
    p.set_defaults(func=cmd_from_coeffs)

    p = sub.add_parser("to-coeffs", help="S-box -> coefficient file")
    common(p)
    p.add_argument("--order", choices=("highest", "lowest"), default="highest")
    p.set_defaults(func=cmd_to_coeffs)

    p = sub.add_parser("search", help="seeded search for proper S-boxes")
    common(p, with_input=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--mode", choices=("random", "exhaustive"), default="random")
    p.add_argument("--sampler", choices=("refine", "independent", "uniform"), default="refine")
    p.add_argument("--require-irreducible", action="store_true")
    p.add_argument("--max-candidates", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--stats", type=int, metavar="TRIALS", help="tally verdicts over TRIALS candidates instead")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("analyze", help="nonlinearity, differential uniformity, balance, fixed points")
    common(p)
    p.add_argument("--allow-large", action="store_true", help="permit n > 12")
    p.add_argument("--plot-dir", help="also write DDT / Walsh / bit-plane figures here")
    p.add_argument("--plot-prefix", default="sbox")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="exit 0 iff the S-box is a permutation")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify-poly", help="monic / basic / elemental / irreducible")
    common(p)
    p.add_argument("poly", nargs="?", help="polynomial text, e.g. 'p=2; x^2 + x + 1'")
    p.add_argument("--q", type=int, required=True, help="context degree q")
    p.set_defaults(func=cmd_classify_poly)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "search" and args.count is None and args.mode == "random":
        args.count = 1
    try:
        status, text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
