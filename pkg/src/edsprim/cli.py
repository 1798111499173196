"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 invalid input (nothing is
written), 3 ``verify`` found a failing invariant.
"""

from __future__ import annotations

import argparse
import csv
import io as _stringio
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from mpmath import mp

from .cache import SequenceCache, cached_sequence, resolve_cache_path
from .constants import DEFAULT_HHAT_WIDTH, compute_C_E
from .errors import EdsError, InputError
from .heights import MAX_DOUBLINGS, canonical_height_enclosure
from .io import (allow_big_ints, constants_to_dict, default_corpus, dumps, enclosure_to_dict,
                 load_corpus, suite_to_dict, term_to_dict)
from .realnum import DEFAULT_PREC
from .report import DEFAULT_MAX_N, bound_reports, build_run_report, run_suite, sequence_summary

log = logging.getLogger("edsprim")

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3
NO_PRIMITIVE = "no primitive divisor"


class VerifyFailed(Exception):
    def __init__(self, text: str, failure):
        super().__init__(text)
        self.text = text
        self.failure = failure


def _corpus(args):
    return load_corpus(args.input) if args.input else default_corpus()


def _cache(args) -> Optional[SequenceCache]:
    if args.no_cache:
        return None
    return SequenceCache(resolve_cache_path(args.cache))


def _sequence_csv(blocks) -> str:
    buf = _stringio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "n", "A", "B", "primitive_part", "verdict"])
    for label, terms in blocks:
        for t in terms:
            verdict = "primitive divisor" if t.has_primitive_divisor else NO_PRIMITIVE
            writer.writerow([label, t.n, t.A, t.B, t.primitive_part, verdict])
    return buf.getvalue()


def cmd_sequence(args) -> str:
    cache = _cache(args)
    blocks = [(inp.name, inp, cached_sequence(inp.curve, inp.point, args.max_n, cache))
              for inp in _corpus(args)]
    if args.format == "csv":
        return _sequence_csv([(name, terms) for name, _, terms in blocks])
    return dumps({"sequences": [
        {"input": inp.to_dict(), "terms": [
            dict(term_to_dict(t), verdict=("primitive divisor" if t.has_primitive_divisor
                                           else NO_PRIMITIVE)) for t in terms],
         **sequence_summary(terms)}
        for _, inp, terms in blocks]})


def cmd_bound(args) -> str:
    out = []
    for inp in _corpus(args):
        reports = bound_reports(inp, args.mode, args.precision)
        out.append({"input": inp.to_dict(),
                    "K_bound": constants_to_dict(reports[0])["K_bound"],
                    "reports": [constants_to_dict(r) for r in reports]})
    return dumps({"bounds": out, "precision": args.precision})


def cmd_heights(args) -> str:
    out = []
    for inp in _corpus(args):
        c_e = compute_C_E(inp.curve, args.precision)
        enc = canonical_height_enclosure(inp.curve, inp.point, args.width, c_e,
                                         MAX_DOUBLINGS, args.precision)
        out.append({"input": inp.to_dict(), "hhat": enclosure_to_dict(enc),
                    "normalization": "half of the x-coordinate normalization"})
    return dumps({"heights": out, "precision": args.precision})


def cmd_verify(args) -> str:
    corpus = _corpus(args)
    suite = run_suite(corpus, args.max_n, args.precision, _cache(args))
    if not suite.results:
        print("warning: empty corpus, 0 checks run", file=sys.stderr)
    text = dumps(dict(suite_to_dict(suite), corpus_size=len(corpus)))
    failure = suite.first_failure
    if failure is not None:
        raise VerifyFailed(text, failure)
    return text


def cmd_report(args) -> str:
    cache = _cache(args)
    reports = [build_run_report(inp, args.max_n, args.precision, args.mode, cache)
               for inp in _corpus(args)]
    return dumps({"reports": [r.to_dict(with_timings=args.timings) for r in reports],
                  "precision": args.precision})


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _precision(text: str) -> int:
    value = int(text)
    if value < 24:
        raise argparse.ArgumentTypeError("precision must be at least 24 bits")
    return value


def _width(text: str) -> str:
    try:
        ok = mp.mpf(text) > 0
    except (ValueError, TypeError):
        ok = False
    if not ok:
        raise argparse.ArgumentTypeError("width must be a positive decimal")
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON record, list of records or {\"corpus\": [...]}; "
                                        "defaults to the built-in corpus")
    common.add_argument("--max-n", type=_positive_int, default=DEFAULT_MAX_N)
    common.add_argument("--precision", type=_precision, default=DEFAULT_PREC,
                        help="working precision in bits (default %(default)s)")
    common.add_argument("--mode", choices=("closed-form", "analytic"), default="closed-form")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cache", help="sequence cache file (default $EDS_CACHE_DIR/"
                                        "sequences.jsonl or ~/.cache/edsprim/sequences.jsonl)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="edsprim",
        description="Elliptic divisibility sequences over Q: primitive divisors, "
                    "canonical heights and explicit index bounds.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sequence", parents=[common], help="terms B_1..B_N with primitive parts")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_sequence)
    p = sub.add_parser("bound", parents=[common], help="explicit constants and K(E,P)")
    p.set_defaults(func=cmd_bound)
    p = sub.add_parser("heights", parents=[common], help="certified canonical-height enclosure")
    p.add_argument("--width", type=_width, default=DEFAULT_HHAT_WIDTH, help="target width (default %(default)s)")
    p.set_defaults(func=cmd_heights)
    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("report", parents=[common], help="sequence, heights, constants and checks")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_report)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if not out:
        sys.stdout.write(text)
        return
    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, target)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    allow_big_ints()
    try:
        text = args.func(args)
    except VerifyFailed as exc:
        _emit(exc.text, args.out)
        f = exc.failure
        print(f"verify failed: {f.name} ({f.subject}: {f.detail})", file=sys.stderr)
        return EXIT_VERIFY
    except EdsError as exc:
        kind = "invalid input" if isinstance(exc, InputError) else type(exc).__name__
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit 1
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
