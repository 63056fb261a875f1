"""Command-line front end: ``pca compress|decompress|stats|bench``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import backend
from .codec import compress, decompress
from .dictionary import MODES
from .errors import PCAError, PrologSyntaxError, UnknownBackend
from .normalizer import nf0_text, normalize_source
from .stats import ExternalCodec, bench_corpus, file_stats, render_bench, render_stats

log = logging.getLogger("pca")


def _fail(message: str) -> int:
    print(f"pca: error: {message}", file=sys.stderr)
    return 1


def _describe(path, exc: Exception) -> str:
    if isinstance(exc, PrologSyntaxError) and exc.line is not None:
        return f"{path}:{exc.line}:{exc.column}: {exc.message}"
    return f"{path}: {exc}"


def cmd_compress(args) -> int:
    src = Path(args.input)
    out = Path(args.output) if args.output else src.with_suffix(".pca")
    try:
        raw = src.read_bytes()
        program = normalize_source(raw.decode("utf-8"))
        image = compress(program, MODES[args.mode], backend.BACKENDS[args.backend])
        out.write_bytes(image)
    except (OSError, UnicodeDecodeError, PCAError) as exc:
        return _fail(_describe(src, exc))
    ratio = len(image) / len(raw) if raw else 0.0
    print(f"{src} -> {out}: {len(raw)} -> {len(image)} bytes (ratio {ratio:.3f})",
          file=sys.stderr)
    return 0


def cmd_decompress(args) -> int:
    src = Path(args.input)
    try:
        program = decompress(src.read_bytes())
    except UnknownBackend as exc:
        return _fail(f"{src}: {exc}")
    except (OSError, PCAError) as exc:
        return _fail(_describe(src, exc))
    keep = program.var_names is not None
    text = nf0_text(program, keep_names=keep)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            return _fail(str(exc))
    else:
        sys.stdout.write(text)
    return 0


def cmd_stats(args) -> int:
    status = 0
    for name in args.inputs:
        try:
            report = file_stats(Path(name).read_bytes(), name)
        except (OSError, UnicodeDecodeError, PCAError) as exc:
            status = _fail(_describe(name, exc))
            continue
        if args.json:
            print(json.dumps(report.as_dict()))
        else:
            print(render_stats(report))
            print()
    return status


def cmd_bench(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        return _fail(f"{directory} is not a directory")
    codec = None
    if args.external_cmd:
        codec = ExternalCodec(args.external_cmd)
        if not codec.available():
            log.warning("external command %r not found; its columns are disabled",
                        args.external_cmd)
            codec = None
    rows, skipped = bench_corpus(directory, codec)
    if args.json:
        for row in rows:
            print(json.dumps(vars(row)))
    else:
        print(render_bench(rows, external=codec is not None))
    for name, reason in skipped:
        print(f"skipped {name}: {reason}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pca", description="Compress Prolog source code.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a Prolog file")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="output path (default: input with .pca suffix)")
    p.add_argument("--mode", choices=sorted(MODES), default="pca0",
                   help="pca0 renames variables, pca2 keeps their names")
    p.add_argument("--backend", choices=sorted(backend.BACKENDS), default="deflate")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="regenerate Prolog source from a container")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="output path (default: standard output)")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("stats", help="per-step sizes and ratios")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--json", action="store_true", help="one JSON record per line")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="compare against an external compressor")
    p.add_argument("directory")
    p.add_argument("--external-cmd", metavar="TEMPLATE",
                   help="shell command writing compressed data to stdout; "
                        "{input} is replaced by the file path, otherwise stdin is used")
    p.add_argument("--json", action="store_true", help="one JSON record per line")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
