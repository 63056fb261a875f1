"""Per-step size accounting and corpus benchmarking."""

from __future__ import annotations

import logging
import os
import shlex
import shutil
import subprocess
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import backend
from .bits import index_width, packed_size
from .codec import BODY_HEADER, PREFIX, compress, encode_varint
from .dictionary import PCA0, Dictionary, build
from .normalizer import nf0_text, normalize_source
from .terms import iter_preorder

log = logging.getLogger(__name__)

HEADER_SIZE = PREFIX.size + BODY_HEADER.size


def naive_dictionary_size(dictionary: Dictionary) -> int:
    """Every name length-prefixed, 4-byte arities, 1-byte fixities."""
    names = sum(len(encode_varint(len(b))) + len(b)
                for b in (e.text.encode("utf-8") for e in dictionary.entries))
    return names + 5 * len(dictionary)


@dataclass
class StatsReport:
    name: str
    size_pp: int
    size_nf0: int
    size_1: int
    size_2: int
    size_3: int
    size_4: int
    ratios_pp: list[float] = field(init=False)
    ratios_nf0: list[float] = field(init=False)

    def __post_init__(self):
        sizes = self.step_sizes()
        self.ratios_pp = [s / self.size_pp if self.size_pp else 0.0 for s in sizes]
        self.ratios_nf0 = [s / self.size_nf0 if self.size_nf0 else 0.0 for s in sizes]

    def step_sizes(self) -> list[int]:
        """Sizes after STEP 0..4; STEP 0 output is the NF0 text."""
        return [self.size_nf0, self.size_1, self.size_2, self.size_3, self.size_4]

    def as_dict(self) -> dict:
        return asdict(self)


def file_stats(source: bytes, name: str = "<input>") -> StatsReport:
    program = normalize_source(source.decode("utf-8"))
    nf0 = nf0_text(program).encode("utf-8")
    dictionary = build(program, PCA0)
    count = sum(1 for t in program.terms for _ in iter_preorder(t))
    naive = naive_dictionary_size(dictionary)
    size_1 = count + naive
    size_2 = packed_size(count, index_width(len(dictionary))) + naive + HEADER_SIZE
    size_3 = len(compress(program, PCA0, backend.NONE))
    size_4 = len(compress(program, PCA0, backend.DEFLATE))
    return StatsReport(name, len(source), len(nf0), size_1, size_2, size_3, size_4)


def render_stats(report: StatsReport) -> str:
    lines = [f"{report.name}: PP {report.size_pp} bytes, NF0 {report.size_nf0} bytes",
             f"{'step':<6}{'bytes':>10}{'vs PP':>10}{'vs NF0':>10}"]
    for step, (size, rpp, rnf) in enumerate(zip(report.step_sizes(), report.ratios_pp,
                                                report.ratios_nf0)):
        nf = "" if step == 0 else f"{rnf:.3f}"
        lines.append(f"{'Ratio ' + str(step):<6}{size:>10}{rpp:>10.3f}{nf:>10}")
    return "\n".join(lines)


# benchmarking against an external command

class ExternalCodec:
    """Runs a user command and measures the size of what it writes to stdout.

    ``{input}`` in the template is replaced with the file path; without it
    the file is fed on stdin.
    """

    def __init__(self, template: str):
        self.template = template

    def compressed_size(self, path: str) -> int:
        if "{input}" in self.template:
            cmd = self.template.replace("{input}", shlex.quote(path))
            proc = subprocess.run(cmd, shell=True, capture_output=True, check=True)
        else:
            with open(path, "rb") as fh:
                proc = subprocess.run(self.template, shell=True, stdin=fh,
                                      capture_output=True, check=True)
        return len(proc.stdout)

    def available(self) -> bool:
        try:
            argv = shlex.split(self.template)
        except ValueError:
            return False
        return bool(argv) and shutil.which(argv[0]) is not None


@dataclass
class BenchRow:
    name: str
    size_pp: int
    size_nf0: int
    size_pca: int
    ext_pp: int | None = None
    ext_nf0: int | None = None


def bench_file(path: Path, codec: ExternalCodec | None) -> BenchRow:
    source = path.read_bytes()
    program = normalize_source(source.decode("utf-8"))
    nf0 = nf0_text(program).encode("utf-8")
    row = BenchRow(path.name, len(source), len(nf0),
                   len(compress(program, PCA0, backend.DEFLATE)))
    if codec is not None:
        row.ext_pp = codec.compressed_size(str(path))
        fd, tmp = tempfile.mkstemp(suffix=".pl")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(nf0)
            row.ext_nf0 = codec.compressed_size(tmp)
        finally:
            os.unlink(tmp)
    return row


def bench_corpus(directory: Path, codec: ExternalCodec | None = None):
    """Benchmark every ``.pl`` file; returns (rows, skipped (name, reason) pairs)."""
    rows, skipped = [], []
    for path in sorted(Path(directory).glob("*.pl")):
        try:
            rows.append(bench_file(path, codec))
        except Exception as exc:  # reported, not fatal
            log.warning("skipping %s: %s", path.name, exc)
            skipped.append((path.name, str(exc)))
    return rows, skipped


def _ratio(num, den):
    return f"{num / den:.3f}" if num is not None and den else "-"


def render_bench(rows: list[BenchRow], external: bool) -> str:
    out = []
    for title, ref in (("ratio w.r.t. PP", "size_pp"), ("ratio w.r.t. NF0", "size_nf0")):
        ext_attr = "ext_pp" if ref == "size_pp" else "ext_nf0"
        header = f"{'file':<34}"
        if external:
            header += f"{'external':>10}"
        header += f"{'PCA0':>10}"
        out += [title, header]
        for row in rows:
            line = f"{row.name:<34}"
            if external:
                line += f"{_ratio(getattr(row, ext_attr), getattr(row, ref)):>10}"
            line += f"{_ratio(row.size_pca, getattr(row, ref)):>10}"
            out.append(line)
        if rows:
            total = sum(getattr(r, ref) for r in rows)
            line = f"{'TOTAL':<34}"
            if external:
                ext_total = sum(getattr(r, ext_attr) or 0 for r in rows)
                line += f"{_ratio(ext_total, total):>10}"
            line += f"{_ratio(sum(r.size_pca for r in rows), total):>10}"
            out.append(line)
        out.append("")
    return "\n".join(out)
