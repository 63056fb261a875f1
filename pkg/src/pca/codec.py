"""Index-stream encoding and the binary container.

Container layout, all multi-byte integers little-endian::

    magic "PCA0" | version u8 | mode u8 | backend u8      (never wrapped)
    body, passed through the backend:
      n_entries u32 | nvar u32 | amax u32 | tf u8 | index_count u64
      Part N  names (varint length + UTF-8), variables omitted in PCA0 mode
      Part A  arities, ceil(log2(amax+1)) bits each, byte aligned
      Part T  fixities, 1 bit each (tf=0) or 2 bits (tf=1), byte aligned
      payload indices, max(1, ceil(log2 N)) bits each
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass

from . import backend
from .bits import pack, pack_indices, packed_size, unpack, unpack_indices
from .dictionary import PCA0, PCA2, DictEntry, Dictionary, build, entity_key, parse_entry_text
from .errors import (
    BadMagic,
    BadOpDirective,
    FixityOutOfRange,
    FormatError,
    HeaderMismatch,
    NameDecodeError,
    PrologSyntaxError,
    TruncatedDictionary,
    TruncatedPayload,
    TruncatedStream,
    UnsupportedVersion,
)
from .normalizer import NormalizedProgram, normalize, var_name
from .ops import OpTable, apply_directive
from .reader import VAR, tokenize
from .terms import Compound, Term, Var, iter_preorder

MAGIC = b"PCA0"
VERSION = 1
PREFIX = struct.Struct("<4sBBB")
BODY_HEADER = struct.Struct("<IIIBQ")


@dataclass(frozen=True)
class Header:
    mode: int = PCA0
    backend_id: int = backend.NONE
    n_entries: int = 0
    nvar: int = 0
    amax: int = 0
    tf: int = 0
    index_count: int = 0
    version: int = VERSION

    def prefix_bytes(self) -> bytes:
        return PREFIX.pack(MAGIC, self.version, self.mode, self.backend_id)

    def body_bytes(self) -> bytes:
        return BODY_HEADER.pack(self.n_entries, self.nvar, self.amax, self.tf,
                                self.index_count)

    @classmethod
    def for_dictionary(cls, dictionary: Dictionary, mode: int, backend_id: int,
                       index_count: int) -> "Header":
        return cls(mode, backend_id, len(dictionary), dictionary.nvar, dictionary.amax,
                   int(dictionary.has_postfix), index_count)


# term stream <-> indices

def _var_lookup(program: NormalizedProgram, dictionary: Dictionary, mode: int):
    if mode == PCA0:
        return lambda clause, ordinal: ordinal
    names = program.var_names

    def lookup(clause, ordinal):
        return dictionary.index_of((names[clause][ordinal], 0))

    return lookup


def encode_term_stream(program: NormalizedProgram, dictionary: Dictionary,
                       mode: int = PCA0) -> list[int]:
    """Pre-order index sequence with no delimiters."""
    var_index = _var_lookup(program, dictionary, mode)
    out = []
    for clause, term in enumerate(program.terms):
        for node in iter_preorder(term):
            if isinstance(node, Var):
                out.append(var_index(clause, node.ordinal))
            else:
                out.append(dictionary.index_of(entity_key(node)))
    return out


def decode_term_stream(indices, dictionary: Dictionary, mode: int = PCA0):
    """Rebuild terms from an index sequence using each entry's arity.

    Returns ``(terms, var_names)``; ``var_names`` is None in PCA0 mode.
    """
    entries = dictionary.entries
    nvar = dictionary.nvar
    constants: dict[int, Term] = {}
    terms: list[Term] = []
    all_names: list[tuple[str, ...]] | None = [] if mode == PCA2 else None
    it = iter(indices)
    for first in it:
        names: dict[int, int] = {}
        order: list[str] = []
        # stack of [functor, arity, collected args]
        stack: list[list] = []
        index = first
        while True:
            if index < nvar:
                if mode == PCA0:
                    node: Term = Var(index)
                else:
                    if index not in names:
                        names[index] = len(order)
                        order.append(entries[index].text)
                    node = Var(names[index])
            else:
                entry = entries[index]
                if entry.arity:
                    stack.append([entry.text, entry.arity, []])
                    try:
                        index = next(it)
                    except StopIteration:
                        raise TruncatedStream("index stream ends inside a term") from None
                    continue
                node = constants.get(index)
                if node is None:
                    node = constants[index] = parse_entry_text(entry.text)
            while stack:
                frame = stack[-1]
                frame[2].append(node)
                if len(frame[2]) < frame[1]:
                    break
                stack.pop()
                node = Compound(_functor(frame[0]), tuple(frame[2]))
            if not stack:
                terms.append(node)
                break
            try:
                index = next(it)
            except StopIteration:
                raise TruncatedStream("index stream ends inside a term") from None
        if all_names is not None:
            all_names.append(tuple(order))
    return terms, all_names


_functor_cache: dict[str, str] = {}


def _functor(text: str) -> str:
    name = _functor_cache.get(text)
    if name is None:
        atom = parse_entry_text(text)
        if not hasattr(atom, "name"):
            raise NameDecodeError(f"functor entry {text!r} is not an atom")
        name = _functor_cache[text] = atom.name
    return name


# dictionary serialization

def encode_varint(n: int) -> bytes:
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_varint(data: bytes, pos: int) -> tuple[int, int]:
    value = shift = 0
    while True:
        if pos >= len(data):
            raise TruncatedDictionary("name length runs past the end of the data")
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


def arity_width(amax: int) -> int:
    return amax.bit_length()


def fixity_width(tf: int) -> int:
    return 2 if tf else 1


def serialize_dictionary(dictionary: Dictionary, header: Header) -> bytes:
    """Parts N, A and T, each byte aligned, in that order."""
    if (header.n_entries != len(dictionary) or header.nvar != dictionary.nvar
            or header.amax != dictionary.amax or header.tf != int(dictionary.has_postfix)):
        raise HeaderMismatch("header fields disagree with the dictionary")
    first = dictionary.nvar if header.mode == PCA0 else 0
    part_n = bytearray()
    for entry in dictionary.entries[first:]:
        raw = entry.text.encode("utf-8")
        part_n += encode_varint(len(raw)) + raw
    part_a = pack((e.arity for e in dictionary.entries), arity_width(header.amax))
    part_t = pack((e.fixity for e in dictionary.entries), fixity_width(header.tf))
    return bytes(part_n) + part_a + part_t


def deserialize_dictionary(data: bytes, header: Header, pos: int = 0) -> tuple[Dictionary, int]:
    """Inverse of :func:`serialize_dictionary`; returns the dictionary and end offset."""
    n, nvar = header.n_entries, header.nvar
    if nvar > n:
        raise HeaderMismatch(f"nvar {nvar} exceeds n_entries {n}")
    texts = [var_name(i) for i in range(nvar)] if header.mode == PCA0 else []
    while len(texts) < n:
        length, pos = _read_varint(data, pos)
        if pos + length > len(data):
            raise TruncatedDictionary("name runs past the end of the data")
        try:
            texts.append(data[pos:pos + length].decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise NameDecodeError(f"entry {len(texts)} is not valid UTF-8: {exc}") from None
        pos += length
    wa, wt = arity_width(header.amax), fixity_width(header.tf)
    size_a, size_t = packed_size(n, wa), packed_size(n, wt)
    if pos + size_a + size_t > len(data):
        raise TruncatedDictionary("arity or fixity part is truncated")
    arities = unpack(data[pos:pos + size_a], wa, n)
    pos += size_a
    fixities = unpack(data[pos:pos + size_t], wt, n)
    pos += size_t
    entries = []
    for i, (text, arity, fixity) in enumerate(zip(texts, arities, fixities)):
        if fixity > 2:
            raise FixityOutOfRange(f"entry {i} has fixity code {fixity}")
        if i < nvar:
            _check_var_text(text, i)
            if arity or fixity:
                raise FormatError(f"variable entry {i} has non-zero arity or fixity")
        elif not hasattr(parse_entry_text(text), "name") and arity:
            raise NameDecodeError(f"entry {i} has arity {arity} but {text!r} is not an atom")
        entries.append(DictEntry(text, arity, fixity))
    try:
        return Dictionary(entries, nvar), pos
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _check_var_text(text: str, i: int) -> None:
    try:
        tokens = tokenize(text)
    except PrologSyntaxError:
        tokens = []
    if len(tokens) != 1 or tokens[0].kind != VAR or tokens[0].text != text or text == "_":
        raise NameDecodeError(f"variable entry {i} has unusable name {text!r}")


# whole container

def compress(program: NormalizedProgram, mode: int = PCA0,
             backend_id: int = backend.DEFLATE) -> bytes:
    if mode not in (PCA0, PCA2):
        raise ValueError(f"unknown mode {mode}")
    dictionary = build(program, mode)
    indices = encode_term_stream(program, dictionary, mode)
    header = Header.for_dictionary(dictionary, mode, backend_id, len(indices))
    body = (header.body_bytes() + serialize_dictionary(dictionary, header)
            + pack_indices(indices, len(dictionary)))
    return header.prefix_bytes() + backend.wrap(body, backend_id)


def read_header(image: bytes) -> tuple[Header, bytes]:
    """Parse the fixed prefix, unwrap the body and parse the rest of the header.

    Returns the header and the body bytes that follow it.
    """
    if len(image) < PREFIX.size or image[:4] != MAGIC:
        raise BadMagic("not a PCA container (bad magic)")
    _, version, mode, backend_id = PREFIX.unpack_from(image)
    if version != VERSION:
        raise UnsupportedVersion(f"unsupported container version {version}")
    if mode not in (PCA0, PCA2):
        raise FormatError(f"unknown mode {mode}")
    body = backend.unwrap(image[PREFIX.size:], backend_id)
    if len(body) < BODY_HEADER.size:
        raise TruncatedPayload("container header is truncated")
    n, nvar, amax, tf, count = BODY_HEADER.unpack_from(body)
    if tf > 1:
        raise FormatError(f"bad postfix flag {tf}")
    header = Header(mode, backend_id, n, nvar, amax, tf, count, version)
    return header, body[BODY_HEADER.size:]


def decompress(image: bytes) -> NormalizedProgram:
    header, body = read_header(image)
    dictionary, pos = deserialize_dictionary(body, header)
    if header.amax != dictionary.amax or header.tf != int(dictionary.has_postfix):
        raise HeaderMismatch("header fields disagree with the decoded dictionary")
    if header.index_count and not header.n_entries:
        raise FormatError("indices present but the dictionary is empty")
    indices = unpack_indices(body[pos:], header.n_entries, header.index_count)
    terms, names = decode_term_stream(indices, dictionary, header.mode)
    ops = OpTable.standard()
    with warnings.catch_warnings():
        # malformed op/3 directives were already reported when first read
        warnings.simplefilter("ignore", BadOpDirective)
        for term in terms:
            apply_directive(term, ops)
    return normalize(terms, ops, names)
