"""MSB-first fixed-width bit packing."""

from __future__ import annotations

from .errors import IndexOutOfRange, TrailingGarbage, TruncatedPayload


class BitWriter:
    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._nbits = 0

    def write(self, value: int, width: int) -> None:
        if width == 0:
            return
        self._acc = (self._acc << width) | value
        self._nbits += width
        while self._nbits >= 8:
            self._nbits -= 8
            self._buf.append((self._acc >> self._nbits) & 0xFF)
        self._acc &= (1 << self._nbits) - 1

    def getvalue(self) -> bytes:
        """Bytes written so far, the last one zero-padded."""
        if self._nbits:
            return bytes(self._buf) + bytes([(self._acc << (8 - self._nbits)) & 0xFF])
        return bytes(self._buf)


class BitReader:
    def __init__(self, data: bytes, start: int = 0):
        self._data = data
        self._pos = start
        self._acc = 0
        self._nbits = 0

    def read(self, width: int) -> int:
        if width == 0:
            return 0
        while self._nbits < width:
            if self._pos >= len(self._data):
                raise TruncatedPayload("ran out of bits")
            self._acc = (self._acc << 8) | self._data[self._pos]
            self._pos += 1
            self._nbits += 8
        self._nbits -= width
        value = self._acc >> self._nbits
        self._acc &= (1 << self._nbits) - 1
        return value

    @property
    def byte_position(self) -> int:
        return self._pos

    def padding_is_zero(self) -> bool:
        return self._acc == 0


def index_width(n_entries: int) -> int:
    """Bits per index: max(1, ceil(log2 N))."""
    return max(1, (n_entries - 1).bit_length())


def packed_size(count: int, width: int) -> int:
    return (count * width + 7) // 8


def pack(values, width: int) -> bytes:
    writer = BitWriter()
    limit = 1 << width
    for v in values:
        if not 0 <= v < limit:
            raise IndexOutOfRange(f"value {v} does not fit in {width} bits")
        writer.write(v, width)
    return writer.getvalue()


def unpack(data: bytes, width: int, count: int, *, exact: bool = True) -> list[int]:
    """Read ``count`` values of ``width`` bits.

    With ``exact``, surplus bytes or non-zero padding raise TrailingGarbage.
    """
    need = packed_size(count, width)
    if len(data) < need:
        raise TruncatedPayload(f"packed data is truncated: need {need} bytes "
                               f"for {count} values, have {len(data)}")
    reader = BitReader(data)
    values = [reader.read(width) for _ in range(count)]
    if exact:
        if len(data) > need:
            raise TrailingGarbage(f"{len(data) - need} unexpected bytes after packed values")
        if not reader.padding_is_zero():
            raise TrailingGarbage("non-zero padding bits")
    return values


def pack_indices(indices, n_entries: int) -> bytes:
    """Pack dictionary indices at max(1, ceil(log2 N)) bits each."""
    for i in indices:
        if not 0 <= i < n_entries:
            raise IndexOutOfRange(f"index {i} outside dictionary of {n_entries}")
    return pack(indices, index_width(n_entries))


def unpack_indices(data: bytes, n_entries: int, index_count: int) -> list[int]:
    values = unpack(data, index_width(n_entries), index_count)
    for v in values:
        if v >= n_entries:
            raise IndexOutOfRange(f"index {v} outside dictionary of {n_entries}")
    return values
