"""Optional general-purpose compression of the container body."""

import zlib

from .errors import CorruptBackendStream, UnknownBackend

NONE = 0
DEFLATE = 1
BACKENDS = {"none": NONE, "deflate": DEFLATE}


def _check(backend_id: int) -> None:
    if backend_id not in (NONE, DEFLATE):
        raise UnknownBackend(f"unknown backend id {backend_id}")


def wrap(body: bytes, backend_id: int) -> bytes:
    _check(backend_id)
    if backend_id == NONE:
        return bytes(body)
    # raw RFC 1951 stream: negative wbits drops the zlib header and checksum
    comp = zlib.compressobj(9, zlib.DEFLATED, -15, 9)
    return comp.compress(body) + comp.flush()


def unwrap(data: bytes, backend_id: int) -> bytes:
    _check(backend_id)
    if backend_id == NONE:
        return bytes(data)
    decomp = zlib.decompressobj(-15)
    try:
        out = decomp.decompress(data) + decomp.flush()
    except zlib.error as exc:
        raise CorruptBackendStream(f"corrupt deflate stream: {exc}") from None
    if not decomp.eof:
        raise CorruptBackendStream("deflate stream is truncated")
    if decomp.unused_data:
        raise CorruptBackendStream("bytes after the end of the deflate stream")
    return out
