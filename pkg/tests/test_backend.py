import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pca import backend
from pca.errors import CorruptBackendStream, FormatError, UnknownBackend


def test_identity():
    assert backend.wrap(b"abc", backend.NONE) == b"abc"


def test_empty_deflate():
    wrapped = backend.wrap(b"", backend.DEFLATE)
    assert wrapped
    assert backend.unwrap(wrapped, backend.DEFLATE) == b""


def test_repetitive_input_shrinks():
    body = b"p(a,A,f(c,d,e)).\n" * 700
    assert len(body) >= 10 * 1024
    assert len(backend.wrap(body, backend.DEFLATE)) < len(body)


@given(st.binary(max_size=2000), st.sampled_from([backend.NONE, backend.DEFLATE]))
def test_round_trip(data, backend_id):
    assert backend.unwrap(backend.wrap(data, backend_id), backend_id) == data


def test_corrupt_stream():
    wrapped = backend.wrap(os.urandom(500), backend.DEFLATE)
    with pytest.raises(CorruptBackendStream):
        backend.unwrap(b"\xff\xff\xff\xff", backend.DEFLATE)
    with pytest.raises(CorruptBackendStream):
        backend.unwrap(wrapped[:-3], backend.DEFLATE)
    with pytest.raises(CorruptBackendStream):
        backend.unwrap(wrapped + b"x", backend.DEFLATE)


def test_unknown_backend():
    with pytest.raises(UnknownBackend):
        backend.wrap(b"", 7)
    with pytest.raises(UnknownBackend) as info:
        backend.unwrap(b"", 7)
    assert "7" in str(info.value)
    assert isinstance(info.value, FormatError)
