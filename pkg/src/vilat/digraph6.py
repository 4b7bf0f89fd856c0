"""digraph6 serialization of cover relations.

A record is '&', the 6-bit-coded vertex count, then the row-major
adjacency matrix of the cover digraph packed six bits per byte with
offset 63.  Bit (i, j) is set when j covers i.  Encoding canonically
relabels first, so equal records mean isomorphic lattices.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .canon import canonical_relabel
from .core import LeveledLattice, lattice_from_cover_digraph

HEADER = b">>digraph6<<"


class MalformedRecord(ValueError):
    """Input is not a valid digraph6 record of a graded lattice."""


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes(
            [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
        )
    return bytes([126, 126]) + bytes(
        (((n >> (6 * s)) & 63) + 63) for s in range(5, -1, -1)
    )


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, bytes consumed)."""
    if not data:
        raise MalformedRecord("empty size field")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedRecord("truncated size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedRecord("truncated size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def encode(L: LeveledLattice) -> bytes:
    C = canonical_relabel(L)
    n, edges = C.cover_digraph()
    bits = bytearray((n * n + 5) // 6)
    for i, j in edges:
        pos = i * n + j
        bits[pos // 6] |= 1 << (5 - pos % 6)
    return b"&" + _encode_n(n) + bytes(b + 63 for b in bits)


def decode(record: bytes | str) -> LeveledLattice:
    data = record.encode() if isinstance(record, str) else bytes(record)
    if data.startswith(HEADER):
        data = data[len(HEADER) :]
    data = data.strip()
    if not data.startswith(b"&"):
        raise MalformedRecord("missing '&' prefix")
    n, used = _decode_n(data[1:])
    body = data[1 + used :]
    nbits = n * n
    if len(body) != (nbits + 5) // 6:
        raise MalformedRecord(f"expected {(nbits + 5) // 6} data bytes, got {len(body)}")
    edges = []
    for pos in range(6 * len(body)):
        b = body[pos // 6]
        if not 63 <= b <= 126:
            raise MalformedRecord(f"byte {b} out of range")
        if (b - 63) & (1 << (5 - pos % 6)):
            if pos >= nbits:
                raise MalformedRecord("nonzero padding bits")
            edges.append(divmod(pos, n))
    try:
        return lattice_from_cover_digraph(n, edges)
    except ValueError as e:
        raise MalformedRecord(str(e)) from e


def write_records(path, lattices: Iterable[LeveledLattice]) -> int:
    """Write one record per line; returns the number written."""
    count = 0
    with open(path, "wb") as fh:
        for L in lattices:
            fh.write(encode(L))
            fh.write(b"\n")
            count += 1
    return count


def read_records(path) -> Iterator[LeveledLattice]:
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line and line != HEADER:
                yield decode(line)
