"""
graph6 encoder/decoder.

Bit order follows the standard: for j = 1..n-1 and i = 0..j-1 the bit for
pair (i, j) is emitted, padded with zeros to a multiple of six, and every
6-bit chunk is written as chr(63 + value).
"""
from src.errors import MalformedHeaderError, TruncatedPayloadError
from src.graphs.graph_core import Graph, build_graph

HEADER = b">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise MalformedHeaderError("vertex count must be non-negative")
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126] + [63 + (n >> s & 63) for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise MalformedHeaderError(f"graph6 cannot hold {n} vertices")


def _decode_size(data: bytes):
    """Return (n, offset of payload)."""
    if not data:
        raise MalformedHeaderError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedHeaderError("8-byte size prefix is incomplete")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedHeaderError("4-byte size prefix is incomplete")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def encode_graph6(g: Graph, header: bool = False) -> bytes:
    n = g.num_vertices
    out = bytearray(HEADER if header else b"")
    out += _encode_size(n)
    value, filled = 0, 0
    for j in range(1, n):
        row = g.adjacency[j]
        for i in range(j):
            value = (value << 1) | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(63 + value)
                value, filled = 0, 0
    if filled:
        out.append(63 + (value << (6 - filled)))
    return bytes(out)


def decode_graph6(data) -> Graph:
    """Decode one graph6 record; the optional header and trailing newline are accepted."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = bytes(data).strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if any(c < 63 or c > 126 for c in data):
        raise MalformedHeaderError("graph6 bytes must lie in 63..126")
    n, offset = _decode_size(data)
    payload = data[offset:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(payload) < need:
        raise TruncatedPayloadError(f"{n} vertices need {need} payload bytes, got {len(payload)}")
    if len(payload) > need:
        raise TruncatedPayloadError(f"{len(payload) - need} unexpected bytes after payload")

    edges = []
    bit = 0
    for j in range(1, n):
        for i in range(j):
            chunk = payload[bit // 6] - 63
            if chunk >> (5 - bit % 6) & 1:
                edges.append((i, j))
            bit += 1
    return build_graph(n, edges)
