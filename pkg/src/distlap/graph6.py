"""graph6 encoding and decoding (McKay's format), bit-exact.

Upper-triangle adjacency bits are taken column by column (``j`` from 1,
``i`` from 0 to ``j - 1``), packed six to a byte big-endian and offset by 63.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph, from_edge_list

__all__ = ["encode", "decode", "decode_edges"]

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    raise ValueError(f"graph6 cannot encode n = {n}")


def encode(g: Graph) -> str:
    n = g.n
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def decode_edges(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Order and edge list of a graph6 string; raises ``ParseError`` with the
    offending byte offset."""
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {ord(ch)!r} outside the graph6 range 63..126", base + pos)
    if not s:
        raise ParseError("empty graph6 string", base)
    if s[0] != "~":
        n, off = ord(s[0]) - 63, 1
    elif len(s) >= 4 and s[1] != "~":
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        off = 4
    else:
        raise ParseError("graph6 orders above 258047 are not supported", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[off:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n = {n}, found {len(body)}", base + off)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if need and (ord(body[-1]) - 63) & ((1 << (need * 6 - nbits)) - 1):
        raise ParseError("nonzero padding bits", base + off + need - 1)
    return n, edges


def decode(text: str) -> Graph:
    n, edges = decode_edges(text)
    if n == 0:
        raise ParseError("graph6 string encodes the empty graph", 0)
    return from_edge_list(n, edges)
