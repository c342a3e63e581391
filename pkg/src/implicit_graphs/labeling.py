"""Adjacency labeling schemes: forest (id + parent), k-degenerate (id + forward
neighbours), and the adjacency-row baseline.

Codes are bit strings, most significant bit first, fields concatenated in the
order listed. Vertex ids occupy ceil(log2(n+1)) bits; 0 is the sentinel.
A decoder sees only the scheme id and two codes. Field widths are recovered
from the code length, so the same decoder serves every n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Graph, iter_bits
from .degeneracy import core_mask, peel_ordering
from .errors import SchemeError

FOREST = "forest"
ROW = "row"
UNIVERSAL = "universal"

_DEGENERATE_RE = re.compile(r"^degenerate\((\d+)\)$")


def id_bits(n: int) -> int:
    """ceil(log2(n + 1))."""
    return n.bit_length()


def degenerate_scheme(k: int) -> str:
    return f"degenerate({k})"


def parse_scheme(scheme: str) -> tuple[str, int | None]:
    if scheme in (FOREST, ROW, UNIVERSAL):
        return scheme, None
    m = _DEGENERATE_RE.match(scheme)
    if m:
        return "degenerate", int(m.group(1))
    raise SchemeError(f"unknown scheme {scheme!r}")


def scheme_width(scheme: str, n: int) -> int:
    kind, k = parse_scheme(scheme)
    f = id_bits(n)
    if kind == FOREST:
        return 2 * f
    if kind == ROW:
        return f + n
    if kind == "degenerate":
        return (k + 1) * f
    raise SchemeError("universal-graph labelings have no width formula in n")


def _fields(code: str, count: int) -> list[int]:
    f = len(code) // count
    return [int(code[i * f:(i + 1) * f] or "0", 2) for i in range(count)]


def _row_split(code: str) -> tuple[int, str]:
    w = len(code)
    for n in range(w, -1, -1):
        if n + id_bits(n) == w:
            f = w - n
            return int(code[:f] or "0", 2), code[f:]
    raise SchemeError(f"no n gives a row code of width {w}")


@dataclass(frozen=True)
class Decoder:
    """Two-code adjacency predicate for one scheme.

    ``carrier`` is only used by labelings read off a universal graph, where the
    decoder is adjacency lookup in that fixed graph.
    """

    scheme: str
    carrier: Graph | None = None

    def __call__(self, a: str, b: str) -> bool:
        kind, k = parse_scheme(self.scheme)
        if kind == FOREST:
            ida, pa = _fields(a, 2)
            idb, pb = _fields(b, 2)
            return (pa != 0 and pa == idb) or (pb != 0 and pb == ida)
        if kind == "degenerate":
            fa = _fields(a, k + 1)
            fb = _fields(b, k + 1)
            return (fa[0] != 0 and fa[0] in fb[1:]) or (fb[0] != 0 and fb[0] in fa[1:])
        if kind == ROW:
            ida, row_a = _row_split(a)
            idb, row_b = _row_split(b)
            hit_a = 1 <= idb <= len(row_a) and row_a[idb - 1] == "1"
            hit_b = 1 <= ida <= len(row_b) and row_b[ida - 1] == "1"
            return hit_a or hit_b
        if self.carrier is None:
            raise SchemeError("universal decoder needs a carrier graph")
        x, y = int(a or "0", 2) + 1, int(b or "0", 2) + 1
        if x == y or not (x <= self.carrier.n and y <= self.carrier.n):
            return False
        return self.carrier.has_edge(x, y)


@dataclass(frozen=True)
class Labeling:
    scheme: str
    n: int
    width: int
    codes: tuple[str, ...]  # codes[v - 1] is the code of vertex v
    carrier: Graph | None = None

    def __post_init__(self):
        for v, code in enumerate(self.codes, 1):
            if len(code) != self.width or set(code) - {"0", "1"}:
                raise SchemeError(f"code of vertex {v} is not a {self.width}-bit string: {code!r}")

    @property
    def decoder(self) -> Decoder:
        return Decoder(self.scheme, self.carrier)

    def decode(self, u: int, v: int) -> bool:
        return self.decoder(self.codes[u - 1], self.codes[v - 1])


def _bits(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else ""


def find_cycle(g: Graph) -> list[int] | None:
    """Some cycle of ``g`` as a vertex list, or None for forests."""
    core = core_mask(g.rows, (1 << g.n) - 1, 2)
    if not core:
        return None
    # every vertex of the 2-core has two core neighbours, so this walk never stalls
    start = next(iter_bits(core))
    walk, where = [start], {start: 0}
    prev = -1
    while True:
        cur = walk[-1]
        nxt = next(w for w in iter_bits(g.rows[cur] & core) if w != prev)
        if nxt in where:
            return [v + 1 for v in walk[where[nxt]:]]
        where[nxt] = len(walk)
        walk.append(nxt)
        prev = cur


def forest_parents(f: Graph) -> list[int]:
    """Parent of each vertex (0 for roots), rooting each component at its lowest vertex."""
    cycle = find_cycle(f)
    if cycle is not None:
        raise SchemeError(f"not a forest: cycle {'-'.join(map(str, cycle))}")
    parent = [0] * f.n
    seen = 0
    for root in range(f.n):
        if seen >> root & 1:
            continue
        seen |= 1 << root
        queue = [root]
        for v in queue:
            for w in iter_bits(f.rows[v] & ~seen):
                seen |= 1 << w
                parent[w] = v + 1
                queue.append(w)
    return parent


def forest_labels(f: Graph) -> Labeling:
    if peel_ordering(f).degeneracy > 1:
        forest_parents(f)  # raises with the cycle
    parent = forest_parents(f)
    b = id_bits(f.n)
    codes = tuple(_bits(v, b) + _bits(parent[v - 1], b) for v in range(1, f.n + 1))
    return Labeling(FOREST, f.n, 2 * b, codes)


def degenerate_labels(g: Graph, k: int) -> Labeling:
    if k < 0:
        raise SchemeError("k must be nonnegative")
    cert = peel_ordering(g)
    if cert.degeneracy > k:
        raise SchemeError(f"graph has degeneracy {cert.degeneracy} > k={k}")
    pos = cert.position()
    b = id_bits(g.n)
    codes = []
    for v in range(1, g.n + 1):
        later = sorted(w for w in g.neighbors(v) if pos[w] > pos[v])
        fields = [v] + later + [0] * (k - len(later))
        codes.append("".join(_bits(x, b) for x in fields))
    return Labeling(degenerate_scheme(k), g.n, (k + 1) * b, tuple(codes))


def row_labels(g: Graph) -> Labeling:
    b = id_bits(g.n)
    codes = []
    for v in range(1, g.n + 1):
        row = "".join("1" if g.has_edge(v, w) else "0" for w in range(1, g.n + 1))
        codes.append(_bits(v, b) + row)
    return Labeling(ROW, g.n, b + g.n, tuple(codes))


def label(g: Graph, scheme: str) -> Labeling:
    kind, k = parse_scheme(scheme)
    if kind == FOREST:
        return forest_labels(g)
    if kind == ROW:
        return row_labels(g)
    if kind == "degenerate":
        return degenerate_labels(g, k)
    raise SchemeError("universal labelings are built from an embedding, see labels_from_universal")


def verify_labeling(g: Graph, lab: Labeling) -> bool:
    """True iff the decoder reproduces every adjacency bit of ``g``."""
    if len(lab.codes) != g.n:
        raise SchemeError(f"{len(lab.codes)} codes for a graph on {g.n} vertices")
    if lab.scheme != UNIVERSAL and lab.width != scheme_width(lab.scheme, g.n):
        raise SchemeError(f"width {lab.width} does not match {lab.scheme} at n={g.n}")
    dec = lab.decoder
    codes = lab.codes
    for u in range(1, g.n + 1):
        for v in range(u + 1, g.n + 1):
            if dec(codes[u - 1], codes[v - 1]) != g.has_edge(u, v):
                return False
    return True


def mismatches(g: Graph, lab: Labeling) -> list[tuple[int, int]]:
    dec = lab.decoder
    return [(u, v) for u in range(1, g.n + 1) for v in range(u + 1, g.n + 1)
            if dec(lab.codes[u - 1], lab.codes[v - 1]) != g.has_edge(u, v)]


def serialize_labeling(lab: Labeling) -> str:
    lines = [f"{lab.scheme} {lab.n} {lab.width}"]
    lines += [f"{v} {code}" for v, code in enumerate(lab.codes, 1)]
    return "\n".join(lines) + "\n"


def parse_labeling(text: str) -> Labeling:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 3:
        raise SchemeError("labeling header must be 'scheme n width'")
    scheme = lines[0][0]
    parse_scheme(scheme)
    try:
        n, width = int(lines[0][1]), int(lines[0][2])
    except ValueError:
        raise SchemeError(f"bad labeling header {' '.join(lines[0])!r}") from None
    if len(lines) - 1 != n:
        raise SchemeError(f"header declares {n} codes, found {len(lines) - 1}")
    codes = [""] * n
    for i, parts in enumerate(lines[1:], 1):
        if parts[0] != str(i):
            raise SchemeError(f"expected vertex {i}, got {parts[0]!r}")
        codes[i - 1] = parts[1] if len(parts) > 1 else ""
    return Labeling(scheme, n, width, tuple(codes))
