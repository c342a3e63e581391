"""Immutable graphs on vertex set 1..n, small-graph canonical forms, and seeded sampling.

Adjacency is stored as one integer bitmask per vertex: bit ``v - 1`` of
``rows[u - 1]`` is set iff ``u`` and ``v`` are adjacent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, GraphError

CANONICAL_CAP = 8
ENUMERATION_CAP = 6
CLASSES_CAP = 6

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise GraphError(f"row count {len(self.rows)} does not match n={self.n}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full or row >> i & 1:
                raise GraphError(f"row {i + 1} has out-of-range bits or a self-loop")
            for j in iter_bits(row):
                if not self.rows[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency at ({i + 1}, {j + 1})")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u - 1] >> (v - 1) & 1)

    def neighbors(self, v: int) -> list[int]:
        return [j + 1 for j in iter_bits(self.rows[v - 1])]

    def degree(self, v: int) -> int:
        return self.rows[v - 1].bit_count()

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u + 1, v + 1) for u in range(self.n) for v in iter_bits(self.rows[u]) if u < v]

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class BipartiteGraph:
    """Member of B(n, m): parts 1..half and half+1..2*half, ``len(edges)`` cross edges."""

    half: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.half
        if n < 0:
            raise GraphError("negative part size")
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= n and n < v <= 2 * n):
                raise GraphError(f"edge ({u}, {v}) does not join the two parts")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @property
    def m(self) -> int:
        return len(self.edges)

    def to_graph(self) -> Graph:
        return make_graph(2 * self.half, self.edges)


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    aut_count: int


def iter_bits(x: int) -> Iterator[int]:
    """Yield the positions of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    rows = [0] * n
    for pair in edges:
        u, v = pair
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v}) for n={n}")
        if u == v:
            raise GraphError(f"self-loop at ({u}, {v})")
        if rows[u - 1] >> (v - 1) & 1:
            raise GraphError(f"duplicate edge ({u}, {v})")
        rows[u - 1] |= 1 << (v - 1)
        rows[v - 1] |= 1 << (u - 1)
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def induced_subgraph(g: Graph, s: Sequence[int]) -> Graph:
    """Graph on 1..len(s) where i ~ j iff s[i-1] ~ s[j-1] in ``g``."""
    seen = set()
    for v in s:
        if not 1 <= v <= g.n:
            raise GraphError(f"vertex {v} out of range 1..{g.n}")
        if v in seen:
            raise GraphError(f"duplicate vertex {v} in subset")
        seen.add(v)
    rows = []
    for v in s:
        row = g.rows[v - 1]
        r = 0
        for i, w in enumerate(s):
            if row >> (w - 1) & 1:
                r |= 1 << i
        rows.append(r)
    return Graph(len(s), tuple(rows))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of ``g`` under the bijection ``v -> perm[v - 1]`` (1-indexed values)."""
    if sorted(perm) != list(range(1, g.n + 1)):
        raise GraphError("relabeling is not a permutation of 1..n")
    return make_graph(g.n, [(perm[u - 1], perm[v - 1]) for u, v in g.edges()])


# ---------------------------------------------------------------------------
# Edge-indicator indexing and enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def vertex_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Pairs (u, v), u < v, in lexicographic order; 0-indexed."""
    return tuple((u, v) for u in range(n) for v in range(u + 1, n))


def graph_from_index(n: int, index: int) -> Graph:
    """Decode an edge-indicator integer; the first pair (1,2) is the most significant bit."""
    pairs = vertex_pairs(n)
    e = len(pairs)
    rows = [0] * n
    for j, (u, v) in enumerate(pairs):
        if index >> (e - 1 - j) & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def graph_index(g: Graph) -> int:
    pairs = vertex_pairs(g.n)
    e = len(pairs)
    idx = 0
    for j, (u, v) in enumerate(pairs):
        if g.rows[u] >> v & 1:
            idx |= 1 << (e - 1 - j)
    return idx


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All 2^C(n,2) labeled graphs on 1..n in lexicographic edge-indicator order."""
    if n > ENUMERATION_CAP:
        raise CapExceeded("enumeration_cap", ENUMERATION_CAP, required=n)
    for idx in range(1 << math.comb(n, 2)):
        yield graph_from_index(n, idx)


@lru_cache(maxsize=4096)
def canonical_form(g: Graph) -> CanonicalCode:
    """Lexicographically least adjacency string over all n! relabelings.

    ``aut_count`` is the number of relabelings attaining the minimum, which is
    exactly the order of the automorphism group.
    """
    n = g.n
    if n > CANONICAL_CAP:
        raise CapExceeded("canonical_cap", CANONICAL_CAP, required=n)
    pairs = vertex_pairs(n)
    rows = g.rows
    best = None
    count = 0
    for p in permutations(range(n)):
        key = 0
        for u, v in pairs:
            key = key << 1 | (rows[p[u]] >> p[v] & 1)
        if best is None or key < best:
            best, count = key, 1
        elif key == best:
            count += 1
    bits = format(best, f"0{len(pairs)}b") if pairs else ""
    return CanonicalCode(f"{n}:{bits}".encode(), count)


@lru_cache(maxsize=None)
def _pair_images(n: int) -> tuple[tuple[int, ...], ...]:
    index = {p: j for j, p in enumerate(vertex_pairs(n))}
    out = []
    for p in permutations(range(n)):
        out.append(tuple(index[tuple(sorted((p[u], p[v])))] for u, v in vertex_pairs(n)))
    return tuple(out)


@lru_cache(maxsize=None)
def graph_classes(n: int) -> tuple[tuple[Graph, int], ...]:
    """One representative per isomorphism class on n vertices, with its orbit size.

    The representative is the class member with the smallest edge-indicator
    index, i.e. the canonical relabeling. Orbit size equals n!/|Aut|.
    """
    if n > CLASSES_CAP:
        raise CapExceeded("classes_cap", CLASSES_CAP, required=n)
    e = math.comb(n, 2)
    images = _pair_images(n)
    seen = bytearray(1 << e)
    classes = []
    for idx in range(1 << e):
        if seen[idx]:
            continue
        set_pairs = [j for j in range(e) if idx >> (e - 1 - j) & 1]
        orbit = set()
        for img in images:
            new = 0
            for j in set_pairs:
                new |= 1 << (e - 1 - img[j])
            orbit.add(new)
        for o in orbit:
            seen[o] = 1
        classes.append((graph_from_index(n, idx), len(orbit)))
    return tuple(classes)


# ---------------------------------------------------------------------------
# Deterministic randomness
# ---------------------------------------------------------------------------

GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def prng_next(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns (new_state, output)."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.state = seed

    def next(self) -> int:
        self.state, out = prng_next(self.state)
        return out

    def below(self, bound: int) -> int:
        # plain remainder; bias <= bound / 2^64
        return self.next() % bound


def derive_seed(master: int, worker: int) -> int:
    """Seed for worker ``worker``: output number worker+1 of SplitMix64(master)."""
    rng = SplitMix64(master)
    out = 0
    for _ in range(worker + 1):
        out = rng.next()
    return out


def derived_seeds(master: int, count: int) -> list[int]:
    rng = SplitMix64(master)
    return [rng.next() for _ in range(count)]


def sample_bipartite(n: int, m: int, seed: int) -> BipartiteGraph:
    """Uniform member of B(n, m) by partial Fisher-Yates over the n^2 cells.

    Cell ``c`` is the edge (c // n + 1, n + c % n + 1).
    """
    cells_total = n * n
    if n < 0 or not 0 <= m <= cells_total:
        raise GraphError(f"need 0 <= m <= n^2, got n={n}, m={m}")
    rng = SplitMix64(seed)
    cells = list(range(cells_total))
    for i in range(m):
        j = i + rng.below(cells_total - i)
        cells[i], cells[j] = cells[j], cells[i]
    edges = sorted((c // n + 1, n + c % n + 1) for c in cells[:m])
    return BipartiteGraph(n, tuple(edges))


def random_graph(n: int, rng: SplitMix64, density: float = 0.5) -> Graph:
    """Each pair independently present with probability ``density`` (pairs in lex order)."""
    threshold = int(density * (1 << 64))
    return make_graph(n, [(u + 1, v + 1) for u, v in vertex_pairs(n) if rng.next() < threshold])


def random_forest(n: int, rng: SplitMix64) -> Graph:
    """Random recursive forest, then a uniformly random relabeling."""
    edges = []
    for v in range(2, n + 1):
        p = rng.below(v)
        if p:
            edges.append((p, v))
    perm = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return make_graph(n, [(perm[u - 1], perm[v - 1]) for u, v in edges])


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def serialize(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def serialize_bipartite(b: BipartiteGraph) -> str:
    lines = [f"B {b.half} {b.m}"]
    lines += [f"{u} {v}" for u, v in sorted(b.edges)]
    return "\n".join(lines) + "\n"


def _int_fields(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise GraphError(f"line {lineno}: non-integer field in {line!r}") from None
    if any(v < 0 for v in vals):
        raise GraphError(f"line {lineno}: negative value in {line!r}")
    return vals


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines()) if ln.strip()]


def _read_edges(lines, pos, m, header_no):
    if pos + m > len(lines):
        raise GraphError(f"line {header_no}: header declares {m} edges, fewer present")
    edges = [tuple(_int_fields(ln, 2, no)) for no, ln in lines[pos:pos + m]]
    return edges, pos + m


def parse_many(text: str) -> list[Graph]:
    """Parse zero or more consecutive graphs in the core text format."""
    lines = _content_lines(text)
    graphs = []
    pos = 0
    while pos < len(lines):
        no, header = lines[pos]
        n, m = _int_fields(header, 2, no)
        edges, pos = _read_edges(lines, pos + 1, m, no)
        graphs.append(make_graph(n, edges))
    return graphs


def parse(text: str) -> Graph:
    graphs = parse_many(text)
    if len(graphs) != 1:
        raise GraphError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def parse_bipartite(text: str) -> BipartiteGraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphError("empty input")
    no, header = lines[0]
    parts = header.split()
    if not parts or parts[0] != "B":
        raise GraphError(f"line {no}: bipartite header must start with 'B'")
    n, m = _int_fields(" ".join(parts[1:]), 2, no)
    edges, pos = _read_edges(lines, 1, m, no)
    if pos != len(lines):
        raise GraphError(f"line {lines[pos][0]}: trailing content after {m} edges")
    norm = []
    for u, v in edges:
        if u > v:
            u, v = v, u
        if not (1 <= u <= n and n < v <= 2 * n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v}) for half={n}")
        norm.append((u, v))
    return BipartiteGraph(n, tuple(sorted(norm)))


def read_any_graph(text: str) -> Graph:
    """Accept either the core format or the bipartite format."""
    stripped = text.lstrip()
    if stripped.startswith("B"):
        return parse_bipartite(text).to_graph()
    return parse(text)
