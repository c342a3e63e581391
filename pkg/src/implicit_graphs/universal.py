"""Universal graphs and labeling schemes, converted in both directions, plus exact
induced-embedding search at small sizes.

All embeddings are induced: edges and non-edges are both preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .core import Graph, graph_classes, iter_bits, vertex_pairs
from .errors import CapExceeded, SchemeError
from .labeling import UNIVERSAL, Decoder, Labeling, scheme_width

BUILD_CAP = 1 << 20
MIN_UNIVERSAL_CAP = 6
REPRESENTABLE_BUDGET = 10**7


@dataclass(frozen=True)
class UniversalGraph:
    carrier: Graph
    provenance: str = "explicit"

    @property
    def size(self) -> int:
        return self.carrier.n


@dataclass(frozen=True)
class Embedding:
    mapping: tuple[int, ...]  # mapping[v - 1] is the image of vertex v

    def __call__(self, v: int) -> int:
        return self.mapping[v - 1]

    def pairs(self) -> list[tuple[int, int]]:
        return [(v, x) for v, x in enumerate(self.mapping, 1)]


def code_vertex(code: str) -> int:
    """Carrier vertex holding ``code``: its binary value plus one."""
    return int(code or "0", 2) + 1


def universal_from_scheme(scheme: str, n: int, cap: int = BUILD_CAP) -> UniversalGraph:
    """Carrier on all 2^width codes, with edges wherever the decoder says adjacent."""
    width = scheme_width(scheme, n)
    u = 1 << width
    if u > cap:
        raise CapExceeded("universal_build_cap", cap, required=u)
    dec = Decoder(scheme)
    codes = [format(x, f"0{width}b") if width else "" for x in range(u)]
    rows = [0] * u
    for x in range(u):
        cx = codes[x]
        for y in range(x + 1, u):
            if dec(cx, codes[y]):
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return UniversalGraph(Graph(u, tuple(rows)), f"scheme:{scheme}:n={n}")


def scheme_embedding(lab: Labeling) -> Embedding:
    return Embedding(tuple(code_vertex(c) for c in lab.codes))


def embedding_violation(f: Graph, u: Graph, emb: Embedding) -> tuple[int, int] | str | None:
    """First problem with ``emb`` as an induced embedding of f into u, or None."""
    if len(emb.mapping) != f.n:
        return f"mapping has {len(emb.mapping)} entries for {f.n} vertices"
    if any(not 1 <= x <= u.n for x in emb.mapping):
        return "image out of range"
    if len(set(emb.mapping)) != f.n:
        return "mapping is not injective"
    for a in range(1, f.n + 1):
        for b in range(a + 1, f.n + 1):
            if f.has_edge(a, b) != u.has_edge(emb(a), emb(b)):
                return (a, b)
    return None


def is_induced_embedding(f: Graph, u: Graph, emb: Embedding) -> bool:
    return embedding_violation(f, u, emb) is None


def labels_from_universal(univ: UniversalGraph | Graph, f: Graph, emb: Embedding) -> Labeling:
    """Code of v is the binary index of its image; the decoder looks adjacency up in the carrier."""
    carrier = univ.carrier if isinstance(univ, UniversalGraph) else univ
    bad = embedding_violation(f, carrier, emb)
    if bad is not None:
        raise SchemeError(f"invalid induced embedding: {bad}")
    width = (carrier.n - 1).bit_length() if carrier.n else 0
    codes = tuple(format(x - 1, f"0{width}b") if width else "" for x in emb.mapping)
    return Labeling(UNIVERSAL, f.n, width, codes, carrier=carrier)


def find_induced_embedding(f: Graph, u: Graph) -> Embedding | None:
    """Backtracking over F's vertices by decreasing degree, filtering U-candidates by
    degree feasibility and consistency with every vertex already placed."""
    nf, nu = f.n, u.n
    if nf > nu:
        return None
    fdeg = [r.bit_count() for r in f.rows]
    udeg = [r.bit_count() for r in u.rows]
    order = sorted(range(nf), key=lambda v: (-fdeg[v], v))
    feasible = []
    for v in range(nf):
        mask = 0
        for x in range(nu):
            if udeg[x] >= fdeg[v] and nu - 1 - udeg[x] >= nf - 1 - fdeg[v]:
                mask |= 1 << x
        feasible.append(mask)
    assign = [-1] * nf
    urows, frows = u.rows, f.rows

    def place(i: int, used: int) -> bool:
        if i == nf:
            return True
        v = order[i]
        cand = feasible[v] & ~used
        for j in range(i):
            w = order[j]
            x = assign[w]
            cand &= urows[x] if frows[v] >> w & 1 else ~urows[x]
            if not cand:
                return False
        for x in iter_bits(cand):
            assign[v] = x
            if place(i + 1, used | 1 << x):
                return True
        assign[v] = -1
        return False

    if not place(0, 0):
        return None
    return Embedding(tuple(x + 1 for x in assign))


def represents(u: Graph, family: Iterable[Graph]) -> bool:
    return all(find_induced_embedding(f, u) is not None for f in family)


def min_universal_size(family: Sequence[Graph], u_max: int) -> int | None:
    """Smallest u <= u_max such that some u-vertex graph represents every member.

    Carriers are taken one per isomorphism class; representability does not
    depend on the labeling of the carrier.
    """
    if u_max > MIN_UNIVERSAL_CAP:
        raise CapExceeded("min_universal_cap", MIN_UNIVERSAL_CAP, required=u_max)
    need = max((f.n for f in family), default=0)
    for size in range(need, u_max + 1):
        for carrier, _ in graph_classes(size):
            if represents(carrier, family):
                return size
    return None


def _pattern(rows, tup) -> int:
    key = 0
    for a, b in vertex_pairs(len(tup)):
        key = key << 1 | (rows[tup[a]] >> tup[b] & 1)
    return key


def representable_patterns(u: Graph, n: int, budget: int = REPRESENTABLE_BUDGET) -> set[int]:
    """Edge-indicator indices of all labeled n-vertex graphs induced in ``u``."""
    need = u.n ** n
    if need > budget:
        raise CapExceeded("representable_budget", budget, required=need)
    return {_pattern(u.rows, t) for t in permutations(range(u.n), n)}


def count_representable(u: Graph, n: int, budget: int = REPRESENTABLE_BUDGET) -> int:
    count = len(representable_patterns(u, n, budget))
    assert count <= u.n ** n
    return count
