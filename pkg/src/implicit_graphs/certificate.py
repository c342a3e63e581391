"""Finite counting certificates for non-representability, and exact speed counts.

The headline object is the ``CertificateLedger``: both sides of the inequality
"more k-collections of pool graphs than any u-vertex universal graph can
represent", in exact dyadic arithmetic with the left side rounded up and the
right side rounded down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .core import (
    Graph,
    SplitMix64,
    canonical_form,
    enumerate_graphs,
    graph_from_index,
    induced_subgraph,
    parse_many,
    sample_bipartite,
    serialize,
)
from .degeneracy import (
    DEFAULT_BUDGET,
    badness_threshold,
    goodness_size_cap,
    is_good,
    is_k_degenerate,
    union_bound_exact,
)
from .errors import CapExceeded, GraphError
from .exact import (
    DEFAULT_PREC,
    ceil_pow2_sqrt,
    ceil_power,
    floor_power,
    log2_lower,
    log2_upper,
    to_fraction,
)
from .universal import MIN_UNIVERSAL_CAP, min_universal_size, represents

COUNT_DEGENERATE_CAP = 5
CLOSURE_MEMBER_CAP = 12
CLOSURE_N_CAP = 6
EXACT_BINOMIAL_CAP = 10**4
COUNTEREXAMPLE_U_CAP = 5
COUNTEREXAMPLE_N_CAP = 6

ALL_BIPARTITE = "allBipartite"
GOOD_LOWER_BOUND = "goodLowerBound"


class CertificateError(ValueError):
    """Ledger parameters for which no sound certificate can be formed."""


def degenerate_count_bound(n: int, c: int) -> int:
    """n! * n^(c n): orderings times forward-neighbour choices."""
    return math.factorial(n) * n ** (c * n)


def count_degenerate(n: int, c: int) -> int:
    """Exact number of labeled c-degenerate graphs on 1..n, by exhaustive enumeration."""
    if n > COUNT_DEGENERATE_CAP:
        raise CapExceeded("count_degenerate_cap", COUNT_DEGENERATE_CAP, required=n)
    count = sum(1 for g in enumerate_graphs(n) if is_k_degenerate(g, c))
    assert count <= degenerate_count_bound(n, c)
    return count


# ---------------------------------------------------------------------------
# Hereditary closure speed
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureSpeedReport:
    counts: dict[int, int]
    classes: dict[int, int]
    c: int | None = None
    comparator: dict[int, int] | None = None

    def to_json(self) -> dict:
        out = {
            "counts": {str(n): v for n, v in self.counts.items()},
            "classes": {str(n): v for n, v in self.classes.items()},
        }
        if self.comparator is not None:
            out["c"] = self.c
            out["comparator"] = {str(n): str(v) for n, v in self.comparator.items()}
        return out


def closure_speed(members: Sequence[Graph], n_max: int, c: int | None = None) -> ClosureSpeedReport:
    """Labeled speed of the hereditary closure of ``members`` for n = 1..n_max.

    Each isomorphism class of size-n induced subgraphs contributes n!/|Aut|.
    """
    if n_max > CLOSURE_N_CAP:
        raise CapExceeded("closure_n_cap", CLOSURE_N_CAP, required=n_max)
    big = max((g.n for g in members), default=0)
    if big > CLOSURE_MEMBER_CAP:
        raise CapExceeded("closure_member_cap", CLOSURE_MEMBER_CAP, required=big)
    counts, classes = {}, {}
    for n in range(1, n_max + 1):
        seen: dict[bytes, int] = {}
        for g in members:
            for s in combinations(range(1, g.n + 1), n):
                cf = canonical_form(induced_subgraph(g, s))
                seen[cf.code] = cf.aut_count
        counts[n] = sum(math.factorial(n) // aut for aut in seen.values())
        classes[n] = len(seen)
    comparator = None
    if c is not None:
        comparator = {n: degenerate_count_bound(n, c) for n in counts}
    return ClosureSpeedReport(counts, classes, c, comparator)


# ---------------------------------------------------------------------------
# Counting ledger
# ---------------------------------------------------------------------------


def log_binom_lower(a: int, b: int, prec: int = DEFAULT_PREC) -> Fraction:
    """Certified lower bound on log2 C(a, b) as a dyadic rational.

    Exact binomial when a <= 10^4; otherwise C(a, b) >= (a/b)^b.
    """
    if not 0 <= b <= a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    if a <= EXACT_BINOMIAL_CAP:
        return log2_lower(math.comb(a, b), prec)
    if b == 0:
        return Fraction(0)
    return b * log2_lower(Fraction(a, b), prec)


def kn(n: int) -> int:
    """Seed-family size ceil(2^sqrt(n))."""
    return ceil_pow2_sqrt(n)


def pool_edges(n: int, eps) -> int:
    """Edge count floor((n/2)^(2 - eps)) of the pool B(n/2, m)."""
    return floor_power(n // 2, 2 - to_fraction(eps))


@dataclass(frozen=True)
class CertificateLedger:
    n: int
    u: int
    k: int
    eps: Fraction
    eps_prime: Fraction
    pool_mode: str
    pool_edges: int
    pool_size_lower: int
    lhs_log2: Fraction
    rhs_log2: Fraction
    prec: int
    union_bound: Fraction | None = None

    @property
    def verdict(self) -> bool:
        return self.rhs_log2 > self.lhs_log2

    def to_json(self) -> dict:
        out = {
            "n": self.n, "u": self.u, "k": self.k,
            "eps": str(self.eps), "eps_prime": str(self.eps_prime),
            "pool_mode": self.pool_mode,
            "pool_edges": self.pool_edges,
            "pool_size_lower": str(self.pool_size_lower),
            "lhs_log2_num": str(self.lhs_log2.numerator),
            "lhs_log2_den": str(self.lhs_log2.denominator),
            "rhs_log2_num": str(self.rhs_log2.numerator),
            "rhs_log2_den": str(self.rhs_log2.denominator),
            "verdict": self.verdict,
            "prec": self.prec,
        }
        if self.union_bound is not None:
            out["union_bound_num"] = str(self.union_bound.numerator)
            out["union_bound_den"] = str(self.union_bound.denominator)
        return out


def ledger(n: int, u: int, k: int, eps, eps_prime=Fraction(1, 2),
           pool_mode: str = ALL_BIPARTITE, prec: int = DEFAULT_PREC) -> CertificateLedger:
    """Compare log2(2^(u^2) * u^(n k)) (rounded up) with log2 C(pool, k) (rounded down).

    A true verdict means some k-collection of n-vertex pool graphs has no
    u-vertex universal graph.
    """
    if n < 2 or n % 2:
        raise CertificateError(f"n must be even and >= 2, got {n}")
    if u < 1 or k < 1:
        raise CertificateError(f"need u, k >= 1, got u={u}, k={k}")
    e, ep = to_fraction(eps), to_fraction(eps_prime)
    if not 0 <= ep < e < 1:
        raise CertificateError(f"need 0 <= eps' < eps < 1, got eps={e}, eps'={ep}")
    half = n // 2
    m = pool_edges(n, e)
    pool_total = math.comb(half * half, m)
    ub = None
    if pool_mode == ALL_BIPARTITE:
        pool = pool_total
    elif pool_mode == GOOD_LOWER_BOUND:
        c = badness_threshold(e, ep)
        s = max(1, goodness_size_cap(n, ep))
        ub = union_bound_exact(half, m, c, s)
        if ub >= 1:
            raise CertificateError(f"union bound {float(ub):.4g} >= 1 gives no lower bound on good graphs")
        x = (1 - ub) * pool_total
        pool = -(-x.numerator // x.denominator)
    else:
        raise CertificateError(f"unknown pool mode {pool_mode!r}")
    if k > pool:
        raise CertificateError(f"k={k} exceeds pool size lower bound {pool}")
    rhs = log_binom_lower(pool, k, prec)
    lhs = u * u + n * k * log2_upper(u, prec)
    return CertificateLedger(n, u, k, e, ep, pool_mode, m, pool, lhs, rhs, prec, ub)


def sweep_grid(n: int, delta) -> tuple[list[int], list[int]]:
    """Powers of two u <= 2^ceil(n^(1/2 - delta)) and k <= 2^ceil(sqrt n), plus k_n."""
    d = to_fraction(delta)
    u_exp = ceil_power(n, Fraction(1, 2) - d)
    k_exp = ceil_power(n, Fraction(1, 2))
    us = [1 << i for i in range(u_exp + 1)]
    ks = sorted({1 << i for i in range(k_exp + 1)} | {kn(n)})
    return us, ks


def ledger_sweep(n_max: int, eps, delta, pool_mode: str = ALL_BIPARTITE,
                 prec: int = DEFAULT_PREC, n_min: int = 2) -> list[CertificateLedger]:
    """Ledgers over even n in [n_min, n_max] and the grid from ``sweep_grid``.

    Tuples with k above the pool bound are skipped. Output is sorted by (n, u, k).
    """
    out = []
    for n in range(max(2, n_min + n_min % 2), n_max + 1, 2):
        us, ks = sweep_grid(n, delta)
        for u in us:
            for k in ks:
                try:
                    out.append(ledger(n, u, k, eps, Fraction(1, 2), pool_mode, prec))
                except CertificateError:
                    continue
    return out


# ---------------------------------------------------------------------------
# Exhaustive counterexamples
# ---------------------------------------------------------------------------


def verify_non_representable(collection: Sequence[Graph], u: int) -> bool:
    """Direct scan over every labeled graph on at most u vertices, no isomorphism pruning."""
    for size in range(0, u + 1):
        for carrier in enumerate_graphs(size):
            if represents(carrier, collection):
                return False
    return True


@dataclass(frozen=True)
class CounterexampleResult:
    n: int
    u: int
    k: int
    seed: int
    attempts: int
    collection: tuple[Graph, ...] | None

    def to_json(self) -> dict:
        return {
            "n": self.n, "u": self.u, "k": self.k, "seed": self.seed,
            "attempts_used": self.attempts,
            "found": self.collection is not None,
            "collection": [serialize(g) for g in self.collection] if self.collection else None,
        }


def search_counterexample_exhaustive(n: int, u: int, k: int, seed: int, attempts: int,
                                     predicate: Callable[[Graph], bool] | None = None
                                     ) -> CounterexampleResult:
    """Sample k-sets of distinct labeled n-vertex graphs until one has no universal
    graph on <= u vertices. Returned collections are re-checked by a direct scan."""
    if u > COUNTEREXAMPLE_U_CAP or u > MIN_UNIVERSAL_CAP:
        raise CapExceeded("counterexample_u_cap", COUNTEREXAMPLE_U_CAP, required=u)
    if n > COUNTEREXAMPLE_N_CAP:
        raise CapExceeded("counterexample_n_cap", COUNTEREXAMPLE_N_CAP, required=n)
    total = 1 << math.comb(n, 2)
    pool = list(range(total))
    if predicate is not None:
        pool = [i for i in pool if predicate(graph_from_index(n, i))]
    if not 1 <= k <= len(pool):
        raise ValueError(f"k={k} must lie in 1..{len(pool)} (number of candidate graphs)")
    rng = SplitMix64(seed)
    for attempt in range(1, attempts + 1):
        idx = pool[:]
        for i in range(k):
            j = i + rng.below(len(idx) - i)
            idx[i], idx[j] = idx[j], idx[i]
        collection = tuple(graph_from_index(n, x) for x in sorted(idx[:k]))
        if min_universal_size(collection, u) is None:
            if not verify_non_representable(collection, u):
                raise AssertionError("pruned and direct representability scans disagree")
            return CounterexampleResult(n, u, k, seed, attempt, collection)
    return CounterexampleResult(n, u, k, seed, attempts, None)


# ---------------------------------------------------------------------------
# Seed families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyBlock:
    n: int
    k_formula: int
    cap: int
    m: int
    c: int
    size_cap: int
    sampled: int
    verdicts: tuple[str, ...]
    members: tuple[Graph, ...]

    @property
    def accepted(self) -> int:
        return len(self.members)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.sampled if self.sampled else 0.0


@dataclass(frozen=True)
class FamilySpec:
    delta: Fraction
    seed: int
    eps: Fraction
    eps_prime: Fraction
    blocks: tuple[FamilyBlock, ...] = field(default=())

    def members(self) -> list[Graph]:
        return [g for b in self.blocks for g in b.members]

    def to_json(self) -> dict:
        return {
            "delta": str(self.delta), "seed": self.seed,
            "eps": str(self.eps), "eps_prime": str(self.eps_prime),
            "size_threshold_counts": "total vertices of the bipartite graph",
            "blocks": [{
                "n": b.n, "k_n": str(b.k_formula), "cap": b.cap, "m": b.m,
                "c": b.c, "size_cap": b.size_cap, "sampled": b.sampled,
                "accepted": b.accepted, "acceptance_rate": b.acceptance_rate,
                "verdicts": list(b.verdicts),
            } for b in self.blocks],
        }


def build_family(n_list: Sequence[int], delta, seed: int, cap: int,
                 budget: int = DEFAULT_BUDGET) -> FamilySpec:
    """Sample up to min(k_n, cap) graphs from B(n/2, floor((n/2)^(2-eps))) per n and
    keep the good ones, with eps = 1/2 + delta/2 and eps' = 1/2.

    Sample seeds are the successive outputs of SplitMix64(seed), across all n in order.
    """
    d = to_fraction(delta)
    if not 0 < d < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    eps = Fraction(1, 2) + d / 2
    eps_prime = Fraction(1, 2)
    c = badness_threshold(eps, eps_prime)
    rng = SplitMix64(seed)
    blocks = []
    for n in n_list:
        if n < 2 or n % 2:
            raise ValueError(f"family sizes must be even and >= 2, got {n}")
        half = n // 2
        m = pool_edges(n, eps)
        k_formula = kn(n)
        count = min(k_formula, cap)
        verdicts, members, seen = [], [], set()
        size_cap = max(1, goodness_size_cap(n, eps_prime))
        for _ in range(count):
            b = sample_bipartite(half, m, rng.next())
            res = is_good(b, eps, eps_prime, budget)
            verdicts.append(res.verdict)
            g = b.to_graph()
            if res.verdict == "good" and g not in seen:
                seen.add(g)
                members.append(g)
        blocks.append(FamilyBlock(n, k_formula, cap, m, c, size_cap, count,
                                  tuple(verdicts), tuple(members)))
    return FamilySpec(d, seed, eps, eps_prime, tuple(blocks))


def serialize_family(fam: FamilySpec) -> str:
    out = [f"FAMILY {fam.delta} {fam.seed}\n"]
    for b in fam.blocks:
        out.append(f"BLOCK {b.n} {len(b.members)}\n")
        out += [serialize(g) for g in b.members]
    return "".join(out)


def parse_family(text: str) -> tuple[str, int, dict[int, list[Graph]]]:
    """Inverse of ``serialize_family``: (delta, seed, graphs per n)."""
    lines = text.splitlines()
    head = lines[0].split() if lines else []
    if len(head) != 3 or head[0] != "FAMILY":
        raise GraphError("family file must start with 'FAMILY delta seed'")
    blocks: dict[int, list[Graph]] = {}
    starts = [i for i, ln in enumerate(lines) if ln.startswith("BLOCK")]
    for j, i in enumerate(starts):
        _, n, count = lines[i].split()
        end = starts[j + 1] if j + 1 < len(starts) else len(lines)
        graphs = parse_many("\n".join(lines[i + 1:end]))
        if len(graphs) != int(count) or any(g.n != int(n) for g in graphs):
            raise GraphError(f"block for n={n} does not match its header")
        blocks[int(n)] = graphs
    return head[1], int(head[2]), blocks
