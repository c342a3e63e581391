"""Peeling orders, exact search for small dense induced subgraphs, goodness, and the
finite form of the sparse-random-bipartite degeneracy lemma.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core import BipartiteGraph, Graph, derived_seeds, iter_bits, sample_bipartite
from .exact import ceil_div, floor_power, to_fraction

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class DegeneracyCertificate:
    order: tuple[int, ...]
    forward_degree: tuple[int, ...]  # indexed by vertex - 1
    degeneracy: int

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def peel_ordering(g: Graph) -> DegeneracyCertificate:
    """Repeatedly remove a minimum-degree vertex, lowest index on ties."""
    rows = g.rows
    remaining = (1 << g.n) - 1
    order = []
    fwd = [0] * g.n
    degen = 0
    while remaining:
        best, best_deg = -1, g.n
        for v in iter_bits(remaining):
            d = (rows[v] & remaining).bit_count()
            if d < best_deg:
                best, best_deg = v, d
        order.append(best + 1)
        fwd[best] = best_deg
        degen = max(degen, best_deg)
        remaining ^= 1 << best
    return DegeneracyCertificate(tuple(order), tuple(fwd), degen)


def is_k_degenerate(g: Graph, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return peel_ordering(g).degeneracy <= k


def degeneracy(g: Graph) -> int:
    return peel_ordering(g).degeneracy


def core_mask(rows, mask: int, c: int) -> int:
    """Vertices of the c-core of the subgraph induced by ``mask``."""
    changed = True
    while changed:
        changed = False
        for v in iter_bits(mask):
            if (rows[v] & mask).bit_count() < c:
                mask &= ~(1 << v)
                changed = True
    return mask


def c_core(g: Graph, c: int) -> list[int]:
    return [v + 1 for v in iter_bits(core_mask(g.rows, (1 << g.n) - 1, c))]


# ---------------------------------------------------------------------------
# Bad-subgraph search
# ---------------------------------------------------------------------------


class Outcome(enum.Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class BadSubgraphQuery:
    c: int
    size_cap: int
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.c < 1 or self.size_cap < 1 or self.budget < 1:
            raise ValueError(f"query needs c, size_cap, budget >= 1, got {self}")


@dataclass(frozen=True)
class BadSearchResult:
    outcome: Outcome
    witness: tuple[int, ...] | None = None
    expansions: int = 0


class _OutOfBudget(Exception):
    pass


def find_bad_subgraph(g: Graph, q: BadSubgraphQuery) -> BadSearchResult:
    """Find S with |S| <= size_cap and min degree of G[S] >= c, or prove none exists.

    Only connected S need to be searched (a component of a bad set is bad).
    The search starts from the c-core and branches on including or excluding
    one vertex adjacent to the current included set. After each branch the
    candidate pool is cut to vertices close enough to the included set (and
    with enough edges into it to reach degree c using the free slots), then
    re-cored. A node is pruned when an included vertex is lost, or when the
    summed degree deficit of the included set exceeds what the best
    ``size_cap - |inc|`` candidates can supply.
    """
    c, cap = q.c, q.size_cap
    if cap <= c:
        return BadSearchResult(Outcome.NONE)
    rows = g.rows
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > q.budget:
            raise _OutOfBudget

    def restrict(inc: int, pool: int) -> int:
        """Shrink ``pool`` to a fixpoint of distance, slot and core constraints; 0 if ``inc`` is lost."""
        size = inc.bit_count()
        # a new vertex sees at most cap - size - 1 other new vertices
        min_into = c - (cap - size - 1)
        while True:
            if inc:
                if min_into > 0:
                    for y in iter_bits(pool & ~inc):
                        if (rows[y] & inc).bit_count() < min_into:
                            pool &= ~(1 << y)
                reach, frontier = inc, inc
                for _ in range(cap - size):
                    nxt = 0
                    for v in iter_bits(frontier):
                        nxt |= rows[v]
                    frontier = nxt & pool & ~reach
                    if not frontier:
                        break
                    reach |= frontier
                new = core_mask(rows, reach & pool, c)
            else:
                new = core_mask(rows, pool, c)
            if new & inc != inc:
                return 0
            if new == pool:
                return new
            pool = new

    def grow(inc: int, pool: int) -> int:
        size = inc.bit_count()
        while True:
            tick()
            if pool.bit_count() <= cap:
                return pool
            if size >= cap:
                return 0
            deficit = 0
            for x in iter_bits(inc):
                deficit += max(0, c - (rows[x] & inc).bit_count())
            best, key = -1, None
            gains = []
            for w in iter_bits(pool & ~inc):
                into = (rows[w] & inc).bit_count()
                if into == 0:
                    continue
                gains.append(into)
                k = (into, (rows[w] & pool).bit_count(), -w)
                if key is None or k > key:
                    best, key = w, k
            # each new vertex pays at most its edge count into inc toward the total deficit
            gains.sort(reverse=True)
            if sum(gains[:cap - size]) < deficit:
                return 0
            if best < 0:
                return 0
            bit = 1 << best
            sub = restrict(inc | bit, pool)
            if sub:
                found = grow(inc | bit, sub)
                if found:
                    return found
            pool = restrict(inc, pool & ~bit)
            if not pool:
                return 0

    try:
        pool = core_mask(rows, (1 << g.n) - 1, c)
        while pool:
            tick()
            if pool.bit_count() <= cap:
                witness = pool
                break
            v = max(iter_bits(pool), key=lambda x: ((rows[x] & pool).bit_count(), -x))
            sub = restrict(1 << v, pool)
            witness = grow(1 << v, sub) if sub else 0
            if witness:
                break
            pool = core_mask(rows, pool & ~(1 << v), c)
        else:
            witness = 0
    except _OutOfBudget:
        return BadSearchResult(Outcome.BUDGET_EXCEEDED, None, counter[0] - 1)
    if witness:
        return BadSearchResult(Outcome.FOUND, tuple(v + 1 for v in iter_bits(witness)), counter[0])
    return BadSearchResult(Outcome.NONE, None, counter[0])


def min_degree_of(g: Graph, s) -> int:
    mask = 0
    for v in s:
        mask |= 1 << (v - 1)
    return min(((g.rows[v - 1] & mask).bit_count() for v in s), default=0)


# ---------------------------------------------------------------------------
# Goodness
# ---------------------------------------------------------------------------


def badness_threshold(eps, eps_prime) -> int:
    """Minimum-degree threshold c = ceil(4 / (eps - eps_prime)), in exact arithmetic."""
    e, ep = to_fraction(eps), to_fraction(eps_prime)
    if not 0 <= ep < e < 1:
        raise ValueError(f"need 0 <= eps' < eps < 1, got eps={eps}, eps'={eps_prime}")
    return math.ceil(Fraction(4) / (e - ep))


def goodness_size_cap(total_vertices: int, eps_prime) -> int:
    """floor(total_vertices ** eps_prime); the size threshold counts both parts."""
    return floor_power(total_vertices, eps_prime)


@dataclass(frozen=True)
class GoodnessResult:
    outcome: Outcome  # NONE means the graph is good
    c: int
    size_cap: int
    witness: tuple[int, ...] | None = None

    @property
    def verdict(self) -> str:
        return {Outcome.NONE: "good", Outcome.FOUND: "bad",
                Outcome.BUDGET_EXCEEDED: "budget_exceeded"}[self.outcome]


def is_good(b: BipartiteGraph, eps, eps_prime, budget: int = DEFAULT_BUDGET) -> GoodnessResult:
    c = badness_threshold(eps, eps_prime)
    s = max(1, goodness_size_cap(2 * b.half, eps_prime))
    res = find_bad_subgraph(b.to_graph(), BadSubgraphQuery(c, s, budget))
    return GoodnessResult(res.outcome, c, s, res.witness)


# ---------------------------------------------------------------------------
# Finite union bound and Monte Carlo
# ---------------------------------------------------------------------------


def _bound_term(n, m, c, a, b) -> Fraction:
    nn = n * n
    t = math.comb(n, a) * math.comb(n, b) * (
        Fraction(m * b, nn) ** (a * c) + Fraction(m * a, nn) ** (b * c))
    return min(t, Fraction(1))


def union_bound_exact(n: int, m: int, c: int, size_cap: int) -> Fraction:
    """Sum over part sizes 1 <= a, b <= size_cap of
    C(n,a) C(n,b) [(mb/n^2)^(ac) + (ma/n^2)^(bc)], each (a, b) term clipped at 1.
    """
    if n <= 0:
        raise ValueError("n must be positive (zero denominator)")
    if c < 1 or size_cap < 1 or m < 0 or m > n * n:
        raise ValueError(f"need c, size_cap >= 1 and 0 <= m <= n^2; got m={m}, c={c}, cap={size_cap}")
    total = Fraction(0)
    for a in range(1, size_cap + 1):
        for b in range(1, size_cap + 1):
            total += _bound_term(n, m, c, a, b)
    return total


@dataclass(frozen=True)
class Lemma21Report:
    n: int
    m: int
    c: int
    size_cap: int
    seed: int
    trials: int
    bad_count: int
    unknown_count: int
    union_bound: Fraction
    budget: int = DEFAULT_BUDGET
    per_trial: tuple[str, ...] = field(default=(), repr=False)

    @property
    def bad_frequency(self) -> Fraction:
        return Fraction(self.bad_count, self.trials)

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "c": self.c, "size_cap": self.size_cap,
            "seed": self.seed, "budget": self.budget,
            "trials": self.trials,
            "bad_count": self.bad_count,
            "bad_frequency": float(self.bad_frequency),
            "unknown_count": self.unknown_count,
            "union_bound_num": str(self.union_bound.numerator),
            "union_bound_den": str(self.union_bound.denominator),
        }


def _trial(args) -> str:
    n, m, c, cap, budget, s = args
    g = sample_bipartite(n, m, s).to_graph()
    return find_bad_subgraph(g, BadSubgraphQuery(c, cap, budget)).outcome.value


def monte_carlo_lemma21(n: int, m: int, c: int, size_cap: int, trials: int, seed: int,
                        budget: int = DEFAULT_BUDGET, workers: int = 1) -> Lemma21Report:
    """Sample ``trials`` graphs from B(n, m) and count those with a bad induced subgraph.

    Trial t uses output t+1 of SplitMix64(seed) as its seed, so results do not
    depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(n, m, c, size_cap, budget, s) for s in derived_seeds(seed, trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            outcomes = list(ex.map(_trial, jobs, chunksize=max(1, ceil_div(trials, 4 * workers))))
    else:
        outcomes = [_trial(j) for j in jobs]
    return Lemma21Report(
        n=n, m=m, c=c, size_cap=size_cap, seed=seed, trials=trials,
        bad_count=outcomes.count(Outcome.FOUND.value),
        unknown_count=outcomes.count(Outcome.BUDGET_EXCEEDED.value),
        union_bound=union_bound_exact(n, m, c, size_cap),
        budget=budget,
        per_trial=tuple(outcomes),
    )
