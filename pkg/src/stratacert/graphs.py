"""Two-level enhanced boundary graphs and their enumeration.

A graph here is a star: a unique bottom-level vertex carrying the marked
legs, and top-level vertices each joined to the bottom by one or more
edges.  Every edge carries an enhancement (prong) ``p_e >= 1`` encoding a
zero of order ``p_e - 1`` on its upper branch and a pole of order
``-p_e - 1`` on its lower branch.  For the minimal signature ``(2g-2)``
the isomorphism class of such a graph ("coarse type") is exactly the
bottom genus together with the multiset of (top genus, prong multiset)
pairs, so canonical forms are obtained by sorting -- no general
graph-isomorphism machinery is needed.

Enumeration is organized around *vertex types*: a type is a pair
``(h, prongs)`` with ``h >= 1`` and ``sum(prongs) = 2h - 2 + len(prongs)``
(the per-vertex prong balance).  A type has weight ``w = h + d - 1`` where
``d = len(prongs)``, and a graph of genus g with bottom genus ``g_b`` is a
multiset of types of total weight ``g - g_b``.  Types of equal ``(w, d)``
form a *block* (the top genus is then ``h = w + 1 - d``), which makes
counting and unranking cheap: the atlas can be counted, streamed in a
fixed deterministic order, or accessed at any index without enumerating
its predecessors.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .exactq import lcm_list, rational_str

NCT = "NCT"
RBT = "RBT"
OCT = "OCT"
EDB = "EDB"
EDGE_CLASSES = frozenset({NCT, RBT, OCT, EDB})

DELTA_IRR = "irr"


@dataclass(frozen=True)
class TopVertex:
    """A top-level vertex: genus, prong multiset, optional marked legs."""

    genus: int
    prongs: tuple
    legs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "prongs", tuple(sorted(self.prongs)))
        object.__setattr__(self, "legs", tuple(sorted(self.legs)))

    @property
    def degree(self) -> int:
        return len(self.prongs)

    def sort_key(self):
        return (self.genus, self.prongs, self.legs)


@dataclass(frozen=True)
class LevelGraph:
    """A two-level enhanced level graph with a unique bottom vertex."""

    genus: int
    bottom_genus: int
    bottom_legs: tuple
    top_vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "bottom_legs", tuple(sorted(self.bottom_legs)))
        tops = tuple(sorted(self.top_vertices, key=TopVertex.sort_key))
        object.__setattr__(self, "top_vertices", tops)

    @property
    def edge_count(self) -> int:
        return sum(v.degree for v in self.top_vertices)

    @property
    def v_top(self) -> int:
        return len(self.top_vertices)

    def prongs(self) -> tuple:
        """All prongs, in canonical (vertex, prong) order."""
        return tuple(p for v in self.top_vertices for p in v.prongs)

    def bottom_orders(self) -> tuple:
        """Leg orders on the bottom plus a pole of order -p-1 per edge."""
        return self.bottom_legs + tuple(-p - 1 for p in self.prongs())

    def has_top_legs(self) -> bool:
        return any(v.legs for v in self.top_vertices)


def minimal_graph(g: int, bottom_genus: int, tops: Iterable) -> LevelGraph:
    """Constructor for the minimal signature: ``tops`` = (genus, prongs) pairs."""
    vertices = tuple(TopVertex(h, tuple(p)) for h, p in tops)
    return LevelGraph(g, bottom_genus, (2 * g - 2,), vertices)


# ---------------------------------------------------------------------------
# canonical encoding


def canonical_encoding(graph: LevelGraph) -> str:
    """Bit-exact canonical text form; equality iff coarse-type isomorphism."""
    if graph.has_top_legs():
        raise ValueError("canonical_encoding: top-level legs are not encoded")
    legs = ",".join(str(m) for m in graph.bottom_legs)
    tops = ",".join(
        f"({v.genus},[{','.join(str(p) for p in v.prongs)}])"
        for v in graph.top_vertices
    )
    return f"g={graph.genus};gb={graph.bottom_genus};legs={legs};top=[{tops}]"


_TOP_RE = re.compile(r"\((\d+),\[([\d,]*)\]\)")
_ENC_RE = re.compile(r"^g=(\d+);gb=(\d+);legs=([-\d,]*);top=\[(.*)\]$")


def parse_canonical_encoding(text: str) -> LevelGraph:
    m = _ENC_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad graph encoding: {text!r}")
    g, gb = int(m.group(1)), int(m.group(2))
    legs = tuple(int(x) for x in m.group(3).split(",") if x)
    tops = tuple(
        TopVertex(int(h), tuple(int(p) for p in ps.split(",") if p))
        for h, ps in _TOP_RE.findall(m.group(4))
    )
    return LevelGraph(g, gb, legs, tops)


# ---------------------------------------------------------------------------
# validation


def validate(graph: LevelGraph) -> list:
    """Check the full invariant battery; return the violated invariants."""
    problems = []
    g = graph.genus
    if graph.bottom_genus < 0:
        problems.append("bottom genus negative")
    if graph.v_top < 1:
        problems.append("no top-level vertex")
    for v in graph.top_vertices:
        if v.genus < 0:
            problems.append("top vertex genus negative")
        if any(p < 1 for p in v.prongs) or v.degree < 1:
            problems.append("prong must be >= 1 on every edge")
        balance = 2 * v.genus - 2 + v.degree + sum(v.legs)
        if sum(v.prongs) != balance:
            problems.append("prong balance violated at top vertex")
        if v.genus == 0 and v.degree + len(v.legs) < 3:
            problems.append("unstable genus-0 top vertex")
    e = graph.edge_count
    top_genus = sum(v.genus for v in graph.top_vertices)
    if graph.bottom_genus + top_genus + e - graph.v_top != g:
        problems.append("genus balance violated")
    if graph.bottom_genus == 0 and len(graph.bottom_legs) + e < 3:
        problems.append("bottom stability violated")
    n_top = sum(2 * v.genus - 1 + v.degree for v in graph.top_vertices)
    n_bot = 2 * graph.bottom_genus + e - graph.v_top
    if n_top < 1:
        problems.append("nonemptiness violated: N_top < 1")
    if n_bot < 1:
        problems.append("nonemptiness violated: N_bot < 1")
    return problems


# ---------------------------------------------------------------------------
# edge classification and invariants


def classify_edges(graph: LevelGraph) -> tuple:
    """Per-edge class in canonical edge order.

    An edge at a top vertex of degree >= 2 is non-separating (NCT).  A
    separating edge is EDB when it is the unique edge of the graph and one
    of its ends has genus 1, RBT when the component below it is a single
    rational vertex, and OCT otherwise.
    """
    classes = []
    single_edge = graph.edge_count == 1
    for v in graph.top_vertices:
        for _ in v.prongs:
            if v.degree >= 2:
                classes.append(NCT)
            elif single_edge and (v.genus == 1 or graph.bottom_genus == 1):
                classes.append(EDB)
            elif graph.v_top == 1 and graph.bottom_genus == 0:
                classes.append(RBT)
            else:
                classes.append(OCT)
    return tuple(classes)


def kappa_signature(orders: Sequence[int]) -> Fraction:
    """sum of m(m+2)/(m+1) over entries m != -1 (simple poles excluded)."""
    total = Fraction(0)
    for m in orders:
        if m != -1:
            total += Fraction(m * (m + 2), m + 1)
    return total


def hbb_shape(graph: LevelGraph) -> bool:
    """Shape test for hyperelliptic-banana-backbone graphs.

    True iff every top vertex is joined to the bottom by exactly one edge
    or by a pair of edges with equal prong, and at least one pair occurs.
    The hyperelliptic-membership and prong-matching conditions of the full
    definition are deliberately not tested; this is a conservative
    overestimate (it can only lower the certified coefficients).
    """
    has_pair = False
    for v in graph.top_vertices:
        if v.degree == 1:
            continue
        if v.degree == 2 and v.prongs[0] == v.prongs[1]:
            has_pair = True
            continue
        return False
    return has_pair


@dataclass(frozen=True)
class GraphInvariants:
    """Derived per-graph quantities used by the divisor-class formulas."""

    genus: int
    encoding: str
    prongs: tuple
    P: int
    P_minus1: Fraction
    ell: int
    edges: int
    v_top: int
    N_top: int
    N_bot: int
    kappa_bot: Fraction
    kappa_top: Fraction
    edge_classes: tuple
    delta_assignments: tuple
    R_NC: Fraction
    b_NC: Fraction
    delta_H: int


_RNC_WEIGHT = {NCT: Fraction(1, 2), RBT: Fraction(1), OCT: Fraction(2), EDB: Fraction(4)}


def graph_invariants(graph: LevelGraph, hbb_shape_test: bool = True) -> GraphInvariants:
    """Compute all derived invariants of a valid graph.

    ``hbb_shape_test=False`` forces ``delta_H = 0`` (sensitivity switch;
    the HBB correction then drops out of every downstream class).
    """
    g = graph.genus
    prongs = graph.prongs()
    e = len(prongs)
    p_sum = sum(prongs)
    p_inv = sum(Fraction(1, p) for p in prongs)
    ell = lcm_list(prongs)
    classes = classify_edges(graph)
    n_top = sum(2 * v.genus - 1 + v.degree for v in graph.top_vertices)
    n_bot = 2 * graph.bottom_genus + e - graph.v_top
    # kappa of the bottom level via the prong identity; the direct
    # signature evaluation lives in the divisor-class module and the two
    # routes are compared by the identity suite.
    kappa_bot = kappa_signature(graph.bottom_legs) - (p_sum - p_inv)
    kappa_top = kappa_signature(
        tuple(p - 1 for p in prongs) + tuple(m for v in graph.top_vertices for m in v.legs)
    )
    r_nc = Fraction(0)
    for p, cls in zip(prongs, classes):
        r_nc += _RNC_WEIGHT[cls] / p
    b_nc = ell * r_nc - 1
    deltas = []
    for v in graph.top_vertices:
        for _ in v.prongs:
            if v.degree >= 2:
                deltas.append(DELTA_IRR)
            else:
                deltas.append(min(v.genus, g - v.genus))
    delta_h = 1 if (hbb_shape_test and hbb_shape(graph)) else 0
    return GraphInvariants(
        genus=g,
        encoding=canonical_encoding(graph),
        prongs=prongs,
        P=p_sum,
        P_minus1=p_inv,
        ell=ell,
        edges=e,
        v_top=graph.v_top,
        N_top=n_top,
        N_bot=n_bot,
        kappa_bot=kappa_bot,
        kappa_top=kappa_top,
        edge_classes=classes,
        delta_assignments=tuple(deltas),
        R_NC=r_nc,
        b_NC=b_nc,
        delta_H=delta_h,
    )


# ---------------------------------------------------------------------------
# partitions into exactly k parts (nondecreasing tuples, lexicographic)


@lru_cache(maxsize=None)
def _p_exact(n: int, k: int) -> int:
    """Number of partitions of n into exactly k parts >= 1."""
    if k == 0:
        return 1 if n == 0 else 0
    if n < k:
        return 0
    if k == 1:
        return 1
    return _p_exact(n - 1, k - 1) + _p_exact(n - k, k)


def _p_exact_min(n: int, k: int, min_part: int) -> int:
    """Partitions of n into exactly k parts, each >= min_part."""
    shifted = n - k * (min_part - 1)
    return _p_exact(shifted, k) if shifted >= 0 else 0


def partitions_exact(n: int, k: int, min_part: int = 1) -> Iterator[tuple]:
    """Yield partitions of n into exactly k nondecreasing parts, lex order."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        if n >= min_part:
            yield (n,)
        return
    for p in range(min_part, n // k + 1):
        for rest in partitions_exact(n - p, k - 1, p):
            yield (p,) + rest


def partition_unrank(n: int, k: int, rank: int, min_part: int = 1) -> tuple:
    """The rank-th partition (0-based) in the order of partitions_exact."""
    if rank < 0 or rank >= _p_exact_min(n, k, min_part):
        raise IndexError("partition rank out of range")
    if k == 1:
        return (n,)
    for p in range(min_part, n // k + 1):
        c = _p_exact_min(n - p, k - 1, p)
        if rank < c:
            return (p,) + partition_unrank(n - p, k - 1, rank, p)
        rank -= c
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# vertex-type blocks


@dataclass(frozen=True)
class Block:
    """All vertex types of one (weight, degree); their genus is fixed."""

    weight: int
    degree: int
    genus: int
    size: int


@lru_cache(maxsize=None)
def vertex_blocks(max_weight: int) -> tuple:
    out = []
    for w in range(1, max_weight + 1):
        for d in range(1, w + 1):
            h = w + 1 - d
            n = _p_exact(2 * h - 2 + d, d)
            if n:
                out.append(Block(w, d, h, n))
    return tuple(out)


@lru_cache(maxsize=None)
def _block_partitions(h: int, d: int) -> tuple:
    return tuple(partitions_exact(2 * h - 2 + d, d))


# ---------------------------------------------------------------------------
# counting, enumeration, unranking
#
# Graphs of genus g with bottom genus g_b are multisets of vertex types of
# total weight W = g - g_b.  Constraints:
#   * dimension filter: N_bot = 2 g_b + E - v >= 1; automatic for
#     g_b >= 1, for g_b = 0 it requires some type of degree >= 2;
#   * raw mode (filter off) keeps only bottom stability: for g_b = 0 the
#     unique single-edge multiset {one degree-1 type of weight W} is out.


def _multiset_count(n: int, k: int) -> int:
    if k == 0:
        return 1
    return math.comb(n + k - 1, k)


class _AtlasIndex:
    """Counting tables over blocks for one genus.

    Both tables are filled iteratively from the last block backwards so
    that no recursion depth scales with the number of blocks (~g^2/2).
    """

    def __init__(self, g: int):
        self.g = g
        self.blocks = vertex_blocks(g)
        self._rejected = {}
        n = len(self.blocks)
        # table[b][budget] = number of multisets from blocks[b:] of that
        # total weight; the d1 variant restricts to degree-1 blocks
        any_next = [1] + [0] * g
        d1_next = [1] + [0] * g
        self._any = [None] * (n + 1)
        self._d1 = [None] * (n + 1)
        self._any[n] = any_next
        self._d1[n] = d1_next
        for b in range(n - 1, -1, -1):
            blk = self.blocks[b]
            any_here = list(self._any[b + 1])
            d1_here = list(self._d1[b + 1])
            for budget in range(blk.weight, g + 1):
                total = 0
                total_d1 = 0
                for k in range(1, budget // blk.weight + 1):
                    ways = _multiset_count(blk.size, k)
                    total += ways * self._any[b + 1][budget - k * blk.weight]
                    if blk.degree == 1:
                        total_d1 += ways * self._d1[b + 1][budget - k * blk.weight]
                any_here[budget] += total
                d1_here[budget] += total_d1
            self._any[b] = any_here
            self._d1[b] = d1_here

    def count_any(self, budget: int, b: int) -> int:
        """Multisets of types from blocks[b:] with total weight = budget."""
        return self._any[b][budget]

    def count_d1(self, budget: int, b: int) -> int:
        """Same, restricted to degree-1 blocks only."""
        return self._d1[b][budget]

    def count_for_bottom(self, g_b: int, dimension_filter: bool) -> int:
        budget = self.g - g_b
        if budget < 1:
            return 0
        total = self.count_any(budget, 0)
        if g_b == 0:
            if dimension_filter:
                total -= self.count_d1(budget, 0)
            else:
                total -= 1  # the unique single-edge multiset (unstable bottom)
        return total

    # -- ranking helpers -----------------------------------------------

    def rank_of_d1_multiset(self, budget: int, mults: dict) -> int:
        """Enumeration rank of a multiset supported on degree-1 blocks.

        ``mults`` maps weight -> multiplicity.  Degree-1 blocks have a
        single type, so no within-block combination rank arises.
        """
        rank = 0
        rem = budget
        for b, blk in enumerate(self.blocks):
            if rem == 0:
                break
            k = mults.get(blk.weight, 0) if blk.degree == 1 else 0
            if k == 0:
                continue
            rank += self.count_any(rem, b + 1)  # skip the k=0 subtree
            for kk in range(1, k):
                rank += _multiset_count(blk.size, kk) * self.count_any(rem - kk * blk.weight, b + 1)
            rem -= k * blk.weight
        return rank

    def rejected_ranks(self, dimension_filter: bool) -> list:
        """Raw ranks (at g_b = 0) of the multisets the filter removes."""
        key = bool(dimension_filter)
        cached = self._rejected.get(key)
        if cached is not None:
            return cached
        budget = self.g
        ranks = []
        if dimension_filter:
            # all multisets of degree-1 types = partitions of the budget
            for parts in _partitions_any(budget):
                mults = {}
                for w in parts:
                    mults[w] = mults.get(w, 0) + 1
                ranks.append(self.rank_of_d1_multiset(budget, mults))
        else:
            ranks.append(self.rank_of_d1_multiset(budget, {budget: 1}))
        ranks.sort()
        self._rejected[key] = ranks
        return ranks


def _partitions_any(n: int, min_part: int = 1) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for p in range(min_part, n + 1):
        for rest in _partitions_any(n - p, p):
            yield (p,) + rest


_INDEX_CACHE = {}


def _atlas_index(g: int) -> _AtlasIndex:
    idx = _INDEX_CACHE.get(g)
    if idx is None:
        idx = _INDEX_CACHE[g] = _AtlasIndex(g)
    return idx


def atlas_count(g: int, dimension_filter: bool = True) -> int:
    """Number of coarse types in the genus-g atlas (exact)."""
    if g < 2:
        raise ValueError("genus must be >= 2")
    idx = _atlas_index(g)
    return sum(idx.count_for_bottom(gb, dimension_filter) for gb in range(g))


def _graph_from_choice(g: int, g_b: int, chosen) -> LevelGraph:
    tops = []
    for (h, prongs, mult) in chosen:
        tops.extend(TopVertex(h, prongs) for _ in range(mult))
    return LevelGraph(g, g_b, (2 * g - 2,), tuple(tops))


def _admissible(g_b: int, chosen, dimension_filter: bool) -> bool:
    if g_b > 0:
        return True
    if dimension_filter:
        return any(len(prongs) >= 2 for _, prongs, _ in chosen)
    edges = sum(len(prongs) * m for _, prongs, m in chosen)
    return edges >= 2


def _multisets(items: tuple, k: int) -> Iterator[tuple]:
    """k-multisets of items as ((item, mult), ...) runs, index-lex order."""

    def rec(i: int, remaining: int):
        if remaining == 0:
            yield ()
            return
        if i >= len(items):
            return
        for m in range(remaining, 0, -1):
            for rest in rec(i + 1, remaining - m):
                yield ((items[i], m),) + rest
        yield from rec(i + 1, remaining)

    yield from rec(0, k)


def _unrank_multiset(n: int, k: int, rank: int) -> list:
    """rank-th k-multiset of indices in [0, n), matching _multisets order."""
    out = []
    i = 0
    while k > 0:
        for m in range(k, 0, -1):
            c = _multiset_count(n - i - 1, k - m)
            if rank < c:
                out.append((i, m))
                k -= m
                i += 1
                break
            rank -= c
        else:
            i += 1
    return out


def enumerate_level_graphs(g: int, dimension_filter: bool = True) -> Iterator[LevelGraph]:
    """Stream the genus-g atlas, one graph per coarse type.

    Order: bottom genus ascending, then multisets of vertex types in block
    order (per block: multiplicity zero first, then ascending, prong
    multisets lexicographically).  The stream is deterministic and matches
    :func:`atlas_unrank` index-for-index.
    """
    if g < 2:
        raise ValueError("genus must be >= 2")
    blocks = vertex_blocks(g)

    # Conceptually the recursion at block b emits the subtree that skips b
    # first, then multiplicities 1, 2, ... of b.  Unrolled, that means the
    # first *used* block is visited in descending order; iterating that way
    # keeps the generator depth at the number of used blocks (<= g) instead
    # of the number of blocks (~g^2/2), which would overflow the stack.
    def rec(b: int, budget: int, chosen):
        if budget == 0:
            yield chosen
            return
        for bi in range(len(blocks) - 1, b - 1, -1):
            blk = blocks[bi]
            if blk.weight > budget:
                continue
            parts = _block_partitions(blk.genus, blk.degree)
            for k in range(1, budget // blk.weight + 1):
                for combo in _multisets(parts, k):
                    picked = chosen + tuple(
                        (blk.genus, pr, mult) for pr, mult in combo)
                    yield from rec(bi + 1, budget - k * blk.weight, picked)

    for g_b in range(g):
        for chosen in rec(0, g - g_b, ()):
            if _admissible(g_b, chosen, dimension_filter):
                yield _graph_from_choice(g, g_b, chosen)


def atlas_unrank(g: int, rank: int, dimension_filter: bool = True) -> LevelGraph:
    """The graph at a given stream index, without enumerating predecessors."""
    if rank < 0:
        raise IndexError("negative atlas rank")
    idx = _atlas_index(g)
    for g_b in range(g):
        n_here = idx.count_for_bottom(g_b, dimension_filter)
        if rank >= n_here:
            rank -= n_here
            continue
        if g_b == 0:
            # translate the filtered rank to a raw enumeration rank
            for rr in idx.rejected_ranks(dimension_filter):
                if rr <= rank:
                    rank += 1
        chosen = _unrank_choice(idx, g - g_b, rank)
        return _graph_from_choice(g, g_b, chosen)
    raise IndexError("atlas rank out of range")


def _unrank_choice(idx: _AtlasIndex, budget: int, rank: int):
    blocks = idx.blocks
    chosen = ()
    b = 0
    while budget > 0:
        blk = blocks[b]
        skip = idx.count_any(budget, b + 1)
        if rank < skip:
            b += 1
            continue
        rank -= skip
        parts_total = 2 * blk.genus - 2 + blk.degree
        for k in range(1, budget // blk.weight + 1):
            suffix = idx.count_any(budget - k * blk.weight, b + 1)
            ways = _multiset_count(blk.size, k)
            if suffix and rank < ways * suffix:
                combo_rank, rank = divmod(rank, suffix)
                combo = _unrank_multiset(blk.size, k, combo_rank)
                chosen = chosen + tuple(
                    (blk.genus, partition_unrank(parts_total, blk.degree, j), m)
                    for j, m in combo
                )
                budget -= k * blk.weight
                b += 1
                break
            rank -= ways * suffix
        else:
            raise AssertionError("unranking walked off the block list")
    return chosen


def sample_atlas(g: int, count: int, dimension_filter: bool = True) -> list:
    """Deterministic spread sample: ``count`` graphs at evenly spaced ranks."""
    total = atlas_count(g, dimension_filter)
    if count >= total:
        return list(enumerate_level_graphs(g, dimension_filter))
    if count <= 1:
        ranks = [0]
    else:
        ranks = sorted({(i * (total - 1)) // (count - 1) for i in range(count)})
    return [atlas_unrank(g, r, dimension_filter) for r in ranks]


# ---------------------------------------------------------------------------
# atlas export


_CSV_COLUMNS = (
    "encoding", "P", "P_inv", "ell", "v_top", "N_bot",
    "kappa_bot", "b_NC", "delta_H", "edge_classes",
)


def write_atlas(graphs: Iterable[LevelGraph], out, fmt: str = "text",
                hbb_shape_test: bool = True) -> None:
    """Write an atlas to a file object as text, json, or csv."""
    if fmt == "text":
        for graph in graphs:
            out.write(canonical_encoding(graph) + "\n")
    elif fmt == "json":
        rows = []
        for graph in graphs:
            inv = graph_invariants(graph, hbb_shape_test)
            rows.append({
                "encoding": inv.encoding,
                "invariants": {
                    "P": inv.P,
                    "P_inv": rational_str(inv.P_minus1),
                    "ell": inv.ell,
                    "v_top": inv.v_top,
                    "N_top": inv.N_top,
                    "N_bot": inv.N_bot,
                    "kappa_bot": rational_str(inv.kappa_bot),
                    "R_NC": rational_str(inv.R_NC),
                    "b_NC": rational_str(inv.b_NC),
                    "delta_H": inv.delta_H,
                    "edge_classes": list(inv.edge_classes),
                },
            })
        json.dump(rows, out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(_CSV_COLUMNS)
        for graph in graphs:
            inv = graph_invariants(graph, hbb_shape_test)
            writer.writerow([
                inv.encoding, inv.P, rational_str(inv.P_minus1), inv.ell,
                inv.v_top, inv.N_bot, rational_str(inv.kappa_bot),
                rational_str(inv.b_NC), inv.delta_H,
                "|".join(inv.edge_classes),
            ])
    else:
        raise ValueError(f"unknown atlas format: {fmt}")


def read_atlas(lines: Iterable[str]) -> list:
    """Read a text atlas (one canonical encoding per line)."""
    graphs = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            graphs.append(parse_canonical_encoding(line))
    return graphs
