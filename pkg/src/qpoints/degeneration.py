"""Degeneration graphs of parameter sub-tori.

Every set of triples cuts a sub-torus out of the parameter torus; two sets
cut out the same sub-torus exactly when they have the same character-span
closure.  Nodes of the degeneration graph are the closed triple sets up to
coordinate symmetry, each carrying the dimension label of its sub-torus and
the type vector of the point variety it produces; arrows record strict
inclusion of closed sets (larger closed set = smaller torus = bigger point
variety), transitively reduced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .lattice import (
    SubLattice,
    node_label,
    num_pairs,
    pair_list,
    smith_normal_form,
    snf_diagonal,
    triple_char,
)
from .scalars import GroupScalar
from .triples import (
    TripleSet,
    all_triples,
    canonical_mask,
    canonical_mask_orbit,
    mask_images,
    num_triples,
)
from .variety import components


class BudgetError(ValueError):
    """A long-running enumeration was requested without the long flag."""


@dataclass(frozen=True)
class DegNode:
    """One symmetry class of closed triple sets."""

    closed_set: TripleSet  # canonical representative
    label: int
    type_vector: tuple[int, ...]
    orbit_size: int

    @property
    def n(self) -> int:
        return self.closed_set.n


@dataclass(frozen=True)
class DegGraph:
    n: int
    nodes: tuple[DegNode, ...]
    arrows: tuple[tuple[int, int], ...]  # indices into nodes

    def ids(self) -> tuple[str, ...]:
        return node_ids(self.nodes)

    def sinks(self) -> list[DegNode]:
        return [node for node in self.nodes if node.label == 0]


def _letters(k: int) -> str:
    out = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        out = chr(ord("a") + r) + out
    return out


def node_ids(nodes: Sequence[DegNode]) -> tuple[str, ...]:
    """Stable display ids: the label, plus a letter when several classes
    share it (e.g. 3_a, 3_b)."""
    by_label: dict[int, int] = {}
    for node in nodes:
        by_label[node.label] = by_label.get(node.label, 0) + 1
    seen: dict[int, int] = {}
    ids = []
    for node in nodes:
        if by_label[node.label] == 1:
            ids.append(str(node.label))
        else:
            k = seen.get(node.label, 0)
            seen[node.label] = k + 1
            ids.append(f"{node.label}_{_letters(k)}")
    return tuple(ids)


def _node_from_closed(closed: TripleSet, lat: SubLattice) -> DegNode:
    n = closed.n
    cm, orbit = canonical_mask_orbit(n, closed.mask)
    return DegNode(
        closed_set=TripleSet.from_mask(n, cm),
        label=node_label(closed, lat),
        type_vector=components(closed).type_vector,
        orbit_size=orbit,
    )


def _closed_reps_scan(n: int) -> list[DegNode]:
    """All closed triple sets by full subset scan, grouped into orbits."""
    nt = num_triples(n)
    trips = all_triples(n)
    chars = [triple_char(t, n) for t in trips]
    by_canon: dict[int, tuple[TripleSet, SubLattice, int]] = {}
    for mask in range(1 << nt):
        J = TripleSet.from_mask(n, mask)
        lat = SubLattice.span((chars[i] for i in range(nt) if mask >> i & 1), num_pairs(n))
        if any(
            not mask >> i & 1 and lat.contains(chars[i]) for i in range(nt)
        ):
            continue  # not closed
        cm = canonical_mask(n, mask)
        if cm in by_canon:
            rep, rlat, count = by_canon[cm]
            by_canon[cm] = (rep, rlat, count + 1)
        else:
            by_canon[cm] = (J, lat, 1)
    nodes = []
    for cm, (J, lat, count) in by_canon.items():
        node = _node_from_closed(J, lat)
        assert node.orbit_size == count
        nodes.append(node)
    return nodes


def _closed_reps_bfs(n: int) -> list[DegNode]:
    """Closed-set classes by closure-lattice traversal with symmetry pruning.

    Starting from the empty (closed) set, repeatedly adjoin one triple and
    close; every closed class is reached this way because dropping one
    element of a minimal generating set yields a smaller closed set.
    """
    P = num_pairs(n)
    trips = all_triples(n)
    chars = [triple_char(t, n) for t in trips]
    empty = TripleSet.empty(n)
    nodes = [_node_from_closed(empty, SubLattice(P))]
    seen_canonical = {empty.mask}
    seen_raw = {empty.mask}
    frontier: list[tuple[TripleSet, SubLattice]] = [(empty, SubLattice(P))]
    while frontier:
        next_frontier: list[tuple[TripleSet, SubLattice]] = []
        for rep, lat in frontier:
            for ti, t in enumerate(trips):
                if t in rep.triples:
                    continue
                lat2 = lat.copy()
                lat2.add(chars[ti])
                members = set(rep.triples)
                members.add(t)
                for tj, s in enumerate(trips):
                    if s not in members and lat2.contains(chars[tj]):
                        members.add(s)
                K = TripleSet(n, frozenset(members))
                km = K.mask
                if km in seen_raw:
                    continue
                seen_raw.add(km)
                cm = canonical_mask(n, km)
                if cm in seen_canonical:
                    continue
                seen_canonical.add(cm)
                nodes.append(_node_from_closed(K, lat2))
                next_frontier.append((K, lat2))
        frontier = next_frontier
    return nodes


@lru_cache(maxsize=None)
def _nodes_cached(n: int, method: str) -> tuple[DegNode, ...]:
    if method == "scan":
        nodes = _closed_reps_scan(n)
    elif method == "bfs":
        nodes = _closed_reps_bfs(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    nodes.sort(key=lambda node: (node.label, node.closed_set.mask))
    return tuple(nodes)


def enumerate_nodes(
    n: int, long: bool = False, method: str = "auto"
) -> tuple[DegNode, ...]:
    """All degeneration-graph nodes of dimension n, sorted by (label,
    canonical closed set).  n = 5 runs for minutes and must be requested
    with long=True."""
    if n > 5:
        raise BudgetError("node enumeration supported for n <= 5")
    if n == 5 and not long:
        raise BudgetError("n = 5 node enumeration requires the long flag")
    if method == "auto":
        method = "scan" if n <= 4 else "bfs"
    return _nodes_cached(n, method)


def _strict_inclusion_classes(nodes: Sequence[DegNode]) -> set[tuple[int, int]]:
    """Pairs (u, v) where some permuted image of node u's closed set is a
    strict subset of node v's."""
    if not nodes:
        return set()
    n = nodes[0].n
    masks = [node.closed_set.mask for node in nodes]
    sizes = [len(node.closed_set) for node in nodes]
    rel = set()
    for u in range(len(nodes)):
        images = np.unique(mask_images(n, masks[u]))
        for v in range(len(nodes)):
            if sizes[u] >= sizes[v]:
                continue
            if bool(np.any((images & masks[v]) == images)):
                rel.add((u, v))
    return rel


def transitive_reduction(
    count: int, relation: set[tuple[int, int]]
) -> set[tuple[int, int]]:
    """Minimal arrow set with the same reachability; assumes the input
    relation is transitive (inclusion always is)."""
    return {
        (u, v)
        for (u, v) in relation
        if not any((u, w) in relation and (w, v) in relation for w in range(count))
    }


def build_graph(n: int, long: bool = False, method: str = "auto") -> DegGraph:
    """Degeneration graph: closed-set classes with transitively reduced
    strict-inclusion arrows."""
    nodes = enumerate_nodes(n, long=long, method=method)
    rel = _strict_inclusion_classes(nodes)
    arrows = sorted(transitive_reduction(len(nodes), rel))
    return DegGraph(n, nodes, tuple(arrows))


def sinks(n: int, long: bool = False) -> list[DegNode]:
    """Maximal degenerations: nodes whose sub-torus has the minimal
    dimension n, i.e. label 0.  For n <= 4 this is also the unique node
    with no outgoing arrow."""
    return [node for node in enumerate_nodes(n, long=long) if node.label == 0]


@dataclass(frozen=True)
class SolutionFamily:
    """Solutions of a system b_t = 1 (t in a good set) plus normalizations.

    The solution set of such a system is a torus of dimension free_rank
    times a finite component group; torsion_orders lists the cyclic factors
    and `exponent_columns[i]` the exponent vector (over pairs) its generator
    contributes to the parameters.
    """

    n: int
    free_rank: int
    torsion_orders: tuple[int, ...]
    exponent_columns: tuple[tuple[int, ...], ...]  # one column per torsion factor

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def count(self) -> int | None:
        if not self.is_finite:
            return None
        total = 1
        for d in self.torsion_orders:
            total *= d
        return total

    def solutions(self) -> list[dict[tuple[int, int], GroupScalar]]:
        """Explicit parameter assignments, when the solution set is finite."""
        if not self.is_finite:
            raise ValueError("solution set is positive-dimensional")
        m = lcm(*self.torsion_orders) if self.torsion_orders else 1
        modulus = m if m > 1 else 2
        pairs = pair_list(self.n)
        out = []
        for cand in itertools.product(*(range(d) for d in self.torsion_orders)):
            assignment = {}
            for p_idx, pair in enumerate(pairs):
                phase = sum(
                    (m // d) * c * col[p_idx]
                    for d, c, col in zip(self.torsion_orders, cand, self.exponent_columns)
                ) % m if self.torsion_orders else 0
                assignment[pair] = GroupScalar((), phase, modulus)
            out.append(assignment)
        return out

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"torus of dimension {self.free_rank}")
        for d in self.torsion_orders:
            parts.append(f"Z/{d}")
        if not parts:
            parts.append("a single point")
        return " x ".join(parts)


def forced_solutions(
    G: TripleSet, normalization: Iterable[tuple[int, int]] = ()
) -> SolutionFamily:
    """Solve b_t = 1 for all t in G, with selected parameters pinned to 1.

    The normalization typically pins one parameter per degree of freedom of
    the free rescaling torus (e.g. the last column q_in = 1); the result
    then shows whether the remaining solutions are finite and what values
    they force.
    """
    n = G.n
    P = num_pairs(n)
    idx = {p: i for i, p in enumerate(pair_list(n))}
    norm: list[tuple[int, int]] = []
    for pair in normalization:
        i, j = int(pair[0]), int(pair[1])
        if not (0 <= i < j <= n):
            raise ValueError(f"bad normalization pair {pair!r}")
        if (i, j) in norm:
            raise ValueError(f"duplicate normalization pair {pair!r}")
        norm.append((i, j))
    rows = [list(triple_char(t, n)) for t in G]
    for pair in norm:
        unit = [0] * P
        unit[idx[pair]] = 1
        rows.append(unit)
    if not rows:
        return SolutionFamily(n, P, (), ())
    D, _, V = smith_normal_form(rows)
    diag = snf_diagonal(D)
    orders = [diag[i] if i < len(diag) else 0 for i in range(P)]
    free_rank = sum(1 for d in orders if d == 0)
    torsion = [(i, d) for i, d in enumerate(orders) if d > 1]
    columns = tuple(
        tuple(V[p][i] % d for p in range(P)) for i, d in torsion
    )
    return SolutionFamily(
        n,
        free_rank,
        tuple(d for _, d in torsion),
        columns,
    )


def to_dot(graph: DegGraph) -> str:
    """Graphviz rendering with stable ordering; node captions are
    "id (type)"."""
    ids = graph.ids()
    lines = [f"digraph deg{graph.n} {{"]
    for node, nid in zip(graph.nodes, ids):
        tv = ",".join(str(c) for c in node.type_vector)
        lines.append(f'  "{nid}" [label="{nid} ({tv})"];')
    for (u, v) in graph.arrows:
        lines.append(f'  "{ids[u]}" -> "{ids[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json_dict(graph: DegGraph) -> dict:
    ids = graph.ids()
    return {
        "n": graph.n,
        "nodes": [
            {
                "id": nid,
                "label": node.label,
                "type": list(node.type_vector),
                "closed_set": [list(t) for t in node.closed_set],
                "orbit_size": node.orbit_size,
            }
            for node, nid in zip(graph.nodes, ids)
        ],
        "arrows": [[ids[u], ids[v]] for (u, v) in graph.arrows],
    }
