"""Directed acyclic graphs, d-separation, and induced models.

Two independent d-separation deciders are provided: a reachability search
over (node, entry-direction) states, and an oracle that reduces the query to
plain separation in a moralized ancestral graph. They are checked against
each other exhaustively in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

from .core import (
    IndependencyModel,
    Universe,
    bits_of,
    check_disjoint,
    enumerate_disjoint_triples,
)
from .ugraph import UndirectedGraph

MAX_DAG_ENUM_NODES = 5


@dataclass(frozen=True)
class Dag:
    """A directed acyclic graph over a universe; arcs are ordered index pairs.

    Acyclicity is checked at construction; a cyclic arc set raises
    ``ValueError``.
    """

    universe: Universe
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        n = self.universe.n
        arcs = frozenset(self.arcs)
        object.__setattr__(self, "arcs", arcs)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) outside the {n}-label universe")
        children = [0] * n
        for u, v in arcs:
            children[u] |= 1 << v
        # Peel sinks until nothing is left; leftovers witness a cycle.
        remaining = (1 << n) - 1
        progress = True
        while remaining and progress:
            progress = False
            for i in bits_of(remaining):
                if not children[i] & remaining:
                    remaining &= ~(1 << i)
                    progress = True
        if remaining:
            raise ValueError(
                f"arcs contain a directed cycle among nodes {list(bits_of(remaining))}"
            )

    @cached_property
    def child_masks(self) -> tuple[int, ...]:
        masks = [0] * self.universe.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def parent_masks(self) -> tuple[int, ...]:
        masks = [0] * self.universe.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    def descendants(self, w: int) -> int:
        """Strict descendants of ``w``: nodes reachable along arcs, excluding ``w``."""
        return self._closure(1 << w, self.child_masks) & ~(1 << w)

    def ancestors(self, w: int) -> int:
        """Strict ancestors of ``w``: nodes that reach ``w`` along arcs, excluding ``w``."""
        return self._closure(1 << w, self.parent_masks) & ~(1 << w)

    @staticmethod
    def _closure(mask: int, step_masks: tuple[int, ...]) -> int:
        seen = mask
        frontier = mask
        while frontier:
            nxt = 0
            for i in bits_of(frontier):
                nxt |= step_masks[i]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    def ancestral_closure(self, mask: int) -> int:
        """``mask`` together with all ancestors of its members."""
        return self._closure(mask, self.parent_masks)

    def d_separates(self, a: int, c: int, b: int) -> bool:
        """Decide whether ``c`` d-separates ``a`` from ``b``.

        A path between the two sets is blocked at an internal node ``w`` when
        either (i) the path's arcs converge at ``w`` and neither ``w`` nor any
        descendant of ``w`` is in ``c``, or (ii) the arcs do not converge at
        ``w`` and ``w`` is in ``c``. Separation holds iff every path is
        blocked somewhere; it holds vacuously when ``a`` or ``b`` is empty.

        Decided by a breadth-first search over (node, entry-direction)
        states, which finds an active walk iff an active path exists. The
        three masks must be pairwise disjoint.
        """
        for mask in (a, c, b):
            self.universe.check_mask(mask)
        check_disjoint(a, c, b)
        if a == 0 or b == 0:
            return True
        return not self._active_reach(a, c) & b

    def _active_reach(self, a: int, c: int) -> int:
        """Nodes reachable from ``a`` along a trail that ``c`` leaves active."""
        parents = self.parent_masks
        children = self.child_masks
        # Nodes that are in c or have a descendant in c: exactly the states
        # where a converging connection stays open.
        opened = self._closure(c, parents)
        out_seen = a  # entered by an arc leaving the node (or trail start)
        in_seen = 0  # entered by an arc pointing at the node
        frontier_out, frontier_in = a, 0
        while frontier_out or frontier_in:
            next_out = next_in = 0
            for i in bits_of(frontier_out):
                if not (c >> i) & 1:
                    next_out |= parents[i]
                    next_in |= children[i]
            for i in bits_of(frontier_in):
                if (opened >> i) & 1:
                    next_out |= parents[i]
                if not (c >> i) & 1:
                    next_in |= children[i]
            frontier_out = next_out & ~out_seen
            out_seen |= frontier_out
            frontier_in = next_in & ~in_seen
            in_seen |= frontier_in
        return out_seen | in_seen

    def d_separates_moral(self, a: int, c: int, b: int) -> bool:
        """Oracle decider: separation in the moralized ancestral graph.

        Restrict to the ancestral closure of ``a | b | c``, join each node's
        parents pairwise, drop arc directions, and test plain graph
        separation there.
        """
        for mask in (a, c, b):
            self.universe.check_mask(mask)
        check_disjoint(a, c, b)
        if a == 0 or b == 0:
            return True
        return self.moralized_ancestral_graph(a | b | c).separates(a, c, b)

    def moralized_ancestral_graph(self, mask: int) -> UndirectedGraph:
        """Undirected graph on the ancestral closure of ``mask`` with married parents.

        Nodes outside the closure are kept in the universe but left isolated.
        """
        keep = self.ancestral_closure(mask)
        parents = self.parent_masks
        edges = set()
        for v in bits_of(keep):
            ps = parents[v]  # ancestral closures are parent-closed
            for p in bits_of(ps):
                edges.add((p, v) if p < v else (v, p))
                spouses = ps & ~((1 << (p + 1)) - 1)
                for q in bits_of(spouses):
                    edges.add((p, q))
        return UndirectedGraph(self.universe, frozenset(edges))

    def dsep_model(self) -> IndependencyModel:
        """The model of all disjoint triples this DAG d-separates."""
        reach_cache: dict[tuple[int, int], int] = {}
        kept = []
        for t in enumerate_disjoint_triples(self.universe):
            if t.a == 0 or t.b == 0:
                kept.append(t)
                continue
            key = (t.a, t.c)
            reach = reach_cache.get(key)
            if reach is None:
                reach = self._active_reach(t.a, t.c)
                reach_cache[key] = reach
            if not reach & t.b:
                kept.append(t)
        return IndependencyModel(self.universe, frozenset(kept))

    def dag_pair_connected(self, alpha: int, beta: int) -> bool:
        """True iff the two nodes are joined by an arc in either direction.

        Equivalent to: no conditioning set d-separates the two nodes.
        """
        if alpha == beta:
            raise ValueError("the two nodes must be distinct")
        return bool(
            (self.child_masks[alpha] >> beta) & 1 or (self.child_masks[beta] >> alpha) & 1
        )


def _arc_bit_layout(n: int) -> list[tuple[int, int]]:
    """Ordered pairs (i, j), i != j, in lexicographic order; pair k is bit k."""
    return [(i, j) for i in range(n) for j in range(n) if j != i]


def _acyclic_arc_masks(n: int) -> Iterator[int]:
    """Arc bitmasks of all DAGs on ``n`` nodes, in ascending numeric order.

    Depth-first over bit positions from the most significant down, taking the
    0-branch first, so masks come out in counting order. A branch that sets a
    cycle-closing arc is pruned wholesale: supersets of a cyclic arc set stay
    cyclic.
    """
    pairs = _arc_bit_layout(n)
    total = len(pairs)

    def walk(bit: int, mask: int, reach: list[int]) -> Iterator[int]:
        if bit < 0:
            yield mask
            return
        yield from walk(bit - 1, mask, reach)
        u, v = pairs[bit]
        if (reach[v] >> u) & 1:
            return  # v already reaches u; adding u->v closes a cycle
        grown = list(reach)
        added = grown[v] | (1 << v)
        source = (1 << u) | sum(
            1 << w for w in range(n) if (grown[w] >> u) & 1
        )
        for w in bits_of(source):
            grown[w] |= added
        yield from walk(bit - 1, mask | (1 << bit), grown)

    yield from walk(total - 1, 0, [0] * n)


def enumerate_dags(universe: Universe) -> Iterator[Dag]:
    """Yield every labeled DAG on the universe exactly once.

    Order is ascending by arc bitmask, where bit ``k`` encodes the ``k``-th
    ordered pair of the lexicographic (i, j), i != j list. Gated at
    ``MAX_DAG_ENUM_NODES`` nodes.
    """
    n = universe.n
    if n > MAX_DAG_ENUM_NODES:
        raise ValueError(f"refusing to enumerate DAGs on {n} > {MAX_DAG_ENUM_NODES} nodes")
    pairs = _arc_bit_layout(n)
    for mask in _acyclic_arc_masks(n):
        yield Dag(universe, frozenset(pairs[k] for k in bits_of(mask)))


@lru_cache(maxsize=4)
def all_dags(universe: Universe) -> tuple[Dag, ...]:
    """Materialized ``enumerate_dags``, cached per universe. Only for n <= 4."""
    if universe.n > 4:
        raise ValueError("caching the full DAG list is limited to 4 nodes")
    return tuple(enumerate_dags(universe))
