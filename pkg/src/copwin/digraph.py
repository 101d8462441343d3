"""Digraph arena and bitmask vertex sets.

Vertices are dense 0-based integers; a vertex set over a universe of size n
is a plain Python int whose bit i is set iff vertex i is a member.  That
representation gives the solver its hot operations for free: union ``a | b``,
difference ``a & ~b``, membership ``mask >> v & 1``, subset test
``a & ~b == 0`` and popcount ``mask.bit_count()``.

Digraphs are immutable after construction, so every function here is pure
and safe to call concurrently.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CyclicError, LengthMismatch


# ---------------------------------------------------------------------------
# vertex-set (bitmask) helpers


def mask_of(vertices: Iterable[int]) -> int:
    """Build a vertex-set mask from an iterable of vertex indices."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    """Ascending tuple of the vertices in a mask."""
    return tuple(iter_vertices(mask))


def iter_vertices(mask: int) -> Iterator[int]:
    """Yield the vertices of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subsets_of_size(mask: int, size: int) -> Iterator[int]:
    """All sub-masks of `mask` with exactly `size` bits.

    Emitted in lexicographic order of the ascending vertex tuples, which is
    the canonical tie-break order used throughout the package.
    """
    bits = [1 << v for v in iter_vertices(mask)]
    for combo in combinations(bits, size):
        m = 0
        for b in combo:
            m |= b
        yield m


class Digraph:
    """Immutable digraph D = (V, A) on vertices 0..n-1, loops allowed.

    Duplicate arcs in the input are silently dropped; multiplicity is
    irrelevant to the game.
    """

    __slots__ = ("n", "_out", "_in", "full")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) outside universe of size {n}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self._out = out
        self._in = inn
        self.full = (1 << n) - 1

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_out_masks(cls, out_masks: list[int]) -> "Digraph":
        d = cls.__new__(cls)
        n = len(out_masks)
        d.n = n
        d._out = list(out_masks)
        inn = [0] * n
        for u, m in enumerate(out_masks):
            for v in iter_vertices(m):
                inn[v] |= 1 << u
        d._in = inn
        d.full = (1 << n) - 1
        return d

    # -- basic accessors -----------------------------------------------------

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in iter_vertices(self._out[u])]

    @property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self._out)

    def out_set(self, s: int) -> int:
        """N+(S): union of out-neighborhoods over the vertices of mask `s`."""
        m = 0
        for v in iter_vertices(s):
            m |= self._out[v]
        return m

    def in_set(self, s: int) -> int:
        """N-(S): vertices with at least one out-arc into mask `s`."""
        m = 0
        for v in iter_vertices(s):
            m |= self._in[v]
        return m

    def reverse(self) -> "Digraph":
        """Digraph with every arc flipped; loops are fixed points."""
        d = Digraph.__new__(Digraph)
        d.n = self.n
        d._out = list(self._in)
        d._in = list(self._out)
        d.full = self.full
        return d

    def induced(self, sub: int) -> tuple["Digraph", dict[int, int]]:
        """Induced subgraph on mask `sub` plus the old->new index map."""
        old = vertices_of(sub)
        remap = {o: i for i, o in enumerate(old)}
        arcs = [
            (remap[u], remap[v])
            for u in old
            for v in iter_vertices(self._out[u] & sub)
        ]
        return Digraph(len(old), arcs), remap

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self._out == other._out
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._out)))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arcs()!r})"


# module-level aliases matching the operation vocabulary used elsewhere


def out_set(d: Digraph, s: int) -> int:
    return d.out_set(s)


def in_set(d: Digraph, s: int) -> int:
    return d.in_set(s)


def reverse(d: Digraph) -> Digraph:
    return d.reverse()


# ---------------------------------------------------------------------------
# cop play and robber territory


@dataclass(frozen=True)
class Strategy:
    """A cop play (W_1, ..., W_l): one vertex-set mask per time step."""

    n: int
    steps: tuple[int, ...]

    @classmethod
    def from_vertex_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Strategy":
        return cls(n, tuple(mask_of(s) for s in sets))

    @property
    def cops_used(self) -> int:
        return max((w.bit_count() for w in self.steps), default=0)

    def __len__(self) -> int:
        return len(self.steps)

    def step_sets(self) -> list[tuple[int, ...]]:
        return [vertices_of(w) for w in self.steps]


@dataclass(frozen=True)
class TerritoryTrace:
    """Robber territories R_1, R_2, ... generated by replaying a strategy."""

    n: int
    territories: tuple[int, ...]
    captured: bool

    def __len__(self) -> int:
        return len(self.territories)


# ---------------------------------------------------------------------------
# structural decompositions


def weak_components(d: Digraph) -> list[int]:
    """Connected components of the underlying undirected graph, as masks.

    Ordered by smallest member vertex.
    """
    both = [d._out[v] | d._in[v] for v in range(d.n)]
    seen = 0
    comps = []
    for v in range(d.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in iter_vertices(frontier):
                nxt |= both[u]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        seen |= comp
    return comps


def strong_components(d: Digraph) -> list[int]:
    """Strongly connected components in a topological order of the condensation.

    Iterative Tarjan; DFS roots taken in ascending vertex order, so the
    output is deterministic.
    """
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[int] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(vertices_of(d._out[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(vertices_of(d._out[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = 0
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp |= 1 << w
                    if w == v:
                        break
                comps.append(comp)
    # Tarjan emits components in reverse topological order.
    comps.reverse()
    return comps


def topological_order(d: Digraph) -> list[int]:
    """Vertex order with all arcs forward, or CyclicError with a witness.

    Kahn's algorithm with a lowest-index-first tie-break.
    """
    indeg = [d._in[v].bit_count() for v in range(d.n)]
    ready = [v for v in range(d.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in iter_vertices(d._out[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) < d.n:
        raise CyclicError(find_cycle(d, mask_of(set(range(d.n)) - set(order))))
    return order


def is_acyclic(d: Digraph, sub: int | None = None) -> bool:
    """True iff the subgraph induced by `sub` (default: all of D) has no cycle."""
    if sub is None:
        sub = d.full
    remaining = sub
    # repeatedly strip vertices with no out-neighbor inside `remaining`
    while remaining:
        stripped = 0
        for v in iter_vertices(remaining):
            if d._out[v] & remaining == 0:
                stripped |= 1 << v
        if not stripped:
            return False
        remaining &= ~stripped
    return True


def find_cycle(d: Digraph, sub: int | None = None) -> list[int]:
    """Some directed cycle inside mask `sub`, as a vertex list; [] if acyclic.

    Deterministic: DFS from the lowest-index vertex, neighbors ascending.
    The first cycle closed is returned (a loop yields a one-vertex cycle).
    """
    if sub is None:
        sub = d.full
    color = {}  # 0 = on stack, 1 = done
    for start in iter_vertices(sub):
        if start in color:
            continue
        path = [start]
        iters = [iter_vertices(d._out[start] & sub)]
        color[start] = 0
        while path:
            advanced = False
            for w in iters[-1]:
                if w not in color:
                    color[w] = 0
                    path.append(w)
                    iters.append(iter_vertices(d._out[w] & sub))
                    advanced = True
                    break
                if color[w] == 0:
                    return path[path.index(w):]
            if not advanced:
                color[path.pop()] = 1
                iters.pop()
    return []


def shortest_cycle(d: Digraph, sub: int | None = None) -> list[int]:
    """A shortest directed cycle inside mask `sub`; [] if acyclic.

    Loops are length-1 cycles.  Ties broken by lowest starting vertex, then
    by the BFS parent structure (ascending neighbor order), so the result is
    deterministic.
    """
    if sub is None:
        sub = d.full
    best: list[int] = []
    for s in iter_vertices(sub):
        if d._out[s] >> s & 1:
            return [s]
        if best and len(best) <= 2:
            break
        # BFS from s over arcs within sub; first return to s closes a
        # shortest cycle through s.
        parent = {s: -1}
        frontier = [s]
        depth = 1
        found = False
        while frontier and not found and (not best or depth < len(best)):
            nxt = []
            for u in frontier:
                for w in iter_vertices(d._out[u] & sub):
                    if w == s:
                        cycle = [u]
                        while parent[cycle[-1]] != -1:
                            cycle.append(parent[cycle[-1]])
                        cycle.reverse()
                        if not best or len(cycle) < len(best):
                            best = cycle
                        found = True
                        break
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
                if found:
                    break
            frontier = nxt
            depth += 1
    return best


def trim_degree_zero(d: Digraph) -> tuple[Digraph, dict[int, int]]:
    """Iteratively delete vertices of out-degree 0 or in-degree 0.

    Deleting such vertices does not change the cop number.  Returns the
    trimmed digraph and the old->new index map of the survivors.
    """
    alive = d.full
    changed = True
    while changed and alive:
        changed = False
        for v in iter_vertices(alive):
            if d._out[v] & alive == 0 or d._in[v] & alive == 0:
                alive &= ~(1 << v)
                changed = True
    return d.induced(alive)


# ---------------------------------------------------------------------------
# round orderings


def verify_round_ordering(d: Digraph, order: list[int]) -> bool:
    """Check that `order` is a round ordering of D.

    Round means every out-neighborhood is the cyclically consecutive block
    starting right after the vertex, and every in-neighborhood the block
    ending right before it.
    """
    n = d.n
    if sorted(order) != list(range(n)):
        raise LengthMismatch("order is not a permutation of the vertex set")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    for v in range(n):
        for mask, direction in ((d._out[v], 1), (d._in[v], -1)):
            deg = mask.bit_count()
            block = 0
            for j in range(1, deg + 1):
                block |= 1 << order[(pos[v] + direction * j) % n]
            if block != mask:
                return False
    return True


# ---------------------------------------------------------------------------
# degree peeling


def peel_max_min_outdegree(d: Digraph) -> tuple[int, int]:
    """max over induced subgraphs S of the minimum out-degree of D[S].

    Greedy peeling: repeatedly delete a vertex of currently minimum
    out-degree (lowest index on ties) and record the running maximum of that
    minimum.  Returns (value, witness mask); the witness induces a subgraph
    whose minimum out-degree equals the value.
    """
    if d.n == 0:
        return 0, 0
    alive = d.full
    deg = {v: (d._out[v] & alive).bit_count() for v in iter_vertices(alive)}
    best, witness = -1, 0
    while alive:
        v = min(deg, key=lambda u: (deg[u], u))
        if deg[v] > best:
            best, witness = deg[v], alive
        alive &= ~(1 << v)
        del deg[v]
        for u in iter_vertices(d._in[v] & alive):
            deg[u] = (d._out[u] & alive).bit_count()
    return best, witness
