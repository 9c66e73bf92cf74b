"""De Bruijn graphs, walks, and shortest edge-covering walks.

The graph of order k has the distinct (k-1)-mers of the reads as vertices
and the distinct k-mers as edges, each edge directed from its (k-1)-prefix
to its (k-1)-suffix. A walk spells a string; the central solver finds a
minimum-length walk using every edge at least once (an open-walk variant
of the directed Chinese Postman Problem) by duplicating edges along
shortest paths chosen with a min-cost assignment between out-of-balance
vertices, then emitting a lexicographically minimal Eulerian walk of the
augmented multigraph. A subset-state breadth-first oracle double-checks
small instances and can count all optimal walks.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from asmlab.errors import (
    DisconnectedGraphError,
    NoCoveringWalkError,
    ResourceLimitError,
)
from asmlab.sequence import ReadSet, decode_kmer, spectrum_of_set

logger = logging.getLogger(__name__)

ORACLE_EDGE_LIMIT = 16
_START_ENUM_CAP = 64       # candidate circuit starts tried for the lex tie-break
_REALIZE_CAP = 64          # optimal (start, end) options realized for the tie-break


class DeBruijnGraph:
    """Immutable order-k de Bruijn graph over string-labeled vertices.

    Vertices are (k-1)-mer strings, edges are k-mer strings; every
    adjacency structure is sorted so that iteration order is deterministic.
    Edge multiplicities (occurrence counts in the source reads) are carried
    as annotations only; they never influence walk semantics.
    """

    def __init__(self, k: int, edge_kmers: Iterable[str],
                 isolated_vertices: Iterable[str] = (),
                 multiplicities: Optional[dict[str, int]] = None):
        if k < 2:
            raise ValueError(f"de Bruijn graph order must be >= 2, got {k}")
        self.k = k
        edges = sorted(set(edge_kmers))
        for e in edges:
            if len(e) != k:
                raise ValueError(f"edge {e!r} does not have length k={k}")
        vertices: set[str] = set()
        out: dict[str, list[str]] = {}
        inn: dict[str, list[str]] = {}
        for e in edges:
            tail, head = e[:-1], e[1:]
            vertices.add(tail)
            vertices.add(head)
            out.setdefault(tail, []).append(head)
            inn.setdefault(head, []).append(tail)
        for v in isolated_vertices:
            if len(v) != k - 1:
                raise ValueError(f"vertex {v!r} does not have length k-1={k - 1}")
            vertices.add(v)
        self.edge_kmers: tuple[str, ...] = tuple(edges)
        self._edge_set = frozenset(edges)
        self.vertices: tuple[str, ...] = tuple(sorted(vertices))
        self._out = {v: tuple(sorted(ws)) for v, ws in out.items()}
        self._in = {v: tuple(sorted(ws)) for v, ws in inn.items()}
        self.multiplicities = dict(multiplicities or {})

    # -- structure queries -------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edge_kmers)

    def has_edge(self, kmer: str) -> bool:
        return kmer in self._edge_set

    def successors(self, v: str) -> tuple[str, ...]:
        return self._out.get(v, ())

    def predecessors(self, v: str) -> tuple[str, ...]:
        return self._in.get(v, ())

    def out_degree(self, v: str) -> int:
        return len(self._out.get(v, ()))

    def in_degree(self, v: str) -> int:
        return len(self._in.get(v, ()))

    def sources(self) -> list[str]:
        """Vertices with no incoming edge (isolated vertices excluded)."""
        return [v for v in self.vertices
                if self.in_degree(v) == 0 and self.out_degree(v) > 0]

    def sinks(self) -> list[str]:
        return [v for v in self.vertices
                if self.out_degree(v) == 0 and self.in_degree(v) > 0]

    def isolated_vertices(self) -> list[str]:
        return [v for v in self.vertices
                if self.in_degree(v) == 0 and self.out_degree(v) == 0]

    @staticmethod
    def edge_tail(kmer: str) -> str:
        return kmer[:-1]

    @staticmethod
    def edge_head(kmer: str) -> str:
        return kmer[1:]

    def weakly_connected_components(self) -> list[tuple[str, ...]]:
        """Components over vertices that carry at least one edge."""
        active = [v for v in self.vertices
                  if self.out_degree(v) > 0 or self.in_degree(v) > 0]
        seen: set[str] = set()
        components: list[tuple[str, ...]] = []
        for root in active:
            if root in seen:
                continue
            comp = []
            queue = deque([root])
            seen.add(root)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.successors(v) + self.predecessors(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            components.append(tuple(sorted(comp)))
        return components

    def subgraph(self, vertex_subset: Iterable[str]) -> "DeBruijnGraph":
        keep = set(vertex_subset)
        edges = [e for e in self.edge_kmers if e[:-1] in keep and e[1:] in keep]
        mult = {e: self.multiplicities[e] for e in edges if e in self.multiplicities}
        isolated = [v for v in self.isolated_vertices() if v in keep]
        return DeBruijnGraph(self.k, edges, isolated, mult)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeBruijnGraph):
            return NotImplemented
        return (self.k == other.k and self.edge_kmers == other.edge_kmers
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.k, self.edge_kmers, self.vertices))

    def __repr__(self) -> str:
        return (f"DeBruijnGraph(k={self.k}, vertices={len(self.vertices)}, "
                f"edges={self.num_edges})")


def build(reads: ReadSet, k: int) -> DeBruijnGraph:
    """Construct the order-k graph of a read set.

    Reads shorter than k-1 cannot contribute and are skipped with a
    warning; reads of length exactly k-1 contribute an isolated vertex.
    """
    if k < 2:
        raise ValueError(f"de Bruijn graph order must be >= 2, got {k}")
    reads.require_nonempty("de Bruijn graph construction")
    too_short = [str(r) for r in reads if len(r) < k - 1]
    if too_short:
        shown = ", ".join(too_short[:5]) + ("..." if len(too_short) > 5 else "")
        logger.warning("skipping %d read(s) shorter than k-1=%d: %s",
                       len(too_short), k - 1, shown)
    isolated = {str(r) for r in reads if len(r) == k - 1}
    usable = [str(r) for r in reads if len(r) >= k]
    spec = spectrum_of_set(usable, k) if usable else None
    kmers = spec.strings() if spec else []
    mult = {decode_kmer(p, k): c for p, c in spec.counts.items()} if spec else {}
    graph = DeBruijnGraph(k, kmers, isolated, mult)
    if graph.isolated_vertices():
        logger.info("graph has %d isolated vertex/vertices from (k-1)-length reads",
                    len(graph.isolated_vertices()))
    return graph


@dataclass(frozen=True)
class Walk:
    """A sequence of edges in which each edge leaves the vertex the
    previous one enters."""

    graph: DeBruijnGraph
    edges: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if not self.graph.has_edge(e):
                raise ValueError(f"edge {e!r} is not in the graph")
        for a, b in zip(self.edges, self.edges[1:]):
            if a[1:] != b[:-1]:
                raise ValueError(f"edges {a!r} and {b!r} do not chain")

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> tuple[str, ...]:
        if not self.edges:
            return ()
        return (self.edges[0][:-1],) + tuple(e[1:] for e in self.edges)


def spell(walk: Walk) -> str:
    """The string a walk spells: the first k-mer, then one symbol per edge."""
    if not walk.edges:
        raise ValueError("cannot spell an empty walk")
    return walk.edges[0] + "".join(e[-1] for e in walk.edges[1:])


def walk_of(text: str, graph: DeBruijnGraph) -> Optional[Walk]:
    """The unique walk spelling ``text``, or None if some k-mer of ``text``
    is not an edge (see :func:`first_missing_kmer` for the witness)."""
    k = graph.k
    if len(text) < k:
        raise ValueError(f"text of length {len(text)} is shorter than k={k}")
    edges = [text[i:i + k] for i in range(len(text) - k + 1)]
    if any(not graph.has_edge(e) for e in edges):
        return None
    return Walk(graph, tuple(edges))


def first_missing_kmer(text: str, graph: DeBruijnGraph) -> Optional[tuple[str, int]]:
    """Leftmost k-mer of ``text`` absent from the graph, with its position."""
    k = graph.k
    if len(text) < k:
        raise ValueError(f"text of length {len(text)} is shorter than k={k}")
    for i in range(len(text) - k + 1):
        piece = text[i:i + k]
        if not graph.has_edge(piece):
            return piece, i
    return None


def is_edge_covering(walk: Walk) -> bool:
    """True iff the walk's distinct edges are exactly the graph's edge set."""
    return set(walk.edges) == set(walk.graph.edge_kmers)


# ---------------------------------------------------------------------------
# Shortest edge-covering walk (open Chinese-Postman variant)
# ---------------------------------------------------------------------------


def _bfs_distances(graph: DeBruijnGraph, source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in graph.successors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _bfs_path(graph: DeBruijnGraph, source: str, target: str) -> list[str]:
    """A deterministic shortest vertex path (successors scanned in sorted
    order, so the first-discovered parent is the lexicographically earliest)."""
    parent: dict[str, Optional[str]] = {source: None}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in graph.successors(v):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    raise NoCoveringWalkError(f"no directed path from {source!r} to {target!r}")


def _balances(graph: DeBruijnGraph) -> dict[str, int]:
    return {v: graph.out_degree(v) - graph.in_degree(v) for v in graph.vertices
            if graph.out_degree(v) - graph.in_degree(v) != 0}


class _Multigraph:
    """Mutable edge-copy counts used by the Euler stage."""

    def __init__(self, graph: DeBruijnGraph):
        self.out: dict[str, dict[str, int]] = {}
        self.ins: dict[str, dict[str, int]] = {}
        self.balance: dict[str, int] = {}
        self.degree: dict[str, int] = {}
        self.total = 0
        for e in graph.edge_kmers:
            self.add(e[:-1], e[1:])

    def add(self, u: str, w: str) -> None:
        self.out.setdefault(u, {})
        self.ins.setdefault(w, {})
        self.out[u][w] = self.out[u].get(w, 0) + 1
        self.ins[w][u] = self.ins[w].get(u, 0) + 1
        self.balance[u] = self.balance.get(u, 0) + 1
        self.balance[w] = self.balance.get(w, 0) - 1
        self.degree[u] = self.degree.get(u, 0) + 1
        self.degree[w] = self.degree.get(w, 0) + 1
        self.total += 1

    def consume(self, u: str, w: str) -> None:
        self.out[u][w] -= 1
        self.ins[w][u] -= 1
        self.balance[u] -= 1
        self.balance[w] += 1
        self.degree[u] -= 1
        self.degree[w] -= 1
        self.total -= 1

    def restore(self, u: str, w: str) -> None:
        self.out[u][w] += 1
        self.ins[w][u] += 1
        self.balance[u] += 1
        self.balance[w] -= 1
        self.degree[u] += 1
        self.degree[w] += 1
        self.total += 1

    def successors(self, v: str) -> list[str]:
        return sorted(w for w, c in self.out.get(v, {}).items() if c > 0)

    def out_total(self, v: str) -> int:
        return sum(c for c in self.out.get(v, {}).values() if c > 0)

    def feasible_continuation(self, cur: str, end: str) -> bool:
        """Can an Eulerian walk of the remaining copies run from ``cur`` to
        ``end``? Balance plus weak connectivity of the active vertices."""
        if self.total == 0:
            return cur == end
        if self.out_total(cur) == 0:
            return False
        # a virtual end->cur edge must balance every vertex
        for v, b in self.balance.items():
            expected = (1 if v == cur else 0) - (1 if v == end else 0)
            if b != expected:
                return False
        active = sum(1 for v, d in self.degree.items() if d > 0)
        seen = {cur}
        queue = deque([cur])
        reached = 1 if self.degree.get(cur, 0) > 0 else 0
        while queue:
            v = queue.popleft()
            for w, c in self.out.get(v, {}).items():
                if c > 0 and w not in seen:
                    seen.add(w)
                    reached += 1
                    queue.append(w)
            for w, c in self.ins.get(v, {}).items():
                if c > 0 and w not in seen:
                    seen.add(w)
                    reached += 1
                    queue.append(w)
        return reached == active


def _lexmin_euler(multi: _Multigraph, start: str, end: str) -> list[str]:
    """Lexicographically smallest Eulerian walk of the multigraph.

    Successive spelled symbols are exactly the last characters of the
    chosen edges, so greedily taking the smallest feasible successor yields
    the lexicographically smallest spelled string from this start.
    """
    if not multi.feasible_continuation(start, end) and multi.total > 0:
        raise NoCoveringWalkError(
            f"no Eulerian walk from {start!r} to {end!r} in the augmented graph"
        )
    path = [start]
    cur = start
    while multi.total > 0:
        succs = multi.successors(cur)
        chosen = None
        if len(succs) == 1:
            chosen = succs[0]
            multi.consume(cur, chosen)
        else:
            for w in succs:
                multi.consume(cur, w)
                if multi.feasible_continuation(w, end):
                    chosen = w
                    break
                multi.restore(cur, w)
        if chosen is None:
            raise NoCoveringWalkError("Eulerian walk construction got stuck")
        path.append(chosen)
        cur = chosen
    return path


def _vertex_path_to_walk(graph: DeBruijnGraph, path: Sequence[str]) -> Walk:
    return Walk(graph, tuple(u + w[-1] for u, w in zip(path, path[1:])))


def _deficits_and_surpluses(balance: dict[str, int]) -> tuple[list[str], list[str]]:
    deficits, surpluses = [], []
    for v in sorted(balance):
        b = balance[v]
        if b < 0:
            deficits.extend([v] * (-b))
        elif b > 0:
            surpluses.extend([v] * b)
    return deficits, surpluses


def _assignment_cost(deficit_units: list[str], surplus_units: list[str],
                     dist: dict[str, dict[str, int]]
                     ) -> Optional[tuple[int, list[tuple[str, str]]]]:
    """Min-cost perfect matching of duplication paths deficit -> surplus.

    Returns (total cost, matched pairs) or None when no finite-cost perfect
    matching exists.
    """
    n = len(deficit_units)
    if n == 0:
        return 0, []
    big = 1 << 30
    cost = np.full((n, n), big, dtype=np.int64)
    for i, d in enumerate(deficit_units):
        row = dist[d]
        for j, s in enumerate(surplus_units):
            c = row.get(s)
            if c is not None:
                cost[i, j] = c
    rows, cols = linear_sum_assignment(cost)
    total = int(cost[rows, cols].sum())
    if total >= big:
        return None
    pairs = [(deficit_units[i], surplus_units[j]) for i, j in zip(rows, cols)]
    return total, pairs


def covering_walk_feasibility(graph: DeBruijnGraph) -> tuple[bool, str]:
    """Whether a single edge-covering walk exists, with a reason when not."""
    if graph.num_edges == 0:
        return False, "graph has no edges"
    components = graph.weakly_connected_components()
    if len(components) > 1:
        return False, f"{len(components)} weakly-connected components"
    balance = _balances(graph)
    deficits, surpluses = _deficits_and_surpluses(balance)
    if not deficits:
        return True, "balanced (closed walk exists)"
    dist = {d: _bfs_distances(graph, d) for d in set(deficits)}
    options = _enumerate_options(deficits, surpluses, dist)
    if options:
        return True, "imbalances repairable by edge duplication"
    return False, "imbalance pattern admits no covering walk"


def _enumerate_options(deficits: list[str], surpluses: list[str],
                       dist: dict[str, dict[str, int]]
                       ) -> list[tuple[int, Optional[str], Optional[str], list[tuple[str, str]]]]:
    """All feasible (cost, start, end, duplications) choices.

    ``start``/``end`` are None for the closed-walk option. For open walks
    one surplus unit serves as the start and one deficit unit as the end;
    the remaining units are matched by shortest duplication paths.
    """
    options = []
    closed = _assignment_cost(deficits, surpluses, dist)
    if closed is not None:
        options.append((closed[0], None, None, closed[1]))
    for sigma in sorted(set(surpluses)):
        rest_s = list(surpluses)
        rest_s.remove(sigma)
        for delta in sorted(set(deficits)):
            rest_d = list(deficits)
            rest_d.remove(delta)
            solved = _assignment_cost(rest_d, rest_s, dist)
            if solved is not None:
                options.append((solved[0], sigma, delta, solved[1]))
    options.sort(key=lambda o: (o[0], o[1] or "", o[2] or ""))
    return options


def shortest_edge_covering_walk(graph: DeBruijnGraph) -> Walk:
    """A minimum-length walk visiting every edge at least once.

    Works on weakly-connected graphs; disconnected input raises
    :class:`DisconnectedGraphError` carrying the per-component subgraphs.
    Among equal-length optima the walk spelling the lexicographically
    smallest string is returned (for distinct equal-cost duplication
    choices, one deterministic representative per start/end option is
    realized and the smallest spelled string among them wins).
    """
    if graph.num_edges == 0:
        raise ValueError("graph has no edges; nothing to cover")
    components = graph.weakly_connected_components()
    if len(components) > 1:
        raise DisconnectedGraphError([graph.subgraph(c) for c in components])

    balance = _balances(graph)
    deficits, surpluses = _deficits_and_surpluses(balance)

    candidates: list[tuple[Optional[str], Optional[str], list[tuple[str, str]]]] = []
    if not deficits:
        candidates.append((None, None, []))
    else:
        dist = {d: _bfs_distances(graph, d) for d in set(deficits)}
        options = _enumerate_options(deficits, surpluses, dist)
        if not options:
            raise NoCoveringWalkError(
                "the graph is connected but its imbalance pattern admits no "
                "edge-covering walk (a required duplication path is missing)"
            )
        best_cost = options[0][0]
        chosen = [o for o in options if o[0] == best_cost][:_REALIZE_CAP]
        candidates.extend((start, end, dups) for _, start, end, dups in chosen)

    best_text: Optional[str] = None
    best_path: Optional[list[str]] = None
    for start, end, dups in candidates:
        for path in _realize_candidate(graph, start, end, dups):
            text = path[0] + "".join(v[-1] for v in path[1:])
            if best_text is None or text < best_text:
                best_text, best_path = text, path
    assert best_path is not None
    return _vertex_path_to_walk(graph, best_path)


def _realize_candidate(graph: DeBruijnGraph, start: Optional[str],
                       end: Optional[str], dups: list[tuple[str, str]]):
    """Yield Euler vertex paths for one duplication choice.

    Open walks have a fixed start; closed walks try every start vertex (up
    to a cap) so the lexicographic tie-break can consider each rotation.
    """
    def fresh() -> _Multigraph:
        multi = _Multigraph(graph)
        for d, s in dups:
            path = _bfs_path(graph, d, s)
            for u, w in zip(path, path[1:]):
                multi.add(u, w)
        return multi

    if start is not None:
        yield _lexmin_euler(fresh(), start, end)
        return
    starts = [v for v in graph.vertices if graph.out_degree(v) > 0]
    if len(starts) > _START_ENUM_CAP:
        starts = starts[:1]
    for s in starts:
        yield _lexmin_euler(fresh(), s, s)


# ---------------------------------------------------------------------------
# Independent subset-state oracle
# ---------------------------------------------------------------------------


def oracle_shortest_edge_covering_walk(
    graph: DeBruijnGraph,
    max_edges: int = ORACLE_EDGE_LIMIT,
    mode: str = "one",
):
    """Exhaustive breadth-first search over (vertex, covered-edge-subset)
    states, started from every vertex.

    ``mode='one'`` returns a minimum-length covering :class:`Walk`;
    ``mode='count_all'`` returns ``(optimal_length, number_of_optima)``
    where optima are counted as distinct edge sequences.
    """
    if mode not in ("one", "count_all"):
        raise ValueError(f"unknown oracle mode {mode!r}")
    n_edges = graph.num_edges
    if n_edges == 0:
        raise ValueError("graph has no edges; nothing to cover")
    if n_edges > max_edges:
        raise ResourceLimitError(
            f"oracle handles at most {max_edges} edges, got {n_edges}",
            limit=max_edges,
        )
    edge_index = {e: i for i, e in enumerate(graph.edge_kmers)}
    verts = [v for v in graph.vertices
             if graph.out_degree(v) > 0 or graph.in_degree(v) > 0]
    v_index = {v: i for i, v in enumerate(verts)}
    adj: list[list[tuple[int, int]]] = [[] for _ in verts]
    for e in graph.edge_kmers:
        adj[v_index[e[:-1]]].append((edge_index[e], v_index[e[1:]]))
    full = (1 << n_edges) - 1
    span = full + 1

    dist: dict[int, int] = {}
    ways: dict[int, int] = {}
    parent: dict[int, tuple[int, int]] = {}
    queue: deque[int] = deque()
    for vi in range(len(verts)):
        state = vi * span
        dist[state] = 0
        ways[state] = 1
        queue.append(state)

    found: Optional[int] = None
    finals: list[int] = []
    while queue:
        state = queue.popleft()
        d = dist[state]
        if found is not None and d >= found:
            break
        vi, mask = divmod(state, span)
        for ei, wi in adj[vi]:
            nmask = mask | (1 << ei)
            nstate = wi * span + nmask
            nd = d + 1
            known = dist.get(nstate)
            if known is None:
                dist[nstate] = nd
                ways[nstate] = ways[state]
                parent[nstate] = (state, ei)
                if nmask == full:
                    if found is None:
                        found = nd
                        if mode == "one":
                            queue.clear()
                            finals.append(nstate)
                            break
                    finals.append(nstate)
                else:
                    queue.append(nstate)
            elif known == nd:
                ways[nstate] += ways[state]
        if mode == "one" and found is not None:
            break

    if found is None:
        raise NoCoveringWalkError("no edge-covering walk exists in this graph")
    if mode == "count_all":
        return found, sum(ways[s] for s in finals)
    state = finals[0]
    rev: list[str] = []
    while state in parent:
        prev, ei = parent[state]
        rev.append(graph.edge_kmers[ei])
        state = prev
    return Walk(graph, tuple(reversed(rev)))


# ---------------------------------------------------------------------------
# Bubble-graph generator
# ---------------------------------------------------------------------------


def make_bubble_graph(n: int, connector_len: int = 1,
                      labeled_paths: bool = False) -> DeBruijnGraph:
    """A synthetic graph with ``n`` two-branch bubbles in a row, a source
    path in, a sink path out, and a back connector that forces every bubble
    to be traversed twice, so a shortest covering walk has exactly ``2**n``
    optimal variants (one top/bottom order choice per bubble).

    ``connector_len`` sets the edge length of the inter-bubble connectors.
    ``labeled_paths=True`` gives both bubble branches interior vertices, so
    every branch owns a maximal unitig (the roomier textbook drawing);
    the default compact shape keeps small instances within the oracle's
    edge budget.
    """
    graph, _ = make_bubble_graph_with_names(n, connector_len, labeled_paths)
    return graph


def make_bubble_graph_with_names(
    n: int, connector_len: int = 1, labeled_paths: bool = False,
) -> tuple[DeBruijnGraph, dict[str, str]]:
    """Like :func:`make_bubble_graph` but also returns the mapping from
    structural vertex names to their (k-1)-mer labels.

    Names: ``a0`` source, ``j<i>``/``jx<i>`` bubble entries/exits, ``x<i>``
    (or ``top<i>``/``bot<i>a``/``bot<i>b``) branch interiors, ``c<i>_<j>``
    connector interiors, ``h0`` sink.
    """
    if n < 1:
        raise ValueError(f"need at least one bubble, got {n}")
    if connector_len < 1:
        raise ValueError(f"connector_len must be >= 1, got {connector_len}")
    vertices: list[str] = ["a0"]
    edges: list[tuple[str, str]] = []

    def add(u: str, w: str) -> None:
        if w not in vertices:
            vertices.append(w)
        edges.append((u, w))

    prev = "a0"
    for i in range(n):
        entry, exit_ = f"j{i}", f"jx{i}"
        add(prev, entry)
        if labeled_paths:
            add(entry, f"top{i}")
            add(f"top{i}", exit_)
            add(entry, f"bot{i}a")
            add(f"bot{i}a", f"bot{i}b")
            add(f"bot{i}b", exit_)
        else:
            add(entry, exit_)                       # top branch, one edge
            add(entry, f"x{i}")                     # bottom branch, two edges
            add(f"x{i}", exit_)
        if i < n - 1:
            node = exit_
            for j in range(1, connector_len):
                add(node, f"c{i}_{j}")
                node = f"c{i}_{j}"
            prev = node
        else:
            add(exit_, "j0")                        # back connector
            add(exit_, "h0")                        # sink path

    labels = _embed_de_bruijn_labels(vertices, edges)
    kmers = [labels[u] + labels[w][-1] for u, w in edges]
    graph = DeBruijnGraph(len(labels[vertices[0]]) + 1, kmers)
    assert graph.num_edges == len(edges), "bubble construction collided k-mers"
    assert len(graph.vertices) == len(vertices), "bubble construction merged vertices"
    assert len(graph.weakly_connected_components()) == 1
    return graph, labels


def _embed_de_bruijn_labels(vertices: list[str], edges: list[tuple[str, str]],
                            max_k: int = 12) -> dict[str, str]:
    """Assign (k-1)-mer labels so that every designed edge satisfies the
    de Bruijn overlap rule, by backtracking over the alphabet.

    Labels must be injective; an edge u->w forces label(w) to extend
    label(u) by one symbol. The smallest workable k is used.
    """
    out: dict[str, list[str]] = {}
    inn: dict[str, list[str]] = {}
    for u, w in edges:
        out.setdefault(u, []).append(w)
        inn.setdefault(w, []).append(u)

    # assignment order: breadth-first over the undirected shape
    order: list[str] = []
    seen = {vertices[0]}
    queue = deque([vertices[0]])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in out.get(v, []) + inn.get(v, []):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(order) != len(vertices):
        raise ValueError("bubble topology must be connected")

    for k in range(3, max_k + 1):
        result = _try_embed(order, out, inn, k - 1)
        if result is not None:
            return result
    raise ValueError(f"could not embed bubble topology with k <= {max_k}")


def _try_embed(order: list[str], out: dict[str, list[str]],
               inn: dict[str, list[str]], width: int) -> Optional[dict[str, str]]:
    alphabet = "ACGT"
    labels: dict[str, str] = {}
    used: set[str] = set()

    def candidates(v: str) -> list[str]:
        opts: Optional[set[str]] = None
        for u in inn.get(v, []):
            if u in labels:
                cur = {labels[u][1:] + c for c in alphabet}
                opts = cur if opts is None else opts & cur
        for w in out.get(v, []):
            if w in labels:
                cur = {c + labels[w][:-1] for c in alphabet}
                opts = cur if opts is None else opts & cur
        if opts is None:
            # unconstrained root: a deterministic sweep of all labels
            return [_int_label(i, width) for i in range(4 ** width)]
        return sorted(opts)

    def assign(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for label in candidates(v):
            if label in used:
                continue
            labels[v] = label
            used.add(label)
            if assign(pos + 1):
                return True
            del labels[v]
            used.remove(label)
        return False

    return labels if assign(0) else None


def _int_label(value: int, width: int) -> str:
    chars = []
    for _ in range(width):
        chars.append("ACGT"[value & 3])
        value >>= 2
    return "".join(reversed(chars))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

_PALETTE = (
    "lightblue", "lightsalmon", "palegreen", "plum", "khaki",
    "lightpink", "aquamarine", "wheat", "lightgray", "orange",
)


def export_dot(graph: DeBruijnGraph, highlight=None) -> str:
    """Deterministic DOT text for the graph.

    ``highlight`` may be a :class:`Walk` (its edges are drawn bold red) or
    a vertex partition (a unitig partition or any iterable of vertex
    groups), in which case each group is filled with its own color.
    """
    lines = ["digraph debruijn {"]
    node_color: dict[str, str] = {}
    walk_edges: set[str] = set()
    if isinstance(highlight, Walk):
        walk_edges = set(highlight.edges)
    elif highlight is not None:
        groups = getattr(highlight, "unitigs", highlight)
        for i, group in enumerate(groups):
            color = _PALETTE[i % len(_PALETTE)]
            for v in group:
                node_color[str(v)] = color
    for v in graph.vertices:
        attrs = [f'label="{v}"']
        if v in node_color:
            attrs += ["style=filled", f'fillcolor="{node_color[v]}"']
        lines.append(f'    "{v}" [{" ".join(attrs)}];')
    for e in graph.edge_kmers:
        attrs = [f'label="{e}"']
        if e in walk_edges:
            attrs += ['color="red"', "penwidth=2.0"]
        lines.append(f'    "{e[:-1]}" -> "{e[1:]}" [{" ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
