"""Maximal unitigs, their spelled contigs, and a safety oracle.

A unitig is a vertex path in which every vertex except the first has
exactly one incoming edge and every vertex except the last has exactly one
outgoing edge; the maximal unitigs partition the vertex set uniquely. A
contig is *safe* when it is a substring of every string spelled by an
edge-covering walk. The oracle here decides safety exactly on small
graphs by searching the product of the graph with (covered-edge-subset,
match-progress) bookkeeping: a reachable fully-covered state that never
matched the whole candidate is precisely a witness walk avoiding it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from asmlab.graph import DeBruijnGraph, Walk, covering_walk_feasibility
from asmlab.sequence import DnaString

_STATE_BUDGET = 4_000_000  # product states before the oracle answers `unknown`


@dataclass(frozen=True)
class UnitigPartition:
    """The unique partition of a graph's vertices into maximal unitigs,
    ordered by spelled string."""

    graph: DeBruijnGraph
    unitigs: tuple[tuple[str, ...], ...]

    def spelled(self) -> list[str]:
        return [_spell_path(u) for u in self.unitigs]


def _spell_path(path: tuple[str, ...]) -> str:
    return path[0] + "".join(v[-1] for v in path[1:])


def maximal_unitigs(graph: DeBruijnGraph) -> UnitigPartition:
    """Extract every maximal unitig; works on any graph, including
    disconnected ones and isolated vertices (singleton unitigs)."""
    claimed: set[str] = set()
    paths: list[tuple[str, ...]] = []

    def extends_back(v: str) -> bool:
        if graph.in_degree(v) != 1:
            return False
        pred = graph.predecessors(v)[0]
        return graph.out_degree(pred) == 1

    def forward_path(start: str) -> tuple[str, ...]:
        path = [start]
        cur = start
        while graph.out_degree(cur) == 1:
            nxt = graph.successors(cur)[0]
            if graph.in_degree(nxt) != 1 or nxt == start or nxt in claimed:
                break
            path.append(nxt)
            cur = nxt
        return tuple(path)

    for v in graph.vertices:
        if v in claimed or extends_back(v):
            continue
        path = forward_path(v)
        claimed.update(path)
        paths.append(path)
    # leftovers are pure cycles where every vertex chains backward forever
    for v in graph.vertices:
        if v in claimed:
            continue
        path = forward_path(v)
        claimed.update(path)
        paths.append(path)

    assert len(claimed) == len(graph.vertices)
    paths.sort(key=_spell_path)
    return UnitigPartition(graph, tuple(paths))


@dataclass(frozen=True)
class Contig:
    name: str
    sequence: DnaString
    source: str
    vertex_path: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class ContigSet:
    k: int
    contigs: tuple[Contig, ...]

    def __post_init__(self):
        for c in self.contigs:
            if len(c.sequence) < self.k - 1:
                raise ValueError(
                    f"contig {c.name} is shorter than k-1={self.k - 1}"
                )

    def __len__(self) -> int:
        return len(self.contigs)

    def __iter__(self):
        return iter(self.contigs)

    def sequences(self) -> list[DnaString]:
        return [c.sequence for c in self.contigs]


def unitig_contigs(graph: DeBruijnGraph) -> ContigSet:
    """One contig per maximal unitig, in deterministic (spelled) order."""
    partition = maximal_unitigs(graph)
    contigs = tuple(
        Contig(
            name=f"u{i}",
            sequence=DnaString(_spell_path(path)),
            source="unitig",
            vertex_path=path,
        )
        for i, path in enumerate(partition.unitigs)
    )
    return ContigSet(graph.k, contigs)


@dataclass(frozen=True)
class PreconditionReport:
    """Graph facts gating the unitig-safety guarantee: the guarantee needs
    an edge-covering walk, a source, and a sink."""

    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    covering_walk_exists: bool
    detail: str

    @property
    def satisfied(self) -> bool:
        return bool(self.sources) and bool(self.sinks) and self.covering_walk_exists


def check_safety_preconditions(graph: DeBruijnGraph) -> PreconditionReport:
    exists, reason = covering_walk_feasibility(graph)
    return PreconditionReport(
        sources=tuple(graph.sources()),
        sinks=tuple(graph.sinks()),
        covering_walk_exists=exists,
        detail=reason,
    )


@dataclass(frozen=True)
class SafetyVerdict:
    status: str  # "safe" | "unsafe" | "unknown"
    witness: Optional[Walk] = None
    note: str = ""


def is_safe_bounded(graph: DeBruijnGraph,
                    candidate: Union[Walk, str],
                    walk_length_bound: int) -> SafetyVerdict:
    """Decide whether the candidate is a subwalk of every edge-covering walk.

    The candidate is a :class:`Walk` (or a bare vertex label for the
    single-vertex case). For strings of length >= k-1, substring-of-spelling
    and subwalk-of-walk coincide, so this decides string safety.

    The search space is the product of (current vertex, set of covered
    edges, candidate match progress); a covering walk can always be
    shortened to stop at the edge completing coverage without gaining new
    subwalks, so reachability of a fully-covered never-matched state is an
    exact unsafety test. ``unknown`` is returned only when the product
    space exceeds the oracle's state budget; a verdict of ``safe`` or
    ``unsafe`` is never approximate. The bound must be at least the edge
    count (enough for any witness to cover the graph).
    """
    n_edges = graph.num_edges
    if n_edges == 0:
        raise ValueError("safety is undefined on a graph with no edges")
    if walk_length_bound < n_edges:
        raise ValueError(
            f"walk_length_bound={walk_length_bound} is below the edge count {n_edges}"
        )

    if isinstance(candidate, str):
        if candidate not in graph.vertices:
            raise ValueError(f"vertex {candidate!r} is not in the graph")
        if graph.out_degree(candidate) > 0 or graph.in_degree(candidate) > 0:
            # every covering walk traverses some incident edge
            return SafetyVerdict("safe", note="vertex lies on an edge")
        return SafetyVerdict(
            "unsafe",
            note="isolated vertex: no covering walk spells it",
        )

    if candidate.graph is not graph and candidate.graph != graph:
        raise ValueError("candidate walk belongs to a different graph")
    if len(candidate.edges) == 0:
        raise ValueError("empty candidate walk; pass the vertex label instead")
    if len(candidate.edges) == 1:
        return SafetyVerdict("safe", note="every covering walk visits every edge")

    edge_index = {e: i for i, e in enumerate(graph.edge_kmers)}
    pattern = [edge_index[e] for e in candidate.edges]
    L = len(pattern)
    verts = [v for v in graph.vertices
             if graph.out_degree(v) > 0 or graph.in_degree(v) > 0]
    v_index = {v: i for i, v in enumerate(verts)}
    adj: list[list[tuple[int, int]]] = [[] for _ in verts]
    for e in graph.edge_kmers:
        adj[v_index[e[:-1]]].append((edge_index[e], v_index[e[1:]]))

    if len(verts) * (1 << n_edges) * L > _STATE_BUDGET:
        return SafetyVerdict("unknown", note="state budget exceeded")

    # match-progress automaton over edge indices (failure-function form)
    fail = [0] * L
    for i in range(1, L):
        q = fail[i - 1]
        while q and pattern[i] != pattern[q]:
            q = fail[q - 1]
        fail[i] = q + 1 if pattern[i] == pattern[q] else 0

    def advance(q: int, e: int) -> int:
        while q and pattern[q] != e:
            q = fail[q - 1]
        return q + 1 if pattern[q] == e else 0

    full = (1 << n_edges) - 1
    span_mask = full + 1
    span_vert = len(verts)

    def pack(vi: int, mask: int, q: int) -> int:
        return (q * span_vert + vi) * span_mask + mask

    parent: dict[int, tuple[int, int]] = {}
    seen: set[int] = set()
    queue: deque[tuple[int, int, int]] = deque()
    for vi in range(span_vert):
        state = pack(vi, 0, 0)
        seen.add(state)
        queue.append((vi, 0, 0))

    goal: Optional[int] = None
    while queue and goal is None:
        vi, mask, q = queue.popleft()
        state = pack(vi, mask, q)
        for ei, wi in adj[vi]:
            nq = advance(q, ei)
            if nq == L:
                continue  # the walk now contains the candidate: never a witness
            nmask = mask | (1 << ei)
            nstate = pack(wi, nmask, nq)
            if nstate in seen:
                continue
            seen.add(nstate)
            parent[nstate] = (state, ei)
            if nmask == full:
                goal = nstate
                break
            queue.append((wi, nmask, nq))

    if goal is None:
        return SafetyVerdict("safe")
    rev: list[str] = []
    state = goal
    while state in parent:
        prev, ei = parent[state]
        rev.append(graph.edge_kmers[ei])
        state = prev
    witness = Walk(graph, tuple(reversed(rev)))
    return SafetyVerdict("unsafe", witness=witness)


@dataclass(frozen=True)
class SafetyRow:
    contig: str
    verdict: str
    witness_length: Optional[int]
    flagged_bug: bool


@dataclass(frozen=True)
class SafetyReport:
    applicable: bool
    detail: str
    rows: tuple[SafetyRow, ...]

    @property
    def bug_flags(self) -> list[SafetyRow]:
        return [r for r in self.rows if r.flagged_bug]

    @property
    def unknown_count(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "unknown")

    def to_tsv(self) -> str:
        lines = ["contig\tverdict\twitness_length"]
        for r in self.rows:
            wl = "" if r.witness_length is None else str(r.witness_length)
            lines.append(f"{r.contig}\t{r.verdict}\t{wl}")
        return "\n".join(lines) + "\n"


def safety_suite(graph: DeBruijnGraph, contigs: ContigSet,
                 bound: Optional[int] = None) -> SafetyReport:
    """Run the safety oracle on every contig.

    On graphs satisfying the preconditions, an ``unsafe`` verdict for a
    unitig contig contradicts the safety guarantee and is flagged as an
    implementation bug (isolated-vertex unitigs are outside the guarantee's
    read-length assumptions and are exempt). On graphs failing the
    preconditions the report is marked not applicable.
    """
    pre = check_safety_preconditions(graph)
    if not pre.satisfied:
        return SafetyReport(False, f"preconditions unmet: {pre.detail}", ())
    if bound is None:
        bound = 2 * graph.num_edges + graph.k
    rows = []
    for contig in contigs:
        candidate: Union[Walk, str]
        isolated = False
        if contig.vertex_path is not None and len(contig.vertex_path) == 1:
            candidate = contig.vertex_path[0]
            isolated = (graph.out_degree(candidate) == 0
                        and graph.in_degree(candidate) == 0)
        elif contig.vertex_path is not None:
            candidate = Walk(graph, tuple(
                u + w[-1] for u, w in zip(contig.vertex_path, contig.vertex_path[1:])
            ))
        else:
            from asmlab.graph import walk_of

            maybe = walk_of(str(contig.sequence), graph)
            if maybe is None:
                rows.append(SafetyRow(contig.name, "unsafe", None, False))
                continue
            candidate = maybe
        verdict = is_safe_bounded(graph, candidate, bound)
        flagged = (
            verdict.status == "unsafe"
            and contig.source == "unitig"
            and not isolated
        )
        rows.append(SafetyRow(
            contig.name,
            verdict.status,
            len(verdict.witness.edges) if verdict.witness else None,
            flagged,
        ))
    return SafetyReport(True, "preconditions satisfied", tuple(rows))
