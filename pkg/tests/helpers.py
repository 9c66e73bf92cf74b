"""Independent oracles used to cross-check the library's fast paths.

Everything here is deliberately naive (enumeration, quadratic scans,
permutation sweeps) so that agreement with the optimized implementations
is meaningful evidence.
"""

from __future__ import annotations

import itertools
from collections import Counter


def naive_spectrum(s: str, k: int) -> Counter:
    return Counter(s[i:i + k] for i in range(len(s) - k + 1))


def brute_longest_repeat(s: str):
    """Longest substring occurring at >= 2 positions, by trying all pairs."""
    best_len, best = 0, None
    n = len(s)
    for i in range(n):
        for j in range(i + 1, n):
            length = 0
            while j + length < n and s[i + length] == s[j + length]:
                length += 1
            if length > best_len:
                best_len, best = length, (i, j)
    return (best_len, best) if best_len > 0 else None


def brute_max_overlap(a: str, b: str) -> int:
    for length in range(min(len(a), len(b)), 0, -1):
        if a.endswith(b[:length]) and b.startswith(a[-length:]):
            return length
    return 0


def merge_by_order(words: list[str]) -> str:
    out = words[0]
    for prev, nxt in zip(words, words[1:]):
        ov = brute_max_overlap(prev, nxt)
        out += nxt[ov:]
    return out


def brute_scs(words: list[str]) -> str:
    """Minimum-length, lexicographically smallest pairwise-merge superstring
    over every permutation of the substring-free word set."""
    core = []
    for w in sorted(set(words), key=len, reverse=True):
        if not any(w in kept for kept in core):
            core.append(w)
    best = None
    for perm in itertools.permutations(core):
        cand = merge_by_order(list(perm))
        if best is None or (len(cand), cand) < (len(best), best):
            best = cand
    return best


def all_optimal_covering_spellings(graph, optimum_length: int) -> list[str]:
    """Every string spelled by a minimum-length covering walk, by exhaustive
    DFS capped at the optimum length."""
    full = frozenset(graph.edge_kmers)
    out_edges: dict[str, list[str]] = {}
    for e in graph.edge_kmers:
        out_edges.setdefault(e[:-1], []).append(e)
    found: set[str] = set()

    def dfs(v, covered, walk):
        if covered == full and len(walk) == optimum_length:
            found.add("".join([walk[0]] + [e[-1] for e in walk[1:]]))
            return
        if len(walk) >= optimum_length:
            return
        for e in out_edges.get(v, ()):
            walk.append(e)
            dfs(e[1:], covered | {e}, walk)
            walk.pop()

    for v in graph.vertices:
        dfs(v, frozenset(), [])
    return sorted(found)


def n50_oracle(lengths) -> int:
    """Try every distinct length as the N50 candidate."""
    lengths = list(lengths)
    total = sum(lengths)
    if total == 0:
        return 0
    best = 0
    for cand in set(lengths):
        if 2 * sum(x for x in lengths if x >= cand) >= total:
            best = max(best, cand)
    return best


def coverage_marking_oracle(contigs: list[str], truth: str) -> float:
    """Mark every truth position covered by any exact contig occurrence."""
    hit = [False] * len(truth)
    for c in contigs:
        start = truth.find(c)
        while start != -1:
            for i in range(start, start + len(c)):
                hit[i] = True
            start = truth.find(c, start + 1)
    return sum(hit) / len(truth) if truth else 0.0
