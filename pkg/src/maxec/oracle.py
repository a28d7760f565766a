"""Exhaustive maximum-color computation for small graphs.

The search enumerates edge partitions as restricted-growth assignments over a
fixed edge order. A branch dies the moment some vertex palette exceeds its
capacity, or when an upper bound on the classes still reachable cannot beat
the best coloring found (or reach the requested threshold).

Two further devices keep graphs with many pendant-like edges tractable, both
justified by local exchange arguments and cross-checked in the tests against
a pruning-free enumerator:

* an edge that is the last uncolored edge at both endpoints is forced: a
  brand-new class dominates when both palettes have room (recoloring that
  edge to a fresh color in any completed partition stays valid and gains a
  class), and otherwise all feasible old classes are future-equivalent, so
  the smallest is taken;
* a trailing block of such edges is pairwise vertex-disjoint, so its exact
  contribution is evaluated in closed form instead of recursing.

Connected components are solved independently and summed; the number of
colors is additive because components can always use disjoint palettes.

An opt-in preprocessing (``fold_pendants``) peels degree-1 vertices before
the search. Folding a pendant edge at a capacity-2 neighbor gains exactly
one class and pins the neighbor to capacity 1; at a capacity-1 neighbor it
gains nothing. Both directions of each rule follow from merging or splitting
one class, so the optimum is preserved exactly; the tests cross-check the
folded and plain searches against each other.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graphs import DEFAULT_PROFILE, EdgeColoring, Graph, ValidityProfile

DEFAULT_EDGE_LIMIT = 12


class OracleLimitError(RuntimeError):
    """Refusal: the instance exceeds the configured oracle edge limit."""


@dataclass(frozen=True)
class SigmaResult:
    sigma: int
    witness: EdgeColoring


def sigma_exact(
    g: Graph,
    profile: ValidityProfile = DEFAULT_PROFILE,
    edge_limit: int | None = DEFAULT_EDGE_LIMIT,
    fold_pendants: bool = False,
) -> SigmaResult:
    """Maximum number of colors over all valid colorings, with a witness.

    ``fold_pendants`` turns on the exact degree-1 preprocessing described in
    the module docstring; it changes neither the optimum nor the validity of
    the witness, only the running time on pendant-heavy graphs.
    """
    _check_limit(g, edge_limit)
    caps = list(profile.capacities(g.n))
    colors: list[int | None] = [None] * g.m
    if fold_pendants:
        core, caps, actions = _fold_pendants(g, caps)
    else:
        core, actions = Graph(g.n, g.edges), []
    total = 0
    for comp, edge_ids, local_edges, local_caps in _components(core, caps):
        if not edge_ids:
            continue
        best, assign = _search(len(comp), local_edges, local_caps, stop_at=None)
        if assign is None:
            raise AssertionError("component search returned no coloring")
        for local_eid, c in enumerate(assign):
            colors[g.edge_id(*core.edges[edge_ids[local_eid]])] = total + c
        total += best
    total = _unfold(g, actions, colors, total)
    if total > g.n:
        raise AssertionError("maximum color count exceeded the vertex count")
    if any(c is None for c in colors):
        raise AssertionError("some edge was left uncolored")
    return SigmaResult(total, EdgeColoring(colors))


def sigma_threshold(
    g: Graph,
    k: int,
    profile: ValidityProfile = DEFAULT_PROFILE,
    edge_limit: int | None = DEFAULT_EDGE_LIMIT,
    fold_pendants: bool = False,
) -> bool:
    """True iff some valid coloring uses at least ``k`` colors.

    Equivalent to ``sigma_exact(g).sigma >= k`` but may exit early: merging
    the top classes of any coloring with more than k colors yields one with
    exactly k, so the search can stop as soon as k classes are reached.
    ``fold_pendants`` is the same exact preprocessing as in ``sigma_exact``.
    """
    _check_limit(g, edge_limit)
    if k <= 0:
        return True
    if g.m < k:
        return False
    caps = list(profile.capacities(g.n))
    if fold_pendants:
        g, caps, actions = _fold_pendants(g, caps)
        k -= sum(1 for kind, _, _ in actions if kind == "fresh")
        if k <= 0:
            return True
        if g.m < k:
            return False
    parts = [
        (comp, local_edges, local_caps)
        for comp, edge_ids, local_edges, local_caps in _components(g, caps)
        if edge_ids
    ]
    acc = 0
    for i, (comp, local_edges, local_caps) in enumerate(parts):
        need = k - acc
        # pruning branches that cannot reach the threshold is only sound on
        # the last component; earlier ones must report their exact optimum
        # so the running sum stays correct
        best, _ = _search(
            len(comp),
            local_edges,
            local_caps,
            stop_at=need,
            prune_below=(i == len(parts) - 1),
        )
        if best >= need:
            return True
        acc += best
    return acc >= k


def _check_limit(g: Graph, edge_limit: int | None) -> None:
    if edge_limit is not None and g.m > edge_limit:
        raise OracleLimitError(
            f"instance has {g.m} edges, oracle limit is {edge_limit}"
        )


def _fold_pendants(g: Graph, caps: list[int]):
    """Peel degree-1 vertices; returns the core graph, its capacities, and
    the fold actions in application order.

    Folding pendant edge (p, v) with p of degree 1: when v still has palette
    room (capacity 2, or v itself has degree 1), the edge is worth exactly
    one extra class and pins v to capacity 1; when v is already pinned, the
    edge must repeat v's single color and is worth nothing. Each action is
    (kind, edge id, v) with kind "fresh" or "reuse".
    """
    alive = [True] * g.m
    deg = [g.degree(v) for v in range(g.n)]
    heap = [v for v in range(g.n) if deg[v] == 1]
    heapq.heapify(heap)
    actions: list[tuple[str, int, int]] = []
    while heap:
        p = heapq.heappop(heap)
        if deg[p] != 1:
            continue
        (eid, v) = next((e, w) for e, w in g.adj[p] if alive[e])
        alive[eid] = False
        deg[p] = 0
        deg[v] -= 1
        if deg[v] == 0 or caps[v] == 2:
            actions.append(("fresh", eid, v))
            caps[v] = 1
        else:
            actions.append(("reuse", eid, v))
        if deg[v] == 1:
            heapq.heappush(heap, v)
    core = Graph(g.n, [g.edges[eid] for eid in range(g.m) if alive[eid]])
    return core, caps, actions


def _unfold(g: Graph, actions, colors: list[int | None], total: int) -> int:
    """Replay fold actions in reverse, assigning the folded edges' colors."""
    for kind, eid, v in reversed(actions):
        if kind == "fresh":
            colors[eid] = total
            total += 1
        else:
            colors[eid] = min(
                colors[e] for e, _ in g.adj[v] if colors[e] is not None
            )
    return total


def _components(g: Graph, caps):
    """Per component: vertices, global edge ids, local edge list, local caps."""
    for comp in g.connected_components():
        local = {v: i for i, v in enumerate(comp)}
        edge_ids = [
            eid for eid, (u, v) in enumerate(g.edges) if u in local
        ]
        local_edges = [
            (local[g.edges[eid][0]], local[g.edges[eid][1]]) for eid in edge_ids
        ]
        yield comp, edge_ids, local_edges, [caps[v] for v in comp]


def _plan(n: int, edges) -> tuple[list[int], list[bool], int]:
    """Static visit order, per-edge "last at both endpoints" flags, and the
    position where the all-dead disjoint suffix starts."""
    m = len(edges)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    tail: list[int] = []
    tail_vertices: set[int] = set()
    for eid, (u, v) in enumerate(edges):
        if (deg[u] == 1 or deg[v] == 1) and u not in tail_vertices and v not in tail_vertices:
            tail.append(eid)
            tail_vertices.add(u)
            tail_vertices.add(v)
    in_tail = set(tail)
    order = [eid for eid in range(m) if eid not in in_tail] + tail
    pos = [0] * m
    for i, eid in enumerate(order):
        pos[eid] = i
    last = [-1] * n
    for eid, (u, v) in enumerate(edges):
        last[u] = max(last[u], pos[eid])
        last[v] = max(last[v], pos[eid])
    dead = [pos[eid] == last[edges[eid][0]] and pos[eid] == last[edges[eid][1]] for eid in range(m)]
    start = m
    while start > 0 and dead[order[start - 1]]:
        start -= 1
    return order, dead, start


def _search(n: int, edges, caps, stop_at: int | None, prune_below: bool = False):
    """Best class count (and an assignment per edge id) for one component.

    With ``stop_at`` the search stops once that many classes are reached, so
    the result is ``min``-exact: it equals the true optimum whenever that
    optimum is below the stop value. ``prune_below`` additionally discards
    branches that cannot reach ``stop_at``; the result then only answers
    whether the optimum meets the stop value.
    """
    m = len(edges)
    order, dead, suffix_start = _plan(n, edges)
    pal = [0] * n  # palette bitmask per vertex
    size = [0] * n
    left = [0] * n  # uncolored incident edges per vertex
    for u, v in edges:
        left[u] += 1
        left[v] += 1
    state = {"room": sum(caps[v] for v in range(n) if left[v] > 0)}
    assign = [0] * m  # by position
    best = 0
    best_assign: list[int] | None = None
    done = False

    def feasible_new(u: int, v: int) -> bool:
        return size[u] < caps[u] and size[v] < caps[v]

    def min_old(u: int, v: int, classes: int) -> int | None:
        full_u, full_v = size[u] >= caps[u], size[v] >= caps[v]
        if full_u and full_v:
            both = pal[u] & pal[v]
            if both == 0:
                return None
            return (both & -both).bit_length() - 1
        if full_u:
            return (pal[u] & -pal[u]).bit_length() - 1
        if full_v:
            return (pal[v] & -pal[v]).bit_length() - 1
        return 0 if classes > 0 else None

    def finish_suffix(pos: int, classes: int) -> None:
        # remaining edges are pairwise vertex-disjoint, so their choices are
        # independent and the optimum is computed directly
        nonlocal best, best_assign, done
        extra = 0
        chosen = []
        for i in range(pos, m):
            u, v = edges[order[i]]
            if feasible_new(u, v):
                chosen.append(classes + extra)
                extra += 1
            else:
                a = min_old(u, v, classes)
                if a is None:
                    return
                chosen.append(a)
        total = classes + extra
        if total > best:
            best = total
            snapshot = assign[:pos] + chosen
            best_assign = snapshot
            if stop_at is not None and best >= stop_at:
                done = True

    def step(pos: int, classes: int) -> None:
        nonlocal best, best_assign, done
        if done:
            return
        if pos == m:
            if classes > best:
                best = classes
                best_assign = assign[:]
                if stop_at is not None and best >= stop_at:
                    done = True
            return
        potential = classes + min(m - pos, state["room"] // 2)
        if potential <= best:
            return
        if prune_below and stop_at is not None and potential < stop_at:
            return
        if pos >= suffix_start:
            finish_suffix(pos, classes)
            return
        eid = order[pos]
        u, v = edges[eid]
        if dead[eid]:
            if feasible_new(u, v):
                candidates = (classes,)
            else:
                a = min_old(u, v, classes)
                if a is None:
                    return
                candidates = (a,)
        else:
            candidates = []
            if classes < m and feasible_new(u, v):
                candidates.append(classes)
            for a in range(classes):
                bit = 1 << a
                if (pal[u] & bit or size[u] < caps[u]) and (
                    pal[v] & bit or size[v] < caps[v]
                ):
                    candidates.append(a)
        for a in candidates:
            bit = 1 << a
            undo = []
            for w in (u, v):
                if not pal[w] & bit:
                    pal[w] |= bit
                    size[w] += 1
                    state["room"] -= 1
                    undo.append((w, True))
                else:
                    undo.append((w, False))
                left[w] -= 1
                if left[w] == 0:
                    state["room"] -= caps[w] - size[w]
            assign[pos] = a
            step(pos + 1, classes + 1 if a == classes else classes)
            for w, added in reversed(undo):
                if left[w] == 0:
                    state["room"] += caps[w] - size[w]
                left[w] += 1
                if added:
                    pal[w] &= ~bit
                    size[w] -= 1
                    state["room"] += 1
            if done:
                return

    step(0, 0)
    if best_assign is None:
        return best, None
    by_edge = [0] * m
    for i, eid in enumerate(order):
        by_edge[eid] = best_assign[i]
    return best, by_edge
