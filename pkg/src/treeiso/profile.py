"""Exact isoperimetric profiles of rooted trees.

Two independent routes to the same numbers: a quadratic subtree-merge
dynamic program (edge_profile / vertex_profile) and an exhaustive
enumeration over all 2^n vertex subsets (brute_force_profiles) that serves
as the oracle at small n.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tree import RootedTree, postorder

DEFAULT_DP_CAP = 50_000
DEFAULT_ORACLE_LIMIT = 20

# Flag values for the edge DP rows.
_E_OUT, _E_IN = 0, 1
# Flag values for the vertex DP rows.  OUT_UNTOUCHED has no neighbor in S
# among processed vertices; OUT_TOUCHED has already paid its unit of
# boundary cost.
_V_OUT_UNTOUCHED, _V_OUT_TOUCHED, _V_IN = 0, 1, 2

# Transition tables: (parent flag, child-root flag) -> (merge cost, new parent flag).
_EDGE_TRANS = {
    (s, sc): (0 if s == sc else 1, s) for s in (0, 1) for sc in (0, 1)
}
_VERTEX_TRANS = {
    (_V_OUT_UNTOUCHED, _V_OUT_UNTOUCHED): (0, _V_OUT_UNTOUCHED),
    (_V_OUT_UNTOUCHED, _V_OUT_TOUCHED): (0, _V_OUT_UNTOUCHED),
    (_V_OUT_UNTOUCHED, _V_IN): (1, _V_OUT_TOUCHED),
    (_V_OUT_TOUCHED, _V_OUT_UNTOUCHED): (0, _V_OUT_TOUCHED),
    (_V_OUT_TOUCHED, _V_OUT_TOUCHED): (0, _V_OUT_TOUCHED),
    (_V_OUT_TOUCHED, _V_IN): (0, _V_OUT_TOUCHED),
    (_V_IN, _V_OUT_UNTOUCHED): (1, _V_IN),
    (_V_IN, _V_OUT_TOUCHED): (0, _V_IN),
    (_V_IN, _V_IN): (0, _V_IN),
}


class SizeCapError(ValueError):
    """Input tree larger than the configured computation cap."""


@dataclass(frozen=True)
class IsoProfile:
    """Full edge and vertex isoperimetric profiles of one tree.

    Entry k of each value tuple is the minimum boundary size over all
    vertex subsets of cardinality k + 1; the peaks are the maxima over all
    cardinalities 1..n and the argpeaks the smallest cardinality attaining
    them.
    """

    n: int
    edge_values: tuple
    vertex_values: tuple
    edge_peak: int
    vertex_peak: int
    edge_argpeak: int
    vertex_argpeak: int

    @classmethod
    def from_values(cls, edge_values, vertex_values) -> "IsoProfile":
        edge_values = tuple(edge_values)
        vertex_values = tuple(vertex_values)
        if len(edge_values) != len(vertex_values) or not edge_values:
            raise ValueError("profiles must be nonempty and of equal length")
        ep, ea = peaks(edge_values)
        vp, va = peaks(vertex_values)
        return cls(
            n=len(edge_values),
            edge_values=edge_values,
            vertex_values=vertex_values,
            edge_peak=ep,
            vertex_peak=vp,
            edge_argpeak=ea,
            vertex_argpeak=va,
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edge": list(self.edge_values),
            "vertex": list(self.vertex_values),
            "edge_peak": self.edge_peak,
            "vertex_peak": self.vertex_peak,
            "edge_argpeak": self.edge_argpeak,
            "vertex_argpeak": self.vertex_argpeak,
        }


def edge_boundary_size(tree: RootedTree, members) -> int:
    """Number of edges with exactly one endpoint in the given vertex set."""
    inside = _membership(tree, members)
    return sum(1 for v, p in tree.edges() if inside[v] != inside[p])


def vertex_boundary_size(tree: RootedTree, members) -> int:
    """Number of vertices outside the set adjacent to at least one member."""
    inside = _membership(tree, members)
    adj = tree.adjacency()
    return sum(
        1
        for v in range(tree.n)
        if not inside[v] and any(inside[u] for u in adj[v])
    )


def _membership(tree: RootedTree, members) -> list:
    inside = [False] * tree.n
    for v in members:
        if not (0 <= v < tree.n):
            raise ValueError(f"vertex {v} out of range [0, {tree.n})")
        inside[v] = True
    return inside


def brute_force_profiles(tree: RootedTree, limit: int = DEFAULT_ORACLE_LIMIT):
    """Exact profiles by evaluating the boundary of every one of the 2^n subsets.

    Independent of the dynamic program: subsets are enumerated as bitmasks
    and both boundary sizes are read straight off the definitions.  Returns
    (edge_values, vertex_values) indexed like IsoProfile.
    """
    n = tree.n
    if n > limit:
        raise SizeCapError(f"tree has {n} vertices, above the oracle limit {limit}")
    masks = np.arange(1 << n, dtype=np.int64)
    size = np.zeros(masks.size, dtype=np.int64)
    for v in range(n):
        size += (masks >> v) & 1
    cut = np.zeros(masks.size, dtype=np.int64)
    for v, p in tree.edges():
        cut += ((masks >> v) ^ (masks >> p)) & 1
    adj = tree.adjacency()
    touched = np.zeros(masks.size, dtype=np.int64)
    for v in range(n):
        nbr_mask = 0
        for u in adj[v]:
            nbr_mask |= 1 << u
        touched += (((masks >> v) & 1) == 0) & ((masks & nbr_mask) != 0)
    sentinel = np.iinfo(np.int64).max
    edge_best = np.full(n + 1, sentinel, dtype=np.int64)
    vert_best = np.full(n + 1, sentinel, dtype=np.int64)
    np.minimum.at(edge_best, size, cut)
    np.minimum.at(vert_best, size, touched)
    return (
        [int(x) for x in edge_best[1:]],
        [int(x) for x in vert_best[1:]],
    )


def peaks(values):
    """(maximum entry, smallest 1-based cardinality attaining it)."""
    values = list(values)
    if not values:
        raise ValueError("profile must be nonempty")
    best = max(values)
    return best, values.index(best) + 1


def edge_profile(tree: RootedTree, size_cap: int = DEFAULT_DP_CAP):
    """Exact minimum edge boundary for every subset cardinality 1..n.

    Bottom-up merge over the rooted tree: each vertex carries a table
    indexed by (number of selected vertices in its subtree, whether the
    subtree root is selected) holding the minimum number of cut edges
    strictly inside the subtree.  Merging a child adds one cut when the
    selection flags of parent and child differ.
    """
    _check_cap(tree, size_cap)
    root_table = _run_dp(tree, "edge")
    vals = np.min(root_table, axis=0)[1:]
    return [int(x) for x in vals]


def vertex_profile(tree: RootedTree, size_cap: int = DEFAULT_DP_CAP):
    """Exact minimum vertex boundary for every subset cardinality 1..n.

    Same merge scheme as edge_profile with a three-state flag per subtree
    root: selected, outside-and-already-counted, or outside-and-untouched.
    A unit cost is paid exactly when a vertex outside the selection first
    gains a selected neighbor.
    """
    _check_cap(tree, size_cap)
    root_table = _run_dp(tree, "vertex")
    vals = np.min(root_table, axis=0)[1:]
    return [int(x) for x in vals]


def compute_profile(tree: RootedTree, size_cap: int = DEFAULT_DP_CAP) -> IsoProfile:
    return IsoProfile.from_values(
        edge_profile(tree, size_cap), vertex_profile(tree, size_cap)
    )


def witness_subset(tree: RootedTree, i: int, mode: str, size_cap: int = DEFAULT_DP_CAP):
    """A subset of cardinality i attaining the profile minimum for the mode.

    Deterministic: DP splits are re-read in a fixed scan order (flags
    ascending, child allocation ascending), children in ascending-id merge
    order, so ties always resolve the same way.
    """
    if mode not in ("edge", "vertex"):
        raise ValueError(f"mode must be 'edge' or 'vertex', got {mode!r}")
    if not (1 <= i <= tree.n):
        raise ValueError(f"subset size {i} out of range [1, {tree.n}]")
    _check_cap(tree, size_cap)
    final, stages = _run_dp(tree, mode, keep_stages=True)
    root_table = final[tree.root]
    in_flag = _V_IN if mode == "vertex" else _E_IN
    trans = _VERTEX_TRANS if mode == "vertex" else _EDGE_TRANS
    nflags = 3 if mode == "vertex" else 2

    target = min(root_table[s][i] for s in range(nflags))
    s_star = next(s for s in range(nflags) if root_table[s][i] == target)

    selected = []
    work = [(tree.root, i, s_star)]
    while work:
        v, j, s_after = work.pop()
        kids = tree.children[v]
        tabs = stages[v]
        for m in range(len(kids), 0, -1):
            child = kids[m - 1]
            value = tabs[m][s_after][j]
            prev_tab = tabs[m - 1]
            child_tab = final[child]
            found = None
            for s_prev in range(nflags):
                for sc in range(nflags):
                    tr = trans.get((s_prev, sc))
                    if tr is None or tr[1] != s_after:
                        continue
                    cost = tr[0]
                    hi = min(j, child_tab.shape[1] - 1)
                    lo = max(0, j - (prev_tab.shape[1] - 1))
                    for jc in range(lo, hi + 1):
                        if prev_tab[s_prev][j - jc] + child_tab[sc][jc] + cost == value:
                            found = (s_prev, sc, jc)
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                raise AssertionError("DP backtracking failed to find a split")
            s_prev, sc, jc = found
            work.append((child, jc, sc))
            j -= jc
            s_after = s_prev
        # Base table: the vertex alone.
        if s_after == in_flag:
            selected.append(v)
        if tabs[0][s_after][j] != 0:
            raise AssertionError("DP backtracking reached an infeasible base cell")
    return frozenset(selected)


def _check_cap(tree: RootedTree, size_cap: int) -> None:
    if tree.n > size_cap:
        raise SizeCapError(f"tree has {tree.n} vertices, above the DP size cap {size_cap}")


def _base_table(mode: str) -> np.ndarray:
    inf = np.inf
    if mode == "edge":
        return np.array([[0.0, inf], [inf, 0.0]])
    return np.array([[0.0, inf], [inf, inf], [inf, 0.0]])


def _merge(cur: np.ndarray, child: np.ndarray, mode: str) -> np.ndarray:
    if mode == "edge":
        eff0 = np.minimum(child[0], child[1] + 1.0)
        eff1 = np.minimum(child[1], child[0] + 1.0)
        return np.stack([_min_plus(cur[0], eff0), _min_plus(cur[1], eff1)])
    c_ou, c_ot, c_in = child[0], child[1], child[2]
    out_any = np.minimum(c_ot, c_ou)
    new0 = _min_plus(cur[0], out_any)
    new1 = np.minimum(
        _min_plus(cur[1], np.minimum(c_in, out_any)),
        _min_plus(cur[0], c_in + 1.0),
    )
    new2 = _min_plus(cur[2], np.minimum(np.minimum(c_in, c_ot), c_ou + 1.0))
    return np.stack([new0, new1, new2])


def _min_plus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Min-plus convolution; np.inf marks infeasible cells and propagates."""
    out = np.full(a.size + b.size - 1, np.inf)
    if b.size < a.size:
        a, b = b, a
    scratch = np.empty(b.size)
    for i, v in enumerate(a.tolist()):
        if v == np.inf:
            continue
        np.add(b, v, out=scratch)
        seg = out[i : i + b.size]
        np.minimum(seg, scratch, out=seg)
    return out


def _run_dp(tree: RootedTree, mode: str, keep_stages: bool = False):
    """Post-order DP over the tree; children merged in ascending-id order.

    Returns the root table, or (per-vertex final tables, per-vertex stage
    lists) when keep_stages is set for witness backtracking.
    """
    final = [None] * tree.n
    stages = [None] * tree.n if keep_stages else None
    for v in postorder(tree):
        table = _base_table(mode)
        if keep_stages:
            stages[v] = [table]
        for c in tree.children[v]:
            table = _merge(table, final[c], mode)
            if keep_stages:
                stages[v].append(table)
            else:
                final[c] = None
        final[v] = table
    if keep_stages:
        return final, stages
    return final[tree.root]
