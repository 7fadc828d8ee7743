"""Shared tree families for the test suite."""
from __future__ import annotations

from treeiso import generate_tree


def structured_trees(max_n: int):
    """All paths, stars, uniform caterpillars, and small complete t-ary
    trees with at most max_n vertices, as (label, tree) pairs."""
    trees = []
    for n in range(1, max_n + 1):
        trees.append((f"path:n={n}", generate_tree("path", {"n": n})))
        trees.append((f"star:n={n}", generate_tree("star", {"n": n})))
    for spine in range(1, max_n + 1):
        for legs in range(1, max_n):
            if spine * (1 + legs) > max_n:
                break
            trees.append(
                (
                    f"caterpillar:spine={spine},legs={legs}",
                    generate_tree("caterpillar", {"spine": spine, "legs": legs}),
                )
            )
    for t in (2, 3, 4):
        for d in (2, 3, 4):
            if (t**d - 1) // (t - 1) <= max_n:
                trees.append(
                    (f"complete_tary:t={t},d={d}", generate_tree("complete_tary", {"t": t, "d": d}))
                )
    return trees


def random_trees(count: int, max_n: int, seed0: int = 0):
    """Seeded random trees alternating between both random generators."""
    trees = []
    for i in range(count):
        kind = "random_recursive" if i % 2 == 0 else "random_prufer"
        n = 1 + (i * 37 + seed0) % max_n
        seed = seed0 * 100_000 + i
        trees.append((f"{kind}:n={n},seed={seed}", generate_tree(kind, {"n": n}, seed=seed)))
    return trees
