"""Profile DP against the exhaustive oracle, peaks, and witness subsets."""
import itertools

import pytest

from treeiso import (
    IsoProfile,
    SizeCapError,
    brute_force_profiles,
    compute_profile,
    edge_boundary_size,
    edge_profile,
    generate_tree,
    peaks,
    vertex_boundary_size,
    vertex_profile,
    witness_subset,
)
from helpers import random_trees, structured_trees

# Frozen from brute_force_profiles; the oracle tests below recompute them.
STAR5_EDGE = [1, 2, 2, 1, 0]
STAR5_VERTEX = [1, 1, 1, 1, 0]
BIN3_EDGE = [1, 2, 1, 1, 2, 1, 0]
BIN3_VERTEX = [1, 1, 1, 1, 1, 1, 0]


def bin3():
    return generate_tree("complete_tary", {"t": 2, "d": 3})


def test_known_profiles():
    assert edge_profile(generate_tree("path", {"n": 4})) == [1, 1, 1, 0]
    assert vertex_profile(generate_tree("path", {"n": 4})) == [1, 1, 1, 0]
    assert edge_profile(generate_tree("star", {"n": 5})) == STAR5_EDGE
    assert vertex_profile(generate_tree("star", {"n": 5})) == STAR5_VERTEX
    assert edge_profile(bin3()) == BIN3_EDGE
    assert vertex_profile(bin3()) == BIN3_VERTEX


def test_known_profiles_match_oracle():
    assert brute_force_profiles(generate_tree("star", {"n": 5})) == (STAR5_EDGE, STAR5_VERTEX)
    assert brute_force_profiles(bin3()) == (BIN3_EDGE, BIN3_VERTEX)


def test_single_vertex():
    one = generate_tree("path", {"n": 1})
    assert brute_force_profiles(one) == ([0], [0])
    assert edge_profile(one) == [0]
    assert vertex_profile(one) == [0]


def test_oracle_against_naive_enumeration():
    """The bitmask oracle agrees with a from-the-definition subset scan."""
    for label, tree in random_trees(24, 8, seed0=1) + structured_trees(7):
        n = tree.n
        naive_edge = []
        naive_vertex = []
        for i in range(1, n + 1):
            naive_edge.append(
                min(edge_boundary_size(tree, s) for s in itertools.combinations(range(n), i))
            )
            naive_vertex.append(
                min(vertex_boundary_size(tree, s) for s in itertools.combinations(range(n), i))
            )
        assert brute_force_profiles(tree) == (naive_edge, naive_vertex), label


def test_dp_matches_oracle_small():
    for label, tree in structured_trees(12) + random_trees(120, 14, seed0=2):
        assert (edge_profile(tree), vertex_profile(tree)) == brute_force_profiles(tree), label


def test_profile_invariants():
    for label, tree in structured_trees(10) + random_trees(60, 16, seed0=5):
        prof = compute_profile(tree)
        n = prof.n
        assert prof.edge_values[n - 1] == 0, label
        assert prof.vertex_values[n - 1] == 0, label
        for i in range(1, n):
            assert prof.edge_values[i - 1] >= 1, label
            assert prof.vertex_values[i - 1] >= 1, label
            assert prof.edge_values[i - 1] == prof.edge_values[n - i - 1], label
        assert prof.edge_peak >= prof.vertex_peak, label


def test_peaks_examples():
    assert peaks([1, 2, 1, 1, 2, 1, 0]) == (2, 2)
    assert peaks([0]) == (0, 1)
    assert peaks([1, 1, 1, 0]) == (1, 1)


def test_peaks_empty_rejected():
    with pytest.raises(ValueError):
        peaks([])


def test_iso_profile_fields():
    prof = compute_profile(bin3())
    assert prof.n == 7
    assert prof.edge_peak == 2 and prof.edge_argpeak == 2
    assert prof.vertex_peak == 1 and prof.vertex_argpeak == 1
    assert prof.to_dict()["edge"] == BIN3_EDGE


def test_iso_profile_bad_lengths():
    with pytest.raises(ValueError):
        IsoProfile.from_values([1, 0], [0])


def test_witness_examples():
    path4 = generate_tree("path", {"n": 4})
    s = witness_subset(path4, 2, "edge")
    assert len(s) == 2
    assert edge_boundary_size(path4, s) == 1

    s = witness_subset(bin3(), 3, "edge")
    assert len(s) == 3
    assert edge_boundary_size(bin3(), s) == 1

    s = witness_subset(generate_tree("star", {"n": 5}), 3, "edge")
    assert edge_boundary_size(generate_tree("star", {"n": 5}), s) == 2


def test_witness_consistency():
    for label, tree in structured_trees(9) + random_trees(40, 12, seed0=6):
        ep = edge_profile(tree)
        vp = vertex_profile(tree)
        for i in range(1, tree.n + 1):
            se = witness_subset(tree, i, "edge")
            sv = witness_subset(tree, i, "vertex")
            assert len(se) == i and len(sv) == i, label
            assert edge_boundary_size(tree, se) == ep[i - 1], label
            assert vertex_boundary_size(tree, sv) == vp[i - 1], label


def test_witness_deterministic():
    tree = generate_tree("random_prufer", {"n": 13}, seed=21)
    for i in (1, 4, 7, 13):
        assert witness_subset(tree, i, "edge") == witness_subset(tree, i, "edge")
        assert witness_subset(tree, i, "vertex") == witness_subset(tree, i, "vertex")


def test_witness_argument_errors():
    tree = bin3()
    with pytest.raises(ValueError):
        witness_subset(tree, 0, "edge")
    with pytest.raises(ValueError):
        witness_subset(tree, 8, "edge")
    with pytest.raises(ValueError):
        witness_subset(tree, 3, "boundary")


def test_profile_determinism():
    tree = generate_tree("random_prufer", {"n": 40}, seed=3)
    assert edge_profile(tree) == edge_profile(tree)
    assert vertex_profile(tree) == vertex_profile(tree)


def test_oracle_limit_enforced():
    tree = generate_tree("path", {"n": 25})
    with pytest.raises(SizeCapError):
        brute_force_profiles(tree, limit=20)


def test_dp_cap_enforced():
    tree = generate_tree("path", {"n": 100})
    with pytest.raises(SizeCapError):
        edge_profile(tree, size_cap=50)
    with pytest.raises(SizeCapError):
        vertex_profile(tree, size_cap=50)


def test_boundary_evaluators_direct():
    tree = bin3()
    assert edge_boundary_size(tree, {1, 3, 4}) == 1
    assert vertex_boundary_size(tree, {1, 3, 4}) == 1
    assert edge_boundary_size(tree, set(range(7))) == 0
    assert vertex_boundary_size(tree, set()) == 0
    with pytest.raises(ValueError):
        edge_boundary_size(tree, {9})
