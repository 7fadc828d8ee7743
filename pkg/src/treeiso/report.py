"""Per-tree bound reports, the verification suite, and CSV/JSON emission."""
from __future__ import annotations

import csv
import io
import json
import math
import random
import sys
from collections import deque
from dataclasses import dataclass

from .bounds import (
    analytic_peak_lower_bounds,
    check_flux_conservation,
    count_sizes_with_cut_at_most,
    cut_count_upper_bound,
    edge_peak_lower_bound,
    prefix_upper_bounds,
    sandwich_check,
)
from .profile import (
    IsoProfile,
    SizeCapError,
    brute_force_profiles,
    compute_profile,
)
from .tree import RootedTree, generate_tree, subtree_weights

DEFAULT_FLUX_SUBSETS = 32
FLOAT_TOL = 1e-9

SWEEP_BINARY_DEPTHS = tuple(range(2, 14))
SWEEP_TARY_BRANCHING = (3, 4, 5, 9)


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    details: str

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "details": self.details}


@dataclass
class BoundsReport:
    """All bound values for one tree plus the pass/fail verdicts they imply."""

    tree: dict
    profile: dict
    bounds: dict
    derived: dict
    flux: dict
    verdicts: list
    findings: list

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "tree": self.tree,
            "profile": self.profile,
            "bounds": self.bounds,
            "derived": self.derived,
            "flux": self.flux,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "findings": [v.to_dict() for v in self.findings],
            "pass": self.passed,
        }


@dataclass
class TreeEntry:
    """One suite input: a tree plus its descriptor, or a load error."""

    source: dict
    tree: RootedTree = None
    error: str = None


@dataclass
class SuiteResult:
    seed: int
    options: dict
    reports: list
    errors: list
    exit_status: int

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "options": self.options,
            "reports": [r.to_dict() for r in self.reports],
            "errors": self.errors,
            "exit_status": self.exit_status,
        }


def derived_parameter_bounds(profile: IsoProfile, delta: int) -> dict:
    """Lower bounds on layout/decomposition parameters implied by the profiles.

    pathwidth and bandwidth are bounded by the vertex peak, cutwidth by the
    edge peak, wirelength by the profile sum, thinness by the vertex peak
    over the maximum degree, and treewidth/carving-width by the largest
    half-window minimum of the vertex profile.
    """
    bv = profile.vertex_values
    window_best = 0
    dq = deque()
    for j in range(1, profile.n + 1):
        while dq and bv[dq[-1] - 1] >= bv[j - 1]:
            dq.pop()
        dq.append(j)
        lo = (j + 1) // 2
        while dq[0] < lo:
            dq.popleft()
        if bv[dq[0] - 1] > window_best:
            window_best = bv[dq[0] - 1]
    thinness = -(-profile.vertex_peak // delta) if delta > 0 else 0
    return {
        "pathwidth_lb": profile.vertex_peak,
        "bandwidth_lb": profile.vertex_peak,
        "cutwidth_lb": profile.edge_peak,
        "treewidth_lb": max(0, window_best - 1),
        "carvingwidth_lb": window_best,
        "wirelength_lb": sum(profile.edge_values),
        "thinness_lb": thinness,
    }


def analyze_tree(
    tree: RootedTree,
    source: dict = None,
    *,
    oracle_limit: int = 20,
    k_max: int = None,
    dp_cap: int = 50_000,
    flux_subsets: int = DEFAULT_FLUX_SUBSETS,
    suite_seed: int = 0,
    flux_counter: int = 0,
) -> BoundsReport:
    """Run every check on one tree and assemble its report.

    Mandatory verdicts: oracle equivalence (when n is small enough), flux
    conservation, the binomial cut-count bound, the certified edge-peak
    lower bound, prefix dominance, and the peak sandwich.  Ceiling and
    closed-form checks are reported as findings and never gate.
    """
    source = dict(source or {})
    weights = subtree_weights(tree)
    delta = tree.max_degree()
    profile = compute_profile(tree, dp_cap)
    n = tree.n
    verdicts = []
    findings = []

    if n <= oracle_limit:
        oracle_edge, oracle_vertex = brute_force_profiles(tree, oracle_limit)
        ok = (
            list(profile.edge_values) == oracle_edge
            and list(profile.vertex_values) == oracle_vertex
        )
        detail = "dp == enumeration over all subsets" if ok else (
            f"dp edge={list(profile.edge_values)} vertex={list(profile.vertex_values)} "
            f"oracle edge={oracle_edge} vertex={oracle_vertex}"
        )
        verdicts.append(Verdict("oracle: dp profiles equal exhaustive enumeration", ok, detail))

    flux_seed = suite_seed * 1_000_003 + flux_counter
    rng = random.Random(flux_seed)
    subsets = [frozenset(), frozenset(range(n))]
    for _ in range(max(0, flux_subsets - 2)):
        bits = rng.getrandbits(n)
        subsets.append(frozenset(v for v in range(n) if (bits >> v) & 1))
    flux_failures = []
    for s in subsets:
        chk = check_flux_conservation(tree, s, weights)
        if not chk.passed:
            flux_failures.append(f"|S|={chk.expected} sum={chk.total}")
    verdicts.append(
        Verdict(
            "flux_conservation: f(root) + sum_e f(e) == |S|",
            not flux_failures,
            f"{len(subsets)} subsets checked"
            + (f", failures: {flux_failures[:3]}" if flux_failures else ""),
        )
    )

    k_cap = profile.edge_peak if k_max is None else min(k_max, profile.edge_peak)
    table = []
    count_bound_ok = True
    for k in range(k_cap + 1):
        ell = count_sizes_with_cut_at_most(profile.edge_values, k)
        bound = cut_count_upper_bound(weights.eta, k)
        table.append({"k": k, "ell": ell, "bound": str(bound)})
        if ell > bound:
            count_bound_ok = False
    verdicts.append(
        Verdict(
            "cut_count_bound: ell(k) <= 2*C(2*eta+k, k)",
            count_bound_ok,
            f"k = 0..{k_cap}, eta = {weights.eta}",
        )
    )

    p = edge_peak_lower_bound(n, weights.eta)
    verdicts.append(
        Verdict(
            "edge_peak_lb: p <= edge_peak",
            p <= profile.edge_peak,
            f"p = {p}, edge_peak = {profile.edge_peak}",
        )
    )

    edge_ub, vertex_ub = prefix_upper_bounds(tree)
    dominance_violations = [
        i + 1
        for i in range(n)
        if edge_ub[i] < profile.edge_values[i] or vertex_ub[i] < profile.vertex_values[i]
    ]
    verdicts.append(
        Verdict(
            "prefix_dominance: |delta(S_i)| >= b_e(i) and |phi(S_i)| >= b_v(i)",
            not dominance_violations,
            f"{2 * n} comparisons"
            + (f", first violations at i = {dominance_violations[:3]}" if dominance_violations else ""),
        )
    )
    edge_ceiling = max(delta - 1, 0) * weights.depth
    findings.append(
        Verdict(
            "prefix_edge_ceiling: max_i |delta(S_i)| <= (delta-1)*depth",
            max(edge_ub) <= edge_ceiling,
            f"max = {max(edge_ub)}, ceiling = {edge_ceiling}",
        )
    )
    findings.append(
        Verdict(
            "prefix_vertex_ceiling: max_i |phi(S_i)| <= depth",
            max(vertex_ub) <= weights.depth,
            f"max = {max(vertex_ub)}, ceiling = {weights.depth}",
        )
    )

    sandwich = sandwich_check(profile, delta)
    verdicts.append(
        Verdict(
            "sandwich: edge_peak >= vertex_peak >= edge_peak/delta",
            sandwich.passed,
            f"edge_peak = {sandwich.edge_peak}, vertex_peak = {sandwich.vertex_peak}, "
            f"delta = {sandwich.delta}",
        )
    )

    be_lb, bv_lb = analytic_peak_lower_bounds(n, weights.eta, max(delta, 1))
    findings.append(
        Verdict(
            "analytic_lb: eta*(n^(1/(2*eta)) - 2e)/e <= edge_peak (and /delta <= vertex_peak)",
            be_lb <= profile.edge_peak + FLOAT_TOL and bv_lb <= profile.vertex_peak + FLOAT_TOL,
            f"be_lb = {be_lb!r}, bv_lb = {bv_lb!r}",
        )
    )

    if source.get("kind") == "complete_tary":
        t = source["params"]["t"]
        d = weights.depth
        findings.append(
            Verdict(
                "tary_edge_upper_td: edge_peak <= t*d",
                profile.edge_peak <= t * d,
                f"edge_peak = {profile.edge_peak}, t*d = {t * d}",
            )
        )
        findings.append(
            Verdict(
                "tary_edge_upper_(t-1)d: edge_peak <= (t-1)*d",
                profile.edge_peak <= (t - 1) * d,
                f"edge_peak = {profile.edge_peak}, (t-1)*d = {(t - 1) * d}",
            )
        )
        findings.append(
            Verdict(
                "tary_vertex_upper_d: vertex_peak <= d",
                profile.vertex_peak <= d,
                f"vertex_peak = {profile.vertex_peak}, d = {d}",
            )
        )

    return BoundsReport(
        tree={**source, "n": n, "depth": weights.depth, "delta": delta, "eta": weights.eta},
        profile={
            "edge_peak": profile.edge_peak,
            "vertex_peak": profile.vertex_peak,
            "edge_argpeak": profile.edge_argpeak,
            "vertex_argpeak": profile.vertex_argpeak,
        },
        bounds={
            "eta": weights.eta,
            "depth": weights.depth,
            "delta": delta,
            "p": p,
            "theorem1": table,
            "prefix_edge_max": max(edge_ub),
            "prefix_vertex_max": max(vertex_ub),
            "corollary3_be_lb": be_lb,
            "sandwich_pass": sandwich.passed,
        },
        derived=derived_parameter_bounds(profile, delta),
        flux={"suite_seed": suite_seed, "counter": flux_counter, "subsets": len(subsets)},
        verdicts=verdicts,
        findings=findings,
    )


def verify_suite(
    items,
    *,
    oracle_limit: int = 20,
    k_max: int = None,
    dp_cap: int = 50_000,
    seed: int = 0,
    flux_subsets: int = DEFAULT_FLUX_SUBSETS,
) -> SuiteResult:
    """Run every check on a list of trees; items are RootedTree or TreeEntry.

    Exit status 2 when any input failed to load or exceeded a cap, else 1
    when any mandatory verdict failed, else 0.  Identical inputs and seed
    give byte-identical serialized results.
    """
    reports = []
    errors = []
    for counter, item in enumerate(items):
        if isinstance(item, RootedTree):
            item = TreeEntry(source={"index": counter}, tree=item)
        if item.error is not None:
            errors.append({"source": item.source, "error": item.error})
            continue
        try:
            reports.append(
                analyze_tree(
                    item.tree,
                    item.source,
                    oracle_limit=oracle_limit,
                    k_max=k_max,
                    dp_cap=dp_cap,
                    flux_subsets=flux_subsets,
                    suite_seed=seed,
                    flux_counter=counter,
                )
            )
        except SizeCapError as exc:
            errors.append({"source": item.source, "error": str(exc)})
    if errors:
        status = 2
    elif any(not r.passed for r in reports):
        status = 1
    else:
        status = 0
    return SuiteResult(
        seed=seed,
        options={
            "oracle_limit": oracle_limit,
            "k_max": k_max,
            "dp_cap": dp_cap,
            "flux_subsets": flux_subsets,
        },
        reports=reports,
        errors=errors,
        exit_status=status,
    )


def sweep_rows(max_vertices: int = 50_000, dp_cap: int = 50_000) -> list:
    """Peak measurements across complete t-ary trees at desk scale.

    Binary trees for depths 2..13 plus branching factors 3, 4, 5 and 9 with
    every depth >= 2 that stays within max_vertices.  Each row carries both
    peaks, the certified lower bound p, the trend ratios edge_peak/d and
    vertex_peak*sqrt(t)/d, the t*d / (t-1)*d / d upper-bound values, and
    whether the cut-count bound held for every k up to the edge peak.
    """
    rows = []
    for t in (2,) + SWEEP_TARY_BRANCHING:
        if t == 2:
            depths = [d for d in SWEEP_BINARY_DEPTHS if 2**d - 1 <= max_vertices]
        else:
            depths = []
            d = 2
            while (t**d - 1) // (t - 1) <= max_vertices:
                depths.append(d)
                d += 1
        for d in depths:
            tree = generate_tree("complete_tary", {"t": t, "d": d})
            weights = subtree_weights(tree)
            profile = compute_profile(tree, dp_cap)
            p = edge_peak_lower_bound(tree.n, weights.eta)
            ok = all(
                count_sizes_with_cut_at_most(profile.edge_values, k)
                <= cut_count_upper_bound(weights.eta, k)
                for k in range(profile.edge_peak + 1)
            )
            rows.append(
                {
                    "t": t,
                    "d": d,
                    "n": tree.n,
                    "eta": weights.eta,
                    "edge_peak": profile.edge_peak,
                    "vertex_peak": profile.vertex_peak,
                    "p": p,
                    "edge_peak_over_d": profile.edge_peak / d,
                    "vertex_peak_sqrt_t_over_d": profile.vertex_peak * math.sqrt(t) / d,
                    "edge_upper_td": t * d,
                    "edge_upper_t_minus_1_d": (t - 1) * d,
                    "vertex_upper_d": d,
                    "p_le_edge_peak": p <= profile.edge_peak,
                    "cut_count_bound_ok": ok,
                }
            )
    return rows


def emit(obj, fmt: str = "json", destination=None) -> None:
    """Write a profile, report, suite result, or row list as CSV or JSON.

    destination None or '-' means standard output; otherwise a file path.
    Identical inputs produce identical bytes.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown output format {fmt!r}, expected 'csv' or 'json'")
    text = _render(obj, fmt)
    if destination is None or destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _render(obj, fmt: str) -> str:
    if isinstance(obj, IsoProfile):
        if fmt == "csv":
            lines = ["i,b_e,b_v"]
            for idx in range(obj.n):
                lines.append(f"{idx + 1},{obj.edge_values[idx]},{obj.vertex_values[idx]}")
            return "\n".join(lines) + "\n"
        return json.dumps(obj.to_dict(), indent=2) + "\n"
    if isinstance(obj, BoundsReport):
        if fmt == "csv":
            return _kv_csv(_flatten_dict(obj.to_dict()))
        return json.dumps(obj.to_dict(), indent=2) + "\n"
    if isinstance(obj, SuiteResult):
        if fmt == "csv":
            return _suite_csv(obj)
        return json.dumps(obj.to_dict(), indent=2) + "\n"
    if isinstance(obj, list):
        if fmt == "csv":
            return _rows_csv(obj)
        return json.dumps(obj, indent=2) + "\n"
    raise TypeError(f"cannot emit object of type {type(obj).__name__}")


def _flatten_dict(value, prefix: str = "") -> list:
    pairs = []
    if isinstance(value, dict):
        for key, sub in value.items():
            pairs.extend(_flatten_dict(sub, f"{prefix}{key}."))
    elif isinstance(value, list):
        for idx, sub in enumerate(value):
            pairs.extend(_flatten_dict(sub, f"{prefix}{idx}."))
    else:
        pairs.append((prefix[:-1], value))
    return pairs


def _kv_csv(pairs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["field", "value"])
    for key, value in pairs:
        writer.writerow([key, value])
    return buf.getvalue()


def _source_label(source: dict) -> str:
    for key in ("path", "spec", "kind", "label", "index"):
        if key in source:
            return str(source[key])
    return json.dumps(source, sort_keys=True)


def _suite_csv(result: SuiteResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["source", "n", "depth", "delta", "eta", "edge_peak", "vertex_peak", "p", "status"]
    )
    for rep in result.reports:
        writer.writerow(
            [
                _source_label(rep.tree),
                rep.tree["n"],
                rep.tree["depth"],
                rep.tree["delta"],
                rep.tree["eta"],
                rep.profile["edge_peak"],
                rep.profile["vertex_peak"],
                rep.bounds["p"],
                "pass" if rep.passed else "fail",
            ]
        )
    for err in result.errors:
        writer.writerow(
            [_source_label(err["source"]), "", "", "", "", "", "", "", f"error: {err['error']}"]
        )
    return buf.getvalue()


def _rows_csv(rows: list) -> str:
    if not rows:
        return "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    keys = list(rows[0].keys())
    writer.writerow(keys)
    for row in rows:
        writer.writerow([row.get(k) for k in keys])
    return buf.getvalue()
