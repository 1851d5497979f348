"""Acceptance suite; a PASS/FAIL line per criterion is printed in the pytest summary."""
import itertools
import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from icchord.cnf import CnfInstance, all_clauses, brute_force_sat
from icchord.gadget import build_gadget, extract_assignment, terminals_visited
from icchord.geom import pt
from icchord.predicates import InvalidPath, VertexPath, dilation, is_increasing_chord
from icchord.reduction import (
    anchor_extensions,
    assignment_from_tree,
    build_gamma,
    build_hb,
    check_variable_path,
    witness_tree_from_assignment,
)
from icchord.roundtrip import exhaustive_instances, sampled_instances
from icchord.search import (
    SearchBudgetExceeded,
    find_ic_path,
    find_ic_rooted_spanning_tree,
    verify_ic_rooted_tree,
)

SEED = 20240611


# 1 -------------------------------------------------------------------------

def _constant_mismatches(alpha):
    inst = CnfInstance.from_ints(alpha, [[1], [-1]])
    gamma, layout = build_gamma(inst)
    bad = []
    for i, line in enumerate(layout.lines, start=1):
        if line.upper != pt(0, i):
            bad.append(f"L{i} upper {line.upper}")
        if line.lower_original != pt(2 * alpha - i + 1, 0):
            bad.append(f"L{i} lower {line.lower_original}")
        if not F(-2 * alpha) <= line.slope <= F(-1, 2 * alpha):
            bad.append(f"L{i} slope {line.slope}")
    if {layout.lv.a, layout.lv.b} != {pt(2 * alpha + 1, 2 * alpha), pt(2 * alpha + 1, -5 * alpha**2)}:
        bad.append(f"l_v {layout.lv}")
    if layout.epsilon != F(1, alpha**3):
        bad.append(f"eps={layout.epsilon} (want {F(1, alpha**3)})")
    r = gamma.vertices[gamma.vertex("root")]
    if r != pt(0, -alpha**5):
        bad.append(f"r={tuple(map(str, r))} (want (0, {-alpha**5}))")
    for i in (1, 2):
        peak = gamma.vertices[gamma.vertex(f"peak:{i}")]
        if peak != pt(0, 2 * alpha + i):
            bad.append(f"peak {i} at {peak}")
    return bad


def test_criterion_1_construction_constants(record):
    start = time.perf_counter()
    report = {alpha: _constant_mismatches(alpha) for alpha in (1, 2, 3, 4)}
    elapsed = time.perf_counter() - start
    bad = {a: m for a, m in report.items() if m}
    detail = "exact match for alpha=1..4" if not bad else "; ".join(
        f"alpha={a}: {', '.join(m)}" for a, m in bad.items()
    )
    ok = not bad and elapsed < 1.0
    record(1, ok, f"{detail} ({elapsed:.2f}s)")
    assert not bad, detail
    assert elapsed < 1.0


# 2 -------------------------------------------------------------------------

def _sampled_oracle(path, subdivision=64):
    """No quadruple a<=b<=c<=d of sampled points with |bc| > |ad| (squared, floats)."""
    pts = np.array([[float(p.x), float(p.y)] for p in path])
    t = np.arange(subdivision) / subdivision
    samples = [a + np.outer(t, b - a) for a, b in zip(pts, pts[1:])]
    samples.append(pts[-1:])
    s = np.vstack(samples)
    diff = s[:, None, :] - s[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    # best[a, c] = min_{d >= c} |ad|;  then min over a <= b
    best = np.minimum.accumulate(d2[:, ::-1], axis=1)[:, ::-1]
    best = np.minimum.accumulate(best, axis=0)
    upper = np.triu(np.ones_like(d2, dtype=bool), 1)
    scale = max(1.0, float(d2.max()))
    return not np.any(upper & (d2 > best + 1e-9 * scale))


def _random_path(rng, monotone_bias):
    while True:
        n = rng.randint(2, 6)
        if monotone_bias:
            sx, sy = rng.choice((1, -1)), rng.choice((1, -1))
            x, y = rng.randint(0, 7), rng.randint(0, 7)
            pts = [(x, y)]
            for _ in range(n - 1):
                # mostly monotone steps with an occasional backtrack
                x += sx * rng.randint(-1, 3)
                y += sy * rng.randint(-1, 3)
                pts.append((x, y))
        else:
            pts = [(rng.randint(0, 7), rng.randint(0, 7)) for _ in range(n)]
        try:
            return VertexPath(pts)
        except InvalidPath:
            continue


def test_criterion_2_verifier_matches_sampling_oracle(record):
    rng = random.Random(SEED)
    start = time.perf_counter()
    disagreements, accepted = [], 0
    for k in range(500):
        path = _random_path(rng, monotone_bias=k % 2 == 0)
        exact = is_increasing_chord(path)
        accepted += exact
        if exact != _sampled_oracle(path):
            disagreements.append(path)
    elapsed = time.perf_counter() - start
    ok = not disagreements and elapsed < 30
    record(2, ok, f"500 paths ({accepted} IC), {len(disagreements)} disagreements ({elapsed:.1f}s)")
    assert not disagreements, disagreements[:3]
    assert elapsed < 30


# 3 -------------------------------------------------------------------------

def test_criterion_3_monotone_chains_and_dilation(record):
    rng = random.Random(SEED + 3)
    start = time.perf_counter()
    rejected, worst = 0, 0.0
    for _ in range(1000):
        sx, sy = rng.choice((1, -1)), rng.choice((1, -1))
        x, y = F(rng.randint(-50, 50)), F(rng.randint(-50, 50))
        pts = [pt(x, y)]
        for _ in range(rng.randint(1, 9)):
            dx, dy = F(rng.randint(0, 40), rng.randint(1, 8)), F(rng.randint(0, 40), rng.randint(1, 8))
            if dx == dy == 0:
                dx = F(1)
            x, y = x + sx * dx, y + sy * dy
            pts.append(pt(x, y))
        try:
            path = VertexPath(pts)
        except InvalidPath:
            # collinear fold-backs cannot occur in a monotone chain
            rejected += 1
            continue
        if not is_increasing_chord(path):
            rejected += 1
        else:
            worst = max(worst, dilation(path))
    # accepted non-monotone paths must obey the bound too
    for _ in range(2000):
        path = _random_path(rng, monotone_bias=False)
        if is_increasing_chord(path):
            worst = max(worst, dilation(path))
    elapsed = time.perf_counter() - start
    bound = 2 * math.pi / 3 + 1e-9
    ok = rejected == 0 and worst <= bound and elapsed < 30
    record(3, ok, f"1000 monotone chains, {rejected} rejected, max dilation {worst:.6f} ({elapsed:.1f}s)")
    assert rejected == 0
    assert worst <= bound
    assert elapsed < 30


# 4 -------------------------------------------------------------------------

def _simple_paths(adj, s, t):
    stack = [(s, [s], {s})]
    while stack:
        v, path, seen = stack.pop()
        if v == t:
            yield path
            continue
        for w in adj[v]:
            if w not in seen:
                stack.append((w, path + [w], seen | {w}))


def test_criterion_4_variable_gadget_exhaustive(record):
    start = time.perf_counter()
    exceptions, counts = [], []
    for alpha in (1, 2, 3, 4):
        d, _ = build_hb(alpha)
        n = ic = 0
        for path in _simple_paths(d.adjacency, d.vertex("s"), d.vertex("t")):
            n += 1
            is_ic = d.is_ic(path)
            ic += is_ic
            if is_ic != check_variable_path(d, path, alpha):
                exceptions.append((alpha, path))
        counts.append(f"alpha={alpha}: {ic}/{n} IC")
        assert ic == 2**alpha
    elapsed = time.perf_counter() - start
    ok = not exceptions and elapsed < 120
    record(4, ok, f"{', '.join(counts)}, {len(exceptions)} exceptions ({elapsed:.1f}s)")
    assert not exceptions, exceptions[:3]
    assert elapsed < 120


# 5, 6, 7 -------------------------------------------------------------------

@pytest.fixture(scope="module")
def reduction_runs():
    instances = list(exhaustive_instances(2, 2)) + sampled_instances(3, 3, 100, SEED)
    runs = []
    start = time.perf_counter()
    for inst in instances:
        t0 = time.perf_counter()
        gamma, _ = build_gamma(inst)
        asg = brute_force_sat(inst)
        try:
            tree = find_ic_rooted_spanning_tree(gamma, gamma.vertex("root"))
            verdict = tree is not None
        except SearchBudgetExceeded:
            tree, verdict = None, None
        witness_ok = None
        if asg is not None:
            w = witness_tree_from_assignment(inst, asg, gamma)
            recovered = assignment_from_tree(inst, gamma, w)
            witness_ok = verify_ic_rooted_tree(gamma, w) and inst.satisfied_by(recovered)
            if tree is not None:
                witness_ok = witness_ok and inst.satisfied_by(assignment_from_tree(inst, gamma, tree))
        runs.append((inst, gamma, asg is not None, verdict, witness_ok, time.perf_counter() - t0))
    return runs, time.perf_counter() - start


def test_criterion_5_reduction_equivalence(record, reduction_runs):
    runs, elapsed = reduction_runs
    unknown = [r[0] for r in runs if r[3] is None]
    wrong = [r[0] for r in runs if r[3] is not None and r[2] != r[3]]
    sat = sum(r[2] for r in runs)
    ok = not unknown and not wrong and elapsed < 900
    record(5, ok, f"{len(runs)} instances ({sat} satisfiable), {len(wrong)} disagree, "
                  f"{len(unknown)} unknown ({elapsed:.1f}s)")
    assert not wrong and not unknown
    assert elapsed < 900


def test_criterion_6_witness_roundtrip(record, reduction_runs):
    runs, _ = reduction_runs
    sat = [r for r in runs if r[2]]
    failed = [r[0] for r in sat if not r[4]]
    record(6, not failed, f"{len(sat) - len(failed)}/{len(sat)} witness trees verified and decoded")
    assert not failed


def test_criterion_7_anchor_non_extensibility(record, reduction_runs):
    runs, _ = reduction_runs
    start = time.perf_counter()
    offending, literal_points = [], 0
    for inst, gamma, *_ in runs:
        literal_points += sum(1 for lab in gamma.labels.values() if lab.startswith("lit:"))
        ext = anchor_extensions(gamma)
        if ext:
            offending.append((inst, ext))
    elapsed = time.perf_counter() - start
    ok = not offending and elapsed < 60
    record(7, ok, f"{literal_points} literal points in {len(runs)} drawings, "
                  f"{len(offending)} extensible ({elapsed:.1f}s)")
    assert not offending
    assert elapsed < 60


# 8 -------------------------------------------------------------------------

@pytest.fixture(scope="module")
def gadget_runs():
    runs = []
    start = time.perf_counter()
    for alpha in (1, 2, 3):
        clauses = all_clauses(alpha)
        for beta in (1, 2):
            for combo in itertools.product(clauses, repeat=beta):
                inst = CnfInstance(alpha, combo)
                g = build_gadget(inst)
                try:
                    path = find_ic_path(g.drawing, g.t, g.t_prime)
                    found = path is not None
                except SearchBudgetExceeded:
                    path, found = None, None
                runs.append((inst, g, path, found))
    return runs, time.perf_counter() - start


def test_criterion_8_gadget_equivalence(record, gadget_runs):
    runs, elapsed = gadget_runs
    problems = []
    for inst, g, path, found in runs:
        sat = brute_force_sat(inst) is not None
        if found is None:
            problems.append((str(inst), "budget"))
        elif found != sat:
            problems.append((str(inst), f"path={found} sat={sat}"))
        elif found:
            if not terminals_visited(g, path):
                problems.append((str(inst), "terminal skipped"))
            elif not inst.satisfied_by(extract_assignment(g, path)):
                problems.append((str(inst), "extracted assignment fails"))
    ok = not problems and elapsed < 600
    record(8, ok, f"{len(runs)} gadget instances, {len(problems)} problems ({elapsed:.1f}s)")
    assert not problems, problems[:3]
    assert elapsed < 600


def test_criterion_8_ray_slopes(record, gadget_runs):
    runs, _ = gadget_runs
    off = {}
    for inst, g, *_ in runs:
        for i, slope in enumerate(g.ray_slopes(), start=1):
            if slope != inst.alpha ** (2 * i + 1):
                off.setdefault(inst.alpha, set()).add(str(slope))
    detail = "all ray slopes exact" if not off else "; ".join(
        f"alpha={a}: slope {sorted(s)} instead of {a**3}" for a, s in sorted(off.items())
    )
    record(8, not off, detail)
    assert not off, detail


# 9 -------------------------------------------------------------------------

def _bits(drawing):
    return max(max(c.numerator.bit_length(), c.denominator.bit_length()) for p in drawing.vertices for c in p)


def test_criterion_9_coordinate_sizes(record):
    rng = random.Random(SEED + 9)
    worst, table = 0, []
    for alpha in range(1, 7):
        row = []
        for beta in range(1, 7):
            full = [list(range(1, min(alpha, 3) + 1))] * beta
            rand = [[l.to_int() for l in rng.choice(all_clauses(alpha))] for _ in range(beta)]
            b = max(_bits(build_gamma(CnfInstance.from_ints(alpha, cl))[0]) for cl in (full, rand))
            row.append(b)
        worst = max(worst, max(row))
        table.append(f"a{alpha}:{row}")
    growth = {}
    for alpha, betas in ((1, range(1, 7)), (2, range(1, 7)), (3, range(1, 5))):
        growth[alpha] = [build_gadget(CnfInstance.from_ints(alpha, [[1]] * beta), desk_cap=False).bit_length()
                         for beta in betas]
    increasing = all(all(a < b for a, b in zip(v, v[1:])) for v in growth.values())
    print("gamma bits by alpha (beta=1..6):", " ".join(table))
    print("gadget bits by beta:", growth)
    ok = worst <= 64 and increasing
    record(9, ok, f"max gamma coordinate {worst} bits; gadget bits {growth}")
    assert worst <= 64
    assert increasing


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-rA"]))
