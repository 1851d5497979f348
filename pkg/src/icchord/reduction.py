"""Executable 3-SAT -> rooted increasing-chord spanning tree reduction.

The drawing is assembled in three layers:

* ``H_b``: the variable gadget.  Lines ``L_1 .. L_2a`` (a = number of
  variables) meet the vertical ``l_v`` at the points ``p``; each ``p`` gets a
  short *needle* perpendicular to its line ending on ``l'_v``.
* ``H``: clause gadgets.  Every clause gets a peak and, per literal, a point
  just below that literal's piece of the arrangement's upper envelope.
* ``Gamma``: the root ``r`` below everything, plus one anchor per literal
  point so that leftover literal points can be reached.

Every geometric claim the construction relies on is asserted after it is
built; a failed check raises :class:`ConstructionError`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cnf import Assignment, CnfInstance, Literal, brute_force_sat
from .geom import (
    EnvelopePiece,
    Line,
    RationalPoint,
    Segment,
    SlabPosition,
    line_intersection,
    perpendicular_foot_on_vertical,
    pt,
    segment_meets_open_slab,
    slab_of,
    slab_position,
    upper_envelope,
)
from .search import Drawing, RootedTree, verify_ic_rooted_tree

MAX_PERTURB_HALVINGS = 24
MAX_ROOT_DOUBLINGS = 32
MAX_EXHAUSTIVE_ALPHA = 10


class ConstructionError(AssertionError):
    """A geometric claim of the construction failed for the generated coordinates."""


def literal_label(lit: Literal) -> str:
    return f"{lit.tag}:{lit.var}"


def line_index(lit: Literal) -> int:
    """1-based index of the arrangement line carrying ``lit``."""
    return 2 * lit.var - 1 if lit.positive else 2 * lit.var


@dataclass
class ArrangementLine:
    index: int
    upper: RationalPoint
    lower_original: RationalPoint
    lower_extended: RationalPoint
    line: Line

    @property
    def segment(self) -> Segment:
        return Segment(self.upper, self.lower_extended)

    @property
    def slope(self) -> Fraction:
        return self.line.slope


@dataclass
class ReductionLayout:
    alpha: int
    lines: list[ArrangementLine]
    epsilon: Fraction
    lh: Line
    lv: Segment
    lv_prime_x: Fraction
    points: dict[str, RationalPoint] = field(default_factory=dict)
    lambdas: dict[str, EnvelopePiece] = field(default_factory=dict)
    literal_offset: Optional[Fraction] = None
    perturbation: Optional[Fraction] = None
    root_depth: Optional[Fraction] = None
    claims: dict[str, bool] = field(default_factory=dict)

    def line_of(self, lit: Literal) -> ArrangementLine:
        return self.lines[line_index(lit) - 1]


class _Builder:
    def __init__(self):
        self.vertices: list[RationalPoint] = []
        self.labels: dict[int, str] = {}
        self.index: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []

    def add(self, label: str, p: RationalPoint) -> int:
        if label in self.index:
            raise ConstructionError(f"label {label} used twice")
        self.index[label] = len(self.vertices)
        self.labels[len(self.vertices)] = label
        self.vertices.append(p)
        return self.index[label]

    def edge(self, a: str, b: str) -> None:
        self.edges.append((self.index[a], self.index[b]))

    def drawing(self) -> Drawing:
        try:
            return Drawing(tuple(self.vertices), tuple(self.edges), dict(self.labels))
        except ValueError as exc:
            raise ConstructionError(str(exc)) from exc


def build_arrangement(alpha: int) -> ReductionLayout:
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    two_a = 2 * alpha
    lines = []
    for i in range(1, two_a + 1):
        upper = pt(0, i)
        lower = pt(two_a - i + 1, 0)
        # keep the upper endpoint, stretch the length by 2a + 1
        ext = upper + (lower - upper).scale(two_a + 1)
        lines.append(ArrangementLine(i, upper, lower, ext, Line.through(upper, lower)))
    lv = Segment(pt(two_a + 1, two_a), pt(two_a + 1, -5 * alpha * alpha))
    eps = Fraction(1, alpha**3)
    return ReductionLayout(alpha, lines, eps, Line.horizontal(0), lv, two_a + 1 - eps)


def arrangement_pieces(layout: ReductionLayout) -> dict[int, EnvelopePiece]:
    """Envelope piece of every line, clipped to the part above ``l_h`` (0 <= x <= 2a)."""
    env = upper_envelope([l.line for l in layout.lines])
    pieces = env.clipped(0, 2 * layout.alpha)
    out = {p.line_id + 1: p for p in pieces}
    if sorted(out) != list(range(1, 2 * layout.alpha + 1)):
        raise ConstructionError("some arrangement line misses the upper envelope")
    return out


def _needle_labels(alpha: int):
    for j in range(1, alpha + 1):
        for tag in ("x", "nx"):
            yield j, tag


def build_hb(alpha: int) -> tuple[Drawing, ReductionLayout]:
    layout = build_arrangement(alpha)
    b = _Builder()
    _add_hb(b, layout)
    return b.drawing(), layout


def _add_hb(b: _Builder, layout: ReductionLayout) -> None:
    """Variable gadget; epsilon starts at 1/a**3 and is halved while needle slabs collide."""
    for _ in range(MAX_PERTURB_HALVINGS):
        trial = _Builder()
        _place_hb(trial, layout)
        try:
            _check_needles(layout)
            _check_variable_paths(trial.drawing(), layout.alpha)
        except ConstructionError:
            layout.epsilon /= 2
            layout.lv_prime_x = layout.lv.a.x - layout.epsilon
            continue
        break
    else:
        raise ConstructionError("no needle length keeps the needle slabs apart")
    _place_hb(b, layout)


def _place_hb(b: _Builder, layout: ReductionLayout) -> None:
    alpha = layout.alpha
    lv_line = Line.vertical(layout.lv.a.x)
    t = line_intersection(layout.lh, lv_line)
    s = layout.lv.b
    layout.points["t"] = t
    layout.points["s"] = s
    b.add("s", s)
    b.add("t", t)
    for j, tag in _needle_labels(alpha):
        al = layout.lines[(2 * j - 1 if tag == "x" else 2 * j) - 1]
        p = line_intersection(al.line, lv_line)
        if not (s.y < p.y < layout.lv.a.y):
            raise ConstructionError(f"L_{al.index} misses l_v")
        pp = perpendicular_foot_on_vertical(p, al.line, layout.lv_prime_x)
        layout.points[f"p:{tag}:{j}"] = p
        layout.points[f"pprime:{tag}:{j}"] = pp
        b.add(f"p:{tag}:{j}", p)
        b.add(f"pprime:{tag}:{j}", pp)
        b.edge(f"p:{tag}:{j}", f"pprime:{tag}:{j}")
    for k in range(2, alpha + 1):
        for tag in ("x", "nx"):
            for prev in ("x", "nx"):
                b.edge(f"p:{tag}:{k}", f"pprime:{prev}:{k - 1}")
    for tag in ("x", "nx"):
        b.edge("s", f"pprime:{tag}:{alpha}")
        b.edge("t", f"p:{tag}:1")


def _check_needles(layout: ReductionLayout) -> None:
    needles = [
        Segment(layout.points[f"p:{tag}:{j}"], layout.points[f"pprime:{tag}:{j}"])
        for j, tag in _needle_labels(layout.alpha)
    ]
    for i, n1 in enumerate(needles):
        slab = slab_of(n1)
        for k, n2 in enumerate(needles):
            if i == k:
                continue
            if any(slab_position(slab, q) is not SlabPosition.OUTSIDE for q in (n2.a, n2.b)):
                raise ConstructionError(f"needle slab {i} touches needle {k}")
            if segment_meets_open_slab(slab, n2):
                raise ConstructionError(f"needle slab {i} meets needle {k}")
    slopes = [l.slope for l in layout.lines]
    lo, hi = Fraction(-2 * layout.alpha), Fraction(-1, 2 * layout.alpha)
    if not all(lo <= m <= hi for m in slopes):
        raise ConstructionError("arrangement slope outside [-2a, -1/(2a)]")


def _check_variable_paths(hb: Drawing, alpha: int) -> None:
    """Every one-needle-per-variable s-t path must be increasing-chord."""
    if alpha > MAX_EXHAUSTIVE_ALPHA:
        return
    for bits in itertools.product(("x", "nx"), repeat=alpha):
        through = dict(zip(range(1, alpha + 1), bits))
        if not hb.is_ic(canonical_variable_path(hb, alpha, through)):
            raise ConstructionError(f"variable path {through} is not increasing-chord")


def _literal_occurrences(instance: CnfInstance):
    seen: dict[Literal, int] = {}
    for i, clause in enumerate(instance.clauses, start=1):
        for lit in clause:
            k = seen.get(lit, 0)
            seen[lit] = k + 1
            yield i, lit, k


def _in_cell(layout: ReductionLayout, lit: Literal, q: RationalPoint) -> bool:
    own = layout.line_of(lit).line
    if not own.y_at(q.x) > q.y > 0:
        return False
    piece = layout.lambdas[literal_label(lit)]
    if not piece.left.x < q.x < piece.right.x:
        return False
    return all(l.line.y_at(q.x) < q.y for l in layout.lines if l.line != own)


def _extends_from_t(layout: ReductionLayout, lit: Literal, q: RationalPoint, clause: int) -> bool:
    """Edges t->q and q->peak must leave behind every gadget vertex a path making ``lit`` true can use.

    Such a path avoids the needle of ``lit`` itself.
    """
    t = layout.points["t"]
    peak = pt(0, 2 * layout.alpha + clause)
    own = (f"p:{lit.tag}:{lit.var}", f"pprime:{lit.tag}:{lit.var}")
    below = [
        p for name, p in layout.points.items()
        if name.startswith(("p:", "pprime:", "s")) and name not in own
    ]
    if any((v - t).dot(q - t) > 0 for v in below):
        return False
    return all((v - q).dot(peak - q) <= 0 for v in below + [t])


def build_h(instance: CnfInstance) -> tuple[Drawing, ReductionLayout]:
    b = _Builder()
    layout = build_arrangement(instance.alpha)
    _add_hb(b, layout)
    _add_clauses(b, layout, instance)
    return b.drawing(), layout


def _add_clauses(b: _Builder, layout: ReductionLayout, instance: CnfInstance) -> None:
    alpha = layout.alpha
    pieces = arrangement_pieces(layout)
    for j, tag in _needle_labels(alpha):
        lit = Literal(j, tag == "x")
        layout.lambdas[literal_label(lit)] = pieces[line_index(lit)]
    delta = Fraction(1, alpha**4)
    eta = Fraction(1, alpha**6)
    occurrences = list(_literal_occurrences(instance))
    for _ in range(MAX_PERTURB_HALVINGS):
        placed = {}
        for i, lit, k in occurrences:
            mid = layout.lambdas[literal_label(lit)].midpoint()
            placed[(i, lit)] = RationalPoint(mid.x, mid.y - delta - k * eta)
        if all(_in_cell(layout, lit, q) and _extends_from_t(layout, lit, q, i) for (i, lit), q in placed.items()):
            break
        delta /= 2
        eta /= 2
    else:
        raise ConstructionError("literal points cannot be placed inside their cells")
    layout.literal_offset = delta
    layout.perturbation = eta
    for i in range(1, instance.beta + 1):
        peak = pt(0, 2 * alpha + i)
        layout.points[f"peak:{i}"] = peak
        b.add(f"peak:{i}", peak)
    for (i, lit), q in placed.items():
        name = f"lit:{lit.tag}:{lit.var}:c:{i}"
        layout.points[name] = q
        b.add(name, q)
        b.edge("t", name)
        b.edge(name, f"peak:{i}")


def _root_checks(layout: ReductionLayout, h: Drawing, r: RationalPoint) -> dict[str, bool]:
    s = layout.points["s"]
    t = layout.points["t"]
    rs = Segment(r, s)
    d = s - r
    checks = {}
    checks["rs_slab_meets_H_only_at_s"] = all(
        (v - s).dot(d) > 0 for k, v in enumerate(h.vertices) if h.labels.get(k) != "s"
    )
    checks["H_slabs_avoid_rs"] = not any(
        segment_meets_open_slab(slab_of(Segment(h.vertices[u], h.vertices[v])), rs) for u, v in h.edges
    )
    ext_ok = True
    for name, q in layout.points.items():
        if not name.startswith("lit:"):
            continue
        peak = layout.points[f"peak:{name.rsplit(':', 1)[1]}"]
        if (r - t).dot(q - t) > 0 or (r - q).dot(peak - q) > 0:
            ext_ok = False
            break
    checks["root_allows_clause_extensions"] = ext_ok
    return checks


def _arrangement_claims(layout: ReductionLayout, r: RationalPoint) -> dict[str, bool]:
    """Claims about the undrawn lines L_j, recorded but not enforced."""
    rs = Segment(r, layout.points["s"])
    rs_slab = slab_of(rs)
    return {
        "rs_slab_avoids_L": not any(segment_meets_open_slab(rs_slab, l.segment) for l in layout.lines),
        "L_slabs_avoid_rs": not any(segment_meets_open_slab(slab_of(l.segment), rs) for l in layout.lines),
    }


def build_gamma(instance: CnfInstance, root_depth=None) -> tuple[Drawing, ReductionLayout]:
    """Full reduction drawing; ``root_depth`` overrides the automatic choice of ``r``.

    By default ``r = (0, -a**5)``; when that is too shallow for the checks
    below (small ``a``), the depth is doubled until they hold.
    """
    alpha = instance.alpha
    b = _Builder()
    layout = build_arrangement(alpha)
    _add_hb(b, layout)
    _add_clauses(b, layout, instance)
    h = b.drawing()

    depth = Fraction(alpha**5) if root_depth is None else Fraction(root_depth)
    for _ in range(MAX_ROOT_DOUBLINGS):
        r = RationalPoint(Fraction(0), -depth)
        checks = _root_checks(layout, h, r)
        if all(checks.values()) or root_depth is not None:
            break
        depth *= 2
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise ConstructionError(f"root placement violates: {', '.join(failed)}")
    layout.root_depth = depth
    layout.points["root"] = r
    layout.claims.update(checks)
    layout.claims.update(_arrangement_claims(layout, r))
    b.add("root", r)
    b.edge("root", "s")

    lit_names = [name for name in layout.points if name.startswith("lit:")]
    eta = layout.perturbation
    for k, name in enumerate(lit_names):
        q = layout.points[name]
        a = RationalPoint(k * eta, q.y)
        if not a.x < q.x:
            raise ConstructionError(f"anchor of {name} overtakes its literal point")
        aname = "anchor:" + name[len("lit:"):]
        layout.points[aname] = a
        b.add(aname, a)
        b.edge("root", aname)
        b.edge(aname, name)
    gamma = b.drawing()
    _check_anchors(gamma)
    return gamma, layout


def anchor_extensions(gamma: Drawing) -> list[tuple[int, ...]]:
    """Increasing-chord paths (r, a, q, w) that extend an anchor path; should be empty."""
    r = gamma.vertex("root")
    out = []
    for v, name in gamma.labels.items():
        if not name.startswith("lit:"):
            continue
        a = gamma.vertex("anchor:" + name[len("lit:"):])
        if not gamma.is_ic((r, a, v)):
            out.append((r, a, v))
            continue
        for w in gamma.adjacency[v]:
            if w != a and gamma.is_ic((r, a, v, w)):
                out.append((r, a, v, w))
    return out


def _check_anchors(gamma: Drawing) -> None:
    bad = anchor_extensions(gamma)
    if bad:
        raise ConstructionError(f"anchor path not isolated: {bad[0]}")


def reduce(instance: CnfInstance, **kw) -> tuple[Drawing, ReductionLayout]:
    return build_gamma(instance, **kw)


def variable_choices(d: Drawing, path: Sequence[int], alpha: int) -> dict[int, list[str]]:
    labels = [d.labels.get(v, "") for v in path]
    out: dict[int, list[str]] = {j: [] for j in range(1, alpha + 1)}
    for lab in labels:
        parts = lab.split(":")
        if len(parts) == 3 and parts[0] == "p":
            out[int(parts[2])].append(parts[1])
    return out


def check_variable_path(d: Drawing, path: Sequence[int], alpha: int) -> bool:
    """Does the s-t path visit exactly one of ``p_x_j``, ``p_nx_j`` for every ``j``?"""
    if d.labels.get(path[0]) != "s" or d.labels.get(path[-1]) != "t":
        raise ValueError("variable paths run from s to t")
    return all(len(v) == 1 for v in variable_choices(d, path, alpha).values())


def canonical_variable_path(d: Drawing, alpha: int, through: dict[int, str]) -> list[int]:
    """The s-t path through needle ``through[j]`` ('x' or 'nx') of every variable."""
    labels = ["s"]
    for j in range(alpha, 0, -1):
        labels += [f"pprime:{through[j]}:{j}", f"p:{through[j]}:{j}"]
    labels.append("t")
    return [d.vertex(lab) for lab in labels]


def witness_tree_from_assignment(instance: CnfInstance, asg, gamma: Optional[Drawing] = None) -> RootedTree:
    asg = Assignment(asg)
    if len(asg) != instance.alpha:
        raise ValueError("assignment length differs from the variable count")
    if not instance.satisfied_by(asg):
        raise ValueError("assignment does not satisfy the instance")
    if gamma is None:
        gamma, _ = build_gamma(instance)
    alpha = instance.alpha
    v = gamma.vertex
    parent: dict[int, int] = {}

    def chain(labels):
        for a, b in zip(labels, labels[1:]):
            parent[v(b)] = v(a)

    # a true variable routes the main path through its negated needle
    main = {j: ("nx" if asg.value(j) else "x") for j in range(1, alpha + 1)}
    other = {j: ("x" if main[j] == "nx" else "nx") for j in main}
    p = canonical_variable_path(gamma, alpha, main)
    q = canonical_variable_path(gamma, alpha, other)[:-1]
    chain(["root", "s"])
    chain([gamma.labels[u] for u in p])
    chain([gamma.labels[u] for u in q])
    reached = set()
    for i, clause in enumerate(instance.clauses, start=1):
        lit = next(l for l in clause if asg.value(l.var) == l.positive)
        name = f"lit:{lit.tag}:{lit.var}:c:{i}"
        chain(["t", name, f"peak:{i}"])
        reached.add(name)
    for u, name in gamma.labels.items():
        if name.startswith("anchor:"):
            lit_name = "lit:" + name[len("anchor:"):]
            parent[u] = v("root")
            if lit_name not in reached:
                parent[v(lit_name)] = u
    tree = RootedTree(v("root"), parent)
    if not verify_ic_rooted_tree(gamma, tree):
        raise ConstructionError("witness tree fails verification")
    return tree


def assignment_from_tree(instance: CnfInstance, gamma: Drawing, tree: RootedTree) -> Assignment:
    path = tree.path_to(gamma.vertex("t"))
    if gamma.labels.get(path[0]) != "root" or gamma.labels.get(path[1]) != "s":
        raise ConstructionError("tree path to t does not start with r, s")
    sub = path[1:]
    if not check_variable_path(gamma, sub, instance.alpha):
        raise ConstructionError("tree path to t does not pick one needle per variable")
    choices = variable_choices(gamma, sub, instance.alpha)
    asg = Assignment(choices[j][0] == "nx" for j in range(1, instance.alpha + 1))
    if not instance.satisfied_by(asg):
        raise ConstructionError("assignment read from the tree does not satisfy the instance")
    return asg


def satisfiable(instance: CnfInstance) -> bool:
    return brute_force_sat(instance) is not None
