"""Staged drawing for the increasing-chord *path* reduction attempt.

Stage ``i`` encodes clause ``c_{i+1}``: for each satisfying assignment of the
clause's variables there is a ladder of q-points, one rung per variable, laid
on the upper envelope of an arrangement ``A^i``.  Stage 0 uses the variable
gadget arrangement and climbs up-left.  Stage ``i >= 1`` is built around an
upward ray ``r^i`` of slope magnitude ``alpha**(2i+1)``; odd stages climb
up-right, even stages mirror them and climb up-left.

Each q-point of stage ``i`` is replaced by a short s-segment perpendicular
to the line of ``A^{i+1}`` through it.  Crossing that segment puts every
later vertex on the far side of the line, which rules out exactly the
q-point of the opposite literal in stage ``i+1``; this carries the truth
value from stage to stage.

Every "sufficiently large/small" choice is an exact doubling or halving
search followed by post-checks; failures raise :class:`ConstructionError`.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cnf import Assignment, CnfInstance, Literal
from .geom import Line, RationalPoint, Segment, segment_meets_open_slab, slab_of, upper_envelope
from .reduction import ConstructionError, _Builder, arrangement_pieces, build_arrangement
from .search import Drawing

log = logging.getLogger(__name__)

DESK_MAX_ALPHA = 3
DESK_MAX_BETA = 2
MAX_DOUBLINGS = 64
MAX_SEGMENT_HALVINGS = 10
MAX_PERTURB_HALVINGS = 256
MAX_SLOPE_ESCALATIONS = 8


def _lit_label(tag: str, var: int) -> str:
    return f"{tag}:{var}"


def _negate(label: str) -> str:
    tag, var = label.split(":")
    return _lit_label("nx" if tag == "x" else "x", int(var))


def _upper_normal(line: Line) -> RationalPoint:
    """Integer normal of ``line`` pointing to larger y."""
    if line.b == 0:
        raise ConstructionError("vertical arrangement line")
    sign = 1 if line.b > 0 else -1
    return RationalPoint(Fraction(sign * line.a), Fraction(sign * line.b))


def _side_value(line: Line, p: RationalPoint) -> Fraction:
    """Signed offset of ``p`` above ``line`` in units of its integer normal."""
    n = _upper_normal(line)
    return n.x * p.x + n.y * p.y - (line.c if line.b > 0 else -line.c)


def _midpoint(a: RationalPoint, b: RationalPoint) -> RationalPoint:
    return RationalPoint((a.x + b.x) / 2, (a.y + b.y) / 2)


def _point_at(p: RationalPoint, q: RationalPoint, r: RationalPoint, target: Fraction) -> RationalPoint:
    """Point X on line pq with X . r == target."""
    d = q - p
    den = d.dot(r)
    if den == 0:
        raise ConstructionError("line runs perpendicular to the ray")
    return p + d.scale((target - p.dot(r)) / den)


def clause_assignments(clause: Sequence[Literal]) -> list[dict[int, bool]]:
    """Satisfying assignments of the clause's variables, all-true first."""
    if not clause:
        raise ValueError("empty clause")
    out = []
    for values in itertools.product((True, False), repeat=len(clause)):
        asg = {lit.var: v for lit, v in zip(clause, values)}
        if any(asg[lit.var] == lit.positive for lit in clause):
            out.append(asg)
    return out


@dataclass
class GadgetStage:
    index: int
    clause: tuple[Literal, ...]
    order: list[str]                        # literal labels in climbing order
    lines: dict[str, Line]                  # label -> line of A^i carrying its interval
    intervals: dict[str, tuple[RationalPoint, RationalPoint]]
    nominal: dict[str, RationalPoint]       # interval midpoints
    start: RationalPoint                    # t_{c_i}
    end: RationalPoint                      # t_{c_{i+1}}
    assignments: list[dict[int, bool]]
    ray_slope: Optional[Fraction] = None
    ray_start: Optional[RationalPoint] = None
    a: Optional[RationalPoint] = None
    b: Optional[RationalPoint] = None
    delta: Optional[Fraction] = None        # extreme x of all earlier stages
    copies: dict[tuple[int, str], RationalPoint] = field(default_factory=dict)
    s_ends: dict[tuple[int, str], RationalPoint] = field(default_factory=dict)
    s_length: Optional[Fraction] = None
    next_lines: dict[str, Line] = field(default_factory=dict)  # label -> line of A^{i+1} through it
    perturbation: Optional[Fraction] = None

    @property
    def levels(self) -> list[tuple[str, str]]:
        return [tuple(self.order[k:k + 2]) for k in range(0, len(self.order), 2)]

    def allowed(self, k: int, label: str) -> bool:
        tag, var = label.split(":")
        value = self.assignments[k].get(int(var))
        return value is None or value == (tag == "x")


@dataclass
class Gadget:
    instance: CnfInstance
    stages: list[GadgetStage]
    drawing: Drawing
    slope_escalated: bool = False

    @property
    def t(self) -> int:
        return self.drawing.vertex("terminal:0")

    @property
    def t_prime(self) -> int:
        return self.drawing.vertex(f"terminal:{len(self.stages)}")

    def ray_slopes(self) -> list[Fraction]:
        return [s.ray_slope for s in self.stages[1:]]

    def bit_length(self) -> int:
        return max(max(c.numerator.bit_length(), c.denominator.bit_length())
                   for p in self.drawing.vertices for c in p)

    def height(self) -> Fraction:
        ys = [p.y for p in self.drawing.vertices]
        return max(ys) - min(ys)


# stage 0 ---------------------------------------------------------------

def _shrink(a: RationalPoint, b: RationalPoint, at_end: bool) -> tuple[RationalPoint, RationalPoint]:
    cut = (b - a).scale(Fraction(1, 4))
    return (a, b - cut) if at_end else (a + cut, b)


def build_stage0(instance: CnfInstance) -> GadgetStage:
    if not instance.clauses:
        raise ValueError("the path gadget needs at least one clause")
    alpha = instance.alpha
    pieces = arrangement_pieces(build_arrangement(alpha))
    order = []
    intervals = {}
    for j in range(1, alpha + 1):
        for tag, idx in (("x", 2 * j - 1), ("nx", 2 * j)):
            piece = pieces[idx]
            # climbing order is right to left: traverse from the right endpoint
            intervals[_lit_label(tag, j)] = (piece.right, piece.left)
            order.append(_lit_label(tag, j))
    start = intervals[order[0]][0]
    end = intervals[order[-1]][1]
    intervals[order[0]] = _shrink(*intervals[order[0]], at_end=False)
    intervals[order[-1]] = _shrink(*intervals[order[-1]], at_end=True)
    layout_lines = {_lit_label(tag, j): Line.through(*intervals[_lit_label(tag, j)])
                    for j in range(1, alpha + 1) for tag in ("x", "nx")}
    return GadgetStage(
        index=0,
        clause=instance.clauses[0],
        order=order,
        lines=layout_lines,
        intervals=intervals,
        nominal={lab: _midpoint(*iv) for lab, iv in intervals.items()},
        start=start,
        end=end,
        assignments=clause_assignments(instance.clauses[0]),
    )


# later stages ----------------------------------------------------------

def _ray_frame(i: int, slope_mag: Fraction) -> tuple[RationalPoint, RationalPoint]:
    """Ray direction and the normal pointing to its upper side."""
    if i % 2:
        return RationalPoint(Fraction(1), slope_mag), RationalPoint(-slope_mag, Fraction(1))
    return RationalPoint(Fraction(-1), slope_mag), RationalPoint(slope_mag, Fraction(1))


def _beyond_slab(p: RationalPoint, r: RationalPoint, seg: tuple[RationalPoint, RationalPoint]) -> bool:
    u, w = seg
    d = w - u
    rd = r.dot(d)
    if rd == 0:
        raise ConstructionError("ray runs along a slab")
    if rd > 0:
        return (p - u).dot(d) >= 0 and (p - w).dot(d) >= 0
    return (p - u).dot(d) <= 0 and (p - w).dot(d) <= 0


def _past_delta(i: int, x: Fraction, delta: Fraction) -> bool:
    return x > delta if i % 2 else x < delta


def _sequential_lines(points: list[RationalPoint], o: RationalPoint, r: RationalPoint, base: Fraction):
    """Lines through ``points`` (last one is ``o``) whose upper envelope visits them in order.

    Breakpoint k sits at ray parameter ``base + k + 1``; returns lines, breakpoints
    and the two clip points.
    """
    n = len(points)
    rr = r.dot(r)
    u_of = lambda t: o.dot(r) + t * rr  # noqa: E731
    lines: list[Optional[Line]] = [None] * n
    through: list[Optional[tuple[RationalPoint, RationalPoint]]] = [None] * n
    through[n - 1] = (o, o + r)
    lines[n - 1] = Line.through(o, o + r)
    breaks: list[Optional[RationalPoint]] = [None] * (n + 1)
    for k in range(n - 2, -1, -1):
        bp = _point_at(*through[k + 1], r, u_of(base + k + 2))
        breaks[k + 1] = bp
        through[k] = (points[k], bp)
        lines[k] = Line.through(points[k], bp)
    breaks[0] = _point_at(*through[0], r, u_of(base + 1))
    breaks[n] = _point_at(*through[n - 1], r, u_of(base + n + 1))
    return lines, breaks


def _envelope_ok(i: int, lines: list[Line]) -> bool:
    try:
        env = upper_envelope(lines)
    except ValueError:
        return False
    expected = list(range(len(lines)))
    got = env.order()
    return got == (expected if i % 2 else expected[::-1])


def _directed_edges(stage: GadgetStage, with_s: bool = True) -> list[tuple[RationalPoint, RationalPoint]]:
    """Every ladder edge of a built stage, oriented in climbing direction."""
    out = []
    levels = stage.levels
    for k in range(len(stage.assignments)):
        def entry(lab):
            return stage.copies[(k, lab)]

        def exit_(lab):
            return stage.s_ends.get((k, lab), stage.copies[(k, lab)])

        firsts = [lab for lab in levels[0] if stage.allowed(k, lab)]
        out += [(stage.start, entry(lab)) for lab in firsts]
        for lo, hi in zip(levels, levels[1:]):
            for a in lo:
                for b in hi:
                    if stage.allowed(k, a) and stage.allowed(k, b):
                        out.append((exit_(a), entry(b)))
        out += [(exit_(lab), stage.end) for lab in levels[-1] if stage.allowed(k, lab)]
        if with_s:
            out += [(stage.copies[key], stage.s_ends[key]) for key in stage.s_ends if key[0] == k]
    return out


def build_stage(i: int, instance: CnfInstance, prev: GadgetStage, earlier_edges, earlier_points,
                slope_mag: Optional[Fraction] = None) -> GadgetStage:
    """Arrangement ``A^i`` from the nominal q-points of ``prev``, and stage ``i`` on its envelope."""
    if i < 1:
        raise ValueError("stage index must be at least 1")
    alpha = instance.alpha
    slope_mag = Fraction(alpha ** (2 * i + 1)) if slope_mag is None else Fraction(slope_mag)
    r, nrm = _ray_frame(i, slope_mag)
    # lines through earlier q-points, ordered by offset from the ray
    o = prev.nominal[prev.order[0]]
    pts = sorted(prev.order, key=lambda lab: -(prev.nominal[lab] - o).dot(nrm))
    if pts[-1] != prev.order[0] or any((prev.nominal[l] - o).dot(nrm) <= 0 for l in pts[:-1]):
        raise ConstructionError(f"stage {i}: ray start is not extreme among the q-points")
    xs = [p.x for p in earlier_points]
    delta = max(xs) if i % 2 else min(xs)

    t_a = Fraction(1)
    for _ in range(MAX_DOUBLINGS):
        a = o + r.scale(t_a)
        if all(_beyond_slab(a, r, e) for e in earlier_edges):
            break
        t_a *= 2
    else:
        raise ConstructionError(f"stage {i}: no point a on the ray clears the earlier slabs")

    t_b = 2 * t_a
    for _ in range(MAX_DOUBLINGS):
        b = o + r.scale(t_b)
        if _past_delta(i, b.x, delta) and b != prev.end:
            slab = slab_of(Segment(prev.end, b))
            if not any(segment_meets_open_slab(slab, Segment(*e)) for e in earlier_edges):
                lines, breaks = _sequential_lines([prev.nominal[l] for l in pts], o, r, t_b)
                if _envelope_ok(i, lines) and all(_past_delta(i, p.x, delta) for p in breaks):
                    break
        t_b *= 2
    else:
        raise ConstructionError(f"stage {i}: doubling search for b exhausted")

    order = [_negate(lab) for lab in pts]
    lines_by = {lab: lines[k] for k, lab in enumerate(order)}
    intervals = {lab: (breaks[k], breaks[k + 1]) for k, lab in enumerate(order)}
    intervals[order[-1]] = _shrink(*intervals[order[-1]], at_end=True)
    nominal = {lab: _midpoint(*iv) for lab, iv in intervals.items()}
    # the clip point lies on the ray line; lift the terminal off it by the
    # smallest clearance any q-point has from a foreign line
    lift = min(
        _side_value(line, v) / _upper_normal(line).dot(_upper_normal(line))
        for lab, v in nominal.items() for other, line in lines_by.items() if other != lab
    )
    end = breaks[-1] + _upper_normal(lines_by[order[-1]]).scale(lift)
    return GadgetStage(
        index=i,
        clause=instance.clauses[i],
        order=order,
        lines=lines_by,
        intervals=intervals,
        nominal=nominal,
        start=prev.end,
        end=end,
        assignments=clause_assignments(instance.clauses[i]),
        ray_slope=slope_mag if i % 2 else -slope_mag,
        ray_start=o,
        a=a,
        b=b,
        delta=delta,
    )


def _place_copies(stage: GadgetStage, prev: Optional[GadgetStage]) -> None:
    """Separate the per-assignment copies of each q-point.

    Copies slide along the line of the next arrangement through the nominal
    point (so they share one next-stage line), or along their own line in the
    last stage.
    """
    guides = stage.next_lines or stage.lines
    n_copies = len(stage.assignments)
    tau = Fraction(1, 4)
    for _ in range(MAX_PERTURB_HALVINGS):
        copies = {}
        for lab in stage.order:
            line = guides[lab]
            d = RationalPoint(Fraction(line.b), Fraction(-line.a))
            if d.y < 0 or (d.y == 0 and d.x < 0):
                d = RationalPoint(-d.x, -d.y)
            d = d.scale(Fraction(1, max(abs(line.a), abs(line.b))))
            for k in range(n_copies):
                copies[(k, lab)] = stage.nominal[lab] + d.scale(tau * k)
        if _copies_ok(stage, copies, prev):
            stage.copies = copies
            stage.perturbation = tau
            return
        tau /= 2
    raise ConstructionError(f"stage {stage.index}: q-point copies cannot be separated")


def _copies_ok(stage: GadgetStage, copies, prev: Optional[GadgetStage]) -> bool:
    for (k, lab), c in copies.items():
        a, b = stage.intervals[lab]
        # stay strictly inside the interval's extent along the chain
        d = b - a
        if not 0 < (c - a).dot(d) < d.dot(d):
            return False
        for other, line in stage.lines.items():
            if other != lab and _side_value(line, c) <= 0:
                return False
        if prev is not None and not _excluded_pattern_ok(prev, lab, c):
            return False
    return len(set(copies.values())) == len(copies)


def _excluded_pattern_ok(prev: GadgetStage, lab: str, v: RationalPoint) -> bool:
    """``v`` (a point of the next stage sitting on ``lab``'s line) versus the s-segments of ``prev``.

    It must lie strictly behind the s-segment whose line carries it and strictly
    ahead of all others.
    """
    for plab, line in prev.next_lines.items():
        n = _upper_normal(line)
        need = prev.s_length * n.dot(n)
        val = _side_value(line, v)
        if _negate(plab) == lab:
            if not val < need:
                return False
        elif not val > need:
            return False
    return True


def attach_s_segments(stage: GadgetStage, nxt: GadgetStage) -> GadgetStage:
    """Pick the s-segment length for ``stage`` so its slabs still act like the lines of ``nxt``."""
    stage.next_lines = {_negate(lab): line for lab, line in nxt.lines.items()}
    for lab, line in stage.next_lines.items():
        if not line.contains(stage.nominal[lab]):
            raise ConstructionError(f"stage {stage.index}: next line misses q-point {lab}")
    margins = []
    for plab, line in stage.next_lines.items():
        n = _upper_normal(line)
        for lab, v in list(nxt.nominal.items()) + [("end", nxt.end)]:
            if _negate(plab) != lab:
                margins.append(_side_value(line, v) / n.dot(n))
    if min(margins) <= 0:
        raise ConstructionError(f"stage {stage.index + 1}: a q-point lies below a foreign line")
    length = min(margins)
    for _ in range(MAX_SEGMENT_HALVINGS):
        length /= 2
        stage.s_length = length
        if all(_excluded_pattern_ok(stage, lab, v) for lab, v in nxt.nominal.items()):
            return stage
    raise ConstructionError(f"stage {stage.index}: no s-segment length in the retry schedule works")


def _finish_s_ends(stage: GadgetStage) -> None:
    stage.s_ends = {}
    for (k, lab), c in stage.copies.items():
        if stage.allowed(k, lab):
            stage.s_ends[(k, lab)] = c + _upper_normal(stage.next_lines[lab]).scale(stage.s_length)


def _stage_points(stage: GadgetStage) -> list[RationalPoint]:
    return [stage.end, *stage.copies.values(), *stage.s_ends.values()]


def _ahead_of(points, edges) -> bool:
    return all((v - w).dot(w - u) > 0 for u, w in edges for v in points)


def _isolated_slabs(stage_edges, earlier_edges) -> bool:
    for e in stage_edges:
        slab = slab_of(Segment(*e))
        for f in earlier_edges:
            if segment_meets_open_slab(slab, Segment(*f)):
                return False
    return True


def _check_cap(instance: CnfInstance, desk_cap: bool) -> None:
    if desk_cap and (instance.alpha > DESK_MAX_ALPHA or instance.beta > DESK_MAX_BETA):
        raise ValueError(
            f"instance exceeds the desk-scale cap (alpha <= {DESK_MAX_ALPHA}, beta <= {DESK_MAX_BETA}); "
            "pass desk_cap=False to build it anyway"
        )


def build_gadget(instance: CnfInstance, desk_cap: bool = True) -> Gadget:
    _check_cap(instance, desk_cap)
    stages = [build_stage0(instance)]
    escalated = False
    for i in range(1, instance.beta):
        prev = stages[-1]
        earlier_edges = [e for s in stages[:-1] for e in _directed_edges(s)]
        earlier_points = [p for s in stages[:-1] for p in _stage_points(s)] + [prev.start]
        slope = Fraction(instance.alpha ** (2 * i + 1))
        for _ in range(MAX_SLOPE_ESCALATIONS):
            stage = _try_stage(i, instance, stages, slope, earlier_edges, earlier_points)
            if stage is not None:
                break
            slope *= 2
            escalated = True
        else:
            raise ConstructionError(f"stage {i}: no ray slope keeps the stage ahead of earlier edges")
        stages.append(stage)
    last = stages[-1]
    _place_copies(last, stages[-2] if len(stages) > 1 else None)
    drawing = _assemble(stages)
    _post_checks(stages)
    if escalated:
        log.warning("ray slope raised above alpha**(2i+1) for alpha=%d", instance.alpha)
    return Gadget(instance, stages, drawing, escalated)


def _try_stage(i, instance, stages, slope, earlier_edges, earlier_points) -> Optional[GadgetStage]:
    """Build stage i, finish stage i-1, and report None if the ray is too shallow."""
    prev = stages[-1]
    prev_prev = stages[-2] if len(stages) > 1 else None
    # the ray must clear the slabs of everything built so far, including
    # the previous stage's ladder drawn at its nominal points
    prev.copies = {(k, lab): prev.nominal[lab] for k in range(len(prev.assignments)) for lab in prev.order}
    prev.s_ends = {}
    rough = earlier_edges + _directed_edges(prev)
    try:
        stage = build_stage(i, instance, prev, rough, earlier_points + list(prev.nominal.values()) + [prev.end], slope)
        attach_s_segments(prev, stage)
        _place_copies(prev, prev_prev)
    except ConstructionError as exc:
        log.info("stage %d with ray slope %s: %s", i, slope, exc)
        return None
    _finish_s_ends(prev)
    # s-segments are left out: they are meant to cut off one point per line
    prior = [e for s in stages for e in _directed_edges(s, with_s=False)]
    front = list(stage.nominal.values()) + [stage.end]
    if not _ahead_of(front, prior):
        return None
    return stage


def _assemble(stages: list[GadgetStage]) -> Drawing:
    b = _Builder()
    b.add("terminal:0", stages[0].start)
    for st in stages:
        i = st.index
        for lab in st.order:
            tag, var = lab.split(":")
            for k in range(len(st.assignments)):
                b.add(f"qpt:{i}:{k + 1}:{tag}:{var}", st.copies[(k, lab)])
                if (k, lab) in st.s_ends:
                    b.add(f"sseg:{i}:{tag}:{var}:{k + 1}", st.s_ends[(k, lab)])
        b.add(f"terminal:{i + 1}", st.end)

        def entry(k, lab):
            tag, var = lab.split(":")
            return f"qpt:{i}:{k + 1}:{tag}:{var}"

        def exit_(k, lab):
            tag, var = lab.split(":")
            return f"sseg:{i}:{tag}:{var}:{k + 1}" if (k, lab) in st.s_ends else entry(k, lab)

        levels = st.levels
        for k in range(len(st.assignments)):
            live = [[lab for lab in lv if st.allowed(k, lab)] for lv in levels]
            for lab in live[0]:
                b.edge(f"terminal:{i}", entry(k, lab))
            for lo, hi in zip(live, live[1:]):
                for a in lo:
                    for c in hi:
                        b.edge(exit_(k, a), entry(k, c))
            for lab in live[-1]:
                b.edge(exit_(k, lab), f"terminal:{i + 1}")
            for lv in live:
                for lab in lv:
                    if (k, lab) in st.s_ends:
                        b.edge(entry(k, lab), exit_(k, lab))
    return b.drawing()


def _post_checks(stages: list[GadgetStage]) -> None:
    for i, st in enumerate(stages[1:], start=1):
        earlier = [p for s in stages[:i] for p in _stage_points(s)] + [stages[0].start]
        delta = max(p.x for p in earlier) if i % 2 else min(p.x for p in earlier)
        if st.delta != delta and not _past_delta(i, st.b.x, delta):
            raise ConstructionError(f"stage {i}: b does not clear the earlier stages")
        mine = [p for p in _stage_points(st)]
        if not all(_past_delta(i, p.x, delta) for p in mine):
            raise ConstructionError(f"stage {i}: a vertex falls back over earlier stages")
        prior_edges = [e for s in stages[:i] for e in _directed_edges(s)]
        if not _isolated_slabs(_directed_edges(st), prior_edges):
            raise ConstructionError(f"stage {i}: a slab meets an earlier edge")
        # s-segments of every earlier stage versus all vertices of this stage
        for s in stages[:i]:
            for v in mine:
                for plab, line in s.next_lines.items():
                    n = _upper_normal(line)
                    val = _side_value(line, v)
                    on_line = s.index == i - 1 and any(
                        v in (st.copies.get((k, _negate(plab))), st.s_ends.get((k, _negate(plab))))
                        for k in range(len(st.assignments))
                    )
                    if not on_line and not val > s.s_length * n.dot(n):
                        raise ConstructionError(f"stage {i}: vertex escapes an s-segment of stage {s.index}")


# paths -----------------------------------------------------------------

def gadget_path_from_assignment(g: Gadget, asg: Sequence[bool]) -> Optional[list[int]]:
    """The ladder path t -> t' picked by ``asg``, or None if some clause is unsatisfied."""
    d = g.drawing
    path = [d.vertex("terminal:0")]
    for st in g.stages:
        k = next((k for k, a in enumerate(st.assignments)
                  if all(asg[v - 1] == val for v, val in a.items())), None)
        if k is None:
            return None
        for lv in st.levels:
            lab = next(lab for lab in lv if (lab.startswith("x:") == asg[int(lab.split(":")[1]) - 1]))
            tag, var = lab.split(":")
            path.append(d.vertex(f"qpt:{st.index}:{k + 1}:{tag}:{var}"))
            s_end = d.find_label(f"sseg:{st.index}:{tag}:{var}:{k + 1}")
            if s_end is not None:
                path.append(s_end)
        path.append(d.vertex(f"terminal:{st.index + 1}"))
    return path


def extract_assignment(g: Gadget, path: Sequence[int]) -> Assignment:
    """Truth values read off stage 0, after checking every stage agrees with them."""
    d = g.drawing
    alpha = g.instance.alpha
    per_stage: dict[int, dict[int, bool]] = {}
    for v in path:
        label = d.labels.get(v, "")
        if not label.startswith("qpt:"):
            continue
        _, stage, _k, tag, var = label.split(":")
        seen = per_stage.setdefault(int(stage), {})
        value = tag == "x"
        if seen.get(int(var), value) != value:
            raise ConstructionError(f"stage {stage} sets x{var} both ways")
        seen[int(var)] = value
    missing = [i for i in range(len(g.stages)) if len(per_stage.get(i, {})) != alpha]
    if missing:
        raise ConstructionError(f"path does not set every variable in stages {missing}")
    base = per_stage[0]
    for i in range(1, len(g.stages)):
        if per_stage[i] != base:
            diff = sorted(v for v in base if base[v] != per_stage[i][v])
            raise ConstructionError(f"stage {i} disagrees with stage 0 on variables {diff}")
    return Assignment(base[j] for j in range(1, alpha + 1))


def terminals_visited(g: Gadget, path: Sequence[int]) -> bool:
    on = set(path)
    return all(g.drawing.vertex(f"terminal:{i}") in on for i in range(len(g.stages) + 1))
