import itertools
from fractions import Fraction as F

import pytest

from icchord.cnf import Assignment, CnfInstance, brute_force_sat
from icchord.gadget import (
    _negate,
    _past_delta,
    build_gadget,
    build_stage0,
    clause_assignments,
    extract_assignment,
    gadget_path_from_assignment,
    terminals_visited,
)
from icchord.cnf import Literal
from icchord.geom import pt
from icchord.reduction import build_arrangement
from icchord.search import find_ic_path

MIXED = CnfInstance.from_ints(3, [[1, 3], [-2, -3]])


def test_clause_copies():
    assert len(clause_assignments((Literal(1, True), Literal(2, False)))) == 3
    assert len(clause_assignments((Literal(1, True), Literal(2, True), Literal(3, True)))) == 7
    assert len(clause_assignments((Literal(2, False),))) == 1


def test_stage0_q_point_on_first_line():
    stage = build_stage0(CnfInstance.from_ints(2, [[1, 2]]))
    a, b = stage.intervals["x:1"]
    line = build_arrangement(2).lines[0].line
    assert line.contains(a) and line.contains(b)
    assert stage.nominal["x:1"] == pt((a.x + b.x) / 2, (a.y + b.y) / 2)


def test_stage0_rejects_empty_clause_list():
    with pytest.raises(ValueError):
        build_stage0(CnfInstance(2, ()))


def test_desk_cap():
    with pytest.raises(ValueError):
        build_gadget(CnfInstance.from_ints(4, [[1]]))
    with pytest.raises(ValueError):
        build_gadget(CnfInstance.from_ints(2, [[1], [2], [1, 2]]))


@pytest.mark.parametrize("clauses", [[[1, 2]], [[1, -2, 3]], [[-1]]])
def test_ladder_paths_are_ic(clauses):
    inst = CnfInstance.from_ints(max(abs(l) for c in clauses for l in c), clauses)
    g = build_gadget(inst)
    for bits in itertools.product([False, True], repeat=inst.alpha):
        path = gadget_path_from_assignment(g, bits)
        assert (path is not None) == inst.satisfied_by(bits)
        if path is not None:
            assert g.drawing.is_ic(path)


@pytest.fixture(scope="module")
def gadget():
    return build_gadget(MIXED)


class TestStages:
    def test_ray_slope(self, gadget):
        assert gadget.ray_slopes() == [F(27)]
        assert not gadget.slope_escalated

    def test_past_previous_stages(self, gadget):
        st = gadget.stages[1]
        pts = list(st.copies.values()) + [st.end]
        assert all(_past_delta(1, p.x, st.delta) for p in pts)

    def test_polarity_inverted(self, gadget):
        prev, st = gadget.stages
        for lab, q in prev.nominal.items():
            assert st.lines[_negate(lab)].contains(q)

    def test_s_segments_perpendicular(self, gadget):
        st = gadget.stages[0]
        assert st.s_ends
        for key, end in st.s_ends.items():
            line = st.next_lines[key[1]]
            v = end - st.copies[key]
            assert v.x * line.b - v.y * line.a == 0

    def test_mixed_polarity_assignment(self, gadget):
        asg = Assignment((True, False, True))
        path = gadget_path_from_assignment(gadget, asg)
        assert gadget.drawing.is_ic(path) and terminals_visited(gadget, path)
        assert extract_assignment(gadget, path) == asg

    def test_found_path_is_consistent(self, gadget):
        path = find_ic_path(gadget.drawing, gadget.t, gadget.t_prime)
        assert path is not None and terminals_visited(gadget, path)
        assert MIXED.satisfied_by(extract_assignment(gadget, path))


def test_unsatisfiable_single_variable():
    g = build_gadget(CnfInstance.from_ints(1, [[1], [-1]]))
    assert find_ic_path(g.drawing, g.t, g.t_prime) is None


def test_bit_length_reported():
    g = build_gadget(CnfInstance.from_ints(2, [[1, 2], [-1]]))
    assert g.bit_length() > build_gadget(CnfInstance.from_ints(2, [[1, 2]])).bit_length()
    assert brute_force_sat(g.instance) is not None
