from fractions import Fraction as F
import itertools

import pytest

from icchord.cnf import Assignment, CnfInstance
from icchord.geom import pt
from icchord.reduction import (
    anchor_extensions,
    assignment_from_tree,
    build_arrangement,
    build_gamma,
    build_h,
    build_hb,
    canonical_variable_path,
    check_variable_path,
    witness_tree_from_assignment,
)
from icchord.search import find_ic_rooted_spanning_tree, verify_ic_rooted_tree


class TestArrangement:
    def test_alpha2_first_line(self):
        layout = build_arrangement(2)
        l1 = layout.lines[0]
        assert (l1.upper, l1.lower_original, l1.lower_extended) == (pt(0, 1), pt(4, 0), pt(20, -4))

    def test_alpha2_slopes(self):
        slopes = [l.slope for l in build_arrangement(2).lines]
        assert slopes == [F(-1, 4), F(-2, 3), F(-3, 2), F(-4)]

    @pytest.mark.parametrize("alpha", range(1, 7))
    def test_lower_endpoints(self, alpha):
        for i, l in enumerate(build_arrangement(alpha).lines, start=1):
            assert l.lower_extended == pt((2 * alpha + 1) * (2 * alpha - i + 1), -2 * alpha * i)


class TestVariableGadget:
    def test_alpha2_points(self):
        d, _ = build_hb(2)
        at = lambda name: d.vertices[d.vertex(name)]
        assert at("t") == pt(5, 0) and at("s") == pt(5, -20)
        assert [at(n) for n in ("p:x:1", "p:nx:1", "p:x:2", "p:nx:2")] == [
            pt(5, F(-1, 4)), pt(5, F(-4, 3)), pt(5, F(-9, 2)), pt(5, -16)
        ]
        assert at("pprime:x:1") == pt(F(39, 8), F(-3, 4))

    def test_variable_path_roles(self):
        d, _ = build_hb(2)
        ids = [d.vertex(n) for n in ("s", "pprime:nx:2", "p:nx:2", "pprime:x:1", "p:x:1", "t")]
        assert check_variable_path(d, ids, 2)

    def test_both_needles_of_one_variable(self):
        d, _ = build_hb(2)
        ids = [d.vertex(n) for n in ("s", "pprime:nx:2", "p:nx:2", "pprime:x:1", "p:x:1", "p:nx:1", "t")]
        assert not check_variable_path(d, ids, 2)

    def test_skipping_a_variable(self):
        d, _ = build_hb(2)
        ids = [d.vertex(n) for n in ("s", "pprime:x:1", "p:x:1", "t")]
        assert not check_variable_path(d, ids, 2)

    @pytest.mark.parametrize("alpha", [1, 2, 3])
    def test_canonical_paths_are_ic(self, alpha):
        d, _ = build_hb(alpha)
        for bits in itertools.product(["x", "nx"], repeat=alpha):
            path = canonical_variable_path(d, alpha, dict(enumerate(bits, start=1)))
            assert d.is_ic(path) and check_variable_path(d, path, alpha)


class TestClauses:
    def test_peak(self):
        d, _ = build_h(CnfInstance.from_ints(2, [[1, -2]]))
        assert d.vertices[d.vertex("peak:1")] == pt(0, 5)

    def test_literal_points_and_edges(self):
        inst = CnfInstance.from_ints(2, [[1, -2]])
        hb, _ = build_hb(2)
        d, _ = build_h(inst)
        assert len(d) - len(hb) == 3  # peak plus two literal points
        assert len(d.edges) - len(hb.edges) == 4

    def test_literal_point_below_envelope(self):
        d, layout = build_h(CnfInstance.from_ints(3, [[1, 2, 3]]))
        q = d.vertices[d.vertex("lit:x:1:c:1")]
        piece = layout.lambdas["x:1"]
        assert q == piece.midpoint() - pt(0, layout.literal_offset)
        assert layout.literal_offset == F(1, 81)


class TestGamma:
    def test_root_alpha3(self):
        gamma, layout = build_gamma(CnfInstance.from_ints(3, [[1, 2, 3]]))
        assert gamma.vertices[gamma.vertex("root")] == pt(0, -243)

    def test_anchor_alignment(self):
        gamma, _ = build_gamma(CnfInstance.from_ints(2, [[1, 2]]))
        q = gamma.vertices[gamma.vertex("lit:x:1:c:1")]
        a = gamma.vertices[gamma.vertex("anchor:x:1:c:1")]
        assert a == pt(0, q.y)

    @pytest.mark.parametrize("clauses", [[[1, 2]], [[1], [-1, 2]], [[1, -2], [2, 1]]])
    def test_checked_claims(self, clauses):
        gamma, layout = build_gamma(CnfInstance.from_ints(2, clauses))
        assert layout.claims["rs_slab_meets_H_only_at_s"] and layout.claims["H_slabs_avoid_rs"]
        assert anchor_extensions(gamma) == []


class TestWitness:
    def test_roundtrip(self):
        inst = CnfInstance.from_ints(2, [[1, 2]])
        gamma, _ = build_gamma(inst)
        asg = Assignment((True, True))
        tree = witness_tree_from_assignment(inst, asg, gamma)
        assert verify_ic_rooted_tree(gamma, tree)
        assert tree.vertices() == set(range(len(gamma)))
        assert assignment_from_tree(inst, gamma, tree) == asg

    def test_rejects_falsifying_assignment(self):
        with pytest.raises(ValueError):
            witness_tree_from_assignment(CnfInstance.from_ints(1, [[1]]), Assignment((False,)))

    def test_any_tree_of_unit_clause_sets_variable(self):
        inst = CnfInstance.from_ints(1, [[1]])
        gamma, _ = build_gamma(inst)
        tree = find_ic_rooted_spanning_tree(gamma, gamma.vertex("root"))
        assert assignment_from_tree(inst, gamma, tree) == Assignment((True,))
