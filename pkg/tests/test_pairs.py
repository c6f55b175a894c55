import random
from fractions import Fraction

import pytest

from pairkit.actions import CoAction
from pairkit.errors import ValidationError
from pairkit.fields import QQ, FieldSpec
from pairkit.gbasis import groebner, ideals_equal, Ideal, normal_form
from pairkit.groups import Endomorphism
from pairkit.linalg import jacobian_rank
from pairkit.pairs import (AlphaPair, build_fppf_cover, check_alpha_pair,
                           check_pair_identity, is_affine_stable,
                           kernel_acts_trivially, pair_from_problem,
                           pedestal_ideal_from_pairs, transcendence_degree)
from pairkit.poly import PolyRing, RationalFunction

from oracles import random_rational_tuple
from test_groups import vector_law


class TestPairIdentity:
    def test_e1_translation(self, e1):
        pair = pair_from_problem(e1, 1)
        ok, witness = check_pair_identity(e1.action, pair)
        assert ok and witness is None

    def test_e2_frobenius(self, e2):
        pair = pair_from_problem(e2, 1)
        ok, _ = check_pair_identity(e2.action, pair)
        assert ok

    def test_swapped_pair_fails_with_witness(self, e1):
        pair = pair_from_problem(e1, 2)
        ok, witness = check_pair_identity(e1.action, pair)
        assert not ok
        assert witness is not None and "t" in witness

    def test_scaling_invariance(self, e1):
        # (g, h) -> (c*g, c*h) leaves the identity check unchanged
        pair = pair_from_problem(e1, 1)
        scaled = AlphaPair(pair.alpha,
                           [g.scale(Fraction(7)) for g in pair.g],
                           [h.scale(Fraction(7)) for h in pair.h])
        assert check_pair_identity(e1.action, scaled)[0]


class TestTranscendenceDegree:
    def setup_method(self):
        self.R = PolyRing(["z1", "z2"], QQ)

    def test_coordinates(self):
        fs = [RationalFunction.from_poly(g) for g in self.R.gens()]
        assert transcendence_degree(fs) == 2

    def test_algebraic_relation(self):
        z1 = self.R.var("z1")
        fs = [RationalFunction.from_poly(z1),
              RationalFunction.from_poly(z1 * z1)]
        assert transcendence_degree(fs) == 1

    def test_char2_square_is_still_transcendental(self):
        R = PolyRing(["z1"], FieldSpec.prime(2))
        f = RationalFunction.from_poly(R.var("z1") ** 2)
        assert transcendence_degree([f]) == 1

    def test_constants_give_zero(self):
        fs = [RationalFunction.constant(self.R, Fraction(3))]
        assert transcendence_degree(fs) == 0

    def test_monotone_under_dropping(self):
        z1, z2 = self.R.gens()
        fs = [RationalFunction(z2, z1), RationalFunction.from_poly(z1 * z2),
              RationalFunction.from_poly(z1)]
        full = transcendence_degree(fs)
        for i in range(len(fs)):
            smaller = transcendence_degree(fs[:i] + fs[i + 1:])
            assert smaller <= full

    def test_agrees_with_jacobian_on_random_instances(self):
        rng = random.Random(97)
        R = PolyRing(["z1", "z2", "z3"], QQ)
        for _ in range(10):
            fs = random_rational_tuple(R, rng)
            fs = [f for f in fs if not f.is_zero()]
            if not fs:
                continue
            # crosscheck is internal: any disagreement raises
            degree = transcendence_degree(fs)
            assert degree == jacobian_rank(fs)


class TestKernelActsTrivially:
    def test_e2_infinitesimal_kernel(self, e2):
        assert kernel_acts_trivially(e2.action, e2.endo)

    def test_identity_kernel(self, e1):
        alpha = e1.group.identity_endomorphism()
        assert kernel_acts_trivially(e1.action, alpha)

    def test_linear_action_with_frobenius_fails(self):
        # z2 -> z2 + t*z1 but alpha = t^2: t*z1 is not in <t^2>
        law = vector_law(1, FieldSpec.prime(2))
        ring = PolyRing(["z1", "z2"], FieldSpec.prime(2))
        big = PolyRing(["z1", "z2", "t"], FieldSpec.prime(2))
        action = CoAction(law, ring,
                          [big.var("z1"), big.var("z2") + big.var("t") * big.var("z1")])
        alpha = Endomorphism(law, [law.coords_ring.var("t") ** 2])
        assert not kernel_acts_trivially(action, alpha)


class TestCheckAlphaPair:
    def test_e1_principle(self, e1):
        pair = pair_from_problem(e1, 1)
        report = check_alpha_pair(e1.action, pair)
        assert report.passed
        assert report.get("identity") == "pass"
        assert report.get("trdeg") == 1
        assert report.get("classification") == "principle"
        assert pair.verified and pair.principle and pair.quasi_principle

    def test_e2_quasi_principle(self, e2):
        pair = pair_from_problem(e2, 1)
        report = check_alpha_pair(e2.action, pair)
        assert report.passed
        assert report.get("quasi-principle") == "true"
        assert report.get("principle") == "false"
        assert pair.quasi_principle and not pair.principle

    def test_remark_candidates_fail(self, remark):
        pair = pair_from_problem(remark, 1)
        report = check_alpha_pair(remark.action, pair)
        assert "identity" in report.failures

    def test_non_surjective_alpha_rejected(self, e1):
        law = e1.group
        zero = Endomorphism(law, [law.coords_ring.zero()])
        pair = AlphaPair(zero, [e1.ring.var("z2")], [e1.ring.var("z1")])
        with pytest.raises(ValidationError, match="surjective"):
            check_alpha_pair(e1.action, pair)

    def test_trivial_action_rejected(self):
        law = vector_law(1, QQ)
        ring = PolyRing(["z1"], QQ)
        big = PolyRing(["z1", "t"], QQ)
        action = CoAction(law, ring, [big.var("z1")])
        pair = AlphaPair(law.identity_endomorphism(), [ring.var("z1")], [ring.one()])
        with pytest.raises(ValidationError, match="trivial"):
            check_alpha_pair(action, pair)

    def test_h_invariance_reported_not_required(self, e1):
        # (z1*z2, z2) transforms like z1 through the identity: it is a pair
        # whose H = z2 is not invariant; the toolkit reports and proceeds
        ring = e1.ring
        pair = AlphaPair(e1.group.identity_endomorphism(),
                         [ring.var("z1") * ring.var("z2") + ring.var("z2") ** 2],
                         [ring.var("z2")])
        report = check_alpha_pair(e1.action, pair)
        assert report.get("H-invariant") == "false"
        # z2*(z1 + z2) / z2 = z1 + z2 which moves under the action: fails, but
        # H-invariance played no role in the verdict keys
        assert "H-invariant" not in report.failures


class TestPedestalAndStability:
    def checked_pair(self, problem, idx=1):
        pair = pair_from_problem(problem, idx)
        check_alpha_pair(problem.action, pair)
        return pair

    def test_single_pair(self, e1):
        P = pedestal_ideal_from_pairs([self.checked_pair(e1)])
        assert [g.text() for g in P.gens] == ["z1"]

    def test_reduction_of_redundant_generators(self, e1):
        first = self.checked_pair(e1)
        squared = AlphaPair(e1.group.identity_endomorphism(),
                            [e1.ring.var("z1") * e1.ring.var("z2")],
                            [e1.ring.var("z1") ** 2])
        check_alpha_pair(e1.action, squared)
        assert squared.verified
        P = pedestal_ideal_from_pairs([first, squared])
        assert ideals_equal(P, Ideal(e1.ring, [e1.ring.var("z1")]))

    def test_order_independence(self, e1):
        first = self.checked_pair(e1)
        squared = AlphaPair(e1.group.identity_endomorphism(),
                            [e1.ring.var("z1") * e1.ring.var("z2")],
                            [e1.ring.var("z1") ** 2])
        check_alpha_pair(e1.action, squared)
        a = pedestal_ideal_from_pairs([first, squared])
        b = pedestal_ideal_from_pairs([squared, first])
        assert [g.text() for g in a.gens] == [g.text() for g in b.gens]

    def test_unverified_pair_rejected(self, e1):
        pair = pair_from_problem(e1, 1)
        with pytest.raises(ValidationError, match="verified"):
            pedestal_ideal_from_pairs([pair])

    def test_large_pedestal_vs_quasi_filter(self, e2):
        # (z2^2, z1^2) over F_2 transforms through t^4: a genuine alpha-pair
        # but not quasi-principle (t^2*z1 is outside <t^4>)
        pair1 = self.checked_pair(e2)
        t = e2.group.coords_ring.var("t")
        alpha4 = Endomorphism(e2.group, [t ** 4])
        squared = AlphaPair(alpha4, [e2.ring.var("z2") ** 2],
                            [e2.ring.var("z1") ** 2])
        report = check_alpha_pair(e2.action, squared)
        assert report.passed and not squared.quasi_principle
        assert report.get("separable") == "false"
        P_all = pedestal_ideal_from_pairs([pair1, squared], "all")
        assert [g.text() for g in P_all.gens] == ["z1"]
        P_quasi = pedestal_ideal_from_pairs([squared], "quasi-principle-only")
        assert P_quasi.gens == []
        assert not is_affine_stable([Fraction(1), Fraction(1)], P_quasi)

    def test_stability(self, e1):
        P = pedestal_ideal_from_pairs([self.checked_pair(e1)])
        assert is_affine_stable([Fraction(1), Fraction(0)], P)
        assert not is_affine_stable([Fraction(0), Fraction(5)], P)

    def test_zero_pedestal_never_stable(self, e1):
        P = Ideal(e1.ring, [])
        assert not is_affine_stable([Fraction(1), Fraction(1)], P)

    def test_empty_pair_list_gives_zero_ideal(self, e1):
        P = pedestal_ideal_from_pairs([], ring=e1.ring)
        assert P.gens == []
        with pytest.raises(ValidationError, match="ring"):
            pedestal_ideal_from_pairs([])


class TestFppfCover:
    def test_e2_cover(self, e2):
        pair = pair_from_problem(e2, 1)
        check_alpha_pair(e2.action, pair)
        cover, report = build_fppf_cover(e2.action, pair)
        assert report.passed
        assert [r.text() for r in cover.relations] == ["z1*w^2 + z2"]
        assert cover.action.v_for("w").text() == "w + t"
        g, h = cover.pairs[1]
        assert (g[0].text(), h[0].text()) == ("w", "1")
        assert report.get("saturated") == "false"
        assert report.get("cover-pair-classification") == "principle"

    def test_e1_cover_is_degree_one(self, e1):
        pair = pair_from_problem(e1, 1)
        check_alpha_pair(e1.action, pair)
        cover, report = build_fppf_cover(e1.action, pair)
        assert [r.text() for r in cover.relations] == ["z1*w - z2"]
        assert report.passed

    def test_frobenius_squared_cover(self, e2_frob2):
        pair = pair_from_problem(e2_frob2, 1)
        check_alpha_pair(e2_frob2.action, pair)
        cover, report = build_fppf_cover(e2_frob2.action, pair)
        assert [r.text() for r in cover.relations] == ["z1*w^4 + z2"]
        assert report.passed

    def test_relation_ideal_is_action_stable(self, e2):
        pair = pair_from_problem(e2, 1)
        check_alpha_pair(e2.action, pair)
        cover, _ = build_fppf_cover(e2.action, pair)
        big = cover.action.big_ring
        basis = groebner(Ideal(big, [r.cast(big) for r in cover.relations]))
        for rel in cover.relations:
            pushed = cover.action.pushforward(RationalFunction.from_poly(rel))
            assert normal_form(pushed.as_polynomial(), basis).is_zero()

    def test_unverified_input_rejected(self, e1):
        pair = pair_from_problem(e1, 1)
        with pytest.raises(ValidationError, match="verified"):
            build_fppf_cover(e1.action, pair)
