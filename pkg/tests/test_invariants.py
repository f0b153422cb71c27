import pytest
import sympy

from oracles import naive_jones, pd_terms, t
from petalknots.diagram import mirror, parse_pd_code, writhe
from petalknots.errors import TooManyCrossings
from petalknots.expansion import expand
from petalknots.invariants import (
    Verdict,
    candidate_names,
    certify_unknot,
    component_count,
    determinant,
    jones,
    jones_at_minus_one,
    jones_from_text,
    kauffman_bracket,
)
from petalknots.laurent import LaurentPolynomial
from petalknots.petal_core import PetalPermutation, canonical_twists, stabilize

LEFT_TREFOIL = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]"
FIGURE_EIGHT = "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]"
CURL_POS = "PD[X[1,1,2,2]]"
CURL_NEG = "PD[X[1,2,2,1]]"
# Knot Atlas 5_1 and 5_2
CINQUEFOIL = "PD[X[1,6,2,7], X[3,8,4,9], X[5,10,6,1], X[7,2,8,3], X[9,4,10,5]]"
THREE_TWIST = "PD[X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]]"
HOPF = "PD[X[4,1,3,2], X[2,3,1,4]]"

FIXTURES = [LEFT_TREFOIL, FIGURE_EIGHT, CURL_POS, CURL_NEG, CINQUEFOIL, THREE_TWIST]


def right_trefoil():
    return mirror(parse_pd_code(LEFT_TREFOIL))


def as_sympy(poly: LaurentPolynomial):
    return sympy.expand(sum(c * t ** sympy.Rational(e, 2) for e, c in poly.coeffs.items()))


class TestLaurent:
    def test_arithmetic(self):
        A = LaurentPolynomial.monomial(1)
        d = -(A**2) - A**-2
        assert str(d) == "-A^-2 - A^2"
        assert (d * d).divexact(d) == d
        with pytest.raises(ValueError):
            (d + 1).divexact(d)

    def test_text_form(self):
        assert str(jones_from_text("-t^-4 + t^-3 + t^-1")) == "-t^-4 + t^-3 + t^-1"
        assert str(LaurentPolynomial({1: 1, -3: 2}, var="t", den=2)) == "2*t^(-3/2) + t^(1/2)"
        assert str(LaurentPolynomial()) == "0"


class TestBracket:
    def test_unknot(self):
        assert jones(parse_pd_code("")).is_one()
        assert jones(parse_pd_code(CURL_POS)).is_one()
        assert jones(parse_pd_code(CURL_NEG)).is_one()

    def test_curls_change_bracket_by_unit(self):
        assert str(kauffman_bracket(parse_pd_code(CURL_POS))) == "-A^3"
        assert str(kauffman_bracket(parse_pd_code(CURL_NEG))) == "-A^-3"

    def test_trefoils(self):
        left = parse_pd_code(LEFT_TREFOIL)
        assert writhe(left) == -3
        assert str(jones(left)) == "-t^-4 + t^-3 + t^-1"
        right = right_trefoil()
        assert writhe(right) == 3
        assert str(jones(right)) == "t + t^3 - t^4"

    def test_figure_eight(self):
        assert str(jones(parse_pd_code(FIGURE_EIGHT))) == "t^-2 - t^-1 + 1 - t + t^2"

    @pytest.mark.parametrize("text", FIXTURES + [HOPF])
    def test_matches_naive_state_sum(self, text):
        d = parse_pd_code(text)
        expected = naive_jones([c.arcs for c in d.crossings], writhe(d))
        assert sympy.simplify(as_sympy(jones(d)) - expected) == 0

    def test_hopf_has_half_integer_powers(self):
        v = jones(parse_pd_code(HOPF))
        assert any(e % 2 for e in v.coeffs)

    @pytest.mark.parametrize("text", FIXTURES)
    def test_mirror_inverts_t(self, text):
        d = parse_pd_code(text)
        assert jones(mirror(d)) == jones(d).substitute_inverse()

    @pytest.mark.parametrize("heights", [(1, 3, 2), (1, 3, 5, 2, 4), (1, 4, 2, 5, 3)])
    def test_r1_invariance_on_expansions(self, heights):
        d = canonical_twists(PetalPermutation(heights))
        plain = expand(d)
        # an extra half-twist adds one curl crossing to the diagram
        curled = expand(stabilize(d, 1))
        assert len(curled) == len(plain) + 1
        assert jones(curled) == jones(plain)

    def test_cap(self):
        big = expand(canonical_twists(PetalPermutation((1, 5, 9, 4, 8, 3, 7, 2, 6))))
        with pytest.raises(TooManyCrossings):
            kauffman_bracket(big)


class TestDeterminant:
    @pytest.mark.parametrize(
        "text, det",
        [("", 1), (CURL_POS, 1), (LEFT_TREFOIL, 3), (FIGURE_EIGHT, 5), (CINQUEFOIL, 5), (THREE_TWIST, 7), (HOPF, 2)],
    )
    def test_known_values(self, text, det):
        assert determinant(parse_pd_code(text)) == det

    def test_mirror_invariant(self):
        assert determinant(right_trefoil()) == 3

    @pytest.mark.parametrize("text", FIXTURES + [HOPF])
    def test_agrees_with_jones(self, text):
        d = parse_pd_code(text)
        assert determinant(d) == round(abs(jones_at_minus_one(jones(d))))

    @pytest.mark.parametrize("heights", [(1, 2, 3), (1, 3, 2)])
    def test_three_petal_unknots(self, heights):
        e = expand(canonical_twists(PetalPermutation(heights)))
        assert determinant(e) == 1
        assert jones(e).is_one()


class TestComponents:
    def test_counts(self):
        assert component_count(parse_pd_code(LEFT_TREFOIL)) == 1
        assert component_count(parse_pd_code(HOPF)) == 2
        assert component_count(parse_pd_code("")) == 1


class TestVerdicts:
    def test_curl_is_certified(self):
        assert certify_unknot(parse_pd_code(CURL_POS)).verdict is Verdict.CERTIFIED_UNKNOT

    def test_trefoil_is_refuted(self):
        r = certify_unknot(parse_pd_code(LEFT_TREFOIL))
        assert r.verdict is Verdict.NOT_UNKNOT and r.determinant == 3

    def test_three_petal_reduces_by_curls(self):
        e = expand(canonical_twists(PetalPermutation((1, 3, 2))))
        assert certify_unknot(e).verdict is Verdict.CERTIFIED_UNKNOT

    def test_jones_trivial_without_reduction_is_indeterminate(self):
        e = expand(canonical_twists(PetalPermutation((1, 2, 3, 4, 5))))
        r = certify_unknot(e)
        assert r.verdict is Verdict.INDETERMINATE
        assert certify_unknot(e, reduction_proves_unknot=True).verdict is Verdict.CERTIFIED_UNKNOT

    def test_links_are_not_unknots(self):
        assert certify_unknot(parse_pd_code(HOPF)).verdict is Verdict.NOT_UNKNOT

    def test_fingerprints(self):
        assert candidate_names(3, jones(right_trefoil())) == ["right trefoil"]
        assert candidate_names(3, jones(parse_pd_code(LEFT_TREFOIL))) == ["left trefoil"]
        assert candidate_names(3, None) == ["right trefoil", "left trefoil"]
        assert candidate_names(5, jones(parse_pd_code(CINQUEFOIL))) == []
