from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bslab.errors import NonsingularError, PreconditionError
from bslab.exact_poly import LOCAL, parse_polynomial
from bslab.families import make_brieskorn_pham, make_fab, random_isolated
from bslab.jacobian import (
    INFINITE,
    WeightVector,
    briancon_skoda_exponent,
    detect_weights,
    is_weighted_homogeneous,
    jacobian_basis,
    milnor_number,
    singularity_profile,
)
from oracles.newton_number import fab_support, newton_number


@pytest.mark.parametrize("text,names,k", [
    ("x^2 + y^3", "xy", 1),
    ("x^2*y^2 + x^5 + y^5", "xy", 2),
    ("x^2 + y^2 + z^2 + w^2", "xyzw", 1),
    ("x^2", "x", 1),
])
def test_ebs_examples(P, text, names, k):
    assert briancon_skoda_exponent(P(text, names)) == k


def test_ebs_rejects_bad_inputs(P):
    with pytest.raises(NonsingularError):
        briancon_skoda_exponent(P("x + y^2"))
    with pytest.raises(PreconditionError):
        briancon_skoda_exponent(P("1 + x^2"))
    with pytest.raises(PreconditionError):
        briancon_skoda_exponent(P("0"))


@pytest.mark.parametrize("text,mu", [("x^2 + y^2", 1), ("x^3 + y^5", 8), ("x^2*y^2 + x^5 + y^5", 11),
                                     ("x^2*y", INFINITE), ("x*y", 1)])
def test_milnor_examples(P, text, mu):
    assert milnor_number(P(text)) == mu


def test_milnor_of_smooth_point_is_zero(P):
    assert milnor_number(P("x + x^2")) == 0


@pytest.mark.parametrize("a,b,d", [(2, 5, 2), (3, 7, 2), (2, 7, 3), (3, 10, 2)])
def test_fab_milnor_matches_newton_number(a, b, d):
    f = make_fab(a, b, d).polynomial
    assert milnor_number(f) == newton_number(fab_support(a, b, d))


def test_weight_examples(P):
    assert is_weighted_homogeneous(P("x^3 + y^5")) == WeightVector((Fraction(1, 3), Fraction(1, 5)))
    assert is_weighted_homogeneous(P("x^2*y^2 + x^5 + y^5")) is None
    assert detect_weights(P("x^2*y^2 + x^5 + y^5")).status == "inconsistent"
    assert is_weighted_homogeneous(P("x^2*y + x*y^2")) == WeightVector((Fraction(1, 3),) * 2)


def test_weights_underdetermined_search(P):
    # one equation in two unknowns: the search must land on a positive solution
    det = detect_weights(P("x^2*y^3"))
    assert det.status == "found" and det.weights.is_weight_of(P("x^2*y^3"))


def test_weights_with_zero_forced(P):
    # x*y + x forces w_y = 0, so no positive weights exist
    assert is_weighted_homogeneous(P("x*y + x")) is None


def test_profile_examples(P):
    p = singularity_profile(P("x^2 + y^3"))
    assert (p.dimension, p.singular_at_origin, p.isolated, p.milnor_number) == (2, True, True, 2)
    p = singularity_profile(P("x*t", "xt"))
    assert p.singular_at_origin and p.isolated and p.milnor_number == 1
    p = singularity_profile(P("x^2*y"))
    assert p.singular_at_origin and p.isolated is False and p.milnor_number == INFINITE
    p = singularity_profile(P("x + x^2"))
    assert not p.singular_at_origin and p.milnor_number == 0


def test_profile_reports_unknown_on_resource_limit(P):
    p = singularity_profile(P("x^2*y^2*z^2 + x^7 + y^7 + z^7", "xyz"), max_pairs=1)
    assert p.isolated is None and p.milnor_number is None


def test_jacobian_basis_of_constant(P):
    assert jacobian_basis(P("5")).generators == ()


SAMPLES = ["x^2*y^2 + x^5 + y^5", "x^3 + x*y^4", "x^2*y + y^4 + z^3", "x^3*y + y^3*z + z^3*x", "x^4 + y^4 + x^2*y^2*z + z^3"]


@pytest.mark.parametrize("text", SAMPLES)
def test_milnor_and_ebs_permutation_invariant(P, text):
    f = P(text, "xyz")
    mu = milnor_number(f)
    ebs = briancon_skoda_exponent(f)
    for perm in permutations(range(3)):
        g = f.ring.from_terms({tuple(m[i] for i in perm): c for m, c in f.terms.items()})
        assert milnor_number(g) == mu
        assert briancon_skoda_exponent(g) == ebs


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SAMPLES),
       st.tuples(*(st.fractions(min_value=Fraction(-3), max_value=3, max_denominator=3)
                   .filter(lambda c: c != 0),) * 3))
def test_milnor_scaling_invariant(text, scale):
    f = parse_polynomial(text, ["x", "y", "z"])
    ring = f.ring
    g = ring.zero()
    for m, c in f.terms.items():
        factor = Fraction(1)
        for s, e in zip(scale, m):
            factor *= s ** e
        g = g + ring.monomial(m, c * factor)
    assert milnor_number(g) == milnor_number(f)


@pytest.mark.parametrize("exps", [[2, 3], [3, 5], [2, 2, 2], [4, 4], [2, 3, 4], [3, 3, 3], [2, 2, 2, 3]])
def test_weighted_homogeneous_has_ebs_one(exps):
    f = make_brieskorn_pham(exps).polynomial
    assert is_weighted_homogeneous(f) is not None
    assert briancon_skoda_exponent(f) == 1


def _power_in_jacobian(f) -> bool:
    basis = jacobian_basis(f, LOCAL)
    return basis.contains(f ** f.ring.nvars)


def test_universal_bound_on_random_entries():
    seen = 0
    for seed in range(1, 61):
        d = 2 if seed % 2 else 3
        e = random_isolated(seed, d, 5 if d == 2 else 4)
        f = e.polynomial
        assert _power_in_jacobian(f), e.label
        assert 1 <= briancon_skoda_exponent(f) <= d
        seen += 1
    assert seen >= 50
