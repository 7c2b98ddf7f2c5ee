from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bslab.errors import PreconditionError
from bslab.families import make_brieskorn_pham, make_fab, sum_disjoint
from bslab.jacobian import SingularityProfile, briancon_skoda_exponent, is_weighted_homogeneous
from bslab.minimal_exponent import (
    BoundVerdict,
    MinimalExponent,
    alpha_fab,
    alpha_quasihomogeneous,
    alpha_thom_sebastiani,
    bound_theorem1,
    evaluate_bounds,
)

F = Fraction


@pytest.mark.parametrize("w,alpha", [
    ((F(1, 3), F(1, 5)), F(8, 15)),
    ((F(1, 2), F(1, 2)), F(1)),
    ((F(1, 2),) * 5, F(5, 2)),
])
def test_alpha_quasihomogeneous(w, alpha):
    a = alpha_quasihomogeneous(w)
    assert a.value == alpha and a.provenance == "quasi-homogeneous"


@pytest.mark.parametrize("a,b,d,alpha", [(2, 5, 2, F(1, 2)), (3, 10, 3, F(1, 3))])
def test_alpha_fab(a, b, d, alpha):
    m = alpha_fab(a, b, d)
    assert m.value == alpha and m.provenance == "f_ab family"


@pytest.mark.parametrize("a,b,d", [(2, 4, 2), (1, 5, 2), (2, 5, 1)])
def test_alpha_fab_preconditions(a, b, d):
    with pytest.raises(PreconditionError):
        alpha_fab(a, b, d)


def test_alpha_thom_sebastiani():
    qh = "quasi-homogeneous"
    assert alpha_thom_sebastiani(MinimalExponent(F(8, 15), qh), MinimalExponent(1, qh)).value == F(23, 15)
    assert alpha_thom_sebastiani(MinimalExponent(F(1, 2), qh), MinimalExponent(F(1, 2), qh)).value == 1
    a = alpha_thom_sebastiani(alpha_fab(3, 7, 2), alpha_quasihomogeneous((F(1, 2),) * 3))
    assert a.value == F(1, 3) + F(3, 2) and a.provenance == "thom-sebastiani"


def test_minimal_exponent_validation():
    with pytest.raises(ValueError):
        MinimalExponent(0, "supplied")
    with pytest.raises(ValueError):
        MinimalExponent(F(1, 2), "guessed")


@pytest.mark.parametrize("d,alpha,bound", [(2, F(1, 2), 2), (3, F(3, 2), 1), (4, F(23, 15), 1),
                                           (2, F(5, 6), 1), (3, F(1, 2), 3), (5, F(1, 7), 5)])
def test_bound_from_alpha(d, alpha, bound):
    assert bound_theorem1(d, alpha) == bound


def test_bound_from_alpha_is_exact_at_integers():
    # d - 2*alpha an integer: floor must not slip through float rounding
    assert bound_theorem1(3, F(1, 2)) == 3
    assert bound_theorem1(10, F(10**20 + 1, 2 * 10**20)) == 9


positive = st.fractions(min_value=F(1, 50), max_value=10, max_denominator=50).filter(lambda x: x > 0)


@given(st.integers(1, 12), positive, positive)
def test_bound_antitone_in_alpha(d, a, b):
    lo, hi = min(a, b), max(a, b)
    assert bound_theorem1(d, lo) >= bound_theorem1(d, hi)


@given(st.integers(1, 12), st.integers(1, 12), positive)
def test_bound_monotone_in_d(d1, d2, a):
    lo, hi = min(d1, d2), max(d1, d2)
    assert bound_theorem1(lo, a) <= bound_theorem1(hi, a)


def test_verdict_flags():
    v = BoundVerdict("(3)", 2, 2)
    assert v.holds and v.tight
    v = BoundVerdict("(1)", F(1, 2), 1)
    assert v.holds and not v.tight
    assert not BoundVerdict("(7)", 3, 2).holds


def test_evaluate_bounds_fab():
    profile = SingularityProfile(2, True, True, 11)
    ev = evaluate_bounds(profile, 2, alpha_fab(2, 5, 2), no=2)
    assert ev.by_id("(1)").lhs == F(1, 2) and ev.by_id("(1)").rhs == 1 and not ev.by_id("(1)").tight
    for ident in ("(3)", "(7)", "(8)"):
        v = ev.by_id(ident)
        assert v.holds and v.tight and v.lhs == v.rhs == 2
    assert "(11)" in ev.skipped and ev.all_hold


def test_evaluate_bounds_cusp():
    ev = evaluate_bounds(SingularityProfile(2, True, True, 2), 1, alpha_quasihomogeneous((F(1, 2), F(1, 3))))
    v = ev.by_id("(3)")
    assert (v.lhs, v.rhs, v.holds, v.tight) == (1, 1, True, True)
    assert set(ev.skipped) == {"(7)", "(8)", "(11)"}


def test_evaluate_bounds_rational_singularity():
    alpha = alpha_quasihomogeneous((F(1, 2), F(1, 2), F(1, 2), F(1, 3)))
    assert alpha.value == F(11, 6)
    ev = evaluate_bounds(SingularityProfile(4, True, True, 2), 1, alpha)
    v = ev.by_id("(11)")
    assert (v.lhs, v.rhs, v.holds) == (1, 2, True)


def test_evaluate_bounds_without_alpha_skips_exponent_bounds():
    ev = evaluate_bounds(SingularityProfile(2, True, True, 11), 2, None, no=2)
    assert ev.by_id("(3)") is None and ev.by_id("(8)") is None and ev.by_id("(1)") is None
    assert ev.by_id("(7)").tight


def test_evaluate_bounds_gates_nilpotence_on_isolation():
    ev = evaluate_bounds(SingularityProfile(2, True, False, float("inf")), 1, None, no=1)
    assert ev.by_id("(7)") is None and "(7)" in ev.skipped


def test_thom_sebastiani_ebs_is_inherited():
    join = sum_disjoint(make_fab(2, 5, 2), make_brieskorn_pham([2, 2]))
    assert join.polynomial.ring.nvars == 4
    assert briancon_skoda_exponent(join.polynomial) == 2 == briancon_skoda_exponent(make_fab(2, 5, 2).polynomial)
    assert join.alpha.value == F(3, 2)


@pytest.mark.parametrize("left,right", [([2, 3], [2, 3]), ([3, 5], [2, 2]), ([3, 3], [2, 2, 2]),
                                        ([2, 4], [3, 3]), ([2, 2, 3], [5, 2])])
def test_alpha_additivity_matches_join_weights(left, right):
    f, g = make_brieskorn_pham(left), make_brieskorn_pham(right)
    h = sum_disjoint(f, g)
    w = is_weighted_homogeneous(h.polynomial)
    direct = alpha_quasihomogeneous(w).value
    via = alpha_thom_sebastiani(alpha_quasihomogeneous(is_weighted_homogeneous(f.polynomial)),
                                alpha_quasihomogeneous(is_weighted_homogeneous(g.polynomial))).value
    assert direct == via
