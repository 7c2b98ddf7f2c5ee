import json
from fractions import Fraction

import pytest

from bslab.errors import PreconditionError
from bslab.exact_poly import parse_polynomial, partial_derivatives
from bslab.families import (
    bundled_corpus_path,
    dump_corpus,
    load_corpus,
    make_brieskorn_pham,
    make_fab,
    paper_families,
    parse_corpus,
    random_isolated,
    sum_disjoint,
)
from bslab.jacobian import briancon_skoda_exponent, jacobian_basis, milnor_number

F = Fraction


def test_make_fab_examples():
    e = make_fab(2, 5, 2)
    assert e.polynomial == parse_polynomial("x^2*y^2 + x^5 + y^5", ["x", "y"])
    assert e.label == "fab_2_5_2" and e.alpha.value == F(1, 2) and e.no.value == 2
    e = make_fab(3, 10, 3)
    assert e.polynomial == parse_polynomial("x^3*y^3*z^3 + x^10 + y^10 + z^10", ["x", "y", "z"])


def test_make_fab_precondition():
    with pytest.raises(PreconditionError):
        make_fab(2, 4, 2)


def test_make_brieskorn_pham_examples():
    e = make_brieskorn_pham([2, 3])
    assert e.polynomial == parse_polynomial("x^2 + y^3", ["x", "y"])
    assert e.expected["milnor"].value == 2 == milnor_number(e.polynomial)
    assert make_brieskorn_pham([2, 2, 2, 2]).expected["alpha"].value == 2
    e = make_brieskorn_pham([3, 5])
    assert e.expected["milnor"].value == 8 == milnor_number(e.polynomial)
    with pytest.raises(PreconditionError):
        make_brieskorn_pham([1, 3])


def test_join_examples():
    h = sum_disjoint(make_fab(2, 5, 2), make_brieskorn_pham([2, 2]))
    assert h.variables == ("x", "y", "x1", "y1")
    assert h.polynomial == parse_polynomial("x^2*y^2 + x^5 + y^5 + x1^2 + y1^2", h.variables)
    assert h.expected["ebs"].value == 2 and h.expected["alpha"].value == F(3, 2)
    assert h.alpha.provenance == "thom-sebastiani"
    h = sum_disjoint(make_brieskorn_pham([2, 3]), make_brieskorn_pham([2, 3]))
    assert h.expected["alpha"].value == F(5, 3)
    assert h.expected["milnor"].value == 4 == milnor_number(h.polynomial)


def test_join_rejects_smooth_operand():
    smooth = make_brieskorn_pham([2, 2])
    smooth.polynomial = parse_polynomial("x + y^2", ["x", "y"])
    with pytest.raises(PreconditionError):
        sum_disjoint(make_fab(2, 5, 2), smooth)


def _canonical(entry):
    # compare joins up to renaming: multiset of exponent vectors with coefficients, sorted
    return sorted(entry.polynomial.terms.items())


def test_join_commutative_up_to_renaming():
    f, g = make_brieskorn_pham([2, 3]), make_brieskorn_pham([3, 5])
    fg, gf = sum_disjoint(f, g), sum_disjoint(g, f)
    n = 2
    swapped = {m[n:] + m[:n]: c for m, c in gf.polynomial.terms.items()}
    assert swapped == dict(fg.polynomial.terms)
    assert fg.expected["alpha"] == gf.expected["alpha"]
    assert fg.expected["milnor"] == gf.expected["milnor"]


def test_join_associative_up_to_renaming():
    a, b, c = make_brieskorn_pham([2, 2]), make_brieskorn_pham([2, 3]), make_brieskorn_pham([3, 3])
    left = sum_disjoint(sum_disjoint(a, b), c)
    right = sum_disjoint(a, sum_disjoint(b, c))
    assert _canonical(left) == _canonical(right)
    for key in ("alpha", "milnor", "weights", "ebs"):
        assert left.expected[key].value == right.expected[key].value


def test_random_is_deterministic():
    a, b = random_isolated(1, 2, 5), random_isolated(1, 2, 5)
    assert a.to_dict() == b.to_dict()
    assert random_isolated(2, 2, 5).label != a.label


def test_random_examples():
    e = random_isolated(1, 2, 5)
    assert milnor_number(e.polynomial) < float("inf")
    e = random_isolated(2, 2, 5)
    assert milnor_number(e.polynomial) >= 1
    e = random_isolated(3, 3, 4)
    f = e.polynomial
    assert jacobian_basis(f).contains(f ** 3)


def test_random_rejects_bad_parameters():
    with pytest.raises(PreconditionError):
        random_isolated(1, 4, 5)
    with pytest.raises(PreconditionError):
        random_isolated(1, 2, 1)


def test_random_coefficients_and_degrees():
    for seed in range(1, 21):
        f = random_isolated(seed, 2 + seed % 2, 5).polynomial
        assert all(c.denominator == 1 and 1 <= abs(c) <= 3 for c in f.terms.values())
        assert all(2 <= sum(m) <= 5 for m in f.terms)


def test_generated_entries_are_singular_at_origin():
    entries = paper_families() + [random_isolated(s, 2 + s % 2, 4) for s in range(1, 11)]
    for e in entries:
        f = e.polynomial
        assert f.constant_term() == 0
        assert all(g.constant_term() == 0 for g in partial_derivatives(f))


def test_fab_entries_match_expected_ebs():
    for e in paper_families():
        if e.source == "fab":
            assert briancon_skoda_exponent(e.polynomial) == e.expected["ebs"].value


@pytest.mark.parametrize("lines", [False, True])
def test_corpus_round_trip(tmp_path, lines):
    entries = paper_families() + [random_isolated(5, 2, 5)]
    path = tmp_path / ("c.jsonl" if lines else "c.json")
    text = dump_corpus(entries, path, lines=lines)
    back = load_corpus(path)
    assert [e.to_dict() for e in back] == [e.to_dict() for e in entries]
    assert dump_corpus(back, lines=lines) == text


def test_parse_corpus_accepts_bare_list_and_empty():
    entries = paper_families()[:2]
    text = json.dumps([e.to_dict() for e in entries])
    assert [e.label for e in parse_corpus(text)] == ["fab_2_5_2", "fab_3_7_2"]
    assert parse_corpus("") == []


def test_bundled_corpus_is_regenerable():
    on_disk = bundled_corpus_path("paper_families").read_text(encoding="utf-8")
    assert dump_corpus(paper_families()) == on_disk
    assert len(load_corpus("paper_families")) == 15
