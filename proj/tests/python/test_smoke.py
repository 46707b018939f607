import json
from fractions import Fraction

import _bmslab


def test_count_routes_agree():
    assert _bmslab.count(2, 0, [3], route="brute") == Fraction(5, 3)
    assert _bmslab.count(2, 0, [3], route="fock") == Fraction(5, 3)
    assert _bmslab.count(2, 0, [3], route="genus0") == Fraction(5, 3)
    assert _bmslab.count(2, 1, [3]) == Fraction(1, 3)
    assert _bmslab.count(2, 0, [1, 1], route="unstable") == 1


def test_count_rejects_bad_route():
    try:
        _bmslab.count(2, 1, [3], route="genus0")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def test_fit_json_parses():
    form = json.loads(_bmslab.fit_json(2, 0, 3))
    assert form["m"] == 2
    assert form["g"] == 0
    assert form["n"] == 3
    assert form["poly"]["terms"]


def test_xi_coefficients():
    coeffs = _bmslab.xi_coefficients(2, 1, 4)
    assert coeffs == [0, 1, 2, 6, 20]


def test_recursion_matches_counts():
    assert _bmslab.recursion_matches_counts(0, 3, 3)
    assert _bmslab.recursion_matches_counts(1, 1, 4)
