from fractions import Fraction

import pytest

from pbernoulli.exact_core import BiPoly, UniPoly
from pbernoulli.identities import (
    BoundsError,
    GridBounds,
    UnknownIdentityError,
    evaluate,
    list_identities,
    suite_passed,
    verify_all,
    verify_identity,
)

F = Fraction

REQUIRED_IDS = {
    "bernoulli-recurrence", "keller", "eq17", "eq25", "eq24-reflection", "eq19-appell",
    "eq20", "eq22", "eq21", "eq6-theorem1", "bnp-at-1", "eq7a", "eq8-corrected",
    "eq26-corrected", "eq8-as-printed", "eq2-prop2", "eq28-telescopic", "eq4-theorem5",
    "eq27", "eq31-raabe", "classical-raabe", "cor2-convolution", "chu-zhou-m1",
    "chu-zhou-m2", "eq36", "eq15-raabe-geometric", "eq32-arith-geom",
    "eq32-geometric-form", "eulerian-transform", "theorem2-main", "gould",
    "eq3-faulhaber", "eq34-beta",
}


def test_registry_contents():
    descs = list_identities()
    ids = [d.id for d in descs]
    assert ids == sorted(ids)
    assert len(ids) == len(set(ids)) >= 27
    assert REQUIRED_IDS <= set(ids)
    flagged = {d.id for d in descs if d.expected_fail}
    assert flagged == {"eq8-as-printed"}
    assert all(d.statement_kind in {
        "rational-equality", "polynomial-equality-1var", "polynomial-equality-2var"
    } for d in descs)


def test_descriptor_minimums():
    by_id = {d.id: d for d in list_identities()}
    mins = lambda id: {p.name: p.minimum for p in by_id[id].parameters}  # noqa: E731
    assert mins("eq25")["n"] == 2
    assert mins("eq36") == {"n": 1, "p": 1}
    assert mins("eq6-theorem1")["n"] == 1
    assert mins("eq31-raabe")["m"] == 1


def test_eq6_example():
    report = verify_identity("eq6-theorem1", GridBounds(n_max=10, p_max=6))
    assert report.outcome == "pass"
    assert report.cases_checked == 10 * 7
    assert not report.counterexamples


def test_eq8_as_printed_witness():
    report = verify_identity("eq8-as-printed", GridBounds(n_max=2, p_max=0))
    assert report.outcome == "fail"
    first = report.counterexamples[0]
    assert first.params == {"n": 1, "p": 0}
    assert (first.lhs, first.rhs) == (F(-1, 2), F(1, 2))
    assert first.to_dict() == {"params": {"n": 1, "p": 0}, "lhs": "-1/2", "rhs": "1/2"}


def test_eq8_as_printed_is_negated_value():
    for n in range(1, 8):
        for p in range(5):
            lhs, rhs = evaluate("eq8-as-printed", n=n, p=p)
            assert rhs == -lhs


def test_keller_example():
    assert verify_identity("keller", GridBounds(n_max=12)).outcome == "pass"


def test_theorem2_example():
    assert verify_identity("theorem2-main", GridBounds(n_max=8, p_max=6)).outcome == "pass"
    assert evaluate("theorem2-main", n=2, p=1) == (F(3, 2), F(3, 2))


def test_spot_values():
    assert evaluate("eq4-theorem5", n=1, p=0, m=1) == (2, 2)
    assert evaluate("eq4-theorem5", n=1, p=0, m=0) == (F(1, 2), F(1, 2))
    assert evaluate("eq27", n=1, m=1) == (3, 3)
    assert evaluate("cor2-convolution", n=1, m=1) == (F(1, 3), F(1, 3))
    assert evaluate("eq36", n=1, p=1) == (UniPoly(["-1/3"]), UniPoly(["-1/3"]))
    # registered multiplied by n*y = 2y, so x + y becomes 2xy + 2y^2
    two_y = UniPoly([0, 2])
    x_plus_y = BiPoly([UniPoly([0, 1]), UniPoly([1])])
    assert evaluate("eq15-raabe-geometric", n=2, m=1) == (x_plus_y * two_y, x_plus_y * two_y)


def test_cor2_reduces_to_chu_zhou():
    for n in range(10):
        assert evaluate("cor2-convolution", n=n, m=1)[1] == evaluate("chu-zhou-m1", n=n)[1]
        assert evaluate("cor2-convolution", n=n, m=2)[1] == evaluate("chu-zhou-m2", n=n)[1]


def test_side_conditions_are_real():
    # outside the declared minimums these statements are false, which is why
    # the bounds exclude them
    lhs, rhs = evaluate("bnp-at-1", n=1, p=0)
    assert lhs != rhs
    lhs, rhs = evaluate("eq7a", n=0, p=1)
    assert lhs != rhs
    lhs, rhs = evaluate("eq25", n=1, p=0)
    assert lhs != rhs


def test_literal_eulerian_relation_fails():
    # (1-y)^n w_n(y) read literally is not A_n(y)
    from pbernoulli.combinatorics import eulerian_poly
    from pbernoulli.sequences import geometric_poly

    literal = UniPoly([1, -1]) * geometric_poly(1)
    assert literal != eulerian_poly(1)
    assert evaluate("eulerian-transform", n=1) == (eulerian_poly(1), eulerian_poly(1))


def test_fixed_interval_parameter():
    report = verify_identity("eq19-integral", GridBounds(n_max=3, p_max=1))
    assert report.cases_checked == 4 * 2 * 3


def test_unknown_id():
    with pytest.raises(UnknownIdentityError):
        verify_identity("no-such-identity")
    with pytest.raises(UnknownIdentityError):
        verify_all(GridBounds(1, 1, 1), ids=["keller", "bogus"])


def test_bounds_below_minimum():
    with pytest.raises(BoundsError):
        verify_identity("eq36", GridBounds(p_max=0))
    report = verify_identity("eq36", GridBounds(p_max=0), allow_vacuous=True)
    assert report.vacuous and report.outcome == "pass" and report.cases_checked == 0
    with pytest.raises(BoundsError):
        GridBounds(n_max=-1)


def test_vacuous_grid():
    reports = verify_all(GridBounds(0, 0, 0), expected_fail_ids=set())
    by_id = {r.id: r for r in reports}
    assert by_id["eq25"].vacuous and by_id["eq25"].cases_checked == 0
    assert by_id["eq25"].outcome == "pass"
    assert not by_id["keller"].vacuous
    for desc in list_identities():
        if any(p.minimum > 0 and p.bound in ("n_max", "p_max", "m_max") for p in desc.parameters):
            assert by_id[desc.id].vacuous, desc.id


def test_counterexample_cap():
    report = verify_identity("eq8-as-printed", GridBounds(n_max=6, p_max=4), cap=3)
    assert len(report.counterexamples) == 3
    keys = [tuple(c.params.values()) for c in report.counterexamples]
    assert keys == sorted(keys)


def test_overall_verdict():
    bounds = GridBounds(4, 3, 2)
    assert suite_passed(verify_all(bounds, {"eq8-as-printed"}))
    assert not suite_passed(verify_all(bounds, set()))


def test_report_order_and_parallel_determinism():
    bounds = GridBounds(5, 3, 3)
    serial = verify_all(bounds, jobs=1)
    parallel = verify_all(bounds, jobs=3)
    assert [r.id for r in serial] == [d.id for d in list_identities()]
    assert [r.to_dict(with_timing=False) for r in serial] == [
        r.to_dict(with_timing=False) for r in parallel
    ]
