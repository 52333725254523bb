"""Exit criteria.  All comparisons are exact; time limits are wall clock.

Run ``pytest tests/test_acceptance.py`` to get one PASS/FAIL line per
criterion in the terminal summary.
"""

import json
import math
import time
from fractions import Fraction

import pytest

from oracles import bernoulli_by_recurrence, count_partitions, power_sum
from pbernoulli import sequences
from pbernoulli.cli import main
from pbernoulli.combinatorics import r_stirling2, stirling2
from pbernoulli.exact_core import UniPoly
from pbernoulli.identities import GridBounds, suite_passed, verify_all
from pbernoulli.sequences import (
    Route,
    alt_binom_reciprocal_sum,
    bernoulli_number,
    faulhaber_sum,
    p_bernoulli_number,
    p_bernoulli_poly,
)

F = Fraction


@pytest.mark.criterion("1. closed forms B_{0,p}, B_{1,p}(x), B_{2,p}(x) for p = 0..10 (< 1 s)")
def test_low_order_closed_forms():
    sequences.clear_caches()
    start = time.perf_counter()
    for p in range(11):
        assert p_bernoulli_number((0, p)) == 1
        assert p_bernoulli_poly((0, p)) == UniPoly([1])
        assert p_bernoulli_poly((1, p)) == UniPoly([F(-1, p + 2), 1])
        assert p_bernoulli_poly((2, p)) == UniPoly([F(-(p - 1), (p + 2) * (p + 3)), F(-2, p + 2), 1])
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion("2. four routes agree on B_{n,p}, 0 <= n <= 20, 0 <= p <= 10 (< 10 s)")
def test_route_equivalence():
    sequences.clear_caches()
    start = time.perf_counter()
    for n in range(21):
        for p in range(11):
            ref = p_bernoulli_number((n, p), Route.RECURRENCE)
            assert p_bernoulli_number((n, p), Route.EXPLICIT_P_STIRLING) == ref, (n, p)
            assert p_bernoulli_number((n, p), Route.WEIGHTED_INTEGRAL) == ref, (n, p)
            if n >= 1:
                assert p_bernoulli_number((n, p), Route.EXPLICIT_STIRLING) == ref, (n, p)
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion("3. full identity suite at n<=12, p<=8, m<=6; only eq8-as-printed fails (< 60 s)")
def test_full_identity_suite():
    sequences.clear_caches()
    start = time.perf_counter()
    reports = verify_all(GridBounds(12, 8, 6), {"eq8-as-printed"}, jobs=1)
    elapsed = time.perf_counter() - start
    failing = {r.id for r in reports if r.outcome == "fail"}
    assert failing == {"eq8-as-printed"}
    assert not any(r.vacuous for r in reports)
    printed = next(r for r in reports if r.id == "eq8-as-printed")
    witness = printed.counterexamples[0]
    assert witness.params == {"n": 1, "p": 0}
    assert witness.rhs == F(1, 2) and witness.lhs == F(-1, 2) == bernoulli_number(1)
    assert suite_passed(reports)
    assert elapsed < 60.0


@pytest.mark.criterion("4. Gould specialization for 1 <= n <= 20, both routes")
def test_gould():
    for n in range(1, 21):
        gould = F(n + 1, n + 2) * ((-1) ** n + 1)
        assert alt_binom_reciprocal_sum(n, 0, "direct") == gould
        assert alt_binom_reciprocal_sum(n, 0, "closed-form") == gould


@pytest.mark.criterion("5. Faulhaber-type sum at (n,p) = (2,1) is 3/2 both ways")
def test_theorem2_point():
    assert p_bernoulli_poly((1, 3)) == UniPoly(["-1/5", 1])
    assert p_bernoulli_poly((1, 3))(-2) == F(-11, 5)
    assert alt_binom_reciprocal_sum(2, 1, "direct") == F(3, 2)
    assert alt_binom_reciprocal_sum(2, 1, "closed-form") == F(3, 2)


@pytest.mark.criterion("6. Stirling/r-Stirling vs set-partition enumeration; Faulhaber vs direct sums")
def test_oracles():
    for n in range(9):
        for k in range(n + 1):
            assert stirling2(n, k) == count_partitions(n, k)
            for r in range(min(n, 3) + 1):
                assert r_stirling2(n, k, r) == count_partitions(n, k, r), (n, k, r)
    for n in range(11):
        for m in range(13):
            assert faulhaber_sum(n, m) == power_sum(n, m)


@pytest.mark.criterion("7. verify --jobs 1 and --jobs 8 give identical reports")
def test_parallel_determinism(tmp_path, capsys):
    outputs = []
    for jobs in (1, 8):
        target = tmp_path / f"jobs{jobs}.json"
        code = main(["verify", "all", "--jobs", str(jobs), "--expect-fail", "eq8-as-printed",
                     "--out", str(target)])
        stdout = capsys.readouterr().out
        assert code == 0
        doc = json.loads(target.read_text())
        for r in doc["reports"]:
            r.pop("elapsed_ms")
        outputs.append((stdout, doc))
    assert outputs[0] == outputs[1]


@pytest.mark.criterion("8. classical recurrence for 1 <= n <= 30; B_n = 0 for odd 3 <= n <= 29")
def test_classical_sanity():
    values = [p_bernoulli_number((n, 0)) for n in range(31)]
    assert values == [bernoulli_number(n) for n in range(31)] == bernoulli_by_recurrence(30)
    for n in range(1, 31):
        assert sum(math.comb(n + 1, k) * values[k] for k in range(n + 1)) == 0
    for n in range(3, 30, 2):
        assert values[n] == 0
