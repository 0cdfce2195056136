from __future__ import annotations

from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagx.extremality import (
    Verdict,
    check_extremality,
    check_product,
    mu,
    pairing_residual,
    pairing_sum,
    survey_full_flags,
)
from flagx.flag import build_flag, su_3n_flag
from flagx.roots import DomainError, build_root_system

from strategies import SCALES, flag_specs, make_flag


def full(family, n, scale=1):
    return build_flag(build_root_system(family, n, scale))


def test_examples():
    r = check_extremality(full("A", 3))
    assert r.verdict is Verdict.EXTREMAL
    assert all(x == 0 for x in r.residual)
    r = check_extremality(su_3n_flag(2))
    assert r.verdict is Verdict.EXTREMAL
    assert r.mu == Q(16, 3)
    r = check_extremality(full("B", 2))
    assert r.verdict is Verdict.NOT_EXTREMAL
    assert any(x != 0 for x in r.residual)
    assert check_extremality(full("A", 2)).verdict is Verdict.NOT_APPLICABLE
    assert check_extremality(full("C", 3)).verdict is Verdict.NOT_EXTREMAL


def test_not_applicable_iff_center_dim_one():
    # CP^3 = SU(4)/S(U(1) x U(3)) has a one-dimensional center
    f = build_flag(build_root_system("A", 4), (2, 3))
    assert f.center_dim == 1
    assert check_extremality(f).verdict is Verdict.NOT_APPLICABLE


# closed forms of the scalar pairing sum, n the classical parameter


@pytest.mark.parametrize("n", range(3, 11))
def test_pairing_type_a(n):
    f = full("A", n)
    assert pairing_sum(f, 1) == Q(n, 2 * (n - 1))
    assert (pairing_residual(f, 1) == 0) == (6 * (n - 1) == n * (n + 1))


@pytest.mark.parametrize("n", range(2, 9))
def test_pairing_type_b(n):
    f = full("B", n)
    assert pairing_sum(f, n) == Q(1, 2) * (1 + Q(1, n))
    assert (pairing_residual(f, n) == 0) == (6 * n * n == (4 * n * n - 1) * (1 + n))


@pytest.mark.parametrize("n", range(3, 9))
def test_pairing_type_c(n):
    f = full("C", n)
    assert pairing_sum(f, n) == Q(1, n + 1) + Q(1, n) - Q(1, 2)


@pytest.mark.parametrize("n", range(3, 9))
def test_pairing_type_d(n):
    # recomputed by hand for the first simple root: the sum over R+ splits into
    # the roots w1 - wj, w1 + wj (j > 1) and w2 +- wj
    f = full("D", n)
    assert pairing_sum(f, 1) == Q(1, 2) + Q(1, 2 * (n - 1)) - Q(1, 4 * (n - 2))
    zero = pairing_residual(f, 1) == 0
    assert zero == (12 * (n - 1) * (n - 2) == (2 * n - 1) * (2 * n * n - 5 * n + 1))
    # the alternative form 3(n-1)(2n-5) = (2n-1)(n^2-n-3) has no solution in range either
    assert zero == (3 * (n - 1) * (2 * n - 5) == (2 * n - 1) * (n * n - n - 3))


def test_diophantine_type_a():
    zeros = [n for n in range(3, 11) if pairing_residual(full("A", n), 1) == 0]
    assert zeros == [3]


@pytest.mark.parametrize(
    "family,n", [(f, n) for f, lo, hi in [("A", 3, 8), ("B", 2, 6), ("C", 3, 6), ("D", 3, 6)] for n in range(lo, hi + 1)]
)
def test_vector_and_scalar_conditions_agree(family, n):
    f = full(family, n)
    r = check_extremality(f)
    scalars = [pairing_residual(f, i) for i in range(1, f.system.rank + 1)]
    if all(x == 0 for x in r.residual):
        assert all(s == 0 for s in scalars)
    if any(s != 0 for s in scalars):
        assert r.verdict is Verdict.NOT_EXTREMAL


def test_pairing_rejects_partial_flags():
    with pytest.raises(DomainError):
        pairing_sum(su_3n_flag(2), 1)
    with pytest.raises(DomainError):
        pairing_sum(full("A", 4), 4)


@given(flag_specs(max_n=6), st.sampled_from(SCALES[1:]))
def test_scale_invariance(spec, c):
    base = check_extremality(make_flag(spec))
    scaled = check_extremality(make_flag(spec, c))
    assert scaled.verdict is base.verdict
    assert scaled.residual == base.residual
    assert scaled.mu == c * base.mu
    assert [scaled.mu / x.beta for x in scaled.decomposition] == [base.mu / x.beta for x in base.decomposition]


@given(flag_specs(max_n=6))
def test_verdict_matches_residual(spec):
    f = make_flag(spec)
    r = check_extremality(f)
    if f.center_dim < 2:
        assert r.verdict is Verdict.NOT_APPLICABLE
    else:
        assert (r.verdict is Verdict.EXTREMAL) == all(x == 0 for x in r.residual)
    assert r.mu == mu(f) > 0


def test_product_examples():
    a2, b2 = full("A", 3), full("B", 2)
    assert check_product([a2, a2]) is Verdict.EXTREMAL
    assert check_product([a2, b2]) is Verdict.NOT_EXTREMAL
    assert check_product([a2]) is Verdict.EXTREMAL
    assert check_product([full("A", 2)]) is Verdict.NOT_APPLICABLE
    # a factor with one-dimensional center imposes no condition
    assert check_product([a2, full("A", 2)]) is Verdict.EXTREMAL
    assert check_product([b2, full("A", 2)]) is Verdict.NOT_EXTREMAL
    with pytest.raises(DomainError):
        check_product([])


@given(st.lists(flag_specs(max_n=5), min_size=2, max_size=2))
def test_product_rule_random_pairs(specs):
    flags = [make_flag(s) for s in specs]
    verdicts = [check_extremality(f).verdict for f in flags]
    expected = Verdict.NOT_EXTREMAL if Verdict.NOT_EXTREMAL in verdicts else Verdict.EXTREMAL
    assert check_product(flags) is expected


def test_survey_order_and_content(monkeypatch):
    monkeypatch.setenv("FLAGX_THREADS", "3")
    rows = survey_full_flags(["D", "a"], max_rank=4)
    assert [(f, r) for f, r, _ in rows] == [("A", 2), ("A", 3), ("A", 4), ("D", 3), ("D", 4)]
    assert [rep.verdict for _, _, rep in rows] == [Verdict.EXTREMAL] + [Verdict.NOT_EXTREMAL] * 4
    monkeypatch.setenv("FLAGX_THREADS", "1")
    assert [r[2].residual for r in survey_full_flags(["D", "A"], max_rank=4)] == [r[2].residual for r in rows]


def test_survey_errors():
    with pytest.raises(DomainError):
        survey_full_flags([])
    with pytest.raises(DomainError):
        survey_full_flags(["G"])
