import pytest

from mzsv import (ConfigurationError, PrecisionContext, get_identity,
                  list_identities, verify, verify_suite, zeta)

EXPECTED_IDS = [
    "remark1_even", "remark1_odd", "a1_specialized", "a1_prefactor_derivative",
    "eq1", "a2_specialized", "a2_cyclic", "a3_specialized", "eq2_check",
    "eq3", "eq3_expansion_r0", "eq3_expansion_r1", "eq3_expansion_r2",
    "eq3_expansion_r3", "a4_specialized", "eq4", "eq4_expansion_r0",
    "eq4_expansion_r1", "eq4_expansion_r2", "eq4_expansion_r3", "eq5_check",
    "addendum_mzv_form", "two_one_eq3", "two_one_eq4", "theoremA_i",
    "theoremA_ii",
]


@pytest.fixture(scope="module")
def vctx():
    return PrecisionContext(digits=30, tol=1e-11)


def test_registry_contents():
    regs = list_identities()
    assert [d.id for d in regs] == EXPECTED_IDS
    assert len(regs) == 26
    assert "Eq. (1)" in get_identity("eq1").anchor
    assert "cyclic" in get_identity("a2_cyclic").anchor
    assert "Addendum" in get_identity("two_one_eq3").anchor
    assert "Theorem A (i)" == get_identity("theoremA_i").anchor


def test_registry_schemas_have_defaults():
    for desc in list_identities():
        assert desc.default_grid, desc.id
        assert desc.schema_text()


def test_verify_eq1_s1(vctx):
    res = verify("eq1", {"s": 1}, vctx)
    assert res.passed
    # LHS = 3 zeta(3), RHS = 3 zeta-star(3)
    want = 3 * zeta(3, vctx).mpf
    assert abs(res.lhs_value.mpf - want) < 1e-20
    assert abs(res.rhs_value.mpf - want) < 1e-11
    assert res.abs_diff.mpf < 1e-12


def test_verify_a2_cyclic_s2(vctx):
    res = verify("a2_cyclic", {"s": 2}, vctx)
    assert res.passed
    want = 3 * zeta(4, vctx).mpf
    assert abs(res.lhs_value.mpf - want) < 1e-20


def test_verify_two_one(vctx):
    res = verify("two_one_eq3", {"r": 1, "s": 2}, vctx)
    assert res.passed
    assert res.abs_diff.mpf <= res.tolerance.mpf


def test_verify_unknown_identity(vctx):
    with pytest.raises(ConfigurationError):
        verify("bogus", {}, vctx)


def test_verify_rejects_out_of_schema_params(vctx):
    with pytest.raises(ConfigurationError):
        verify("eq1", {"s": 99}, vctx)
    with pytest.raises(ConfigurationError):
        verify("eq1", {"q": 1}, vctx)
    with pytest.raises(ConfigurationError):
        verify("eq1", {}, vctx)
    with pytest.raises(ConfigurationError):
        verify("a3_specialized", {"s": 2, "alpha": "2.5"}, vctx)


def test_verify_suite_filter(vctx):
    results = verify_suite("remark1_*", {"s": [1, 2, 3]}, vctx)
    assert len(results) == 6
    assert all(r.passed for r in results)
    ids = {r.id for r in results}
    assert ids == {"remark1_even", "remark1_odd"}


def test_verify_suite_empty_match(vctx):
    with pytest.raises(ConfigurationError):
        verify_suite("nonexistent*", None, vctx)


def test_verify_suite_deterministic(vctx):
    a = verify_suite("remark1_even", {"s": [2]}, vctx)
    b = verify_suite("remark1_even", {"s": [2]}, vctx)
    assert a[0].lhs_value.decimal() == b[0].lhs_value.decimal()
    assert a[0].rhs_value.decimal() == b[0].rhs_value.decimal()
    assert a[0].abs_diff.decimal() == b[0].abs_diff.decimal()


def test_verify_suite_default_grid_order(vctx):
    results = verify_suite("eq4_expansion_r0", None, vctx)
    assert [r.params["s"] for r in results] == [1, 2]
    assert all(r.passed for r in results)


def test_verify_suite_expansion_family(vctx):
    results = verify_suite("eq4_expansion_*", {"s": [1, 2]}, vctx)
    assert len(results) == 8
    assert all(r.passed for r in results)


@pytest.mark.parametrize("r,s", [(0, 2), (1, 2), (2, 3), (3, 2)])
def test_rhs_rewrites_agree_on_overlap(vctx, r, s):
    # the harmonic-product series, its signed two-one rewrite, and the
    # strict-sum form all evaluate the same quantity
    eq3 = verify("eq3", {"r": r, "s": s}, vctx)
    two_one = verify("two_one_eq3", {"r": r, "s": s}, vctx)
    addendum = verify("addendum_mzv_form", {"r": r, "s": s}, vctx)
    assert abs((eq3.rhs_value - two_one.rhs_value).mpf) <= 1e-9
    assert abs((eq3.rhs_value - addendum.rhs_value).mpf) <= 1e-9
