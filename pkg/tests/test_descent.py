import pytest

from genus2descent.descent import (
    TORSION_CONSTANT,
    TORSION_QUOTIENT_TABLE,
    ClassGroupBounds,
    DescentState,
    InconsistentStateError,
    SearchBounds,
    candidate_classes,
    certify,
    certify_all,
    certify_sigma_shift,
    closure,
    coset_exclusions,
    filter_local_product,
    filter_real_product,
    filter_real_signs,
    filter_square_mod_p,
    generators,
    rank_from_class_groups,
    rank_result,
    run_descent,
    sides,
)
from genus2descent.family import specialize

PAIR0 = specialize(0)
SIDE_C, SIDE_CP = sides(PAIR0)


def test_candidate_classes():
    c = candidate_classes({2, 11, 2087})
    assert len(c) == 16
    assert c == closure([-1, 2, 11, 2087])
    assert candidate_classes({2}) == {1, -1, 2, -2}
    assert len(candidate_classes({2, 59, 10343})) == 16
    with pytest.raises(ValueError):
        candidate_classes({3})


def test_closure_and_generators():
    g = closure([2, 11])
    assert g == {1, 2, 11, 22}
    assert generators(g) == [2, 11]
    assert closure([2, 8]) == {1, 2}


def test_rank_formula():
    assert rank_from_class_groups(4, 2) == 2
    assert rank_from_class_groups(4, 4) == 4
    assert rank_from_class_groups(2, 2) == 0
    with pytest.raises(ValueError):
        rank_from_class_groups(3, 2)
    with pytest.raises(ValueError):
        rank_from_class_groups(1, 2)


def test_torsion_quotient_table():
    two, eps, phi_q, eps_q = zip(*TORSION_QUOTIENT_TABLE)
    assert len(TORSION_QUOTIENT_TABLE) == 5
    for row in TORSION_QUOTIENT_TABLE:
        assert row[0] * row[2] ** 2 * row[3] == TORSION_CONSTANT == 2**4


def test_square_mod_p_filter():
    r = PAIR0.r
    assert filter_square_mod_p(r, SIDE_C)
    assert filter_square_mod_p(-r, SIDE_C)
    for D in (11, -11, 2, -2, 22, -22):
        assert filter_square_mod_p(D, SIDE_CP), D
    assert filter_square_mod_p(r, SIDE_CP) is None
    # F4 alone is not enough: F2 mod r is also checked
    assert "neither F2 nor F4" in filter_square_mod_p(r, SIDE_C)
    assert filter_square_mod_p(1, SIDE_C) is None
    assert filter_square_mod_p(-1, SIDE_C) is None


def test_real_signs_filter():
    assert filter_real_signs(-1, SIDE_C)
    assert filter_real_signs(PAIR0.r, SIDE_C)
    assert filter_real_signs(2, SIDE_C) is None
    # C': F2' = (X - 1)(X - 2) has constant term of the same sign as its lc
    assert filter_real_signs(-1, SIDE_CP) is None


def test_certificates_n0():
    c2 = certify(2, SIDE_C)
    assert c2.kind == "DiscF2"
    c22 = certify(22, SIDE_C)
    assert c22.kind == "QuarticSplit"
    cr = certify(PAIR0.r, SIDE_CP)
    assert cr is not None
    assert certify(11, SIDE_C) is None
    assert certify(-1, SIDE_C) is None


def test_certify_all_records_both_cheap_certificates():
    kinds = [c.kind for c in certify_all(2, SIDE_C, SearchBounds())]
    assert kinds[0] == "DiscF2"


def test_sigma_shift_search_agrees_with_cheaper_routes():
    c = certify_sigma_shift(2, SIDE_C, SearchBounds(20))
    assert c is None or c.D == 2


def _state(lowI, upI, lowIp, upIp):
    return DescentState(ClassGroupBounds(frozenset(lowI), frozenset(upI)), ClassGroupBounds(frozenset(lowIp), frozenset(upIp)))


def test_local_product_at_q():
    cands = candidate_classes({2, 11, 2087})
    st = _state(closure([2, 11]), cands, {1}, cands)
    ex = {(s, D) for s, D, _ in filter_local_product(st, 11)}
    assert ("I'", -1) in ex
    assert ("I'", PAIR0.r) not in ex
    assert ("I'", -PAIR0.r) in ex


def test_local_product_trivial_state():
    cands = candidate_classes({2, 11, 2087})
    st = _state({1}, cands, {1}, cands)
    for place in (2, 11, 2087, "inf"):
        assert filter_local_product(st, place) == []


def test_real_product():
    cands = candidate_classes({2, 11, 2087})
    st = _state({1, -1}, cands, {1}, cands)
    ex = filter_real_product(st)
    assert {D for s, D, _ in ex if s == "I'"} == {D for D in cands if D < 0}
    bad = _state({1, -1}, cands, {1, -2087}, cands)
    with pytest.raises(InconsistentStateError):
        filter_real_product(bad)


def test_coset_rule():
    st = _state({1, 2}, {1, 2, 11, 3}, {1}, {1})
    ex = {(s, D) for s, D, _ in coset_exclusions(st)}
    assert ex == {("I", 11), ("I", 3)}


def test_bounds_invariants():
    with pytest.raises(InconsistentStateError):
        ClassGroupBounds(frozenset({1, 2}), frozenset({1})).check("I")
    with pytest.raises(InconsistentStateError):
        ClassGroupBounds(frozenset({1, 2, 3}), frozenset({1, 2, 3})).check("I")


def test_rank_interval():
    st = _state({1, 2}, {1, 2, 11, 22}, {1, -2087}, {1, -2087})
    r = rank_result(st)
    assert not r.exact and r.rank is None
    assert (r.rank_lower, r.rank_upper) == (0, 2)


@pytest.mark.parametrize("n,q,r", [(0, 11, -2087), (6, 59, -10343), (9, 83, -7559)])
def test_run_descent(n, q, r):
    state, rank = run_descent(specialize(n))
    assert rank.exact and rank.rank == 2
    assert state.boundsI.lower == state.boundsI.upper == closure([2, q])
    assert state.boundsIprime.lower == state.boundsIprime.upper == closure([r])
    log = state.canonical_log()
    assert log == sorted(log, key=lambda e: e.sort_key())
    for e in log:
        assert e.rule and e.detail
        if e.action == "exclude" and e.rule in ("square-mod-p", "local-product", "real-product"):
            assert any(ch.isdigit() for ch in e.detail) or "inf" in e.detail


def test_descent_log_is_deterministic():
    a = run_descent(specialize(0))[0].as_dict()
    b = run_descent(specialize(0))[0].as_dict()
    assert a == b
