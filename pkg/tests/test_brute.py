import json
import random
from itertools import product

import pytest

from gridball import brute
from gridball.brute import (
    AbsorbingInstance,
    CounterexampleError,
    HypothesisError,
    alternating_difference,
    check_comb_property,
    density_bound_report,
    evaluate_on_grid,
    find_covering_tuple,
    is_absorbing,
    make_absorbing,
    nonzero_count,
    nonzero_set,
    run_verification_suite,
    verify_2elements_density,
    verify_coeffs2,
    verify_coeffs_bound,
    verify_density_bounds,
    verify_kw_bound,
    verify_redcoeffs,
)
from gridball.domain import RectangularDomain
from gridball.gf import subgroup_of_order
from gridball.poly import SparsePoly


def _vanisher(field, nvars, point):
    p = SparsePoly.one(field, nvars)
    for i, ai in enumerate(point):
        p = p * (
            SparsePoly.variable(field, nvars, i) - SparsePoly.constant(field, nvars, ai)
        )
    return p


# -- grid evaluation ---------------------------------------------------------------


def test_grid_matches_pointwise(f9):
    rng = random.Random(2)
    for _ in range(20):
        nvars = rng.randint(1, 3)
        sets = [
            [f9.element(i) for i in rng.sample(range(9), rng.randint(1, 4))]
            for _ in range(nvars)
        ]
        dom = RectangularDomain(f9, sets)
        p = brute.random_sparse_poly(rng, f9, nvars, 5, 10, min_terms=0)
        arr = evaluate_on_grid(p, dom)
        for pos in product(*(range(len(s)) for s in dom.sets)):
            x = tuple(dom.sets[i][j] for i, j in enumerate(pos))
            assert arr[pos] == p.evaluate(x).index


def test_grid_cap(f7):
    dom = RectangularDomain.power(f7, list(f7.elements()), 8)  # 7^8 > 10^6
    with pytest.raises(ValueError):
        evaluate_on_grid(SparsePoly.one(f7, 8), dom)


def test_nonzero_set_constant(f5):
    dom = RectangularDomain.power(f5, [f5.one, f5.element(2)], 3)
    assert nonzero_set(SparsePoly.one(f5, 3), dom) == set(dom.points())


def test_nonzero_set_vanisher_leaves_opposite_corner(f5):
    a = (f5.one, f5.element(2))
    b = (f5.element(3), f5.element(4))
    dom = RectangularDomain(f5, [[a[0], b[0]], [a[1], b[1]]])
    w = nonzero_set(_vanisher(f5, 2, a), dom)
    assert w == {b}


def test_nonzero_count_double_evaluation(f7):
    rng = random.Random(4)
    for _ in range(15):
        nvars = rng.randint(1, 3)
        dom = RectangularDomain.power(
            f7, [f7.element(i) for i in rng.sample(range(7), 3)], nvars
        )
        p = brute.random_sparse_poly(rng, f7, nvars, 5, 8, min_terms=0)
        recount = sum(1 for x in dom.points() if p.evaluate(x).index != 0)
        assert nonzero_count(p, dom) == recount == len(nonzero_set(p, dom))


def test_nearest_nonzero_distance(f5):
    target = (f5.one, f5.element(2), f5.element(3))
    dom = RectangularDomain(
        f5, [[f5.one, f5.element(2)], [f5.element(2), f5.element(3)], [f5.element(3), f5.element(4)]]
    )
    p = _vanisher(
        f5, 3, (f5.element(2), f5.element(3), f5.element(4))
    )  # nonzero only at `target`
    anchor = (f5.element(2), f5.element(2), f5.element(3))
    assert brute.nearest_nonzero_distance(p, dom, anchor) == 1
    zero = SparsePoly.zero(f5, 3)
    assert brute.nearest_nonzero_distance(zero, dom, anchor) is None


# -- absorbing ------------------------------------------------------------------------


def test_is_absorbing_trivials(f5):
    a = (f5.one, f5.element(2))
    dom = RectangularDomain(f5, [[f5.one, f5.element(3)], [f5.element(2), f5.element(4)]])
    assert is_absorbing(SparsePoly.zero(f5, 2), a, dom)
    assert is_absorbing(_vanisher(f5, 2, a), a, dom)
    assert not is_absorbing(SparsePoly.one(f5, 2), a, dom)
    with pytest.raises(ValueError):
        is_absorbing(SparsePoly.one(f5, 2), (f5.zero, f5.zero), dom)


def test_make_absorbing_canonical(f5):
    a = (f5.one, f5.element(2))
    b = (f5.element(3), f5.element(4))
    dom = RectangularDomain(f5, [[a[0], b[0]], [a[1], b[1]]])
    f = make_absorbing(SparsePoly.one(f5, 2), a, dom)
    assert is_absorbing(f, a, dom)
    assert nonzero_set(f, dom) == {b}
    assert make_absorbing(SparsePoly.zero(f5, 2), a, dom).is_zero()


def test_make_absorbing_random(f7):
    rng = random.Random(8)
    for _ in range(40):
        nvars = rng.randint(1, 3)
        sets = [
            [f7.element(i) for i in rng.sample(range(7), rng.randint(2, 4))]
            for _ in range(nvars)
        ]
        dom = RectangularDomain(f7, sets)
        a = tuple(rng.choice(s) for s in dom.sets)
        g = brute.random_sparse_poly(rng, f7, nvars, 4, 6, min_terms=0)
        f = make_absorbing(g, a, dom)
        assert is_absorbing(f, a, dom)
        assert all(f.degree_in_variable(i) < len(sets[i]) for i in range(nvars))


# -- alternating difference --------------------------------------------------------------


def test_alternating_difference_one_variable(f7):
    a, b = f7.element(2), f7.element(5)
    p = SparsePoly(f7, 1, {(1,): f7.one, (0,): -a})
    assert alternating_difference(p, (a,), (b,)) == b - a


def test_alternating_difference_absorbing_collapses(f5):
    rng = random.Random(12)
    for _ in range(30):
        nvars = rng.randint(1, 4)
        sets = [[f5.element(i) for i in rng.sample(range(5), 2)] for _ in range(nvars)]
        dom = RectangularDomain(f5, sets)
        a = tuple(rng.choice(s) for s in dom.sets)
        b = tuple(s[0] if s[1] == ai else s[1] for s, ai in zip(dom.sets, a))
        f = make_absorbing(brute.random_sparse_poly(rng, f5, nvars, 3, 4), a, dom)
        assert alternating_difference(f, a, b) == f.evaluate(b)


def test_alternating_difference_missing_variable_kills_sum(f5):
    # any polynomial omitting a variable sums to zero over the box
    p = SparsePoly(f5, 2, {(2, 0): f5.element(3), (0, 0): f5.one})  # no X2
    a = (f5.one, f5.one)
    b = (f5.element(2), f5.element(3))
    assert alternating_difference(p, a, b).index == 0


def test_alternating_difference_linear(f7):
    rng = random.Random(14)
    for _ in range(20):
        nvars = rng.randint(1, 3)
        p = brute.random_sparse_poly(rng, f7, nvars, 4, 5, min_terms=0)
        q = brute.random_sparse_poly(rng, f7, nvars, 4, 5, min_terms=0)
        a = tuple(f7.element(rng.randrange(7)) for _ in range(nvars))
        b = tuple(f7.element(rng.randrange(7)) for _ in range(nvars))
        assert alternating_difference(p + q, a, b) == alternating_difference(
            p, a, b
        ) + alternating_difference(q, a, b)


# -- covering and exchange combinatorics --------------------------------------------------------------------


def test_find_covering_tuple_trivials():
    assert find_covering_tuple([], (2, 2)) == (0, 0)
    assert find_covering_tuple([(0, 0)], (2, 2)) == (0, 0)
    assert find_covering_tuple([(1, 1)], (2, 2)) == (0, 1)  # lexicographic scan


def test_find_covering_tuple_random_guaranteed():
    rng = random.Random(16)
    for _ in range(60):
        tuples, radii = brute.gen_covering_instance(rng)
        assert find_covering_tuple(tuples, radii) is not None


def test_check_comb_property_box_and_hole():
    box = set(product((0, 1), repeat=3))
    assert check_comb_property(box, [(0, 1)] * 3)
    holey = set(box) - {(1, 1, 1)}
    assert not check_comb_property(holey, [(0, 1)] * 3)
    assert check_comb_property(set(), [(0, 1)] * 3)  # vacuous
    with pytest.raises(ValueError):
        check_comb_property({(0, 7)}, [(0, 1)] * 2)


# -- bound verifiers --------------------------------------------------------------------------


def test_verify_coeffs_bound_gf4_canonical(f4):
    w, w2 = f4.element(2), f4.element(3)
    dom = RectangularDomain.power(f4, [w, w2], 2)
    a = (w, w)
    f = make_absorbing(SparsePoly.one(f4, 2), a, dom)
    inst = AbsorbingInstance(f, dom, a, (w2, w2))
    assert f.monomial_count() == 4  # 2^N, comfortably above (3/2)^N
    assert verify_coeffs_bound(inst, [3, 3])


def test_verify_coeffs_bound_order_two_tight(f5):
    # a = 1, b = 4 satisfy a^2 = b^2; the vanisher attains M = 2^N exactly
    n = 3
    a = (f5.one,) * n
    b = (f5.element(4),) * n
    dom = RectangularDomain(f5, [[x, y] for x, y in zip(a, b)])
    f = _vanisher(f5, n, a)
    assert f.monomial_count() == 2**n
    assert verify_coeffs_bound(AbsorbingInstance(f, dom, a), [2] * n)


def test_verify_coeffs_bound_one_variable(f7):
    a, b = f7.element(2), f7.element(4)  # 2^3 = 1 = 4^3 mod 7
    dom = RectangularDomain(f7, [[a, b]])
    f = SparsePoly(f7, 1, {(1,): f7.one, (0,): -a})
    assert verify_coeffs_bound(AbsorbingInstance(f, dom, (a,)), [3])


def test_verify_coeffs_bound_hypothesis_violations(f5):
    a = (f5.one, f5.one)
    b = (f5.element(4), f5.element(4))
    dom = RectangularDomain(f5, [[x, y] for x, y in zip(a, b)])
    good = _vanisher(f5, 2, a)
    with pytest.raises(HypothesisError):
        verify_coeffs_bound(AbsorbingInstance(good, dom, a), [3, 2])  # 1^3 != 4^3
    with pytest.raises(HypothesisError):
        verify_coeffs_bound(AbsorbingInstance(SparsePoly.one(f5, 2), dom, a), [2, 2])
    vanishes_at_b = good * _vanisher(f5, 2, b)
    with pytest.raises(HypothesisError):
        verify_coeffs_bound(AbsorbingInstance(vanishes_at_b, dom, a), [2, 2])
    zero_dom = RectangularDomain(f5, [[f5.zero, f5.one], [f5.one, f5.element(4)]])
    with pytest.raises(HypothesisError):
        verify_coeffs_bound(
            AbsorbingInstance(good, zero_dom, (f5.one, f5.one)), [2, 2]
        )


def test_verify_kw_bound_gf4(f4):
    s = subgroup_of_order(f4, 3)
    a = (f4.one, f4.element(2))
    f = make_absorbing(SparsePoly.one(f4, 2), a, RectangularDomain.power(f4, s, 2))
    assert verify_kw_bound(f, s, a)
    with pytest.raises(HypothesisError):
        verify_kw_bound(f, [f4.one, f4.element(2)], a)  # not a subgroup


def test_verify_kw_bound_gf7_orders(f7):
    rng = random.Random(18)
    for d in (2, 3, 6):
        s = subgroup_of_order(f7, d)
        dom = RectangularDomain.power(f7, s, 2)
        for _ in range(10):
            a = tuple(rng.choice(sorted(s, key=lambda e: e.index)) for _ in range(2))
            g = brute.random_sparse_poly(rng, f7, 2, 3, 6)
            f = make_absorbing(g, a, dom)
            if nonzero_count(f, dom):
                assert verify_kw_bound(f, s, a)


def test_verify_2elements_density(f5):
    n = 3
    dom = RectangularDomain(f5, [[f5.one, f5.element(4)]] * n)
    const = SparsePoly.constant(f5, n, f5.element(2))
    assert verify_2elements_density(const, dom, 2)
    tight = _vanisher(f5, n, (f5.element(4),) * n)  # single nonzero, M = 2^N
    assert verify_2elements_density(tight, dom, 2)
    with pytest.raises(HypothesisError):
        verify_2elements_density(const, dom, 3)  # 1^3 != 4^3
    with pytest.raises(HypothesisError):
        verify_2elements_density(SparsePoly.zero(f5, n), dom, 2)


def test_verify_density_bounds_single_monomial(f5):
    f = SparsePoly(f5, 2, {(3, 1): f5.element(2)})
    s = [f5.element(i) for i in (1, 2, 3, 4)]
    rep = density_bound_report(f, s, 2)
    assert rep["nonzeros"] == 16  # monomials never vanish off zero
    assert rep["radius"] == 0
    assert verify_density_bounds(f, s, 2)


def test_verify_density_bounds_worked_example(f4):
    n = 3
    f = SparsePoly(f4, n, {(2,) * n: f4.one})
    s = [f4.element(2), f4.element(3)]
    rep = density_bound_report(f, s, n)
    assert rep["nonzeros"] == 2**n  # everything is nonzero: |W| = s^N
    assert verify_density_bounds(f, s, n)


def test_verify_density_bounds_random(f5):
    rng = random.Random(20)
    s = [f5.element(i) for i in (1, 2, 3, 4)]
    done = 0
    while done < 30:
        f = brute.random_sparse_poly(rng, f5, 3, 6, 6)
        if nonzero_count(f, RectangularDomain.power(f5, s, 3)) == 0:
            continue
        assert verify_density_bounds(f, s, 3)
        done += 1


def test_verify_redcoeffs_canonical(f4):
    w, w2 = f4.element(2), f4.element(3)
    dom = RectangularDomain.power(f4, [w, w2], 2)
    f = _vanisher(f4, 2, (w, w))
    assert f.monomial_count() == 4
    assert verify_redcoeffs(f, dom, (w, w))
    too_high_degree = SparsePoly(f4, 2, {(2, 1): f4.one})
    with pytest.raises(HypothesisError):
        verify_redcoeffs(too_high_degree, dom, (w, w))


def test_verify_coeffs2_canonical(f5):
    n = 3
    a = (f5.element(2), f5.element(3), f5.element(4))
    dom = RectangularDomain(f5, [[f5.zero, x] for x in a])
    h = _vanisher(f5, n, a).scalar_mul(f5.element(2))
    origin = (f5.zero,) * n
    assert h.evaluate(origin).index != 0
    assert h.monomial_count() == 2**n
    assert verify_coeffs2(h, dom, a)
    with pytest.raises(HypothesisError):
        verify_coeffs2(_vanisher(f5, n, a) * SparsePoly.variable(f5, n, 0), dom, a)


# -- suite ---------------------------------------------------------------------------------------


def test_suite_small_run_passes_and_is_deterministic():
    rep1 = run_verification_suite(seed=7, per_theorem=8)
    rep2 = run_verification_suite(seed=7, per_theorem=8)
    assert rep1["all_pass"]
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)
    rep3 = run_verification_suite(seed=8, per_theorem=8)
    assert json.dumps(rep1, sort_keys=True) != json.dumps(rep3, sort_keys=True)


def test_counterexample_error_payload():
    err = CounterexampleError("bad", {"claimed": "x", "observed": {"y": 1}})
    assert json.loads(err.as_json()) == {"claimed": "x", "observed": {"y": 1}}
