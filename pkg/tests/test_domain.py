import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridball.domain import RectangularDomain, entropy, enumerate_ball, hamming_distance, vol


def test_construction_normalizes(f5):
    dom = RectangularDomain(f5, [[f5.element(3), f5.element(1), f5.element(3)], [f5.element(2)]])
    assert [[x.index for x in s] for s in dom.sets] == [[1, 3], [2]]
    assert dom.size == 2
    assert not dom.contains_zero and not dom.is_power


def test_construction_flags(f5):
    dom = RectangularDomain(f5, [[f5.zero, f5.element(2)], [f5.zero, f5.element(2)]])
    assert dom.contains_zero and dom.is_power
    assert dom.zero_paired_vertex() == (f5.element(2), f5.element(2))
    assert RectangularDomain(f5, [[f5.one, f5.element(2)]]).zero_paired_vertex() is None


def test_construction_rejects_empty(f5):
    with pytest.raises(ValueError):
        RectangularDomain(f5, [[f5.one], []])


def test_contains_and_points(f3):
    dom = RectangularDomain(f3, [[f3.one, f3.element(2)], [f3.zero]])
    assert dom.contains((f3.one, f3.zero))
    assert not dom.contains((f3.zero, f3.zero))
    assert len(list(dom.points())) == 2


def test_json_round_trip(f9):
    dom = RectangularDomain(f9, [[f9.element(4), f9.element(7)], [f9.element(1)]])
    blob = dom.to_json_dict()
    assert blob == {"field": "GF(3^2)", "sets": [[4, 7], [1]]}
    assert RectangularDomain.from_json_dict(blob) == dom


def test_hamming_examples(f5):
    a = (f5.one, f5.element(2), f5.element(3))
    assert hamming_distance(a, a) == 0
    b = (f5.element(2), f5.element(3), f5.element(4))
    assert hamming_distance(a, b) == 3
    with pytest.raises(ValueError):
        hamming_distance(a, a[:2])


def test_hamming_triangle_inequality():
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randint(1, 8)
        x, y, z = (tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(3))
        assert hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z)


def test_ball_radius_zero_is_center(f5):
    dom = RectangularDomain.power(f5, [f5.one, f5.element(2), f5.element(3)], 3)
    center = (f5.one, f5.element(2), f5.one)
    assert list(enumerate_ball(center, 0, dom)) == [center]


def test_ball_radius_n_is_whole_domain(f5):
    dom = RectangularDomain.power(f5, [f5.one, f5.element(2), f5.element(3)], 3)
    center = (f5.one,) * 3
    pts = list(enumerate_ball(center, 5, dom))
    assert len(pts) == dom.size == 27
    assert set(pts) == set(dom.points())


def test_ball_count_two_element_cube(f5):
    # {1,2}^3, radius 1: the center plus one change in each of 3 positions
    dom = RectangularDomain.power(f5, [f5.one, f5.element(2)], 3)
    pts = list(enumerate_ball((f5.one,) * 3, 1, dom))
    assert len(pts) == 4 == vol(2, 3, 1)


def test_ball_deduplicated_ordered_and_inside(f7):
    rng = random.Random(19)
    for _ in range(25):
        nvars = rng.randint(1, 4)
        sets = []
        for _ in range(nvars):
            size = rng.randint(1, 4)
            sets.append([f7.element(i) for i in rng.sample(range(7), size)])
        dom = RectangularDomain(f7, sets)
        center = tuple(rng.choice(s) for s in dom.sets)
        radius = rng.randint(0, nvars)
        pts = list(enumerate_ball(center, radius, dom))
        assert len(pts) == len(set(pts))
        dists = [hamming_distance(center, p) for p in pts]
        assert all(d <= radius for d in dists)
        assert dists == sorted(dists)  # radius-ordered enumeration
        assert all(dom.contains(p) for p in pts)
        expected = {p for p in dom.points() if hamming_distance(center, p) <= radius}
        assert set(pts) == expected


def test_ball_validates_center_and_radius(f5):
    dom = RectangularDomain.power(f5, [f5.one], 2)
    with pytest.raises(ValueError):
        list(enumerate_ball((f5.element(2), f5.one), 1, dom))
    with pytest.raises(ValueError):
        list(enumerate_ball((f5.one, f5.one), -1, dom))


def test_ball_size_vs_vol(f7):
    rng = random.Random(23)
    for _ in range(20):
        nvars = rng.randint(1, 4)
        size = rng.randint(2, 4)
        sets = [[f7.element(i) for i in rng.sample(range(7), size)] for _ in range(nvars)]
        dom = RectangularDomain(f7, sets)
        center = tuple(rng.choice(s) for s in dom.sets)
        k = rng.randint(0, nvars)
        count = sum(1 for _ in enumerate_ball(center, k, dom))
        assert count == vol(size, nvars, k)  # equal set sizes: exact equality


def test_vol_examples():
    assert vol(4, 6, 0) == 1
    assert vol(2, 3, 1) == 4
    assert vol(3, 4, 2) == 33
    assert vol(3, 4, 2.9) == 33  # radius is floored
    with pytest.raises(ValueError):
        vol(0, 3, 1)
    with pytest.raises(ValueError):
        vol(2, -1, 1)
    with pytest.raises(ValueError):
        vol(2, 3, -0.5)


@given(st.integers(1, 6), st.integers(0, 10))
def test_vol_full_radius_is_grid_size(s, n):
    assert vol(s, n, n) == s**n


def test_entropy_endpoints_and_max():
    assert entropy(2, 0.0) == 0.0
    assert entropy(2, 1.0) == 0.0
    assert entropy(5, 0.0) == 0.0
    assert abs(entropy(2, 0.5) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        entropy(2, 1.5)
    with pytest.raises(ValueError):
        entropy(1, 0.5)


def test_entropy_matches_ball_volume_asymptotics():
    # log2 Vol(2, 20, 10) / 20 should approximate H_2(1/2) = 1 within 0.05
    approx = math.log2(vol(2, 20, 10)) / 20
    assert abs(entropy(2, 0.5) - approx) <= 0.05


@given(st.integers(2, 9), st.floats(0.001, 0.999))
def test_entropy_positive_interior(s, x):
    assert entropy(s, x) > 0.0
