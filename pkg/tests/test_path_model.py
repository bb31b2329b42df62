import pytest

from affine_walls.cartan_data import AffineType, ClassicalWeight, dominant_weights
from affine_walls.coordinate_crystal import find_b_lambda
from affine_walls.path_model import (
    PathError,
    e_path,
    f_path,
    ground_state_path,
    parse_path,
    phi_map,
    phi_map_inverse,
    wt_path,
)
from affine_walls.suites import grid_points
from affine_walls.young_wall import ground_state_wall, wt_wall

B3 = AffineType.parse("B1:3")
LAM = ClassicalWeight((3, 0, 0, 0))


def _grounds():
    for t, lev in grid_points():
        for lam in dominant_weights(t, lev):
            yield t, lam


@pytest.mark.parametrize("t,lam", list(_grounds()), ids=str)
def test_ground_path(t, lam):
    p = ground_state_path(t, lam)
    assert p.stable_index == 0
    assert p.factor(0) == find_b_lambda(t, p.level, lam)
    for i in t.index_set:
        assert (f_path(i, p) is not None) == (lam.coeffs[i] > 0)
        assert e_path(i, p) is None
    assert phi_map(ground_state_wall(t, lam)) == p


def _bfs(t, lam, depth):
    seen = [ground_state_path(t, lam)]
    frontier = list(seen)
    for _ in range(depth):
        nxt = []
        for p in frontier:
            for i in t.index_set:
                q = f_path(i, p)
                if q is not None and q not in nxt:
                    nxt.append(q)
        seen += nxt
        frontier = nxt
    return seen


@pytest.mark.parametrize("name,lam", [("B1:3", "3,0,0,0"), ("C1:2", "1,1,0"), ("D2:3", "1,0,1")])
def test_f_then_e(name, lam):
    t = AffineType.parse(name)
    for p in _bfs(t, ClassicalWeight.parse(lam), 4):
        for i in t.index_set:
            q = f_path(i, p)
            if q is not None:
                assert e_path(i, q) == p


@pytest.mark.parametrize("name,lam", [("B1:3", "3,0,0,0"), ("C1:2", "1,1,0"), ("A2:2", "0,1")])
def test_phi_round_trip(name, lam):
    t = AffineType.parse(name)
    for p in _bfs(t, ClassicalWeight.parse(lam), 4):
        w = phi_map_inverse(p)
        assert phi_map(w) == p
        assert wt_wall(w) == wt_path(p)


def test_text_round_trip_keeps_weight():
    for p in _bfs(B3, LAM, 5):
        q = parse_path(B3, p.text())
        assert q == p and wt_path(q) == wt_path(p)


def test_first_factor_text():
    p = f_path(0, ground_state_path(B3, LAM))
    # x_2 >= xbar_2, so f_0 raises x_2 and lowers xbar_1
    assert p.text() == "lambda=3,0,0,0; N=1; p=0,1,0|0|0,0,2"


@pytest.mark.parametrize(
    "text",
    [
        "lambda=3,0,0,0; N=2; p=0,0,1|0|0,0,2",  # N disagrees with the factor list
        "lambda=3,0,0,0; N=1; p=0,0,0|0|0,0,3",  # the ground element, so N is not minimal
        "lambda=3,0,0,0; N=1; p=9,9|0",
        "garbage",
    ],
)
def test_parse_rejects(text):
    with pytest.raises(PathError):
        parse_path(B3, text)
