import pytest

from affine_walls.cartan_data import (
    AffineType,
    AffineWeight,
    ClassicalWeight,
    classical_root,
    dominant_weights,
    simple_root,
)
from affine_walls.slice_crystal import add_delta
from affine_walls.suites import grid_points
from affine_walls.young_wall import (
    WallError,
    acting_column,
    column_signature,
    cwt_wall,
    e_wall,
    eps_wall,
    f_wall,
    ground_state_wall,
    is_proper,
    is_reduced,
    proper_problem,
    parse_wall,
    phi_wall,
    reduce,
    wt_wall,
)

B3 = AffineType.parse("B1:3")
LAM = ClassicalWeight((3, 0, 0, 0))


def _grounds():
    for t, lev in grid_points():
        for lam in dominant_weights(t, lev):
            yield t, lam


@pytest.mark.parametrize("t,lam", list(_grounds()), ids=str)
def test_ground_wall(t, lam):
    y = ground_state_wall(t, lam)
    assert is_proper(y) and is_reduced(y)
    for i in t.index_set:
        assert eps_wall(i, y) == 0
        assert phi_wall(i, y) == lam.coeffs[i]
    assert wt_wall(y) == AffineWeight.from_classical(lam)


def test_b3_ground_columns():
    y = ground_state_wall(B3, LAM)
    assert [y.column(k).text() for k in range(4)] == ["B01:2,2,2", "B10:1,1,1", "B01:2,2,2", "B10:1,1,1"]
    assert column_signature(y, 0, 0) == (0, 3)


def test_b3_first_step():
    y = ground_state_wall(B3, LAM)
    assert acting_column(0, y, False) == 0
    w = f_wall(0, y)
    assert w.text() == "lambda=3,0,0,0; cols=B01:2,2,3"
    assert e_wall(0, w) == y
    assert all(f_wall(i, y) is None for i in (1, 2, 3))
    assert cwt_wall(w) == LAM - classical_root(B3, 0)


def test_parse_round_trip():
    w = f_wall(0, ground_state_wall(B3, LAM))
    assert parse_wall(B3, w.text()) == w


@pytest.mark.parametrize(
    "text",
    [
        "lambda=3,0,0,0; cols=B10:2,2,3",  # wrong variant for column 0
        "lambda=3,0,0,0; cols=B01:2,3",  # wrong layer count
        "lambda=3,0,0; cols=",
        "lambda=-1,0,0,1; cols=",  # not dominant
        "nonsense",
    ],
)
def test_parse_rejects(text):
    with pytest.raises(WallError):
        parse_wall(B3, text)


def test_improper_wall():
    # raising column 1 above column 0 leaves free space to its right
    y = ground_state_wall(B3, LAM)
    w = y.replace(1, add_delta(y.column(1)))
    assert not is_proper(w)
    assert proper_problem(w) == "free space to the right of column 1"


def test_reduce_idempotent():
    y = ground_state_wall(B3, LAM)
    w = y
    for i in (0, 2, 3, 3, 2):
        nxt = f_wall(i, w)
        if nxt is not None:
            w = nxt
    assert reduce(w) == w and reduce(reduce(w)) == reduce(w)


def test_f_then_e_on_bfs():
    y = ground_state_wall(B3, LAM)
    frontier = [y]
    for _ in range(4):
        nxt = []
        for w in frontier:
            for i in B3.index_set:
                fw = f_wall(i, w)
                if fw is not None:
                    assert e_wall(i, fw) == w
                    assert is_proper(fw) and is_reduced(fw)
                    assert wt_wall(fw) == wt_wall(w) - simple_root(B3, i)
                    nxt.append(fw)
        frontier = nxt
