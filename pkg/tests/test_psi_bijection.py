import pytest

from affine_walls.cartan_data import AffineType, ClassicalWeight
from affine_walls.coordinate_crystal import enumerate_crystal, find_b_lambda, parse
from affine_walls.psi_bijection import (
    LabelError,
    bracket_of_coord,
    coord_of_bracket,
    enumerate_slices,
    parse_label,
    psi,
    psi_inverse,
    verify_intertwine,
)
from affine_walls.slice_crystal import add_delta, normalize

B3 = AffineType.parse("B1:3")


@pytest.mark.parametrize(
    "coord,label",
    [
        ("1,0,0|0|0,0,1", "[0,1,0|0|0,1,0]"),  # x_1 and xbar_1 fold into index 2
        ("0,1,0|0|0,0,1", "[0,1,0|0|0,0,1]"),
    ],
)
def test_b3_labels(coord, label):
    assert bracket_of_coord(parse(B3, 2, coord)).text() == label


def test_a2odd_label_is_identity_when_nothing_folds():
    t = AffineType.parse("A2:5")
    assert bracket_of_coord(parse(t, 3, "3,0,0|0,0,0")).text() == "[3,0,0|0|0,0,0]"


def test_label_parse_round_trip():
    for b in enumerate_crystal(B3, 2):
        lbl = bracket_of_coord(b)
        assert parse_label(B3, 2, lbl.text()) == lbl
        assert coord_of_bracket(lbl) == b


def test_label_parse_rejects():
    with pytest.raises(LabelError):
        parse_label(B3, 2, "[0,1,0|0|0,0]")


@pytest.mark.parametrize("name,lev", [("B1:3", 1), ("B1:3", 2), ("B1:3", 3), ("D2:3", 1), ("D2:3", 2),
                                      ("C1:2", 2), ("A2:2", 2), ("A1:2", 2)])
def test_round_trip(name, lev):
    t = AffineType.parse(name)
    elems = enumerate_crystal(t, lev)
    for b in elems:
        assert psi_inverse(psi(b)) == b
        assert psi_inverse(add_delta(psi(b))) == b
    assert len(enumerate_slices(t, lev)) == len(elems)


@pytest.mark.parametrize("name,lev", [("B1:3", 3), ("A2:2", 2), ("C1:2", 2)])
def test_intertwine(name, lev):
    rep = verify_intertwine(AffineType.parse(name), lev)
    assert rep.ok, rep.counterexamples[:5]
    assert rep.checked > 0


def test_ground_element_of_3lambda0():
    b = find_b_lambda(B3, 3, ClassicalWeight((3, 0, 0, 0)))
    # three lone 1-halves
    assert normalize(psi(b)).text() == "B01:2,2,2"
