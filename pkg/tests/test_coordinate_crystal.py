import pytest
from oracles import FROZEN_SIZES, brute_force_size, family_of, two_factor_acting

from affine_walls.cartan_data import AffineType, ClassicalWeight, dominant_weights
from affine_walls.coordinate_crystal import (
    CoordError,
    check_perfect,
    cwt_coord,
    e_coord,
    enumerate_crystal,
    eps_coord,
    eps_vector,
    f_coord,
    find_b_lambda,
    find_b_upper,
    ground_chain,
    parse,
    phi_coord,
    phi_vector,
    tensor_e,
    tensor_f,
)

GRID = [("A1:2", 1), ("A1:2", 2), ("B1:3", 1), ("B1:3", 2), ("B1:3", 3), ("C1:2", 1), ("C1:2", 2),
        ("A2:5", 1), ("A2:5", 2), ("A2:2", 1), ("A2:2", 2), ("D2:3", 1), ("D2:3", 2)]

B3 = AffineType.parse("B1:3")


def test_a1_level_one():
    t = AffineType.parse("A1:1")
    assert [b.text() for b in enumerate_crystal(t, 1)] == ["0,1", "1,0"]


@pytest.mark.parametrize("key,size", sorted(FROZEN_SIZES.items()))
def test_frozen_sizes(key, size):
    name, lev = key
    assert len(enumerate_crystal(AffineType.parse(name), lev)) == size


@pytest.mark.parametrize("name,lev", GRID)
def test_size_matches_brute_force(name, lev):
    fam, n = family_of(name)
    assert len(enumerate_crystal(AffineType.parse(name), lev)) == brute_force_size(fam, n, lev)


@pytest.mark.parametrize("name,lev", GRID)
def test_canonical_order(name, lev):
    elems = enumerate_crystal(AffineType.parse(name), lev)
    keys = [b.flat() for b in elems]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@pytest.mark.parametrize("name,lev", GRID)
def test_text_round_trip(name, lev):
    t = AffineType.parse(name)
    for b in enumerate_crystal(t, lev):
        assert parse(t, lev, b.text()) == b


def test_parse_rejects():
    with pytest.raises(CoordError):
        parse(B3, 1, "1,0,0|1|0,0,0")
    with pytest.raises(CoordError):
        parse(B3, 1, "1,0,0|0,0,0")
    with pytest.raises(CoordError):
        parse(B3, 1, "a,0,0|0|0,0,0")


# closed-form B_3 values
def test_b3_f0_branch():
    assert f_coord(0, parse(B3, 2, "0,1,0|0|0,0,1")) == parse(B3, 2, "0,2,0|0|0,0,0")


def test_b3_e3_x0_one():
    assert e_coord(3, parse(B3, 2, "0,0,0|1|0,0,1")) == parse(B3, 2, "0,0,1|0|0,0,1")


def test_b3_eps3():
    assert eps_coord(3, parse(B3, 2, "0,0,0|1|1,0,0")) == 3


def test_b3_phi0():
    assert phi_coord(0, parse(B3, 2, "0,1,0|0|0,0,1")) == 1


def test_b3_cwt():
    # evaluating every phi/eps closed form at this element
    assert cwt_coord(parse(B3, 2, "0,1,0|0|0,0,1")) == ClassicalWeight((0, -2, 1, 0))


@pytest.mark.parametrize("name,lev", GRID)
def test_operators_inverse_and_closed(name, lev):
    t = AffineType.parse(name)
    elems = set(enumerate_crystal(t, lev))
    for b in elems:
        for i in t.index_set:
            fb = f_coord(i, b)
            if fb is not None:
                assert fb in elems
                assert e_coord(i, fb) == b


@pytest.mark.parametrize("name,lev", GRID)
def test_string_lengths(name, lev):
    t = AffineType.parse(name)
    for b in enumerate_crystal(t, lev):
        for i in t.index_set:
            k, cur = 0, f_coord(i, b)
            while cur is not None:
                k, cur = k + 1, f_coord(i, cur)
            assert k == phi_coord(i, b)


def test_two_factor_rule_b3_level_one():
    elems = enumerate_crystal(B3, 1)
    for b1 in elems:
        for b2 in elems:
            for i in B3.index_set:
                f_side, e_side = two_factor_acting(eps_coord(i, b1), phi_coord(i, b1), eps_coord(i, b2), phi_coord(i, b2))
                got = tensor_f(i, b1, b2)
                if f_side is None:
                    assert got is None
                else:
                    assert got == ((f_coord(i, b1), b2) if f_side == "L" else (b1, f_coord(i, b2)))
                got = tensor_e(i, b1, b2)
                if e_side is None:
                    assert got is None
                else:
                    assert got == ((e_coord(i, b1), b2) if e_side == "L" else (b1, e_coord(i, b2)))


@pytest.mark.parametrize("name,lev", GRID)
def test_b_lambda_unique(name, lev):
    t = AffineType.parse(name)
    for lam in dominant_weights(t, lev):
        assert phi_vector(find_b_lambda(t, lev, lam)) == lam
        assert eps_vector(find_b_upper(t, lev, lam)) == lam


def test_b_3lambda0():
    b = find_b_lambda(B3, 3, ClassicalWeight((3, 0, 0, 0)))
    assert b.text() == "0,0,0|0|0,0,3"
    assert [c for c in enumerate_crystal(B3, 3) if phi_vector(c) == ClassicalWeight((3, 0, 0, 0))] == [b]


@pytest.mark.parametrize("name,lev", [("B1:3", 1), ("C1:2", 1), ("D2:3", 2)])
def test_perfect(name, lev):
    rep = check_perfect(AffineType.parse(name), lev)
    assert rep.ok, rep.as_dict()


@pytest.mark.parametrize("name,lev", GRID)
def test_ground_chain(name, lev):
    t = AffineType.parse(name)
    n = len(enumerate_crystal(t, lev))
    for lam in dominant_weights(t, lev):
        ch = ground_chain(t, lev, lam)
        assert ch[0] == find_b_lambda(t, lev, lam)
        assert len(ch.elements) <= n
        for k in range(2 * len(ch.elements) + 2):
            assert phi_vector(ch[k + 1]) == eps_vector(ch[k])
