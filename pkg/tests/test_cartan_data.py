import pytest

from affine_walls.cartan_data import (
    AffineType,
    AffineWeight,
    CartanError,
    ClassicalWeight,
    Family,
    cartan_matrix,
    classical_root,
    comarks,
    d0,
    dominant_weights,
    level,
    marks,
    simple_root,
    weighted_root_sum,
)

TYPES = ["A1:1", "A1:2", "A1:4", "B1:3", "B1:4", "C1:2", "C1:3", "A2:5", "A2:7", "A2:2", "A2:4", "D2:3", "D2:4"]


@pytest.mark.parametrize("name", TYPES)
def test_parse_round_trip(name):
    assert str(AffineType.parse(name)) == name


@pytest.mark.parametrize("bad", ["B1:2", "C1:1", "A2:3", "D2:2", "E1:6", "B3", ""])
def test_parse_rejects(bad):
    with pytest.raises(CartanError):
        AffineType.parse(bad)


def test_rank_conventions():
    assert AffineType.parse("A2:5") == AffineType(Family.A2odd, 3)
    assert AffineType.parse("A2:2") == AffineType(Family.A2even, 1)
    assert AffineType.parse("D2:3") == AffineType(Family.D2, 2)


def test_a1_matrix():
    assert cartan_matrix(AffineType.parse("A1:1")) == ((2, -2), (-2, 2))


def test_b3_marks():
    assert marks(AffineType.parse("B1:3")) == (1, 1, 2, 2)


@pytest.mark.parametrize("name", TYPES)
def test_kernels(name):
    t = AffineType.parse(name)
    a = cartan_matrix(t)
    m, c = marks(t), comarks(t)
    size = t.rank + 1
    assert all(sum(a[i][j] * m[j] for j in range(size)) == 0 for i in range(size))
    assert all(sum(c[i] * a[i][j] for i in range(size)) == 0 for j in range(size))


@pytest.mark.parametrize("name,want", [("B1:3", 1), ("A2:2", 2), ("A1:2", 1), ("D2:3", 1), ("C1:2", 1)])
def test_d0(name, want):
    assert d0(AffineType.parse(name)) == want


def test_level_examples():
    b3 = AffineType.parse("B1:3")
    assert level(b3, ClassicalWeight((3, 0, 0, 0))) == 3
    assert level(b3, ClassicalWeight((0, 0, 0, 1))) == 1
    assert level(b3, ClassicalWeight((0, 0, 0, 0))) == 0


def test_a1_root_zero():
    t = AffineType.parse("A1:1")
    assert classical_root(t, 0) == ClassicalWeight((2, -2))


def test_b3_root_is_matrix_column():
    t = AffineType.parse("B1:3")
    a = cartan_matrix(t)
    assert classical_root(t, 3).coeffs == tuple(a[i][3] for i in range(4))


@pytest.mark.parametrize("name", TYPES)
def test_roots_have_level_zero(name):
    t = AffineType.parse(name)
    assert all(level(t, classical_root(t, j)) == 0 for j in t.index_set)


@pytest.mark.parametrize("name", TYPES)
def test_marks_weighted_roots_give_delta(name):
    t = AffineType.parse(name)
    delta = weighted_root_sum(t, marks(t))
    assert delta.lambda_coeffs == (0,) * (t.rank + 1)
    assert delta.delta_coeff == 1


def test_dominant_weights_have_the_level():
    t = AffineType.parse("B1:3")
    ws = list(dominant_weights(t, 2))
    assert len(ws) == 7
    assert all(level(t, w) == 2 and w.is_dominant() for w in ws)
    assert ws == sorted(ws, key=lambda w: w.coeffs)


def test_affine_weight_arithmetic():
    t = AffineType.parse("C1:2")
    lam = AffineWeight.from_classical(ClassicalWeight((1, 1, 0)))
    w = lam - simple_root(t, 0) + simple_root(t, 0)
    assert w == lam
    assert (lam - simple_root(t, 0)).classical() == ClassicalWeight((1, 1, 0)) - classical_root(t, 0)


def test_weight_parse_errors():
    with pytest.raises(CartanError):
        ClassicalWeight.parse("1,x")
