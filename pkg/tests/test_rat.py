import pytest

from skelpot.rat import (
    Rat,
    cross2,
    det3,
    dot,
    matrix_rank,
    primitive,
    rat,
    rat_str,
    rceil,
    rfloor,
    solve_linear,
    vec,
)


def test_rat_parsing():
    assert rat("3/4") == Rat(3, 4)
    assert rat("-7") == Rat(-7)
    assert rat(5) == Rat(5)
    assert rat(Rat(2, 6)) == Rat(1, 3)


@pytest.mark.parametrize("bad", ["", "1.5", "3/0", "x", "1/2/3", None])
def test_rat_rejects(bad):
    with pytest.raises((ValueError, TypeError)):
        rat(bad)


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)


def test_rat_str_roundtrip():
    for q in (Rat(0), Rat(-3), Rat(22, 7), Rat(-1, 2)):
        assert rat(rat_str(q)) == q
    assert rat_str(Rat(4, 2)) == "2"


def test_floor_ceil_are_ints():
    assert rfloor(Rat(7, 2)) == 3 and isinstance(rfloor(Rat(7, 2)), int)
    assert rceil(Rat(7, 2)) == 4 and isinstance(rceil(Rat(7, 2)), int)
    assert rfloor(Rat(-7, 2)) == -4
    assert rceil(Rat(-7, 2)) == -3
    assert rfloor(Rat(6)) == rceil(Rat(6)) == 6


def test_vector_helpers():
    u, v = vec(1, "1/2"), vec("1/3", 2)
    assert dot(u, v) == Rat(1, 3) + 1
    assert cross2(vec(1, 0), vec(0, 1)) == 1
    assert primitive((Rat(4, 6), Rat(-2, 3))) == (1, -1)
    assert det3(vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)) == 1


def test_solve_linear():
    # 2x + y = 5, x - y = 1  ->  x = 2, y = 1
    sol = solve_linear([[2, 1], [1, -1]], [5, 1])
    assert tuple(sol) == (Rat(2), Rat(1))
    with pytest.raises(ValueError):
        solve_linear([[1, 1], [2, 2]], [1, 3])


def test_matrix_rank():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert matrix_rank([]) == 0
