import pytest

from modgl2 import BaseField, OutOfRangeExponent, Weight


def test_twist_reduced_mod_q_minus_one():
    assert BaseField(3).weight(5, [1]) == Weight(1, (1,))
    assert BaseField(3, 2).weight(8, [2, 0]) == Weight(0, (2, 0))


def test_exponent_out_of_range():
    with pytest.raises(OutOfRangeExponent):
        BaseField(3).weight(0, [3])
    with pytest.raises(OutOfRangeExponent):
        BaseField(3, 2).weight(0, [0, -1])


def test_wrong_length_vector():
    with pytest.raises(ValueError):
        BaseField(3, 2).weight(0, [1])


@pytest.mark.parametrize("p", [1, 4, 9, 0])
def test_rejects_non_prime(p):
    with pytest.raises(ValueError):
        BaseField(p)


def test_rejects_bad_degree():
    with pytest.raises(ValueError):
        BaseField(3, 0)


def test_weight_count(fld):
    ws = list(fld.weights())
    assert len(ws) == fld.q * (fld.q - 1)
    assert len(set(ws)) == len(ws)


def test_norm_exponent_and_frobenius():
    F = BaseField(3, 2)
    assert F.q == 9
    assert F.norm_exponent == 4
    assert [F.frob(i) for i in range(3)] == [1, 3, 1]


def test_digits_roundtrip():
    F = BaseField(5, 2)
    for a in range(F.q - 1):
        d = F.digits(a)
        assert sum(c * 5**i for i, c in enumerate(d)) == a
