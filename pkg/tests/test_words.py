import pytest

from thurstonquad.words import Word, alphabet, ball, ball_size, reduce


def test_parse_and_print():
    w = Word.parse("x1 x2^-1 x1^3")
    assert len(w) == 5
    assert str(w) == "x1 x2^-1 x1 x1 x1"
    assert str(Word.parse("ε")) == "ε"
    assert Word.parse("y2^-2", "y").letters == ((2, -1), (2, -1))


@pytest.mark.parametrize("bad", ["x0", "z1", "x1^", "x-1", "xx"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Word.parse(bad)


def test_reduce_and_inverse():
    w = Word.parse("x1 x2 x2^-1 x1^-1 x3")
    assert reduce(w) == Word.parse("x3")
    assert reduce(w * w.inverse()) == Word()


def test_power():
    assert Word.power(2, -3) == Word.parse("x2^-3")


def test_alphabet_order():
    assert alphabet(2) == [(1, 1), (2, 1), (1, -1), (2, -1)]


@pytest.mark.parametrize("m,r", [(1, 0), (1, 5), (2, 3), (3, 2)])
def test_ball_size_matches_enumeration(m, r):
    words = list(ball(m, r))
    assert len(words) == ball_size(m, r)
    assert all(reduce(w) == w for w in words)
    assert [len(w) for w in words] == sorted(len(w) for w in words)
    assert len(set(words)) == len(words)
