import numpy as np
import pytest
from hypothesis import given

from klatlas.patterns import avoids
from klatlas.permcore import (
    Permutation, PermutationError, all_perms, apply, bruhat_leq, coessential_set, compose,
    descents, down_set, identity, inverse, length, longest_in_parabolic, parse_perm, rank,
    rank_matrix,
)
from strategies import perm_pairs, perms

P = parse_perm


def test_parse_forms():
    assert P("8,1,7,3,9,6,2,5,4") == P("817396254")
    assert str(P("10,1,2,3,4,5,6,7,8,9")) == "10,1,2,3,4,5,6,7,8,9"


@pytest.mark.parametrize("text, fragment", [
    ("1231", "not a permutation"), ("12a", "character 3"), ("", "empty"),
    ("1,,2", "entry 2"), ("1234567890", "character 10"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(PermutationError, match=fragment):
        P(text)


def test_length_examples():
    assert length(identity(5)) == 0
    assert length(P("4231")) == 5
    assert length(P("3412")) == 4


def test_rank_examples():
    assert all(rank(identity(4), p, q) == min(p, q) for p in range(1, 5) for q in range(1, 5))
    assert rank(P("3412"), 2, 2) == 0
    assert rank(P("4231"), 2, 2) == 1
    with pytest.raises(PermutationError):
        rank(P("123"), 0, 1)
    with pytest.raises(PermutationError):
        rank(P("123"), 1, 4)


def test_bruhat_examples():
    assert all(bruhat_leq(identity(4), w) for w in all_perms(4))
    assert not bruhat_leq(P("3412"), P("4231"))
    assert not bruhat_leq(P("4231"), P("3412"))
    assert bruhat_leq(P("2143"), P("4231"))
    with pytest.raises(PermutationError):
        bruhat_leq(P("12"), P("123"))


def test_compose_inverse_apply():
    w = P("817396254")
    assert compose(w, identity(9)) == w
    assert inverse(P("3412")) == P("3412")
    assert compose(w, inverse(w)) == identity(9)
    assert apply(w, 3) == 7
    with pytest.raises(PermutationError):
        compose(P("12"), P("123"))


def test_descents():
    assert descents(identity(5)) == set()
    assert descents(P("4231")) == {1, 3}
    assert descents(P("3412")) == {2}


def test_longest_in_parabolic():
    assert longest_in_parabolic(5, set()) == identity(5)
    assert longest_in_parabolic(4, {1, 2, 3}) == P("4321")
    w = P("817396254")
    I, J = {4, 5, 6, 7}, {4, 6, 7}
    assert longest_in_parabolic(9, I) == P("123876549")
    v = compose(longest_in_parabolic(9, J), compose(longest_in_parabolic(9, I), w))
    assert v == P("514398276")
    with pytest.raises(PermutationError):
        longest_in_parabolic(4, {4})


def test_coessential_examples():
    e4231 = {(e.p, e.q): e for e in coessential_set(P("4231"))}
    assert e4231[(2, 2)].r == 1 and not e4231[(2, 2)].inclusion
    # (2, 2) fails w(2) <= 2 for 3412; the two conditions are F_1 in E_3 and E_1 in F_3
    assert [(e.p, e.q, e.r, e.inclusion) for e in coessential_set(P("3412"))] == [
        (1, 3, 1, True), (3, 1, 1, True)]
    assert all(e.inclusion for e in coessential_set(identity(5)))


def test_down_set_examples():
    assert down_set(identity(4)) == {identity(4)}
    assert down_set(P("321")) == set(all_perms(3))
    assert down_set(P("3412")) == {z for z in all_perms(4) if bruhat_leq(z, P("3412"))}


def test_all_perms_is_lexicographic():
    ps = all_perms(4)
    assert len(ps) == 24 and ps == sorted(ps)


# ---- invariants -------------------------------------------------------------

@pytest.mark.invariant
@given(perms())
def test_length_of_inverse(w):
    assert length(w) == length(inverse(w))


@pytest.mark.invariant
@given(perm_pairs())
def test_bruhat_antisymmetric_and_length_monotone(pair):
    u, w = pair
    if bruhat_leq(u, w) and bruhat_leq(w, u):
        assert u == w
    if u != w and bruhat_leq(u, w):
        assert length(u) < length(w)


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(1, 6))
def test_down_set_matches_rank_oracle(n):
    ps = all_perms(n)
    for w in ps:
        assert down_set(w) == {z for z in ps if bruhat_leq(z, w)}


@pytest.mark.invariant
@given(perms())
def test_rank_matrix_invariants(w):
    n = len(w)
    r = np.zeros((n + 1, n + 1), dtype=int)
    r[1:, 1:] = np.array(rank_matrix(w))
    assert ((np.diff(r, axis=0) >= 0) & (np.diff(r, axis=0) <= 1)).all()
    assert ((np.diff(r, axis=1) >= 0) & (np.diff(r, axis=1) <= 1)).all()
    assert list(r[n, 1:]) == list(range(1, n + 1))
    assert list(r[1:, n]) == list(range(1, n + 1))


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(1, 7))
def test_coessential_conditions_define_bruhat_order(n):
    ps = all_perms(n)
    R = np.array([rank_matrix(w) for w in ps])  # (N, n, n), R[k, p-1, q-1]
    full = R.reshape(len(ps), -1)
    for j, w in enumerate(ps):
        ce = coessential_set(w)
        leq = (full >= full[j]).all(axis=1)
        if ce:
            idx = [(e.p - 1) * n + (e.q - 1) for e in ce]
            by_coess = (full[:, idx] >= full[j, idx]).all(axis=1)
        else:
            by_coess = np.ones(len(ps), dtype=bool)
        assert (leq == by_coess).all(), w


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(1, 8))
def test_covexillary_coessential_total_order(n):
    for w in all_perms(n):
        if not avoids(w, (3, 4, 1, 2)):
            continue
        ce = sorted(coessential_set(w), key=lambda e: (e.p, e.q))
        for e1, e2 in zip(ce, ce[1:]):
            assert e1.p <= e2.p and e1.q <= e2.q and e1.r < e2.r, w


def test_permutation_validates():
    with pytest.raises(PermutationError):
        Permutation([1, 1])
    with pytest.raises(PermutationError):
        Permutation([0, 1])
