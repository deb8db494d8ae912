import pytest
from hypothesis import given

from klatlas.harness.suites import region_lemma_violations
from klatlas.patterns import embeddings
from klatlas.permcore import (
    PermutationError, all_perms, bruhat_leq, compose, identity, inverse, length, parse_perm, rank,
)
from klatlas.rescomb import (
    REGION_IDS, check_MNempty, check_onecompempty, cortez_data, covex_report,
    exceptional_R_graph_points, exceptional_R_region, is_covexillary, min_3412_embedding,
    min_height, onecompempty_regions, rv_violations, sigma_cycle,
)
from klatlas.singloc import ms
from strategies import perms

P = parse_perm
W = P("817396254")


def test_is_covexillary():
    assert not is_covexillary(P("3412"))
    assert is_covexillary(P("4231"))
    assert not is_covexillary(W)


def test_min_embedding_examples():
    e = min_3412_embedding(W)
    assert (e.a, e.b, e.c, e.d) == (3, 5, 7, 8)
    assert (e.alpha, e.beta, e.gamma, e.delta, e.height) == (7, 9, 2, 5, 2)
    e = min_3412_embedding(P("3412"))
    # amplitude is w(i2) - w(i3) = 4 - 1
    assert (e.a, e.b, e.c, e.d, e.height, e.amplitude) == (1, 2, 3, 4, 1, 3)
    assert min_3412_embedding(P("4231")) is None
    assert min_height(W) == 2 and min_height(P("4231")) == 1 and min_height(P("3412")) == 1


def test_cortez_worked_example():
    d = cortez_data(W)
    assert (d.alpha_prime, d.delta_prime, d.kappa) == (8, 4, 5)
    assert d.v == P("514398276")
    assert d.I == frozenset({4, 5, 6, 7}) and d.J == frozenset({4, 6, 7})
    assert (d.a_prime, d.d_prime) == (W.index(8) + 1, W.index(4) + 1)


def test_sigma_and_u():
    d = cortez_data(W)
    # sigma = t_2 t_1 with t_1 = (2, 6), t_2 = (6, 7): 6 -> 2, 7 -> 6, 2 -> 7
    assert d.sigma == P("173452689")
    assert d.u == compose(d.sigma, W) == P("816392754")
    assert length(W) - length(d.u) == d.h == 2
    assert bruhat_leq(d.u, W)
    assert sigma_cycle(4, 1, 2, 3) == P("3214")


def test_cortez_3412():
    d = cortez_data(P("3412"))
    assert (d.alpha_prime, d.delta_prime, d.kappa) == (3, 2, 2)
    assert d.v == P("2413")
    assert rv_violations(P("3412")) == []


def test_cortez_rejects_covexillary():
    with pytest.raises(PermutationError, match="covexillary"):
        cortez_data(P("4231"))
    with pytest.raises(PermutationError):
        check_onecompempty(identity(4))


def test_onecompempty_examples():
    w = P("2574136")
    assert len(ms(w)) == 1
    assert check_onecompempty(w) == []
    regs = onecompempty_regions(P("4631725"))
    assert set(regs) == set(REGION_IDS)
    assert len(ms(P("4631725"))) == 2
    assert check_onecompempty(P("4631725")) == [r for r in REGION_IDS if regs[r]]


def test_onecompempty_can_fail():
    hits = {r for w in all_perms(6) if not is_covexillary(w) and len(ms(w)) >= 2
            for r in check_onecompempty(w)}
    assert hits


def test_mnempty_examples():
    rep = check_MNempty(W)
    assert rep.ok and (rep.M, rep.N) == (4, 7)
    assert len(ms(W)) == 1
    rep = check_MNempty(P("3412"))
    assert (rep.M, rep.N) == (1, 3) and rep.ok


def test_covex_report_examples():
    assert len(covex_report(P("4231")).non_inclusion_indices) == 1
    assert covex_report(identity(5)).non_inclusion_indices == ()
    w = P("53241")
    assert len(covex_report(w).non_inclusion_indices) == len(ms(w))
    with pytest.raises(PermutationError):
        covex_report(P("3412"))
    assert covex_report(identity(3)).r_before(1) == 0


def test_exceptional_region_example():
    R = exceptional_R_region(W)
    d = cortez_data(W)
    for p in range(1, 10):
        for q in range(1, 10):
            assert rank(d.u, p, q) - rank(W, p, q) == ((p, q) in R)
    assert exceptional_R_graph_points(W) == []
    with pytest.raises(PermutationError, match="h > 1"):
        exceptional_R_region(P("3412"))


def brute_min(w):
    best = None
    for Z in embeddings(P("3412"), w):
        v = [w[i - 1] for i in Z]
        key = (v[0] - v[3], v[1] - v[2])
        best = key if best is None else min(best, key)
    return best


# ---- invariants -------------------------------------------------------------

@pytest.mark.invariant
@given(perms(4, 8))
def test_min_embedding_is_minimal(w):
    e = min_3412_embedding(w)
    b = brute_min(w)
    if b is None:
        assert e is None
        return
    assert (e.height, e.amplitude) == b
    assert e.gamma < e.delta < e.alpha < e.beta
    assert [w[i - 1] for i in (e.a, e.b, e.c, e.d)] == [e.alpha, e.beta, e.gamma, e.delta]


@pytest.mark.invariant
@given(perms(4, 9))
def test_cortez_invariants(w):
    if is_covexillary(w):
        return
    d = cortez_data(w)
    winv = inverse(w)
    # w^{-1}(alpha') < ... < w^{-1}(alpha), alpha' maximal; mirrored for delta'
    assert all(winv[x] < winv[x - 1] for x in range(d.emb.alpha, d.alpha_prime))
    assert d.alpha_prime == len(w) or winv[d.alpha_prime] > winv[d.alpha_prime - 1]
    assert all(winv[x - 2] > winv[x - 1] for x in range(d.delta_prime + 1, d.emb.delta + 1))
    assert d.delta_prime == 1 or winv[d.delta_prime - 2] < winv[d.delta_prime - 1]
    assert d.I == frozenset(range(d.delta_prime, d.alpha_prime))
    assert d.J == d.I - {d.kappa}
    assert d.kappa == d.delta_prime + d.alpha_prime - d.emb.alpha
    assert d.M == max([p for p in range(1, d.emb.c) if w[p - 1] < d.delta_prime] + [d.emb.a])
    assert d.N == max(p for p in range(1, len(w) + 1) if w[p - 1] < d.delta_prime)


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(4, 8))
def test_rv_consistency(n):
    for w in all_perms(n):
        if not is_covexillary(w):
            assert rv_violations(w) == [], w


@pytest.mark.invariant
@pytest.mark.parametrize("n", range(1, 8))
def test_region_lemmas_exhaustive(n):
    for w in all_perms(n):
        used, bad = region_lemma_violations(w)
        assert bad == [], (w, bad)
