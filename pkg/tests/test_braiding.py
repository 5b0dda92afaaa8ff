from itertools import combinations

from qrea.braiding import (antisymmetrizer_swap_check, apply_block_lift,
                           braid_pair_action, braid_relation_check,
                           braid_wedge_pair, build_braid, embed_basis,
                           embed_equivariance_check, q2_factorial,
                           rmatrix_lemma_check, wedge_braiding, wedge_embed,
                           wedge_project, wedge_reduce, WedgeVector)
from qrea.coeff import RF_ONE, RF_QDIFF, RF_QINV, RatFunc, rf_q_int


def test_braid_action_examples():
    # e2 (x) e1 -> e1 (x) e2 + (q^-1 - q) e2 (x) e1
    assert braid_pair_action(2, 1) == [((1, 2), RF_ONE), ((2, 1), RF_QDIFF)]
    assert braid_pair_action(1, 1) == [((1, 1), RF_QINV)]
    assert braid_pair_action(1, 2) == [((2, 1), RF_ONE)]


def test_braid_n1_is_scalar():
    R = build_braid(1)
    assert R.entries == {((1, 1), (1, 1)): RF_QINV}
    assert braid_relation_check(1)


def test_braid_relation_small():
    assert braid_relation_check(2)
    assert braid_relation_check(3)


def test_hecke_and_symmetry():
    for n in (1, 2, 3):
        R = build_braid(n)
        assert R.is_symmetric()
        assert R.hecke_check()


def test_inverse_via_hecke():
    R = build_braid(2)
    Rinv = R.inverse()
    prod = R.compose(Rinv)
    ident = {((a, b), (a, b)): RF_ONE
             for a in (1, 2) for b in (1, 2)}
    assert prod.entries == ident


def test_wedge_reduce_examples():
    v = wedge_reduce((2, 1))
    assert v.coeffs == {(1, 2): rf_q_int(1)}
    assert wedge_reduce((1, 1)).is_zero()
    assert wedge_reduce((3, 2, 1)).coeffs == {(1, 2, 3): rf_q_int(3)}


def test_embed_degree_one_is_identity():
    assert embed_basis((2,)) == {(2,): RF_ONE}


def test_embed_degree_two():
    norm = q2_factorial(2).inv()  # 1/(1 + q^2)
    assert q2_factorial(2) == RatFunc({0: 1, 2: 1})
    emb = embed_basis((1, 2))
    assert emb == {(1, 2): norm, (2, 1): rf_q_int(1) * norm}


def test_project_examples():
    v = wedge_project({(1, 2): RF_ONE}, 2)
    assert v.coeffs == {(1, 2): RF_ONE}
    v = wedge_project({(2, 1): RF_ONE}, 2)
    assert v.coeffs == {(1, 2): rf_q_int(1)}


def test_project_embed_identity():
    for N in (2, 3, 4):
        for k in range(0, min(N, 3) + 1):
            for key in combinations(range(1, N + 1), k):
                v = WedgeVector(k, {key: RF_ONE})
                assert wedge_project(wedge_embed(v), k) == v


def test_embed_equivariance():
    for N in (2, 3, 4):
        for k in range(2, min(N, 3) + 1):
            assert embed_equivariance_check(N, k)


def test_block_lift_is_braiding_on_vectors():
    # degree (1,1) block lift must equal the braid operator itself
    for a in (1, 2):
        for b in (1, 2):
            t = apply_block_lift({(a, b): RF_ONE}, 1, 1)
            expected = dict(braid_pair_action(a, b))
            assert t == expected


def test_table_diagonals():
    tbl = wedge_braiding(3, 2, 2)
    for I in combinations((1, 2, 3), 2):
        for Ip in combinations((1, 2, 3), 2):
            m = len(set(I) & set(Ip))
            assert tbl.entry(I, I, Ip, Ip) == RatFunc.q_power(-m)
            assert tbl.inv_entry(I, I, Ip, Ip) == RatFunc.q_power(m)
    assert tbl.entry((1, 2), (1, 2), (2, 3), (2, 3)) == RF_QINV


def test_table_support_and_composition():
    for (k, l) in ((1, 1), (1, 2), (2, 1), (2, 2)):
        tbl = wedge_braiding(3, k, l)
        assert tbl.support_condition_violations() == []
        assert tbl.support_condition_violations(tbl.inv_entries) == []
        assert tbl.diagonal_report() == []
        assert tbl.composition_identity_check()


def test_table_json():
    tbl = wedge_braiding(2, 1, 1)
    obj = tbl.to_json()
    assert obj["N"] == 2 and obj["k"] == 1 and obj["l"] == 1
    assert all({"I", "J", "I'", "J'", "value"} <= set(e) for e in obj["entries"])


def test_scalar_lemma_two_singletons():
    rep = rmatrix_lemma_check(2, (1,), (2,))
    assert rep["ok"]
    # explicit vector check: R^{-1} applied to xi gives (-q)^{-1} xi'
    xi = {((1,), (2,)): rf_q_int(1), ((2,), (1,)): rf_q_int(2)}
    got = braid_wedge_pair(xi, 1, 1, inverse=True)
    scalar = rf_q_int(-1)
    assert got == {k: c * scalar for k, c in xi.items()}


def test_scalar_lemma_equal_sets():
    for I in ((1,), (1, 2), (2, 3)):
        rep = rmatrix_lemma_check(3, I, I)
        assert rep["ok"]
        assert RatFunc.from_json(rep["scalar"]) == RatFunc.q_power(len(I))


def test_scalar_lemma_sweep_n3():
    subs = [c for k in range(4) for c in combinations((1, 2, 3), k)]
    for I in subs:
        for Ip in subs:
            assert rmatrix_lemma_check(3, I, Ip)["ok"], (I, Ip)


def test_antisymmetrizer_swap():
    for T in ((1, 2), (1, 3), (1, 2, 3), (2, 3, 4)):
        for l in range(0, len(T) + 1):
            assert antisymmetrizer_swap_check(4, T, l), (T, l)
