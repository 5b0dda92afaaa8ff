import random
from itertools import combinations
from math import comb

import pytest

from qrea.coeff import RF_ONE, RF_QINV, RF_ZERO, RatFunc, rf_q_int
from qrea.qmatrix import (Bicharacter, IllFormedInstance, NCPoly,
                          NonOrientable, braidcomm_instances, coproduct,
                          counit, counit_word, degree_dimension,
                          derive_rewrite_rules, derive_rewrite_system,
                          exchange_relations, gen_id, laplace_instances,
                          muir_instances, quantum_minor, verify_identity)


def g(i, j, N=2):
    return gen_id(i, j, N)


def test_n1_has_no_relations():
    assert derive_rewrite_rules(1).rules == {}


def test_n2_rule_count_and_leads():
    rw = derive_rewrite_rules(2)
    assert len(rw.rules) == 6
    assert all(a > b for (a, b) in rw.rules)


def test_rule_rhs_is_smaller():
    rw = derive_rewrite_rules(3)
    for lead, rhs in rw.rules.items():
        for w in rhs:
            assert w < lead


def test_degree_dimensions_n2():
    rw = derive_rewrite_rules(2)
    assert degree_dimension(2, rw, 2) == comb(4 + 1, 2) == 10
    assert degree_dimension(2, rw, 3) == comb(6, 3) == 20


def test_critical_pairs():
    assert derive_rewrite_rules(2).critical_pairs_ok()
    assert derive_rewrite_rules(3).critical_pairs_ok()


def test_nonorientable_raises():
    # a relation whose leading word is already sorted cannot be oriented
    vec = {(0, 1): RF_ONE, (0, 0): RF_ZERO - RF_ONE}
    with pytest.raises(NonOrientable):
        derive_rewrite_system(2, "X", [vec])


def test_normal_form_fixed_points(ctx2):
    rw = ctx2.rw
    p = NCPoly(2, {(g(1, 1), g(1, 1)): RF_ONE})
    assert rw.normal_form(p) == p
    one = NCPoly.unit(2)
    assert rw.normal_form(one) == one


def test_normal_form_idempotent_linear(ctx2):
    rng = random.Random(2)
    rw = ctx2.rw
    for _ in range(30):
        w = tuple(rng.randrange(4) for _ in range(4))
        p = rw.normal_form(NCPoly(2, {w: RF_ONE}))
        assert rw.normal_form(p) == p
        assert all(m[i] <= m[i + 1] for m in p.coeffs for i in range(len(m) - 1))


def test_confluence_spot_check_random_orders(ctx3):
    rng = random.Random(17)
    rw = ctx3.rw
    for _ in range(25):
        w = tuple(rng.randrange(9) for _ in range(3))
        p = NCPoly(3, {w: RF_ONE})
        assert rw.normal_form(p) == rw.naive_normal_form(p, rng)


def test_relation_count_matches_exchange_rank():
    assert len(exchange_relations(2)) == 16
    rw = derive_rewrite_rules(2)
    # every derived rule kills the exchange relations after rewriting
    for vec in exchange_relations(2):
        assert rw.normal_form(NCPoly(2, vec)).is_zero()


def test_coproduct_generator():
    p = NCPoly.generator(2, 1, 1)
    assert coproduct(p) == {((g(1, 1),), (g(1, 1),)): RF_ONE,
                            ((g(1, 2),), (g(2, 1),)): RF_ONE}


def test_coproduct_unit():
    assert coproduct(NCPoly.unit(2)) == {((), ()): RF_ONE}


def test_counit_axiom_random_words():
    rng = random.Random(23)
    for _ in range(50):
        w = tuple(rng.randrange(4) for _ in range(3))
        left = {}
        for (w1, w2), c in coproduct(NCPoly(2, {w: RF_ONE})).items():
            if counit_word(w1, 2):
                left[w2] = left.get(w2, RF_ZERO) + c
        left = {k: v for k, v in left.items() if not v.is_zero()}
        assert left == {w: RF_ONE}


def test_counit_on_minor():
    # counit of a minor is the Kronecker delta of its labels
    assert counit(quantum_minor(3, (1, 2), (1, 2))) == RF_ONE
    assert counit(quantum_minor(3, (1, 2), (1, 3))).is_zero()


def test_minor_examples():
    assert quantum_minor(2, (1,), (1,)) == NCPoly.generator(2, 1, 1)
    got = quantum_minor(2, (1, 2), (1, 2))
    expected = NCPoly(2, {(g(1, 1), g(2, 2)): RF_ONE,
                          (g(2, 1), g(1, 2)): rf_q_int(1)})
    assert got == expected


def test_quantum_determinant_central_n2(ctx2):
    det = quantum_minor(2, (1, 2), (1, 2))
    for i in (1, 2):
        for j in (1, 2):
            x = NCPoly.generator(2, i, j)
            assert ctx2.rw.normal_form(det * x - x * det).is_zero()


def test_bicharacter_base_values(ctx2):
    b = ctx2.bich
    assert b.r((g(1, 1),), (g(1, 1),)) == RF_QINV
    assert b.r((g(1, 1),), (g(2, 2),)) == RF_ONE
    # counit base case: r(1, X_ij) = delta_ij
    assert b.r((), (g(1, 1),)) == RF_ONE
    assert b.r((), (g(1, 2),)).is_zero()


def test_convolution_certificates(ctx2):
    b = ctx2.bich
    for (s, t) in ((1, 1), (1, 2), (2, 1), (2, 2)):
        assert b.certify_bidegree(s, t, "rinv")
        assert b.certify_bidegree(s, t, "rpr")


def test_rinv_minor_diagonals(ctx3):
    for k in (1, 2):
        for l in (1, 2):
            for I in combinations((1, 2, 3), k):
                for Ip in combinations((1, 2, 3), l):
                    m = len(set(I) & set(Ip))
                    assert ctx3.rinv_minor(I, I, Ip, Ip) == RatFunc.q_power(m)


def test_minor_tables_match_functionals(ctx2):
    b = ctx2.bich
    for k in (1, 2):
        for l in (1, 2):
            for A in combinations((1, 2), k):
                for B in combinations((1, 2), k):
                    pa = ctx2.minor(A, B)
                    for C in combinations((1, 2), l):
                        for D in combinations((1, 2), l):
                            pb = ctx2.minor(C, D)
                            assert ctx2.r_minor(A, B, C, D) == \
                                b.pair_functional("r", pa, pb)
                            assert ctx2.rinv_minor(A, B, C, D) == \
                                b.pair_functional("rinv", pa, pb)
                            assert ctx2.rpr_minor(A, B, C, D) == \
                                b.pair_functional("rpr", pa, pb)


def test_minor_rinv_solve_agrees_with_braiding_route(ctx2):
    for (k, l) in ((1, 1), (1, 2), (2, 1), (2, 2)):
        tab = ctx2.rinv_minor_solved(k, l)
        for (K, B, L, C), v in tab.items():
            assert ctx2.rinv_minor(K, B, L, C) == v


def test_laplace_row_example(ctx2):
    cert = verify_identity(ctx2, "laplace-row",
                           {"I": (1, 2), "J": (1, 2), "K": (1,), "Kp": (1,)})
    assert cert.status == "pass"


def test_laplace_offdiagonal_vanishes(ctx2):
    cert = verify_identity(ctx2, "laplace-row",
                           {"I": (1, 2), "J": (1, 2), "K": (1,), "Kp": (2,)})
    assert cert.status == "pass"


def test_laplace_sweep_n2(ctx2):
    for inst in laplace_instances(2):
        for fam in ("laplace-row", "laplace-col"):
            assert verify_identity(ctx2, fam, inst).status == "pass"


def test_muir_sweep_n2(ctx2):
    for inst in muir_instances(2):
        for fam in ("muir-row", "muir-col"):
            assert verify_identity(ctx2, fam, inst).status == "pass"


def test_braidcomm_sweep_n2(ctx2):
    for inst in braidcomm_instances(2):
        for fam in ("braidcomm-1", "braidcomm-2"):
            assert verify_identity(ctx2, fam, inst).status == "pass"


def test_muir_spot_n3(ctx3):
    # size-3 instance with a common 1x1 submatrix, l = 1, all K, K'
    for K in ((1,), (2,)):
        for Kp in ((1,), (2,)):
            cert = verify_identity(ctx3, "muir-row",
                                   {"I": (1, 2, 3), "J": (1, 2, 3),
                                    "F": (1,), "G": (1,), "K": K, "Kp": Kp})
            assert cert.status == "pass"


def test_ill_formed_instance(ctx2):
    with pytest.raises(IllFormedInstance):
        verify_identity(ctx2, "laplace-row",
                        {"I": (1, 2), "J": (1,), "K": (1,), "Kp": (1,)})
    with pytest.raises(IllFormedInstance):
        verify_identity(ctx2, "nonsense", {})


def test_adjoint_is_involutive():
    rng = random.Random(4)
    for _ in range(20):
        w = tuple(rng.randrange(4) for _ in range(3))
        p = NCPoly(2, {w: RF_ONE})
        assert p.adjoint().adjoint() == p
