from itertools import combinations

import pytest

from qrea.shapes import (MalformedShape, QuantumShape, build_shape_ideal,
                         enumerate_shapes, shape_qcomm_certificate)


def test_family_counts_n3():
    fams = enumerate_shapes(3)
    by_rank = {}
    for s in fams:
        by_rank.setdefault(s.rank, []).append(s)
    assert len(by_rank[3]) == 4
    assert len(by_rank[2]) == 6
    assert len(by_rank[1]) == 3
    assert len(by_rank[0]) == 1


def test_family_counts_n1():
    fams = enumerate_shapes(1)
    assert len(fams) == 2
    assert {s.rank for s in fams} == {0, 1}
    assert fams[0].u == ("s1",)


def test_rank3_family_table():
    fams = [s for s in enumerate_shapes(3) if s.rank == 3]
    expected = [
        ((1, 2, 3), ("s1", "s2", "s3"),
         [((1,), (1,)), ((1, 2), (1, 2)), ((1, 2, 3), (1, 2, 3))]),
        ((2, 1, 3), ("y", "ybar", "s1"),
         [((2,), (1,)), ((1, 2), (1, 2)), ((1, 2, 3), (1, 2, 3))]),
        ((3, 2, 1), ("y", "s1", "ybar"),
         [((3,), (1,)), ((1, 3), (1, 3)), ((1, 2, 3), (1, 2, 3))]),
        ((1, 3, 2), ("s1", "y", "ybar"),
         [((3,), (2,)), ((2, 3), (2, 3)), ((1, 2, 3), (1, 2, 3))]),
    ]
    for s, (tau, u, labels) in zip(fams, expected):
        assert s.tau == tau
        assert s.u == u
        assert s.minor_labels() == labels


def test_rank2_family_table():
    fams = [s for s in enumerate_shapes(3) if s.rank == 2]
    expected_first = [((1,), (1,)), ((1,), (1,)), ((2,), (2,)),
                      ((2,), (1,)), ((3,), (1,)), ((3,), (2,))]
    expected_second = [((1, 2), (1, 2)), ((1, 3), (1, 3)), ((2, 3), (2, 3)),
                       ((1, 2), (1, 2)), ((1, 3), (1, 3)), ((2, 3), (2, 3))]
    assert [s.minor_labels()[0] for s in fams] == expected_first
    assert [s.minor_labels()[1] for s in fams] == expected_second


def test_rank1_family_table():
    fams = [s for s in enumerate_shapes(3) if s.rank == 1]
    assert [s.minor_labels()[0] for s in fams] == \
        [((1,), (1,)), ((2,), (2,)), ((3,), (3,))]


def test_all_families_self_adjoint():
    for s in enumerate_shapes(4):
        assert s.is_self_adjoint()


def test_sorted_chain_alternative():
    s = QuantumShape((1, 3, 2), ("s1", "y", "ybar"), chain="sorted")
    assert s.minor_labels()[0] == ((1,), (1,))


def test_malformed_shapes():
    with pytest.raises(MalformedShape):
        QuantumShape((2, 1), ("0", "0"))          # zero slot on a 2-cycle
    with pytest.raises(MalformedShape):
        QuantumShape((1, 2), ("y", "ybar"))       # phase pair on fixed points
    with pytest.raises(MalformedShape):
        QuantumShape((2, 1), ("y", "y"))          # not conjugate
    with pytest.raises(MalformedShape):
        QuantumShape((2, 2), ("s1", "s2"))        # not a permutation


def test_shape_json_roundtrip():
    s = QuantumShape((2, 1, 3), ("y", "ybar", "0"))
    assert QuantumShape.from_json(s.to_json()) == s


def test_identity_rank2_ideal_empty_n2():
    s = QuantumShape((1, 2), ("s1", "s2"))
    assert build_shape_ideal(s, "dom").generators == []
    assert build_shape_ideal(s, "lex").generators == []


def test_lex_ideal_example_2c():
    # tau = id, u = (0, s1, s2): level-1 chain label is the (2,2) slot
    s = QuantumShape((1, 2, 3), ("0", "s1", "s2"))
    assert s.minor_labels()[0] == ((2,), (2,))
    ideal = build_shape_ideal(s, "lex")
    k1 = sorted((I, J) for (I, J) in ideal.generators if len(I) == 1)
    # raw pattern: all Z_{i,j} with (j, i) lex-below ({2},{2}); adjoints added
    assert k1 == [((1,), (1,)), ((1,), (2,)), ((1,), (3,)),
                  ((2,), (1,)), ((3,), (1,))]
    assert ideal.contains_label((1, 2, 3), (1, 2, 3))  # oversized


def test_ideal_adjoint_closure_and_flavor_inclusion():
    for s in enumerate_shapes(3):
        dom = build_shape_ideal(s, "dom")
        lex = build_shape_ideal(s, "lex")
        dom_set = set(dom.generators)
        lex_set = set(lex.generators)
        assert dom_set <= lex_set
        assert all((J, I) in dom_set for (I, J) in dom_set)
        assert all((J, I) in lex_set for (I, J) in lex_set)


def test_qcomm_identity_shape_level1(ctx3):
    s = QuantumShape((1, 2, 3), ("s1", "s2", "s3"))
    cert = shape_qcomm_certificate(ctx3, s, 1, (2,), (2,))
    assert cert.status == "pass"
    assert cert.instance["exponent"] == 0


def test_qcomm_symmetric_label(ctx3):
    s = QuantumShape((1, 2, 3), ("s1", "s2", "s3"))
    # I = chain level, J = its involution image: symmetric label, exponent
    # cancels to zero
    cert = shape_qcomm_certificate(ctx3, s, 2, (1, 2), (1, 2))
    assert cert.status == "pass"
    assert cert.instance["exponent"] == 0


def test_qcomm_transposition_family_exponents(ctx3):
    s = QuantumShape((2, 1, 3), ("y", "ybar", "0"))
    assert s.minor_labels()[0] == ((2,), (1,))
    A, B = (1,), (2,)
    for I in combinations((1, 2, 3), 1):
        for J in combinations((1, 2, 3), 1):
            cert = shape_qcomm_certificate(ctx3, s, 1, I, J)
            assert cert.status == "pass"
            e = (len(set(I) & set(A)) + len(set(I) & set(B))
                 - len(set(J) & set(A)) - len(set(J) & set(B)))
            assert cert.instance["exponent"] == e
