"""Even integral lattices: sums, discriminant forms, gluing, witnesses."""

from fractions import Fraction

import pytest

from forge.intlat import (IntLattice, LatticeEmbedding, brauer_witness,
                          diagram_lattice, discriminant_group,
                          figure_star_lattice, is_primitive, named_lattice,
                          odd_M_obstruction, orthogonal_complement,
                          overlattice, parse_lattice_expr, roots,
                          smith_normal_form)


def test_named_lattices():
    U = named_lattice("U")
    assert [list(r) for r in U.gram] == [[0, 1], [1, 0]] and U.disc() == -1
    E8 = named_lattice("E8", -1)
    assert E8.rank == 8 and E8.disc() == 1 and E8.is_even()
    assert [list(r) for r in named_lattice("A1", -1).gram] == [[-2]]
    assert named_lattice("E7", -1).disc() == -2
    assert named_lattice("U", 2).disc() == -4
    with pytest.raises(ValueError):
        named_lattice("Z9")


def test_direct_sum_and_signature():
    L = named_lattice("U") + named_lattice("E8", -1)
    assert L.rank == 10 and L.disc() == -1
    assert L.signature() == (1, 9)


def test_parse_lattice_expr():
    L = parse_lattice_expr("U + 2*E7(-1) + 2*A1(-1)")
    assert L.rank == 18 and L.disc() == -16
    M = parse_lattice_expr("U + <-4>")
    assert M.disc() == 4
    with pytest.raises(ValueError):
        parse_lattice_expr("U + bogus{}")


def test_discriminant_group():
    dg = discriminant_group(named_lattice("U", 2))
    assert dg.invariant_factors == (2, 2)
    dg7 = discriminant_group(named_lattice("E7", -1))
    assert dg7.order == 2
    assert dg7.q_values[0] == Fraction(1, 2) or dg7.q_values[0] == Fraction(3, 2)


def test_overlattice():
    L = parse_lattice_expr("U + 2*E7(-1) + 2*A1(-1)")
    dg = discriminant_group(L)
    glue = [sum(c * Fraction(coef) for c, coef in
                zip(col, (0, 1, 0, 1))) for col in
            zip(*dg.generator_lifts)]
    bigger = overlattice(L, glue)
    assert bigger.disc() == -4 and bigger.is_even()
    with pytest.raises(ValueError):
        overlattice(named_lattice("U"), [Fraction(1, 2), 0])


def test_orthogonal_complement_and_primitivity():
    T = named_lattice("U") + named_lattice("E8", -1)
    rows = [[1, 0] + [0] * 8, [0, 1] + [0] * 8]
    emb = LatticeEmbedding(named_lattice("U"), T, rows)
    assert is_primitive(emb)[0]
    comp, cemb = orthogonal_complement(emb)
    assert comp == named_lattice("E8", -1)
    emb2 = LatticeEmbedding(IntLattice([[0, 4], [4, 0]]), T,
                            [[2, 0] + [0] * 8, [0, 2] + [0] * 8])
    flag, witness = is_primitive(emb2)
    assert not flag and witness is not None


def test_embedding_validates_gram():
    with pytest.raises(Exception):
        LatticeEmbedding(named_lattice("U"), named_lattice("U", 2),
                         [[1, 0], [0, 1]])


def test_smith_normal_form():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    d, u, v = smith_normal_form(m)
    diag = [d[i][i] for i in range(3)]
    assert diag == [2, 2, 156]
    from forge.intlat import mat_mul
    assert mat_mul(mat_mul(u, m), v) == d


def test_roots():
    assert len(roots(named_lattice("A2", -1))) == 6
    assert len(roots(named_lattice("E8", -1))) == 240
    assert roots(named_lattice("U", -2) if False else IntLattice([[-4]])) == []


def test_figure_star_lattice():
    for M in (1, 2, 4):
        L = figure_star_lattice(M)
        assert L.rank == 9 and L.disc() == -32 * M
        assert L.is_even()


def test_brauer_witness():
    r = brauer_witness(1, 3)
    assert r["pass"]
    assert r["D_square_mod4"] == 2
    assert r["complement_root_count"] == 0
    assert r["primitive"] and r["image_gram_is_U2_E8m2"]


def test_odd_m_obstruction():
    for M in (1, 3, 5):
        r = odd_M_obstruction(M)
        assert r["pass"]
        assert r["q_value"] in ("1/2", "3/2")
        assert r["q_obstruction"] and r["length_obstruction"]


def test_diagram_lattice():
    a2 = diagram_lattice([-2, -2], [(0, 1)])
    assert [list(r) for r in a2.gram] == [[-2, 1], [1, -2]]
    with pytest.raises(ValueError):
        diagram_lattice([-2], [(0, 0)])
