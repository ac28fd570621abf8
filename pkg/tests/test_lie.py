from fractions import Fraction

import pytest
import sympy as sp

from twistlab.lie import (CATALOGUE, AntisymmetryError, JacobiError, LieAlgebra, ParseError, catalogue,
                          parse_definition, resolve, semidirect_dual, semidirect_mackey, sl2, sl3, sl3_matrix)


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_catalogue_satisfies_jacobi_and_round_trips(name):
    g = catalogue(name)
    assert g.jacobi_check()
    assert parse_definition(g.to_text()) == g


def test_sl2_relations():
    g = sl2()
    H, E, F = (g.basis_vector(i) for i in range(3))
    assert g.bracket(H, E) == {1: 2}
    assert g.bracket(H, F) == {2: -2}
    assert g.bracket(E, F) == {0: 1}


def test_killing_form_against_matrix_traces():
    g = sl3()
    ad = [sp.Matrix(g.ad_matrix(i)) for i in range(8)]
    want = [[(ad[i] * ad[j]).trace() for j in range(8)] for i in range(8)]
    assert g.killing_form() == want
    # on sl3 the Killing form is 6 tr(xy)
    ms = [sp.Matrix(sl3_matrix(i)) for i in range(8)]
    assert want == [[6 * (ms[i] * ms[j]).trace() for j in range(8)] for i in range(8)]


def test_jacobi_violation_reports_triple():
    with pytest.raises(JacobiError, match=r"\(a, b, c\)"):
        LieAlgebra("bad", ["a", "b", "c"], {(0, 1): {0: 1}, (1, 2): {1: 1}, (0, 2): {2: 1}})


def test_non_opposite_brackets_rejected():
    with pytest.raises(AntisymmetryError):
        LieAlgebra("bad", ["a", "b"], {(0, 1): {0: 1}, (1, 0): {0: 1}})


def test_parse_rejects_lower_entry_without_partner():
    text = "dim: 2\nbasis: e1 e2\nbrackets:\n  2 1 -> [(1, 1)]\n"
    with pytest.raises(AntisymmetryError):
        parse_definition(text)


def test_parse_rejects_duplicates():
    text = "dim: 2\nbasis: e1 e2\nbrackets:\n  1 2 -> [(1, 1)]\n  1 2 -> [(2, 1)]\n"
    with pytest.raises(ParseError, match="duplicate"):
        parse_definition(text)


def test_parse_fractions_and_file(tmp_path):
    text = "name: b\ndim: 2\nbasis: t x\nbrackets:\n  1 2 -> [(2, 1/2)]\n"
    p = tmp_path / "b.lie"
    p.write_text(text)
    g = resolve(str(p))
    assert g.structure(0, 1) == {1: Fraction(1, 2)}


def test_semidirect_dual_uses_coadjoint_action():
    g = sl2()
    L = semidirect_dual(g)
    assert L.jacobi_check()
    # [e_i, e^j] = -sum_k f_ik^j e^k: [H, E*] = -2 E*
    assert L.bracket({0: 1}, {4: 1}) == {4: -2}


def test_semidirect_mackey_copy_commutes_with_dual_part():
    L = semidirect_mackey(sl2())
    for a in range(6):
        for c in range(6, 9):
            assert not L.bracket({a: 1}, {c: 1})
    assert L.bracket({6: 1}, {7: 1}) == {7: 2}
