import random
from fractions import Fraction
from itertools import permutations

import pytest

from twistlab.envalg import (PBW, confluence_violations, envelope, star_closed_form, symmetrise, unsymmetrise)
from twistlab.exact import HSeries, Poly
from twistlab.lie import LieAlgebra, abelian, bplus, sl2

H, E, F = 0, 1, 2


def test_out_of_order_pair_rewrites_once():
    pbw = PBW(sl2())
    assert pbw.word((F, E)) == {(E, F): 1, (H,): -1}
    assert pbw.word((H, E, F)) == {(H, E, F): 1}


def test_confluence_on_all_sl2_words_of_length_4():
    from itertools import product
    words = [w for n in range(5) for w in product(range(3), repeat=n)]
    assert confluence_violations(sl2(), words) == []


def test_confluence_detects_a_non_lie_bracket():
    bad = LieAlgebra("bad", ["a", "b", "c"], {(0, 1): {0: 1}, (1, 2): {1: 1}, (0, 2): {2: 1}}, check=False)
    assert confluence_violations(bad, [(2, 1, 0)])


def test_phi_of_hef_is_the_six_term_average():
    g = sl2()
    pbw = PBW(g)
    avg = {}
    for p in permutations((H, E, F)):
        for m, c in pbw.word(p).items():
            avg[m] = avg.get(m, 0) + Fraction(c, 6)
    env = envelope(g)
    got = env.phi(Poly.monomial(g.basis, (1, 1, 1)), 3)
    flat = {}
    for (h, m), c in got.items():
        flat[m] = flat.get(m, 0) + c
    assert {m: c for m, c in flat.items() if c} == {m: c for m, c in avg.items() if c}


def test_phi_of_a_power_is_the_power():
    g = sl2()
    env = envelope(g)
    assert envelope(g).phi(Poly.monomial(g.basis, (0, 3, 0)), 3) == {(0, (E, E, E)): 1}
    assert env.phi(Poly.const(g.basis, 1), 2) == {(0, ()): 1}


def test_unsymmetrise_inverts_symmetrise():
    g = sl2()
    rng = random.Random(0)
    for _ in range(20):
        e = tuple(rng.randint(0, 2) for _ in range(3))
        p = Poly.monomial(g.basis, e)
        back = unsymmetrise(symmetrise(p, g, 5), g, 5)
        assert back[0] == p and not any(back.coeffs[1:])


def test_star_of_generators():
    g = sl2()
    env = envelope(g)
    h, e = Poly.var(g.basis, "H"), Poly.var(g.basis, "E")
    assert env.star(h, e, 2) == HSeries((h * e, e, e * 0))


def test_abelian_star_is_plain_product():
    g = abelian(2)
    env = envelope(g)
    a, b = (Poly.var(g.basis, n) for n in g.basis)
    assert env.star(a * a * b, a * b, 3) == HSeries((a**3 * b**2, a * 0, a * 0, a * 0))


def test_closed_form_single_letters():
    g = sl2()
    # w * v = wv - (h/2)[v, w]
    got = star_closed_form([E], [H], g)
    h, e = Poly.var(g.basis, "H"), Poly.var(g.basis, "E")
    assert got == HSeries((h * e, -e, e * 0))


def test_bplus_examples():
    g = bplus()
    env = envelope(g)
    t, x = Poly.var(g.basis, "t"), Poly.var(g.basis, "x")
    assert env.star(t, x, 3) == HSeries((x * t, x * Fraction(1, 2), x * 0, x * 0))
    assert env.star(t * t, x, 3) == HSeries((x * t * t, x * t, x * Fraction(1, 6), x * 0))
    assert env.star(t.one(), x * x * t, 3)[0] == x * x * t


@pytest.mark.parametrize("n,m", [(1, 2), (2, 3), (3, 3)])
def test_bplus_phi_inverse_expansion(n, m):
    from twistlab.envalg import bplus_identities
    for key, (got, shown) in bplus_identities(n, m, 1, 1).items():
        assert got == shown, key
