from fractions import Fraction

from polylie.freelie import (
    bch_coeffs,
    context,
    dexp_transform,
    inverse_G,
    odd_gens,
    pair_elt,
    sym_normalize,
    symmetrize_I,
    symmetrize_word,
    verify_pbw,
    verify_theorem6,
)
from polylie.glin import Elt

Q = Fraction


def test_bch_coefficients_frozen():
    assert bch_coeffs(4) == [Q(1), Q(1, 2), Q(1, 12), Q(0), Q(-1, 720)]


def test_odd_generator_brackets_do_not_vanish():
    ctx = context(odd_gens(2))
    z0, z1 = ctx.lie_basis(1)
    assert ctx.bracket_letter(z0, z0) is not None
    # odd-odd bracket is the anticommutator on words
    expansion = ctx.bracket_letter(z0, z1).elt
    assert expansion == Elt({(0, 1): Q(1), (1, 0): Q(1)})


def test_lie_basis_dimensions_two_odd_generators():
    ctx = context(odd_gens(2))
    dims = [len(ctx.lie_basis(n)) for n in range(1, 6)]
    assert dims == [2, 3, 2, 3, 6]


def test_sym_normalize_kills_odd_repeats_and_signs_swaps():
    ctx = context(odd_gens(2))
    z0, z1 = ctx.lie_basis(1)
    sign, word = sym_normalize((z1, z0))
    assert sign == -1 and word == (z0, z1)
    sign, _word = sym_normalize((z0, z0))
    assert sign == 0


def test_symmetrize_single_word():
    ctx = context(odd_gens(2))
    z0, z1 = ctx.lie_basis(1)
    out = symmetrize_word((z0, z1))
    assert out == Elt({(0, 1): Q(1, 2), (1, 0): Q(-1, 2)})


def test_inverse_G_on_product_word():
    # the concatenation z0 (x) z1 decomposes as product plus half bracket
    ctx = context(odd_gens(2))
    z0, z1 = ctx.lie_basis(1)
    sym = inverse_G(ctx, Elt.basis((0, 1)))
    assert symmetrize_I(sym) == Elt.basis((0, 1))
    assert sym.terms.get((z0, z1)) == Q(1)
    bracket_letters = [w for w in sym.terms if len(w) == 1]
    assert len(bracket_letters) == 1
    (letter,) = bracket_letters[0]
    assert sym.terms[bracket_letters[0]] * letter.elt == Elt(
        {(0, 1): Q(1, 2), (1, 0): Q(1, 2)}
    )


def test_inverse_G_round_trips_every_basis_word():
    # degreewise bijectivity means every word comes back exactly
    ctx = context(odd_gens(2))
    for degree in (1, 2, 3):
        for word in ctx.word_component(degree):
            sym = inverse_G(ctx, Elt.basis(word))
            assert symmetrize_I(sym) == Elt.basis(word)


def test_lie_membership():
    ctx = context(odd_gens(2))
    z0, z1 = ctx.lie_basis(1)
    bracket = ctx.bracket_words(z0.elt, z1.elt)
    assert ctx.lie_membership(bracket)
    assert not ctx.lie_membership(Elt.basis((0, 1)))


def test_dexp_leading_terms():
    # length-one input: the transform is plain multiplication
    ctx = context(odd_gens(2))
    z0, z1 = ctx.lie_basis(1)
    out = dexp_transform(ctx, pair_elt((z0,), z1))
    plain = sym_normalize((z0, z1))
    assert out.terms.get(plain[1]) == Q(plain[0])
    bracket = ctx.bracket_letter(z0, z1)
    assert out.terms.get((bracket,)) == Q(1, 2)


def test_pbw_smallest():
    report = verify_pbw(q_max=1, n_max=3)
    assert report.ok, [c.detail for c in report.failures()]


def test_theorem6_smallest():
    report = verify_theorem6(q_max=1, max_sym_len=2, max_deg=2)
    assert report.ok, [c.detail for c in report.failures()]
