from fractions import Fraction

from polylie import freelie
from polylie.glin import Elt
from polylie.tlie import (
    b_symmetrize,
    lambda_flatten,
    mu_hat,
    omega_hat,
    pair_term,
    psi_apply,
    theta_apply,
    verify_observation1,
    verify_prop16,
)

Q = Fraction


def _ctx2():
    return freelie.context(freelie.odd_gens(2))


def test_mu_hat_on_one_letter_word():
    ctx = _ctx2()
    z0, z1 = ctx.lie_basis(1)
    out = mu_hat(ctx, pair_term((z0,), z1))
    assert out == Elt({(z0, z1): Q(1, 2), (z1, z0): Q(-1, 2)})


def test_omega_hat_brackets_into_final_factor():
    ctx = _ctx2()
    z0, z1 = ctx.lie_basis(1)
    out = omega_hat(ctx, pair_term((z0,), z1))
    bracket = ctx.bracket_letter(z0, z1)
    assert out == Elt({((), bracket): Q(1)})


def test_omega_hat_tail_sign():
    ctx = _ctx2()
    z0, z1 = ctx.lie_basis(1)
    out = omega_hat(ctx, pair_term((z0, z1), z0))
    b00 = ctx.bracket_letter(z0, z0)
    b10 = ctx.bracket_letter(z1, z0)
    # removing the first letter crosses the odd second letter
    assert out == Elt({((z1,), b00): Q(-1), ((z0,), b10): Q(1)})


def test_theta_on_empty_word_is_plain_insertion():
    ctx = _ctx2()
    z0, _z1 = ctx.lie_basis(1)
    assert theta_apply(ctx, pair_term((), z0)) == Elt({(z0,): Q(1)})


def test_psi_two_letters_structure():
    ctx = _ctx2()
    z0, z1 = ctx.lie_basis(1)
    out = psi_apply(ctx, [z0, z1])
    bracket = ctx.bracket_letter(z0, z1)
    assert out == Elt(
        {(z0, z1): Q(1, 2), (z1, z0): Q(-1, 2), (bracket,): Q(1, 2)}
    )


def test_psi_repeated_odd_letter():
    ctx = _ctx2()
    z0, _z1 = ctx.lie_basis(1)
    out = psi_apply(ctx, [z0, z0])
    bracket = ctx.bracket_letter(z0, z0)
    # the word part cancels, only the bracket survives
    assert out == Elt({(bracket,): Q(1, 2)})
    assert lambda_flatten(out) == Elt({(0, 0): Q(1)})


def test_b_symmetrize_matches_flat_symmetrization():
    ctx = _ctx2()
    letters = ctx.letters_upto(2)
    for word in freelie._sym_words_by_length(letters, 2):
        flat = lambda_flatten(b_symmetrize(Elt({tuple(word): Q(1)})))
        assert flat == freelie.symmetrize_word(tuple(word))


def test_observation1_small():
    report = verify_observation1(k_max=2, j_max=2)
    assert report.ok, [c.detail for c in report.failures()]


def test_prop16_small():
    report = verify_prop16(q=2, max_deg=1, max_sym_len=2)
    assert report.ok, [c.detail for c in report.failures()]
