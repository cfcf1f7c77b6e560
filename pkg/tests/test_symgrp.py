from fractions import Fraction

from polylie.glin import Elt
from polylie.symgrp import (
    GroupRingElt,
    act,
    e_n,
    full_sym,
    grp_multiply,
    insertion_average,
    insertion_bracket_composite,
    iota_sum,
    nu_iln,
    perm_after,
    sigma_iln,
    tau_l,
    verify_dynkin,
    verify_star_identity,
)

Q = Fraction


def test_perm_after_is_composition_of_gather_actions():
    a = (1, 2, 0)
    b = (2, 0, 1)
    word = Elt.basis(("x", "y", "z"))
    deg1 = lambda _k: 1
    lhs = act(GroupRingElt.from_perm(perm_after(a, b)), word, degree_of=deg1)
    rhs = act(
        GroupRingElt.from_perm(a),
        act(GroupRingElt.from_perm(b), word, degree_of=deg1),
        degree_of=deg1,
    )
    assert lhs == rhs


def test_tau_cycles_last_positions():
    t = tau_l(4, 3)
    # identity on the untouched prefix
    assert t[0] == 0
    word = Elt.basis((10, 11, 12, 13))
    moved = act(GroupRingElt.from_perm(t), word, degree_of=lambda _k: 2)
    assert moved == Elt.basis((10, 13, 11, 12)) or moved == Elt.basis((10, 12, 13, 11))


def test_sigma_nu_inverse():
    for n, l in ((4, 2), (5, 3)):
        for i in range(1, n - l + 2):
            s = sigma_iln(n, i, l)
            v = nu_iln(n, i, l)
            assert perm_after(s, v) == tuple(range(n))
            assert perm_after(v, s) == tuple(range(n))


def test_e_n_quasi_idempotent():
    for n in (2, 3, 4, 5):
        e = e_n(n)
        assert grp_multiply(e, e) == e.scale(Q(n))


def test_dynkin_projector_fixes_brackets():
    report = verify_dynkin(n_max=4)
    assert report.ok, [c.detail for c in report.failures()]


def test_insertion_average_normalized():
    avg = insertion_average(3, 2)
    total = sum(avg.terms.values())
    assert total == Q(1)


def test_star_identity_small():
    report = verify_star_identity(k_max=2)
    assert report.ok, [c.detail for c in report.failures()]


def test_composite_identity_coefficients_k1():
    # k = 1: the composite sum applied to the two-letter inclusion returns it
    comp0 = insertion_bracket_composite(1, 0)
    comp1 = insertion_bracket_composite(1, 1)
    base = iota_sum(1)
    lhs = grp_multiply(comp0, base) + grp_multiply(comp1, base).scale(Q(1, 2))
    assert lhs == base


def test_full_sym_term_count():
    assert len(full_sym(3).terms) == 6
