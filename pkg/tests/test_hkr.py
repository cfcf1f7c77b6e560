from fractions import Fraction

import pytest

from polylie.glin import Elt
from polylie.hkr import (
    beta,
    i_hkr,
    j_map,
    op_to_tensor,
    p_antisym,
    pi_project,
    tensor_term,
    wedge_term,
)
from polylie.polydiff import op_term, partial_op, poly_mono

Q = Fraction


def test_wedge_term_requires_increasing_directions():
    assert wedge_term((1, 2), (0, 0))
    with pytest.raises(ValueError):
        wedge_term((2, 1), (0, 0))
    with pytest.raises(ValueError):
        wedge_term((1, 1), (0, 0))


def test_i_hkr_two_wedge_explicit():
    m = 2
    out = i_hkr(m, wedge_term((1, 2), (0, 0)))
    expected = (
        op_term(((1, 0), (0, 1)), (0, 0), Q(1, 2))
        - op_term(((0, 1), (1, 0)), (0, 0), Q(1, 2))
    )
    assert out == expected


def test_pi_after_antisym_is_identity():
    m = 3
    for dirs in ((1,), (1, 2), (1, 3), (2, 3), (1, 2, 3)):
        w = wedge_term(dirs, (0, 0, 0))
        assert pi_project(p_antisym(w)) == w


def test_j_after_antisym_matches_i_hkr():
    m = 2
    for dirs in ((1,), (1, 2)):
        w = wedge_term(dirs, (0, 0))
        assert j_map(m, p_antisym(w)) == i_hkr(m, w)


def test_pi_project_kills_repeats_and_sorts():
    assert pi_project(tensor_term((1, 1), (0, 0))) == Elt.zero()
    flipped = pi_project(tensor_term((2, 1), (0, 0)))
    assert flipped == wedge_term((1, 2), (0, 0)) * Q(-1)


def test_op_to_tensor_round_trip():
    m = 2
    t = tensor_term((2, 1), (1, 0))
    assert op_to_tensor(j_map(m, t)) == t
    with pytest.raises(ValueError):
        op_to_tensor(op_term(((1, 1),), (0, 0)))


def test_beta_of_coordinate_field():
    m = 2
    # the field x2 d/dx1 includes as the first-order operator with that coefficient
    op = beta(m, [poly_mono((0, 1)), Elt.zero()])
    assert op == op_term(((1, 0),), (0, 1))
    assert beta(m, []) == Elt.zero()


def test_first_order_inclusion_is_partial():
    m = 2
    assert i_hkr(m, wedge_term((2,), (0, 0))) == partial_op(m, 2)
