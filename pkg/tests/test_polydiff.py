import random
from fractions import Fraction

import pytest

from polylie.glin import Elt
from polylie.polydiff import (
    NotACocycleError,
    adams_psi,
    bracket_d,
    coboundary_witness,
    connection_nabla,
    coproduct_delta,
    counit,
    evaluate,
    hochschild_d,
    multiply_m,
    op_scale_poly,
    op_term,
    op_text,
    partial_op,
    poly_mono,
    random_op,
    unit_op,
)

Q = Fraction


def test_evaluate_two_slot():
    m = 1
    op = op_term(((1,), (1,)), (0,))  # d (x) d
    out = evaluate(op, [poly_mono((1,)), poly_mono((2,))])
    assert out == Elt({(1,): Q(2)})


def test_evaluate_slot_count_mismatch():
    with pytest.raises(ValueError):
        evaluate(op_term(((1,),), (0,)), [poly_mono((1,)), poly_mono((1,))])


def test_hochschild_d_pinned_values():
    m = 1
    second = op_term(((2,),), (0,))
    assert hochschild_d(second) == op_term(((1,), (1,)), (0,)) * Q(-2)
    zeroth = op_term(((0,),), (0,))
    assert hochschild_d(zeroth) == op_term(((0,), (0,)), (0,))
    first = op_term(((1,),), (0,))
    assert hochschild_d(first) == Elt.zero()


def test_hochschild_d_squared_zero_on_seeded_ops():
    rng = random.Random(11)
    for m in (1, 2):
        for _ in range(10):
            op = random_op(rng, m, rng.randint(0, 2), 3, 2)
            assert hochschild_d(hochschild_d(op)) == Elt.zero()


def test_bracket_concatenation_grading():
    m = 1
    d2 = op_term(((2,),), (0,))
    d1 = op_term(((1,),), (0,))
    # both have one slot, odd parity: the bracket is the anticommutator
    assert bracket_d(d2, d1) == multiply_m(d2, d1) + multiply_m(d1, d2)


def test_bracket_of_coordinate_derivations_bounds_mixed_slot():
    m = 2
    lhs = bracket_d(partial_op(m, 1), partial_op(m, 2))
    witness = coboundary_witness(lhs)
    assert witness == op_term(((1, 1),), (0, 0), Q(-1))
    assert hochschild_d(witness) == lhs


def test_coboundary_witness_requires_cocycle():
    with pytest.raises(NotACocycleError):
        coboundary_witness(op_term(((2,),), (0,)))


def test_antisymmetric_class_has_no_witness():
    cls = op_term(((1, 0), (0, 1)), (0, 0)) - op_term(((0, 1), (1, 0)), (0, 0))
    assert coboundary_witness(cls) is None


def test_connection_lowers_coefficient_and_raises_slots():
    m = 1
    op = op_term(((1,),), (1,))  # x * d
    out = connection_nabla(1, op)
    assert out == op_term(((1,),), (0,)) + op_term(((2,),), (1,))


def test_coproduct_grouplike_unit_and_counit():
    m = 1
    one = unit_op(m)
    delta = coproduct_delta(one)
    assert delta == Elt({(next(iter(one.terms)), next(iter(one.terms))): Q(1)})
    assert counit(one) == Elt.basis((0,))
    x_op = op_scale_poly(poly_mono((1,)), unit_op(m))
    assert counit(x_op) == Elt.basis((1,))  # the whole degree-0 polynomial part
    assert counit(partial_op(m, 1)) == Elt.zero()


def test_adams_on_single_slot_is_identity_like():
    m = 1
    d1 = partial_op(m, 1)
    for p in (2, 3):
        assert adams_psi(p, d1) == d1 * Q(p)


def test_op_text_stable():
    m = 2
    op = op_term(((1, 0), (0, 1)), (1, 0), Q(-1, 2))
    text = op_text(op)
    assert "1/2" in text and "d[" in text
    assert op_text(Elt.zero()) == "0"
