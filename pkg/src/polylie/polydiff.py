"""Polydifferential operators on affine space with polynomial coefficients.

An operator term is keyed by ``(slots, mono)``: ``slots`` is a tuple of
multi-indices (one per argument, each a length-m exponent tuple) and
``mono`` a coefficient monomial.  The value is a rational coefficient, so
a general operator is an Elt over such keys and

    D(f_1, ..., f_n) = sum  c * x^mono * prod_j  d^{I_j} f_j.

The zero multi-index is a legitimate slot (multiplication by the
argument); it shows up in the coboundary.  The homological degree of a
term is its number of slots, and every Koszul sign below treats each
slot as degree 1.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import comb

from . import symgrp
from .glin import (
    Elt,
    LinearMapRep,
    OpSchema,
    Q0,
    Q1,
    enumerate_component,
    koszul_sign,
    monomials_upto,
    solve_in_image,
)
from .report import VerificationReport, timed_check


class NotACocycleError(ValueError):
    """Raised when a coboundary witness is requested for a non-cocycle."""


# ---------------------------------------------------------------------------
# polynomials: Elt keyed by exponent tuples


def poly_mono(mono, coeff=Q1) -> Elt:
    return Elt({tuple(mono): coeff})


def poly_mul(a: Elt, b: Elt) -> Elt:
    data = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            key = tuple(x + y for x, y in zip(ma, mb))
            acc = data.get(key, Q0) + ca * cb
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
    return Elt(data)


def poly_diff(p: Elt, index) -> Elt:
    """Apply d^index with the usual falling-factorial monomial rule."""
    out = {}
    for mono, c in p.terms.items():
        factor = 1
        new = []
        for a, k in zip(mono, index):
            if a < k:
                factor = 0
                break
            for step in range(k):
                factor *= a - step
            new.append(a - k)
        if factor:
            key = tuple(new)
            acc = out.get(key, Q0) + c * factor
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return Elt(out)


# ---------------------------------------------------------------------------
# operators


def op_term(slots, mono, coeff=Q1) -> Elt:
    return Elt({(tuple(tuple(s) for s in slots), tuple(mono)): coeff})


def unit_op(m: int) -> Elt:
    return op_term((), (0,) * m)


def zero_index(m: int):
    return (0,) * m


def partial_op(m: int, direction: int, coeff_mono=None) -> Elt:
    """The first-order operator d/dx_direction (1-based), optionally decorated."""
    if not 1 <= direction <= m:
        raise ValueError("direction out of range")
    index = tuple(1 if t == direction - 1 else 0 for t in range(m))
    return op_term((index,), coeff_mono if coeff_mono is not None else (0,) * m)


def op_scale_poly(g: Elt, op: Elt) -> Elt:
    """Multiply the coefficient polynomial: O-module structure."""
    data = {}
    for (slots, mono), c in op.terms.items():
        for mg, cg in g.terms.items():
            key = (slots, tuple(x + y for x, y in zip(mono, mg)))
            acc = data.get(key, Q0) + c * cg
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
    return Elt(data)


def evaluate(op: Elt, args) -> Elt:
    """Apply the operator to polynomials, one per slot."""
    args = tuple(args)
    out = Elt.zero()
    for (slots, mono), c in op.terms.items():
        if len(slots) != len(args):
            raise ValueError(
                "operator term has %d slots, got %d arguments" % (len(slots), len(args))
            )
        prod = poly_mono(mono, c)
        for index, arg in zip(slots, args):
            if not prod:
                break
            prod = poly_mul(prod, poly_diff(arg, index))
        out = out + prod
    return out


def multiply_m(a: Elt, b: Elt) -> Elt:
    """Concatenation product: slots are juxtaposed, coefficients multiply."""
    data = {}
    for (sa, ma), ca in a.terms.items():
        for (sb, mb), cb in b.terms.items():
            key = (sa + sb, tuple(x + y for x, y in zip(ma, mb)))
            acc = data.get(key, Q0) + ca * cb
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
    return Elt(data)


def multiply_list(ops) -> Elt:
    ops = list(ops)
    out = ops[0]
    for op in ops[1:]:
        out = multiply_m(out, op)
    return out


def bracket_d(a: Elt, b: Elt) -> Elt:
    """Concatenation commutator [a,b] = ab - (-1)^{|a||b|} ba, slot-count graded.

    This is not the operator-composition commutator; coefficients stay in
    place, making the bracket O-bilinear.
    """
    out = multiply_m(a, b)
    for (sb, mb), cb in b.terms.items():
        for (sa, ma), ca in a.terms.items():
            sign = -1 if (len(sa) * len(sb)) % 2 == 0 else 1
            key = (sb + sa, tuple(x + y for x, y in zip(ma, mb)))
            out = out + Elt({key: sign * ca * cb})
    return out


def multinom(index, sub) -> int:
    out = 1
    for a, b in zip(index, sub):
        out *= comb(a, b)
    return out


def sub_indices(index):
    """All multi-indices J with 0 <= J <= index, componentwise."""
    return itertools.product(*(range(a + 1) for a in index))


def hochschild_d(op: Elt) -> Elt:
    """The coboundary on operator terms.

    On c * x^mono * d^{I_1} (x) ... (x) d^{I_n}: a multiplication slot is
    prepended, each slot is Leibniz-split with multinomial weights and
    sign (-1)^i, and a multiplication slot is appended with sign
    (-1)^{n+1}.  The coefficient monomial rides along untouched, so d is
    O-linear by construction; the pointwise oracle below certifies that
    this combinatorial formula is the actual Hochschild differential.
    """
    data = {}

    def add(slots, mono, c):
        key = (slots, mono)
        acc = data.get(key, Q0) + c
        if acc:
            data[key] = acc
        else:
            data.pop(key, None)

    for (slots, mono), c in op.terms.items():
        n = len(slots)
        zero = zero_index(len(mono))
        add((zero,) + slots, mono, c)
        add(slots + (zero,), mono, -c if n % 2 == 0 else c)
        for i in range(1, n + 1):
            index = slots[i - 1]
            sign = -1 if i % 2 else 1
            for sub in sub_indices(index):
                rest = tuple(a - b for a, b in zip(index, sub))
                new_slots = slots[: i - 1] + (sub, rest) + slots[i:]
                add(new_slots, mono, sign * multinom(index, sub) * c)
    return Elt(data)


def connection_nabla(direction: int, op: Elt) -> Elt:
    """Post-compose with d/dx_direction (1-based coordinate)."""
    out = Elt.zero()
    for (slots, mono), c in op.terms.items():
        m = len(mono)
        if not 1 <= direction <= m:
            raise ValueError("direction out of range")
        t = direction - 1
        if mono[t]:
            lowered = mono[:t] + (mono[t] - 1,) + mono[t + 1:]
            out = out + Elt({(slots, lowered): c * mono[t]})
        for j, index in enumerate(slots):
            raised = index[:t] + (index[t] + 1,) + index[t + 1:]
            out = out + Elt({(slots[:j] + (raised,) + slots[j + 1:], mono): c})
    return out


def coproduct_delta(op: Elt) -> Elt:
    """Signed unshuffle of slots; result keyed by (left key, right key).

    Every slot counts as degree 1 for the sign; the coefficient monomial
    stays with the left factor, the right factor is constant-coefficient.
    """
    data = {}
    for (slots, mono), c in op.terms.items():
        n = len(slots)
        zero = zero_index(len(mono))
        for size in range(n + 1):
            for sel in itertools.combinations(range(n), size):
                rest = tuple(i for i in range(n) if i not in sel)
                sign = koszul_sign((1,) * n, sel + rest)
                left = (tuple(slots[i] for i in sel), mono)
                right = (tuple(slots[i] for i in rest), zero)
                key = (left, right)
                acc = data.get(key, Q0) + sign * c
                if acc:
                    data[key] = acc
                else:
                    data.pop(key, None)
    return Elt(data)


def counit(op: Elt) -> Elt:
    """The polynomial part sitting in homological degree 0."""
    return Elt({mono: c for (slots, mono), c in op.terms.items() if not slots})


def adams_psi(p: int, op: Elt) -> Elt:
    """p-fold coproduct followed by p-fold product: slots are distributed
    over p ordered blocks in all ways, with the block-sort Koszul sign."""
    if p < 1:
        raise ValueError("adams parameter must be >= 1")
    data = {}
    for (slots, mono), c in op.terms.items():
        n = len(slots)
        for blocks in itertools.product(range(p), repeat=n):
            order = tuple(sorted(range(n), key=lambda i: (blocks[i], i)))
            sign = koszul_sign((1,) * n, order)
            key = (tuple(slots[i] for i in order), mono)
            acc = data.get(key, Q0) + sign * c
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
    return Elt(data)


def lie_membership_Ld1(op: Elt) -> bool:
    """Whether each degree-n part is fixed by the signed cycle projector
    acting on slots, coefficients inert."""
    by_n = {}
    for (slots, mono), c in op.terms.items():
        by_n.setdefault(len(slots), {})[(slots, mono)] = c
    for n, terms in by_n.items():
        if n == 0:
            return False
        projected = {}
        for g, gc in symgrp.e_n(n).terms.items():
            for (slots, mono), c in terms.items():
                gathered = tuple(slots[g[j]] for j in range(n))
                sign = koszul_sign((1,) * n, g)
                key = (gathered, mono)
                acc = projected.get(key, Q0) + sign * gc * c * Fraction(1, n)
                if acc:
                    projected[key] = acc
                else:
                    projected.pop(key, None)
        if projected != terms:
            return False
    return True


# ---------------------------------------------------------------------------
# canonical text encoding


def _index_text(index):
    return "d[%s]" % ",".join(str(a) for a in index)


def op_text(op: Elt) -> str:
    """Stable text form: terms `coeff * x[mono] * d[I_1]⊗...⊗d[I_n]`,
    sorted by slot count, slots, then monomial; zero is '0'."""
    if not op:
        return "0"
    parts = []
    for (slots, mono), c in sorted(
        op.terms.items(), key=lambda t: (len(t[0][0]), t[0][0], t[0][1])
    ):
        factors = [str(c)]
        if any(mono):
            factors.append("x[%s]" % ",".join(str(a) for a in mono))
        if slots:
            factors.append("⊗".join(_index_text(i) for i in slots))
        parts.append(" * ".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# coboundary witnesses


def _slot_tuples(m: int, nslots: int, total_order: int):
    """All nslots-tuples of multi-indices with the given total order."""
    if nslots == 0:
        return [()] if total_order == 0 else []
    out = []
    for first_order in range(total_order + 1):
        firsts = [idx for idx in monomials_upto(m, first_order) if sum(idx) == first_order]
        for rest in _slot_tuples(m, nslots - 1, total_order - first_order):
            for first in firsts:
                out.append((first,) + rest)
    return sorted(out)


def coboundary_witness(op: Elt, max_extra_order: int = 0):
    """Solve d(h) = op exactly; None when no bounded witness exists.

    The coboundary preserves slot count plus one, total slot order, and
    the coefficient monomial, so the solve decomposes into finite slices
    and is complete: a None is a certificate that no polynomial witness
    exists at all.  Raises NotACocycleError when d(op) != 0.
    """
    if not op:
        return Elt.zero()
    if hochschild_d(op):
        raise NotACocycleError("operator is not a coboundary candidate: d(op) != 0")
    slices = {}
    for (slots, mono), c in op.terms.items():
        key = (len(slots), sum(sum(s) for s in slots), mono)
        slices.setdefault(key, {})[(slots, mono)] = c
    witness = Elt.zero()
    for (n, order, mono), terms in sorted(slices.items()):
        if n == 0:
            return None  # d never lands in degree 0
        m = len(mono)
        domain = [(s, mono) for s in _slot_tuples(m, n - 1, order)]
        codomain = [(s, mono) for s in _slot_tuples(m, n, order)]
        allowed = set(codomain)
        if any(key not in allowed for key in terms):
            return None
        rep = LinearMapRep.from_function(
            domain, codomain, lambda key: hochschild_d(Elt({key: Q1}))
        )
        solved = solve_in_image(rep, Elt(terms))
        if solved is None:
            return None
        witness = witness + solved
    return witness


# ---------------------------------------------------------------------------
# seeded sampling


def random_polynomial(rng: random.Random, m: int, coeff_deg: int, nterms: int = 2) -> Elt:
    out = Elt.zero()
    monos = monomials_upto(m, coeff_deg)
    for _ in range(nterms):
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        out = out + poly_mono(rng.choice(monos), c)
    return out if out else poly_mono((0,) * m)


def random_op(
    rng: random.Random,
    m: int,
    nslots: int,
    order_max: int,
    coeff_deg: int,
    nterms: int = 2,
) -> Elt:
    """A sparse seeded operator with bounded slot orders and coefficient degree."""
    out = Elt.zero()
    monos = monomials_upto(m, coeff_deg)
    for _ in range(nterms):
        budget = order_max
        slots = []
        for _slot in range(nslots):
            order = rng.randint(0, min(2, budget))
            budget -= order
            choices = [idx for idx in monomials_upto(m, order) if sum(idx) == order]
            slots.append(rng.choice(choices))
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        out = out + op_term(tuple(slots), rng.choice(monos), c)
    return out if out else op_term(((zero_index(m),) * nslots), (0,) * m)


# ---------------------------------------------------------------------------
# verification suites


def hochschild_d_oracle_check(op: Elt, sample_deg: int, m: int) -> bool:
    """Pointwise comparison of the combinatorial coboundary with its
    definition on all monomial argument tuples up to sample_deg."""
    slot_counts = {len(slots) for (slots, _mono) in op.terms}
    if len(slot_counts) > 1:
        raise ValueError("oracle check expects a slot-homogeneous operator")
    n = slot_counts.pop() if slot_counts else 0
    d_op = hochschild_d(op)
    monos = [poly_mono(mu) for mu in monomials_upto(m, sample_deg)]
    for args in itertools.product(monos, repeat=n + 1):
        lhs = evaluate(d_op, args)
        rhs = poly_mul(args[0], evaluate(op, args[1:]))
        for i in range(1, n + 1):
            merged = args[: i - 1] + (poly_mul(args[i - 1], args[i]),) + args[i + 1:]
            sign = -1 if i % 2 else 1
            rhs = rhs + evaluate(op, merged) * sign
        tail = poly_mul(evaluate(op, args[:-1]), args[-1])
        rhs = rhs + (tail * (-1 if n % 2 == 0 else 1))
        if lhs != rhs:
            return False
    return True


def verify_hochschild_basics(
    m_max: int = 2,
    samples: int = 50,
    seed: int = 0,
    order_max: int = 4,
    coeff_deg: int = 2,
    degree_max: int = 4,
) -> VerificationReport:
    """d ^ 2 = 0, O-linearity of d, and the pointwise oracle on seeded ops."""
    cfg = {
        "m_max": m_max,
        "samples": samples,
        "seed": seed,
        "order_max": order_max,
        "coeff_deg": coeff_deg,
        "degree_max": degree_max,
    }
    report = VerificationReport("hochschild_basics", cfg)
    rng = random.Random(seed)
    pool = []
    for i in range(samples):
        m = 1 + (i % m_max)
        nslots = rng.randint(0, degree_max)
        pool.append((m, random_op(rng, m, nslots, order_max, coeff_deg)))

    def dd_zero():
        for m, op in pool:
            if hochschild_d(hochschild_d(op)):
                return False, "d(d(op)) != 0 for %s" % op_text(op)
        return True, "d o d = 0 on %d seeded operators" % len(pool)

    report.add(timed_check("d_squared_zero", dd_zero))

    def o_linear():
        for m, op in pool:
            g = random_polynomial(rng, m, coeff_deg)
            if hochschild_d(op_scale_poly(g, op)) != op_scale_poly(g, hochschild_d(op)):
                return False, "d(g*op) != g*d(op) for %s" % op_text(op)
        return True, "coefficient-linearity of d on %d seeded operators" % len(pool)

    report.add(timed_check("d_coefficient_linear", o_linear))

    def oracle():
        for m, op in pool:
            nslots = max((len(s) for (s, _mu) in op.terms), default=0)
            sample_deg = 2 if nslots <= 2 else 1
            if not hochschild_d_oracle_check(op, sample_deg, m):
                return False, "pointwise mismatch for %s" % op_text(op)
        return True, "combinatorial d matches pointwise evaluation on %d operators" % len(pool)

    report.add(timed_check("d_pointwise_oracle", oracle))

    def named_examples():
        if hochschild_d(partial_op(2, 1)):
            return False, "d of a derivation is nonzero"
        d2 = op_term(((2,),), (0,))
        if hochschild_d(d2) != op_term(((1,), (1,)), (0,), Fraction(-2)):
            return False, "d of the order-2 slot is not -2 d(x)d"
        if hochschild_d(op_term((), (1, 0))) != Elt.zero():
            return False, "d nonzero on degree 0"
        if not hochschild_d_oracle_check(d2, 3, 1):
            return False, "order-2 slot fails the degree-3 oracle"
        return True, "pinned examples match (derivations closed, d(d^2) = -2 d(x)d)"

    report.add(timed_check("d_pinned_examples", named_examples))
    return report


def verify_hopf_axioms(
    m_max: int = 2,
    samples: int = 50,
    seed: int = 0,
    order_max: int = 3,
    coeff_deg: int = 2,
    degree_max: int = 3,
) -> VerificationReport:
    """Leibniz, coassociativity, algebra-map coproduct, counit, coderivation."""
    cfg = {
        "m_max": m_max,
        "samples": samples,
        "seed": seed,
        "order_max": order_max,
        "coeff_deg": coeff_deg,
        "degree_max": degree_max,
    }
    report = VerificationReport("hopf_structure", cfg)
    rng = random.Random(seed)
    pairs = []
    for i in range(samples):
        m = 1 + (i % m_max)
        a = random_op(rng, m, rng.randint(0, degree_max), order_max, coeff_deg)
        b = random_op(rng, m, rng.randint(0, degree_max), order_max, coeff_deg)
        pairs.append((m, a, b))

    def nslots_of(key):
        return len(key[0])

    def t2_multiply(x: Elt, y: Elt) -> Elt:
        data = {}
        for (al, ar), ca in x.terms.items():
            for (bl, br), cb in y.terms.items():
                sign = -1 if (nslots_of(ar) * nslots_of(bl)) % 2 else 1
                left = multiply_m(Elt({al: Q1}), Elt({bl: Q1}))
                right = multiply_m(Elt({ar: Q1}), Elt({br: Q1}))
                for kl, cl in left.terms.items():
                    for kr, cr in right.terms.items():
                        key = (kl, kr)
                        acc = data.get(key, Q0) + sign * ca * cb * cl * cr
                        if acc:
                            data[key] = acc
                        else:
                            data.pop(key, None)
        return Elt(data)

    def delta_side(x: Elt, side: int) -> Elt:
        """Coproduct applied to one tensor factor of a pair element."""
        data = {}
        for (kl, kr), c in x.terms.items():
            inner = coproduct_delta(Elt({(kl if side == 0 else kr): Q1}))
            for (k1, k2), ci in inner.terms.items():
                key = (k1, k2, kr) if side == 0 else (kl, k1, k2)
                acc = data.get(key, Q0) + c * ci
                if acc:
                    data[key] = acc
                else:
                    data.pop(key, None)
        return Elt(data)

    def d_side(x: Elt, side: int) -> Elt:
        """Coboundary applied to one factor, with the Koszul sign for side 1."""
        data = {}
        for (kl, kr), c in x.terms.items():
            if side == 0:
                moved = hochschild_d(Elt({kl: Q1}))
                for k, ci in moved.terms.items():
                    key = (k, kr)
                    acc = data.get(key, Q0) + c * ci
                    if acc:
                        data[key] = acc
                    else:
                        data.pop(key, None)
            else:
                sign = -1 if nslots_of(kl) % 2 else 1
                moved = hochschild_d(Elt({kr: Q1}))
                for k, ci in moved.terms.items():
                    key = (kl, k)
                    acc = data.get(key, Q0) + sign * c * ci
                    if acc:
                        data[key] = acc
                    else:
                        data.pop(key, None)
        return Elt(data)

    def leibniz():
        for m, a, b in pairs:
            for (sa, _ma) in a.terms:
                na = len(sa)
                break
            else:
                na = 0
            lhs = hochschild_d(multiply_m(a, b))
            rhs = multiply_m(hochschild_d(a), b) + multiply_m(a, hochschild_d(b)) * (
                -1 if na % 2 else 1
            )
            if lhs != rhs:
                return False, "Leibniz fails for %s ; %s" % (op_text(a), op_text(b))
        return True, "d is a graded derivation for the product on %d pairs" % len(pairs)

    report.add(timed_check("leibniz_product", leibniz))

    def algebra_map():
        for m, a, b in pairs:
            if coproduct_delta(multiply_m(a, b)) != t2_multiply(
                coproduct_delta(a), coproduct_delta(b)
            ):
                return False, "Delta(ab) != Delta(a)Delta(b) for %s ; %s" % (
                    op_text(a),
                    op_text(b),
                )
        return True, "coproduct is an algebra map on %d pairs" % len(pairs)

    report.add(timed_check("coproduct_algebra_map", algebra_map))

    def coassociativity():
        for m, a, _b in pairs:
            d1 = coproduct_delta(a)
            if delta_side(d1, 0) != delta_side(d1, 1):
                return False, "coassociativity fails for %s" % op_text(a)
        return True, "coassociativity on %d samples" % len(pairs)

    report.add(timed_check("coassociativity", coassociativity))

    def counit_axiom():
        for m, a, _b in pairs:
            left_sum = Elt.zero()
            right_sum = Elt.zero()
            for (kl, kr), c in coproduct_delta(a).terms.items():
                eps_l = counit(Elt({kl: Q1}))
                if eps_l:
                    right_sum = right_sum + op_scale_poly(eps_l, Elt({kr: c}))
                eps_r = counit(Elt({kr: Q1}))
                if eps_r:
                    left_sum = left_sum + op_scale_poly(eps_r, Elt({kl: c}))
            if left_sum != a or right_sum != a:
                return False, "counit axiom fails for %s" % op_text(a)
        return True, "counit axioms on %d samples" % len(pairs)

    report.add(timed_check("counit", counit_axiom))

    def unit_grouplike():
        for m in range(1, m_max + 1):
            one = unit_op(m)
            expected = Elt({(((), (0,) * m), ((), (0,) * m)): Q1})
            if coproduct_delta(one) != expected:
                return False, "unit is not grouplike at m=%d" % m
        return True, "unit grouplike for all m"

    report.add(timed_check("unit_grouplike", unit_grouplike))

    def coderivation():
        for m, a, _b in pairs:
            lhs = coproduct_delta(hochschild_d(a))
            da = coproduct_delta(a)
            rhs = d_side(da, 0) + d_side(da, 1)
            if lhs != rhs:
                return False, "d is not a coderivation on %s" % op_text(a)
        return True, "d is a coderivation for the coproduct on %d samples" % len(pairs)

    report.add(timed_check("coderivation", coderivation))
    return report


def verify_prop3_closure(
    m_max: int = 2, order_max: int = 4, coeff_deg: int = 2, seed: int = 0
) -> VerificationReport:
    """d of every generator slot stays in the Lie subspace; the splitting
    constants are exactly the multinomials."""
    cfg = {"m_max": m_max, "order_max": order_max, "coeff_deg": coeff_deg, "seed": seed}
    report = VerificationReport("generator_closure", cfg)
    rng = random.Random(seed)
    for m in range(1, m_max + 1):
        def membership(m=m):
            count = 0
            for index in _all_indices(m, order_max):
                op = op_term((index,), (0,) * m)
                if not lie_membership_Ld1(hochschild_d(op)):
                    return False, "d of %s leaves the Lie subspace" % _index_text(index)
                g = random_polynomial(rng, m, coeff_deg)
                if not lie_membership_Ld1(hochschild_d(op_scale_poly(g, op))):
                    return False, "decorated d of %s leaves the Lie subspace" % _index_text(index)
                count += 1
            return True, "d closed into the Lie subspace for %d generators, m=%d" % (count, m)

        report.add(timed_check("closure_m%d" % m, membership))

        def constants(m=m):
            for index in _all_indices(m, order_max):
                d_op = hochschild_d(op_term((index,), (0,) * m))
                # d(generator) = - sum over proper splittings with these weights
                for sub in sub_indices(index):
                    rest = tuple(a - b for a, b in zip(index, sub))
                    if sum(sub) == 0 or sum(rest) == 0:
                        continue
                    got = d_op.coeff(((sub, rest), (0,) * m))
                    if got != -multinom(index, sub):
                        return False, "splitting constant at %s | %s is %s" % (
                            _index_text(sub),
                            _index_text(rest),
                            got,
                        )
            return True, "splitting constants equal multinomials, m=%d" % m

        report.add(timed_check("constants_m%d" % m, constants))
    return report


def _all_indices(m: int, order_max: int):
    return [idx for idx in monomials_upto(m, order_max) if 1 <= sum(idx) <= order_max]


def verify_theorem2(
    m_max: int = 2,
    degree_max: int = 3,
    samples: int = 30,
    seed: int = 0,
    order_max: int = 2,
    coeff_deg: int = 2,
) -> VerificationReport:
    """The connection commutes with d up to the bracket with the direction."""
    cfg = {
        "m_max": m_max,
        "degree_max": degree_max,
        "samples": samples,
        "seed": seed,
        "order_max": order_max,
        "coeff_deg": coeff_deg,
    }
    report = VerificationReport("connection_commutator", cfg)
    rng = random.Random(seed)

    def check_one(m, op, nslots):
        for direction in range(1, m + 1):
            partial = partial_op(m, direction)
            lhs = hochschild_d(connection_nabla(direction, op)) - connection_nabla(
                direction, hochschild_d(op)
            )
            lhs = lhs * (-1 if nslots % 2 else 1)
            if lhs != bracket_d(op, partial):
                return direction
        return None

    def seed_case():
        for m in range(1, m_max + 1):
            for index in _all_indices(m, 3):
                bad = check_one(m, op_term((index,), (0,) * m), 1)
                if bad is not None:
                    return False, "identity fails for %s, direction %d" % (
                        _index_text(index),
                        bad,
                    )
        return True, "identity on every bare generator slot, order <= 3"

    report.add(timed_check("generator_case", seed_case))

    def sampled():
        count = 0
        attempts = 0
        while count < samples and attempts < samples * 4:
            attempts += 1
            m = 1 + (count % m_max)
            depth = 1 + (count % degree_max)
            factors = [
                random_op(rng, m, 1, order_max, coeff_deg, nterms=1) for _ in range(depth)
            ]
            op = factors[-1]
            for f in reversed(factors[:-1]):
                op = bracket_d(f, op)
            if not op:
                continue
            if not lie_membership_Ld1(op):
                return False, "sampled nested bracket left the Lie subspace"
            bad = check_one(m, op, depth)
            if bad is not None:
                return False, "identity fails on sample %d, direction %d" % (count, bad)
            count += 1
        return True, "identity on %d nested-bracket samples, every direction" % samples

    report.add(timed_check("nested_bracket_samples", sampled))

    def leibniz_for_nabla():
        for i in range(10):
            m = 1 + (i % m_max)
            a = random_op(rng, m, rng.randint(1, 2), order_max, coeff_deg, nterms=1)
            b = random_op(rng, m, rng.randint(1, 2), order_max, coeff_deg, nterms=1)
            for direction in range(1, m + 1):
                lhs = connection_nabla(direction, bracket_d(a, b))
                rhs = bracket_d(connection_nabla(direction, a), b) + bracket_d(
                    a, connection_nabla(direction, b)
                )
                if lhs != rhs:
                    return False, "connection is not a bracket derivation"
        return True, "connection is a derivation of the bracket on samples"

    report.add(timed_check("nabla_bracket_derivation", leibniz_for_nabla))
    return report


def verify_atiyah_witnesses(
    m_max: int = 2, pairs: int = 20, coeff_deg: int = 2, seed: int = 0
) -> VerificationReport:
    """Brackets of first-order images admit coboundary witnesses; the
    antisymmetric class admits none."""
    cfg = {"m_max": m_max, "pairs": pairs, "coeff_deg": coeff_deg, "seed": seed}
    report = VerificationReport("atiyah_vanishing", cfg)
    rng = random.Random(seed)

    def vector_field_op(m):
        out = Elt.zero()
        for direction in range(1, m + 1):
            if rng.random() < 0.7:
                coeff = random_polynomial(rng, m, coeff_deg, nterms=1)
                out = out + op_scale_poly(coeff, partial_op(m, direction))
        return out

    def witnesses():
        found = 0
        tried = 0
        samples = []
        while found < pairs and tried < pairs * 4:
            tried += 1
            m = 1 + (found % m_max)
            u, v = vector_field_op(m), vector_field_op(m)
            commutator = bracket_d(u, v)
            if not commutator:
                continue
            witness = coboundary_witness(commutator)
            if witness is None:
                return False, "no witness for a bracket of vector fields", None
            if hochschild_d(witness) != commutator:
                return False, "witness verification failed", None
            found += 1
            if len(samples) < 3:
                samples.append(op_text(witness))
        if found < pairs:
            return False, "only %d usable pairs" % found, None
        return True, "witnesses found for %d vector-field brackets" % found, "; ".join(samples)

    report.add(timed_check("bracket_witnesses", witnesses))

    def pinned_pair():
        m = 2
        lhs = bracket_d(partial_op(m, 1), partial_op(m, 2))
        witness = coboundary_witness(lhs)
        expected = op_term(((1, 1),), (0, 0), Fraction(-1))
        if witness != expected:
            return False, "mixed-index witness is %s" % (
                op_text(witness) if witness else "absent"
            ), None
        return True, "bracket of the two coordinate derivations bounds the mixed slot", op_text(
            witness
        )

    report.add(timed_check("mixed_index_witness", pinned_pair))

    def hkr_class_obstructed():
        m = 2
        cls = op_term(((1, 0), (0, 1)), (0, 0)) - op_term(((0, 1), (1, 0)), (0, 0))
        witness = coboundary_witness(cls)
        if witness is not None:
            return False, "antisymmetric class unexpectedly exact: %s" % op_text(witness)
        return True, "antisymmetric two-slot class has no witness (complete bounded solve)"

    report.add(timed_check("antisymmetric_class_not_exact", hkr_class_obstructed))
    return report
