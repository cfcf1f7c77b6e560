"""Rational symmetric group algebra acting on graded words.

Permutations are stored in one-line image form as tuples over range(n):
``p`` sends a word (w_1 .. w_n) to the signed rearrangement
(w_{p(1)} .. w_{p(n)}), the Koszul sign coming from the letter degrees.
Products are operator composites, ``grp_multiply(a, b)`` meaning "apply b,
then a", and ``act`` realizes them as operators on graded words.

The special elements are the ones the verification suites need: the
l-cycles tau_l on the last l positions, the iterated Dynkin products
e_n = (id - tau_n) o .. o (id - tau_2), the block insertions
sigma(i, l, n) that move the last l letters to position i, their inverses
nu(i, l, n), the embedded sum of S_k inside S_{k+1} fixing the last
letter, and the full symmetrizer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations as iter_permutations

from .glin import Elt, Q0, Q1, koszul_sign
from .report import CheckResult, VerificationReport, timed_check

# ---------------------------------------------------------------------------
# permutations


def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def perm_after(a: tuple, b: tuple) -> tuple:
    """The permutation acting as 'a after b' on words: j -> b[a[j]]."""
    return tuple(b[a[j]] for j in range(len(a)))


def perm_inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for j, image in enumerate(p):
        out[image] = j
    return tuple(out)


def perm_sign(p: tuple) -> int:
    inversions = sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    return -1 if inversions % 2 else 1


# ---------------------------------------------------------------------------
# group ring


class GroupRingElt:
    """Sparse element of Q[S_n]; terms map one-line tuples to Fractions."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for perm, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if len(perm) != n:
                    raise ValueError("permutation size mismatch")
                coeff = Fraction(coeff)
                if coeff:
                    acc = self.terms.get(perm, Q0) + coeff
                    if acc:
                        self.terms[perm] = acc
                    else:
                        self.terms.pop(perm, None)

    @classmethod
    def unit(cls, n):
        return cls(n, {identity_perm(n): Q1})

    @classmethod
    def from_perm(cls, perm, coeff=Q1):
        return cls(len(perm), {tuple(perm): coeff})

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and self.n == other.n and self.terms == other.terms

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mixed S_n sizes")
        data = dict(self.terms)
        for perm, coeff in other.terms.items():
            acc = data.get(perm, Q0) + coeff
            if acc:
                data[perm] = acc
            else:
                data.pop(perm, None)
        return GroupRingElt(self.n, data)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, scalar):
        scalar = Fraction(scalar)
        return GroupRingElt(self.n, {p: c * scalar for p, c in self.terms.items()})

    def __repr__(self):
        parts = ["%s*%s" % (c, list(p)) for p, c in sorted(self.terms.items())]
        return "GrpRing(" + (" + ".join(parts) or "0") + ")"


def grp_multiply(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    """Operator composite 'a after b': act(grp_multiply(a,b), w) = act(a, act(b, w))."""
    if a.n != b.n:
        raise ValueError("mixed S_n sizes")
    data = {}
    for pa, ca in a.terms.items():
        for pb, cb in b.terms.items():
            perm = perm_after(pa, pb)
            acc = data.get(perm, Q0) + ca * cb
            if acc:
                data[perm] = acc
            else:
                data.pop(perm, None)
    return GroupRingElt(a.n, data)


def grp_product(factors) -> GroupRingElt:
    """Composite of a list of group ring elements, rightmost applied first."""
    factors = list(factors)
    out = factors[0]
    for factor in factors[1:]:
        out = grp_multiply(out, factor)
    return out


# ---------------------------------------------------------------------------
# special elements


def tau_l(n: int, l: int) -> tuple:
    """The l-cycle on the last l of n positions, (n-l+1, n-l+2, ..., n)."""
    if not 2 <= l <= n:
        raise ValueError("need 2 <= l <= n")
    img = list(range(n))
    for j in range(n - l, n - 1):
        img[j] = j + 1
    img[n - 1] = n - l
    return tuple(img)


def sigma_iln(n: int, i: int, l: int) -> tuple:
    """Insertion permutation: move the last l letters to position i (1-based).

    Acting on a word, the block at the last l slots is cut out and
    reinserted so that it starts at position i, the displaced letters
    shifting right while keeping their order.
    """
    if not 1 <= l <= n or not 1 <= i <= n - l + 1:
        raise ValueError("sigma(i,l,n) needs 1 <= l <= n, 1 <= i <= n-l+1")
    img = [0] * n
    for j in range(1, n + 1):
        if j <= i - 1:
            img[j - 1] = j - 1
        elif j <= i + l - 1:
            img[j - 1] = n - l + (j - i)
        else:
            img[j - 1] = j - l - 1
    return tuple(img)


def nu_iln(n: int, i: int, l: int) -> tuple:
    """Extraction permutation, inverse to sigma(i, l, n): block at i goes last."""
    return perm_inverse(sigma_iln(n, i, l))


@lru_cache(maxsize=None)
def e_n(n: int) -> GroupRingElt:
    """Dynkin element (id - tau_n) o ... o (id - tau_2) in Q[S_n]."""
    out = GroupRingElt.unit(n)
    for l in range(2, n + 1):
        factor = GroupRingElt.unit(n) - GroupRingElt.from_perm(tau_l(n, l))
        out = grp_multiply(factor, out)
    return out


def iota_sum(k: int) -> GroupRingElt:
    """Sum over S_k embedded in S_{k+1} with the last letter fixed."""
    terms = {}
    for perm in iter_permutations(range(k)):
        terms[tuple(perm) + (k,)] = Q1
    return GroupRingElt(k + 1, terms)


def full_sym(n: int) -> GroupRingElt:
    return GroupRingElt(n, {perm: Q1 for perm in iter_permutations(range(n))})


def special_element(kind: str, **params) -> GroupRingElt:
    """Name-based constructor kept as the stable entry point for reports."""
    if kind == "tau":
        return GroupRingElt.from_perm(tau_l(params["n"], params["l"]))
    if kind == "sigma":
        return GroupRingElt.from_perm(sigma_iln(params["n"], params["i"], params["l"]))
    if kind == "nu":
        return GroupRingElt.from_perm(nu_iln(params["n"], params["i"], params["l"]))
    if kind == "e":
        return e_n(params["n"])
    if kind == "iota_sum":
        return iota_sum(params["k"])
    if kind == "full_sym":
        return full_sym(params["n"])
    raise ValueError("unknown special element kind %r" % (kind,))


# ---------------------------------------------------------------------------
# signed action on graded words


def act_word(perm: tuple, word: tuple, degrees: tuple):
    """Signed rearrangement of one word; returns (sign, new word)."""
    sign = koszul_sign(degrees, perm)
    return sign, tuple(word[j] for j in perm)


def act(g: GroupRingElt, elt: Elt, degree_of) -> Elt:
    """Apply a group ring element to an Elt over length-n letter tuples.

    ``degree_of`` maps a letter to its degree.  Each permutation term
    rearranges the word and multiplies by the Koszul sign of the move.
    """
    out = Elt.zero()
    for perm, coeff in g.terms.items():
        def one(word, perm=perm, coeff=coeff):
            if len(word) != len(perm):
                raise ValueError("word length does not match S_n")
            degrees = tuple(degree_of(letter) for letter in word)
            sign, new_word = act_word(perm, word, degrees)
            return [(coeff * sign, new_word)]

        out = out + elt.map_keys(one)
    return out


# ---------------------------------------------------------------------------
# the group ring form of the insertion/bracket composite


def insertion_average(n: int, block: int) -> GroupRingElt:
    """Average over all insertions of the trailing block into the word.

    This is the group ring shadow of the symmetrized insertion: the last
    ``block`` letters are cut out and reinserted at each of the n-block+1
    possible positions, with prefactor 1/(n-block+1).
    """
    slots = n - block + 1
    out = GroupRingElt(n)
    for i in range(1, slots + 1):
        out = out + GroupRingElt.from_perm(sigma_iln(n, i, block))
    return out.scale(Fraction(1, slots))


def bracket_stage(n: int, level: int) -> GroupRingElt:
    """Group ring element for one application of the bracketing step.

    Before stage ``level`` the nested bracket occupies the last ``level``
    slots.  The stage sums over moving one of the free letters next to the
    block (nu(i,1,n) to the end, then sigma(n-level,1,n) back in front of
    the block) and expands the new bracket with (id - tau_{level+1}).
    """
    free = n - level
    moves = GroupRingElt(n)
    for i in range(1, free + 1):
        moves = moves + GroupRingElt.from_perm(nu_iln(n, i, 1))
    reinsert = GroupRingElt.from_perm(sigma_iln(n, n - level, 1))
    expand = GroupRingElt.unit(n) - GroupRingElt.from_perm(tau_l(n, level + 1))
    return grp_product([expand, reinsert, moves])


def insertion_bracket_composite(k: int, j: int) -> GroupRingElt:
    """Group ring expression for the j-fold bracketing followed by insertion.

    In S_{k+1}: stages 1..j bracket one free letter at a time into the
    trailing nested block, then the block of size j+1 is inserted at every
    possible slot with the averaging prefactor.  For j = 0 this is the
    plain insertion average.
    """
    n = k + 1
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    factors = [insertion_average(n, j + 1)]
    for level in range(j, 0, -1):
        factors.append(bracket_stage(n, level))
    return grp_product(factors)


# ---------------------------------------------------------------------------
# verification


def verify_star_identity(k_max: int = 4, profile_entries=(1, 2, 3)) -> VerificationReport:
    """Check the group ring identity behind the symmetrized expansion.

    For each k <= k_max, with A = sum of S_k embedded in S_{k+1} and
    c_j the inverted exponential series coefficients, the composite
    sum_j c_j * (insertion_bracket_composite(k, j)) followed by A equals A
    itself.  The identity is checked on the nose in Q[S_{k+1}], and then as
    operators on graded words over a sweep of degree profiles.
    """
    from .freelie import bch_coeffs

    report = VerificationReport("star_identity", {"k_max": k_max, "profiles": list(profile_entries)})
    for k in range(1, k_max + 1):
        coeffs = bch_coeffs(k + 1)
        series = GroupRingElt(k + 1)
        for j in range(0, k + 1):
            series = series + insertion_bracket_composite(k, j).scale(coeffs[j])
        amb = iota_sum(k)

        def coefficient_check(k=k, series=series, amb=amb):
            lhs = grp_multiply(series, amb)
            ok = lhs == amb
            detail = "sum_j c_j (composite_j) o iota(S_%d) == iota(S_%d) in Q[S_%d]" % (k, k, k + 1)
            if not ok:
                diff = lhs - amb
                detail += "; difference has %d terms" % len(diff.terms)
            return ok, detail

        report.add(timed_check("star_coefficients_k%d" % k, coefficient_check))

        def action_check(k=k, series=series, amb=amb):
            lhs = grp_multiply(series, amb)
            checked = 0
            for profile in _degree_profiles(k + 1, profile_entries):
                word = tuple(("z%d" % idx, d) for idx, d in enumerate(profile))
                vec = Elt.basis(word)
                left = act(lhs, vec, degree_of=lambda letter: letter[1])
                right = act(amb, vec, degree_of=lambda letter: letter[1])
                if left != right:
                    return False, "mismatch on degree profile %s" % (profile,)
                checked += 1
            return True, "operator equality on %d degree profiles" % checked

        report.add(timed_check("star_action_k%d" % k, action_check))
    return report


def _degree_profiles(n, entries):
    from itertools import product

    return product(entries, repeat=n)


def verify_dynkin(n_max: int = 6, q: int = 2, word_len_max: int = 5) -> VerificationReport:
    """Quasi-idempotence of e_n and the projector property of e_n / n.

    e_n o e_n = n * e_n is checked in the group ring for n <= n_max, and
    the signed action of e_n / n is checked to be idempotent on all
    degree-one words in q letters of length up to word_len_max.
    """
    report = VerificationReport("dynkin", {"n_max": n_max, "q": q, "word_len_max": word_len_max})
    for n in range(2, n_max + 1):
        def quasi(n=n):
            lhs = grp_multiply(e_n(n), e_n(n))
            rhs = e_n(n).scale(n)
            return lhs == rhs, "e_%d o e_%d == %d * e_%d in Q[S_%d]" % (n, n, n, n, n)

        report.add(timed_check("quasi_idempotent_n%d" % n, quasi))
    from itertools import product as iproduct

    for n in range(2, word_len_max + 1):
        def projector(n=n):
            element = e_n(n).scale(Fraction(1, n))
            deg = lambda letter: 1
            for word in iproduct(range(q), repeat=n):
                vec = Elt.basis(word)
                once = act(element, vec, deg)
                twice = act(element, once, deg)
                if once != twice:
                    return False, "projector fails on word %s" % (word,)
            return True, "e_%d/%d idempotent on all %d degree-1 words" % (n, n, q ** n)

        report.add(timed_check("projector_n%d" % n, projector))
    return report
