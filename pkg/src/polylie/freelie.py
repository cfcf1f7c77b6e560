"""Free graded Lie algebras inside the tensor algebra, with symmetrization.

A free graded Lie algebra L(V) on positively graded generators is realized
inside the tensor algebra T(V): the length-n component of L(V) is the
image of the signed action of e_n / n, where e_n is the iterated-cycle
product from symgrp.  Lie elements are sparse vectors over tensor words.

On top of that sit the symmetric-word structures: Sym(L(V)) words are
sorted tuples of "letters" (basis elements of L(V) or brackets formed from
them), each letter carrying its tensor expansion.  The symmetrization I
sends a Sym word to the signed average of the tensor concatenations of its
letters, G inverts it degreewise, and the operator calculus on
Sym(L) (x) L -- the letter-removal/bracketing operator, the inverted
exponential series, and the induced transform -- is built from those.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import symgrp
from .glin import (
    Elt,
    EchelonBasis,
    MultisetSchema,
    Q0,
    Q1,
    WordSchema,
    enumerate_component,
    koszul_sign,
    solve_exact,
)
from .report import VerificationReport, timed_check

# ---------------------------------------------------------------------------
# letters


@dataclass(frozen=True)
class LieLetter:
    """A homogeneous Lie algebra element used as a letter of Sym/tensor words.

    ``key`` is a canonical string id, ``degree`` the internal grading, and
    ``elt`` the expansion as an Elt over tensor words of the ambient
    generator alphabet.  Identity is structural (by key): two letters with
    different construction history stay distinct even when their
    expansions coincide; everything downstream is linear in the expansion,
    so comparisons made after flattening are unaffected.
    """

    key: str
    degree: int
    elt: Elt = field(compare=False, hash=False)

    def __repr__(self):
        return self.key

    @property
    def odd(self):
        return self.degree % 2 == 1


def sort_letters(letters):
    return sorted(letters, key=lambda z: (z.degree, z.key))


def sym_normalize(letters):
    """Canonical form of a Sym word: (sign, sorted tuple) or (0, None).

    Letters are sorted by (degree, key); each adjacent swap of degrees
    a, b contributes (-1)**(a*b).  A repeated odd letter kills the word.
    """
    seq = list(letters)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and (seq[j].degree, seq[j].key) < (seq[j - 1].degree, seq[j - 1].key):
            if seq[j].degree % 2 and seq[j - 1].degree % 2:
                sign = -sign
            seq[j], seq[j - 1] = seq[j - 1], seq[j]
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a.key == b.key and a.odd:
            return 0, None
    return sign, tuple(seq)


# ---------------------------------------------------------------------------
# the context: one free graded Lie algebra and its caches


class FreeLieContext:
    """Caches for one generator alphabet: components, bases, brackets."""

    def __init__(self, gens):
        self.gens = tuple(gens)  # tuple of (key, degree), degrees >= 1
        if any(d < 1 for _, d in self.gens):
            raise ValueError("generator degrees must be >= 1")
        self.deg = {key: d for key, d in self.gens}
        self._letters = {}
        self._lie_basis = {}
        self._g_solver = {}

    # -- tensor words ------------------------------------------------------

    def word_degree(self, word):
        return sum(self.deg[key] for key in word)

    def word_component(self, degree):
        return enumerate_component(WordSchema(self.gens), degree)

    def act(self, group_elt, word_elt):
        return symgrp.act(group_elt, word_elt, degree_of=lambda key: self.deg[key])

    # -- Lie structure on tensor elements ---------------------------------

    def bracket_words(self, a: Elt, b: Elt) -> Elt:
        """Graded commutator [a, b] = a (x) b - (-1)^{|a||b|} b (x) a."""
        out = Elt.zero()
        for wa, ca in a.terms.items():
            da = self.word_degree(wa)
            for wb, cb in b.terms.items():
                db = self.word_degree(wb)
                out = out + Elt({wa + wb: ca * cb})
                sign = -1 if (da * db) % 2 == 0 else 1
                out = out + Elt({wb + wa: sign * ca * cb})
        return out

    def lie_membership(self, word_elt: Elt) -> bool:
        """True when every length component is fixed by the e_n / n action."""
        by_len = {}
        for word, coeff in word_elt.terms.items():
            by_len.setdefault(len(word), Elt.zero())
            by_len[len(word)] = by_len[len(word)] + Elt({word: coeff})
        for n, part in by_len.items():
            if n == 0:
                return False
            projected = self.act(symgrp.e_n(n).scale(Fraction(1, n)), part)
            if projected != part:
                return False
        return True

    def lie_basis(self, degree):
        """Canonical basis letters of the degree component of L(V).

        Words of the component are projected through e_n / n in
        enumeration order and reduced incrementally; the surviving echelon
        rows, with unit pivots, are the basis.
        """
        if degree in self._lie_basis:
            return self._lie_basis[degree]
        echelon = EchelonBasis()
        kept = []
        for word in self.word_component(degree):
            n = len(word)
            if n == 0:
                continue
            projected = self.act(symgrp.e_n(n).scale(Fraction(1, n)), Elt.basis(word))
            if projected and echelon.insert(projected):
                kept = echelon.basis()
        letters = tuple(
            LieLetter("z%d.%d" % (degree, idx), degree, elt)
            for idx, elt in enumerate(kept)
        )
        self._lie_basis[degree] = letters
        return letters

    def letters_upto(self, max_degree):
        out = []
        for d in range(1, max_degree + 1):
            out.extend(self.lie_basis(d))
        return out

    def bracket_letter(self, a: LieLetter, b: LieLetter):
        """Letter for [a, b]; None when the bracket vanishes identically."""
        key = "[%s,%s]" % (a.key, b.key)
        if key in self._letters:
            return self._letters[key]
        expansion = self.bracket_words(a.elt, b.elt)
        letter = LieLetter(key, a.degree + b.degree, expansion) if expansion else None
        self._letters[key] = letter
        return letter

    def decompose_lie(self, word_elt: Elt) -> Elt:
        """Coordinates of a homogeneous Lie element over the basis letters."""
        if not word_elt:
            return Elt.zero()
        degrees = {self.word_degree(w) for w in word_elt.terms}
        if len(degrees) != 1:
            raise ValueError("decompose_lie expects a homogeneous element")
        degree = degrees.pop()
        letters = self.lie_basis(degree)
        words = self.word_component(degree)
        index = {w: i for i, w in enumerate(words)}
        rows = [[Q0] * len(letters) for _ in words]
        for j, letter in enumerate(letters):
            for w, c in letter.elt.terms.items():
                rows[index[w]][j] = c
        rhs = [Q0] * len(words)
        for w, c in word_elt.terms.items():
            rhs[index[w]] = c
        solution = solve_exact(rows, rhs)
        if solution is None:
            raise ValueError("element is not in the Lie component")
        return Elt({letter: c for letter, c in zip(letters, solution) if c})


@lru_cache(maxsize=None)
def context(gens) -> FreeLieContext:
    return FreeLieContext(gens)


def odd_gens(q: int):
    """The standard alphabet: q generators of internal degree 1."""
    return tuple((i, 1) for i in range(q))


# ---------------------------------------------------------------------------
# brackets


def nfold_bracket(ctx: FreeLieContext, factors) -> Elt:
    """Right-nested bracket [x_1, [x_2, [... [x_{n-1}, x_n]]]] of word elements."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    out = factors[-1]
    for factor in reversed(factors[:-1]):
        out = ctx.bracket_words(factor, out)
    return out


# ---------------------------------------------------------------------------
# symmetrization


def tensor_concat(parts) -> Elt:
    """Concatenation product of Elt-over-word factors."""
    out = Elt.basis(())
    for part in parts:
        data = {}
        for wa, ca in out.terms.items():
            for wb, cb in part.terms.items():
                key = wa + wb
                acc = data.get(key, Q0) + ca * cb
                if acc:
                    data[key] = acc
                else:
                    data.pop(key, None)
        out = Elt(data)
    return out


def symmetrize_word(symword) -> Elt:
    """I on one Sym word: (1/k!) sum_s s(sign) z_{s(1)} (x) .. (x) z_{s(k)}."""
    k = len(symword)
    if k == 0:
        return Elt.basis(())
    degrees = tuple(z.degree for z in symword)
    out = Elt.zero()
    for perm in itertools.permutations(range(k)):
        sign = koszul_sign(degrees, perm)
        out = out + tensor_concat(symword[j].elt for j in perm) * sign
    return out * Fraction(1, _factorial(k))


@lru_cache(maxsize=None)
def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def symmetrize_I(sym_elt: Elt) -> Elt:
    """I extended linearly over an Elt keyed by Sym words."""
    out = Elt.zero()
    for symword, coeff in sym_elt.terms.items():
        out = out + symmetrize_word(symword) * coeff
    return out


def sym_basis(ctx: FreeLieContext, degree: int):
    """Canonical Sym(L(V)) basis of one total degree, as sorted letter tuples."""
    alphabet = tuple((z, z.degree) for z in ctx.letters_upto(degree))
    return enumerate_component(MultisetSchema(alphabet), degree)


def inverse_G(ctx: FreeLieContext, word_elt: Elt) -> Elt:
    """Inverse of I, degree by degree, landing in Sym words of basis letters."""
    out = Elt.zero()
    by_degree = {}
    for word, coeff in word_elt.terms.items():
        d = ctx.word_degree(word)
        by_degree.setdefault(d, Elt.zero())
        by_degree[d] = by_degree[d] + Elt({word: coeff})
    for degree, part in by_degree.items():
        domain = sym_basis(ctx, degree)
        words = ctx.word_component(degree)
        index = {w: i for i, w in enumerate(words)}
        cache_key = degree
        if cache_key not in ctx._g_solver:
            rows = [[Q0] * len(domain) for _ in words]
            for j, symword in enumerate(domain):
                for w, c in symmetrize_word(symword).terms.items():
                    rows[index[w]][j] = c
            ctx._g_solver[cache_key] = rows
        rows = ctx._g_solver[cache_key]
        rhs = [Q0] * len(words)
        for w, c in part.terms.items():
            rhs[index[w]] = c
        solution = solve_exact(rows, rhs)
        if solution is None:
            raise ValueError("element outside the symmetrization image at degree %d" % degree)
        out = out + Elt({sw: c for sw, c in zip(domain, solution) if c})
    return out


# ---------------------------------------------------------------------------
# the operator calculus on Sym(L) (x) L

# Pair elements are Elt instances keyed by (symword, letter).


def pair_elt(symword, letter, coeff=Q1) -> Elt:
    return Elt({(tuple(symword), letter): coeff})


def omega(ctx: FreeLieContext, pairs: Elt) -> Elt:
    """Letter-removal/bracketing operator on Sym(L) (x) L.

    z_1 .. z_k (x) y picks up, for each i, the sign
    (-1)**(d_i * (d_{i+1} + .. + d_k)) on z_1 .. ^z_i .. z_k (x) [z_i, y].
    """
    out = Elt.zero()
    for (symword, y), coeff in pairs.terms.items():
        degrees = [z.degree for z in symword]
        for i, z in enumerate(symword):
            tail = sum(degrees[i + 1:])
            sign = -1 if (degrees[i] * tail) % 2 else 1
            bracket = ctx.bracket_letter(z, y)
            if bracket is None:
                continue
            rest = symword[:i] + symword[i + 1:]
            out = out + pair_elt(rest, bracket, coeff * sign)
    return out


def mu(ctx: FreeLieContext, pairs: Elt) -> Elt:
    """Multiply the distinguished letter into the Sym word."""
    out = Elt.zero()
    for (symword, y), coeff in pairs.terms.items():
        sign, merged = sym_normalize(symword + (y,))
        if sign:
            out = out + Elt({merged: coeff * sign})
    return out


def bch_coeffs(n_max: int):
    """Coefficients c_j of the series y / (1 - exp(-y)) up to degree n_max.

    Computed by inverting (1 - exp(-y)) / y = sum_i (-1)^i y^i / (i+1)!
    term by term; c_0 = 1, c_1 = 1/2, c_2 = 1/12, c_3 = 0, c_4 = -1/720.
    """
    a = [Fraction((-1) ** i, _factorial(i + 1)) for i in range(n_max + 1)]
    c = [Q1]
    for n in range(1, n_max + 1):
        acc = Q0
        for i in range(1, n + 1):
            acc += a[i] * c[n - i]
        c.append(-acc)
    return c


def dexp_transform(ctx: FreeLieContext, pairs: Elt) -> Elt:
    """mu applied to the series sum_j c_j omega^j of a pair element."""
    max_len = max((len(symword) for (symword, _y) in pairs.terms), default=0)
    coeffs = bch_coeffs(max_len)
    out = mu(ctx, pairs) * coeffs[0]
    current = pairs
    for j in range(1, max_len + 1):
        current = omega(ctx, current)
        if not current:
            break
        if coeffs[j]:
            out = out + mu(ctx, current) * coeffs[j]
    return out


# ---------------------------------------------------------------------------
# verification suites


def _sym_words_by_length(letters, max_len):
    """All canonical Sym words of length <= max_len over sorted letters."""
    letters = sort_letters(letters)
    out = [()]
    for length in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(letters, length):
            sign, word = sym_normalize(combo)
            if sign == 1:
                out.append(word)
    return out


def verify_pbw(q_max: int = 2, n_max: int = 5) -> VerificationReport:
    """Degreewise bijectivity of I and the dimension count dim Sym(L)_n = q^n."""
    report = VerificationReport("pbw", {"q_max": q_max, "n_max": n_max})
    for q in range(1, q_max + 1):
        ctx = context(odd_gens(q))
        for n in range(1, n_max + 1):
            def one(ctx=ctx, q=q, n=n):
                domain = sym_basis(ctx, n)
                words = ctx.word_component(n)
                if len(domain) != q ** n:
                    return False, "dim Sym(L)_%d = %d differs from %d" % (n, len(domain), q ** n)
                index = {w: i for i, w in enumerate(words)}
                rows = [[Q0] * len(domain) for _ in words]
                for j, symword in enumerate(domain):
                    for w, c in symmetrize_word(symword).terms.items():
                        rows[index[w]][j] = c
                from .glin import matrix_rank

                rank = matrix_rank(rows)
                if rank != len(words):
                    return False, "I has rank %d on a %d-dimensional component" % (rank, len(words))
                return True, "I bijective on degree %d, dim %d = %d^%d" % (n, len(domain), q, n)

            report.add(timed_check("pbw_q%d_deg%d" % (q, n), one))
    return report


def verify_nested_bracket_projector(q: int = 2, n_max: int = 4) -> VerificationReport:
    """Right-nested brackets are invariant under precomposition with e_n / n."""
    report = VerificationReport("nested_bracket_projector", {"q": q, "n_max": n_max})
    ctx = context(odd_gens(q))
    gen_elts = {key: Elt.basis((key,)) for key, _d in ctx.gens}

    def l_n_of(word_elt: Elt) -> Elt:
        out = Elt.zero()
        for word, coeff in word_elt.terms.items():
            out = out + nfold_bracket(ctx, [gen_elts[key] for key in word]) * coeff
        return out

    for n in range(1, n_max + 1):
        def one(n=n):
            projector = symgrp.e_n(n).scale(Fraction(1, n))
            for word in itertools.product(range(q), repeat=n):
                direct = l_n_of(Elt.basis(word))
                through = l_n_of(ctx.act(projector, Elt.basis(word)))
                if direct != through:
                    return False, "nested bracket changes under the projector on %s" % (word,)
            return True, "L_%d o (e_%d/%d) = L_%d on all %d words" % (n, n, n, n, q ** n)

        report.add(timed_check("nested_projector_n%d" % n, one))
    return report


def verify_theorem6(q_max: int = 2, max_sym_len: int = 3, max_deg: int = 2) -> VerificationReport:
    """The symmetrized product identity m(I(u) (x) y) = I(transform(u (x) y)).

    Exhaustive over canonical Sym words u of bounded length with basis
    letters of bounded degree, and all basis letters y; both sides are
    compared as exact tensor elements.
    """
    cfg = {"q_max": q_max, "max_sym_len": max_sym_len, "max_deg": max_deg}
    report = VerificationReport("sym_product_identity", cfg)
    for q in range(1, q_max + 1):
        def one(q=q):
            ctx = context(odd_gens(q))
            letters = ctx.letters_upto(max_deg)
            pairs = 0
            for symword in _sym_words_by_length(letters, max_sym_len):
                left_of_u = symmetrize_word(symword)
                for y in letters:
                    lhs = tensor_concat([left_of_u, y.elt])
                    rhs = symmetrize_I(dexp_transform(ctx, pair_elt(symword, y)))
                    if lhs != rhs:
                        return False, "mismatch at u=%s, y=%s" % (list(symword), y)
                    pairs += 1
            return True, "identity holds on %d (u, y) pairs" % pairs

        report.add(timed_check("sym_product_identity_q%d" % q, one))
    return report


def verify_multiply_out(q: int = 2, inner_deg_max: int = 2, outer_sym_len: int = 2) -> VerificationReport:
    """Multiply-out versus symmetrization for the free Lie algebra on L(V).

    Generators of a second free Lie algebra are the basis letters of the
    first; lambda multiplies letter words out into tensor words of V, and
    pi = G o lambda restricted to single letters.  Checked: pi restores
    the generators, and lambda o B agrees with I o Sym(pi) on bounded
    symmetric words.
    """
    cfg = {"q": q, "inner_deg_max": inner_deg_max, "outer_sym_len": outer_sym_len}
    report = VerificationReport("multiply_out", cfg)
    inner = context(odd_gens(q))
    letters = inner.letters_upto(inner_deg_max)
    by_key = {z.key: z for z in letters}
    outer = context(tuple((z.key, z.degree) for z in letters))

    def lam(word_elt: Elt) -> Elt:
        """Multiply out a word over letter keys into a tensor element of V."""
        out = Elt.zero()
        for word, coeff in word_elt.terms.items():
            out = out + tensor_concat(by_key[key].elt for key in word) * coeff
        return out

    pi_cache = {}

    def pi_letter(outer_letter: LieLetter) -> Elt:
        if outer_letter.key not in pi_cache:
            image = inverse_G(inner, lam(outer_letter.elt))
            for symword in image.terms:
                if len(symword) != 1:
                    raise AssertionError("pi image left Sym^1")
            pi_cache[outer_letter.key] = Elt(
                {symword[0]: c for symword, c in image.terms.items()}
            )
        return pi_cache[outer_letter.key]

    def gen_check():
        for z in letters:
            outer_gen = next(
                g for g in outer.lie_basis(z.degree) if g.elt == Elt.basis((z.key,))
            )
            image = pi_letter(outer_gen)
            if image != Elt.basis(z):
                return False, "pi does not restore generator %s" % z.key
        return True, "pi restores all %d generators" % len(letters)

    report.add(timed_check("pi_restores_generators", gen_check))

    def sym_check():
        outer_letters = outer.letters_upto(2 * inner_deg_max)
        count = 0
        for symword in _sym_words_by_length(outer_letters, outer_sym_len):
            lhs = lam(symmetrize_word(symword))
            parts = [pi_letter(z) for z in symword]
            expanded = Elt.basis(())
            for part in parts:
                data = {}
                for wa, ca in expanded.terms.items():
                    for zb, cb in part.terms.items():
                        sign, merged = sym_normalize(tuple(wa) + (zb,))
                        if sign:
                            key = merged
                            acc = data.get(key, Q0) + ca * cb * sign
                            if acc:
                                data[key] = acc
                            else:
                                data.pop(key, None)
                expanded = Elt(data)
            rhs = symmetrize_I(expanded)
            if lhs != rhs:
                return False, "multiply-out disagrees with I o Sym(pi) on %s" % (list(symword),)
            count += 1
        return True, "lambda o B = I o Sym(pi) on %d symmetric words" % count

    report.add(timed_check("multiply_out_vs_sym", sym_check))
    return report
