"""Exact graded linear algebra over the rationals.

Everything downstream works with sparse vectors in a graded component of
some free module: tensor words, symmetric multisets, wedge tuples,
polydifferential monomials.  This module supplies the shared substrate:

* ``Elt``       -- sparse Fraction-valued vector keyed by hashable keys,
* koszul_sign   -- sign of a graded rearrangement,
* component enumeration for the finite graded pieces used elsewhere,
* an exact linear solver (fraction-free elimination, deterministic
  first-non-zero pivoting) and ``solve_in_image`` for witness searches.

No floats anywhere; scalars are fractions.Fraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional

Q0 = Fraction(0)
Q1 = Fraction(1)


class UnboundedComponentError(ValueError):
    """Raised when a component enumeration would be infinite without bounds."""


# ---------------------------------------------------------------------------
# sparse vectors


class Elt:
    """Sparse vector with Fraction coefficients, keyed by hashable keys.

    Zero coefficients are never stored.  Instances are treated as
    immutable; all arithmetic returns fresh instances.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for key, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if coeff:
                    coeff = Fraction(coeff)
                    acc = data.get(key, Q0) + coeff
                    if acc:
                        data[key] = acc
                    else:
                        data.pop(key, None)
        self.terms = data

    @classmethod
    def basis(cls, key, coeff=Q1):
        return cls({key: Fraction(coeff)})

    @classmethod
    def zero(cls):
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Elt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        data = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = data.get(key, Q0) + coeff
            if acc:
                data[key] = acc
            else:
                data.pop(key, None)
        out = Elt.__new__(Elt)
        out.terms = data
        return out

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return Elt.zero()
        out = Elt.__new__(Elt)
        out.terms = {key: coeff * scalar for key, coeff in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def map_keys(self, fn):
        """Apply ``fn(key) -> (coeff, newkey) iterable`` linearly."""
        data = {}
        for key, coeff in self.terms.items():
            for factor, newkey in fn(key):
                acc = data.get(newkey, Q0) + coeff * factor
                if acc:
                    data[newkey] = acc
                else:
                    data.pop(newkey, None)
        out = Elt.__new__(Elt)
        out.terms = data
        return out

    def coeff(self, key):
        return self.terms.get(key, Q0)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))

    def __repr__(self):
        if not self.terms:
            return "Elt(0)"
        parts = ["%s*%s" % (coeff, key) for key, coeff in self.sorted_items()]
        return "Elt(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Koszul signs


@lru_cache(maxsize=None)
def _koszul_cached(degrees: tuple, sigma: tuple) -> int:
    sign_exp = 0
    n = len(sigma)
    for a in range(n):
        for b in range(a + 1, n):
            if sigma[a] > sigma[b]:
                sign_exp += degrees[sigma[a]] * degrees[sigma[b]]
    return -1 if sign_exp % 2 else 1

def koszul_sign(degrees: Iterable[int], sigma: Iterable[int]) -> int:
    """Sign of rearranging a graded word (w_1 .. w_n) into (w_{s(1)} .. w_{s(n)}).

    ``sigma`` is a permutation of range(n) in one-line image form: position j
    of the result holds letter sigma[j] of the input.  Each transposition of
    adjacent letters of degrees a, b contributes (-1)**(a*b); the total is
    accumulated over the inversion pairs of sigma.  For all-degree-1 words
    this is the ordinary signature.
    """
    degrees = tuple(degrees)
    sigma = tuple(sigma)
    if len(degrees) != len(sigma) or sorted(sigma) != list(range(len(sigma))):
        raise ValueError("sigma must be a permutation matching the degree list")
    return _koszul_cached(degrees, sigma)


# ---------------------------------------------------------------------------
# component schemas

# All schemas describe one finite graded piece.  Degrees of alphabet letters
# must be positive for word/multiset components (otherwise the piece is
# infinite and the enumeration refuses).


@dataclass(frozen=True)
class WordSchema:
    """Tensor words over a graded alphabet, graded by total letter degree."""

    alphabet: tuple  # tuple of (key, degree) pairs


@dataclass(frozen=True)
class MultisetSchema:
    """Symmetric words over a graded alphabet.

    Letters of odd degree square to zero, so multisets repeating an odd
    letter are dropped.  Keys are tuples sorted by (degree, repr(key)).
    """

    alphabet: tuple


@dataclass(frozen=True)
class WedgeSchema:
    """Wedge words d_{i_1} ^ .. ^ d_{i_k} with polynomial coefficients.

    Graded by the wedge length k; coefficient monomials run over all
    exponent vectors of total degree <= coeff_deg (None refuses).
    """

    nvars: int
    coeff_deg: Optional[int]


@dataclass(frozen=True)
class OpSchema:
    """Polydifferential terms: slot multi-index tuples times monomials.

    Graded by slot count; bounded by exact total slot order and a maximum
    coefficient degree.  Missing bounds refuse.
    """

    nvars: int
    total_order: Optional[int]
    coeff_deg: Optional[int]


def monomials_upto(nvars: int, max_deg: int):
    """All exponent tuples of total degree <= max_deg, lexicographically."""
    out = []
    for deg in range(max_deg + 1):
        out.extend(compositions_of(deg, nvars))
    return sorted(out)


def compositions_of(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total + 1):
        for rest in compositions_of(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def letter_sort_key(pair):
    key, degree = pair
    return (degree, repr(key))


def enumerate_component(schema, degree: int):
    """Deterministically enumerate the basis keys of one graded component.

    Returns a list of canonical keys.  Raises UnboundedComponentError when
    the requested component is not finite under the schema's bounds.
    """
    if degree < 0:
        return []
    if isinstance(schema, WordSchema):
        if any(d <= 0 for _, d in schema.alphabet):
            raise UnboundedComponentError("word alphabet needs positive degrees")
        letters = sorted(schema.alphabet, key=letter_sort_key)
        out = []

        def extend(prefix, remaining):
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for key, d in letters:
                if d <= remaining:
                    extend(prefix + [key], remaining - d)

        extend([], degree)
        return out
    if isinstance(schema, MultisetSchema):
        if any(d <= 0 for _, d in schema.alphabet):
            raise UnboundedComponentError("multiset alphabet needs positive degrees")
        letters = sorted(schema.alphabet, key=letter_sort_key)
        out = []

        def extend_ms(prefix, start, remaining):
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for pos in range(start, len(letters)):
                key, d = letters[pos]
                if d > remaining:
                    continue
                if d % 2 == 1 and prefix and prefix[-1] == key:
                    continue
                next_start = pos if d % 2 == 0 else pos + 1
                extend_ms(prefix + [key], next_start, remaining - d)

        extend_ms([], 0, degree)
        return out
    if isinstance(schema, WedgeSchema):
        if schema.coeff_deg is None:
            raise UnboundedComponentError("wedge component needs a coefficient bound")
        monos = monomials_upto(schema.nvars, schema.coeff_deg)
        out = []
        for combo in itertools.combinations(range(1, schema.nvars + 1), degree):
            for mono in monos:
                out.append((combo, mono))
        return sorted(out)
    if isinstance(schema, OpSchema):
        if schema.total_order is None or schema.coeff_deg is None:
            raise UnboundedComponentError("operator component needs order and coefficient bounds")
        monos = monomials_upto(schema.nvars, schema.coeff_deg)
        out = []
        for orders in compositions_of(schema.total_order, degree):
            slot_choices = [compositions_of(order, schema.nvars) for order in orders]
            for slots in itertools.product(*slot_choices):
                for mono in monos:
                    out.append((tuple(slots), mono))
        return sorted(out)
    raise TypeError("unknown component schema: %r" % (schema,))


# ---------------------------------------------------------------------------
# exact solving


def _row_to_int(row):
    denom_lcm = 1
    for entry in row:
        if entry:
            denom_lcm = denom_lcm * entry.denominator // gcd(denom_lcm, entry.denominator)
    return [int(entry * denom_lcm) for entry in row]


def solve_exact(rows, rhs):
    """Solve rows . x = rhs exactly; one solution with free variables at zero.

    ``rows`` is a list of equal-length Fraction lists, ``rhs`` a Fraction
    list.  Elimination is fraction-free on integer-scaled rows with
    first-non-zero pivoting, so the result is deterministic.  Returns a
    list of Fractions or None when the system is inconsistent.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    mat = [_row_to_int(list(row) + [b]) for row, b in zip(rows, rhs)]
    pivots = []  # (row, col)
    prev_pivot = 1
    pivot_row = 0
    for col in range(ncols):
        found = None
        for r in range(pivot_row, nrows):
            if mat[r][col]:
                found = r
                break
        if found is None:
            continue
        if found != pivot_row:
            mat[pivot_row], mat[found] = mat[found], mat[pivot_row]
        piv = mat[pivot_row][col]
        for r in range(pivot_row + 1, nrows):
            row_r = mat[r]
            factor = row_r[col]
            # rows with a zero factor still need the piv / prev_pivot rescale
            # to keep the fraction-free divisions below exact
            if factor == 0 and piv == prev_pivot:
                continue
            base = mat[pivot_row]
            for c in range(col, ncols + 1):
                row_r[c] = (piv * row_r[c] - factor * base[c]) // prev_pivot
        pivots.append((pivot_row, col))
        prev_pivot = piv
        pivot_row += 1
        if pivot_row == nrows:
            break
    # below the pivot block all coefficient entries are zero, so a non-zero
    # right-hand side there is the only way to be inconsistent
    for r in range(pivot_row, nrows):
        if mat[r][ncols]:
            return None
    solution = [Q0] * ncols
    for row, col in reversed(pivots):
        acc = Fraction(mat[row][ncols])
        for c in range(col + 1, ncols):
            if mat[row][c]:
                acc -= mat[row][c] * solution[c]
        solution[col] = acc / mat[row][col]
    return solution


def matrix_rank(rows):
    """Rank of a Fraction matrix, by the same elimination as solve_exact."""
    nrows = len(rows)
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    mat = [_row_to_int(list(row)) for row in rows]
    prev_pivot = 1
    pivot_row = 0
    for col in range(ncols):
        found = None
        for r in range(pivot_row, nrows):
            if mat[r][col]:
                found = r
                break
        if found is None:
            continue
        if found != pivot_row:
            mat[pivot_row], mat[found] = mat[found], mat[pivot_row]
        piv = mat[pivot_row][col]
        for r in range(pivot_row + 1, nrows):
            row_r = mat[r]
            factor = row_r[col]
            if factor == 0 and piv == prev_pivot:
                continue
            base = mat[pivot_row]
            for c in range(col, ncols):
                row_r[c] = (piv * row_r[c] - factor * base[c]) // prev_pivot
        prev_pivot = piv
        pivot_row += 1
        if pivot_row == nrows:
            break
    return pivot_row


class EchelonBasis:
    """Incrementally reduced spanning set over sparse Elt vectors.

    Rows are kept fully reduced with unit leading coefficients; pivots are
    chosen as the smallest key in a fixed key order, which makes the
    resulting basis canonical for a fixed insertion order.
    """

    def __init__(self):
        self.rows = []  # list of (pivot_key, Elt)

    @staticmethod
    def _key_order(key):
        return repr(key)

    def reduce(self, vec: Elt) -> Elt:
        for pivot, row in self.rows:
            coeff = vec.coeff(pivot)
            if coeff:
                vec = vec - row * coeff
        return vec

    def insert(self, vec: Elt) -> bool:
        """Reduce ``vec`` and absorb it; True when the rank grew."""
        vec = self.reduce(vec)
        if not vec:
            return False
        pivot = min(vec.terms, key=self._key_order)
        vec = vec * (Q1 / vec.coeff(pivot))
        self.rows = [(p, row - vec * row.coeff(pivot)) for p, row in self.rows]
        self.rows.append((pivot, vec))
        self.rows.sort(key=lambda pr: self._key_order(pr[0]))
        return True

    def contains(self, vec: Elt) -> bool:
        return not self.reduce(vec)

    def basis(self):
        return [row for _, row in self.rows]


# ---------------------------------------------------------------------------
# linear map representations and image solving


@dataclass(frozen=True)
class LinearMapRep:
    """A linear map between two enumerated components.

    ``columns[j]`` is the image of domain key j as a dict over codomain
    indices.  Codomain keys absent from the enumeration are an error at
    construction time.
    """

    domain_keys: tuple
    codomain_keys: tuple
    columns: tuple  # tuple of dicts {codomain index: Fraction}

    @classmethod
    def from_function(cls, domain_keys, codomain_keys, apply_fn: Callable):
        domain_keys = tuple(domain_keys)
        codomain_keys = tuple(codomain_keys)
        index = {key: i for i, key in enumerate(codomain_keys)}
        cols = []
        for key in domain_keys:
            image = apply_fn(key)
            col = {}
            for ckey, coeff in image.terms.items():
                if ckey not in index:
                    raise ValueError("image key %r outside codomain enumeration" % (ckey,))
                col[index[ckey]] = coeff
            cols.append(col)
        return cls(domain_keys, codomain_keys, tuple(cols))

    def apply(self, vec: Elt) -> Elt:
        dom_index = {key: i for i, key in enumerate(self.domain_keys)}
        acc = {}
        for key, coeff in vec.terms.items():
            if key not in dom_index:
                raise ValueError("vector key %r outside domain enumeration" % (key,))
            for row, entry in self.columns[dom_index[key]].items():
                acc[row] = acc.get(row, Q0) + coeff * entry
        return Elt({self.codomain_keys[row]: c for row, c in acc.items()})

    def matrix_rows(self):
        nrows = len(self.codomain_keys)
        ncols = len(self.domain_keys)
        rows = [[Q0] * ncols for _ in range(nrows)]
        for j, col in enumerate(self.columns):
            for i, entry in col.items():
                rows[i][j] = entry
        return rows


def solve_in_image(map_rep: LinearMapRep, target: Elt) -> Optional[Elt]:
    """Find w with map_rep(w) = target, or None when target is outside the image.

    The witness is deterministic (free variables are set to zero) and is
    re-verified through map_rep.apply before being returned.
    """
    cod_index = {key: i for i, key in enumerate(map_rep.codomain_keys)}
    for key in target.terms:
        if key not in cod_index:
            raise ValueError("target key %r outside codomain enumeration" % (key,))
    rows = map_rep.matrix_rows()
    rhs = [Q0] * len(map_rep.codomain_keys)
    for key, coeff in target.terms.items():
        rhs[cod_index[key]] = coeff
    solution = solve_exact(rows, rhs)
    if solution is None:
        return None
    witness = Elt({key: c for key, c in zip(map_rep.domain_keys, solution) if c})
    if map_rep.apply(witness) != target:
        raise AssertionError("solver returned a non-solution; this is a bug")
    return witness
