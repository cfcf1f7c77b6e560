import random
from fractions import Fraction

import pytest

from polylie.glin import (
    Elt,
    EchelonBasis,
    LinearMapRep,
    koszul_sign,
    matrix_rank,
    monomials_upto,
    solve_exact,
    solve_in_image,
)

Q = Fraction


def test_elt_arithmetic_and_pruning():
    a = Elt({"x": Q(1, 2), "y": Q(3)})
    b = Elt({"x": Q(-1, 2), "z": Q(1)})
    s = a + b
    assert s == Elt({"y": Q(3), "z": Q(1)})
    assert "x" not in s.terms
    assert (s - s) == Elt.zero()
    assert not Elt.zero()
    assert s * Q(0) == Elt.zero()
    assert (a * Q(2)).terms["x"] == Q(1)


def test_koszul_sign_matches_signature_in_degree_one():
    degrees = (1, 1, 1, 1)
    total = {}
    for perm in __import__("itertools").permutations(range(4)):
        total[perm] = koszul_sign(degrees, perm)
    # signature: parity of inversion count
    for perm, sign in total.items():
        inv = sum(
            1
            for i in range(4)
            for j in range(i + 1, 4)
            if perm[i] > perm[j]
        )
        assert sign == (-1) ** inv


def test_koszul_sign_even_degrees_are_transparent():
    # every inversion pair involves an even degree, so no sign survives
    assert koszul_sign((2, 1, 2), (2, 1, 0)) == 1
    assert koszul_sign((2, 2), (1, 0)) == 1
    # odd-odd inversion is the only sign source
    assert koszul_sign((1, 1, 2), (1, 0, 2)) == -1


def _reference_rank(rows):
    # plain fraction Gauss elimination, kept independent of the library code
    mat = [[Q(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                f = mat[r][col] / mat[row][col]
                for c in range(ncols):
                    mat[r][c] -= f * mat[row][c]
        row += 1
        rank += 1
    return rank


def test_matrix_rank_against_reference_on_seeded_matrices():
    rng = random.Random(7)
    for trial in range(40):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        # sparse integer entries, many zeros, to drive the zero-factor paths
        rows = [
            [rng.choice([0, 0, 0, 1, -1, 2, 3, -2]) for _ in range(ncols)]
            for _ in range(nrows)
        ]
        assert matrix_rank(rows) == _reference_rank(rows)


def test_matrix_rank_zero_factor_rescale_path():
    # pivot 2 above a zero-factor row: the fraction-free rescale must still
    # happen or later exact divisions silently floor
    rows = [
        [2, 1, 1],
        [0, 3, 1],
        [2, 1, 2],
        [0, 3, 2],
    ]
    assert matrix_rank(rows) == _reference_rank(rows) == 3


def test_solve_exact_unique_and_inconsistent():
    rows = [[Q(2), Q(1)], [Q(1), Q(1)]]
    sol = solve_exact(rows, [Q(3), Q(2)])
    assert sol == [Q(1), Q(1)]
    assert solve_exact([[Q(1), Q(1)], [Q(2), Q(2)]], [Q(1), Q(3)]) is None


def test_solve_exact_underdetermined_free_vars_zero():
    sol = solve_exact([[Q(1), Q(1)]], [Q(5)])
    assert sol is not None
    assert sol[0] + sol[1] == Q(5)


def test_echelon_basis_rank_agrees_with_matrix_rank():
    rng = random.Random(3)
    keys = ["a", "b", "c", "d"]
    for _ in range(20):
        vecs = []
        for _ in range(5):
            vecs.append(
                Elt({k: Q(rng.randint(-2, 2)) for k in keys if rng.random() < 0.6})
            )
        basis = EchelonBasis()
        for v in vecs:
            basis.insert(v)
        rows = [[v.terms.get(k, Q(0)) for k in keys] for v in vecs]
        assert len(basis.basis()) == matrix_rank(rows)


def test_linear_map_rep_and_solve_in_image():
    domain = ["u", "v"]
    codomain = ["p", "q"]

    def fn(key):
        if key == "u":
            return Elt({"p": Q(1), "q": Q(1)})
        return Elt({"p": Q(1), "q": Q(-1)})

    rep = LinearMapRep.from_function(domain, codomain, fn)
    target = Elt({"p": Q(2)})
    w = solve_in_image(rep, target)
    assert w is not None
    assert rep.apply(w) == target
    assert solve_in_image(rep, Elt({"p": Q(1)})) is not None
    with pytest.raises(ValueError):
        LinearMapRep.from_function(domain, ["p"], fn)


def test_monomials_upto_counts():
    # degree <= 2 in 2 variables: 1 + 2 + 3
    assert len(list(monomials_upto(2, 2))) == 6
    assert len(list(monomials_upto(1, 3))) == 4
    assert list(monomials_upto(2, 0)) == [(0, 0)]
