import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coring_lab.exactla import (
    QQ,
    GF,
    DenseMatrix,
    FieldSpec,
    ShapeError,
    Subspace,
    SubspaceBuilder,
    image,
    kernel,
    kron,
    quotient,
    solve,
)

from oracles import naive_rank, naive_solve, span_contains

F5 = GF(5)


def mat(field, rows):
    return DenseMatrix.from_rows(field, rows)


# -- kernel -----------------------------------------------------------------

def test_kernel_rank_one_symmetric():
    k = kernel(mat(QQ, [[1, 1], [1, 1]]))
    assert k.dim == 1
    # canonical echelon representative of span{(1,-1)}
    assert k.basis.row_lists() == [[1, -1]]


def test_kernel_identity_is_zero():
    assert kernel(DenseMatrix.identity(QQ, 3)).is_zero()


def test_kernel_f5_line():
    # brute force over all 25 vectors of F_5^2
    M = [[1, 2], [2, 4]]
    sols = [v for v in [(a, b) for a in range(5) for b in range(5)]
            if (v[0] + 2 * v[1]) % 5 == 0 and (2 * v[0] + 4 * v[1]) % 5 == 0]
    k = kernel(mat(F5, M))
    assert k.dim == 1
    assert all(k.contains(list(v)) for v in sols)
    assert k.contains([3, 1])
    assert (1 * 3 + 2 * 1) % 5 == 0


# -- solve --------------------------------------------------------------------

def test_solve_identity():
    assert solve(DenseMatrix.identity(QQ, 3), [2, 5, -1]) == [2, 5, -1]


def test_solve_free_vars_zero():
    assert solve(mat(QQ, [[1, 1]]), [2]) == [2, 0]


def test_solve_inconsistent():
    assert solve(mat(QQ, [[0]]), [1]) is None


def test_solve_shape_error():
    with pytest.raises(ShapeError):
        solve(mat(QQ, [[1, 0]]), [1, 2])


# -- image --------------------------------------------------------------------

def test_image_zero():
    assert image(DenseMatrix.zeros(QQ, 3, 2)).is_zero()


def test_image_identity_full():
    assert image(DenseMatrix.identity(QQ, 4)).is_full()


def test_image_proportional_columns():
    im = image(mat(QQ, [[1, 2], [2, 4]]))
    assert im.dim == 1
    assert im.basis.row_lists() == [[1, 2]]


# -- kron ---------------------------------------------------------------------

def test_kron_scalar():
    N = mat(QQ, [[1, 2], [3, 4]])
    assert kron(mat(QQ, [[3]]), N) == N.scale(3)


def test_kron_identities():
    assert kron(DenseMatrix.identity(QQ, 2), DenseMatrix.identity(QQ, 3)) == \
        DenseMatrix.identity(QQ, 6)


def test_kron_swap_block():
    out = kron(mat(QQ, [[0, 1], [1, 0]]), mat(QQ, [[2]]))
    assert out.row_lists() == [[0, 2], [2, 0]]


def test_kron_index_convention():
    M = mat(QQ, [[1, 2], [3, 4]])
    N = mat(QQ, [[5, 6], [7, 8]])
    K = kron(M, N)
    for im in range(2):
        for jm in range(2):
            for i2 in range(2):
                for j2 in range(2):
                    assert K.get(im * 2 + i2, jm * 2 + j2) == \
                        M.get(im, jm) * N.get(i2, j2)


# -- quotient -------------------------------------------------------------------

def test_quotient_by_zero():
    q = quotient(3, Subspace.zero(QQ, 3))
    assert q.dim == 3
    assert q.projection == DenseMatrix.identity(QQ, 3)


def test_quotient_by_full():
    q = quotient(2, Subspace.full(QQ, 2))
    assert q.dim == 0


def test_quotient_line():
    rel = Subspace.from_spanning(QQ, 2, [[1, -1]])
    q = quotient(2, rel)
    assert q.dim == 1
    assert q.project([1, 0]) == q.project([0, 1])


def test_quotient_projection_section_identities():
    rel = Subspace.from_spanning(QQ, 4, [[1, 2, 0, 0], [0, 0, 1, -1]])
    q = quotient(4, rel)
    assert q.projection.mul(q.section) == DenseMatrix.identity(QQ, q.dim)
    resid = q.section.mul(q.projection).sub(DenseMatrix.identity(QQ, 4))
    for j in range(4):
        assert rel.contains(resid.col(j))
    for i in range(rel.dim):
        assert all(not x for x in q.project(rel.basis.row(i)))


# -- randomized cross-checks against the naive oracle ---------------------------

def random_matrix(field, rng, rows, cols, density=0.7):
    ent = []
    for _ in range(rows * cols):
        if rng.random() < density:
            if field.kind == "Fp":
                ent.append(rng.randrange(field.p))
            else:
                ent.append(Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3])))
        else:
            ent.append(0)
    return DenseMatrix(field, rows, cols, ent)


@pytest.mark.parametrize("field,p", [(QQ, None), (F5, 5)])
def test_rank_nullity_random(field, p):
    rng = random.Random(7)
    for _ in range(60):
        r = rng.randint(0, 5)
        c = rng.randint(0, 5)
        M = random_matrix(field, rng, r, c)
        k = kernel(M)
        im = image(M)
        assert k.dim + im.dim == c
        assert im.dim == naive_rank(M.row_lists(), p)
        for i in range(k.dim):
            assert all(not x for x in M.apply(k.basis.row(i)))


@pytest.mark.parametrize("field,p", [(QQ, None), (F5, 5)])
def test_solve_random_agrees_with_oracle(field, p):
    rng = random.Random(11)
    for _ in range(60):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        M = random_matrix(field, rng, r, c)
        b = [field.random_scalar(rng) for _ in range(r)]
        got = solve(M, b)
        want = naive_solve(M.row_lists(), b, p)
        if want is None:
            assert got is None
        else:
            assert got is not None
            assert M.apply(got) == [field.normalize(x) for x in b]


@pytest.mark.parametrize("field,p", [(QQ, None), (F5, 5)])
def test_canonical_form_unique_random(field, p):
    rng = random.Random(13)
    for _ in range(40):
        dim = rng.randint(1, 5)
        n = rng.randint(1, 4)
        vecs = [[field.random_scalar(rng) for _ in range(dim)] for _ in range(n)]
        s1 = Subspace.from_spanning(field, dim, vecs)
        # a different spanning set of the same space: shuffled sums
        mixed = []
        for _ in range(2 * n):
            w = [0] * dim
            for v in vecs:
                c = field.random_scalar(rng)
                w = [field.add(a, field.mul(c, b)) for a, b in zip(w, v)]
            mixed.append(w)
        s2 = Subspace.from_spanning(field, dim, mixed)
        if s2.dim == s1.dim:
            assert s1 == s2
        else:
            assert s1.contains_subspace(s2)


def test_subspace_membership_against_oracle():
    rng = random.Random(17)
    for _ in range(40):
        dim = rng.randint(1, 5)
        vecs = [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(3)]
        s = Subspace.from_spanning(QQ, dim, vecs)
        probe = [rng.randint(-3, 3) for _ in range(dim)]
        assert s.contains(probe) == span_contains(vecs, probe)


def test_subspace_sum_and_intersection():
    a = Subspace.from_spanning(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.from_spanning(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert a.add(b).is_full()
    inter = a.intersect(b)
    assert inter.dim == 1
    assert inter.contains([0, 1, 0])


def test_subspace_builder_matches_dense():
    rng = random.Random(23)
    for field, p in [(QQ, None), (F5, 5)]:
        for _ in range(20):
            dim = rng.randint(1, 6)
            vecs = [[field.random_scalar(rng) for _ in range(dim)]
                    for _ in range(rng.randint(0, 6))]
            sb = SubspaceBuilder(field, dim)
            for v in vecs:
                sb.insert(v)
            assert sb.to_subspace() == Subspace.from_spanning(field, dim, vecs)


# -- serialization ---------------------------------------------------------------

def test_matrix_json_roundtrip_q():
    M = mat(QQ, [[Fraction(1, 2), 3], [Fraction(-7, 3), 0]])
    back = DenseMatrix.from_json(QQ, M.to_json())
    assert back == M
    js = M.to_json()
    assert js["entries"][0][0] == "1/2"
    assert js["entries"][0][1] == 3


def test_matrix_json_roundtrip_fp():
    M = mat(F5, [[1, 4], [2, 3]])
    assert DenseMatrix.from_json(F5, M.to_json()) == M
    assert M.to_json()["entries"] == [[1, 4], [2, 3]]


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
@settings(max_examples=200, deadline=None)
def test_scalar_string_roundtrip_lossless(n, d):
    x = Fraction(n, d)
    assert QQ.scalar_from_str(QQ.scalar_to_str(x)) == x


def test_fieldspec_validation():
    with pytest.raises(ShapeError):
        FieldSpec("Fp", 6)
    with pytest.raises(ShapeError):
        FieldSpec("Fp")
    with pytest.raises(ShapeError):
        FieldSpec("Z")
    assert GF(7).p == 7


# -- hypothesis property: exactness / no rounding --------------------------------

@given(st.lists(st.lists(st.fractions(max_denominator=20), min_size=3, max_size=3),
                min_size=1, max_size=4))
@settings(max_examples=100, deadline=None)
def test_rank_nullity_property(rows):
    M = DenseMatrix.from_rows(QQ, rows)
    assert kernel(M).dim + image(M).dim == M.cols


def test_bareiss_stress_against_oracle():
    # denser, larger, uglier entries than the smoke tests use; the
    # fraction-free elimination must agree with textbook Gauss-Jordan
    rng = random.Random(101)
    for _ in range(15):
        rows = rng.randint(6, 9)
        cols = rng.randint(6, 9)
        ent = [Fraction(rng.randint(-50, 50), rng.randint(1, 7))
               for _ in range(rows * cols)]
        M = DenseMatrix(QQ, rows, cols, ent)
        assert image(M).dim == naive_rank(M.row_lists())
        k = kernel(M)
        assert k.dim == cols - image(M).dim
        for i in range(k.dim):
            assert all(not x for x in M.apply(k.basis.row(i)))
        b = [Fraction(rng.randint(-20, 20), rng.randint(1, 5))
             for _ in range(rows)]
        got = solve(M, b)
        want = naive_solve(M.row_lists(), b)
        assert (got is None) == (want is None)
        if got is not None:
            assert M.apply(got) == [QQ.normalize(x) for x in b]
