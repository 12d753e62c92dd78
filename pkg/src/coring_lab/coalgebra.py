"""Finite-dimensional coalgebras and the convolution algebra Hom(C, A).

Comultiplication is stored as structure constants d[i][j][k], meaning the
coefficient of e_j (x) e_k in Delta(e_i); the matrix of Delta maps C into
C (x) C under the (j, k) -> j*dim+k index convention.  Linear maps C -> A are
held as dim(A) x dim(C) matrices, column j = the image of the j-th basis
element of C.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .algebra import AlgebraPresentation
from .exactla import (
    DenseMatrix,
    FieldSpec,
    ShapeError,
    kron,
    solve,
)
from .verdict import Verdict


class CoalgebraPresentation:

    def __init__(self, field: FieldSpec, dim: int, comult, counit, name: str = ""):
        self.field = field
        self.dim = dim
        if len(comult) != dim or any(len(row) != dim for row in comult) or any(
                len(cell) != dim for row in comult for cell in row):
            raise ShapeError("comultiplication constants have the wrong shape")
        if len(counit) != dim:
            raise ShapeError("counit vector has the wrong length")
        self.comult = [[[field.normalize(x) for x in cell] for cell in row]
                       for row in comult]
        self.counit = [field.normalize(x) for x in counit]
        self.name = name

    def comult_matrix(self) -> DenseMatrix:
        """Delta as a (dim^2) x dim matrix, row (j, k) = j*dim + k."""
        m = self.dim
        ent = [0] * (m * m * m)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    x = self.comult[i][j][k]
                    if x:
                        ent[(j * m + k) * m + i] = x
        return DenseMatrix(self.field, m * m, m, ent)

    def counit_matrix(self) -> DenseMatrix:
        return DenseMatrix.from_rows(self.field, [list(self.counit)], cols=self.dim)

    def comult_vec(self, v: Sequence) -> list:
        return self.comult_matrix().apply(v)

    def counit_vec(self, v: Sequence):
        f = self.field
        acc = 0
        for a, b in zip(self.counit, v):
            if a and b:
                acc += a * b
        return f.normalize(acc)

    def to_json(self) -> dict:
        f = self.field
        return {
            "dim": self.dim,
            "comult": [[[f.scalar_to_json(x) for x in cell] for cell in row]
                       for row in self.comult],
            "counit": [f.scalar_to_json(x) for x in self.counit],
        }

    @staticmethod
    def from_json(field: FieldSpec, obj: dict, name: str = "") -> "CoalgebraPresentation":
        try:
            dim = int(obj["dim"])
            comult = [[[field.scalar_from_str(x) for x in cell] for cell in row]
                      for row in obj["comult"]]
            counit = [field.scalar_from_str(x) for x in obj["counit"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"bad coalgebra JSON: {exc}")
        return CoalgebraPresentation(field, dim, comult, counit, name=name)

    def __repr__(self):
        label = self.name or f"{self.dim}-dim coalgebra"
        return f"CoalgebraPresentation({label} over {self.field.kind})"


def grouplike_coalgebra(field: FieldSpec, n: int, name: str = "") -> CoalgebraPresentation:
    """The coalgebra with n group-like basis elements."""
    comult = [[[1 if (j == i and k == i) else 0 for k in range(n)]
               for j in range(n)] for i in range(n)]
    return CoalgebraPresentation(field, n, comult, [1] * n, name=name)


def verify_coalgebra(C: CoalgebraPresentation) -> Verdict:
    """Coassociativity and the two counit laws as exact matrix identities."""
    v = Verdict()
    m = C.dim
    f = C.field
    delta = C.comult_matrix()
    eye = DenseMatrix.identity(f, m)
    left = kron(delta, eye).mul(delta)   # (Delta (x) id) Delta
    right = kron(eye, delta).mul(delta)  # (id (x) Delta) Delta
    if left != right:
        for i in range(m):
            if left.col(i) != right.col(i):
                v.fail("coassociativity", (i,))
    eps = C.counit_matrix()
    lcounit = kron(eps, eye).mul(delta)
    rcounit = kron(eye, eps).mul(delta)
    for i in range(m):
        e_i = [1 if t == i else 0 for t in range(m)]
        if lcounit.col(i) != e_i:
            v.fail("counit-left", (i,))
        if rcounit.col(i) != e_i:
            v.fail("counit-right", (i,))
    return v


# ---------------------------------------------------------------------------
# the convolution algebra Hom(C, A)
# ---------------------------------------------------------------------------


def convolution_unit(C: CoalgebraPresentation, A: AlgebraPresentation) -> DenseMatrix:
    """The unit eta_A . eps_C of the convolution algebra."""
    rows = []
    for i in range(A.dim):
        u = A.unit[i]
        rows.append([A.field.mul(u, e) for e in C.counit])
    return DenseMatrix.from_rows(A.field, rows, cols=C.dim)


def convolution(fmap: DenseMatrix, gmap: DenseMatrix, C: CoalgebraPresentation,
                A: AlgebraPresentation) -> DenseMatrix:
    """(f * g)(c) = sum f(c_1) g(c_2), as a dim(A) x dim(C) matrix."""
    if fmap.rows != A.dim or fmap.cols != C.dim or gmap.rows != A.dim or gmap.cols != C.dim:
        raise ShapeError("convolution operands have the wrong shape")
    return A.mult_matrix().mul(kron(fmap, gmap)).mul(C.comult_matrix())


def _conv_operator(fmap: DenseMatrix, C: CoalgebraPresentation,
                   A: AlgebraPresentation, side: str) -> DenseMatrix:
    """Matrix of h -> f*h (side 'left') or h -> h*f (side 'right') on Hom(C,A).

    Hom(C, A) coordinates are row-major: index i_A * dim(C) + j_C.
    """
    nA, nC = A.dim, C.dim
    n = nA * nC
    cols = []
    for idx in range(n):
        i, j = divmod(idx, nC)
        basis = DenseMatrix(A.field, nA, nC,
                            [1 if t == idx else 0 for t in range(n)])
        if side == "left":
            out = convolution(fmap, basis, C, A)
        else:
            out = convolution(basis, fmap, C, A)
        cols.append(out.entries)
    return DenseMatrix.from_rows(A.field, cols, cols=n).transpose()


def convolution_inverse(fmap: DenseMatrix, C: CoalgebraPresentation,
                        A: AlgebraPresentation) -> Optional[DenseMatrix]:
    """Two-sided inverse of f under *, or None.

    Both one-sided identities are stacked into a single linear system, so a
    map with only a one-sided inverse is reported as non-invertible.
    """
    unit = convolution_unit(C, A)
    L = _conv_operator(fmap, C, A, "left")
    R = _conv_operator(fmap, C, A, "right")
    system = L.vstack(R)
    rhs = unit.entries + unit.entries
    sol = solve(system, rhs)
    if sol is None:
        return None
    return DenseMatrix(A.field, A.dim, C.dim, sol)


def is_grouplike_C(C: CoalgebraPresentation, x: Sequence) -> bool:
    """Delta(x) = x (x) x and eps(x) = 1, both exact."""
    f = C.field
    x = [f.normalize(t) for t in x]
    if len(x) != C.dim:
        raise ShapeError("candidate has the wrong length")
    if C.counit_vec(x) != f.one:
        return False
    dx = C.comult_vec(x)
    m = C.dim
    for j in range(m):
        for k in range(m):
            if dx[j * m + k] != f.mul(x[j], x[k]):
                return False
    return True
