"""Finite-dimensional unital associative algebras given by structure constants.

Modules are presented by one action matrix per algebra basis element, acting
on column coordinate vectors; for a right module ``rho(ab) = rho(b) rho(a)``
and for a left module ``rho(ab) = rho(a) rho(b)``.  On top of that sit the
workhorses of the whole engine: balanced tensor products over an algebra,
hom-spaces of module maps, and the projectivity and generator tests the
equivalence theorems reduce to.

Flatness of a finitely generated module over a finite-dimensional algebra is
implemented as projectivity, and faithful flatness of a f.g. projective
module as the generator property; both readings are equivalences at this
scale and the reports label them accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .exactla import (
    DenseMatrix,
    FieldSpec,
    QuotientSpace,
    ShapeError,
    Subspace,
    SubspaceBuilder,
    quotient,
    solve,
)
from .verdict import Verdict, VerificationError


def _combination(field, rows: int, cols: int, mats: Sequence[DenseMatrix],
                 coeffs: Sequence) -> DenseMatrix:
    """sum coeffs[i] * mats[i] without intermediate matrix allocations."""
    ent = [0] * (rows * cols)
    for a, m in zip(coeffs, mats):
        if a:
            src = m.entries
            for t in range(rows * cols):
                b = src[t]
                if b:
                    ent[t] += a * b
    return DenseMatrix(field, rows, cols, ent)


class AlgebraPresentation:
    """A unital associative algebra on a distinguished basis.

    ``mult[i][j][k]`` is the e_k-coefficient of e_i * e_j and ``unit`` the
    coordinate vector of 1.
    """

    def __init__(self, field: FieldSpec, dim: int, mult, unit, name: str = ""):
        self.field = field
        self.dim = dim
        if len(mult) != dim or any(len(row) != dim for row in mult) or any(
                len(cell) != dim for row in mult for cell in row):
            raise ShapeError("structure constants have the wrong shape")
        if len(unit) != dim:
            raise ShapeError("unit vector has the wrong length")
        self.mult = [[[field.normalize(x) for x in cell] for cell in row] for row in mult]
        self.unit = [field.normalize(x) for x in unit]
        self.name = name
        # left/right multiplication operators per basis element
        self._lmul = [DenseMatrix.from_rows(
            field, [[self.mult[i][j][k] for j in range(dim)] for k in range(dim)],
            cols=dim) for i in range(dim)]
        self._rmul = [DenseMatrix.from_rows(
            field, [[self.mult[i][j][k] for i in range(dim)] for k in range(dim)],
            cols=dim) for j in range(dim)]

    def mul_vec(self, u: Sequence, v: Sequence) -> list:
        f = self.field
        out = [0] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                cell = row[j]
                for k in range(self.dim):
                    c = cell[k]
                    if c:
                        out[k] += ab * c
        return [f.normalize(x) for x in out]

    def lmul_matrix(self, u: Sequence) -> DenseMatrix:
        """Matrix of left multiplication by the element with coordinates u."""
        return _combination(self.field, self.dim, self.dim, self._lmul, u)

    def rmul_matrix(self, u: Sequence) -> DenseMatrix:
        return _combination(self.field, self.dim, self.dim, self._rmul, u)

    def mult_matrix(self) -> DenseMatrix:
        """Multiplication as a matrix A (x) A -> A, column (i*dim+j) = e_i e_j."""
        n = self.dim
        cols = []
        for i in range(n):
            for j in range(n):
                cols.append(self.mult[i][j])
        return DenseMatrix.from_rows(self.field, cols, cols=n).transpose()

    def regular_module(self, side: str) -> "ModulePresentation":
        if side == "right":
            action = [self._rmul[j] for j in range(self.dim)]
        elif side == "left":
            action = [self._lmul[i] for i in range(self.dim)]
        else:
            raise ShapeError(f"unknown side {side!r}")
        return ModulePresentation(self, self.dim, side, action)

    def to_json(self) -> dict:
        f = self.field
        return {
            "dim": self.dim,
            "mult": [[[f.scalar_to_json(x) for x in cell] for cell in row]
                     for row in self.mult],
            "unit": [f.scalar_to_json(x) for x in self.unit],
        }

    @staticmethod
    def from_json(field: FieldSpec, obj: dict, name: str = "") -> "AlgebraPresentation":
        try:
            dim = int(obj["dim"])
            mult = [[[field.scalar_from_str(x) for x in cell] for cell in row]
                    for row in obj["mult"]]
            unit = [field.scalar_from_str(x) for x in obj["unit"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"bad algebra JSON: {exc}")
        return AlgebraPresentation(field, dim, mult, unit, name=name)

    def __repr__(self):
        label = self.name or f"{self.dim}-dim algebra"
        return f"AlgebraPresentation({label} over {self.field.kind})"


class ModulePresentation:
    """A left or right module by one action matrix per algebra basis element."""

    def __init__(self, algebra: AlgebraPresentation, dim: int, side: str,
                 action: List[DenseMatrix], name: str = ""):
        if side not in ("left", "right"):
            raise ShapeError(f"unknown side {side!r}")
        if len(action) != algebra.dim:
            raise ShapeError("need one action matrix per algebra basis element")
        for m in action:
            if m.rows != dim or m.cols != dim:
                raise ShapeError("action matrix has the wrong shape")
        self.algebra = algebra
        self.dim = dim
        self.side = side
        self.action = action
        self.name = name

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def act_matrix(self, u: Sequence) -> DenseMatrix:
        """Action of the algebra element with coordinate vector u."""
        return _combination(self.field, self.dim, self.dim, self.action, u)

    def act(self, m: Sequence, u: Sequence) -> list:
        return self.act_matrix(u).apply(m)

    def restrict(self, sub: Subspace, name: str = "") -> "ModulePresentation":
        """The induced module on an action-invariant subspace, in its basis."""
        emb = sub.basis.transpose()  # dim x sub.dim
        action = []
        for mat in self.action:
            cols = []
            for j in range(sub.dim):
                img = mat.apply(emb.col(j))
                cols.append(sub.coords(img))
            action.append(DenseMatrix.from_rows(self.field, cols, cols=sub.dim).transpose())
        return ModulePresentation(self.algebra, sub.dim, self.side, action, name=name)

    def direct_sum(self, other: "ModulePresentation") -> "ModulePresentation":
        if other.algebra is not self.algebra and other.algebra.mult != self.algebra.mult:
            raise ShapeError("direct sum over different algebras")
        if other.side != self.side:
            raise ShapeError("direct sum of modules on different sides")
        n, m = self.dim, other.dim
        action = []
        for a, b in zip(self.action, other.action):
            rows = []
            for i in range(n):
                rows.append(a.row(i) + [0] * m)
            for i in range(m):
                rows.append([0] * n + b.row(i))
            action.append(DenseMatrix.from_rows(self.field, rows, cols=n + m))
        return ModulePresentation(self.algebra, n + m, self.side, action)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "side": self.side,
            "action": [m.to_json() for m in self.action],
        }

    @staticmethod
    def from_json(algebra: AlgebraPresentation, obj: dict) -> "ModulePresentation":
        try:
            dim = int(obj["dim"])
            side = obj["side"]
            action = [DenseMatrix.from_json(algebra.field, m) for m in obj["action"]]
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"bad module JSON: {exc}")
        return ModulePresentation(algebra, dim, side, action)

    def __repr__(self):
        label = self.name or f"{self.dim}-dim {self.side} module"
        return f"ModulePresentation({label})"


@dataclass
class BimodulePresentation:
    """Commuting left and right module structures on the same space."""

    left: ModulePresentation
    right: ModulePresentation

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise ShapeError("bimodule sides disagree on the dimension")
        if self.left.side != "left" or self.right.side != "right":
            raise ShapeError("bimodule needs a left and a right structure")

    @property
    def dim(self):
        return self.left.dim


def zero_module(algebra: AlgebraPresentation, side: str) -> ModulePresentation:
    return ModulePresentation(algebra, 0, side, [DenseMatrix.zeros(algebra.field, 0, 0)
                                                 for _ in range(algebra.dim)])


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


def verify_algebra(A: AlgebraPresentation) -> Verdict:
    """Associativity on all basis triples and the two-sided unit law."""
    v = Verdict()
    n = A.dim
    for i in range(n):
        for j in range(n):
            ij = A.mult[i][j]
            for k in range(n):
                left = A.mul_vec(ij, [1 if t == k else 0 for t in range(n)])
                right = A.mul_vec([1 if t == i else 0 for t in range(n)], A.mult[j][k])
                if left != right:
                    v.fail("associativity", (i, j, k))
    for i in range(n):
        e_i = [1 if t == i else 0 for t in range(n)]
        if A.mul_vec(A.unit, e_i) != e_i:
            v.fail("unit-left", (i,))
        if A.mul_vec(e_i, A.unit) != e_i:
            v.fail("unit-right", (i,))
    return v


def verify_module(M: ModulePresentation) -> Verdict:
    """rho(1) = id and rho(e_i e_j) compatibility for the module's side."""
    v = Verdict()
    A = M.algebra
    ident = DenseMatrix.identity(M.field, M.dim)
    if M.act_matrix(A.unit) != ident:
        v.fail("module-unit")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = M.act_matrix(A.mult[i][j])
            if M.side == "right":
                rhs = M.action[j].mul(M.action[i])
            else:
                rhs = M.action[i].mul(M.action[j])
            if lhs != rhs:
                v.fail("action-multiplicativity", (i, j))
    return v


def verify_bimodule(B: BimodulePresentation) -> Verdict:
    v = Verdict()
    lv = verify_module(B.left)
    rv = verify_module(B.right)
    for f in lv.failures:
        v.fail("left-" + f.axiom, f.indices, f.detail)
    for f in rv.failures:
        v.fail("right-" + f.axiom, f.indices, f.detail)
    for i, L in enumerate(B.left.action):
        for j, R in enumerate(B.right.action):
            if L.mul(R) != R.mul(L):
                v.fail("bimodule-commutation", (i, j))
    return v


# ---------------------------------------------------------------------------
# balanced tensor products and hom spaces
# ---------------------------------------------------------------------------


def balanced_tensor(M: ModulePresentation, N: ModulePresentation) -> QuotientSpace:
    """M (x)_S N for a right module M and left module N over the same S.

    The plain tensor square carries the index convention (i_M, i_N) ->
    i_M*dim(N)+i_N; the relations are spanned by m s (x) n - m (x) s n over
    all basis triples.
    """
    if M.side != "right" or N.side != "left":
        raise ShapeError("balanced tensor needs (right module, left module)")
    if M.algebra.mult != N.algebra.mult or M.algebra.field != N.algebra.field:
        raise ShapeError("balanced tensor over mismatched algebras")
    f = M.field
    dM, dN = M.dim, N.dim
    builder = SubspaceBuilder(f, dM * dN)
    for s in range(M.algebra.dim):
        actM = M.action[s]
        actN = N.action[s]
        for i in range(dM):
            ms = actM.col(i)
            for j in range(dN):
                rel = {}
                for r, x in enumerate(ms):
                    if x:
                        rel[r * dN + j] = x
                for r, x in enumerate(actN.col(j)):
                    if x:
                        c = i * dN + r
                        nv = f.sub(rel.get(c, 0), x)
                        if nv:
                            rel[c] = nv
                        else:
                            rel.pop(c, None)
                builder.insert(rel)
    return quotient(dM * dN, builder.to_subspace())


def hom_module(M: ModulePresentation, N: ModulePresentation) -> Subspace:
    """All module maps M -> N as a subspace of dN x dM matrices (row-major).

    For either side the intertwining condition reads T rho_M(a) = rho_N(a) T.
    """
    if M.side != N.side:
        raise ShapeError("hom between modules on different sides")
    if M.algebra.mult != N.algebra.mult or M.algebra.field != N.algebra.field:
        raise ShapeError("hom over mismatched algebras")
    f = M.field
    dM, dN = M.dim, N.dim
    nvars = dN * dM
    builder = SubspaceBuilder(f, nvars)
    for s in range(M.algebra.dim):
        a = M.action[s]
        b = N.action[s]
        # row (i, j): entry of (T a - b T)[i][j]; unknowns T[r][c] at r*dM+c
        for i in range(dN):
            for j in range(dM):
                row = {}
                for c in range(dM):
                    x = a.get(c, j)
                    if x:
                        row[i * dM + c] = x
                for r in range(dN):
                    y = b.get(i, r)
                    if y:
                        c = r * dM + j
                        nv = f.sub(row.get(c, 0), y)
                        if nv:
                            row[c] = nv
                        else:
                            row.pop(c, None)
                if row:
                    builder.insert(row)
    constraints = builder.to_subspace()
    # null space of the constraint rows, directly from their echelon form
    pivset = set(constraints.pivots)
    vecs = []
    for free in range(nvars):
        if free in pivset:
            continue
        v = [0] * nvars
        v[free] = 1
        for r, c in enumerate(constraints.pivots):
            coef = constraints.basis.get(r, free)
            if coef:
                v[c] = f.neg(coef)
        vecs.append(v)
    return Subspace.from_spanning(f, nvars, vecs)


def hom_matrices(M: ModulePresentation, N: ModulePresentation) -> List[DenseMatrix]:
    """The hom-space basis reshaped into dN x dM matrices."""
    space = hom_module(M, N)
    out = []
    for i in range(space.dim):
        flat = space.basis.row(i)
        out.append(DenseMatrix(M.field, N.dim, M.dim, flat))
    return out


def is_fg_projective(M: ModulePresentation) -> Tuple[bool, Optional[DenseMatrix]]:
    """Does the canonical surjection from a free module of rank dim(M) split?

    The splitting is sought as a linear combination of module maps M -> S per
    coordinate, so the search is one exact linear solve.  Returns the
    splitting map (dim(M)*dim(S)) x dim(M) when it exists.
    """
    if M.dim == 0:
        return True, DenseMatrix.zeros(M.field, 0, 0)
    S = M.algebra
    f = M.field
    homs = hom_matrices(M, S.regular_module(M.side))
    r = len(homs)
    d, dS = M.dim, S.dim
    if r == 0:
        return False, None
    # unknowns t[i][j], sigma_i = sum_j t[i][j] h_j; equations: for each basis
    # m_k of M:  sum_i  m_i . (sigma_i(m_k))  =  m_k
    rows = [[0] * (d * r) for _ in range(d * d)]
    rhs = []
    for k in range(d):
        for i in range(d):
            for j in range(r):
                s = homs[j].col(k)  # h_j(m_k) in S-coordinates
                # m_i acted on by that S-element
                w = M.act([1 if t == i else 0 for t in range(d)], s)
                for c in range(d):
                    if w[c]:
                        rows[k * d + c][i * r + j] = f.add(rows[k * d + c][i * r + j], w[c])
        e_k = [1 if t == k else 0 for t in range(d)]
        rhs.extend(e_k)
    system = DenseMatrix.from_rows(f, rows, cols=d * r)
    sol = solve(system, rhs)
    if sol is None:
        return False, None
    # assemble the splitting M -> S^d as a (d*dS) x d matrix
    cols = []
    for k in range(d):
        col = []
        for i in range(d):
            acc = [0] * dS
            for j in range(r):
                t = sol[i * r + j]
                if t:
                    hj = homs[j].col(k)
                    acc = [f.add(a, f.mul(t, b)) for a, b in zip(acc, hj)]
            col.extend(acc)
        cols.append(col)
    witness = DenseMatrix.from_rows(f, cols, cols=d * dS).transpose()
    return True, witness


def trace_span(M: ModulePresentation) -> Subspace:
    """Span of all images of module maps M -> S inside S (the trace ideal)."""
    S = M.algebra
    homs = hom_matrices(M, S.regular_module(M.side))
    vecs = []
    for h in homs:
        for k in range(M.dim):
            vecs.append(h.col(k))
    return Subspace.from_spanning(M.field, S.dim, vecs)


def is_generator(M: ModulePresentation) -> bool:
    """True iff the trace ideal of M in S is all of S."""
    return trace_span(M).is_full()


# ---------------------------------------------------------------------------
# subalgebras carved out of a parent algebra
# ---------------------------------------------------------------------------


def subalgebra_on(A: AlgebraPresentation, space: Subspace, name: str = "") -> Tuple[AlgebraPresentation, DenseMatrix]:
    """Induce structure constants on a unital, multiplicatively closed subspace.

    Returns the presentation in the echelon basis of ``space`` together with
    the embedding matrix into A.  Raises VerificationError when the subspace
    is not closed or misses the unit, which would flag an upstream bug.
    """
    f = A.field
    v = Verdict()
    if not space.contains(A.unit):
        v.fail("subalgebra-unit", (), "unit of A is not in the subspace")
        raise VerificationError("subalgebra_on", v)
    d = space.dim
    emb = space.basis.transpose()
    mult = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            prod = A.mul_vec(emb.col(i), emb.col(j))
            if not space.contains(prod):
                v.fail("subalgebra-closure", (i, j))
                raise VerificationError("subalgebra_on", v)
            mult[i][j] = space.coords(prod)
    unit = space.coords(A.unit)
    return AlgebraPresentation(f, d, mult, unit, name=name), emb
