"""Entwining structures (A, C, psi) and everything derived from one.

The entwining map is stored as a matrix from C (x) A (index i_C * dimA + j_A)
to A (x) C (index j_A * dimC + i_C); every piece of Kronecker bookkeeping in
the package flows from this single convention.

An ``EntwinedContext`` bundles the algebra, the coalgebra, psi and the chosen
coaction of the unit, and lazily caches the derived objects: the coring on
A (x) C, the ring structure on Hom(C, A), the comodule structure on A and the
group-like element it determines.  Contexts are frozen after construction;
derived objects are computed once and then shared freely.
"""

from __future__ import annotations

import hashlib
from typing import List, Optional, Sequence, Tuple

from .algebra import AlgebraPresentation, verify_algebra
from .coalgebra import CoalgebraPresentation, verify_coalgebra
from .coring import ComoduleInstance, CoringPresentation, SquareReducer, is_grouplike
from .exactla import (
    DenseMatrix,
    FieldSpec,
    ShapeError,
    dumps_canonical,
    kron,
)
from .verdict import Verdict, VerificationError


def swap_matrix(field: FieldSpec, m: int, n: int) -> DenseMatrix:
    """V_m (x) V_n -> V_n (x) V_m on coordinates."""
    ent = [0] * (m * n * m * n)
    for i in range(m):
        for j in range(n):
            ent[(j * m + i) * (m * n) + (i * n + j)] = 1
    return DenseMatrix(field, m * n, m * n, ent)


class EntwiningMap:
    """The structure map psi with its index conventions fixed."""

    def __init__(self, A: AlgebraPresentation, C: CoalgebraPresentation,
                 matrix: DenseMatrix):
        if matrix.rows != A.dim * C.dim or matrix.cols != C.dim * A.dim:
            raise ShapeError("psi has the wrong shape")
        self.A = A
        self.C = C
        self.matrix = matrix

    def slice_a(self, i: int) -> DenseMatrix:
        """psi(- (x) e_i): C -> A (x) C."""
        nA, nC = self.A.dim, self.C.dim
        cols = [self.matrix.col(k * nA + i) for k in range(nC)]
        return DenseMatrix.from_rows(self.A.field, cols, cols=nA * nC).transpose()


def flip_entwining(A: AlgebraPresentation, C: CoalgebraPresentation) -> DenseMatrix:
    """The twist map c (x) a -> a (x) c, an entwining iff it satisfies the axioms
    (always, when either factor is trivial or both are suitably commutative)."""
    return swap_matrix(A.field, C.dim, A.dim)


def verify_entwining(A: AlgebraPresentation, C: CoalgebraPresentation,
                     psi: DenseMatrix) -> Verdict:
    """The four compatibility axioms, as exact identities on basis tensors."""
    v = Verdict()
    f = A.field
    nA, nC = A.dim, C.dim
    if psi.rows != nA * nC or psi.cols != nC * nA:
        raise ShapeError("psi has the wrong shape")
    eyeA = DenseMatrix.identity(f, nA)
    eyeC = DenseMatrix.identity(f, nC)
    mult = A.mult_matrix()
    delta = C.comult_matrix()
    eps = C.counit_matrix()
    # multiplicativity on C (x) A (x) A
    lhs = psi.mul(kron(eyeC, mult))
    rhs = kron(mult, eyeC).mul(kron(eyeA, psi)).mul(kron(psi, eyeA))
    if lhs != rhs:
        for j in range(lhs.cols):
            if lhs.col(j) != rhs.col(j):
                v.fail("entwining-multiplicativity",
                       (j // (nA * nA), (j // nA) % nA, j % nA))
    # unit: psi(c (x) 1) = 1 (x) c
    unit_ins = DenseMatrix.from_rows(
        f, [[A.unit[idx % nA] if idx // nA == k else 0 for idx in range(nC * nA)]
            for k in range(nC)], cols=nC * nA).transpose()
    lhs = psi.mul(unit_ins)
    rhs_cols = []
    for k in range(nC):
        col = [0] * (nA * nC)
        for j in range(nA):
            if A.unit[j]:
                col[j * nC + k] = A.unit[j]
        rhs_cols.append(col)
    rhs = DenseMatrix.from_rows(f, rhs_cols, cols=nA * nC).transpose()
    if lhs != rhs:
        for k in range(nC):
            if lhs.col(k) != rhs.col(k):
                v.fail("entwining-unit", (k,))
    # comultiplicativity on C (x) A
    lhs = kron(eyeA, delta).mul(psi)
    rhs = kron(psi, eyeC).mul(kron(eyeC, psi)).mul(kron(delta, eyeA))
    if lhs != rhs:
        for j in range(lhs.cols):
            if lhs.col(j) != rhs.col(j):
                v.fail("entwining-comultiplicativity", (j // nA, j % nA))
    # counit on C (x) A
    lhs = kron(eyeA, eps).mul(psi)
    rhs_cols = []
    for k in range(nC):
        for j in range(nA):
            col = [0] * nA
            col[j] = C.counit[k]
            rhs_cols.append(col)
    rhs = DenseMatrix.from_rows(f, rhs_cols, cols=nA).transpose()
    if lhs != rhs:
        for j in range(lhs.cols):
            if lhs.col(j) != rhs.col(j):
                v.fail("entwining-counit", (j // nA, j % nA))
    return v


# ---------------------------------------------------------------------------
# the ring structure on Hom(C, A)
# ---------------------------------------------------------------------------


class SharpRing:
    """Hom(C, A) with the entwined multiplication, as a concrete algebra.

    Basis index (i_A, j_C) -> i_A * dimC + j_C; coordinates of an element are
    simply the flattened entries of its dimA x dimC matrix, so reshaping is
    the identity on data.
    """

    def __init__(self, ctx: "EntwinedContext"):
        A, C, psi = ctx.A, ctx.C, ctx.psi
        f = A.field
        nA, nC = A.dim, C.dim
        self.ctx = ctx
        n = nA * nC
        eyeA = DenseMatrix.identity(f, nA)
        eyeC = DenseMatrix.identity(f, nC)
        mult = A.mult_matrix()
        delta = C.comult_matrix()
        pre = []   # psi . (id_C (x) f) . Delta, per basis f
        post = []  # mult . (id_A (x) g), per basis g
        for idx in range(n):
            fmat = self.basis_matrix(idx)
            pre.append(psi.mul(kron(eyeC, fmat)).mul(delta))
            post.append(mult.mul(kron(eyeA, fmat)))
        consts = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                consts[i][j] = post[j].mul(pre[i]).entries
        unit_vec = [0] * n
        for i in range(nA):
            if A.unit[i]:
                for k in range(nC):
                    if C.counit[k]:
                        unit_vec[i * nC + k] = f.mul(A.unit[i], C.counit[k])
        self.algebra = AlgebraPresentation(f, n, consts, unit_vec,
                                           name="Hom(C,A) ring")

    def basis_matrix(self, idx: int) -> DenseMatrix:
        f = self.ctx.A.field
        nA, nC = self.ctx.A.dim, self.ctx.C.dim
        ent = [0] * (nA * nC)
        ent[idx] = 1
        return DenseMatrix(f, nA, nC, ent)

    def matrix_of(self, coords: Sequence) -> DenseMatrix:
        f = self.ctx.A.field
        return DenseMatrix(f, self.ctx.A.dim, self.ctx.C.dim, list(coords))

    def eval_at(self, element, xvec: Sequence) -> list:
        """Value of the left-A-linear extension on a vector of A (x) C."""
        A = self.ctx.A
        f = A.field
        nC = self.ctx.C.dim
        fmat = element if isinstance(element, DenseMatrix) else None
        if fmat is None:
            if isinstance(element, int):
                fmat = self.basis_matrix(element)
            else:
                fmat = self.matrix_of(element)
        out = [0] * A.dim
        for i in range(A.dim):
            for k in range(nC):
                coef = xvec[i * nC + k]
                if coef:
                    img = A.lmul_matrix([1 if t == i else 0 for t in range(A.dim)]
                                        ).apply(fmat.col(k))
                    for t in range(A.dim):
                        if img[t]:
                            out[t] += coef * img[t]
        return [f.normalize(x) for x in out]

    def embed_A(self, a: Sequence) -> list:
        """c -> eps(c) a, the unit embedding of A into the ring."""
        f = self.ctx.A.field
        nC = self.ctx.C.dim
        out = [0] * (self.ctx.A.dim * nC)
        for i, ai in enumerate(a):
            if ai:
                for k in range(nC):
                    e = self.ctx.C.counit[k]
                    if e:
                        out[i * nC + k] = f.mul(ai, e)
        return out

    def mul_coords(self, u: Sequence, v: Sequence) -> list:
        return self.algebra.mul_vec(u, v)


def build_sharp_ring(ctx: "EntwinedContext") -> AlgebraPresentation:
    """The algebra on Hom(C, A); its axioms are re-verified on construction."""
    sharp = ctx.sharp_ring()
    verdict = verify_algebra(sharp.algebra)
    if not verdict.valid:
        raise VerificationError("build_sharp_ring", verdict)
    return sharp.algebra


# ---------------------------------------------------------------------------
# the coring on A (x) C
# ---------------------------------------------------------------------------


def build_coring(ctx: "EntwinedContext") -> CoringPresentation:
    """The coring with underlying space A (x) C, actions through psi."""
    verdict = verify_entwining(ctx.A, ctx.C, ctx.psi)
    if not verdict.valid:
        raise VerificationError("build_coring", verdict)
    A, C = ctx.A, ctx.C
    f = A.field
    nA, nC = A.dim, C.dim
    dim = nA * nC
    eyeC = DenseMatrix.identity(f, nC)
    eyeA = DenseMatrix.identity(f, nA)
    mult = A.mult_matrix()
    left = []
    right = []
    for i in range(nA):
        e_i = [1 if t == i else 0 for t in range(nA)]
        left.append(kron(A.lmul_matrix(e_i), eyeC))
        right.append(kron(mult, eyeC).mul(kron(eyeA, ctx.psi_slice(i))))
    lift_cols = []
    for i in range(nA):
        for k in range(nC):
            col = [0] * (dim * dim)
            for k1 in range(nC):
                for k2 in range(nC):
                    d = C.comult[k][k1][k2]
                    if d:
                        for u in range(nA):
                            if A.unit[u]:
                                col[(i * nC + k1) * dim + (u * nC + k2)] = \
                                    f.mul(d, A.unit[u])
            lift_cols.append(col)
    delta_lift = DenseMatrix.from_rows(f, lift_cols, cols=dim * dim).transpose()
    counit = kron(eyeA, C.counit_matrix())
    basis_cols = []
    for j in range(nC):
        col = [0] * dim
        for i in range(nA):
            if A.unit[i]:
                col[i * nC + j] = A.unit[i]
        basis_cols.append(col)
    free_basis = DenseMatrix.from_rows(f, basis_cols, cols=dim).transpose()
    return CoringPresentation(A, dim, left, right, delta_lift, counit,
                              free_left_basis=free_basis,
                              name=f"A(x)C[{ctx.name}]" if ctx.name else "A(x)C")


def comodule_algebra_from_unit(ctx: "EntwinedContext") -> Tuple[ComoduleInstance, list]:
    """The comodule structure a -> 1_(0) a_psi (x) 1_(1)^psi on A, plus the
    group-like element it determines; every required law is verified."""
    A, C = ctx.A, ctx.C
    f = A.field
    nA, nC = A.dim, C.dim
    u = ctx.unit_coaction
    # ins_u: A -> A (x) C (x) A, a -> u (x) a
    cols = []
    for j in range(nA):
        col = [0] * (nA * nC * nA)
        for idx, coef in enumerate(u):
            if coef:
                col[idx * nA + j] = coef
        cols.append(col)
    ins_u = DenseMatrix.from_rows(f, cols, cols=nA * nC * nA).transpose()
    rho = kron(A.mult_matrix(), DenseMatrix.identity(f, nC)).mul(
        kron(DenseMatrix.identity(f, nA), ctx.psi)).mul(ins_u)
    comodule = ComoduleInstance(ctx, A.regular_module("right"), rho, name="A")
    verdict = comodule.verify()
    if rho.apply(A.unit) != [f.normalize(t) for t in u]:
        verdict.fail("unit-coaction-consistency", (),
                     "rho(1) disagrees with the declared unit coaction")
    if not verdict.valid:
        raise VerificationError("comodule_algebra_from_unit", verdict)
    if not is_grouplike(ctx.coring(), u, ctx.square()):
        v = Verdict()
        v.fail("grouplike", (), "the unit coaction is not group-like in the coring")
        raise VerificationError("comodule_algebra_from_unit", v)
    return comodule, list(u)


# ---------------------------------------------------------------------------
# Doi-Koppinen input data
# ---------------------------------------------------------------------------


def verify_bialgebra(H_alg: AlgebraPresentation, H_coalg: CoalgebraPresentation) -> Verdict:
    v = Verdict()
    if H_alg.dim != H_coalg.dim or H_alg.field != H_coalg.field:
        raise ShapeError("bialgebra data on mismatched spaces")
    for fail in verify_algebra(H_alg).failures:
        v.fail("bialgebra-" + fail.axiom, fail.indices, fail.detail)
    for fail in verify_coalgebra(H_coalg).failures:
        v.fail("bialgebra-" + fail.axiom, fail.indices, fail.detail)
    f = H_alg.field
    n = H_alg.dim
    mult = H_alg.mult_matrix()
    delta = H_coalg.comult_matrix()
    eyen = DenseMatrix.identity(f, n)
    mid = kron(eyen, kron(swap_matrix(f, n, n), eyen))
    mult_hh = kron(mult, mult).mul(mid)
    if delta.mul(mult) != mult_hh.mul(kron(delta, delta)):
        v.fail("comultiplication-not-algebra-map")
    eps = H_coalg.counit_matrix()
    if eps.mul(mult) != kron(eps, eps):
        v.fail("counit-not-algebra-map")
    du = delta.apply(H_alg.unit)
    uu = [0] * (n * n)
    for i in range(n):
        if H_alg.unit[i]:
            for j in range(n):
                if H_alg.unit[j]:
                    uu[i * n + j] = f.mul(H_alg.unit[i], H_alg.unit[j])
    if du != uu:
        v.fail("comultiplication-of-unit")
    if H_coalg.counit_vec(H_alg.unit) != f.one:
        v.fail("counit-of-unit")
    return v


def verify_comodule_algebra(H_alg: AlgebraPresentation,
                            H_coalg: CoalgebraPresentation,
                            A: AlgebraPresentation,
                            coaction: DenseMatrix) -> Verdict:
    """coaction: A -> A (x) H must be a counital coassociative algebra map."""
    v = Verdict()
    f = A.field
    nA, nH = A.dim, H_alg.dim
    if coaction.rows != nA * nH or coaction.cols != nA:
        raise ShapeError("coaction has the wrong shape")
    eyeA = DenseMatrix.identity(f, nA)
    eyeH = DenseMatrix.identity(f, nH)
    if kron(coaction, eyeH).mul(coaction) != \
            kron(eyeA, H_coalg.comult_matrix()).mul(coaction):
        v.fail("coaction-coassociativity")
    if kron(eyeA, H_coalg.counit_matrix()).mul(coaction) != eyeA:
        v.fail("coaction-counit")
    mid = kron(eyeA, kron(swap_matrix(f, nA, nH), eyeH))
    mult_ah = kron(A.mult_matrix(), H_alg.mult_matrix()).mul(mid)
    if coaction.mul(A.mult_matrix()) != mult_ah.mul(kron(coaction, coaction)):
        v.fail("coaction-not-algebra-map")
    ru = coaction.apply(A.unit)
    want = [0] * (nA * nH)
    for i in range(nA):
        if A.unit[i]:
            for j in range(nH):
                if H_alg.unit[j]:
                    want[i * nH + j] = f.mul(A.unit[i], H_alg.unit[j])
    if ru != want:
        v.fail("coaction-of-unit")
    return v


def doi_koppinen(H_alg: AlgebraPresentation, H_coalg: CoalgebraPresentation,
                 A: AlgebraPresentation, coaction: DenseMatrix) -> DenseMatrix:
    """psi(c (x) a) = sum a_(0) (x) c a_(1) for a comodule algebra over a
    bialgebra H, with C = H acting on itself by multiplication."""
    verdict = verify_bialgebra(H_alg, H_coalg)
    if not verdict.valid:
        raise VerificationError("doi_koppinen bialgebra", verdict)
    verdict = verify_comodule_algebra(H_alg, H_coalg, A, coaction)
    if not verdict.valid:
        raise VerificationError("doi_koppinen comodule algebra", verdict)
    f = A.field
    nA, nH = A.dim, H_alg.dim
    cols = []
    for k in range(nH):
        for j in range(nA):
            col = [0] * (nA * nH)
            rho_j = coaction.col(j)
            for a2 in range(nA):
                for l in range(nH):
                    coef = rho_j[a2 * nH + l]
                    if coef:
                        prod = H_alg.mult[k][l]
                        for m in range(nH):
                            if prod[m]:
                                col[a2 * nH + m] = f.add(col[a2 * nH + m],
                                                         f.mul(coef, prod[m]))
            cols.append(col)
    return DenseMatrix.from_rows(f, cols, cols=nA * nH).transpose()


# ---------------------------------------------------------------------------
# the bundled context
# ---------------------------------------------------------------------------


class EntwinedContext:
    """(A, C, psi, rho_A(1)) with every derived object cached on first use."""

    def __init__(self, A: AlgebraPresentation, C: CoalgebraPresentation,
                 psi: DenseMatrix, unit_coaction: Sequence, name: str = "",
                 entwining_kind: str = "matrix"):
        if A.field != C.field:
            raise ShapeError("algebra and coalgebra over different fields")
        if psi.rows != A.dim * C.dim or psi.cols != C.dim * A.dim:
            raise ShapeError("psi has the wrong shape")
        if len(unit_coaction) != A.dim * C.dim:
            raise ShapeError("unit coaction has the wrong length")
        self.A = A
        self.C = C
        self.psi = psi
        self.unit_coaction = [A.field.normalize(x) for x in unit_coaction]
        self.name = name
        self.entwining_kind = entwining_kind
        self._psi_slices: List[Optional[DenseMatrix]] = [None] * A.dim
        self._coring = None
        self._sharp = None
        self._square = None
        self._comodule_A = None
        self._morita = None
        self._witnesses = {}

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def x(self) -> list:
        """The group-like element of the coring, as a vector of A (x) C."""
        return self.unit_coaction

    def psi_slice(self, i: int) -> DenseMatrix:
        if self._psi_slices[i] is None:
            nA, nC = self.A.dim, self.C.dim
            cols = [self.psi.col(k * nA + i) for k in range(nC)]
            self._psi_slices[i] = DenseMatrix.from_rows(
                self.field, cols, cols=nA * nC).transpose()
        return self._psi_slices[i]

    def verify_axioms(self) -> Verdict:
        """Algebra, coalgebra and entwining axioms, with tagged failure names."""
        v = Verdict()
        for fail in verify_algebra(self.A).failures:
            v.fail("algebra-" + fail.axiom, fail.indices, fail.detail)
        for fail in verify_coalgebra(self.C).failures:
            v.fail("coalgebra-" + fail.axiom, fail.indices, fail.detail)
        if v.valid:
            for fail in verify_entwining(self.A, self.C, self.psi).failures:
                v.fail(fail.axiom, fail.indices, fail.detail)
        return v

    def coring(self) -> CoringPresentation:
        if self._coring is None:
            self._coring = build_coring(self)
        return self._coring

    def square(self) -> SquareReducer:
        if self._square is None:
            self._square = SquareReducer(self.coring())
        return self._square

    def sharp_ring(self) -> SharpRing:
        if self._sharp is None:
            self._sharp = SharpRing(self)
        return self._sharp

    def comodule_A(self) -> ComoduleInstance:
        if self._comodule_A is None:
            self._comodule_A, _ = comodule_algebra_from_unit(self)
        return self._comodule_A

    def morita(self):
        if self._morita is None:
            from .morita import build_context
            self._morita = build_context(self)
        return self._morita

    def default_witnesses(self, seed: int = 0) -> list:
        if seed not in self._witnesses:
            from .coring import default_comodule_witnesses
            self._witnesses[seed] = default_comodule_witnesses(self, seed=seed)
        return self._witnesses[seed]

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        ent: dict
        if self.entwining_kind == "doi_koppinen":
            ent = {"kind": "doi_koppinen"}
        else:
            ent = {"kind": "matrix",
                   "psi": [[f.scalar_to_json(self.psi.get(i, j))
                            for j in range(self.psi.cols)]
                           for i in range(self.psi.rows)]}
        out = {
            "field": f.to_json(),
            "algebra": self.A.to_json(),
            "coalgebra": self.C.to_json(),
            "entwining": ent,
            "unit_coaction": [f.scalar_to_json(x) for x in self.unit_coaction],
        }
        if self.name:
            out["name"] = self.name
        return out

    def digest(self) -> str:
        return hashlib.sha256(dumps_canonical(self.to_json()).encode()).hexdigest()

    def __repr__(self):
        return f"EntwinedContext({self.name or 'anonymous'}: dimA={self.A.dim}, dimC={self.C.dim})"


def instance_from_json(obj: dict) -> EntwinedContext:
    """Parse the instance wire format into a context (axioms not yet checked)."""
    if not isinstance(obj, dict):
        raise ShapeError("instance JSON must be an object")
    field = FieldSpec.from_json(obj.get("field", {"kind": "Q"}))
    try:
        A = AlgebraPresentation.from_json(field, obj["algebra"])
        C = CoalgebraPresentation.from_json(field, obj["coalgebra"])
        ent = obj["entwining"]
        unit_coaction = [field.scalar_from_str(x) for x in obj["unit_coaction"]]
    except KeyError as exc:
        raise ShapeError(f"instance JSON is missing {exc}")
    name = obj.get("name", "")
    kind = ent.get("kind") if isinstance(ent, dict) else None
    if kind == "matrix":
        rows = ent.get("psi")
        if not isinstance(rows, list):
            raise ShapeError("matrix entwining needs a psi entry")
        parsed = [[field.scalar_from_str(x) for x in r] for r in rows]
        psi = DenseMatrix.from_rows(field, parsed, cols=C.dim * A.dim)
        if psi.rows != A.dim * C.dim:
            raise ShapeError("psi has the wrong shape")
        return EntwinedContext(A, C, psi, unit_coaction, name=name)
    if kind == "doi_koppinen":
        if A.dim != C.dim:
            raise ShapeError("self-paired Doi-Koppinen input needs dim A = dim C")
        psi = doi_koppinen(A, C, A, C.comult_matrix())
        return EntwinedContext(A, C, psi, unit_coaction, name=name,
                               entwining_kind="doi_koppinen")
    raise ShapeError(f"unknown entwining kind {kind!r}")
