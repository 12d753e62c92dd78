"""The Galois comparison map, the adjunction maps, and the structure report.

Everything here evaluates the weak/strong structure properties of a context.
The "for all modules" quantifiers are evaluated on the documented finite
witness family while the reported flags are grounded in the finitely
checkable equivalents (F surjectivity for the weak property, faithful
flatness of A over B plus the Galois property for the strong one); the two
routes are asserted to agree and any mismatch raises instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .algebra import (
    ModulePresentation,
    balanced_tensor,
    hom_matrices,
    hom_module,
    is_fg_projective,
    is_generator,
)
from .coring import (
    ComoduleInstance,
    coinvariants,
    hom_comodule,
    induced_comodule,
)
from .exactla import DenseMatrix, Subspace, image, kernel, kron, solve
from .morita import (
    ClauseDisagreement,
    LinearMapReport,
    MoritaContextData,
    find_qhat,
    map_report,
    omega_and_lambda,
    trace_map,
)
from .verdict import Verdict, VerificationError


# ---------------------------------------------------------------------------
# module scaffolding shared by the adjunction maps
# ---------------------------------------------------------------------------


def _restrict_right_to_B(ctx, M: ModulePresentation, B) -> ModulePresentation:
    """A right A-module seen as a right B-module through the embedding."""
    action = [M.act_matrix(B.embedding.col(j)) for j in range(B.dim)]
    return ModulePresentation(B.algebra, M.dim, "right", action,
                              name=(M.name or "M") + " over B")


def _coinv_tensor_A(ctx, M: ComoduleInstance, coinv: Subspace):
    """(coinvariants of M) (x)_B A with the coinvariants as a right B-module."""
    data = ctx.morita()
    f = ctx.field
    emb = coinv.basis.transpose()
    action = []
    for j in range(data.B.dim):
        b = data.B.embedding.col(j)
        mat = M.module.act_matrix(b)
        cols = []
        for r in range(coinv.dim):
            img = mat.apply(emb.col(r))
            cols.append(coinv.coords(img))  # raises if not invariant: bug
        action.append(DenseMatrix.from_rows(f, cols, cols=coinv.dim).transpose())
    coinv_mod = ModulePresentation(data.B.algebra, coinv.dim, "right", action)
    tensor = balanced_tensor(coinv_mod, data.A_left_B)
    return tensor, coinv_mod


def psi_M(ctx, M: ComoduleInstance) -> Tuple[DenseMatrix, LinearMapReport]:
    """The weak-structure map (coinvariants of M) (x)_B A -> M, m (x) a -> ma."""
    f = ctx.field
    coinv = coinvariants(M)
    tensor, _ = _coinv_tensor_A(ctx, M, coinv)
    emb = coinv.basis.transpose()
    nA = ctx.A.dim
    cols = []
    for r in range(coinv.dim):
        base = emb.col(r)
        for j in range(nA):
            e_j = [1 if t == j else 0 for t in range(nA)]
            cols.append(M.module.act_matrix(e_j).apply(base))
    plain = DenseMatrix.from_rows(f, cols, cols=M.dim).transpose()
    mat = plain.mul(tensor.section)
    return mat, map_report(mat, target_dim=M.dim)


def induced_from_B_module(ctx, N: ModulePresentation) -> Tuple[ComoduleInstance, object]:
    """N (x)_B A with the comodule structure carried by the A factor.

    Returns the comodule together with the quotient space, whose projection
    and section give coordinates on N (x)_B A.
    """
    data = ctx.morita()
    if N.side != "right" or N.algebra.mult != data.B.algebra.mult:
        raise VerificationError("induced_from_B_module",
                                _fail("wrong-module", "need a right B-module"))
    f = ctx.field
    nA, nC = ctx.A.dim, ctx.C.dim
    tensor = balanced_tensor(N, data.A_left_B)
    eyeN = DenseMatrix.identity(f, N.dim)
    action = []
    for i in range(nA):
        e_i = [1 if t == i else 0 for t in range(nA)]
        action.append(tensor.projection.mul(kron(eyeN, ctx.A.rmul_matrix(e_i))
                                            ).mul(tensor.section))
    mod = ModulePresentation(ctx.A, tensor.dim, "right", action,
                             name=(N.name or "N") + "(x)A")
    rho_A = ctx.comodule_A().coaction
    eyeC = DenseMatrix.identity(f, nC)
    rho = kron(tensor.projection, eyeC).mul(kron(eyeN, rho_A)).mul(tensor.section)
    return ComoduleInstance(ctx, mod, rho, name=mod.name), tensor


def phi_N(ctx, N: ModulePresentation) -> Tuple[DenseMatrix, LinearMapReport]:
    """The unit map N -> (N (x)_B A)^co, n -> class of n (x) 1."""
    f = ctx.field
    comod, tensor = induced_from_B_module(ctx, N)
    coinv = coinvariants(comod)
    nA = ctx.A.dim
    cols = []
    for n in range(N.dim):
        plain = [0] * (N.dim * nA)
        for j in range(nA):
            if ctx.A.unit[j]:
                plain[n * nA + j] = ctx.A.unit[j]
        cls = tensor.project(plain)
        cols.append(coinv.coords(cls))  # membership is a theorem; raises on bug
    mat = DenseMatrix.from_rows(f, cols, cols=coinv.dim).transpose()
    return mat, map_report(mat, target_dim=coinv.dim)


def psi_prime_M(ctx, M: ComoduleInstance) -> Tuple[DenseMatrix, LinearMapReport]:
    """Hom over the coring (A, M) (x)_B A -> M by evaluation."""
    data = ctx.morita()
    f = ctx.field
    homs = hom_comodule(ctx.comodule_A(), M)
    nA = ctx.A.dim
    # right B-module structure on the hom space: (f.b)(a) = f(b a)
    action = []
    for j in range(data.B.dim):
        lb = ctx.A.lmul_matrix(data.B.embedding.col(j))
        cols = []
        for i in range(homs.dim):
            T = DenseMatrix(f, M.dim, nA, homs.basis.row(i))
            cols.append(homs.coords(T.mul(lb).entries))
        action.append(DenseMatrix.from_rows(f, cols, cols=homs.dim).transpose())
    hom_mod = ModulePresentation(data.B.algebra, homs.dim, "right", action)
    tensor = balanced_tensor(hom_mod, data.A_left_B)
    cols = []
    for i in range(homs.dim):
        T = DenseMatrix(f, M.dim, nA, homs.basis.row(i))
        for j in range(nA):
            cols.append(T.col(j))
    plain = DenseMatrix.from_rows(f, cols, cols=M.dim).transpose()
    mat = plain.mul(tensor.section)
    return mat, map_report(mat, target_dim=M.dim)


# ---------------------------------------------------------------------------
# the Galois map
# ---------------------------------------------------------------------------


@dataclass
class GaloisMapData:
    matrix: DenseMatrix            # on A (x)_B A quotient coordinates
    plain_matrix: DenseMatrix      # on the plain tensor square of A
    report: LinearMapReport
    tensor: object                 # the A (x)_B A quotient


def beta(ctx) -> GaloisMapData:
    """a~ (x) a -> a~ x a into the coring, verified to be a coring morphism."""
    data = ctx.morita()
    f = ctx.field
    nA = ctx.A.dim
    cor = ctx.coring()
    rho_A = ctx.comodule_A().coaction  # a -> x a
    cols = []
    for i in range(nA):
        e_i = [1 if t == i else 0 for t in range(nA)]
        li = cor.left_act(e_i)
        for j in range(nA):
            xa = rho_A.col(j)
            cols.append(li.apply(xa))
    plain = DenseMatrix.from_rows(f, cols, cols=cor.dim).transpose()
    A_right_B = _restrict_right_to_B(ctx, ctx.A.regular_module("right"), data.B)
    tensor = balanced_tensor(A_right_B, data.A_left_B)
    mat = plain.mul(tensor.section)
    rep = map_report(mat, target_dim=cor.dim)
    _verify_beta_coring_morphism(ctx, plain)
    return GaloisMapData(mat, plain, rep, tensor)


def _verify_beta_coring_morphism(ctx, plain: DenseMatrix):
    """Counit, comultiplication (after projection) and A-bilinearity."""
    f = ctx.field
    nA = ctx.A.dim
    cor = ctx.coring()
    v = Verdict()
    if cor.counit_map.mul(plain) != ctx.A.mult_matrix():
        v.fail("beta-counit")
    red = ctx.square()
    lift_cols = []
    for i in range(nA):
        for j in range(nA):
            col = [0] * (nA * nA * nA * nA)
            for u in range(nA):
                if ctx.A.unit[u]:
                    for w in range(nA):
                        if ctx.A.unit[w]:
                            col[(i * nA + u) * nA * nA + (w * nA + j)] = \
                                f.mul(ctx.A.unit[u], ctx.A.unit[w])
            lift_cols.append(col)
    lift = DenseMatrix.from_rows(f, lift_cols, cols=nA ** 4).transpose()
    lhs = red.reduced_delta().mul(plain)
    rhs = red.projection.mul(kron(plain, plain)).mul(lift)
    if lhs != rhs:
        v.fail("beta-comultiplication")
    for i in range(nA):
        e_i = [1 if t == i else 0 for t in range(nA)]
        eyeA = DenseMatrix.identity(f, nA)
        if plain.mul(kron(ctx.A.lmul_matrix(e_i), eyeA)) != \
                cor.left_act(e_i).mul(plain):
            v.fail("beta-left-linearity", (i,))
        if plain.mul(kron(eyeA, ctx.A.rmul_matrix(e_i))) != \
                cor.right_act(e_i).mul(plain):
            v.fail("beta-right-linearity", (i,))
    if not v.valid:
        raise VerificationError("beta", v)


def beta_W(ctx, W: ModulePresentation) -> Tuple[DenseMatrix, LinearMapReport]:
    """w (x) a -> w (x)_A x a: W (x)_B A into W (x) C, in entwined coordinates."""
    data = ctx.morita()
    f = ctx.field
    nA, nC = ctx.A.dim, ctx.C.dim
    cor = ctx.coring()
    rho_A = ctx.comodule_A().coaction
    W_B = _restrict_right_to_B(ctx, W, data.B)
    tensor = balanced_tensor(W_B, data.A_left_B)
    cols = []
    for r in range(W.dim):
        for j in range(nA):
            xa = rho_A.col(j)  # x a in A (x) C
            out = [0] * (W.dim * nC)
            for i in range(nA):
                for k in range(nC):
                    coef = xa[i * nC + k]
                    if coef:
                        e_i = [1 if t == i else 0 for t in range(nA)]
                        wcol = W.act_matrix(e_i).col(r)
                        for t in range(W.dim):
                            if wcol[t]:
                                out[t * nC + k] = f.add(out[t * nC + k],
                                                        f.mul(coef, wcol[t]))
            cols.append(out)
    plain = DenseMatrix.from_rows(f, cols, cols=W.dim * nC).transpose()
    mat = plain.mul(tensor.section)
    return mat, map_report(mat, target_dim=W.dim * nC)


def varpi_M(ctx, M: ModulePresentation) -> Dict[str, object]:
    """M (x)_dual (dual ring) -> M with its surjectivity verdict, plus the
    existence criterion for a dual-ring element sending x to 1; the two are
    asserted to agree for M = A."""
    f = ctx.field
    sharp = ctx.sharp_ring()
    tensor = balanced_tensor(M, sharp.algebra.regular_module("left"))
    nS = sharp.algebra.dim
    cols = []
    for m in range(M.dim):
        for s in range(nS):
            cols.append(M.action[s].col(m))
    plain = DenseMatrix.from_rows(f, cols, cols=M.dim).transpose()
    mat = plain.mul(tensor.section)
    rep = map_report(mat, target_dim=M.dim)
    evals = [sharp.eval_at(s, ctx.x) for s in range(nS)]
    system = DenseMatrix.from_rows(f, evals, cols=ctx.A.dim).transpose()
    ghat = solve(system, ctx.A.unit)
    return {"matrix": mat, "report": rep, "ghat": ghat,
            "ghat_exists": ghat is not None}


# ---------------------------------------------------------------------------
# the structure verdict
# ---------------------------------------------------------------------------


@dataclass
class StructureVerdict:
    weak: bool
    strong: bool
    galois: bool
    flat_BA: bool
    faithfully_flat_BA: bool
    qhat_exists: bool
    normal_basis: Optional[bool] = None
    clause_tables: Dict[str, Dict[str, bool]] = dc_field(default_factory=dict)
    witness_names: List[str] = dc_field(default_factory=list)
    notes: Dict[str, object] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "weak": self.weak,
            "strong": self.strong,
            "galois": self.galois,
            "flat_BA": self.flat_BA,
            "faithfully_flat_BA": self.faithfully_flat_BA,
            "qhat_exists": self.qhat_exists,
            "clause_tables": self.clause_tables,
            "witnesses": self.witness_names,
            "notes": {k: v for k, v in sorted(self.notes.items())},
        }
        if self.normal_basis is not None:
            out["normal_basis"] = self.normal_basis
        return out


def default_B_module_witnesses(ctx) -> List[ModulePresentation]:
    data = ctx.morita()
    B = data.B.algebra
    reg = B.regular_module("right")
    reg.name = "B"
    reg2 = reg.direct_sum(reg)
    reg2.name = "B^2"
    A_over_B = _restrict_right_to_B(ctx, ctx.A.regular_module("right"), data.B)
    A_over_B.name = "A over B"
    return [reg, reg2, A_over_B]


def _faithfully_balanced(ctx, data: MoritaContextData) -> Tuple[bool, bool]:
    """(faithful, balanced) for A over the dual ring: the canonical map into
    the endomorphisms over End(A_dual) is injective resp. surjective."""
    f = ctx.field
    nA = ctx.A.dim
    endo = hom_matrices(data.A_right_dual, data.A_right_dual)
    # commutant: matrices commuting with every endomorphism of A_dual
    rows = []
    for e in endo:
        for i in range(nA):
            for j in range(nA):
                row = [0] * (nA * nA)
                for c in range(nA):
                    x = e.get(c, j)
                    if x:
                        row[i * nA + c] = f.add(row[i * nA + c], x)
                for r in range(nA):
                    y = e.get(i, r)
                    if y:
                        row[r * nA + j] = f.sub(row[r * nA + j], y)
                rows.append(row)
    if rows:
        commutant = kernel(DenseMatrix.from_rows(f, rows, cols=nA * nA))
    else:
        commutant = Subspace.full(f, nA * nA)
    sharp = ctx.sharp_ring()
    cols = [data.A_right_dual.action[s].entries for s in range(sharp.algebra.dim)]
    canon = DenseMatrix.from_rows(f, cols, cols=nA * nA).transpose()
    faithful = kernel(canon).is_zero()
    img = image(canon)
    balanced = img.dim == commutant.dim and commutant.contains_subspace(img)
    return faithful, balanced


def structure_report(ctx, witnesses: Optional[List[ComoduleInstance]] = None,
                     seed: int = 0) -> StructureVerdict:
    """Weak/strong structure flags with the full clause tables.

    The flags are grounded in finitely checkable criteria; every witness
    evaluation and every equivalent clause is computed independently and
    asserted to agree (clause "13" of the progenerator table is checked as a
    necessary condition only, since it omits the balancedness that the
    equivalence needs, as the scalars-with-one-sided-coaction instance
    witnesses).
    """
    data = ctx.morita()
    if witnesses is None:
        witnesses = ctx.default_witnesses(seed=seed)
    galois_data = beta(ctx)
    galois_flag = galois_data.report.bijective
    flat_BA, _ = is_fg_projective(data.A_left_B)
    gen_BA = is_generator(data.A_left_B)
    ff_BA = flat_BA and gen_BA
    weak = data.F_report.surjective
    strong = ff_BA and galois_flag
    if strong and not weak:
        raise ClauseDisagreement("strong-implies-weak",
                                 {"weak": weak, "strong": strong})
    qhat = find_qhat(data)

    psi_flags = {}
    psi_prime_flags = {}
    psi_prime_inj = {}
    for w in witnesses:
        name = w.name or f"w{len(psi_flags)}"
        _, rep = psi_M(ctx, w)
        psi_flags[name] = rep.bijective
        _, prep = psi_prime_M(ctx, w)
        psi_prime_flags[name] = prep.bijective
        psi_prime_inj[name] = prep.injective
        if rep.bijective != prep.bijective:
            raise ClauseDisagreement(
                "hom-evaluation linkage", {"psi": rep.bijective, "psi'": prep.bijective},
                detail=f"witness {name}")
    all_psi = all(psi_flags.values())
    if all_psi != weak:
        raise ClauseDisagreement("weak grounding",
                                 {"witness-psi": all_psi, "F-surjective": weak})

    b_witnesses = default_B_module_witnesses(ctx)
    phi_flags = {}
    for N in b_witnesses:
        _, rep = phi_N(ctx, N)
        phi_flags[N.name] = rep.bijective
    all_phi = all(phi_flags.values())
    if (all_psi and all_phi) != strong:
        raise ClauseDisagreement(
            "strong grounding",
            {"witness-psi-and-phi": all_psi and all_phi, "ff+galois": strong})
    if qhat is not None and not all_phi:
        raise ClauseDisagreement("unit-map", phi_flags,
                                 detail="q-hat exists but a unit map failed")

    # beta' = the hom-evaluation map of the coring as a comodule
    coring_com = next((w for w in witnesses if w.name == "coring"), None)
    if coring_com is None:
        coring_com = induced_comodule(ctx, ctx.A.regular_module("right"),
                                      name="coring")
    _, beta_prime_rep = psi_prime_M(ctx, coring_com)

    ol = omega_and_lambda(data)
    gen_dual = is_generator(data.A_right_dual)
    proj_dual, _ = is_fg_projective(data.A_right_dual)
    proj_q_B, _ = is_fg_projective(data.Q_right_B)
    from .morita import q_left_annihilator
    fin_gen = {
        "1": all_psi,
        "2": flat_BA and galois_flag,
        "3": flat_BA and beta_prime_rep.bijective,
        "8": gen_dual,
        "9": data.F_report.surjective,
        "10": proj_q_B and ol.omega_iso and q_left_annihilator(data).is_zero(),
        "11": flat_BA and ol.lambda_iso,
    }
    if len(set(fin_gen.values())) != 1:
        raise ClauseDisagreement("fin-gen", fin_gen)

    faithful, balanced = _faithfully_balanced(ctx, data)
    prog_BA = flat_BA and gen_BA
    fin_prog = {
        "1": all_psi and all_phi,
        "2": ff_BA and galois_flag,
        "3": ff_BA and beta_prime_rep.bijective,
        "9": prog_BA and faithful and balanced,
        "12": gen_dual and gen_BA,
        "13": proj_dual and flat_BA,
        "14": proj_dual and gen_dual,
    }
    core = {k: v for k, v in fin_prog.items() if k != "13"}
    if len(set(core.values())) != 1:
        raise ClauseDisagreement("fin-prog", fin_prog)
    if fin_prog["1"] and not fin_prog["13"]:
        raise ClauseDisagreement("fin-prog", fin_prog,
                                 detail="strong holds but projectivity pair fails")

    # one-directional checks
    if flat_BA and galois_flag:
        for name, inj in psi_prime_inj.items():
            if not inj:
                raise ClauseDisagreement("hom-evaluation injectivity",
                                         psi_prime_inj, detail=name)
        if not all_psi:
            raise ClauseDisagreement("flat+galois sufficiency", psi_flags)
        if qhat is not None and not strong:
            raise ClauseDisagreement(
                "flat+galois+unit sufficiency",
                {"strong": strong, "qhat": True})

    pairing = varpi_M(ctx, data.A_right_dual)
    if pairing["report"].surjective != pairing["ghat_exists"]:
        raise ClauseDisagreement(
            "dual pairing", {"surjective": pairing["report"].surjective,
                             "ghat": pairing["ghat_exists"]})

    notes = {
        "locally_projective": "holds (finite-dimensional)",
        "flat_means": "flat (=projective at this scale)",
        "quasiprogenerator_clauses": "not evaluated",
        "psi_witnesses": psi_flags,
        "phi_witnesses": phi_flags,
        "faithfully_balanced": [faithful, balanced],
    }
    if qhat is not None:
        trace_map(data, qhat)  # verifies splitting; raises on failure
        proj_q_dual, _ = is_fg_projective(_q_left_dual_as_module(data))
        if not proj_dual or not proj_q_dual:
            raise ClauseDisagreement(
                "projectivity from unit element",
                {"A_dual": proj_dual, "Q_dual": proj_q_dual})
        _check_B_is_endo_ring(ctx, data)
    verdict = StructureVerdict(
        weak=weak, strong=strong, galois=galois_flag, flat_BA=flat_BA,
        faithfully_flat_BA=ff_BA, qhat_exists=qhat is not None,
        clause_tables={"fin_gen": fin_gen, "fin_prog": fin_prog},
        witness_names=[w.name or "?" for w in witnesses],
        notes=notes)
    return verdict


def _q_left_dual_as_module(data: MoritaContextData) -> ModulePresentation:
    return data.Q_left_dual


def _check_B_is_endo_ring(ctx, data: MoritaContextData):
    """B -> End(A over the dual ring) by left multiplication is a ring iso."""
    f = ctx.field
    nA = ctx.A.dim
    endo = hom_module(data.A_right_dual, data.A_right_dual)
    if endo.dim != data.B.dim:
        raise ClauseDisagreement("endomorphism ring",
                                 {"dim_end": endo.dim, "dim_B": data.B.dim})
    cols = []
    for j in range(data.B.dim):
        lb = ctx.A.lmul_matrix(data.B.embedding.col(j))
        if not endo.contains(lb.entries):
            raise ClauseDisagreement("endomorphism ring", {"left-mult-not-endo": j})
        cols.append(endo.coords(lb.entries))
    canon = DenseMatrix.from_rows(f, cols, cols=endo.dim).transpose()
    if not (kernel(canon).is_zero() and image(canon).dim == endo.dim):
        raise ClauseDisagreement("endomorphism ring", {"bijective": False})
    # multiplicativity: left mult by b b' = composition
    for i in range(data.B.dim):
        bi = data.B.embedding.col(i)
        for j in range(data.B.dim):
            bj = data.B.embedding.col(j)
            prod = ctx.A.mul_vec(bi, bj)
            if ctx.A.lmul_matrix(prod) != \
                    ctx.A.lmul_matrix(bi).mul(ctx.A.lmul_matrix(bj)):
                raise ClauseDisagreement("endomorphism ring",
                                         {"multiplicative": False})


def _fail(name: str, detail: str = "") -> Verdict:
    v = Verdict()
    v.fail(name, (), detail)
    return v
