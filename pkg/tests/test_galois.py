from coring_lab.exactla import QQ, DenseMatrix, image
from coring_lab.algebra import zero_module
from coring_lab.coring import dual_action, induced_comodule
from coring_lab.galois import (
    beta,
    beta_W,
    default_B_module_witnesses,
    phi_N,
    psi_M,
    psi_prime_M,
    structure_report,
    varpi_M,
)
from test_entwining import make_fix_h, make_fix_n, make_fix_t


def test_beta_fix_h_images():
    # oracle: expanding a~ x a on the four basis tensors of A (x) A gives
    # 1 (x) 1, g (x) g, g (x) 1, 1 (x) g in the coring H (x) H
    ctx = make_fix_h()
    g = beta(ctx)
    expected = {
        (0, 0): [1, 0, 0, 0],   # 1 (x) 1 -> 1 (x) 1
        (0, 1): [0, 0, 0, 1],   # 1 (x) g -> x g = g (x) g
        (1, 0): [0, 0, 1, 0],   # g (x) 1 -> g (x) 1
        (1, 1): [0, 1, 0, 0],   # g (x) g -> 1 (x) g
    }
    for (i, j), want in expected.items():
        assert g.plain_matrix.col(i * 2 + j) == want
    assert g.report.bijective


def test_beta_fix_n_not_surjective():
    ctx = make_fix_n()
    g = beta(ctx)
    assert not g.report.surjective
    assert image(g.matrix).basis.row_lists() == [[0, 1]]  # the line through g


def test_beta_fix_t_identity():
    ctx = make_fix_t()
    g = beta(ctx)
    assert g.report.bijective
    assert g.matrix == DenseMatrix.identity(QQ, 2)


def test_beta_W_reproduces_beta():
    for mk in (make_fix_t, make_fix_h, make_fix_n):
        ctx = mk()
        g = beta(ctx)
        mat, rep = beta_W(ctx, ctx.A.regular_module("right"))
        assert mat == g.matrix
        assert rep.bijective == g.report.bijective


def test_beta_W_free_rank_two():
    ctx = make_fix_h()
    W = ctx.A.regular_module("right").direct_sum(ctx.A.regular_module("right"))
    mat, rep = beta_W(ctx, W)
    assert rep.bijective


def test_beta_W_zero_module():
    ctx = make_fix_h()
    mat, rep = beta_W(ctx, zero_module(ctx.A, "right"))
    assert rep.bijective
    assert mat.rows == 0


def test_psi_M_fix_h_on_A():
    ctx = make_fix_h()
    mat, rep = psi_M(ctx, ctx.comodule_A())
    assert rep.bijective


def test_psi_M_fix_n_on_coring():
    ctx = make_fix_n()
    coring_com = induced_comodule(ctx, ctx.A.regular_module("right"))
    mat, rep = psi_M(ctx, coring_com)
    assert not rep.surjective
    assert image(mat).dim == 1 < coring_com.dim


def test_phi_B_bijective_whenever_qhat_exists():
    # the normalized element exists on every fixture, so the unit of the
    # adjunction is invertible on all the B-module witnesses
    for mk in (make_fix_t, make_fix_h, make_fix_n):
        ctx = mk()
        for N in default_B_module_witnesses(ctx):
            _, rep = phi_N(ctx, N)
            assert rep.bijective, (ctx.name, N.name)


def test_psi_prime_agrees_with_psi():
    for mk in (make_fix_t, make_fix_h, make_fix_n):
        ctx = mk()
        for w in ctx.default_witnesses():
            _, rep = psi_M(ctx, w)
            _, prep = psi_prime_M(ctx, w)
            assert rep.bijective == prep.bijective


def test_psi_prime_beta_prime():
    ctx = make_fix_h()
    coring_com = induced_comodule(ctx, ctx.A.regular_module("right"))
    _, rep = psi_prime_M(ctx, coring_com)
    assert rep.bijective
    ctx = make_fix_n()
    coring_com = induced_comodule(ctx, ctx.A.regular_module("right"))
    _, rep = psi_prime_M(ctx, coring_com)
    assert not rep.surjective


def test_psi_prime_zero_comodule():
    ctx = make_fix_h()
    from coring_lab.coring import zero_comodule
    _, rep = psi_prime_M(ctx, zero_comodule(ctx))
    assert rep.bijective


def test_varpi_surjective_and_ghat():
    for mk in (make_fix_t, make_fix_h, make_fix_n):
        ctx = mk()
        out = varpi_M(ctx, dual_action(ctx.comodule_A()))
        assert out["report"].surjective
        assert out["ghat_exists"]
    # the counit itself works as the normalized element for fix-h
    ctx = make_fix_h()
    sharp = ctx.sharp_ring()
    eps_flat = sharp.embed_A(ctx.A.unit)
    assert sharp.eval_at(eps_flat, ctx.x) == [1, 0]


def test_structure_reports():
    sr = structure_report(make_fix_h())
    assert sr.weak and sr.strong and sr.galois
    assert set(sr.clause_tables["fin_prog"].values()) == {True}
    sr = structure_report(make_fix_n())
    assert not sr.galois and not sr.weak and not sr.strong
    # q-hat exists, so the unit maps are all bijective even though weak fails
    assert sr.qhat_exists
    assert all(sr.notes["phi_witnesses"].values())
    sr = structure_report(make_fix_t())
    assert sr.weak and sr.strong and sr.galois and sr.normal_basis is None


def test_structure_report_fin_prog_13_is_one_directional():
    # the projectivity pair holds on the non-Galois instance even though the
    # strong property fails; the table records it without reporting a clash
    sr = structure_report(make_fix_n())
    table = sr.clause_tables["fin_prog"]
    assert table["13"] is True
    assert table["1"] is False and table["14"] is False


def test_flat_plus_galois_sufficiency():
    # on the Galois fixtures flat+galois holds and all the witness maps are
    # bijective (the implication is asserted inside structure_report; here we
    # just confirm it ran on a case where the hypothesis is true)
    sr = structure_report(make_fix_h())
    assert sr.flat_BA and sr.galois
    assert all(sr.notes["psi_witnesses"].values())
