#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace trihopf;
using support::oracle_rank;

namespace {
const Rational one(1);
const Fp one3(1, 3);

PoissonTriLieHopfModule<Rational> zero_module(ComodulePtr<Rational> a) {
    PoissonTriLieHopfModule<Rational> m;
    m.algebra = a;
    m.space = VectorSpace(0, {});
    m.a_action = SparseTensor<Rational>({a->space().dim, 0}, 0);
    m.tri_action = TriLieModuleAction<Rational>::zero(a->space(), m.space);
    m.coaction = Coaction<Rational>::trivial(m.space, a->hopf);
    return m;
}
} // namespace

TEST_CASE("tensoring over the scalars multiplies dimensions") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    Subspace<Rational> scalars = scalar_subalgebra(*a);
    Subspace<Rational> n = Subspace<Rational>::whole(m.space, one);
    BModuleData<Rational> bmod = restrict_module(m, scalars, n);
    BalancedTensor<Rational> bt = tensor_over_b(a, bmod);
    CHECK(bt.quotient.dim() == 4);
    CHECK(check_hopf_module(bt.module).passed());
}

TEST_CASE("A tensored over itself collapses to A") {
    // trivial coaction and zero bracket make B = A^{AcoH} the whole algebra
    auto a = support::qc2(false);
    auto m = self_module<Rational>(a);
    InvariantSpaces<Rational> ia = algebra_invariant_spaces(*a);
    CHECK(ia.combined.dim() == 2);
    BModuleData<Rational> bmod = restrict_module(m, ia.combined, ia.combined);
    BalancedTensor<Rational> bt = tensor_over_b(a, bmod);
    CHECK(bt.quotient.dim() == 2);
    CHECK(check_hopf_module(bt.module).passed());
    // the balanced relations of the full algebra have rank 2 inside A⊗A,
    // verified against the independent elimination oracle
    CHECK(bt.quotient.relations().dim() == 2);
    std::vector<Vec<Rational>> spanners;
    auto mulc2 = [](int i, int j) { return (i + j) % 2; };
    for (int x = 0; x < 2; ++x)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 2; ++k) {
                Vec<Rational> r(4);
                r[mulc2(x, b) * 2 + k] += one;
                r[x * 2 + mulc2(b, k)] -= one;
                if (!vec_is_zero(r)) spanners.push_back(std::move(r));
            }
    CHECK(oracle_rank(spanners) == 2);
}

TEST_CASE("the balanced quotient of the invariants has dimension two") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    InvariantSpaces<Rational> ia = algebra_invariant_spaces(*a);
    InvariantSpaces<Rational> im = invariant_spaces(m);
    CHECK(ia.combined.dim() == 1);
    CHECK(im.combined.dim() == 1);
    BalancedTensor<Rational> bt =
        tensor_over_b(a, restrict_module(m, ia.combined, im.combined));
    CHECK(bt.quotient.dim() == 2);
}

TEST_CASE("a coaction that cannot descend is refused with the violated relation") {
    // B = span{g} is not a subcomodule-compatible choice for the regular
    // coaction: the relation (a·g)⊗n − a⊗(g·n) is not stable under ρ
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    Vec<Rational> g(2);
    g[1] = one;
    Subspace<Rational> span_g = Subspace<Rational>::span(a->space(), {g});
    BModuleData<Rational> bmod =
        restrict_module(m, span_g, Subspace<Rational>::whole(m.space, one));
    CHECK_THROWS_AS(tensor_over_b(a, bmod), refusal_error);
}

TEST_CASE("alpha on regular Q[C2] is the identity in the canonical bases") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    InvariantSpaces<Rational> ia = algebra_invariant_spaces(*a);
    InvariantSpaces<Rational> im = invariant_spaces(m);
    BalancedTensor<Rational> bt =
        tensor_over_b(a, restrict_module(m, ia.combined, im.combined));
    AlphaResult<Rational> ar = alpha_map(m, bt, im.combined);
    CHECK(ar.report.passed());
    CHECK(ar.alpha.map.matrix == Matrix<Rational>::identity(2, one));
    CHECK(ar.alpha.verified.size() == 3);

    // α(1⊗n) = n for invariant n
    for (int k = 0; k < im.combined.dim(); ++k) {
        Vec<Rational> amb(2 * im.combined.dim());
        amb[0 * im.combined.dim() + k] = one; // 1⊗n_k (unit is e_0)
        Vec<Rational> q = bt.quotient.projection().apply(amb);
        CHECK(ar.alpha.map.apply(q) == im.combined.basis()[k]);
    }
}

TEST_CASE("beta inverts alpha on the regular Q[C2] module") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    PhiMap<Rational> phi = identity_phi(a);
    InvariantSpaces<Rational> ia = algebra_invariant_spaces(*a);
    InvariantSpaces<Rational> im = invariant_spaces(m);
    BalancedTensor<Rational> bt =
        tensor_over_b(a, restrict_module(m, ia.combined, im.combined));
    AlphaResult<Rational> ar = alpha_map(m, bt, im.combined);
    ProjectionResult<Rational> pr = p_projection(m, phi);
    LinearMap<Rational> beta = beta_matrix(m, phi, pr.p, bt, im.combined);
    auto inv = ar.alpha.map.matrix.inverse(one);
    REQUIRE(inv.has_value());
    CHECK(beta.matrix == *inv);
    // β(1) = 1⊗1 (the coinvariant case m₍₁₎ = 1)
    Vec<Rational> unit(2);
    unit[0] = one;
    Vec<Rational> expect(2);
    expect[0] = one;
    CHECK(beta.apply(unit) == expect);
}

TEST_CASE("the fundamental pipeline verifies both Q[C2] modules") {
    auto a = support::qc2(true);
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    FundamentalResult<Rational> r1 = verify_fundamental_theorem(m, phi);
    CHECK(r1.report.passed());
    CHECK(r1.dim_m == 2);
    CHECK(r1.dim_acoh == 1);
    CHECK(r1.dim_b == 1);
    CHECK(r1.dim_balanced == 2);

    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    FundamentalResult<Rational> r2 = verify_fundamental_theorem(mt, phi);
    CHECK(r2.report.passed());
    CHECK(r2.dim_m == 4);
    CHECK(r2.dim_acoh == 2);
    CHECK(r2.dim_b == 1);
    CHECK(r2.dim_m == a->space().dim * (r2.dim_acoh / r2.dim_b));
}

TEST_CASE("a zero module passes the pipeline vacuously") {
    auto a = support::qc2(true);
    PhiMap<Rational> phi = identity_phi(a);
    FundamentalResult<Rational> r = verify_fundamental_theorem(zero_module(a), phi);
    CHECK(r.report.passed());
    CHECK(r.dim_m == 0);
    CHECK(r.dim_acoh == 0);
}

TEST_CASE("the graded product example is refused with a re-evaluable witness") {
    GradedProductExample<Fp> ex = group_graded_product(nambu_truncated(3), 3);
    PhiMap<Fp> phi = make_phi(ex.algebra, ex.phi);
    auto m = self_module<Fp>(ex.algebra);
    bool refused = false;
    try {
        verify_fundamental_theorem(m, phi);
    } catch (const refusal_error& e) {
        refused = true;
        CHECK(e.detail().name == "prime_trivial_on_McoH");
        REQUIRE(e.detail().witness.has_value());
        CHECK(e.detail().witness->lhs != "0");
        // independent re-evaluation through the projection and the raw action
        ProjectionResult<Fp> pr = p_projection(m, phi);
        Subspace<Fp> coin = coinvariants(m.coaction, one3);
        auto w = prime_nontriviality_witness(m, pr.p, coin);
        REQUIRE(w.has_value());
        CHECK(w->tuple == e.detail().witness->tuple);
        CHECK(w->lhs == e.detail().witness->lhs);
    }
    CHECK(refused);
}

TEST_CASE("a non-algebra phi is refused by the pipeline") {
    ComodulePtr<Fp> na = std::make_shared<ComodulePoissonTriLieAlgebra<Fp>>(nambu_graded(3));
    Matrix<Fp> m(27, 3);
    m.at(0, 0) = one3;
    PhiMap<Fp> phi = make_phi(na, m);
    CHECK(!phi.is_algebra_map);
    auto mod = self_module<Fp>(na);
    CHECK_THROWS_AS(verify_fundamental_theorem(mod, phi), refusal_error);
}

TEST_CASE("adjunction suite on both Q[C2] modules") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    AdjunctionResult<Rational> r1 = run_adjunction_suite(m);
    CHECK(r1.report.passed());
    CHECK(r1.hom_module_dim == 1);
    CHECK(r1.hom_b_dim == 1);

    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    AdjunctionResult<Rational> r2 = run_adjunction_suite(mt);
    CHECK(r2.report.passed());
    CHECK(r2.hom_module_dim == r2.hom_b_dim);
}

TEST_CASE("adjunction hom-spaces vanish for the zero module") {
    auto a = support::qc2(true);
    AdjunctionResult<Rational> r = run_adjunction_suite(zero_module(a));
    CHECK(r.report.passed());
    CHECK(r.hom_module_dim == 0);
    CHECK(r.hom_b_dim == 0);
}

TEST_CASE("freeness of the tensor module: rank two with a verified basis") {
    auto a = support::qc2(true);
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    FreenessResult<Rational> fr = freeness_report(mt, phi);
    CHECK(fr.report.passed());
    CHECK(fr.rank == 2);
    REQUIRE(fr.basis.size() == 2);
    // the claimed basis really is A-linearly independent and spanning: the
    // columns a_i·u_t, checked by the independent rank oracle
    std::vector<Vec<Rational>> cols;
    for (int i = 0; i < 2; ++i) {
        Vec<Rational> ei(2);
        ei[i] = one;
        for (const auto& u : fr.basis) cols.push_back(mt.act(ei, u));
    }
    CHECK(oracle_rank(cols) == 4);

    // M = A itself has rank one with basis {1}
    FreenessResult<Rational> fr1 = freeness_report(m, phi);
    CHECK(fr1.rank == 1);
    CHECK(fr1.report.passed());
    REQUIRE(fr1.basis.size() == 1);
    Vec<Rational> unit(2);
    unit[0] = one;
    CHECK(fr1.basis[0] == unit);

    // the zero module is free of rank zero
    FreenessResult<Rational> fr0 = freeness_report(zero_module(a), phi);
    CHECK(fr0.rank == 0);
    CHECK(fr0.report.passed());
}

TEST_CASE("the pipeline also verifies over a prime field") {
    auto a = support::group_comodule_algebra<Fp>(3, one3, true);
    PhiMap<Fp> phi = identity_phi(a);
    auto m = self_module<Fp>(a);
    FundamentalResult<Fp> r = verify_fundamental_theorem(m, phi);
    CHECK(r.report.passed());
    CHECK(r.dim_m == 3);
    CHECK(r.dim_acoh == 1);
    CHECK(r.dim_b == 1);
    AdjunctionResult<Fp> adj = run_adjunction_suite(m);
    CHECK(adj.report.passed());
    CHECK(adj.hom_module_dim == 1);
    FreenessResult<Fp> fr = freeness_report(m, phi);
    CHECK(fr.rank == 1);
    CHECK(fr.report.passed());
}
