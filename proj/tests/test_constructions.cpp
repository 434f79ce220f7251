#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace trihopf;

namespace {
const Rational one(1);
const Fp one3(1, 3);
}

TEST_CASE("identity phi on the regular Q[C2] is a colinear algebra map") {
    auto a = support::qc2(true);
    PhiMap<Rational> phi = identity_phi(a);
    CHECK(phi.is_algebra_map);
    CHECK(phi.map.matrix == Matrix<Rational>::identity(2, one));
}

TEST_CASE("phi validation refuses broken candidates") {
    auto a = support::qc2(true);
    // phi(1) != 1
    CHECK_THROWS_AS(make_phi(a, Matrix<Rational>(2, 2)), refusal_error);
    // identity is not colinear for the trivial coaction
    auto at = support::qc2(false);
    CHECK_THROWS_AS(make_phi(at, Matrix<Rational>::identity(2, one)), refusal_error);
    // image outside the bracket center
    ComodulePtr<Fp> na = std::make_shared<ComodulePoissonTriLieAlgebra<Fp>>(nambu_graded(3));
    Matrix<Fp> bad(27, 3);
    bad.at(0, 0) = one3;                            // φ(1) = 1
    bad.at(support::nambu_index({1, 0, 0}, 3), 1) = one3; // φ(g) = x ∉ A^A
    bad.at(0, 2) = one3;
    CHECK_THROWS_AS(make_phi(na, bad), refusal_error);
}

TEST_CASE("the counit-unit phi on graded nambu is colinear but not an algebra map") {
    ComodulePtr<Fp> na = std::make_shared<ComodulePoissonTriLieAlgebra<Fp>>(nambu_graded(3));
    Matrix<Fp> m(27, 3);
    m.at(0, 0) = one3; // φ(1) = 1, φ(g) = φ(g²) = 0
    PhiMap<Fp> phi = make_phi(na, m);
    CHECK(!phi.is_algebra_map);
}

TEST_CASE("N⊗H has the product dimension and passes every checker") {
    auto a = support::qc2(true);
    auto n = self_module<Rational>(a);
    auto m = tensor_with_h(a, n.space, n.a_action, n.tri_action.action);
    CHECK(m.space.dim == 4);
    CHECK(check_hopf_module(m).passed());
    CHECK(check_module_action(a->base.algebra, m.space, m.a_action).passed());
    CHECK(check_comodule(m.coaction).passed());
    CHECK(check_poisson_module(m.as_poisson_module()).passed());
    CHECK(check_trilie_module(m.tri_action, a->base.bracket).passed());
}

TEST_CASE("a trivial pair action stays trivial on N⊗H") {
    auto a = support::qc2(true);
    auto n = self_module<Rational>(a); // zero bracket ⇒ zero pair action
    auto m = tensor_with_h(a, n.space, n.a_action, n.tri_action.action);
    CHECK(m.tri_action.action.entries().empty());
}

TEST_CASE("the module variant of N⊗H refuses a noncommutative H") {
    auto s3 = std::make_shared<const HopfStructure<Rational>>(support::s3_group_algebra());
    auto alg = std::make_shared<ComodulePoissonTriLieAlgebra<Rational>>();
    alg->base.algebra = s3->algebra;
    alg->base.bracket = TriBracket<Rational>::zero(s3->space());
    alg->hopf = s3;
    alg->coaction = Coaction<Rational>::regular(s3);
    ComodulePtr<Rational> a = alg;
    auto n = self_module<Rational>(a);
    CHECK_THROWS_AS(tensor_with_h(a, n.space, n.a_action, n.tri_action.action), refusal_error);
    // the comodule variant is still available
    auto com = tensor_with_h_comodule(a, n.tri_action);
    CHECK(com.space.dim == 36);
    CHECK(check_comodule(com.coaction).passed());
}

TEST_CASE("gamma and gamma-prime are mutually inverse on complete hom bases") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    auto nh = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    const HopfStructure<Rational>& h = *a->hopf;

    // pair-action linear maps M → N (zero bracket: all maps), dim 4
    std::vector<std::function<Matrix<Rational>(const Matrix<Rational>&)>> cons_plain;
    cons_plain.push_back(trilie_linearity_constraint(m.tri_action.action, m.tri_action.action, 2,
                                                     2, 2));
    auto hom_plain = solve_linear_maps(m.space, m.space, cons_plain, one);
    CHECK(hom_plain.size() == 4);

    // pair-action linear and colinear maps M → N⊗H, dim 4 as well
    std::vector<std::function<Matrix<Rational>(const Matrix<Rational>&)>> cons_h;
    cons_h.push_back(
        trilie_linearity_constraint(m.tri_action.action, nh.tri_action.action, 2, 2, 4));
    cons_h.push_back(colinearity_constraint(m.coaction.rho.matrix, nh.coaction.rho.matrix, 2));
    auto hom_h = solve_linear_maps(m.space, nh.space, cons_h, one);
    CHECK(hom_h.size() == 4);

    // γ′∘γ = id on the colinear hom space
    for (const auto& f : hom_h) {
        LinearMap<Rational> g = gamma_of(h, m.space, f);
        LinearMap<Rational> back = gamma_prime_of(m.coaction, g);
        CHECK(back.matrix == f.matrix);
        // the image of γ stays pair-action linear
        CHECK(!trilie_linearity_violation(g.matrix, m.tri_action.action, m.tri_action.action,
                                          a->space(), m.space, m.space));
    }
    // γ∘γ′ = id on the plain hom space
    for (const auto& g : hom_plain) {
        LinearMap<Rational> f = gamma_prime_of(m.coaction, g);
        CHECK(!colinearity_violation(f.matrix, m.coaction.rho.matrix, nh.coaction.rho.matrix, 2,
                                     m.space, nh.space, h.space()));
        LinearMap<Rational> back = gamma_of(h, m.space, f);
        CHECK(back.matrix == g.matrix);
    }

    // γ′(id) is the coaction itself
    LinearMap<Rational> idm = LinearMap<Rational>::identity(m.space, one);
    CHECK(gamma_prime_of(m.coaction, idm).matrix == m.coaction.rho.matrix);
}

TEST_CASE("the A-linear variant of the hom transport has dimension two") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    auto nh = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    std::vector<std::function<Matrix<Rational>(const Matrix<Rational>&)>> cons;
    cons.push_back(a_linearity_constraint(m.a_action, m.a_action, 2, 2, 2));
    auto hom_a = solve_linear_maps(m.space, m.space, cons, one);
    CHECK(hom_a.size() == 2); // right multiplications
    std::vector<std::function<Matrix<Rational>(const Matrix<Rational>&)>> cons_h;
    cons_h.push_back(a_linearity_constraint(m.a_action, nh.a_action, 2, 2, 4));
    cons_h.push_back(colinearity_constraint(m.coaction.rho.matrix, nh.coaction.rho.matrix, 2));
    auto hom_ah = solve_linear_maps(m.space, nh.space, cons_h, one);
    CHECK(hom_ah.size() == 2);
    for (const auto& f : hom_ah) {
        LinearMap<Rational> g = gamma_of(*a->hopf, m.space, f);
        CHECK(gamma_prime_of(m.coaction, g).matrix == f.matrix);
    }
}

TEST_CASE("lambda on regular Q[C2] with phi = id") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    PhiMap<Rational> phi = identity_phi(a);
    LambdaResult<Rational> lam = lambda_section(m, phi);
    CHECK(lam.report.passed());

    // frozen matrix: λ(1⊗1) = 1, λ(1⊗g) = g, λ(g⊗1) = 1, λ(g⊗g) = g
    Matrix<Rational> want(2, 4);
    want.at(0, 0) = one;
    want.at(1, 1) = one;
    want.at(0, 2) = one;
    want.at(1, 3) = one;
    CHECK(lam.lambda.matrix == want);

    // λ(m⊗1) = p_M(m)
    ProjectionResult<Rational> pr = p_projection(m, phi);
    for (int k = 0; k < 2; ++k)
        CHECK(lam.lambda.matrix.column(k * 2 + 0) == pr.p.matrix.column(k));

    // coinvariant m: λ(m⊗h) = φ(h)·m, here with m = 1
    for (int al = 0; al < 2; ++al) {
        Vec<Rational> expect(2);
        expect[al] = one; // φ(h)·1 = h for φ = id over A = H
        CHECK(lam.lambda.matrix.column(0 * 2 + al) == expect);
    }
}

TEST_CASE("lambda refuses when neither branch hypothesis holds") {
    // noncommutative H = k[S3] and a phi that is not an algebra map:
    // φ(e) = e, φ(every other group element) = 0
    auto s3 = std::make_shared<const HopfStructure<Rational>>(support::s3_group_algebra());
    auto alg = std::make_shared<ComodulePoissonTriLieAlgebra<Rational>>();
    alg->base.algebra = s3->algebra;
    alg->base.bracket = TriBracket<Rational>::zero(s3->space());
    alg->hopf = s3;
    alg->coaction = Coaction<Rational>::regular(s3);
    ComodulePtr<Rational> a = alg;
    Matrix<Rational> phim(6, 6);
    phim.at(0, 0) = one;
    PhiMap<Rational> phi = make_phi(a, phim);
    CHECK(!phi.is_algebra_map);
    auto m = self_module<Rational>(a);
    CHECK_THROWS_AS(lambda_section(m, phi), refusal_error);
}

TEST_CASE("p on regular Q[C2] is the rank-one projection onto the coinvariants") {
    auto a = support::qc2(true);
    auto m = self_module<Rational>(a);
    PhiMap<Rational> phi = identity_phi(a);
    ProjectionResult<Rational> pr = p_projection(m, phi);
    CHECK(pr.report.passed());
    Matrix<Rational> want(2, 2);
    want.at(0, 0) = one;
    want.at(0, 1) = one; // p(g) = S⁻¹(g)·g = 1
    CHECK(pr.p.matrix == want);
    CHECK(pr.p.matrix.rank() == 1);
    CHECK(pr.p.matrix * pr.p.matrix == pr.p.matrix);
    CHECK(image(pr.p) == pr.coinv);
    // p fixes the coinvariants
    CHECK(pr.p.matrix * pr.coinv.inclusion().matrix == pr.coinv.inclusion().matrix);
}

TEST_CASE("projection identities hold on both Q[C2] modules") {
    auto a = support::qc2(true);
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    CHECK(check_prime_action_identities(m, phi).passed());
    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    CHECK(check_prime_action_identities(mt, phi).passed());
}

TEST_CASE("the unit pair acts trivially under the projected action") {
    auto a = support::qc2(true);
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    ProjectionResult<Rational> pr = p_projection(m, phi);
    SparseTensor<Rational> prime = prime_action_tensor(m, pr.p);
    Vec<Rational> unit = a->base.algebra.unit;
    for (int z = 0; z < 2; ++z)
        for (int k = 0; k < 2; ++k) {
            Vec<Rational> ez(2), ek(2);
            ez[z] = one;
            ek[k] = one;
            CHECK(vec_is_zero(contract3(prime, unit, ez, ek)));
        }
}

TEST_CASE("the graded product algebra is valid and its projected action is nontrivial") {
    GradedProductExample<Fp> ex = group_graded_product(nambu_truncated(3), 3);
    CHECK(ex.algebra->space().dim == 81);
    CHECK(check_skew_symmetry(ex.algebra->base.bracket).passed());
    CHECK(check_poisson_trilie(ex.algebra->base).passed());
    CHECK(check_comodule(ex.algebra->coaction).passed());
    CHECK(check_comodule_poisson_algebra(*ex.algebra).passed());

    PhiMap<Fp> phi = make_phi(ex.algebra, ex.phi);
    CHECK(phi.is_algebra_map);

    auto m = self_module<Fp>(ex.algebra);
    ProjectionResult<Fp> pr = p_projection(m, phi);
    CHECK(pr.report.passed());
    Subspace<Fp> coin = coinvariants(m.coaction, one3);
    CHECK(coin.dim() == 27);
    auto w = prime_nontriviality_witness(m, pr.p, coin);
    REQUIRE(w.has_value());
    CHECK(w->rhs == "0");
    CHECK(w->lhs != "0");
}
