#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace trihopf;
using support::oracle_nullspace;
using support::oracle_rank;

namespace {
const Rational one(1);

// ρ(m) − m⊗1 for the regular coaction of Q[C2] on itself, as an explicit 4×2
// system: basis {1, g}, flat M⊗H index (m, h) = 2m + h.
Matrix<Rational> qc2_coinvariant_system() {
    Matrix<Rational> d(4, 2);
    // ρ(1) = 1⊗1; minus 1⊗1 → 0 column
    // ρ(g) = g⊗g; minus g⊗1
    d.at(3, 1) = one;  // + g⊗g
    d.at(2, 1) = -one; // − g⊗1
    return d;
}
} // namespace

TEST_CASE("kernel of the zero and identity maps") {
    VectorSpace v(2, {"a", "b"});
    auto zero = LinearMap<Rational>::zero(v, v);
    auto id = LinearMap<Rational>::identity(v, one);
    CHECK(kernel(zero, one).dim() == 2);
    CHECK(kernel(id, one).dim() == 0);
}

TEST_CASE("kernel of the coinvariant system of Q[C2] is span{1}") {
    VectorSpace m(2, {"1", "g"});
    VectorSpace mh(4, {"1⊗1", "1⊗g", "g⊗1", "g⊗g"});
    LinearMap<Rational> f(m, mh, qc2_coinvariant_system());

    // oracle: brute-force nullspace of the same 4×2 system, independent path
    std::vector<Vec<Rational>> rows;
    for (int i = 0; i < 4; ++i) rows.push_back(f.matrix.row(i));
    auto oracle = oracle_nullspace(rows, 2, one);
    REQUIRE(oracle.size() == 1);
    CHECK(oracle[0] == Vec<Rational>{one, Rational()});

    Subspace<Rational> k = kernel(f, one);
    CHECK(k.dim() == 1);
    CHECK(k.basis()[0] == oracle[0]);
}

TEST_CASE("kernel invariants on random matrices") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 5);
        int cols = 1 + static_cast<int>(rng() % 5);
        Matrix<Rational> m = support::random_matrix(rng, rows, cols, one);
        LinearMap<Rational> f(VectorSpace::numbered(cols, "d"), VectorSpace::numbered(rows, "c"), m);
        Subspace<Rational> k = kernel(f, one);
        // f ∘ inclusion = 0
        CHECK((f.matrix * k.inclusion().matrix).is_zero());
        // rank-nullity, with the rank from the independent oracle
        std::vector<Vec<Rational>> rvec;
        for (int i = 0; i < rows; ++i) rvec.push_back(m.row(i));
        CHECK(oracle_rank(rvec) + k.dim() == cols);
        // inclusion has full column rank
        CHECK(k.inclusion().matrix.rank() == k.dim());
    }
    Fp onep(1, 5);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 5);
        int cols = 1 + static_cast<int>(rng() % 5);
        Matrix<Fp> m = support::random_matrix(rng, rows, cols, onep);
        LinearMap<Fp> f(VectorSpace::numbered(cols, "d"), VectorSpace::numbered(rows, "c"), m);
        Subspace<Fp> k = kernel(f, onep);
        CHECK((f.matrix * k.inclusion().matrix).is_zero());
        std::vector<Vec<Fp>> rvec;
        for (int i = 0; i < rows; ++i) rvec.push_back(m.row(i));
        CHECK(oracle_rank(rvec) + k.dim() == cols);
    }
}

TEST_CASE("intersection of subspaces") {
    VectorSpace v(2, {"x", "y"});
    Subspace<Rational> whole = Subspace<Rational>::whole(v, one);
    CHECK(intersect<Rational>({whole}, one) == whole);

    // two transversal lines meet in 0
    Subspace<Rational> l1 = Subspace<Rational>::span(v, {{one, one}});
    Subspace<Rational> l2 = Subspace<Rational>::span(v, {{one, -one}});
    CHECK(intersect<Rational>({l1, l2}, one).dim() == 0);

    // mismatched ambient spaces are rejected
    VectorSpace w(3, {"a", "b", "c"});
    Subspace<Rational> other = Subspace<Rational>::whole(w, one);
    CHECK_THROWS_AS(intersect<Rational>({l1, other}, one), std::invalid_argument);
}

TEST_CASE("combined invariants of Q[C2] by direct kernel intersection") {
    // zero bracket: M^A is everything; M^coH from the coinvariant system
    VectorSpace m(2, {"1", "g"});
    VectorSpace mh(4, {"1⊗1", "1⊗g", "g⊗1", "g⊗g"});
    LinearMap<Rational> f(m, mh, qc2_coinvariant_system());
    Subspace<Rational> coinv = kernel(f, one);
    Subspace<Rational> all = Subspace<Rational>::whole(m, one);
    Subspace<Rational> both = intersect<Rational>({all, coinv}, one);
    CHECK(both.dim() == 1);
    CHECK(both == coinv);
}

TEST_CASE("quotient by zero and by everything") {
    VectorSpace v(3, {"a", "b", "c"});
    QuotientSpace<Rational> q0(v, Subspace<Rational>::zero(v), one);
    CHECK(q0.dim() == 3);
    CHECK(q0.projection().matrix == Matrix<Rational>::identity(3, one));
    QuotientSpace<Rational> qall(v, Subspace<Rational>::whole(v, one), one);
    CHECK(qall.dim() == 0);
}

TEST_CASE("balanced-tensor relations of Q[C2] over itself leave a 2-dim quotient") {
    // ambient A⊗M of dim 4: (a, m) ↦ 2a+m; relations (a·b)⊗m − a⊗(b·m)
    // enumerated over all basis triples, with b running over {1, g}
    VectorSpace amb(4, {"1⊗1", "1⊗g", "g⊗1", "g⊗g"});
    auto mulc2 = [](int i, int j) { return (i + j) % 2; };
    std::vector<Vec<Rational>> spanners;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int m = 0; m < 2; ++m) {
                Vec<Rational> r(4);
                r[2 * mulc2(a, b) + m] += one;
                r[2 * a + mulc2(b, m)] -= one;
                if (!vec_is_zero(r)) spanners.push_back(std::move(r));
            }
    // oracle rank of the spanner set
    CHECK(oracle_rank(spanners) == 2);
    Subspace<Rational> rel = Subspace<Rational>::span(amb, spanners);
    QuotientSpace<Rational> q(amb, rel, one);
    CHECK(q.dim() == 2);
}

TEST_CASE("quotient invariants on random relation sets") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 2 + static_cast<int>(rng() % 5);
        int nrel = static_cast<int>(rng() % (dim + 1));
        VectorSpace v = VectorSpace::numbered(dim, "e");
        std::vector<Vec<Rational>> vs;
        for (int r = 0; r < nrel; ++r) vs.push_back(support::random_vec(rng, dim, one));
        Subspace<Rational> rel = Subspace<Rational>::span(v, vs);
        QuotientSpace<Rational> q(v, rel, one);
        CHECK(q.dim() == dim - rel.dim());
        // projection ∘ section = id
        CHECK(q.projection().matrix * q.section().matrix ==
              Matrix<Rational>::identity(q.dim(), one));
        // projection kills the relations
        CHECK((q.projection().matrix * rel.inclusion().matrix).is_zero());
        // section picks preimages with zero pivot coordinates
        for (int c = 0; c < q.dim(); ++c) {
            Vec<Rational> s = q.section().matrix.column(c);
            for (int p : rel.pivots()) CHECK(s[p].is_zero());
        }
    }
}

TEST_CASE("subspace bases are deterministic canonical echelon forms") {
    VectorSpace v(3, {"a", "b", "c"});
    std::vector<Vec<Rational>> gens1 = {{one, one, Rational()}, {Rational(), one, one}};
    std::vector<Vec<Rational>> gens2 = {{one, Rational(2), one},  // sum of the two
                                        {one, one, Rational()}};
    Subspace<Rational> s1 = Subspace<Rational>::span(v, gens1);
    Subspace<Rational> s2 = Subspace<Rational>::span(v, gens2);
    CHECK(s1 == s2);
    CHECK(s1.basis() == s2.basis());
    // rebuilding from its own basis is the identity
    CHECK(Subspace<Rational>::span(v, s1.basis()) == s1);
}

TEST_CASE("solve_linear_maps on trivial constraint sets") {
    VectorSpace v(2, {"a", "b"});
    // no constraints → all 2×2 maps
    auto all = solve_linear_maps<Rational>(v, v, {}, one);
    CHECK(all.size() == 4);
    // X = 0 forced
    auto none = solve_linear_maps<Rational>(
        v, v, {[](const Matrix<Rational>& x) { return x; }}, one);
    CHECK(none.empty());
}

TEST_CASE("colinear endomorphisms of Q[C2] with the regular coaction are diagonal") {
    // constraint (f⊗id)∘ρ = ρ∘f with ρ = Δ of k[C2]; solved entrywise it
    // forces the off-diagonal entries to vanish
    VectorSpace m(2, {"1", "g"});
    Matrix<Rational> rho(4, 2);
    rho.at(0, 0) = one; // Δ(1) = 1⊗1
    rho.at(3, 1) = one; // Δ(g) = g⊗g
    auto constraint = [&rho](const Matrix<Rational>& x) {
        // ρ∘x − (x⊗id)∘ρ
        Matrix<Rational> lhs = rho * x;
        Matrix<Rational> rhs(4, 2);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int a = 0; a < 2; ++a) {
                    const Rational& rv = rho.at(k * 2 + a, j);
                    if (rv.is_zero()) continue;
                    for (int i = 0; i < 2; ++i) rhs.at(i * 2 + a, j) += x.at(i, k) * rv;
                }
        return lhs - rhs;
    };
    auto basis = solve_linear_maps<Rational>(m, m, {constraint}, one);
    REQUIRE(basis.size() == 2);
    for (const auto& f : basis) {
        CHECK(f.matrix.at(0, 1).is_zero());
        CHECK(f.matrix.at(1, 0).is_zero());
    }
}

TEST_CASE("solve_linear_maps yields identical bases on repeated runs") {
    VectorSpace v(2, {"a", "b"});
    auto c = [](const Matrix<Rational>& x) {
        Matrix<Rational> out(1, 1);
        out.at(0, 0) = x.at(0, 0) - x.at(1, 1);
        return out;
    };
    auto b1 = solve_linear_maps<Rational>(v, v, {c}, one);
    auto b2 = solve_linear_maps<Rational>(v, v, {c}, one);
    REQUIRE(b1.size() == b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) CHECK(b1[i].matrix == b2[i].matrix);
}

TEST_CASE("matrix inverse and solve") {
    std::mt19937_64 rng(7);
    Matrix<Rational> m(3, 3);
    do {
        m = support::random_matrix(rng, 3, 3, one);
    } while (m.rank() < 3);
    auto inv = m.inverse(one);
    REQUIRE(inv.has_value());
    CHECK(*inv * m == Matrix<Rational>::identity(3, one));
    Vec<Rational> b = support::random_vec(rng, 3, one);
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
}
