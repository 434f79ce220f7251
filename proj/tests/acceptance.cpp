// Acceptance suite: one pass/fail line per criterion. Exercises the library
// end to end and the command-line tool against the bundled corpus.
//
// usage: acceptance --cli <path-to-trihopf> --data <path-to-data-dir>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "test_support.hpp"

using namespace trihopf;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
std::string g_data;
int g_failures = 0;

#define REQUIRE_OR_FAIL(cond, msg)                                             \
    do {                                                                       \
        if (!(cond)) throw std::runtime_error(std::string("FAILED: ") + msg);  \
    } while (0)

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    auto t0 = Clock::now();
    try {
        body();
        double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[PASS] criterion %2d: %s (%.2fs)\n", number, title.c_str(), dt);
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("[FAIL] criterion %2d: %s — %s\n", number, title.c_str(), e.what());
    }
    std::fflush(stdout);
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE_OR_FAIL(pipe != nullptr, "popen failed");
    CliResult res;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE_OR_FAIL(f.good(), "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int label_index(const VectorSpace& s, const std::string& label) {
    for (int i = 0; i < s.dim; ++i)
        if (s.labels[i] == label) return i;
    throw std::runtime_error("unknown basis label '" + label + "'");
}

const Fp one3(1, 3);
const Rational oneq(1);

// shared fixtures
ComodulePoissonTriLieAlgebra<Fp> g_nambu = nambu_graded(3);

ComodulePtr<Rational> qc2_regular() { return support::qc2(true); }

} // namespace

// --- criterion 1 --------------------------------------------------------------

static void criterion1() {
    auto t0 = Clock::now();
    REQUIRE_OR_FAIL(check_skew_symmetry(g_nambu.base.bracket).passed(), "skew symmetry");
    REQUIRE_OR_FAIL(check_filippov(g_nambu.base.bracket).passed(),
                    "fundamental identity over all 27^5 basis 5-tuples");
    REQUIRE_OR_FAIL(check_poisson_trilie(g_nambu.base).passed(), "derivation rule");
    REQUIRE_OR_FAIL(check_comodule_poisson_algebra(g_nambu).passed(), "coaction compatibility");
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    REQUIRE_OR_FAIL(dt <= 300.0, "runtime exceeded five minutes");
    // the same suites through the CLI on the bundled file
    CliResult r = run_cli("check " + g_data + "/nambu27.json");
    REQUIRE_OR_FAIL(r.exit_code == 0, "CLI check on nambu27.json should exit 0");
}

// --- criterion 2 --------------------------------------------------------------

namespace {

// independent per-tuple evaluators used to re-check reported witnesses
Vec<Fp> eval_bracket(const TriBracket<Fp>& b, int x, int y, int z) {
    Vec<Fp> ex(27), ey(27), ez(27);
    ex[x] = one3;
    ey[y] = one3;
    ez[z] = one3;
    return b.eval(ex, ey, ez);
}

bool reevaluate_witness(const ComodulePoissonTriLieAlgebra<Fp>& alg, const CheckResult& c) {
    const TriBracket<Fp>& b = alg.base.bracket;
    const VectorSpace& sp = alg.space();
    auto idx = [&](const std::string& l) { return label_index(sp, l); };
    if (c.name == "skew_symmetry") {
        // tuple: x, y, z, "swap→(...)"; it suffices that some transposition of
        // the reported triple changes the value inconsistently
        int x = idx(c.witness->tuple[0]), y = idx(c.witness->tuple[1]),
            z = idx(c.witness->tuple[2]);
        Vec<Fp> v = eval_bracket(b, x, y, z);
        Vec<Fp> sums[3] = {vec_add(v, eval_bracket(b, y, x, z)),
                           vec_add(v, eval_bracket(b, x, z, y)),
                           vec_add(v, eval_bracket(b, z, y, x))};
        return !vec_is_zero(sums[0]) || !vec_is_zero(sums[1]) || !vec_is_zero(sums[2]);
    }
    if (c.name == "fundamental_identity") {
        int x = idx(c.witness->tuple[0]), y = idx(c.witness->tuple[1]),
            z = idx(c.witness->tuple[2]), u = idx(c.witness->tuple[3]),
            v = idx(c.witness->tuple[4]);
        Vec<Fp> eu(27), ev(27);
        eu[u] = one3;
        ev[v] = one3;
        Vec<Fp> lhs = b.eval(eval_bracket(b, x, y, z), eu, ev);
        Vec<Fp> ey(27), ez(27), ex(27);
        ex[x] = one3;
        ey[y] = one3;
        ez[z] = one3;
        Vec<Fp> rhs = b.eval(eval_bracket(b, x, u, v), ey, ez);
        rhs = vec_add(rhs, b.eval(eval_bracket(b, y, u, v), ez, ex));
        rhs = vec_add(rhs, b.eval(eval_bracket(b, z, u, v), ex, ey));
        return lhs != rhs;
    }
    if (c.name == "leibniz_rule") {
        int x = idx(c.witness->tuple[0]), y = idx(c.witness->tuple[1]),
            u = idx(c.witness->tuple[2]), v = idx(c.witness->tuple[3]);
        Vec<Fp> ex(27), ey(27), eu(27), ev(27);
        ex[x] = one3;
        ey[y] = one3;
        eu[u] = one3;
        ev[v] = one3;
        Vec<Fp> lhs = b.eval(ex, ey, alg.base.algebra.mul_vec(eu, ev));
        Vec<Fp> rhs = vec_add(alg.base.algebra.mul_vec(eu, b.eval(ex, ey, ev)),
                              alg.base.algebra.mul_vec(b.eval(ex, ey, eu), ev));
        return lhs != rhs;
    }
    if (c.name == "coaction_bracket" || c.name == "coaction_bracket_reorder_23" ||
        c.name == "coaction_bracket_reorder_12") {
        // both sides were rendered; the rendered values must disagree and the
        // left side must re-render from ρ({x,y,z})
        int x = idx(c.witness->tuple[0]), y = idx(c.witness->tuple[1]),
            z = idx(c.witness->tuple[2]);
        Vec<Fp> br = eval_bracket(b, x, y, z);
        Vec<Fp> lhs = alg.coaction.rho.apply(br);
        VectorSpace ah = tensor_space(sp, alg.hopf->space());
        return render_vec(lhs, ah) == c.witness->lhs && c.witness->lhs != c.witness->rhs;
    }
    return false;
}

} // namespace

static void criterion2() {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        int i = static_cast<int>(rng() % 27), j = static_cast<int>(rng() % 27),
            k = static_cast<int>(rng() % 27), l = static_cast<int>(rng() % 27);
        ComodulePoissonTriLieAlgebra<Fp> mutant = g_nambu;
        SparseTensor<Fp> bad = mutant.base.bracket.bracket;
        std::array<int, 3> in{i, j, k};
        bad.add_entry(std::span<const int>(in), l, one3);
        bad.normalize();
        mutant.base.bracket = TriBracket<Fp>(mutant.space(), bad);

        CheckReport merged;
        merged.merge(check_skew_symmetry(mutant.base.bracket));
        merged.merge(check_filippov(mutant.base.bracket));
        merged.merge(check_poisson_trilie(mutant.base));
        merged.merge(check_comodule_poisson_algebra(mutant));
        const CheckResult* failing = nullptr;
        for (const auto& c : merged.checks())
            if (c.verdict == Verdict::fail &&
                (c.name == "skew_symmetry" || c.name == "fundamental_identity" ||
                 c.name == "leibniz_rule" || c.name.rfind("coaction_bracket", 0) == 0)) {
                failing = &c;
                break;
            }
        REQUIRE_OR_FAIL(failing != nullptr,
                        "perturbation (" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + "→" + std::to_string(l) +
                            ") left all four identity families green");
        REQUIRE_OR_FAIL(failing->witness.has_value(), "failure carries no witness");
        REQUIRE_OR_FAIL(failing->witness->lhs != failing->witness->rhs,
                        "witness sides render equal");
        REQUIRE_OR_FAIL(reevaluate_witness(mutant, *failing),
                        "witness for " + failing->name + " does not re-evaluate to an inequality");
    }
}

// --- criterion 3 --------------------------------------------------------------

static void criterion3() {
    InvariantSpaces<Fp> ia = algebra_invariant_spaces(g_nambu);

    // independent oracle for A^A: all three partials of a central element
    // vanish; assemble the full system from the oracle bracket and solve it
    // with the oracle elimination
    std::vector<Vec<Fp>> rows;
    for (int i = 0; i < 27; ++i)
        for (int j = i + 1; j < 27; ++j) {
            std::vector<Vec<Fp>> block(27, Vec<Fp>(27));
            for (int k = 0; k < 27; ++k) {
                auto val = support::oracle_nambu_bracket(support::nambu_mono(k, 3),
                                                         support::nambu_mono(i, 3),
                                                         support::nambu_mono(j, 3), 3);
                for (const auto& [m, c] : val)
                    block[support::nambu_index(m, 3)][k] = Fp(static_cast<std::uint64_t>(c), 3);
            }
            for (auto& r : block)
                if (!vec_is_zero(r)) rows.push_back(std::move(r));
        }
    auto center_oracle = support::oracle_nullspace(rows, 27, one3);
    REQUIRE_OR_FAIL(center_oracle.size() == 1, "oracle center dimension");
    REQUIRE_OR_FAIL(ia.lie_invariants.dim() == 1, "A^A dimension");
    REQUIRE_OR_FAIL(ia.lie_invariants.basis()[0] == center_oracle[0], "A^A basis");

    // independent oracle for A^coH: monomials of degree ≡ 0 (mod 3)
    int oracle_coinv = 0;
    for (int i = 0; i < 27; ++i) {
        auto m = support::nambu_mono(i, 3);
        if ((m.a + m.b + m.c) % 3 == 0) ++oracle_coinv;
    }
    REQUIRE_OR_FAIL(oracle_coinv == 9, "oracle coinvariant count");
    REQUIRE_OR_FAIL(ia.coinv.dim() == 9, "A^coH dimension");
    for (int i = 0; i < 27; ++i) {
        auto m = support::nambu_mono(i, 3);
        Vec<Fp> e(27);
        e[i] = one3;
        bool expect = (m.a + m.b + m.c) % 3 == 0;
        REQUIRE_OR_FAIL(ia.coinv.contains(e) == expect, "A^coH membership of a monomial");
    }

    REQUIRE_OR_FAIL(ia.combined.dim() == 1, "A^{AcoH} dimension");
    Vec<Fp> unit(27);
    unit[0] = one3;
    REQUIRE_OR_FAIL(ia.combined.contains(unit), "A^{AcoH} contains the constants");

    // the same numbers through the CLI
    CliResult r = run_cli("invariants " + g_data + "/nambu27.json --object A --which coH --json");
    REQUIRE_OR_FAIL(r.exit_code == 0, "CLI invariants exit code");
    REQUIRE_OR_FAIL(r.output.find("\"dim\": 9") != std::string::npos, "CLI reports dim 9");
    CliResult rm = run_cli("invariants " + g_data + "/qc2_tensor.json --object M --which AcoH --json");
    REQUIRE_OR_FAIL(rm.exit_code == 0, "CLI module invariants exit code");
    REQUIRE_OR_FAIL(rm.output.find("\"dim\": 2") != std::string::npos,
                    "CLI reports dim 2 for the tensor module invariants");
}

// --- criterion 4 --------------------------------------------------------------

static void criterion4() {
    auto a = qc2_regular();
    auto m = self_module<Rational>(a);
    PhiMap<Rational> phi = identity_phi(a);
    LambdaResult<Rational> lam = lambda_section(m, phi);
    const CheckResult* section = lam.report.find("lambda_section_identity");
    const CheckResult* colin = lam.report.find("lambda_colinear");
    const CheckResult* trilin = lam.report.find("lambda_trilie_linear");
    REQUIRE_OR_FAIL(section && section->verdict == Verdict::pass, "λ∘ρ_M = id_M");
    REQUIRE_OR_FAIL(colin && colin->verdict == Verdict::pass, "λ H-colinear");
    REQUIRE_OR_FAIL(trilin && trilin->verdict == Verdict::pass, "λ pair-action linear");
    // exactness: the composite matrix equals the identity, entry by entry
    Matrix<Rational> comp = lam.lambda.matrix * m.coaction.rho.matrix;
    REQUIRE_OR_FAIL(comp == Matrix<Rational>::identity(2, oneq), "λ∘ρ_M as an exact matrix");
}

// --- criterion 5 --------------------------------------------------------------

static void criterion5() {
    auto a = qc2_regular();
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    for (const auto* mod : {&m, &mt}) {
        ProjectionResult<Rational> pr = p_projection(*mod, phi);
        REQUIRE_OR_FAIL(pr.p.matrix * pr.p.matrix == pr.p.matrix, "p² = p exactly");
        REQUIRE_OR_FAIL(image(pr.p) == pr.coinv, "Im p = M^coH exactly");
        CheckReport rep = check_prime_action_identities(*mod, phi);
        for (const char* name :
             {"projection_action_compat", "prime_projection_invariance", "prime_untwist",
              "projection_reconstruction"}) {
            const CheckResult* r = rep.find(name);
            REQUIRE_OR_FAIL(r && r->verdict == Verdict::pass, std::string(name));
        }
        REQUIRE_OR_FAIL(rep.passed(), "projected action is a module action");
    }
}

// --- criterion 6 --------------------------------------------------------------

static void criterion6() {
    auto a = qc2_regular();
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    FundamentalResult<Rational> r1 = verify_fundamental_theorem(m, phi);
    REQUIRE_OR_FAIL(r1.report.passed(), "iso on M = A");
    REQUIRE_OR_FAIL(r1.dim_m == 2 && r1.dim_acoh == 1 && r1.dim_b == 1, "dims on M = A");
    REQUIRE_OR_FAIL(r1.dim_m * r1.dim_b == 2 * r1.dim_acoh, "dimension identity on M = A");

    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    FundamentalResult<Rational> r2 = verify_fundamental_theorem(mt, phi);
    REQUIRE_OR_FAIL(r2.report.passed(), "iso on M = H⊗H");
    REQUIRE_OR_FAIL(r2.dim_m == 4 && r2.dim_acoh == 2 && r2.dim_b == 1, "dims on M = H⊗H");
    REQUIRE_OR_FAIL(r2.dim_m == 2 * (r2.dim_acoh / r2.dim_b), "dim M = dim A·(dim M^{AcoH}/dim B)");

    // the product example must refuse with a nonzero witness on the coinvariants
    GradedProductExample<Fp> ex = group_graded_product(nambu_truncated(3), 3);
    PhiMap<Fp> pphi = make_phi(ex.algebra, ex.phi);
    auto pm = self_module<Fp>(ex.algebra);
    bool refused = false;
    try {
        verify_fundamental_theorem(pm, pphi);
    } catch (const refusal_error& e) {
        refused = true;
        REQUIRE_OR_FAIL(e.detail().witness.has_value(), "refusal without witness");
        REQUIRE_OR_FAIL(e.detail().witness->lhs != "0", "refusal witness is zero");
        ProjectionResult<Fp> pr = p_projection(pm, pphi);
        auto w = prime_nontriviality_witness(pm, pr.p, coinvariants(pm.coaction, one3));
        REQUIRE_OR_FAIL(w.has_value(), "witness does not re-evaluate");
        REQUIRE_OR_FAIL(w->lhs == e.detail().witness->lhs, "witness value mismatch");
    }
    REQUIRE_OR_FAIL(refused, "pipeline did not refuse the product example");
}

// --- criterion 7 --------------------------------------------------------------

static void criterion7() {
    auto a = qc2_regular();
    auto m = self_module<Rational>(a);
    auto nh = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);

    // complete hom bases for the transport isomorphism
    std::vector<std::function<Matrix<Rational>(const Matrix<Rational>&)>> cons_h;
    cons_h.push_back(
        trilie_linearity_constraint(m.tri_action.action, nh.tri_action.action, 2, 2, 4));
    cons_h.push_back(colinearity_constraint(m.coaction.rho.matrix, nh.coaction.rho.matrix, 2));
    auto hom_h = solve_linear_maps(m.space, nh.space, cons_h, oneq);
    std::vector<std::function<Matrix<Rational>(const Matrix<Rational>&)>> cons_plain;
    cons_plain.push_back(
        trilie_linearity_constraint(m.tri_action.action, m.tri_action.action, 2, 2, 2));
    auto hom_plain = solve_linear_maps(m.space, m.space, cons_plain, oneq);
    REQUIRE_OR_FAIL(hom_h.size() == hom_plain.size(), "transport dims differ");
    REQUIRE_OR_FAIL(!hom_h.empty(), "empty hom spaces");
    for (const auto& f : hom_h) {
        LinearMap<Rational> back = gamma_prime_of(m.coaction, gamma_of(*a->hopf, m.space, f));
        REQUIRE_OR_FAIL(back.matrix == f.matrix, "γ′∘γ ≠ id");
    }
    for (const auto& g : hom_plain) {
        LinearMap<Rational> back = gamma_of(*a->hopf, m.space, gamma_prime_of(m.coaction, g));
        REQUIRE_OR_FAIL(back.matrix == g.matrix, "γ∘γ′ ≠ id");
    }

    // adjunction with unit, counit and both triangle identities
    for (const auto* mod : {&m, &nh}) {
        AdjunctionResult<Rational> adj = run_adjunction_suite(*mod);
        for (const char* name : {"psi_psi_prime_identity", "psi_prime_psi_identity",
                                 "triangle_counit_unit", "triangle_unit_counit",
                                 "psi_lands_in_invariants", "unit_lands_in_invariants"}) {
            const CheckResult* r = adj.report.find(name);
            REQUIRE_OR_FAIL(r && r->verdict == Verdict::pass, std::string(name));
        }
    }
}

// --- criterion 8 --------------------------------------------------------------

static void criterion8() {
    auto ar = qc2_regular();
    SimplicityDecision<Rational> simple = is_poisson_h_simple(*ar);
    REQUIRE_OR_FAIL(simple.simple && simple.certainty == Certainty::certified,
                    "regular Q[C2] must be certified simple");
    BFieldResult<Rational> bf = verify_B_field(*ar);
    REQUIRE_OR_FAIL(bf.is_field && bf.certainty == Certainty::certified && bf.b.dim() == 1,
                    "B of the regular coaction must be certified a field");

    auto at = support::qc2(false);
    SimplicityDecision<Rational> notsimple = is_poisson_h_simple(*at);
    REQUIRE_OR_FAIL(!notsimple.simple && notsimple.certainty == Certainty::certified,
                    "trivial Q[C2] must be certified not simple");
    REQUIRE_OR_FAIL(notsimple.witness_ideal.has_value(), "missing witness ideal");
    Vec<Rational> v(2);
    v[0] = oneq;
    v[1] = oneq;
    Subspace<Rational> expect = Subspace<Rational>::span(at->space(), {v});
    REQUIRE_OR_FAIL(*notsimple.witness_ideal == expect, "witness ideal must be span{1+g}");

    BFieldResult<Rational> bf2 = verify_B_field(*at);
    REQUIRE_OR_FAIL(!bf2.is_field && bf2.certainty == Certainty::certified,
                    "B of the trivial coaction must be certified not a field");
    const CheckResult* r = bf2.report.find("b_invertibility");
    REQUIRE_OR_FAIL(r && r->witness.has_value(), "zero-divisor witness missing");
    REQUIRE_OR_FAIL(r->witness->lhs == "0", "zero-divisor product must be zero");
    // the explicit zero divisor re-evaluates: (1+g)(1−g) = 0
    Vec<Rational> u(2), w(2);
    u[0] = oneq;
    u[1] = oneq;
    w[0] = oneq;
    w[1] = -oneq;
    REQUIRE_OR_FAIL(vec_is_zero(at->base.algebra.mul_vec(u, w)), "(1+g)(1−g) ≠ 0");
}

// --- criterion 9 --------------------------------------------------------------

static void criterion9() {
    auto a = qc2_regular();
    PhiMap<Rational> phi = identity_phi(a);
    auto m = self_module<Rational>(a);
    auto mt = tensor_with_h(a, m.space, m.a_action, m.tri_action.action);
    FreenessResult<Rational> fr = freeness_report(mt, phi);
    REQUIRE_OR_FAIL(fr.rank == 2, "rank must be two");
    REQUIRE_OR_FAIL(fr.report.passed(), "basis must verify");
    // independence and spanning re-checked with the independent rank oracle
    std::vector<Vec<Rational>> cols;
    for (int i = 0; i < 2; ++i) {
        Vec<Rational> ei(2);
        ei[i] = oneq;
        for (const auto& u : fr.basis) cols.push_back(mt.act(ei, u));
    }
    REQUIRE_OR_FAIL(support::oracle_rank(cols) == 4, "A·basis must span all of M");
}

// --- criterion 10 -------------------------------------------------------------

static void criterion10() {
    const std::vector<std::string> corpus = {
        "qc2_regular.json",  "qc2_trivial.json",       "qc2_tensor.json", "qc2_bad_antipode.json",
        "f3c3_hopf.json",    "nambu27.json",           "nambu27_product.json"};
    REQUIRE_OR_FAIL(corpus.size() >= 6, "corpus too small");

    // byte-identical round trips through parse → canonical serialization
    for (const auto& name : corpus) {
        std::string path = g_data + "/" + name;
        std::string text = slurp(path);
        json doc = json::parse(text);
        FieldDescriptor fd = parse_field_descriptor(doc);
        std::string again;
        if (fd.is_rational) {
            auto b = parse_bundle<Rational>(doc,
                                            [](const std::string& t) { return Rational::parse(t); });
            again = canonical_dump(bundle_to_json(b));
        } else {
            std::uint64_t p = fd.p;
            auto b = parse_bundle<Fp>(doc, [p](const std::string& t) { return Fp::parse(t, p); });
            again = canonical_dump(bundle_to_json(b));
        }
        REQUIRE_OR_FAIL(again == text, name + " is not byte-identical after a round trip");
    }

    // exit code 0: a passing check and a fundamental run
    REQUIRE_OR_FAIL(run_cli("check " + g_data + "/qc2_regular.json").exit_code == 0,
                    "check qc2_regular → 0");
    REQUIRE_OR_FAIL(run_cli("fundamental " + g_data + "/qc2_tensor.json").exit_code == 0,
                    "fundamental qc2_tensor → 0");

    // exit code 1: axiom failure with a printed witness; and a refusal
    CliResult bad = run_cli("check " + g_data + "/qc2_bad_antipode.json");
    REQUIRE_OR_FAIL(bad.exit_code == 1, "check qc2_bad_antipode → 1");
    REQUIRE_OR_FAIL(bad.output.find("[fail]") != std::string::npos, "failure line missing");
    REQUIRE_OR_FAIL(bad.output.find("lhs =") != std::string::npos, "witness missing");
    CliResult refusal = run_cli("fundamental " + g_data + "/nambu27_product.json");
    REQUIRE_OR_FAIL(refusal.exit_code == 1, "fundamental nambu27_product → 1");
    REQUIRE_OR_FAIL(refusal.output.find("REFUSED") != std::string::npos, "refusal banner missing");

    // exit code 2: usage errors and parse errors
    REQUIRE_OR_FAIL(run_cli("fundamental " + g_data + "/nambu27.json").exit_code == 2,
                    "fundamental without phi → 2");
    REQUIRE_OR_FAIL(run_cli("check " + g_data + "/does_not_exist.json").exit_code == 2,
                    "missing file → 2");
    {
        std::string tmp = "/tmp/trihopf_acceptance_bad.json";
        std::ofstream f(tmp);
        f << R"({"format": "trihopf-structures-v1", "field": {"kind": "Q"}, "hopf": {"space": )"
          << R"({"labels": ["1"]}, "mul": ["0 0 0 1/0"], "unit": ["0 1"], "comul": ["0 0 0 1"], )"
          << R"("counit": ["0 0 1"], "antipode": ["0 0 1"]}})" << "\n";
        f.close();
        REQUIRE_OR_FAIL(run_cli("check " + tmp).exit_code == 2, "zero denominator → 2");
    }

    // simple: exit 0 with a not-simple verdict and the witness ideal printed
    CliResult simple = run_cli("simple " + g_data + "/qc2_trivial.json --seed 7");
    REQUIRE_OR_FAIL(simple.exit_code == 0, "simple qc2_trivial → 0");
    REQUIRE_OR_FAIL(simple.output.find("not simple") != std::string::npos, "verdict missing");
    REQUIRE_OR_FAIL(simple.output.find("witness ideal") != std::string::npos, "witness missing");

    // rebuilding the tensor module reproduces the committed bundle exactly
    {
        std::string out = "/tmp/trihopf_acceptance_tensor.json";
        CliResult c = run_cli("construct tensor-h " + g_data + "/qc2_regular.json --out " + out);
        REQUIRE_OR_FAIL(c.exit_code == 0, "construct tensor-h → 0");
        REQUIRE_OR_FAIL(slurp(out) == slurp(g_data + "/qc2_tensor.json"),
                        "constructed tensor bundle differs from the committed one");
    }

    // the remaining subcommands run cleanly on the corpus
    REQUIRE_OR_FAIL(run_cli("adjunction " + g_data + "/qc2_tensor.json").exit_code == 0,
                    "adjunction qc2_tensor → 0");
    {
        std::string out = "/tmp/trihopf_acceptance_balanced.json";
        CliResult c = run_cli("construct tensor-over-b " + g_data + "/qc2_tensor.json --out " + out);
        REQUIRE_OR_FAIL(c.exit_code == 0, "construct tensor-over-b → 0");
        json built = json::parse(slurp(out));
        auto b = parse_bundle<Rational>(built,
                                        [](const std::string& t) { return Rational::parse(t); });
        REQUIRE_OR_FAIL(b.module && b.module->space.dim == 4,
                        "balanced module should have dimension four");
        REQUIRE_OR_FAIL(check_hopf_module(*b.module).passed(),
                        "constructed balanced module fails its axioms");
    }

    // reports are byte-reproducible for a fixed seed
    CliResult a1 = run_cli("simple " + g_data + "/qc2_regular.json --json --seed 42");
    CliResult a2 = run_cli("simple " + g_data + "/qc2_regular.json --json --seed 42");
    REQUIRE_OR_FAIL(a1.exit_code == 0 && a2.exit_code == 0, "simple runs failed");
    REQUIRE_OR_FAIL(a1.output == a2.output, "reports differ across identical runs");
    CliResult j1 = run_cli("check " + g_data + "/nambu27.json --json");
    CliResult j2 = run_cli("check " + g_data + "/nambu27.json --json");
    REQUIRE_OR_FAIL(j1.output == j2.output, "check reports differ across identical runs");
}

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string key = argv[i];
        if (key == "--cli") g_cli = argv[i + 1];
        if (key == "--data") g_data = argv[i + 1];
    }
    if (g_cli.empty() || g_data.empty()) {
        std::cerr << "usage: acceptance --cli <trihopf binary> --data <data dir>\n";
        return 2;
    }
    auto t0 = Clock::now();

    criterion(1, "axiom completeness on the 27-dimensional truncated Jacobian algebra",
              criterion1);
    criterion(2, "single-constant mutations are detected with re-evaluable witnesses", criterion2);
    criterion(3, "invariant dimensions match the brute-force oracles (1, 9, 1)", criterion3);
    criterion(4, "the section λ splits the coaction and is linear for both structures",
              criterion4);
    criterion(5, "the projection p and its five compatibility identities", criterion5);
    criterion(6, "the balanced-tensor isomorphism verifies, and the product example refuses",
              criterion6);
    criterion(7, "hom-space transport and the adjunction triangle identities", criterion7);
    criterion(8, "simplicity and field certificates for both coactions", criterion8);
    criterion(9, "freeness of rank two with a verified module basis", criterion9);
    criterion(10, "command-line contract: exit codes, round trips, reproducibility", criterion10);

    double total = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("acceptance total: %.2fs, %d failure(s)\n", total, g_failures);
    if (total > 600.0) {
        std::printf("[FAIL] runtime budget: full suite exceeded ten minutes\n");
        return 1;
    }
    return g_failures == 0 ? 0 : 1;
}
