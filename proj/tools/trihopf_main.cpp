#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "trihopf/trihopf.hpp"

namespace {

using trihopf::json;

struct Options {
    std::string command;
    std::string file;
    std::string out;
    std::string construct_mode;
    std::string object = "A";
    std::string which = "coH";
    std::string gen_kind;
    std::string gen_field = "Q";
    std::string gen_coaction = "regular";
    bool hopf_only = false;
    std::uint64_t gen_p = 3;
    int gen_n = 2;
    bool json_output = false;
    bool all_witnesses = false;
    std::uint64_t exhaustive_limit = 1u << 14;
    std::uint64_t seed = 20240817;
};

json witness_to_json(const trihopf::Witness& w) {
    return json{{"tuple", w.tuple}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

json report_to_json(const trihopf::CheckReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks()) {
        json jc{{"name", c.name}, {"rule", c.rule}, {"verdict", trihopf::verdict_name(c.verdict)}};
        if (c.witness) jc["witness"] = witness_to_json(*c.witness);
        checks.push_back(std::move(jc));
    }
    return json{{"checks", std::move(checks)}, {"passed", report.passed()}};
}

void merge_prefixed(trihopf::CheckReport& into, const std::string& prefix,
                    const trihopf::CheckReport& sub) {
    for (const auto& c : sub.checks()) {
        trihopf::CheckResult r = c;
        r.name = prefix + "." + r.name;
        into.add(std::move(r));
    }
}

void emit(const Options& opt, const trihopf::CheckReport& report, json extra = json::object()) {
    if (opt.json_output) {
        json doc = report_to_json(report);
        doc["command"] = opt.command;
        for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
        std::cout << trihopf::canonical_dump(doc);
    } else {
        if (!extra.empty()) {
            for (auto it = extra.begin(); it != extra.end(); ++it)
                std::cout << it.key() << ": " << it.value().dump() << "\n";
        }
        std::cout << report.str();
    }
}

int refusal_exit(const Options& opt, const trihopf::refusal_error& e) {
    trihopf::CheckReport report;
    report.add(e.detail());
    if (opt.json_output) {
        json doc = report_to_json(report);
        doc["command"] = opt.command;
        doc["refused"] = true;
        doc["reason"] = e.what();
        std::cout << trihopf::canonical_dump(doc);
    } else {
        std::cout << "REFUSED: " << e.what() << "\n" << report.str();
    }
    return 1;
}

template <trihopf::Field F>
struct Session {
    trihopf::StructureBundle<F> bundle;
    std::uint64_t field_order = 0; // 0 for Q
    F one;
};

template <trihopf::Field F>
int cmd_check(const Options& opt, Session<F>& s) {
    trihopf::CheckOptions copt{opt.all_witnesses};
    trihopf::CheckReport report;
    if (!s.bundle.hopf) {
        std::cerr << "error: 'check' needs at least a hopf section\n";
        return 2;
    }
    merge_prefixed(report, "hopf", trihopf::check_hopf_algebra(*s.bundle.hopf, copt));
    bool hypotheses_ok = true;
    if (s.bundle.algebra) {
        const auto& a = *s.bundle.algebra;
        merge_prefixed(report, "algebra", trihopf::check_associative_algebra(a.base.algebra, copt));
        merge_prefixed(report, "algebra", trihopf::check_commutativity(a.base.algebra, copt));
        merge_prefixed(report, "algebra", trihopf::check_comodule(a.coaction));
        merge_prefixed(report, "algebra", trihopf::check_skew_symmetry(a.base.bracket, copt));
        merge_prefixed(report, "algebra", trihopf::check_filippov(a.base.bracket, copt));
        merge_prefixed(report, "algebra", trihopf::check_poisson_trilie(a.base, copt));
        trihopf::CheckReport compat = trihopf::check_comodule_poisson_algebra(a, copt);
        hypotheses_ok = compat.passed();
        merge_prefixed(report, "algebra", compat);
    }
    if (s.bundle.module) {
        const auto& m = *s.bundle.module;
        merge_prefixed(report, "module", trihopf::check_comodule(m.coaction));
        merge_prefixed(report, "module",
                       trihopf::check_module_action(m.algebra->base.algebra, m.space, m.a_action,
                                                    copt));
        merge_prefixed(report, "module",
                       trihopf::check_trilie_module(m.tri_action, m.algebra->base.bracket, copt));
        merge_prefixed(report, "module", trihopf::check_poisson_module(m.as_poisson_module(), copt));
        trihopf::CheckReport hm = trihopf::check_hopf_module(m, copt);
        hypotheses_ok = hypotheses_ok && hm.passed();
        merge_prefixed(report, "module", hm);
        merge_prefixed(report, "module", trihopf::check_invariant_closures(m, hypotheses_ok));
    }
    emit(opt, report);
    return report.passed() ? 0 : 1;
}

template <trihopf::Field F>
int cmd_invariants(const Options& opt, Session<F>& s) {
    if (!s.bundle.algebra) {
        std::cerr << "error: 'invariants' needs an algebra section\n";
        return 2;
    }
    trihopf::InvariantSpaces<F> spaces;
    const trihopf::VectorSpace* amb = nullptr;
    if (opt.object == "A") {
        spaces = trihopf::algebra_invariant_spaces(*s.bundle.algebra);
        amb = &s.bundle.algebra->space();
    } else {
        if (!s.bundle.module) {
            std::cerr << "error: '--object M' needs a module section\n";
            return 2;
        }
        spaces = trihopf::invariant_spaces(*s.bundle.module);
        amb = &s.bundle.module->space;
    }
    const trihopf::Subspace<F>& sub = opt.which == "A"      ? spaces.lie_invariants
                                      : opt.which == "AcoH" ? spaces.combined
                                                            : spaces.coinv;
    json basis = json::array();
    for (const auto& b : sub.basis()) basis.push_back(trihopf::render_vec(b, *amb));
    json extra{{"object", opt.object}, {"which", opt.which}, {"dim", sub.dim()}, {"basis", basis}};
    trihopf::CheckReport empty;
    if (opt.json_output) {
        json doc = extra;
        doc["command"] = opt.command;
        std::cout << trihopf::canonical_dump(doc);
    } else {
        std::cout << opt.object << "^" << (opt.which == "A" ? "A" : opt.which) << ": dim "
                  << sub.dim() << "\n";
        for (const auto& b : basis) std::cout << "  " << b.get<std::string>() << "\n";
    }
    return 0;
}

template <trihopf::Field F>
int cmd_construct(const Options& opt, Session<F>& s) {
    if (!s.bundle.algebra) {
        std::cerr << "error: 'construct' needs an algebra section\n";
        return 2;
    }
    trihopf::StructureBundle<F> out = s.bundle;
    if (opt.construct_mode == "tensor-h") {
        trihopf::PoissonTriLieHopfModule<F> n =
            s.bundle.module ? *s.bundle.module : trihopf::self_module(s.bundle.algebra);
        out.module =
            trihopf::tensor_with_h(s.bundle.algebra, n.space, n.a_action, n.tri_action.action);
    } else if (opt.construct_mode == "tensor-over-b") {
        if (!s.bundle.module) {
            std::cerr << "error: 'construct tensor-over-b' needs a module section\n";
            return 2;
        }
        const auto& m = *s.bundle.module;
        trihopf::InvariantSpaces<F> ia = trihopf::algebra_invariant_spaces(*s.bundle.algebra);
        trihopf::InvariantSpaces<F> im = trihopf::invariant_spaces(m);
        trihopf::BModuleData<F> bmod = trihopf::restrict_module(m, ia.combined, im.combined);
        trihopf::BalancedTensor<F> bt = trihopf::tensor_over_b(s.bundle.algebra, std::move(bmod));
        out.module = bt.module;
    } else {
        std::cerr << "error: unknown construct mode '" << opt.construct_mode << "'\n";
        return 2;
    }
    std::ofstream f(opt.out);
    if (!f) {
        std::cerr << "error: cannot write '" << opt.out << "'\n";
        return 2;
    }
    f << trihopf::canonical_dump(trihopf::bundle_to_json(out));
    std::cout << "wrote " << opt.out << " (module dim " << out.module->space.dim << ")\n";
    return 0;
}

template <trihopf::Field F>
int cmd_fundamental(const Options& opt, Session<F>& s) {
    if (!s.bundle.algebra || !s.bundle.module) {
        std::cerr << "error: 'fundamental' needs algebra and module sections\n";
        return 2;
    }
    if (!s.bundle.phi) {
        std::cerr << "error: 'fundamental' needs a phi section (H-colinear algebra map into A^A)\n";
        return 2;
    }
    trihopf::PhiMap<F> phi = trihopf::make_phi(s.bundle.algebra, *s.bundle.phi);
    trihopf::FundamentalResult<F> res =
        trihopf::verify_fundamental_theorem(*s.bundle.module, phi);
    json extra{{"dim_M", res.dim_m},
               {"dim_M_AcoH", res.dim_acoh},
               {"dim_B", res.dim_b},
               {"dim_A_tensor_B_M_AcoH", res.dim_balanced}};
    if (!opt.json_output)
        std::cout << "iso " << (res.report.passed() ? "verified" : "FAILED") << ", dim M = "
                  << res.dim_m << ", dim M^{AcoH} = " << res.dim_acoh << ", dim B = " << res.dim_b
                  << "\n";
    emit(opt, res.report, extra);
    return res.report.passed() ? 0 : 1;
}

template <trihopf::Field F>
int cmd_adjunction(const Options& opt, Session<F>& s) {
    if (!s.bundle.algebra || !s.bundle.module) {
        std::cerr << "error: 'adjunction' needs algebra and module sections\n";
        return 2;
    }
    trihopf::AdjunctionResult<F> res = trihopf::run_adjunction_suite(*s.bundle.module);
    json extra{{"hom_module_dim", res.hom_module_dim}, {"hom_B_dim", res.hom_b_dim}};
    emit(opt, res.report, extra);
    return res.report.passed() ? 0 : 1;
}

template <trihopf::Field F>
int cmd_simple(const Options& opt, Session<F>& s) {
    if (!s.bundle.algebra) {
        std::cerr << "error: 'simple' needs an algebra section\n";
        return 2;
    }
    trihopf::SimplicityConfig cfg;
    cfg.exhaustive_limit = opt.exhaustive_limit;
    cfg.seed = opt.seed;
    trihopf::SimplicityDecision<F> dec =
        trihopf::is_poisson_h_simple(*s.bundle.algebra, cfg, s.field_order);
    trihopf::BFieldResult<F> bf = trihopf::verify_B_field(*s.bundle.algebra, cfg, s.field_order);

    // the verdicts are data; the only failing condition is the contradiction
    // between a certified simple algebra and a certified non-field B
    trihopf::CheckReport report;
    if (dec.simple && dec.certainty == trihopf::Certainty::certified && !bf.is_field &&
        bf.certainty == trihopf::Certainty::certified)
        report.add_fail("simple_field_consistency", "A Poisson H-simple ⇒ B = A^{AcoH} is a field",
                        trihopf::Witness{{}, "A certified simple", "B certified not a field"});
    else
        report.add_pass("simple_field_consistency", "A Poisson H-simple ⇒ B = A^{AcoH} is a field");

    json witness = json::array();
    if (dec.witness_ideal)
        for (const auto& b : dec.witness_ideal->basis())
            witness.push_back(trihopf::render_vec(b, s.bundle.algebra->space()));
    json zero_divisor;
    if (const trihopf::CheckResult* zd = bf.report.find("b_invertibility");
        zd && zd->witness && !bf.is_field)
        zero_divisor = witness_to_json(*zd->witness);
    json extra{{"simple", dec.simple},
               {"certainty", trihopf::certainty_name(dec.certainty)},
               {"method", dec.method},
               {"witness_ideal", witness},
               {"b_is_field", bf.is_field},
               {"b_certainty", trihopf::certainty_name(bf.certainty)},
               {"b_zero_divisor", zero_divisor},
               {"dim_B", bf.b.dim()},
               {"seed", opt.seed}};
    if (!opt.json_output) {
        std::cout << "verdict: " << (dec.simple ? "simple" : "not simple") << " ("
                  << trihopf::certainty_name(dec.certainty) << ", " << dec.method << ")\n";
        if (dec.witness_ideal) {
            std::cout << "witness ideal (dim " << dec.witness_ideal->dim() << "):\n";
            for (const auto& b : witness) std::cout << "  " << b.get<std::string>() << "\n";
        }
        std::cout << "B = A^{AcoH}: dim " << bf.b.dim() << ", "
                  << (bf.is_field ? "field" : "not a field") << " ("
                  << trihopf::certainty_name(bf.certainty) << ")\n";
        if (!zero_divisor.is_null())
            std::cout << "zero divisor: (" << zero_divisor["tuple"][0].get<std::string>() << ")·("
                      << zero_divisor["tuple"][1].get<std::string>() << ") = 0\n";
    }
    emit(opt, report, extra);
    return report.passed() ? 0 : 1;
}

template <trihopf::Field F>
int run_session(const Options& opt, const json& doc, const trihopf::io_detail::ScalarParser<F>& sp,
                std::uint64_t field_order, const F& one) {
    Session<F> s{trihopf::parse_bundle<F>(doc, sp), field_order, one};
    try {
        if (opt.command == "check") return cmd_check(opt, s);
        if (opt.command == "invariants") return cmd_invariants(opt, s);
        if (opt.command == "construct") return cmd_construct(opt, s);
        if (opt.command == "fundamental") return cmd_fundamental(opt, s);
        if (opt.command == "adjunction") return cmd_adjunction(opt, s);
        if (opt.command == "simple") return cmd_simple(opt, s);
    } catch (const trihopf::refusal_error& e) {
        return refusal_exit(opt, e);
    }
    std::cerr << "error: unknown command\n";
    return 2;
}

int run_on_file(const Options& opt) {
    std::ifstream f(opt.file);
    if (!f) {
        std::cerr << "error: cannot open '" << opt.file << "'\n";
        return 2;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    json doc;
    try {
        doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        std::cerr << "error: " << opt.file << ": " << e.what() << "\n";
        return 2;
    }
    trihopf::FieldDescriptor fd = trihopf::parse_field_descriptor(doc);
    if (fd.is_rational) {
        trihopf::Rational one(1);
        return run_session<trihopf::Rational>(
            opt, doc, [](const std::string& t) { return trihopf::Rational::parse(t); }, 0, one);
    }
    trihopf::Fp one(1, fd.p);
    std::uint64_t p = fd.p;
    return run_session<trihopf::Fp>(
        opt, doc, [p](const std::string& t) { return trihopf::Fp::parse(t, p); }, p, one);
}

int cmd_gen(const Options& opt) {
    using namespace trihopf;
    json doc;
    if (opt.gen_kind == "nambu" || opt.gen_kind == "nambu-product") {
        if (!is_prime_u64(opt.gen_p) || opt.gen_p < 3) {
            std::cerr << "error: --p must be a prime >= 3\n";
            return 2;
        }
        StructureBundle<Fp> b;
        b.field = {false, opt.gen_p};
        if (opt.gen_kind == "nambu") {
            auto alg = std::make_shared<ComodulePoissonTriLieAlgebra<Fp>>(nambu_graded(opt.gen_p));
            b.hopf = alg->hopf;
            b.algebra = alg;
            b.module = self_module<Fp>(alg);
        } else {
            GradedProductExample<Fp> ex = group_graded_product(nambu_truncated(opt.gen_p), 3);
            b.hopf = ex.algebra->hopf;
            b.algebra = ex.algebra;
            b.module = self_module<Fp>(ex.algebra);
            b.phi = ex.phi;
        }
        doc = bundle_to_json(b);
    } else if (opt.gen_kind == "group-algebra") {
        if (opt.gen_n < 1) {
            std::cerr << "error: --n must be >= 1\n";
            return 2;
        }
        auto build = [&](auto one, std::uint64_t /*p*/, FieldDescriptor fd) {
            using FF = decltype(one);
            StructureBundle<FF> b;
            b.field = fd;
            auto hopf = std::make_shared<const HopfStructure<FF>>(group_algebra<FF>(opt.gen_n, one));
            b.hopf = hopf;
            if (!opt.hopf_only) {
                auto alg = std::make_shared<ComodulePoissonTriLieAlgebra<FF>>();
                alg->base.algebra = hopf->algebra;
                alg->base.bracket = TriBracket<FF>::zero(hopf->space());
                alg->hopf = hopf;
                alg->coaction = opt.gen_coaction == "trivial"
                                    ? Coaction<FF>::trivial(hopf->space(), hopf)
                                    : Coaction<FF>::regular(hopf);
                ComodulePtr<FF> aptr = alg;
                b.algebra = aptr;
                b.module = self_module<FF>(aptr);
                if (opt.gen_coaction == "regular")
                    b.phi = Matrix<FF>::identity(hopf->dim(), one);
            }
            return bundle_to_json(b);
        };
        if (opt.gen_field == "Q") {
            doc = build(Rational(1), 0, FieldDescriptor{true, 0});
        } else if (opt.gen_field == "Fp") {
            if (!is_prime_u64(opt.gen_p)) {
                std::cerr << "error: --p must be prime for --field Fp\n";
                return 2;
            }
            doc = build(Fp(1, opt.gen_p), opt.gen_p, FieldDescriptor{false, opt.gen_p});
        } else {
            std::cerr << "error: --field must be Q or Fp\n";
            return 2;
        }
    } else {
        std::cerr << "error: unknown generator '" << opt.gen_kind << "'\n";
        return 2;
    }
    if (opt.out.empty()) {
        std::cout << canonical_dump(doc);
        return 0;
    }
    std::ofstream f(opt.out);
    if (!f) {
        std::cerr << "error: cannot write '" << opt.out << "'\n";
        return 2;
    }
    f << canonical_dump(doc);
    std::cout << "wrote " << opt.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Checker for Poisson 3-Lie algebras with Hopf-algebra coactions"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* c, bool with_file = true) {
        if (with_file) c->add_option("file", opt.file, "structure file")->required();
        c->add_flag("--json", opt.json_output, "emit a machine-readable report");
    };

    CLI::App* check = app.add_subcommand("check", "run every applicable axiom suite");
    add_common(check);
    check->add_flag("--all-witnesses", opt.all_witnesses, "collect every failure, not just the first");

    CLI::App* inv = app.add_subcommand("invariants", "compute invariant subspaces");
    add_common(inv);
    inv->add_option("--object", opt.object, "A or M")->check(CLI::IsMember({"A", "M"}));
    inv->add_option("--which", opt.which, "coH, A or AcoH")
        ->check(CLI::IsMember({"coH", "A", "AcoH"}));

    CLI::App* con = app.add_subcommand("construct", "build a derived module and write it out");
    con->add_option("mode", opt.construct_mode, "tensor-h or tensor-over-b")
        ->required()
        ->check(CLI::IsMember({"tensor-h", "tensor-over-b"}));
    add_common(con);
    con->add_option("--out", opt.out, "output file")->required();

    CLI::App* fun = app.add_subcommand("fundamental",
                                       "verify that A⊗_B M^{AcoH} → M is an isomorphism");
    add_common(fun);

    CLI::App* adj = app.add_subcommand("adjunction", "verify the A⊗_B(−) ⊣ (−)^{AcoH} adjunction");
    add_common(adj);

    CLI::App* sim = app.add_subcommand("simple", "decide Poisson H-simplicity and the field property");
    add_common(sim);
    sim->add_option("--exhaustive-limit", opt.exhaustive_limit,
                    "enumerate generators exhaustively when |F|^dim is at most this");
    sim->add_option("--seed", opt.seed, "seed for the randomized phases");

    CLI::App* gen = app.add_subcommand("gen", "write example structure files");
    gen->require_subcommand(1);
    CLI::App* gn = gen->add_subcommand("nambu", "truncated polynomial algebra with Jacobian bracket");
    gn->add_option("--p", opt.gen_p, "prime >= 3")->required();
    gn->add_option("--out", opt.out, "output file");
    CLI::App* gp = gen->add_subcommand("nambu-product",
                                       "Nambu algebra tensored with a group algebra, graded by the group leg");
    gp->add_option("--p", opt.gen_p, "prime >= 3")->required();
    gp->add_option("--out", opt.out, "output file");
    CLI::App* gg = gen->add_subcommand("group-algebra", "group algebra of a cyclic group");
    gg->add_option("--n", opt.gen_n, "group order")->required();
    gg->add_option("--field", opt.gen_field, "Q or Fp");
    gg->add_option("--p", opt.gen_p, "prime for Fp");
    gg->add_option("--coaction", opt.gen_coaction, "regular or trivial")
        ->check(CLI::IsMember({"regular", "trivial"}));
    gg->add_flag("--hopf-only", opt.hopf_only, "write only the hopf section");
    gg->add_option("--out", opt.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (CLI::App* c : {check, inv, con, fun, adj, sim})
        if (c->parsed()) opt.command = c->get_name();
    if (gen->parsed()) {
        opt.command = "gen";
        for (CLI::App* c : {gn, gp, gg})
            if (c->parsed()) opt.gen_kind = c->get_name();
    }

    try {
        if (opt.command == "gen") return cmd_gen(opt);
        return run_on_file(opt);
    } catch (const trihopf::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
