#ifndef TRIHOPF_HOPF_COMPAT_HPP
#define TRIHOPF_HOPF_COMPAT_HPP

#include <memory>

#include "trihopf/trilie.hpp"

namespace trihopf {

// Poisson 3-Lie algebra that is simultaneously a right H-comodule algebra,
// with the coaction compatible with the ternary bracket.
template <Field F>
struct ComodulePoissonTriLieAlgebra {
    PoissonTriLieAlgebra<F> base;
    HopfPtr<F> hopf;
    Coaction<F> coaction; // on the algebra space

    const VectorSpace& space() const { return base.space(); }
    F field_one() const { return base.algebra.field_one(); }
};

template <Field F>
using ComodulePtr = std::shared_ptr<const ComodulePoissonTriLieAlgebra<F>>;

// Module with A-action, pair action and H-coaction, all over one comodule
// Poisson 3-Lie algebra.
template <Field F>
struct PoissonTriLieHopfModule {
    ComodulePtr<F> algebra;
    VectorSpace space;
    SparseTensor<F> a_action;         // (A, M) → M
    TriLieModuleAction<F> tri_action; // (A, A, M) → M
    Coaction<F> coaction;             // on the module space

    PoissonTriLieModule<F> as_poisson_module() const {
        PoissonTriLieModule<F> pm;
        pm.algebra = algebra->base;
        pm.module_space = space;
        pm.a_action = a_action;
        pm.tri_action = tri_action;
        return pm;
    }

    Vec<F> act(const Vec<F>& a, const Vec<F>& m) const { return contract2(a_action, a, m); }
};

// A over itself: action by multiplication, pair action by the bracket.
template <Field F>
PoissonTriLieHopfModule<F> self_module(ComodulePtr<F> a) {
    PoissonTriLieHopfModule<F> m;
    m.algebra = a;
    m.space = a->space();
    m.a_action = a->base.algebra.mul;
    m.tri_action = TriLieModuleAction<F>(a->space(), a->space(), a->base.bracket.bracket);
    m.coaction = a->coaction;
    return m;
}

// Classical module axioms for the A-action on M.
template <Field F>
CheckReport check_module_action(const AlgebraStructure<F>& alg, const VectorSpace& mspace,
                                const SparseTensor<F>& a_action, const CheckOptions& opt = {}) {
    CheckReport report;
    const int na = alg.space.dim;
    const int nm = mspace.dim;
    TensorTable<F> tm(alg.mul);
    TensorTable<F> ta(a_action);
    SparseAccumulator<F> acc(nm);

    {
        detail::IdentityScan<F> scan(report, "module_associativity", "(ab)·m = a·(b·m)", opt);
        for (int i = 0; i < na && scan.should_continue(); ++i)
            for (int j = 0; j < na && scan.should_continue(); ++j) {
                auto mij = tm.lookup2(i, j);
                for (int k = 0; k < nm; ++k) {
                    for (const auto& e : mij)
                        for (const auto& f : ta.lookup2(e.idx[2], k))
                            acc.add(f.idx[2], e.coeff * f.coeff);
                    for (const auto& e : ta.lookup2(j, k))
                        for (const auto& f : ta.lookup2(i, e.idx[2]))
                            acc.sub(f.idx[2], e.coeff * f.coeff);
                    if (!acc.all_zero()) {
                        Vec<F> lhs(nm), rhs(nm);
                        for (const auto& e : mij)
                            for (const auto& f : ta.lookup2(e.idx[2], k))
                                lhs[f.idx[2]] += e.coeff * f.coeff;
                        for (const auto& e : ta.lookup2(j, k))
                            for (const auto& f : ta.lookup2(i, e.idx[2]))
                                rhs[f.idx[2]] += e.coeff * f.coeff;
                        scan.record_failure(detail::make_witness(
                            {alg.space.labels[i], alg.space.labels[j], mspace.labels[k]}, lhs, rhs,
                            mspace));
                        acc.reset();
                        if (!opt.all_witnesses) break;
                        continue;
                    }
                    acc.reset();
                }
            }
        scan.finish();
    }

    {
        detail::IdentityScan<F> scan(report, "module_unit", "1·m = m", opt);
        F one{};
        bool have_one = false;
        for (const F& c : alg.unit)
            if (!c.is_zero()) { one = F::one_like(c); have_one = true; break; }
        for (int k = 0; k < nm && scan.should_continue() && have_one; ++k) {
            Vec<F> ek(nm);
            ek[k] = one;
            Vec<F> val = contract2(a_action, alg.unit, ek);
            if (val != ek)
                scan.record_failure(detail::make_witness({mspace.labels[k]}, val, ek, mspace));
        }
        scan.finish();
    }

    return report;
}

// Coaction compatibility of a comodule Poisson 3-Lie algebra: ρ is an algebra
// morphism into A⊗H and respects the ternary bracket, including the two
// reorderings of the H-leg forced by skew-symmetry.
template <Field F>
CheckReport check_comodule_poisson_algebra(const ComodulePoissonTriLieAlgebra<F>& a,
                                           const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = a.space().dim;
    const int h = a.hopf->dim();
    if (n == 0) {
        report.add_pass("comodule_algebra", "vacuous on the zero space");
        return report;
    }
    const auto& L = a.space().labels;
    const VectorSpace AH = tensor_space(a.space(), a.hopf->space());
    TensorTable<F> tmul(a.base.algebra.mul);
    TensorTable<F> thmul(a.hopf->algebra.mul);
    TensorTable<F> tb(a.base.bracket.bracket);
    std::vector<SparseVec<F>> rho = sparse_columns(a.coaction.rho.matrix); // (a_idx*h + h_idx)

    // ρ(1_A) = 1_A ⊗ 1_H
    {
        Vec<F> lhs = a.coaction.rho.apply(a.base.algebra.unit);
        Vec<F> rhs(n * h);
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < h; ++b)
                rhs[i * h + b] = a.base.algebra.unit[i] * a.hopf->algebra.unit[b];
        if (lhs == rhs)
            report.add_pass("coaction_unit", "ρ(1) = 1⊗1_H");
        else
            report.add_fail("coaction_unit", "ρ(1) = 1⊗1_H",
                            detail::make_witness({std::string("1")}, lhs, rhs, AH));
    }

    // ρ(ab) = ρ(a)ρ(b)
    {
        detail::IdentityScan<F> scan(report, "coaction_multiplicative", "ρ(ab) = ρ(a)ρ(b)", opt);
        SparseAccumulator<F> acc(n * h);
        for (int i = 0; i < n && scan.should_continue(); ++i)
            for (int j = 0; j < n; ++j) {
                for (const auto& e : tmul.lookup2(i, j))
                    for (const auto& [r, c] : rho[e.idx[2]]) acc.add(r, e.coeff * c);
                for (const auto& [r1, c1] : rho[i])
                    for (const auto& [r2, c2] : rho[j]) {
                        int a1 = r1 / h, h1 = r1 % h;
                        int a2 = r2 / h, h2 = r2 % h;
                        F c12 = c1 * c2;
                        for (const auto& em : tmul.lookup2(a1, a2))
                            for (const auto& eh : thmul.lookup2(h1, h2))
                                acc.sub(em.idx[2] * h + eh.idx[2], c12 * em.coeff * eh.coeff);
                    }
                if (!acc.all_zero()) {
                    Vec<F> lhs(n * h), rhs(n * h);
                    for (const auto& e : tmul.lookup2(i, j))
                        for (const auto& [r, c] : rho[e.idx[2]]) lhs[r] += e.coeff * c;
                    for (const auto& [r1, c1] : rho[i])
                        for (const auto& [r2, c2] : rho[j]) {
                            int a1 = r1 / h, h1 = r1 % h;
                            int a2 = r2 / h, h2 = r2 % h;
                            F c12 = c1 * c2;
                            for (const auto& em : tmul.lookup2(a1, a2))
                                for (const auto& eh : thmul.lookup2(h1, h2))
                                    rhs[em.idx[2] * h + eh.idx[2]] += c12 * em.coeff * eh.coeff;
                        }
                    scan.record_failure(detail::make_witness({L[i], L[j]}, lhs, rhs, AH));
                    acc.reset();
                    if (!opt.all_witnesses) break;
                    continue;
                }
                acc.reset();
            }
        scan.finish();
    }

    // ρ({x,y,z}) = {x₍₀₎,y₍₀₎,z₍₀₎} ⊗ x₍₁₎y₍₁₎z₍₁₎ and the two reorderings
    {
        // H-leg multiplication order per variant: identity, swap last two,
        // swap first two
        struct Variant {
            const char* name;
            const char* rule;
            std::array<int, 3> order;
        };
        const std::array<Variant, 3> variants{{
            {"coaction_bracket", "ρ({x,y,z}) = {x₍₀₎,y₍₀₎,z₍₀₎}⊗x₍₁₎y₍₁₎z₍₁₎", {0, 1, 2}},
            {"coaction_bracket_reorder_23", "ρ({x,y,z}) = {x₍₀₎,y₍₀₎,z₍₀₎}⊗x₍₁₎z₍₁₎y₍₁₎", {0, 2, 1}},
            {"coaction_bracket_reorder_12", "ρ({x,y,z}) = {x₍₀₎,y₍₀₎,z₍₀₎}⊗y₍₁₎x₍₁₎z₍₁₎", {1, 0, 2}},
        }};
        for (const auto& variant : variants) {
            detail::IdentityScan<F> scan(report, variant.name, variant.rule, opt);
            SparseAccumulator<F> acc(n * h);
            auto rhs_into = [&](int x, int y, int z, auto&& sink) {
                for (const auto& [r1, c1] : rho[x])
                    for (const auto& [r2, c2] : rho[y]) {
                        F c12 = c1 * c2;
                        for (const auto& [r3, c3] : rho[z]) {
                            int a1 = r1 / h, a2 = r2 / h, a3 = r3 / h;
                            std::array<int, 3> hs{r1 % h, r2 % h, r3 % h};
                            F c123 = c12 * c3;
                            for (const auto& eb : tb.lookup3(a1, a2, a3))
                                for (const auto& e1 :
                                     thmul.lookup2(hs[variant.order[0]], hs[variant.order[1]]))
                                    for (const auto& e2 : thmul.lookup2(e1.idx[2], hs[variant.order[2]]))
                                        sink(eb.idx[3] * h + e2.idx[2],
                                             c123 * eb.coeff * e1.coeff * e2.coeff);
                        }
                    }
            };
            for (int x = 0; x < n && scan.should_continue(); ++x)
                for (int y = 0; y < n && scan.should_continue(); ++y)
                    for (int z = 0; z < n; ++z) {
                        for (const auto& e : tb.lookup3(x, y, z))
                            for (const auto& [r, c] : rho[e.idx[3]]) acc.add(r, e.coeff * c);
                        rhs_into(x, y, z, [&](int r, const F& c) { acc.sub(r, c); });
                        if (!acc.all_zero()) {
                            Vec<F> lhs(n * h), rhs(n * h);
                            for (const auto& e : tb.lookup3(x, y, z))
                                for (const auto& [r, c] : rho[e.idx[3]]) lhs[r] += e.coeff * c;
                            rhs_into(x, y, z, [&](int r, const F& c) { rhs[r] += c; });
                            scan.record_failure(
                                detail::make_witness({L[x], L[y], L[z]}, lhs, rhs, AH));
                            acc.reset();
                            if (!opt.all_witnesses) break;
                            continue;
                        }
                        acc.reset();
                    }
            scan.finish();
        }
    }

    return report;
}

// Hopf-module axioms: the classical compatibility for the A-action and the
// corresponding compatibility for the pair action.
template <Field F>
CheckReport check_hopf_module(const PoissonTriLieHopfModule<F>& m, const CheckOptions& opt = {}) {
    CheckReport report;
    const ComodulePoissonTriLieAlgebra<F>& a = *m.algebra;
    const int na = a.space().dim;
    const int nm = m.space.dim;
    const int h = a.hopf->dim();
    if (nm == 0 || na == 0) {
        report.add_pass("hopf_module", "vacuous on the zero space");
        return report;
    }
    const auto& LA = a.space().labels;
    const auto& LM = m.space.labels;
    const VectorSpace MH = tensor_space(m.space, a.hopf->space());
    TensorTable<F> ta(m.a_action);
    TensorTable<F> tt(m.tri_action.action);
    TensorTable<F> thmul(a.hopf->algebra.mul);
    std::vector<SparseVec<F>> rho_a = sparse_columns(a.coaction.rho.matrix);
    std::vector<SparseVec<F>> rho_m = sparse_columns(m.coaction.rho.matrix);

    // ρ(a·m) = a₍₀₎·m₍₀₎ ⊗ a₍₁₎m₍₁₎
    {
        detail::IdentityScan<F> scan(report, "hopf_module_action",
                                     "ρ(a·m) = a₍₀₎·m₍₀₎⊗a₍₁₎m₍₁₎", opt);
        SparseAccumulator<F> acc(nm * h);
        for (int i = 0; i < na && scan.should_continue(); ++i)
            for (int k = 0; k < nm; ++k) {
                auto rhs_into = [&](auto&& sink) {
                    for (const auto& [r1, c1] : rho_a[i])
                        for (const auto& [r2, c2] : rho_m[k]) {
                            int a0 = r1 / h, a1 = r1 % h;
                            int m0 = r2 / h, m1 = r2 % h;
                            F c12 = c1 * c2;
                            for (const auto& ea : ta.lookup2(a0, m0))
                                for (const auto& eh : thmul.lookup2(a1, m1))
                                    sink(ea.idx[2] * h + eh.idx[2], c12 * ea.coeff * eh.coeff);
                        }
                };
                for (const auto& e : ta.lookup2(i, k))
                    for (const auto& [r, c] : rho_m[e.idx[2]]) acc.add(r, e.coeff * c);
                rhs_into([&](int r, const F& c) { acc.sub(r, c); });
                if (!acc.all_zero()) {
                    Vec<F> lhs(nm * h), rhs(nm * h);
                    for (const auto& e : ta.lookup2(i, k))
                        for (const auto& [r, c] : rho_m[e.idx[2]]) lhs[r] += e.coeff * c;
                    rhs_into([&](int r, const F& c) { rhs[r] += c; });
                    scan.record_failure(detail::make_witness({LA[i], LM[k]}, lhs, rhs, MH));
                    acc.reset();
                    if (!opt.all_witnesses) break;
                    continue;
                }
                acc.reset();
            }
        scan.finish();
    }

    // ρ((x,y)⋄m) = (x₍₀₎,y₍₀₎)⋄m₍₀₎ ⊗ x₍₁₎y₍₁₎m₍₁₎
    {
        detail::IdentityScan<F> scan(report, "hopf_module_pair_action",
                                     "ρ((x,y)⋄m) = (x₍₀₎,y₍₀₎)⋄m₍₀₎⊗x₍₁₎y₍₁₎m₍₁₎", opt);
        SparseAccumulator<F> acc(nm * h);
        for (int x = 0; x < na && scan.should_continue(); ++x)
            for (int y = 0; y < na && scan.should_continue(); ++y)
                for (int k = 0; k < nm; ++k) {
                    auto rhs_into = [&](auto&& sink) {
                        for (const auto& [r1, c1] : rho_a[x])
                            for (const auto& [r2, c2] : rho_a[y]) {
                                int x0 = r1 / h, x1 = r1 % h;
                                int y0 = r2 / h, y1 = r2 % h;
                                F c12 = c1 * c2;
                                for (const auto& [r3, c3] : rho_m[k]) {
                                    int m0 = r3 / h, m1 = r3 % h;
                                    F c123 = c12 * c3;
                                    for (const auto& et : tt.lookup3(x0, y0, m0))
                                        for (const auto& e1 : thmul.lookup2(x1, y1))
                                            for (const auto& e2 : thmul.lookup2(e1.idx[2], m1))
                                                sink(et.idx[3] * h + e2.idx[2],
                                                     c123 * et.coeff * e1.coeff * e2.coeff);
                                }
                            }
                    };
                    for (const auto& e : tt.lookup3(x, y, k))
                        for (const auto& [r, c] : rho_m[e.idx[3]]) acc.add(r, e.coeff * c);
                    rhs_into([&](int r, const F& c) { acc.sub(r, c); });
                    if (!acc.all_zero()) {
                        Vec<F> lhs(nm * h), rhs(nm * h);
                        for (const auto& e : tt.lookup3(x, y, k))
                            for (const auto& [r, c] : rho_m[e.idx[3]]) lhs[r] += e.coeff * c;
                        rhs_into([&](int r, const F& c) { rhs[r] += c; });
                        scan.record_failure(detail::make_witness({LA[x], LA[y], LM[k]}, lhs, rhs, MH));
                        acc.reset();
                        if (!opt.all_witnesses) break;
                        continue;
                    }
                    acc.reset();
                }
        scan.finish();
    }

    return report;
}

// M^coH = {m : ρ(m) = m⊗1_H}, as the kernel of m ↦ ρ(m) − m⊗1_H.
template <Field F>
Subspace<F> coinvariants(const Coaction<F>& c, const F& one) {
    const int nm = c.module_space.dim;
    const int h = c.hopf->dim();
    Matrix<F> d = c.rho.matrix;
    for (int i = 0; i < nm; ++i)
        for (int b = 0; b < h; ++b)
            if (!c.hopf->algebra.unit[b].is_zero())
                d.at(i * h + b, i) -= c.hopf->algebra.unit[b];
    LinearMap<F> f(c.module_space, tensor_space(c.module_space, c.hopf->space()), std::move(d));
    return kernel(f, one);
}

template <Field F>
struct InvariantSpaces {
    Subspace<F> lie_invariants; // M^A
    Subspace<F> coinv;          // M^coH
    Subspace<F> combined;       // M^{AcoH}
};

template <Field F>
InvariantSpaces<F> invariant_spaces(const PoissonTriLieHopfModule<F>& m) {
    F one = m.algebra->field_one();
    InvariantSpaces<F> out;
    out.lie_invariants = module_invariants(m.tri_action, one);
    out.coinv = coinvariants(m.coaction, one);
    out.combined = intersect<F>({out.lie_invariants, out.coinv}, one);
    return out;
}

template <Field F>
InvariantSpaces<F> algebra_invariant_spaces(const ComodulePoissonTriLieAlgebra<F>& a) {
    F one = a.field_one();
    InvariantSpaces<F> out;
    out.lie_invariants = trilie_center(a.base, one);
    out.coinv = coinvariants(a.coaction, one);
    out.combined = intersect<F>({out.lie_invariants, out.coinv}, one);
    return out;
}

template <Field F>
Subspace<F> acoh_invariants(const PoissonTriLieHopfModule<F>& m) {
    return invariant_spaces(m).combined;
}

namespace detail {

// Subspace of M⊗H spanned by (basis of S) ⊗ (basis of H).
template <Field F>
Subspace<F> tensor_with_full_hopf(const Subspace<F>& s, const HopfStructure<F>& hopf) {
    const int h = hopf.dim();
    const int nm = s.ambient().dim;
    VectorSpace amb = tensor_space(s.ambient(), hopf.space());
    std::vector<Vec<F>> vecs;
    for (const auto& b : s.basis())
        for (int a = 0; a < h; ++a) {
            Vec<F> v(static_cast<std::size_t>(nm) * h);
            for (int i = 0; i < nm; ++i)
                if (!b[i].is_zero()) v[i * h + a] = b[i];
            vecs.push_back(std::move(v));
        }
    return Subspace<F>::span(amb, vecs);
}

} // namespace detail

// Closure statements for the invariant subspaces: the coinvariants of A form
// a subalgebra closed under the bracket; M^A is a subcomodule; A^{AcoH} is
// closed under · and {,,}; and B·M^{AcoH} ⊆ M^{AcoH}. When the compatibility
// checks themselves failed, failures here are downgraded to warnings since
// the closure claims assume them.
template <Field F>
CheckReport check_invariant_closures(const PoissonTriLieHopfModule<F>& m, bool hypotheses_ok) {
    CheckReport report;
    const ComodulePoissonTriLieAlgebra<F>& a = *m.algebra;
    auto record = [&](const std::string& name, const std::string& rule, bool ok, Witness w) {
        if (ok)
            report.add_pass(name, rule);
        else if (hypotheses_ok)
            report.add_fail(name, rule, std::move(w));
        else
            report.add_warn(name, rule, std::move(w));
    };

    InvariantSpaces<F> ia = algebra_invariant_spaces(a);
    InvariantSpaces<F> im = invariant_spaces(m);

    // A^coH closed under multiplication and bracket
    {
        bool ok = true;
        Witness w;
        const auto& basis = ia.coinv.basis();
        for (std::size_t i = 0; i < basis.size() && ok; ++i)
            for (std::size_t j = 0; j < basis.size() && ok; ++j) {
                Vec<F> prod = a.base.algebra.mul_vec(basis[i], basis[j]);
                if (!ia.coinv.contains(prod)) {
                    ok = false;
                    w = Witness{{render_vec(basis[i], a.space()), render_vec(basis[j], a.space())},
                                render_vec(prod, a.space()), "an element of A^coH"};
                }
            }
        record("coinvariants_subalgebra", "A^coH·A^coH ⊆ A^coH", ok, w);
    }
    {
        bool ok = true;
        Witness w;
        const auto& basis = ia.coinv.basis();
        for (std::size_t i = 0; i < basis.size() && ok; ++i)
            for (std::size_t j = 0; j < basis.size() && ok; ++j)
                for (std::size_t k = 0; k < basis.size() && ok; ++k) {
                    Vec<F> br = a.base.bracket.eval(basis[i], basis[j], basis[k]);
                    if (!ia.coinv.contains(br)) {
                        ok = false;
                        w = Witness{{render_vec(basis[i], a.space()), render_vec(basis[j], a.space()),
                                     render_vec(basis[k], a.space())},
                                    render_vec(br, a.space()), "an element of A^coH"};
                    }
                }
        record("coinvariants_bracket_closed", "{A^coH,A^coH,A^coH} ⊆ A^coH", ok, w);
    }

    // M^A and A^A are subcomodules: ρ maps them into (·)⊗H
    {
        Subspace<F> target = detail::tensor_with_full_hopf(im.lie_invariants, *a.hopf);
        bool ok = true;
        Witness w;
        for (const auto& b : im.lie_invariants.basis()) {
            Vec<F> img = m.coaction.rho.apply(b);
            if (!target.contains(img)) {
                ok = false;
                w = Witness{{render_vec(b, m.space)},
                            render_vec(img, tensor_space(m.space, a.hopf->space())),
                            "an element of M^A⊗H"};
                break;
            }
        }
        record("lie_invariants_subcomodule", "ρ(M^A) ⊆ M^A⊗H", ok, w);
    }
    {
        Subspace<F> target = detail::tensor_with_full_hopf(ia.lie_invariants, *a.hopf);
        bool ok = true;
        Witness w;
        for (const auto& b : ia.lie_invariants.basis()) {
            Vec<F> img = a.coaction.rho.apply(b);
            if (!target.contains(img)) {
                ok = false;
                w = Witness{{render_vec(b, a.space())},
                            render_vec(img, tensor_space(a.space(), a.hopf->space())),
                            "an element of A^A⊗H"};
                break;
            }
        }
        record("center_subcomodule", "ρ(A^A) ⊆ A^A⊗H", ok, w);
    }

    // B = A^{AcoH} closed under · and {,,}
    {
        bool ok = true;
        Witness w;
        const auto& basis = ia.combined.basis();
        for (std::size_t i = 0; i < basis.size() && ok; ++i)
            for (std::size_t j = 0; j < basis.size() && ok; ++j) {
                Vec<F> prod = a.base.algebra.mul_vec(basis[i], basis[j]);
                if (!ia.combined.contains(prod)) {
                    ok = false;
                    w = Witness{{render_vec(basis[i], a.space()), render_vec(basis[j], a.space())},
                                render_vec(prod, a.space()), "an element of A^{AcoH}"};
                }
            }
        for (std::size_t i = 0; i < basis.size() && ok; ++i)
            for (std::size_t j = 0; j < basis.size() && ok; ++j)
                for (std::size_t k = 0; k < basis.size() && ok; ++k) {
                    Vec<F> br = a.base.bracket.eval(basis[i], basis[j], basis[k]);
                    if (!ia.combined.contains(br)) {
                        ok = false;
                        w = Witness{{render_vec(basis[i], a.space()), render_vec(basis[j], a.space()),
                                     render_vec(basis[k], a.space())},
                                    render_vec(br, a.space()), "an element of A^{AcoH}"};
                    }
                }
        record("acoh_subalgebra", "A^{AcoH} closed under · and {,,}", ok, w);
    }

    // B·M^{AcoH} ⊆ M^{AcoH}
    {
        bool ok = true;
        Witness w;
        for (const auto& b : ia.combined.basis())
            for (const auto& v : im.combined.basis()) {
                Vec<F> bv = m.act(b, v);
                if (!im.combined.contains(bv)) {
                    ok = false;
                    w = Witness{{render_vec(b, a.space()), render_vec(v, m.space)},
                                render_vec(bv, m.space), "an element of M^{AcoH}"};
                    break;
                }
            }
        record("acoh_module_closed", "A^{AcoH}·M^{AcoH} ⊆ M^{AcoH}", ok, w);
    }

    return report;
}

// Nambu algebra of dimension p³ graded over k[C₃] by total degree mod 3; the
// bracket drops total degree by exactly 3, so the grading is compatible.
inline ComodulePoissonTriLieAlgebra<Fp> nambu_graded(std::uint64_t p) {
    PoissonTriLieAlgebra<Fp> base = nambu_truncated(p);
    const Fp one(1, p);
    auto hopf = std::make_shared<const HopfStructure<Fp>>(group_algebra<Fp>(3, one));
    const int n = base.space().dim;
    const int q = static_cast<int>(p);
    Matrix<Fp> rho(n * 3, n);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                int idx = (a * q + b) * q + c;
                int deg = (a + b + c) % 3;
                rho.at(idx * 3 + deg, idx) = one;
            }
    ComodulePoissonTriLieAlgebra<Fp> out;
    out.base = std::move(base);
    out.coaction = Coaction<Fp>(out.base.space(), hopf,
                                LinearMap<Fp>(out.base.space(),
                                              tensor_space(out.base.space(), hopf->space()),
                                              std::move(rho)));
    out.hopf = std::move(hopf);
    return out;
}

} // namespace trihopf

#endif
