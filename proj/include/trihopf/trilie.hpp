#ifndef TRIHOPF_TRILIE_HPP
#define TRIHOPF_TRILIE_HPP

#include <array>
#include <string>
#include <vector>

#include "trihopf/structures.hpp"

namespace trihopf {

// Ternary bracket {·,·,·}: A⊗A⊗A → A by structure constants.
template <Field F>
struct TriBracket {
    VectorSpace space;
    SparseTensor<F> bracket;

    TriBracket() = default;
    TriBracket(VectorSpace s, SparseTensor<F> b) : space(std::move(s)), bracket(std::move(b)) {
        bracket.normalize();
        if (bracket.in_dims() != std::vector<int>{space.dim, space.dim, space.dim} ||
            bracket.out_dim() != space.dim)
            throw std::invalid_argument("bracket tensor shape mismatch");
    }

    static TriBracket zero(const VectorSpace& s) {
        return TriBracket(s, SparseTensor<F>({s.dim, s.dim, s.dim}, s.dim));
    }

    Vec<F> eval(const Vec<F>& x, const Vec<F>& y, const Vec<F>& z) const {
        return contract3(bracket, x, y, z);
    }
};

// Pair action (x,y)⋄m of a 3-Lie algebra A on a module M.
template <Field F>
struct TriLieModuleAction {
    VectorSpace algebra_space;
    VectorSpace module_space;
    SparseTensor<F> action; // (A, A, M) → M

    TriLieModuleAction() = default;
    TriLieModuleAction(VectorSpace a, VectorSpace m, SparseTensor<F> act)
        : algebra_space(std::move(a)), module_space(std::move(m)), action(std::move(act)) {
        action.normalize();
        if (action.in_dims() !=
                std::vector<int>{algebra_space.dim, algebra_space.dim, module_space.dim} ||
            action.out_dim() != module_space.dim)
            throw std::invalid_argument("tri-action tensor shape mismatch");
    }

    static TriLieModuleAction zero(const VectorSpace& a, const VectorSpace& m) {
        return TriLieModuleAction(a, m, SparseTensor<F>({a.dim, a.dim, m.dim}, m.dim));
    }

    Vec<F> eval(const Vec<F>& x, const Vec<F>& y, const Vec<F>& m) const {
        return contract3(action, x, y, m);
    }

    // Matrix of m ↦ (e_i, e_j)⋄m.
    Matrix<F> pair_operator(int i, int j) const {
        Matrix<F> out(module_space.dim, module_space.dim);
        for (const auto& e : action.entries())
            if (e.idx[0] == i && e.idx[1] == j) out.at(e.idx[3], e.idx[2]) += e.coeff;
        return out;
    }
};

template <Field F>
struct PoissonTriLieAlgebra {
    AlgebraStructure<F> algebra; // commutative associative part
    TriBracket<F> bracket;       // on the same space

    const VectorSpace& space() const { return algebra.space; }
};

template <Field F>
struct PoissonTriLieModule {
    PoissonTriLieAlgebra<F> algebra;
    VectorSpace module_space;
    SparseTensor<F> a_action;          // (A, M) → M
    TriLieModuleAction<F> tri_action;  // (A, A, M) → M
};

// M = A acting on itself: a_action = multiplication, tri-action = bracket.
template <Field F>
PoissonTriLieModule<F> adjoint_module(const PoissonTriLieAlgebra<F>& p) {
    PoissonTriLieModule<F> m;
    m.algebra = p;
    m.module_space = p.space();
    m.a_action = p.algebra.mul;
    m.tri_action = TriLieModuleAction<F>(p.space(), p.space(), p.bracket.bracket);
    return m;
}

namespace detail {

// Scan driver: body(acc) accumulates lhs − rhs for the current tuple; on a
// nonzero residue, witness(labels, lhs, rhs) is queried for reporting.
template <Field F>
class IdentityScan {
public:
    IdentityScan(CheckReport& report, std::string name, std::string rule,
                 const CheckOptions& opt)
        : report_(report), name_(std::move(name)), rule_(std::move(rule)), opt_(opt) {}

    bool should_continue() const { return !failed_ || opt_.all_witnesses; }

    void record_failure(Witness w) {
        report_.add_fail(name_, rule_, std::move(w));
        failed_ = true;
    }

    void finish() {
        if (!failed_) report_.add_pass(name_, rule_);
    }

private:
    CheckReport& report_;
    std::string name_;
    std::string rule_;
    const CheckOptions& opt_;
    bool failed_ = false;
};

} // namespace detail

template <Field F>
CheckReport check_skew_symmetry(const TriBracket<F>& b, const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = b.space.dim;
    const auto& L = b.space.labels;
    TensorTable<F> t(b.bracket);
    SparseAccumulator<F> acc(n);
    detail::IdentityScan<F> scan(report, "skew_symmetry",
                                 "{x,y,z} changes sign under every transposition", opt);
    // the three transpositions: swap slots (1,2), (2,3), (1,3)
    const std::array<std::array<int, 3>, 3> perms{{{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    for (int i = 0; i < n && scan.should_continue(); ++i)
        for (int j = 0; j < n && scan.should_continue(); ++j)
            for (int k = 0; k < n && scan.should_continue(); ++k) {
                std::array<int, 3> idx{i, j, k};
                for (const auto& perm : perms) {
                    for (const auto& e : t.lookup3(i, j, k)) acc.add(e.idx[3], e.coeff);
                    std::array<int, 3> p{idx[perm[0]], idx[perm[1]], idx[perm[2]]};
                    for (const auto& e : t.lookup3(p[0], p[1], p[2])) acc.add(e.idx[3], e.coeff);
                    if (!acc.all_zero()) {
                        Vec<F> lhs(n), rhs(n);
                        for (const auto& e : t.lookup3(i, j, k)) lhs[e.idx[3]] += e.coeff;
                        for (const auto& e : t.lookup3(p[0], p[1], p[2])) {
                            rhs[e.idx[3]] -= e.coeff;
                        }
                        scan.record_failure(detail::make_witness(
                            {L[i], L[j], L[k], "swap→(" + L[p[0]] + "," + L[p[1]] + "," + L[p[2]] + ")"},
                            lhs, rhs, b.space));
                        acc.reset();
                        break;
                    }
                    acc.reset();
                }
            }
    scan.finish();
    return report;
}

// Fundamental identity on all basis 5-tuples; complete by multilinearity.
template <Field F>
CheckReport check_filippov(const TriBracket<F>& b, const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = b.space.dim;
    const auto& L = b.space.labels;
    TensorTable<F> t(b.bracket);
    SparseAccumulator<F> acc(n);
    detail::IdentityScan<F> scan(report, "fundamental_identity",
                                 "{{x,y,z},u,v} = {{x,u,v},y,z} + {{y,u,v},z,x} + {{z,u,v},x,y}",
                                 opt);
    for (int x = 0; x < n && scan.should_continue(); ++x)
        for (int y = 0; y < n && scan.should_continue(); ++y)
            for (int z = 0; z < n && scan.should_continue(); ++z) {
                auto txyz = t.lookup3(x, y, z);
                for (int u = 0; u < n && scan.should_continue(); ++u)
                    for (int v = 0; v < n; ++v) {
                        for (const auto& e : txyz)
                            for (const auto& f : t.lookup3(e.idx[3], u, v))
                                acc.add(f.idx[3], e.coeff * f.coeff);
                        for (const auto& e : t.lookup3(x, u, v))
                            for (const auto& f : t.lookup3(e.idx[3], y, z))
                                acc.sub(f.idx[3], e.coeff * f.coeff);
                        for (const auto& e : t.lookup3(y, u, v))
                            for (const auto& f : t.lookup3(e.idx[3], z, x))
                                acc.sub(f.idx[3], e.coeff * f.coeff);
                        for (const auto& e : t.lookup3(z, u, v))
                            for (const auto& f : t.lookup3(e.idx[3], x, y))
                                acc.sub(f.idx[3], e.coeff * f.coeff);
                        if (!acc.all_zero()) {
                            Vec<F> lhs(n), rhs(n);
                            for (const auto& e : txyz)
                                for (const auto& f : t.lookup3(e.idx[3], u, v))
                                    lhs[f.idx[3]] += e.coeff * f.coeff;
                            for (const auto& e : t.lookup3(x, u, v))
                                for (const auto& f : t.lookup3(e.idx[3], y, z))
                                    rhs[f.idx[3]] += e.coeff * f.coeff;
                            for (const auto& e : t.lookup3(y, u, v))
                                for (const auto& f : t.lookup3(e.idx[3], z, x))
                                    rhs[f.idx[3]] += e.coeff * f.coeff;
                            for (const auto& e : t.lookup3(z, u, v))
                                for (const auto& f : t.lookup3(e.idx[3], x, y))
                                    rhs[f.idx[3]] += e.coeff * f.coeff;
                            scan.record_failure(detail::make_witness(
                                {L[x], L[y], L[z], L[u], L[v]}, lhs, rhs, b.space));
                            acc.reset();
                            if (!opt.all_witnesses) break;
                            continue;
                        }
                        acc.reset();
                    }
            }
    scan.finish();
    return report;
}

template <Field F>
CheckReport check_trilie_module(const TriLieModuleAction<F>& m, const TriBracket<F>& b,
                                const CheckOptions& opt = {}) {
    CheckReport report;
    const int na = m.algebra_space.dim;
    const int nm = m.module_space.dim;
    const auto& LA = m.algebra_space.labels;
    const auto& LM = m.module_space.labels;
    TensorTable<F> ta(m.action);
    TensorTable<F> tb(b.bracket);
    SparseAccumulator<F> acc(nm);

    // (x,y)⋄m = −(y,x)⋄m
    {
        detail::IdentityScan<F> scan(report, "action_antisymmetry", "(x,y)⋄m = −(y,x)⋄m", opt);
        for (int i = 0; i < na && scan.should_continue(); ++i)
            for (int j = 0; j < na && scan.should_continue(); ++j)
                for (int k = 0; k < nm; ++k) {
                    for (const auto& e : ta.lookup3(i, j, k)) acc.add(e.idx[3], e.coeff);
                    for (const auto& e : ta.lookup3(j, i, k)) acc.add(e.idx[3], e.coeff);
                    if (!acc.all_zero()) {
                        Vec<F> lhs(nm), rhs(nm);
                        for (const auto& e : ta.lookup3(i, j, k)) lhs[e.idx[3]] += e.coeff;
                        for (const auto& e : ta.lookup3(j, i, k)) rhs[e.idx[3]] -= e.coeff;
                        scan.record_failure(
                            detail::make_witness({LA[i], LA[j], LM[k]}, lhs, rhs, m.module_space));
                        acc.reset();
                        if (!opt.all_witnesses) break;
                        continue;
                    }
                    acc.reset();
                }
        scan.finish();
    }

    auto act_after = [&](int x, int y, std::span<const typename SparseTensor<F>::Entry> inner,
                         SparseAccumulator<F>& a, bool negate) {
        for (const auto& e : inner)
            for (const auto& f : ta.lookup3(x, y, e.idx[3]))
                if (negate)
                    a.sub(f.idx[3], e.coeff * f.coeff);
                else
                    a.add(f.idx[3], e.coeff * f.coeff);
    };
    auto bracket_acts = [&](std::span<const typename SparseTensor<F>::Entry> br, int second, int k,
                            SparseAccumulator<F>& a, bool negate, bool bracket_in_first) {
        for (const auto& e : br)
            for (const auto& f :
                 bracket_in_first ? ta.lookup3(e.idx[3], second, k) : ta.lookup3(second, e.idx[3], k))
                if (negate)
                    a.sub(f.idx[3], e.coeff * f.coeff);
                else
                    a.add(f.idx[3], e.coeff * f.coeff);
    };

    // (x,y)⋄((u,v)⋄m) − (u,v)⋄((x,y)⋄m) = ({x,y,u},v)⋄m + (u,{x,y,v})⋄m
    {
        detail::IdentityScan<F> scan(report, "action_commutator",
                                     "(x,y)⋄((u,v)⋄m) − (u,v)⋄((x,y)⋄m) = ({x,y,u},v)⋄m + (u,{x,y,v})⋄m",
                                     opt);
        for (int x = 0; x < na && scan.should_continue(); ++x)
            for (int y = 0; y < na && scan.should_continue(); ++y)
                for (int u = 0; u < na && scan.should_continue(); ++u) {
                    auto bxyu = tb.lookup3(x, y, u);
                    for (int v = 0; v < na && scan.should_continue(); ++v) {
                        auto bxyv = tb.lookup3(x, y, v);
                        for (int k = 0; k < nm; ++k) {
                            act_after(x, y, ta.lookup3(u, v, k), acc, false);
                            act_after(u, v, ta.lookup3(x, y, k), acc, true);
                            bracket_acts(bxyu, v, k, acc, true, true);
                            bracket_acts(bxyv, u, k, acc, true, false);
                            if (!acc.all_zero()) {
                                SparseAccumulator<F> l(nm), r(nm);
                                act_after(x, y, ta.lookup3(u, v, k), l, false);
                                act_after(u, v, ta.lookup3(x, y, k), l, true);
                                bracket_acts(bxyu, v, k, r, false, true);
                                bracket_acts(bxyv, u, k, r, false, false);
                                scan.record_failure(detail::make_witness(
                                    {LA[x], LA[y], LA[u], LA[v], LM[k]}, l.snapshot(), r.snapshot(),
                                    m.module_space));
                                acc.reset();
                                if (!opt.all_witnesses) break;
                                continue;
                            }
                            acc.reset();
                        }
                    }
                }
        scan.finish();
    }

    // ({x,y,u},v)⋄m = (y,u)⋄((x,v)⋄m) − (x,u)⋄((y,v)⋄m) + (x,y)⋄((u,v)⋄m)
    {
        detail::IdentityScan<F> scan(report, "action_fundamental",
                                     "({x,y,u},v)⋄m = (y,u)⋄((x,v)⋄m) − (x,u)⋄((y,v)⋄m) + (x,y)⋄((u,v)⋄m)",
                                     opt);
        for (int x = 0; x < na && scan.should_continue(); ++x)
            for (int y = 0; y < na && scan.should_continue(); ++y)
                for (int u = 0; u < na && scan.should_continue(); ++u) {
                    auto bxyu = tb.lookup3(x, y, u);
                    for (int v = 0; v < na && scan.should_continue(); ++v)
                        for (int k = 0; k < nm; ++k) {
                            bracket_acts(bxyu, v, k, acc, false, true);
                            act_after(y, u, ta.lookup3(x, v, k), acc, true);
                            act_after(x, u, ta.lookup3(y, v, k), acc, false);
                            act_after(x, y, ta.lookup3(u, v, k), acc, true);
                            if (!acc.all_zero()) {
                                SparseAccumulator<F> l(nm), r(nm);
                                bracket_acts(bxyu, v, k, l, false, true);
                                act_after(y, u, ta.lookup3(x, v, k), r, false);
                                act_after(x, u, ta.lookup3(y, v, k), r, true);
                                act_after(x, y, ta.lookup3(u, v, k), r, false);
                                scan.record_failure(detail::make_witness(
                                    {LA[x], LA[y], LA[u], LA[v], LM[k]}, l.snapshot(), r.snapshot(),
                                    m.module_space));
                                acc.reset();
                                if (!opt.all_witnesses) break;
                                continue;
                            }
                            acc.reset();
                        }
                }
        scan.finish();
    }

    return report;
}

template <Field F>
CheckReport check_poisson_trilie(const PoissonTriLieAlgebra<F>& p, const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = p.space().dim;
    const auto& L = p.space().labels;
    TensorTable<F> tb(p.bracket.bracket);
    TensorTable<F> tm(p.algebra.mul);
    SparseAccumulator<F> acc(n);

    // {x,y,uv} = u{x,y,v} + {x,y,u}v
    {
        detail::IdentityScan<F> scan(report, "leibniz_rule", "{x,y,uv} = u{x,y,v} + {x,y,u}v", opt);
        for (int x = 0; x < n && scan.should_continue(); ++x)
            for (int y = 0; y < n && scan.should_continue(); ++y) {
                for (int u = 0; u < n && scan.should_continue(); ++u) {
                    auto bxyu = tb.lookup3(x, y, u);
                    for (int v = 0; v < n; ++v) {
                        for (const auto& e : tm.lookup2(u, v))
                            for (const auto& f : tb.lookup3(x, y, e.idx[2]))
                                acc.add(f.idx[3], e.coeff * f.coeff);
                        for (const auto& e : tb.lookup3(x, y, v))
                            for (const auto& f : tm.lookup2(u, e.idx[3]))
                                acc.sub(f.idx[2], e.coeff * f.coeff);
                        for (const auto& e : bxyu)
                            for (const auto& f : tm.lookup2(e.idx[3], v))
                                acc.sub(f.idx[2], e.coeff * f.coeff);
                        if (!acc.all_zero()) {
                            Vec<F> lhs(n), rhs(n);
                            for (const auto& e : tm.lookup2(u, v))
                                for (const auto& f : tb.lookup3(x, y, e.idx[2]))
                                    lhs[f.idx[3]] += e.coeff * f.coeff;
                            for (const auto& e : tb.lookup3(x, y, v))
                                for (const auto& f : tm.lookup2(u, e.idx[3]))
                                    rhs[f.idx[2]] += e.coeff * f.coeff;
                            for (const auto& e : bxyu)
                                for (const auto& f : tm.lookup2(e.idx[3], v))
                                    rhs[f.idx[2]] += e.coeff * f.coeff;
                            scan.record_failure(detail::make_witness({L[x], L[y], L[u], L[v]}, lhs,
                                                                     rhs, p.space()));
                            acc.reset();
                            if (!opt.all_witnesses) break;
                            continue;
                        }
                        acc.reset();
                    }
                }
            }
        scan.finish();
    }

    // consequence: {x,y,1} = 0
    {
        detail::IdentityScan<F> scan(report, "bracket_kills_unit", "{x,y,1} = 0", opt);
        Vec<F> zero(n);
        for (int x = 0; x < n && scan.should_continue(); ++x)
            for (int y = 0; y < n; ++y) {
                Vec<F> val(n);
                for (const auto& e : p.bracket.bracket.entries())
                    if (e.idx[0] == x && e.idx[1] == y && !p.algebra.unit[e.idx[2]].is_zero())
                        val[e.idx[3]] += e.coeff * p.algebra.unit[e.idx[2]];
                if (!vec_is_zero(val)) {
                    scan.record_failure(
                        detail::make_witness({L[x], L[y], "1"}, val, zero, p.space()));
                    if (!opt.all_witnesses) break;
                }
            }
        scan.finish();
    }

    return report;
}

template <Field F>
CheckReport check_poisson_module(const PoissonTriLieModule<F>& pm, const CheckOptions& opt = {}) {
    CheckReport report;
    const int na = pm.algebra.space().dim;
    const int nm = pm.module_space.dim;
    const auto& LA = pm.algebra.space().labels;
    const auto& LM = pm.module_space.labels;
    TensorTable<F> ta(pm.a_action);
    TensorTable<F> tt(pm.tri_action.action);
    TensorTable<F> tb(pm.algebra.bracket.bracket);
    TensorTable<F> tm(pm.algebra.algebra.mul);
    SparseAccumulator<F> acc(nm);

    // (xy,z)⋄m = x·((y,z)⋄m) + y·((x,z)⋄m)
    {
        detail::IdentityScan<F> scan(report, "action_leibniz_pair",
                                     "(xy,z)⋄m = x·((y,z)⋄m) + y·((x,z)⋄m)", opt);
        for (int x = 0; x < na && scan.should_continue(); ++x)
            for (int y = 0; y < na && scan.should_continue(); ++y) {
                auto mxy = tm.lookup2(x, y);
                for (int z = 0; z < na && scan.should_continue(); ++z)
                    for (int k = 0; k < nm; ++k) {
                        for (const auto& e : mxy)
                            for (const auto& f : tt.lookup3(e.idx[2], z, k))
                                acc.add(f.idx[3], e.coeff * f.coeff);
                        for (const auto& e : tt.lookup3(y, z, k))
                            for (const auto& f : ta.lookup2(x, e.idx[3]))
                                acc.sub(f.idx[2], e.coeff * f.coeff);
                        for (const auto& e : tt.lookup3(x, z, k))
                            for (const auto& f : ta.lookup2(y, e.idx[3]))
                                acc.sub(f.idx[2], e.coeff * f.coeff);
                        if (!acc.all_zero()) {
                            Vec<F> lhs(nm), rhs(nm);
                            for (const auto& e : mxy)
                                for (const auto& f : tt.lookup3(e.idx[2], z, k))
                                    lhs[f.idx[3]] += e.coeff * f.coeff;
                            for (const auto& e : tt.lookup3(y, z, k))
                                for (const auto& f : ta.lookup2(x, e.idx[3]))
                                    rhs[f.idx[2]] += e.coeff * f.coeff;
                            for (const auto& e : tt.lookup3(x, z, k))
                                for (const auto& f : ta.lookup2(y, e.idx[3]))
                                    rhs[f.idx[2]] += e.coeff * f.coeff;
                            scan.record_failure(detail::make_witness({LA[x], LA[y], LA[z], LM[k]},
                                                                     lhs, rhs, pm.module_space));
                            acc.reset();
                            if (!opt.all_witnesses) break;
                            continue;
                        }
                        acc.reset();
                    }
            }
        scan.finish();
    }

    // (x,y)⋄(z·m) = {x,y,z}·m + z·((x,y)⋄m)
    {
        detail::IdentityScan<F> scan(report, "action_derivation",
                                     "(x,y)⋄(z·m) = {x,y,z}·m + z·((x,y)⋄m)", opt);
        for (int x = 0; x < na && scan.should_continue(); ++x)
            for (int y = 0; y < na && scan.should_continue(); ++y)
                for (int z = 0; z < na && scan.should_continue(); ++z) {
                    auto bxyz = tb.lookup3(x, y, z);
                    for (int k = 0; k < nm; ++k) {
                        for (const auto& e : ta.lookup2(z, k))
                            for (const auto& f : tt.lookup3(x, y, e.idx[2]))
                                acc.add(f.idx[3], e.coeff * f.coeff);
                        for (const auto& e : bxyz)
                            for (const auto& f : ta.lookup2(e.idx[3], k))
                                acc.sub(f.idx[2], e.coeff * f.coeff);
                        for (const auto& e : tt.lookup3(x, y, k))
                            for (const auto& f : ta.lookup2(z, e.idx[3]))
                                acc.sub(f.idx[2], e.coeff * f.coeff);
                        if (!acc.all_zero()) {
                            Vec<F> lhs(nm), rhs(nm);
                            for (const auto& e : ta.lookup2(z, k))
                                for (const auto& f : tt.lookup3(x, y, e.idx[2]))
                                    lhs[f.idx[3]] += e.coeff * f.coeff;
                            for (const auto& e : bxyz)
                                for (const auto& f : ta.lookup2(e.idx[3], k))
                                    rhs[f.idx[2]] += e.coeff * f.coeff;
                            for (const auto& e : tt.lookup3(x, y, k))
                                for (const auto& f : ta.lookup2(z, e.idx[3]))
                                    rhs[f.idx[2]] += e.coeff * f.coeff;
                            scan.record_failure(detail::make_witness({LA[x], LA[y], LA[z], LM[k]},
                                                                     lhs, rhs, pm.module_space));
                            acc.reset();
                            if (!opt.all_witnesses) break;
                            continue;
                        }
                        acc.reset();
                    }
                }
        scan.finish();
    }

    // consequence of the pair Leibniz rule at x = y = 1: (1,z)⋄m = 0
    {
        detail::IdentityScan<F> scan(report, "unit_pair_acts_trivially", "(1,z)⋄m = 0", opt);
        Vec<F> zero(nm);
        const Vec<F>& unit = pm.algebra.algebra.unit;
        for (int z = 0; z < na && scan.should_continue(); ++z)
            for (int k = 0; k < nm; ++k) {
                Vec<F> val(nm);
                for (const auto& e : pm.tri_action.action.entries())
                    if (e.idx[1] == z && e.idx[2] == k && !unit[e.idx[0]].is_zero())
                        val[e.idx[3]] += e.coeff * unit[e.idx[0]];
                if (!vec_is_zero(val)) {
                    scan.record_failure(
                        detail::make_witness({"1", LA[z], LM[k]}, val, zero, pm.module_space));
                    if (!opt.all_witnesses) break;
                }
            }
        scan.finish();
    }

    return report;
}

// A^A = {b : {b, A, A} = 0}, computed by iterated kernel intersection over
// basis pairs.
template <Field F>
Subspace<F> trilie_center(const PoissonTriLieAlgebra<F>& p, const F& one) {
    const int n = p.space().dim;
    Subspace<F> current = Subspace<F>::whole(p.space(), one);
    TensorTable<F> tb(p.bracket.bracket);
    for (int i = 0; i < n && current.dim() > 0; ++i)
        for (int j = i + 1; j < n && current.dim() > 0; ++j) {
            Matrix<F> op(n, n); // column k = {e_k, e_i, e_j}
            for (int k = 0; k < n; ++k)
                for (const auto& e : tb.lookup3(k, i, j)) op.at(e.idx[3], k) += e.coeff;
            Matrix<F> restricted = op * current.inclusion().matrix;
            std::vector<Vec<F>> ker = nullspace(restricted, one);
            std::vector<Vec<F>> ambient_vecs;
            for (const auto& kv : ker) ambient_vecs.push_back(current.inclusion().matrix.apply(kv));
            current = Subspace<F>::span(p.space(), ambient_vecs);
        }
    return current;
}

// M^A = {m : (x,y)⋄m = 0 for all x,y}.
template <Field F>
Subspace<F> module_invariants(const TriLieModuleAction<F>& act, const F& one) {
    const int na = act.algebra_space.dim;
    const int nm = act.module_space.dim;
    Subspace<F> current = Subspace<F>::whole(act.module_space, one);
    TensorTable<F> ta(act.action);
    for (int i = 0; i < na && current.dim() > 0; ++i)
        for (int j = i + 1; j < na && current.dim() > 0; ++j) {
            Matrix<F> op(nm, nm);
            for (int k = 0; k < nm; ++k)
                for (const auto& e : ta.lookup3(i, j, k)) op.at(e.idx[3], k) += e.coeff;
            Matrix<F> restricted = op * current.inclusion().matrix;
            std::vector<Vec<F>> ker = nullspace(restricted, one);
            std::vector<Vec<F>> ambient_vecs;
            for (const auto& kv : ker) ambient_vecs.push_back(current.inclusion().matrix.apply(kv));
            current = Subspace<F>::span(act.module_space, ambient_vecs);
        }
    return current;
}

namespace nambu_detail {

struct Monomial {
    int a = 0, b = 0, c = 0; // exponents of x, y, z
};

inline std::string monomial_label(const Monomial& m) {
    std::string out;
    auto append = [&](char var, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += var;
        if (e > 1) out += "^" + std::to_string(e);
    };
    append('x', m.a);
    append('y', m.b);
    append('z', m.c);
    return out.empty() ? "1" : out;
}

} // namespace nambu_detail

// Truncated polynomial algebra F_p[x,y,z]/(x^p, y^p, z^p) with the Jacobian
// determinant bracket {f,g,h} = det ∂(f,g,h)/∂(x,y,z). Well defined in
// characteristic p because the derivative of x^p vanishes.
inline PoissonTriLieAlgebra<Fp> nambu_truncated(std::uint64_t p) {
    if (p < 3 || !is_prime_u64(p))
        throw std::invalid_argument("nambu_truncated needs a prime p >= 3");
    const int q = static_cast<int>(p);
    const int n = q * q * q;
    using M = nambu_detail::Monomial;
    auto index_of = [q](const M& m) { return (m.a * q + m.b) * q + m.c; };
    std::vector<std::string> labels(n);
    std::vector<M> mons(n);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                M m{a, b, c};
                mons[index_of(m)] = m;
                labels[index_of(m)] = nambu_detail::monomial_label(m);
            }
    VectorSpace space(n, labels);
    const Fp one(1, p);

    SparseTensor<Fp> mul({n, n}, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            M s{mons[i].a + mons[j].a, mons[i].b + mons[j].b, mons[i].c + mons[j].c};
            if (s.a >= q || s.b >= q || s.c >= q) continue;
            std::array<int, 2> idx{i, j};
            mul.add_entry(std::span<const int>(idx), index_of(s), one);
        }
    mul.normalize();
    Vec<Fp> unit(n);
    unit[index_of(M{0, 0, 0})] = one;
    AlgebraStructure<Fp> alg(space, std::move(mul), std::move(unit));

    // ∂_slot of a monomial: (coefficient, reduced monomial); zero if exponent 0
    auto derivative = [&](const M& m, int slot) -> std::pair<Fp, M> {
        int e = slot == 0 ? m.a : (slot == 1 ? m.b : m.c);
        if (e == 0) return {Fp(), m};
        M d = m;
        if (slot == 0) --d.a;
        else if (slot == 1) --d.b;
        else --d.c;
        return {Fp::from_int(e, p), d};
    };

    SparseTensor<Fp> bracket({n, n, n}, n);
    const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    const std::array<int, 6> sign{1, 1, 1, -1, -1, -1};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SparseAccumulator<Fp> acc(n);
                for (int s = 0; s < 6; ++s) {
                    auto [c1, m1] = derivative(mons[i], perms[s][0]);
                    if (c1.is_zero()) continue;
                    auto [c2, m2] = derivative(mons[j], perms[s][1]);
                    if (c2.is_zero()) continue;
                    auto [c3, m3] = derivative(mons[k], perms[s][2]);
                    if (c3.is_zero()) continue;
                    M prod{m1.a + m2.a + m3.a, m1.b + m2.b + m3.b, m1.c + m2.c + m3.c};
                    if (prod.a >= q || prod.b >= q || prod.c >= q) continue;
                    Fp term = c1 * c2 * c3;
                    if (sign[s] < 0) term = -term;
                    acc.add(index_of(prod), term);
                }
                Vec<Fp> val = acc.snapshot();
                for (int w = 0; w < n; ++w)
                    if (!val[w].is_zero()) {
                        std::array<int, 3> idx{i, j, k};
                        bracket.add_entry(std::span<const int>(idx), w, val[w]);
                    }
            }
    bracket.normalize();

    PoissonTriLieAlgebra<Fp> out;
    out.algebra = std::move(alg);
    out.bracket = TriBracket<Fp>(space, std::move(bracket));
    return out;
}

} // namespace trihopf

#endif
