#ifndef TRIHOPF_STRUCTURES_HPP
#define TRIHOPF_STRUCTURES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trihopf/report.hpp"
#include "trihopf/tensor.hpp"

namespace trihopf {

// Associative unital algebra by structure constants.
template <Field F>
struct AlgebraStructure {
    VectorSpace space;
    SparseTensor<F> mul; // (A, A) → A
    Vec<F> unit;

    AlgebraStructure() = default;
    AlgebraStructure(VectorSpace s, SparseTensor<F> m, Vec<F> u)
        : space(std::move(s)), mul(std::move(m)), unit(std::move(u)) {
        mul.normalize();
        if (mul.in_dims() != std::vector<int>{space.dim, space.dim} || mul.out_dim() != space.dim)
            throw std::invalid_argument("algebra multiplication tensor shape mismatch");
        if (static_cast<int>(unit.size()) != space.dim)
            throw std::invalid_argument("algebra unit dimension mismatch");
    }

    Vec<F> mul_vec(const Vec<F>& a, const Vec<F>& b) const {
        Vec<F> out(space.dim);
        for (const auto& e : mul.entries()) {
            const F& ca = a[e.idx[0]];
            if (ca.is_zero()) continue;
            const F& cb = b[e.idx[1]];
            if (cb.is_zero()) continue;
            out[e.idx[2]] += ca * cb * e.coeff;
        }
        return out;
    }

    // Matrix of left multiplication by the vector a.
    Matrix<F> left_mult(const Vec<F>& a) const {
        Matrix<F> m(space.dim, space.dim);
        for (const auto& e : mul.entries()) {
            const F& ca = a[e.idx[0]];
            if (!ca.is_zero()) m.at(e.idx[2], e.idx[1]) += ca * e.coeff;
        }
        return m;
    }

    bool is_commutative() const {
        TensorTable<F> t(mul);
        SparseAccumulator<F> acc(space.dim);
        for (int i = 0; i < space.dim; ++i)
            for (int j = i + 1; j < space.dim; ++j) {
                for (const auto& e : t.lookup2(i, j)) acc.add(e.idx[2], e.coeff);
                for (const auto& e : t.lookup2(j, i)) acc.sub(e.idx[2], e.coeff);
                bool ok = acc.all_zero();
                acc.reset();
                if (!ok) return false;
            }
        return true;
    }

    // Multiplicative identity of the scalar field, recovered from the unit
    // vector; only dim-0 algebras lack one.
    F field_one() const {
        for (const F& c : unit)
            if (!c.is_zero()) return F::one_like(c);
        throw std::logic_error("zero unit vector: no scalar sample available");
    }
};

// Hopf algebra: comultiplication, counit, antipode and its inverse as maps.
// Column i of comul holds Δ(e_i) in the flat basis of H⊗H.
template <Field F>
struct HopfStructure {
    AlgebraStructure<F> algebra;
    LinearMap<F> comul;        // H → H⊗H
    LinearMap<F> counit;       // H → F (1-dimensional codomain)
    LinearMap<F> antipode;     // H → H
    LinearMap<F> antipode_inv; // H → H

    const VectorSpace& space() const { return algebra.space; }
    int dim() const { return algebra.space.dim; }
    F field_one() const { return algebra.field_one(); }

    F counit_of(int basis_index) const { return counit.matrix.at(0, basis_index); }
};

template <Field F>
using HopfPtr = std::shared_ptr<const HopfStructure<F>>;

// Right H-comodule structure on a space M: rho column i = ρ(e_i) ∈ M⊗H flat.
template <Field F>
struct Coaction {
    VectorSpace module_space;
    HopfPtr<F> hopf;
    LinearMap<F> rho; // M → M⊗H

    Coaction() = default;
    Coaction(VectorSpace m, HopfPtr<F> h, LinearMap<F> r)
        : module_space(std::move(m)), hopf(std::move(h)), rho(std::move(r)) {
        if (rho.matrix.rows() != module_space.dim * hopf->dim() ||
            rho.matrix.cols() != module_space.dim)
            throw std::invalid_argument("coaction shape mismatch");
    }

    // m ↦ m ⊗ 1_H.
    static Coaction trivial(const VectorSpace& m, HopfPtr<F> h) {
        Matrix<F> r(m.dim * h->dim(), m.dim);
        for (int i = 0; i < m.dim; ++i)
            for (int a = 0; a < h->dim(); ++a)
                if (!h->algebra.unit[a].is_zero())
                    r.at(i * h->dim() + a, i) = h->algebra.unit[a];
        return Coaction(m, h, LinearMap<F>(m, tensor_space(m, h->space()), std::move(r)));
    }

    // ρ = Δ: the Hopf algebra coacting on itself.
    static Coaction regular(HopfPtr<F> h) {
        return Coaction(h->space(), h,
                        LinearMap<F>(h->space(), tensor_space(h->space(), h->space()),
                                     h->comul.matrix));
    }
};

namespace detail {

template <Field F>
Witness make_witness(const std::vector<std::string>& tuple, const Vec<F>& lhs, const Vec<F>& rhs,
                     const VectorSpace& value_space) {
    return Witness{tuple, render_vec(lhs, value_space), render_vec(rhs, value_space)};
}

// Compares two maps column by column; reports the first differing basis
// element as witness.
template <Field F>
void check_map_identity(CheckReport& report, const std::string& name, const std::string& rule,
                        const LinearMap<F>& lhs, const LinearMap<F>& rhs) {
    if (lhs.matrix == rhs.matrix) {
        report.add_pass(name, rule);
        return;
    }
    for (int j = 0; j < lhs.domain.dim; ++j) {
        Vec<F> a = lhs.matrix.column(j), b = rhs.matrix.column(j);
        if (a != b) {
            report.add_fail(name, rule,
                            make_witness(std::vector<std::string>{lhs.domain.labels[j]}, a, b,
                                         lhs.codomain));
            return;
        }
    }
}

} // namespace detail

// (Δ⊗id)∘Δ and (id⊗Δ)∘Δ, both H → H⊗H⊗H with flat index ((a·h)+b)·h+c.
template <Field F>
std::pair<LinearMap<F>, LinearMap<F>> iterated_coproducts(const HopfStructure<F>& h) {
    F one = h.field_one();
    auto left = tensor_with_identity_right(h.comul, h.space(), one) * h.comul;
    auto right = tensor_with_identity_left(h.space(), h.comul, one) * h.comul;
    return {left, right};
}

// Scalar sample for rendering and witness construction: the unit if it is
// nonzero, otherwise any structure constant.
template <Field F>
std::optional<F> any_scalar(const AlgebraStructure<F>& alg) {
    for (const F& c : alg.unit)
        if (!c.is_zero()) return F::one_like(c);
    for (const auto& e : alg.mul.entries())
        if (!e.coeff.is_zero()) return F::one_like(e.coeff);
    return std::nullopt;
}

template <Field F>
CheckReport check_associative_algebra(const AlgebraStructure<F>& alg, const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = alg.space.dim;
    if (n == 0) {
        report.add_pass("algebra_axioms", "vacuous on the zero space");
        return report;
    }
    std::optional<F> sample = any_scalar(alg);
    if (!sample) {
        // everything is zero: multiplication is trivially associative but the
        // unit law cannot hold on a nonzero space
        report.add_pass("associativity", "(ab)c = a(bc)");
        report.add_fail("unit_law", "1·a = a = a·1",
                        Witness{{alg.space.labels[0]}, "0", alg.space.labels[0]});
        return report;
    }
    F one = *sample;
    const VectorSpace& A = alg.space;
    TensorTable<F> mul(alg.mul);

    // associativity on basis triples
    {
        bool failed = false;
        SparseAccumulator<F> acc(n);
        for (int i = 0; i < n && !(failed && !opt.all_witnesses); ++i)
            for (int j = 0; j < n && !(failed && !opt.all_witnesses); ++j)
                for (int k = 0; k < n; ++k) {
                    for (const auto& e : mul.lookup2(i, j))
                        for (const auto& f : mul.lookup2(e.idx[2], k))
                            acc.add(f.idx[2], e.coeff * f.coeff);
                    for (const auto& e : mul.lookup2(j, k))
                        for (const auto& f : mul.lookup2(i, e.idx[2]))
                            acc.sub(f.idx[2], e.coeff * f.coeff);
                    if (!acc.all_zero()) {
                        std::array<int, 2> ij{i, j};
                        Vec<F> ab = alg.mul.eval_basis(std::span<const int>(ij));
                        Vec<F> ek(n); ek[k] = one;
                        Vec<F> lhs = alg.mul_vec(ab, ek);
                        Vec<F> ei(n); ei[i] = one;
                        std::array<int, 2> jk{j, k};
                        Vec<F> rhs = alg.mul_vec(ei, alg.mul.eval_basis(std::span<const int>(jk)));
                        report.add_fail("associativity", "(ab)c = a(bc)",
                                        detail::make_witness(
                                            {A.labels[i], A.labels[j], A.labels[k]}, lhs, rhs, A));
                        failed = true;
                        acc.reset();
                        if (!opt.all_witnesses) break;
                        continue;
                    }
                    acc.reset();
                }
        if (!failed) report.add_pass("associativity", "(ab)c = a(bc)");
    }

    // two-sided unit
    {
        bool failed = false;
        for (int i = 0; i < n; ++i) {
            Vec<F> ei(n);
            ei[i] = one;
            Vec<F> l = alg.mul_vec(alg.unit, ei);
            Vec<F> r = alg.mul_vec(ei, alg.unit);
            if (l != ei || r != ei) {
                report.add_fail("unit_law", "1·a = a = a·1",
                                detail::make_witness({A.labels[i]}, l != ei ? l : r, ei, A));
                failed = true;
                if (!opt.all_witnesses) break;
            }
        }
        if (!failed) report.add_pass("unit_law", "1·a = a = a·1");
    }
    return report;
}

template <Field F>
CheckReport check_commutativity(const AlgebraStructure<F>& alg, const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = alg.space.dim;
    TensorTable<F> mul(alg.mul);
    SparseAccumulator<F> acc(n);
    bool failed = false;
    for (int i = 0; i < n && !(failed && !opt.all_witnesses); ++i)
        for (int j = i + 1; j < n; ++j) {
            for (const auto& e : mul.lookup2(i, j)) acc.add(e.idx[2], e.coeff);
            for (const auto& e : mul.lookup2(j, i)) acc.sub(e.idx[2], e.coeff);
            if (!acc.all_zero()) {
                Vec<F> lhs(n), rhs(n);
                for (const auto& e : mul.lookup2(i, j)) lhs[e.idx[2]] += e.coeff;
                for (const auto& e : mul.lookup2(j, i)) rhs[e.idx[2]] += e.coeff;
                report.add_fail("commutativity", "ab = ba",
                                detail::make_witness({alg.space.labels[i], alg.space.labels[j]},
                                                     lhs, rhs, alg.space));
                failed = true;
                acc.reset();
                if (!opt.all_witnesses) break;
                continue;
            }
            acc.reset();
        }
    if (!failed) report.add_pass("commutativity", "ab = ba");
    return report;
}

template <Field F>
CheckReport check_hopf_algebra(const HopfStructure<F>& h, const CheckOptions& opt = {}) {
    CheckReport report;
    const int n = h.dim();
    if (n == 0) {
        report.add_pass("hopf_axioms", "vacuous on the zero space");
        return report;
    }
    report.merge(check_associative_algebra(h.algebra, opt));
    std::optional<F> sample = any_scalar(h.algebra);
    if (!sample) {
        // a zero multiplication already failed the unit law above; the counit
        // law is the cheapest coalgebra axiom that must fail with it
        report.add_fail("counit_left", "(ε⊗id)Δ = id",
                        Witness{{h.space().labels[0]}, "0", h.space().labels[0]});
        return report;
    }
    F one = *sample;
    const VectorSpace& H = h.space();
    TensorTable<F> mul(h.algebra.mul);

    // coassociativity and counit laws
    {
        auto [left, right] = iterated_coproducts(h);
        detail::check_map_identity(report, "coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", left, right);
        auto id_h = LinearMap<F>::identity(H, one);
        auto eps_left = tensor_with_identity_right(h.counit, H, one) * h.comul; // F⊗H ≅ H
        auto eps_right = tensor_with_identity_left(H, h.counit, one) * h.comul; // H⊗F ≅ H
        // both land in a space isomorphic to H with the same flat order
        detail::check_map_identity(report, "counit_left", "(ε⊗id)Δ = id",
                                   LinearMap<F>(H, H, eps_left.matrix), id_h);
        detail::check_map_identity(report, "counit_right", "(id⊗ε)Δ = id",
                                   LinearMap<F>(H, H, eps_right.matrix), id_h);
    }

    // bialgebra compatibility
    {
        const VectorSpace HH = tensor_space(H, H);
        bool failed = false;
        for (int i = 0; i < n && !(failed && !opt.all_witnesses); ++i)
            for (int j = 0; j < n; ++j) {
                std::array<int, 2> ij{i, j};
                Vec<F> prod = h.algebra.mul.eval_basis(std::span<const int>(ij));
                Vec<F> lhs = h.comul.apply(prod);
                // Δ(e_i)Δ(e_j) with componentwise multiplication on H⊗H
                Vec<F> di = h.comul.matrix.column(i), dj = h.comul.matrix.column(j);
                Vec<F> rhs(n * n);
                for (int a1 = 0; a1 < n; ++a1)
                    for (int b1 = 0; b1 < n; ++b1) {
                        const F& c1 = di[a1 * n + b1];
                        if (c1.is_zero()) continue;
                        for (int a2 = 0; a2 < n; ++a2)
                            for (int b2 = 0; b2 < n; ++b2) {
                                const F& c2 = dj[a2 * n + b2];
                                if (c2.is_zero()) continue;
                                F c12 = c1 * c2;
                                for (const auto& ea : mul.lookup2(a1, a2))
                                    for (const auto& eb : mul.lookup2(b1, b2))
                                        rhs[ea.idx[2] * n + eb.idx[2]] += c12 * ea.coeff * eb.coeff;
                            }
                    }
                if (lhs != rhs) {
                    report.add_fail("bialgebra_comul", "Δ(ab) = Δ(a)Δ(b)",
                                    detail::make_witness({H.labels[i], H.labels[j]}, lhs, rhs, HH));
                    failed = true;
                    if (!opt.all_witnesses) break;
                }
            }
        if (!failed) report.add_pass("bialgebra_comul", "Δ(ab) = Δ(a)Δ(b)");

        Vec<F> d1 = h.comul.apply(h.algebra.unit);
        Vec<F> want(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                want[a * n + b] = h.algebra.unit[a] * h.algebra.unit[b];
        if (d1 == want)
            report.add_pass("bialgebra_unit", "Δ(1) = 1⊗1");
        else
            report.add_fail("bialgebra_unit", "Δ(1) = 1⊗1",
                            detail::make_witness({std::string("1_H")}, d1, want, tensor_space(H, H)));

        bool eps_ok = true;
        Witness eps_w;
        for (int i = 0; i < n && eps_ok; ++i)
            for (int j = 0; j < n && eps_ok; ++j) {
                std::array<int, 2> ij{i, j};
                Vec<F> prod = h.algebra.mul.eval_basis(std::span<const int>(ij));
                F lhs = h.counit.apply(prod)[0];
                F rhs = h.counit_of(i) * h.counit_of(j);
                if (!(lhs == rhs)) {
                    eps_ok = false;
                    eps_w = Witness{{H.labels[i], H.labels[j]}, lhs.str(), rhs.str()};
                }
            }
        F e1 = h.counit.apply(h.algebra.unit)[0];
        if (eps_ok && !(e1 == one)) {
            eps_ok = false;
            eps_w = Witness{{std::string("1_H")}, e1.str(), one.str()};
        }
        if (eps_ok)
            report.add_pass("bialgebra_counit", "ε(ab) = ε(a)ε(b), ε(1) = 1");
        else
            report.add_fail("bialgebra_counit", "ε(ab) = ε(a)ε(b), ε(1) = 1", eps_w);
    }

    // antipode axioms
    {
        bool failed_l = false, failed_r = false;
        for (int i = 0; i < n; ++i) {
            Vec<F> di = h.comul.matrix.column(i);
            Vec<F> lhs_l(n), lhs_r(n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const F& c = di[a * n + b];
                    if (c.is_zero()) continue;
                    Vec<F> sa = h.antipode.matrix.column(a);
                    Vec<F> eb(n); eb[b] = one;
                    Vec<F> term = h.algebra.mul_vec(sa, eb);
                    for (int t = 0; t < n; ++t) lhs_l[t] += c * term[t];
                    Vec<F> ea(n); ea[a] = one;
                    Vec<F> sb = h.antipode.matrix.column(b);
                    Vec<F> term2 = h.algebra.mul_vec(ea, sb);
                    for (int t = 0; t < n; ++t) lhs_r[t] += c * term2[t];
                }
            Vec<F> want = vec_scale(h.counit_of(i), h.algebra.unit);
            if (lhs_l != want && !failed_l) {
                report.add_fail("antipode_left", "μ(S⊗id)Δ = ηε",
                                detail::make_witness({H.labels[i]}, lhs_l, want, H));
                failed_l = true;
            }
            if (lhs_r != want && !failed_r) {
                report.add_fail("antipode_right", "μ(id⊗S)Δ = ηε",
                                detail::make_witness({H.labels[i]}, lhs_r, want, H));
                failed_r = true;
            }
            if (failed_l && failed_r && !opt.all_witnesses) break;
        }
        if (!failed_l) report.add_pass("antipode_left", "μ(S⊗id)Δ = ηε");
        if (!failed_r) report.add_pass("antipode_right", "μ(id⊗S)Δ = ηε");

        auto id_h = LinearMap<F>::identity(H, one);
        detail::check_map_identity(report, "antipode_bijective_left", "S∘S⁻¹ = id",
                                   h.antipode * h.antipode_inv, id_h);
        detail::check_map_identity(report, "antipode_bijective_right", "S⁻¹∘S = id",
                                   h.antipode_inv * h.antipode, id_h);
    }

    return report;
}

template <Field F>
CheckReport check_comodule(const Coaction<F>& c) {
    CheckReport report;
    const HopfStructure<F>& h = *c.hopf;
    if (c.module_space.dim == 0 || h.dim() == 0) {
        report.add_pass("comodule_axioms", "vacuous on the zero space");
        return report;
    }
    F one = h.field_one();
    auto lhs = tensor_with_identity_right(c.rho, h.space(), one) * c.rho; // M → M⊗H⊗H
    auto rhs = tensor_with_identity_left(c.module_space, h.comul, one) * c.rho;
    detail::check_map_identity(report, "coaction_coassociativity", "(ρ⊗id)ρ = (id⊗Δ)ρ", lhs, rhs);
    auto counit_side = tensor_with_identity_left(c.module_space, h.counit, one) * c.rho;
    detail::check_map_identity(report, "coaction_counit", "(id⊗ε)ρ = id",
                               LinearMap<F>(c.module_space, c.module_space, counit_side.matrix),
                               LinearMap<F>::identity(c.module_space, one));
    return report;
}

// Group algebra k[C_n]: basis g^0..g^{n-1}, Δ(g^i) = g^i⊗g^i, S(g^i) = g^{-i}.
template <Field F>
HopfStructure<F> group_algebra(int order, const F& one) {
    if (order < 1) throw std::invalid_argument("group algebra needs order >= 1");
    std::vector<std::string> labels;
    for (int i = 0; i < order; ++i)
        labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    VectorSpace H(order, std::move(labels));

    SparseTensor<F> mul({order, order}, order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            std::array<int, 2> idx{i, j};
            mul.add_entry(std::span<const int>(idx), (i + j) % order, one);
        }
    mul.normalize();
    Vec<F> unit(order);
    unit[0] = one;
    AlgebraStructure<F> alg(H, std::move(mul), std::move(unit));

    Matrix<F> comul(order * order, order);
    for (int i = 0; i < order; ++i) comul.at(i * order + i, i) = one;
    Matrix<F> counit(1, order);
    for (int i = 0; i < order; ++i) counit.at(0, i) = one;
    Matrix<F> antipode(order, order);
    for (int i = 0; i < order; ++i) antipode.at((order - i) % order, i) = one;

    HopfStructure<F> h;
    h.algebra = std::move(alg);
    h.comul = LinearMap<F>(H, tensor_space(H, H), std::move(comul));
    h.counit = LinearMap<F>(H, VectorSpace(1, {"F"}), std::move(counit));
    h.antipode = LinearMap<F>(H, H, antipode);
    // S(g^i) = g^{n-i}, so S∘S = id and S is its own inverse
    h.antipode_inv = LinearMap<F>(H, H, std::move(antipode));
    return h;
}

// Component operators π_a = (id ⊗ coordinate_a) ∘ ρ. For H = k[C_n] these are
// the grading projections of the comodule.
template <Field F>
std::vector<LinearMap<F>> component_operators(const Coaction<F>& c) {
    const int n = c.module_space.dim;
    const int hdim = c.hopf->dim();
    std::vector<LinearMap<F>> out;
    out.reserve(hdim);
    for (int a = 0; a < hdim; ++a) {
        Matrix<F> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = c.rho.matrix.at(i * hdim + a, j);
        out.emplace_back(c.module_space, c.module_space, std::move(m));
    }
    return out;
}

} // namespace trihopf

#endif
