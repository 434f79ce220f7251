#ifndef TRIHOPF_CONSTRUCTIONS_HPP
#define TRIHOPF_CONSTRUCTIONS_HPP

#include <functional>
#include <optional>

#include "trihopf/hopf_compat.hpp"

namespace trihopf {

// Matrix of m ↦ e_i·m for an action tensor (A, M) → M.
template <Field F>
Matrix<F> action_operator(const SparseTensor<F>& act, int i, int mdim) {
    Matrix<F> out(mdim, mdim);
    for (const auto& e : act.entries())
        if (e.idx[0] == i) out.at(e.idx[2], e.idx[1]) += e.coeff;
    return out;
}

// Matrix of m ↦ (e_i, e_j)⋄m for a pair-action tensor (A, A, M) → M.
template <Field F>
Matrix<F> pair_operator_of(const SparseTensor<F>& act, int i, int j, int mdim) {
    Matrix<F> out(mdim, mdim);
    for (const auto& e : act.entries())
        if (e.idx[0] == i && e.idx[1] == j) out.at(e.idx[3], e.idx[2]) += e.coeff;
    return out;
}

// (X ⊗ id_h) ∘ R without materialising the Kronecker factor.
template <Field F>
Matrix<F> map_tensor_id_after(const Matrix<F>& x, const Matrix<F>& r, int hdim) {
    const int cod = x.rows();
    Matrix<F> out(cod * hdim, r.cols());
    for (int j = 0; j < r.cols(); ++j)
        for (int k = 0; k < x.cols(); ++k)
            for (int a = 0; a < hdim; ++a) {
                const F& rv = r.at(k * hdim + a, j);
                if (rv.is_zero()) continue;
                for (int i = 0; i < cod; ++i) {
                    const F& xv = x.at(i, k);
                    if (!xv.is_zero()) out.at(i * hdim + a, j) += xv * rv;
                }
            }
    return out;
}

// --- linearity constraints for hom-space computation ------------------------

template <Field F>
std::function<Matrix<F>(const Matrix<F>&)> a_linearity_constraint(
    const SparseTensor<F>& act_dom, const SparseTensor<F>& act_cod, int adim, int dom_dim,
    int cod_dim) {
    std::vector<Matrix<F>> ops_dom, ops_cod;
    for (int i = 0; i < adim; ++i) {
        ops_dom.push_back(action_operator(act_dom, i, dom_dim));
        ops_cod.push_back(action_operator(act_cod, i, cod_dim));
    }
    return [ops_dom, ops_cod, adim, dom_dim, cod_dim](const Matrix<F>& x) {
        Matrix<F> out(adim * cod_dim, dom_dim);
        for (int i = 0; i < adim; ++i) {
            Matrix<F> block = x * ops_dom[i] - ops_cod[i] * x;
            for (int r = 0; r < cod_dim; ++r)
                for (int c = 0; c < dom_dim; ++c) out.at(i * cod_dim + r, c) = block.at(r, c);
        }
        return out;
    };
}

template <Field F>
std::function<Matrix<F>(const Matrix<F>&)> trilie_linearity_constraint(
    const SparseTensor<F>& tri_dom, const SparseTensor<F>& tri_cod, int adim, int dom_dim,
    int cod_dim) {
    std::vector<Matrix<F>> ops_dom, ops_cod;
    for (int i = 0; i < adim; ++i)
        for (int j = 0; j < adim; ++j) {
            ops_dom.push_back(pair_operator_of(tri_dom, i, j, dom_dim));
            ops_cod.push_back(pair_operator_of(tri_cod, i, j, cod_dim));
        }
    const int pairs = adim * adim;
    return [ops_dom, ops_cod, pairs, dom_dim, cod_dim](const Matrix<F>& x) {
        Matrix<F> out(pairs * cod_dim, dom_dim);
        for (int p = 0; p < pairs; ++p) {
            Matrix<F> block = x * ops_dom[p] - ops_cod[p] * x;
            for (int r = 0; r < cod_dim; ++r)
                for (int c = 0; c < dom_dim; ++c) out.at(p * cod_dim + r, c) = block.at(r, c);
        }
        return out;
    };
}

template <Field F>
std::function<Matrix<F>(const Matrix<F>&)> colinearity_constraint(const Matrix<F>& rho_dom,
                                                                  const Matrix<F>& rho_cod,
                                                                  int hdim) {
    return [rho_dom, rho_cod, hdim](const Matrix<F>& x) {
        return rho_cod * x - map_tensor_id_after(x, rho_dom, hdim);
    };
}

// --- pointwise property verification (first violation as witness) -----------

template <Field F>
std::optional<Witness> a_linearity_violation(const Matrix<F>& x, const SparseTensor<F>& act_dom,
                                             const SparseTensor<F>& act_cod,
                                             const VectorSpace& aspace, const VectorSpace& dom,
                                             const VectorSpace& cod) {
    for (int i = 0; i < aspace.dim; ++i) {
        Matrix<F> lhs = x * action_operator(act_dom, i, dom.dim);
        Matrix<F> rhs = action_operator(act_cod, i, cod.dim) * x;
        if (lhs != rhs)
            for (int j = 0; j < dom.dim; ++j)
                if (lhs.column(j) != rhs.column(j))
                    return Witness{{aspace.labels[i], dom.labels[j]},
                                   render_vec(lhs.column(j), cod), render_vec(rhs.column(j), cod)};
    }
    return std::nullopt;
}

template <Field F>
std::optional<Witness> trilie_linearity_violation(const Matrix<F>& x,
                                                  const SparseTensor<F>& tri_dom,
                                                  const SparseTensor<F>& tri_cod,
                                                  const VectorSpace& aspace, const VectorSpace& dom,
                                                  const VectorSpace& cod) {
    for (int i = 0; i < aspace.dim; ++i)
        for (int j = 0; j < aspace.dim; ++j) {
            Matrix<F> lhs = x * pair_operator_of(tri_dom, i, j, dom.dim);
            Matrix<F> rhs = pair_operator_of(tri_cod, i, j, cod.dim) * x;
            if (lhs != rhs)
                for (int k = 0; k < dom.dim; ++k)
                    if (lhs.column(k) != rhs.column(k))
                        return Witness{{aspace.labels[i], aspace.labels[j], dom.labels[k]},
                                       render_vec(lhs.column(k), cod),
                                       render_vec(rhs.column(k), cod)};
        }
    return std::nullopt;
}

template <Field F>
std::optional<Witness> colinearity_violation(const Matrix<F>& x, const Matrix<F>& rho_dom,
                                             const Matrix<F>& rho_cod, int hdim,
                                             const VectorSpace& dom, const VectorSpace& cod,
                                             const VectorSpace& hspace) {
    Matrix<F> lhs = rho_cod * x;
    Matrix<F> rhs = map_tensor_id_after(x, rho_dom, hdim);
    if (lhs != rhs) {
        VectorSpace ch = tensor_space(cod, hspace);
        for (int j = 0; j < dom.dim; ++j)
            if (lhs.column(j) != rhs.column(j))
                return Witness{{dom.labels[j]}, render_vec(lhs.column(j), ch),
                               render_vec(rhs.column(j), ch)};
    }
    return std::nullopt;
}

// Linear map together with the structure-compatibility properties that have
// been verified for it on all basis tuples.
template <Field F>
struct HomWitness {
    LinearMap<F> map;
    std::vector<std::string> verified; // subset of {"A-linear","3-Lie-A-linear","H-colinear","B-linear"}
};

// --- φ: H → A^A --------------------------------------------------------------

// Unital H-colinear map into the bracket center of A; the backbone of the
// section λ, the projection p and the inverse β.
template <Field F>
struct PhiMap {
    ComodulePtr<F> target;
    LinearMap<F> map; // H → A
    bool is_algebra_map = false;
};

template <Field F>
PhiMap<F> make_phi(ComodulePtr<F> a, Matrix<F> matrix) {
    const HopfStructure<F>& h = *a->hopf;
    const int hd = h.dim();
    const int n = a->space().dim;
    if (matrix.rows() != n || matrix.cols() != hd)
        throw std::invalid_argument("phi matrix must be dim(A) × dim(H)");
    PhiMap<F> phi;
    phi.target = a;
    phi.map = LinearMap<F>(h.space(), a->space(), std::move(matrix));
    F one = a->field_one();

    Vec<F> phi1 = phi.map.apply(h.algebra.unit);
    if (phi1 != a->base.algebra.unit)
        throw refusal_error("phi(1_H) != 1_A",
                            CheckResult{"phi_unital", "φ(1_H) = 1_A", Verdict::fail,
                                        Witness{{std::string("1_H")}, render_vec(phi1, a->space()),
                                                render_vec(a->base.algebra.unit, a->space())}});

    Subspace<F> center = trilie_center(a->base, one);
    for (int j = 0; j < hd; ++j) {
        Vec<F> col = phi.map.matrix.column(j);
        if (!center.contains(col))
            throw refusal_error("phi image not contained in the bracket center A^A",
                                CheckResult{"phi_into_center", "φ(H) ⊆ A^A", Verdict::fail,
                                            Witness{{h.space().labels[j]},
                                                    render_vec(col, a->space()),
                                                    "an element of A^A"}});
    }

    Matrix<F> lhs = a->coaction.rho.matrix * phi.map.matrix;
    Matrix<F> rhs = map_tensor_id_after(phi.map.matrix, h.comul.matrix, hd);
    if (lhs != rhs) {
        VectorSpace ah = tensor_space(a->space(), h.space());
        for (int j = 0; j < hd; ++j)
            if (lhs.column(j) != rhs.column(j))
                throw refusal_error("phi is not H-colinear",
                                    CheckResult{"phi_colinear", "ρ_A∘φ = (φ⊗id)∘Δ", Verdict::fail,
                                                Witness{{h.space().labels[j]},
                                                        render_vec(lhs.column(j), ah),
                                                        render_vec(rhs.column(j), ah)}});
    }

    phi.is_algebra_map = true;
    TensorTable<F> thmul(h.algebra.mul);
    for (int i = 0; i < hd && phi.is_algebra_map; ++i)
        for (int j = 0; j < hd && phi.is_algebra_map; ++j) {
            Vec<F> prod_h(hd);
            for (const auto& e : thmul.lookup2(i, j)) prod_h[e.idx[2]] += e.coeff;
            Vec<F> lhs_v = phi.map.apply(prod_h);
            Vec<F> rhs_v =
                a->base.algebra.mul_vec(phi.map.matrix.column(i), phi.map.matrix.column(j));
            if (lhs_v != rhs_v) phi.is_algebra_map = false;
        }
    return phi;
}

// φ = id for modules over A = H with the regular coaction.
template <Field F>
PhiMap<F> identity_phi(ComodulePtr<F> a) {
    return make_phi(a, Matrix<F>::identity(a->space().dim, a->field_one()));
}

// --- N⊗H ---------------------------------------------------------------------

// N⊗H for a pair-action module N: (x,y)⋄(n⊗h) = (x₍₀₎,y₍₀₎)⋄n ⊗ x₍₁₎y₍₁₎h with
// coaction n⊗h ↦ n⊗h₁⊗h₂. Carrier for hom-space transport; no A-action.
template <Field F>
struct TriLieComodule {
    VectorSpace space;
    TriLieModuleAction<F> tri_action;
    Coaction<F> coaction;
};

namespace detail {

template <Field F>
SparseTensor<F> tensor_h_tri_action(const ComodulePoissonTriLieAlgebra<F>& a,
                                    const SparseTensor<F>& n_tri, int nn) {
    const int hd = a.hopf->dim();
    const int na = a.space().dim;
    std::vector<SparseVec<F>> rho_a = sparse_columns(a.coaction.rho.matrix);
    TensorTable<F> ttri(n_tri);
    TensorTable<F> thmul(a.hopf->algebra.mul);
    SparseTensor<F> out({na, na, nn * hd}, nn * hd);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (const auto& [r1, c1] : rho_a[i])
                for (const auto& [r2, c2] : rho_a[j]) {
                    int x0 = r1 / hd, x1 = r1 % hd;
                    int y0 = r2 / hd, y1 = r2 % hd;
                    F c12 = c1 * c2;
                    for (int k = 0; k < nn; ++k)
                        for (const auto& et : ttri.lookup3(x0, y0, k))
                            for (const auto& e1 : thmul.lookup2(x1, y1))
                                for (int alpha = 0; alpha < hd; ++alpha)
                                    for (const auto& e2 : thmul.lookup2(e1.idx[2], alpha)) {
                                        std::array<int, 3> in{i, j, k * hd + alpha};
                                        out.add_entry(std::span<const int>(in),
                                                      et.idx[3] * hd + e2.idx[2],
                                                      c12 * et.coeff * e1.coeff * e2.coeff);
                                    }
                }
    out.normalize();
    return out;
}

template <Field F>
Coaction<F> tensor_h_coaction(const VectorSpace& nh_space, HopfPtr<F> hopf, int nn) {
    const HopfStructure<F>& h = *hopf;
    const int hd = h.dim();
    Matrix<F> rho(nn * hd * hd, nn * hd);
    for (int k = 0; k < nn; ++k)
        for (int alpha = 0; alpha < hd; ++alpha) {
            Vec<F> d = h.comul.matrix.column(alpha);
            for (int b = 0; b < hd; ++b)
                for (int g = 0; g < hd; ++g) {
                    const F& c = d[b * hd + g];
                    if (!c.is_zero()) rho.at((k * hd + b) * hd + g, k * hd + alpha) += c;
                }
        }
    return Coaction<F>(nh_space, hopf,
                       LinearMap<F>(nh_space, tensor_space(nh_space, h.space()), std::move(rho)));
}

} // namespace detail

template <Field F>
TriLieComodule<F> tensor_with_h_comodule(ComodulePtr<F> a, const TriLieModuleAction<F>& n) {
    const int nn = n.module_space.dim;
    TriLieComodule<F> out;
    out.space = tensor_space(n.module_space, a->hopf->space());
    out.tri_action = TriLieModuleAction<F>(a->space(), out.space,
                                           detail::tensor_h_tri_action(*a, n.action, nn));
    out.coaction = detail::tensor_h_coaction(out.space, a->hopf, nn);
    return out;
}

// Full module variant: adds x·(n⊗h) = x₍₀₎·n ⊗ x₍₁₎h, which needs H commutative.
template <Field F>
PoissonTriLieHopfModule<F> tensor_with_h(ComodulePtr<F> a, const VectorSpace& n_space,
                                         const SparseTensor<F>& n_a_action,
                                         const SparseTensor<F>& n_tri_action) {
    const HopfStructure<F>& h = *a->hopf;
    if (!h.algebra.is_commutative())
        throw refusal_error(
            "the module structure on N⊗H needs a commutative H",
            CheckResult{"tensor_with_h_commutative", "H commutative", Verdict::fail, std::nullopt});
    const int hd = h.dim();
    const int na = a->space().dim;
    const int nn = n_space.dim;
    std::vector<SparseVec<F>> rho_a = sparse_columns(a->coaction.rho.matrix);
    TensorTable<F> tact(n_a_action);
    TensorTable<F> thmul(h.algebra.mul);

    SparseTensor<F> a_act({na, nn * hd}, nn * hd);
    for (int i = 0; i < na; ++i)
        for (const auto& [r, c] : rho_a[i]) {
            int x0 = r / hd, x1 = r % hd;
            for (int k = 0; k < nn; ++k)
                for (const auto& e : tact.lookup2(x0, k))
                    for (int alpha = 0; alpha < hd; ++alpha)
                        for (const auto& eh : thmul.lookup2(x1, alpha)) {
                            std::array<int, 2> in{i, k * hd + alpha};
                            a_act.add_entry(std::span<const int>(in), e.idx[2] * hd + eh.idx[2],
                                            c * e.coeff * eh.coeff);
                        }
        }
    a_act.normalize();

    PoissonTriLieHopfModule<F> out;
    out.algebra = a;
    out.space = tensor_space(n_space, h.space());
    out.a_action = std::move(a_act);
    out.tri_action = TriLieModuleAction<F>(a->space(), out.space,
                                           detail::tensor_h_tri_action(*a, n_tri_action, nn));
    out.coaction = detail::tensor_h_coaction(out.space, a->hopf, nn);
    return out;
}

// --- γ and γ′ (hom-space transport) ------------------------------------------

// γ(f) = (id_N ⊗ ε) ∘ f  for f: M → N⊗H.
template <Field F>
LinearMap<F> gamma_of(const HopfStructure<F>& h, const VectorSpace& n_space,
                      const LinearMap<F>& f) {
    const int hd = h.dim();
    const int nn = n_space.dim;
    Matrix<F> out(nn, f.domain.dim);
    for (int j = 0; j < f.domain.dim; ++j)
        for (int k = 0; k < nn; ++k) {
            F acc{};
            for (int alpha = 0; alpha < hd; ++alpha) {
                const F& c = f.matrix.at(k * hd + alpha, j);
                if (!c.is_zero()) acc += c * h.counit_of(alpha);
            }
            out.at(k, j) = acc;
        }
    return LinearMap<F>(f.domain, n_space, std::move(out));
}

// γ′(g) = (g ⊗ id_H) ∘ ρ_M  for g: M → N.
template <Field F>
LinearMap<F> gamma_prime_of(const Coaction<F>& rho_m, const LinearMap<F>& g) {
    const int hd = rho_m.hopf->dim();
    Matrix<F> m = map_tensor_id_after(g.matrix, rho_m.rho.matrix, hd);
    return LinearMap<F>(rho_m.module_space, tensor_space(g.codomain, rho_m.hopf->space()),
                        std::move(m));
}

// --- λ: M⊗H → M (the section of ρ_M) ------------------------------------------

template <Field F>
struct LambdaResult {
    LinearMap<F> lambda; // M⊗H → M
    CheckReport report;  // section identity, colinearity, pair-action linearity
};

// λ(m⊗h) = φ(h·S⁻¹(m₍₁₎))·m₍₀₎. Runs when H is commutative or φ is an algebra
// map; otherwise refuses.
template <Field F>
LambdaResult<F> lambda_section(const PoissonTriLieHopfModule<F>& m, const PhiMap<F>& phi) {
    const ComodulePoissonTriLieAlgebra<F>& a = *m.algebra;
    const HopfStructure<F>& h = *a.hopf;
    const bool h_comm = h.algebra.is_commutative();
    if (!h_comm && !phi.is_algebra_map)
        throw refusal_error(
            "lambda needs a commutative H or an algebra-map phi; neither holds",
            CheckResult{"lambda_hypothesis", "H commutative or φ an algebra map", Verdict::fail,
                        std::nullopt});

    const int hd = h.dim();
    const int nm = m.space.dim;
    std::vector<SparseVec<F>> rho_m = sparse_columns(m.coaction.rho.matrix);
    std::vector<SparseVec<F>> sinv = sparse_columns(h.antipode_inv.matrix);
    std::vector<SparseVec<F>> phi_cols = sparse_columns(phi.map.matrix);
    TensorTable<F> thmul(h.algebra.mul);
    TensorTable<F> tact(m.a_action);

    Matrix<F> lam(nm, nm * hd);
    for (int k = 0; k < nm; ++k)
        for (const auto& [r, c] : rho_m[k]) {
            int m0 = r / hd, m1 = r % hd;
            for (int alpha = 0; alpha < hd; ++alpha)
                for (const auto& [s_idx, s_c] : sinv[m1])
                    for (const auto& eh : thmul.lookup2(alpha, s_idx)) {
                        F ch = c * s_c * eh.coeff;
                        for (const auto& [a_idx, a_c] : phi_cols[eh.idx[2]])
                            for (const auto& ea : tact.lookup2(a_idx, m0))
                                lam.at(ea.idx[2], k * hd + alpha) += ch * a_c * ea.coeff;
                    }
        }

    LambdaResult<F> out;
    VectorSpace mh = tensor_space(m.space, h.space());
    out.lambda = LinearMap<F>(mh, m.space, std::move(lam));

    // λ∘ρ_M = id_M
    F one = a.field_one();
    Matrix<F> comp = out.lambda.matrix * m.coaction.rho.matrix;
    detail::check_map_identity(out.report, "lambda_section_identity", "λ∘ρ_M = id_M",
                               LinearMap<F>(m.space, m.space, comp),
                               LinearMap<F>::identity(m.space, one));

    // H-colinearity of λ: ρ_M∘λ = (λ⊗id)∘ρ_{M⊗H}, with ρ_{M⊗H} = id⊗Δ
    Coaction<F> rho_mh = detail::tensor_h_coaction(mh, a.hopf, nm);
    if (auto w = colinearity_violation(out.lambda.matrix, rho_mh.rho.matrix,
                                       m.coaction.rho.matrix, hd, mh, m.space, h.space()))
        out.report.add_fail("lambda_colinear", "ρ_M∘λ = (λ⊗id)∘ρ_{M⊗H}", *w);
    else
        out.report.add_pass("lambda_colinear", "ρ_M∘λ = (λ⊗id)∘ρ_{M⊗H}");

    // pair-action linearity of λ against the N⊗H action on M⊗H
    SparseTensor<F> tri_mh = detail::tensor_h_tri_action(a, m.tri_action.action, nm);
    if (auto w = trilie_linearity_violation(out.lambda.matrix, tri_mh, m.tri_action.action,
                                            a.space(), mh, m.space))
        out.report.add_fail("lambda_trilie_linear", "λ((x,y)⋄t) = (x,y)⋄λ(t)", *w);
    else
        out.report.add_pass("lambda_trilie_linear", "λ((x,y)⋄t) = (x,y)⋄λ(t)");

    return out;
}

// --- p_M: M → M ---------------------------------------------------------------

template <Field F>
struct ProjectionResult {
    LinearMap<F> p;
    Subspace<F> coinv;  // M^coH
    CheckReport report; // idempotence and image identification
};

// p_M(m) = φ(S⁻¹(m₍₁₎))·m₍₀₎; a projection of M onto its coinvariants.
template <Field F>
ProjectionResult<F> p_projection(const PoissonTriLieHopfModule<F>& m, const PhiMap<F>& phi) {
    const ComodulePoissonTriLieAlgebra<F>& a = *m.algebra;
    const HopfStructure<F>& h = *a.hopf;
    const int hd = h.dim();
    const int nm = m.space.dim;
    std::vector<SparseVec<F>> rho_m = sparse_columns(m.coaction.rho.matrix);
    std::vector<SparseVec<F>> sinv = sparse_columns(h.antipode_inv.matrix);
    std::vector<SparseVec<F>> phi_cols = sparse_columns(phi.map.matrix);
    TensorTable<F> tact(m.a_action);

    Matrix<F> p(nm, nm);
    for (int k = 0; k < nm; ++k)
        for (const auto& [r, c] : rho_m[k]) {
            int m0 = r / hd, m1 = r % hd;
            for (const auto& [s_idx, s_c] : sinv[m1]) {
                F cs = c * s_c;
                for (const auto& [a_idx, a_c] : phi_cols[s_idx])
                    for (const auto& ea : tact.lookup2(a_idx, m0))
                        p.at(ea.idx[2], k) += cs * a_c * ea.coeff;
            }
        }

    ProjectionResult<F> out;
    out.p = LinearMap<F>(m.space, m.space, std::move(p));
    F one = a.field_one();
    out.coinv = coinvariants(m.coaction, one);

    if (out.p.matrix * out.p.matrix == out.p.matrix)
        out.report.add_pass("p_idempotent", "p_M² = p_M");
    else {
        Matrix<F> sq = out.p.matrix * out.p.matrix;
        CheckReport tmp;
        detail::check_map_identity(tmp, "p_idempotent", "p_M² = p_M",
                                   LinearMap<F>(m.space, m.space, sq), out.p);
        out.report.merge(tmp);
    }

    Subspace<F> img = image(out.p);
    if (img == out.coinv)
        out.report.add_pass("p_image", "Im p_M = M^coH");
    else
        out.report.add_fail("p_image", "Im p_M = M^coH",
                            Witness{{}, "dim Im p = " + std::to_string(img.dim()),
                                    "dim M^coH = " + std::to_string(out.coinv.dim())});
    return out;
}

// ⋄′ = p_M ∘ ⋄ as a structure-constant tensor.
template <Field F>
SparseTensor<F> prime_action_tensor(const PoissonTriLieHopfModule<F>& m, const LinearMap<F>& p) {
    const int na = m.algebra->space().dim;
    const int nm = m.space.dim;
    std::vector<SparseVec<F>> pc = sparse_columns(p.matrix);
    SparseTensor<F> out({na, na, nm}, nm);
    for (const auto& e : m.tri_action.action.entries())
        for (const auto& [r, c] : pc[e.idx[3]]) {
            std::array<int, 3> in{e.idx[0], e.idx[1], e.idx[2]};
            out.add_entry(std::span<const int>(in), r, e.coeff * c);
        }
    out.normalize();
    return out;
}

// First basis tuple (x, y, v) with (x,y)⋄′v ≠ 0 for v running over a subspace
// basis; nullopt when ⋄′ is trivial there.
template <Field F>
std::optional<Witness> prime_nontriviality_witness(const PoissonTriLieHopfModule<F>& m,
                                                   const LinearMap<F>& p,
                                                   const Subspace<F>& sub) {
    const int na = m.algebra->space().dim;
    const auto& LA = m.algebra->space().labels;
    TensorTable<F> tt(m.tri_action.action);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (const auto& v : sub.basis()) {
                Vec<F> acted(m.space.dim);
                for (std::size_t k = 0; k < v.size(); ++k) {
                    if (v[k].is_zero()) continue;
                    for (const auto& e : tt.lookup3(i, j, static_cast<int>(k)))
                        acted[e.idx[3]] += v[k] * e.coeff;
                }
                Vec<F> val = p.apply(acted);
                if (!vec_is_zero(val))
                    return Witness{{LA[i], LA[j], render_vec(v, m.space)},
                                   render_vec(val, m.space), "0"};
            }
    return std::nullopt;
}

// The projection compatibility identities relating p, φ and the two actions:
//   (1) p_M(a·m) = p_A(a)·p_M(m)
//   (2) (x,y)⋄′p_M(m) = (x,y)⋄′m
//   (3) (M,⋄′) satisfies the pair-action module axioms
//   (4) (x,y)⋄p_M(m) = φ(x₍₁₎y₍₁₎)·((x₍₀₎,y₍₀₎)⋄′p_M(m))
//   (5) φ(m₍₁₎)·p_M(m₍₀₎) = m
// Needs φ to be an H-colinear algebra map.
template <Field F>
CheckReport check_prime_action_identities(const PoissonTriLieHopfModule<F>& m,
                                          const PhiMap<F>& phi) {
    if (!phi.is_algebra_map)
        throw refusal_error(
            "projection identities need an algebra-map phi",
            CheckResult{"phi_algebra_map", "φ(hk) = φ(h)φ(k)", Verdict::fail, std::nullopt});
    CheckReport report;
    const ComodulePoissonTriLieAlgebra<F>& a = *m.algebra;
    const HopfStructure<F>& h = *a.hopf;
    const int hd = h.dim();
    const int na = a.space().dim;
    const int nm = m.space.dim;
    F one = a.field_one();

    PoissonTriLieHopfModule<F> a_self = self_module(m.algebra);
    LinearMap<F> p_m = p_projection(m, phi).p;
    LinearMap<F> p_a = p_projection(a_self, phi).p;
    SparseTensor<F> prime = prime_action_tensor(m, p_m);
    TensorTable<F> tact(m.a_action);
    TensorTable<F> tprime(prime);
    TensorTable<F> tt(m.tri_action.action);
    std::vector<SparseVec<F>> rho_a = sparse_columns(a.coaction.rho.matrix);
    std::vector<SparseVec<F>> rho_m = sparse_columns(m.coaction.rho.matrix);
    std::vector<SparseVec<F>> phi_cols = sparse_columns(phi.map.matrix);
    TensorTable<F> thmul(h.algebra.mul);

    // (1) p_M(a·m) = p_A(a)·p_M(m)
    {
        bool ok = true;
        Witness w;
        for (int i = 0; i < na && ok; ++i) {
            Vec<F> pa_i = p_a.matrix.column(i);
            for (int k = 0; k < nm && ok; ++k) {
                Vec<F> am(nm);
                for (const auto& e : tact.lookup2(i, k)) am[e.idx[2]] += e.coeff;
                Vec<F> lhs = p_m.apply(am);
                Vec<F> rhs = contract2(m.a_action, pa_i, p_m.matrix.column(k));
                if (lhs != rhs) {
                    ok = false;
                    w = detail::make_witness({a.space().labels[i], m.space.labels[k]}, lhs, rhs,
                                             m.space);
                }
            }
        }
        if (ok)
            report.add_pass("projection_action_compat", "p_M(a·m) = p_A(a)·p_M(m)");
        else
            report.add_fail("projection_action_compat", "p_M(a·m) = p_A(a)·p_M(m)", w);
    }

    // (2) (x,y)⋄′p_M(m) = (x,y)⋄′m
    {
        bool ok = true;
        Witness w;
        for (int i = 0; i < na && ok; ++i)
            for (int j = 0; j < na && ok; ++j)
                for (int k = 0; k < nm && ok; ++k) {
                    Vec<F> pm_k = p_m.matrix.column(k);
                    Vec<F> lhs(nm);
                    for (int t = 0; t < nm; ++t) {
                        if (pm_k[t].is_zero()) continue;
                        for (const auto& e : tprime.lookup3(i, j, t))
                            lhs[e.idx[3]] += pm_k[t] * e.coeff;
                    }
                    Vec<F> rhs(nm);
                    for (const auto& e : tprime.lookup3(i, j, k)) rhs[e.idx[3]] += e.coeff;
                    if (lhs != rhs) {
                        ok = false;
                        w = detail::make_witness(
                            {a.space().labels[i], a.space().labels[j], m.space.labels[k]}, lhs, rhs,
                            m.space);
                    }
                }
        if (ok)
            report.add_pass("prime_projection_invariance", "(x,y)⋄′p_M(m) = (x,y)⋄′m");
        else
            report.add_fail("prime_projection_invariance", "(x,y)⋄′p_M(m) = (x,y)⋄′m", w);
    }

    // (3) (M, ⋄′) is a pair-action module
    {
        TriLieModuleAction<F> prime_act(a.space(), m.space, prime);
        CheckReport sub = check_trilie_module(prime_act, a.base.bracket);
        for (const auto& c : sub.checks()) {
            CheckResult renamed = c;
            renamed.name = "prime_" + renamed.name;
            report.add(std::move(renamed));
        }
    }

    // (4) (x,y)⋄p_M(m) = φ(x₍₁₎y₍₁₎)·((x₍₀₎,y₍₀₎)⋄′p_M(m))
    {
        bool ok = true;
        Witness w;
        for (int i = 0; i < na && ok; ++i)
            for (int j = 0; j < na && ok; ++j)
                for (int k = 0; k < nm && ok; ++k) {
                    Vec<F> pm_k = p_m.matrix.column(k);
                    Vec<F> lhs(nm);
                    for (int t = 0; t < nm; ++t) {
                        if (pm_k[t].is_zero()) continue;
                        for (const auto& e : tt.lookup3(i, j, t)) lhs[e.idx[3]] += pm_k[t] * e.coeff;
                    }
                    Vec<F> rhs(nm);
                    for (const auto& [r1, c1] : rho_a[i])
                        for (const auto& [r2, c2] : rho_a[j]) {
                            int x0 = r1 / hd, x1 = r1 % hd;
                            int y0 = r2 / hd, y1 = r2 % hd;
                            F c12 = c1 * c2;
                            // (x0,y0)⋄′ p_M(m_k)
                            Vec<F> inner(nm);
                            for (int t = 0; t < nm; ++t) {
                                if (pm_k[t].is_zero()) continue;
                                for (const auto& e : tprime.lookup3(x0, y0, t))
                                    inner[e.idx[3]] += pm_k[t] * e.coeff;
                            }
                            for (const auto& eh : thmul.lookup2(x1, y1))
                                for (const auto& [a_idx, a_c] : phi_cols[eh.idx[2]]) {
                                    F cc = c12 * eh.coeff * a_c;
                                    for (int t = 0; t < nm; ++t) {
                                        if (inner[t].is_zero()) continue;
                                        for (const auto& ea : tact.lookup2(a_idx, t))
                                            rhs[ea.idx[2]] += cc * inner[t] * ea.coeff;
                                    }
                                }
                        }
                    if (lhs != rhs) {
                        ok = false;
                        w = detail::make_witness(
                            {a.space().labels[i], a.space().labels[j], m.space.labels[k]}, lhs, rhs,
                            m.space);
                    }
                }
        if (ok)
            report.add_pass("prime_untwist", "(x,y)⋄p_M(m) = φ(x₍₁₎y₍₁₎)·((x₍₀₎,y₍₀₎)⋄′p_M(m))");
        else
            report.add_fail("prime_untwist", "(x,y)⋄p_M(m) = φ(x₍₁₎y₍₁₎)·((x₍₀₎,y₍₀₎)⋄′p_M(m))", w);
    }

    // (5) φ(m₍₁₎)·p_M(m₍₀₎) = m
    {
        Matrix<F> comp(nm, nm);
        for (int k = 0; k < nm; ++k)
            for (const auto& [r, c] : rho_m[k]) {
                int m0 = r / hd, m1 = r % hd;
                Vec<F> pm0 = p_m.matrix.column(m0);
                for (const auto& [a_idx, a_c] : phi_cols[m1]) {
                    F cc = c * a_c;
                    for (int t = 0; t < nm; ++t) {
                        if (pm0[t].is_zero()) continue;
                        for (const auto& ea : tact.lookup2(a_idx, t))
                            comp.at(ea.idx[2], k) += cc * pm0[t] * ea.coeff;
                    }
                }
            }
        detail::check_map_identity(report, "projection_reconstruction", "φ(m₍₁₎)·p_M(m₍₀₎) = m",
                                   LinearMap<F>(m.space, m.space, comp),
                                   LinearMap<F>::identity(m.space, one));
    }

    return report;
}

// --- example generator: A ⊗ k[C_n] graded by the group leg --------------------

template <Field F>
struct GradedProductExample {
    ComodulePtr<F> algebra;
    Matrix<F> phi; // 1_A ⊗ g^i  ←  g^i
};

// A⊗k[C_n] with componentwise product, bracket {a⊗u, b⊗v, c⊗w} = {a,b,c}⊗uvw
// and coaction reading off the group leg. The bracket does not lower the
// group degree, so ⋄′ is nontrivial on the coinvariants whenever the bracket
// of A is nonzero.
template <Field F>
GradedProductExample<F> group_graded_product(const PoissonTriLieAlgebra<F>& a, int order) {
    F one = a.algebra.field_one();
    auto hopf = std::make_shared<const HopfStructure<F>>(group_algebra<F>(order, one));
    const int n = a.space().dim;
    const int g = order;
    VectorSpace space = tensor_space(a.space(), hopf->space());

    SparseTensor<F> mul({n * g, n * g}, n * g);
    for (const auto& e : a.algebra.mul.entries())
        for (int u = 0; u < g; ++u)
            for (int v = 0; v < g; ++v) {
                std::array<int, 2> in{e.idx[0] * g + u, e.idx[1] * g + v};
                mul.add_entry(std::span<const int>(in), e.idx[2] * g + (u + v) % g, e.coeff);
            }
    mul.normalize();
    Vec<F> unit(n * g);
    for (int i = 0; i < n; ++i)
        if (!a.algebra.unit[i].is_zero()) unit[i * g + 0] = a.algebra.unit[i];
    AlgebraStructure<F> alg(space, std::move(mul), std::move(unit));

    SparseTensor<F> bracket({n * g, n * g, n * g}, n * g);
    for (const auto& e : a.bracket.bracket.entries())
        for (int u = 0; u < g; ++u)
            for (int v = 0; v < g; ++v)
                for (int w = 0; w < g; ++w) {
                    std::array<int, 3> in{e.idx[0] * g + u, e.idx[1] * g + v, e.idx[2] * g + w};
                    bracket.add_entry(std::span<const int>(in), e.idx[3] * g + (u + v + w) % g,
                                      e.coeff);
                }
    bracket.normalize();

    Matrix<F> rho(n * g * g, n * g);
    for (int i = 0; i < n; ++i)
        for (int u = 0; u < g; ++u) rho.at((i * g + u) * g + u, i * g + u) = one;

    auto out_alg = std::make_shared<ComodulePoissonTriLieAlgebra<F>>();
    out_alg->base.algebra = std::move(alg);
    out_alg->base.bracket = TriBracket<F>(space, std::move(bracket));
    out_alg->hopf = hopf;
    out_alg->coaction = Coaction<F>(
        space, hopf, LinearMap<F>(space, tensor_space(space, hopf->space()), std::move(rho)));

    GradedProductExample<F> out;
    out.algebra = out_alg;
    Matrix<F> phi(n * g, g);
    int unit_idx = -1;
    for (int i = 0; i < n; ++i)
        if (!a.algebra.unit[i].is_zero()) unit_idx = i;
    for (int u = 0; u < g; ++u) phi.at(unit_idx * g + u, u) = a.algebra.unit[unit_idx];
    out.phi = std::move(phi);
    return out;
}

} // namespace trihopf

#endif
