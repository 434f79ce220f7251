#ifndef TRIHOPF_SIMPLICITY_HPP
#define TRIHOPF_SIMPLICITY_HPP

#include <random>

#include "trihopf/hopf_compat.hpp"

namespace trihopf {

struct SimplicityConfig {
    std::uint64_t exhaustive_limit = 1u << 14; // enumerate 1-dim generators when |F|^dim fits
    std::uint64_t seed = 20240817;
    int random_rounds = 200;
};

enum class Certainty { certified, probabilistic };

inline const char* certainty_name(Certainty c) {
    return c == Certainty::certified ? "certified" : "probabilistic";
}

template <Field F>
struct SimplicityDecision {
    bool simple = false;
    Certainty certainty = Certainty::probabilistic;
    std::string method;
    std::optional<Subspace<F>> witness_ideal; // for a non-simple verdict
};

// Operators whose common invariant subspaces are exactly the Poisson 3-Lie
// H-ideals: left multiplications, bracket pair operators, and the coaction
// component operators.
template <Field F>
std::vector<Matrix<F>> ideal_operators(const ComodulePoissonTriLieAlgebra<F>& a) {
    const int n = a.space().dim;
    std::vector<Matrix<F>> ops;
    for (int i = 0; i < n; ++i) {
        Matrix<F> l(n, n);
        for (const auto& e : a.base.algebra.mul.entries())
            if (e.idx[0] == i) l.at(e.idx[2], e.idx[1]) += e.coeff;
        if (!l.is_zero()) ops.push_back(std::move(l));
    }
    TensorTable<F> tb(a.base.bracket.bracket);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Matrix<F> t(n, n); // v ↦ {v, e_i, e_j}
            for (int k = 0; k < n; ++k)
                for (const auto& e : tb.lookup3(k, i, j)) t.at(e.idx[3], k) += e.coeff;
            if (!t.is_zero()) ops.push_back(std::move(t));
        }
    for (auto& p : component_operators(a.coaction))
        if (!p.matrix.is_zero()) ops.push_back(p.matrix);
    return ops;
}

// Smallest subspace containing v and stable under all operators.
template <Field F>
Subspace<F> spin_closure(const VectorSpace& ambient, const Vec<F>& v,
                         const std::vector<Matrix<F>>& ops, const F& /*one*/) {
    std::vector<Vec<F>> basis; // kept in echelon form
    std::vector<int> pivots;
    std::vector<Vec<F>> queue;
    auto insert = [&](Vec<F> w) -> bool {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const F& c = w[pivots[k]];
            if (c.is_zero()) continue;
            F f = c;
            for (int t = 0; t < ambient.dim; ++t)
                if (!basis[k][t].is_zero()) w[t] -= f * basis[k][t];
        }
        int piv = -1;
        for (int t = 0; t < ambient.dim; ++t)
            if (!w[t].is_zero()) { piv = t; break; }
        if (piv < 0) return false;
        F inv = w[piv].inv();
        for (int t = 0; t < ambient.dim; ++t) w[t] = inv * w[t];
        basis.push_back(w);
        pivots.push_back(piv);
        queue.push_back(std::move(w));
        return true;
    };
    insert(v);
    while (!queue.empty() && static_cast<int>(basis.size()) < ambient.dim) {
        Vec<F> w = std::move(queue.back());
        queue.pop_back();
        for (const auto& op : ops) {
            if (static_cast<int>(basis.size()) == ambient.dim) break;
            insert(op.apply(w));
        }
    }
    return Subspace<F>::span(ambient, basis);
}

template <Field F>
bool is_invariant_subspace(const std::vector<Matrix<F>>& ops, const Subspace<F>& s) {
    for (const auto& op : ops)
        for (const auto& b : s.basis())
            if (!s.contains(op.apply(b))) return false;
    return true;
}

namespace detail {

template <Field F>
std::optional<Subspace<F>> proper_closure(const VectorSpace& amb, const Vec<F>& v,
                                          const std::vector<Matrix<F>>& ops, const F& one) {
    if (vec_is_zero(v)) return std::nullopt;
    Subspace<F> s = spin_closure(amb, v, ops, one);
    if (s.dim() > 0 && s.dim() < amb.dim) return s;
    return std::nullopt;
}

// Norton test with a singular algebra element θ. Sound for any nullity;
// decisive (both ways) when the nullity is one.
template <Field F>
struct NortonOutcome {
    bool decided = false;
    bool simple = false;
    const char* how = "";
    std::optional<Subspace<F>> witness;
};

template <Field F>
NortonOutcome<F> norton_test(const VectorSpace& amb, const Matrix<F>& theta,
                             const std::vector<Matrix<F>>& ops,
                             const std::vector<Matrix<F>>& ops_t, const F& one) {
    NortonOutcome<F> out;
    std::vector<Vec<F>> ker = nullspace(theta, one);
    if (ker.empty() || static_cast<int>(ker.size()) == amb.dim) return out;
    for (const auto& v : ker)
        if (auto s = proper_closure(amb, v, ops, one)) {
            out.decided = true;
            out.simple = false;
            out.how = "kernel-vector closure witness";
            out.witness = std::move(*s);
            return out;
        }
    Matrix<F> theta_t = theta.transpose();
    std::vector<Vec<F>> kert = nullspace(theta_t, one);
    for (const auto& w : kert) {
        Subspace<F> dual_spin = spin_closure(amb, w, ops_t, one);
        if (dual_spin.dim() > 0 && dual_spin.dim() < amb.dim) {
            // the annihilator of a dual submodule is a submodule; re-verify
            // before certifying so the witness always re-evaluates, and stay
            // undecided rather than certify anything if it somehow does not
            Matrix<F> rows = Matrix<F>::from_rows(amb.dim, dual_spin.basis());
            LinearMap<F> f(amb, VectorSpace::numbered(rows.rows(), "d"), rows);
            Subspace<F> perp = kernel(f, one);
            if (perp.dim() > 0 && perp.dim() < amb.dim && is_invariant_subspace(ops, perp)) {
                out.decided = true;
                out.simple = false;
                out.how = "dual-kernel annihilator witness";
                out.witness = std::move(perp);
            }
            return out;
        }
    }
    if (ker.size() == 1) {
        // nullity one and both spins full: irreducible, certified
        out.decided = true;
        out.simple = true;
        out.how = "nullity-one element certificate";
    }
    return out;
}

} // namespace detail

// Decides whether the only subspaces stable under multiplication, the bracket
// pair operators and the coaction components are 0 and A. Certified verdicts
// come from an explicit witness ideal, from exhaustive enumeration of
// one-dimensional generators over a small finite field, or from a nullity-one
// Norton certificate; otherwise the verdict is tagged probabilistic.
template <Field F>
SimplicityDecision<F> is_poisson_h_simple(const ComodulePoissonTriLieAlgebra<F>& a,
                                          const SimplicityConfig& config = {},
                                          std::uint64_t field_order = 0) {
    SimplicityDecision<F> out;
    const int n = a.space().dim;
    const VectorSpace& amb = a.space();
    if (n == 0) {
        out.simple = false;
        out.certainty = Certainty::certified;
        out.method = "degenerate zero algebra";
        return out;
    }
    if (n == 1) {
        out.simple = true;
        out.certainty = Certainty::certified;
        out.method = "one-dimensional";
        return out;
    }
    F one = a.field_one();
    std::vector<Matrix<F>> ops = ideal_operators(a);
    if (ops.empty()) {
        // nothing constrains subspaces, so any line is a proper ideal
        Vec<F> e0(n);
        e0[0] = one;
        out.simple = false;
        out.certainty = Certainty::certified;
        out.method = "no nonzero structure operators";
        out.witness_ideal = Subspace<F>::span(amb, {e0});
        return out;
    }
    std::vector<Matrix<F>> ops_t;
    ops_t.reserve(ops.size());
    for (const auto& op : ops) ops_t.push_back(op.transpose());

    auto finish_not_simple = [&](Subspace<F> w, const std::string& method) {
        out.simple = false;
        out.certainty = Certainty::certified;
        out.method = method;
        out.witness_ideal = std::move(w);
        return out;
    };

    // deterministic closure candidates: basis vectors and pairwise sums/differences
    {
        for (int i = 0; i < n; ++i) {
            Vec<F> v(n);
            v[i] = one;
            if (auto s = detail::proper_closure(amb, v, ops, one))
                return finish_not_simple(std::move(*s), "closure of a basis vector");
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Vec<F> v(n), w(n);
                v[i] = one; v[j] = one;
                w[i] = one; w[j] = -one;
                if (auto s = detail::proper_closure(amb, v, ops, one))
                    return finish_not_simple(std::move(*s), "closure of a basis-vector sum");
                if (auto s = detail::proper_closure(amb, w, ops, one))
                    return finish_not_simple(std::move(*s), "closure of a basis-vector difference");
            }
    }

    // exhaustive enumeration of one-dimensional generators over a small field
    if (field_order > 1) {
        long double total = 1;
        for (int i = 0; i < n; ++i) total *= static_cast<long double>(field_order);
        if (total <= static_cast<long double>(config.exhaustive_limit)) {
            // vectors in projective normal form: first nonzero coordinate is 1
            for (int lead = 0; lead < n; ++lead) {
                std::vector<std::uint64_t> tail(n - lead - 1, 0);
                bool carry = false;
                while (!carry) {
                    Vec<F> v(n);
                    v[lead] = one;
                    for (int t = 0; t < n - lead - 1; ++t)
                        v[lead + 1 + t] = small_scalar(static_cast<long long>(tail[t]), one);
                    if (auto s = detail::proper_closure(amb, v, ops, one))
                        return finish_not_simple(std::move(*s), "exhaustive generator enumeration");
                    carry = true;
                    for (int t = 0; t < n - lead - 1 && carry; ++t) {
                        tail[t] = (tail[t] + 1) % field_order;
                        carry = tail[t] == 0;
                    }
                    if (n - lead - 1 == 0) break;
                }
            }
            out.simple = true;
            out.certainty = Certainty::certified;
            out.method = "exhaustive generator enumeration";
            return out;
        }
    }

    // Norton phase: deterministic pool of generators and their pairwise
    // products, then seeded random algebra elements; shifted by scalars to
    // find singular elements.
    std::vector<F> shifts;
    shifts.push_back(F{});
    if (field_order > 1 && field_order <= 1024) {
        for (std::uint64_t l = 1; l < field_order; ++l)
            shifts.push_back(small_scalar(static_cast<long long>(l), one));
    } else {
        for (long long s : {1LL, -1LL, 2LL, -2LL, 3LL, -3LL})
            shifts.push_back(small_scalar(s, one));
    }

    auto try_theta = [&](const Matrix<F>& theta0) -> std::optional<SimplicityDecision<F>> {
        for (const F& lam : shifts) {
            Matrix<F> theta = theta0;
            if (!lam.is_zero())
                theta = theta - Matrix<F>::identity(n, one).scaled(lam);
            if (theta.is_zero()) continue;
            auto res = detail::norton_test(amb, theta, ops, ops_t, one);
            if (res.decided) {
                SimplicityDecision<F> d;
                d.simple = res.simple;
                d.certainty = Certainty::certified;
                d.method = res.how;
                d.witness_ideal = std::move(res.witness);
                return d;
            }
        }
        return std::nullopt;
    };

    if (ops.size() <= 40) {
        for (const auto& g : ops)
            if (auto d = try_theta(g)) return *d;
        for (const auto& g1 : ops)
            for (const auto& g2 : ops)
                if (auto d = try_theta(g1 * g2)) return *d;
    }

    std::mt19937_64 rng(config.seed);
    auto random_scalar = [&]() {
        if (field_order > 1)
            return small_scalar(static_cast<long long>(rng() % field_order), one);
        std::uniform_int_distribution<int> d(-3, 3);
        return small_scalar(d(rng), one);
    };
    std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
    for (int round = 0; round < config.random_rounds; ++round) {
        Matrix<F> theta(n, n);
        int terms = 2 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            Matrix<F> w = ops[pick(rng)];
            int len = static_cast<int>(rng() % 2);
            for (int s = 0; s < len; ++s) w = w * ops[pick(rng)];
            theta = theta + w.scaled(random_scalar());
        }
        if (auto d = try_theta(theta)) return *d;
    }

    out.simple = true;
    out.certainty = Certainty::probabilistic;
    out.method = "randomized search found no invariant subspace";
    return out;
}

// --- the invariants subalgebra B as a field ------------------------------------

template <Field F>
struct BFieldResult {
    CheckReport report;
    Subspace<F> b;
    bool is_field = false;
    Certainty certainty = Certainty::probabilistic;
};

namespace detail {

// Structure constants of the subalgebra spanned by B, in its canonical basis;
// nullopt when B is not closed under multiplication.
template <Field F>
std::optional<SparseTensor<F>> subalgebra_mul(const ComodulePoissonTriLieAlgebra<F>& a,
                                              const Subspace<F>& b) {
    const int nb = b.dim();
    SparseTensor<F> mul({nb, nb}, nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            Vec<F> prod = a.base.algebra.mul_vec(b.basis()[i], b.basis()[j]);
            if (!b.contains(prod)) return std::nullopt;
            Vec<F> c = b.coordinates(prod);
            for (int l = 0; l < nb; ++l)
                if (!c[l].is_zero()) {
                    std::array<int, 2> in{i, j};
                    mul.add_entry(std::span<const int>(in), l, c[l]);
                }
        }
    mul.normalize();
    return mul;
}

} // namespace detail

// Certifies whether B = A^{AcoH} is a field: closure, unit membership, and
// invertibility of nonzero elements via the regular representation. Exhaustive
// over small finite fields; over infinite fields, a certified negative comes
// from an explicit zero divisor and a positive stays probabilistic unless B
// has dimension one.
template <Field F>
BFieldResult<F> verify_B_field(const ComodulePoissonTriLieAlgebra<F>& a,
                               const SimplicityConfig& config = {},
                               std::uint64_t field_order = 0) {
    BFieldResult<F> out;
    F one = a.field_one();
    InvariantSpaces<F> ia = algebra_invariant_spaces(a);
    out.b = ia.combined;
    const int nb = out.b.dim();

    if (nb == 0) {
        out.report.add_fail("b_nonzero", "B ≠ 0", Witness{{}, "dim B = 0", "dim B ≥ 1"});
        out.is_field = false;
        out.certainty = Certainty::certified;
        return out;
    }

    if (out.b.contains(a.base.algebra.unit))
        out.report.add_pass("b_contains_unit", "1_A ∈ B");
    else {
        out.report.add_fail("b_contains_unit", "1_A ∈ B",
                            Witness{{}, render_vec(a.base.algebra.unit, a.space()), "an element of B"});
        out.is_field = false;
        out.certainty = Certainty::certified;
        return out;
    }

    auto mul = detail::subalgebra_mul(a, out.b);
    if (mul)
        out.report.add_pass("b_closed", "B·B ⊆ B");
    else {
        out.report.add_fail("b_closed", "B·B ⊆ B", Witness{{}, "a product leaves B", "closure"});
        out.is_field = false;
        out.certainty = Certainty::certified;
        return out;
    }

    // left multiplication of an element of B (in B coordinates)
    auto left_mult = [&](const Vec<F>& coords) {
        Matrix<F> l(nb, nb);
        for (const auto& e : mul->entries()) {
            const F& c = coords[e.idx[0]];
            if (!c.is_zero()) l.at(e.idx[2], e.idx[1]) += c * e.coeff;
        }
        return l;
    };
    auto zero_divisor_witness = [&](const Vec<F>& coords) -> std::optional<Witness> {
        Matrix<F> l = left_mult(coords);
        std::vector<Vec<F>> ker = nullspace(l, one);
        if (ker.empty()) return std::nullopt;
        // witness in ambient coordinates: b·c = 0 with b, c ≠ 0
        Vec<F> b_amb(a.space().dim), c_amb(a.space().dim);
        for (int l2 = 0; l2 < nb; ++l2) {
            if (!coords[l2].is_zero())
                b_amb = vec_add(std::move(b_amb), vec_scale(coords[l2], out.b.basis()[l2]));
            if (!ker[0][l2].is_zero())
                c_amb = vec_add(std::move(c_amb), vec_scale(ker[0][l2], out.b.basis()[l2]));
        }
        Vec<F> prod = a.base.algebra.mul_vec(b_amb, c_amb);
        return Witness{{render_vec(b_amb, a.space()), render_vec(c_amb, a.space())},
                       render_vec(prod, a.space()), "0"};
    };

    if (nb == 1) {
        out.report.add_pass("b_invertibility", "every nonzero element of B is invertible in B");
        out.is_field = true;
        out.certainty = Certainty::certified;
        return out;
    }

    // exhaustive scan over small finite fields
    if (field_order > 1) {
        long double total = 1;
        for (int i = 0; i < nb; ++i) total *= static_cast<long double>(field_order);
        if (total <= static_cast<long double>(config.exhaustive_limit)) {
            std::vector<std::uint64_t> odo(nb, 0);
            bool carry = false;
            while (!carry) {
                carry = true;
                for (int t = 0; t < nb && carry; ++t) {
                    odo[t] = (odo[t] + 1) % field_order;
                    carry = odo[t] == 0;
                }
                if (carry) break;
                Vec<F> coords(nb);
                for (int t = 0; t < nb; ++t)
                    coords[t] = small_scalar(static_cast<long long>(odo[t]), one);
                if (auto w = zero_divisor_witness(coords)) {
                    out.report.add_fail("b_invertibility",
                                        "every nonzero element of B is invertible in B", *w);
                    out.is_field = false;
                    out.certainty = Certainty::certified;
                    return out;
                }
            }
            out.report.add_pass("b_invertibility", "every nonzero element of B is invertible in B");
            out.is_field = true;
            out.certainty = Certainty::certified;
            return out;
        }
    }

    // candidate zero divisors: basis elements, pairwise sums/differences,
    // small shifts of basis elements by the unit, then random samples
    Vec<F> unit_coords = out.b.coordinates(a.base.algebra.unit);
    std::vector<Vec<F>> candidates;
    for (int i = 0; i < nb; ++i) {
        Vec<F> v(nb);
        v[i] = one;
        candidates.push_back(v);
        for (long long s : {1LL, -1LL, 2LL, -2LL}) {
            Vec<F> w = v;
            F acc = small_scalar(s, one);
            for (int l = 0; l < nb; ++l) w[l] -= acc * unit_coords[l];
            candidates.push_back(std::move(w));
        }
    }
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            Vec<F> v(nb), w(nb);
            v[i] = one; v[j] = one;
            w[i] = one; w[j] = -one;
            candidates.push_back(v);
            candidates.push_back(w);
        }
    std::mt19937_64 rng(config.seed);
    for (int round = 0; round < config.random_rounds; ++round) {
        Vec<F> v(nb);
        std::uniform_int_distribution<int> d(-3, 3);
        for (int l = 0; l < nb; ++l) v[l] = small_scalar(d(rng), one);
        candidates.push_back(std::move(v));
    }
    for (const auto& coords : candidates) {
        if (vec_is_zero(coords)) continue;
        if (auto w = zero_divisor_witness(coords)) {
            out.report.add_fail("b_invertibility", "every nonzero element of B is invertible in B",
                                *w);
            out.is_field = false;
            out.certainty = Certainty::certified;
            return out;
        }
    }
    out.report.add_pass("b_invertibility",
                        "no zero divisor found among sampled elements (not exhaustive)");
    out.is_field = true;
    out.certainty = Certainty::probabilistic;
    return out;
}

} // namespace trihopf

#endif
