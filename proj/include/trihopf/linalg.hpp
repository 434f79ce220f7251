#ifndef TRIHOPF_LINALG_HPP
#define TRIHOPF_LINALG_HPP

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trihopf/fields.hpp"

namespace trihopf {

// Finite-dimensional space with human-readable basis labels. Labels are
// carried everywhere so failure witnesses print as basis elements, not indices.
struct VectorSpace {
    int dim = 0;
    std::vector<std::string> labels;

    VectorSpace() = default;
    VectorSpace(int d, std::vector<std::string> l) : dim(d), labels(std::move(l)) {
        if (static_cast<int>(labels.size()) != dim)
            throw std::invalid_argument("label count does not match dimension");
        std::set<std::string> seen(labels.begin(), labels.end());
        if (static_cast<int>(seen.size()) != dim)
            throw std::invalid_argument("basis labels must be distinct");
    }

    static VectorSpace numbered(int d, const std::string& prefix) {
        std::vector<std::string> l;
        l.reserve(d);
        for (int i = 0; i < d; ++i) l.push_back(prefix + std::to_string(i));
        return VectorSpace(d, std::move(l));
    }

    bool operator==(const VectorSpace& o) const { return dim == o.dim && labels == o.labels; }
};

// Tensor-product space; flat index of (i, j) is i*right.dim + j.
inline VectorSpace tensor_space(const VectorSpace& left, const VectorSpace& right) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(left.dim) * right.dim);
    for (int i = 0; i < left.dim; ++i)
        for (int j = 0; j < right.dim; ++j)
            labels.push_back(left.labels[i] + "⊗" + right.labels[j]);
    return VectorSpace(left.dim * right.dim, std::move(labels));
}

template <Field F>
using Vec = std::vector<F>;

template <Field F>
bool vec_is_zero(const Vec<F>& v) {
    for (const F& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <Field F>
Vec<F> vec_sub(Vec<F> a, const Vec<F>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <Field F>
Vec<F> vec_add(Vec<F> a, const Vec<F>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <Field F>
Vec<F> vec_scale(const F& c, Vec<F> a) {
    for (F& x : a) x = c * x;
    return a;
}

// Renders a vector as a signed combination of basis labels, e.g. "1·x + 2·y⊗g".
template <Field F>
std::string render_vec(const Vec<F>& v, const VectorSpace& space) {
    std::string out;
    for (int i = 0; i < space.dim; ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += v[i].str() + "·" + space.labels[i];
    }
    return out.empty() ? "0" : out;
}

// Dense exact matrix, row major.
template <Field F>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Matrix identity(int n, const F& one) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    static Matrix from_columns(int rows, const std::vector<Vec<F>>& cols) {
        Matrix m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols_; ++j) {
            assert(static_cast<int>(cols[j].size()) == rows);
            for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    static Matrix from_rows(int cols, const std::vector<Vec<F>>& rows) {
        Matrix m(static_cast<int>(rows.size()), cols);
        for (int i = 0; i < m.rows_; ++i) {
            assert(static_cast<int>(rows[i].size()) == cols);
            for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    F& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const F& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Vec<F> column(int j) const {
        Vec<F> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    Vec<F> row(int i) const {
        Vec<F> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    Vec<F> apply(const Vec<F>& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        Vec<F> out(rows_);
        for (int i = 0; i < rows_; ++i) {
            F acc{};
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const F& x = at(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const F& y = o.at(k, j);
                    if (!y.is_zero()) out.at(i, j) += x * y;
                }
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
        return out;
    }

    Matrix operator-() const {
        Matrix out = *this;
        for (F& x : out.a_) x = -x;
        return out;
    }

    Matrix scaled(const F& c) const {
        Matrix out = *this;
        for (F& x : out.a_) x = c * x;
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    // Kronecker product; flat index of row (i1, i2) is i1*o.rows + i2.
    Matrix kron(const Matrix& o) const {
        Matrix out(rows_ * o.rows_, cols_ * o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                const F& x = at(i, j);
                if (x.is_zero()) continue;
                for (int p = 0; p < o.rows_; ++p)
                    for (int q = 0; q < o.cols_; ++q) {
                        const F& y = o.at(p, q);
                        if (!y.is_zero()) out.at(i * o.rows_ + p, j * o.cols_ + q) = x * y;
                    }
            }
        return out;
    }

    bool is_zero() const {
        for (const F& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    // In-place reduced row echelon form; returns pivot columns in order.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int sel = -1;
            for (int i = r; i < rows_; ++i)
                if (!at(i, c).is_zero()) { sel = i; break; }
            if (sel < 0) continue;
            if (sel != r)
                for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            F piv_inv = at(r, c).inv();
            for (int j = c; j < cols_; ++j) at(r, j) = piv_inv * at(r, j);
            for (int i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                F f = at(i, c);
                for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        Matrix copy = *this;
        return static_cast<int>(copy.rref().size());
    }

    std::optional<Matrix> inverse(const F& one) const {
        if (rows_ != cols_) return std::nullopt;
        Matrix aug(rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = one;
        }
        auto piv = aug.rref();
        if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_) return std::nullopt;
        Matrix inv(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    // Solves self * x = b; empty optional when inconsistent.
    std::optional<Vec<F>> solve(const Vec<F>& b) const {
        Matrix aug(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        auto piv = aug.rref();
        if (!piv.empty() && piv.back() == cols_) return std::nullopt;
        Vec<F> x(cols_);
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(static_cast<int>(k), cols_);
        return x;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

// Nullspace basis in the canonical form induced by the reduced echelon form:
// one vector per free column, unit coordinates at free columns.
template <Field F>
std::vector<Vec<F>> nullspace(const Matrix<F>& m, const F& one) {
    Matrix<F> r = m;
    std::vector<int> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (int fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        Vec<F> v(m.cols());
        v[fc] = one;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -r.at(static_cast<int>(k), fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <Field F>
struct LinearMap {
    VectorSpace domain;
    VectorSpace codomain;
    Matrix<F> matrix; // column j = image of domain basis vector j

    LinearMap() = default;
    LinearMap(VectorSpace dom, VectorSpace cod, Matrix<F> m)
        : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
        if (matrix.rows() != codomain.dim || matrix.cols() != domain.dim)
            throw std::invalid_argument("linear map shape mismatch");
    }

    static LinearMap identity(const VectorSpace& s, const F& one) {
        return LinearMap(s, s, Matrix<F>::identity(s.dim, one));
    }

    static LinearMap zero(const VectorSpace& dom, const VectorSpace& cod) {
        return LinearMap(dom, cod, Matrix<F>(cod.dim, dom.dim));
    }

    Vec<F> apply(const Vec<F>& v) const { return matrix.apply(v); }

    // composition: (f*g)(v) = f(g(v))
    LinearMap operator*(const LinearMap& g) const {
        if (g.codomain.dim != domain.dim)
            throw std::invalid_argument("composition shape mismatch");
        return LinearMap(g.domain, codomain, matrix * g.matrix);
    }

    bool operator==(const LinearMap& o) const { return matrix == o.matrix; }
};

// f ⊗ id on the right: (f⊗id): D⊗W → C⊗W.
template <Field F>
LinearMap<F> tensor_with_identity_right(const LinearMap<F>& f, const VectorSpace& w, const F& one) {
    return LinearMap<F>(tensor_space(f.domain, w), tensor_space(f.codomain, w),
                        f.matrix.kron(Matrix<F>::identity(w.dim, one)));
}

// id ⊗ f on the left: (id⊗f): W⊗D → W⊗C.
template <Field F>
LinearMap<F> tensor_with_identity_left(const VectorSpace& w, const LinearMap<F>& f, const F& one) {
    return LinearMap<F>(tensor_space(w, f.domain), tensor_space(w, f.codomain),
                        Matrix<F>::identity(w.dim, one).kron(f.matrix));
}

// Subspace of an ambient space. The basis is the canonical reduced echelon
// basis of the span, so equal subspaces compare equal structurally.
template <Field F>
class Subspace {
public:
    Subspace() = default;

    static Subspace span(const VectorSpace& ambient, const std::vector<Vec<F>>& vectors) {
        Matrix<F> rows = Matrix<F>::from_rows(ambient.dim, vectors);
        std::vector<int> pivots = rows.rref();
        std::vector<Vec<F>> basis;
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            basis.push_back(rows.row(static_cast<int>(k)));
            labels.push_back(ambient.labels[pivots[k]]);
        }
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = std::move(basis);
        s.pivots_ = std::move(pivots);
        s.space_ = VectorSpace(static_cast<int>(s.basis_.size()), std::move(labels));
        s.inclusion_ = LinearMap<F>(s.space_, ambient,
                                    Matrix<F>::from_columns(ambient.dim, s.basis_));
        return s;
    }

    static Subspace whole(const VectorSpace& ambient, const F& one) {
        std::vector<Vec<F>> vs;
        for (int i = 0; i < ambient.dim; ++i) {
            Vec<F> v(ambient.dim);
            v[i] = one;
            vs.push_back(std::move(v));
        }
        return span(ambient, vs);
    }

    static Subspace zero(const VectorSpace& ambient) { return span(ambient, {}); }

    const VectorSpace& ambient() const { return ambient_; }
    const VectorSpace& space() const { return space_; }
    const std::vector<Vec<F>>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const LinearMap<F>& inclusion() const { return inclusion_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    // Residual of v after eliminating against the echelon basis; v lies in the
    // subspace iff the residual is zero.
    Vec<F> reduce(Vec<F> v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const F& c = v[pivots_[k]];
            if (c.is_zero()) continue;
            F f = c;
            for (int j = 0; j < ambient_.dim; ++j)
                if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
        }
        return v;
    }

    bool contains(const Vec<F>& v) const { return vec_is_zero(reduce(v)); }

    bool contains(const Subspace& other) const {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    // Coordinates of v in the echelon basis; throws when v is outside.
    Vec<F> coordinates(const Vec<F>& v) const {
        if (!contains(v)) throw std::invalid_argument("vector not in subspace");
        Vec<F> c(dim());
        for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
        return c;
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    VectorSpace ambient_;
    VectorSpace space_;
    std::vector<Vec<F>> basis_;
    std::vector<int> pivots_;
    LinearMap<F> inclusion_;
};

template <Field F>
Subspace<F> kernel(const LinearMap<F>& f, const F& one) {
    return Subspace<F>::span(f.domain, nullspace(f.matrix, one));
}

template <Field F>
Subspace<F> image(const LinearMap<F>& f) {
    std::vector<Vec<F>> cols;
    for (int j = 0; j < f.matrix.cols(); ++j) cols.push_back(f.matrix.column(j));
    return Subspace<F>::span(f.codomain, cols);
}

// Rows of the returned matrix are the linear conditions cutting out the
// subspace: v lies in s iff (matrix)·v = 0.
template <Field F>
Matrix<F> cutting_equations(const Subspace<F>& s, const F& one) {
    Matrix<F> bt = s.inclusion().matrix.transpose(); // dim(s) × ambient
    std::vector<Vec<F>> rows = nullspace(bt, one);
    return Matrix<F>::from_rows(s.ambient().dim, rows);
}

template <Field F>
Subspace<F> intersect(const std::vector<Subspace<F>>& subspaces, const F& one) {
    if (subspaces.empty()) throw std::invalid_argument("intersect needs at least one subspace");
    const VectorSpace& amb = subspaces.front().ambient();
    for (const auto& s : subspaces)
        if (!(s.ambient() == amb))
            throw std::invalid_argument("intersect: mismatched ambient spaces");
    std::vector<Vec<F>> all_rows;
    for (const auto& s : subspaces) {
        Matrix<F> eq = cutting_equations(s, one);
        for (int i = 0; i < eq.rows(); ++i) all_rows.push_back(eq.row(i));
    }
    Matrix<F> stacked = Matrix<F>::from_rows(amb.dim, all_rows);
    LinearMap<F> cond(amb, VectorSpace::numbered(stacked.rows(), "c"), stacked);
    return kernel(cond, one);
}

template <Field F>
Subspace<F> sum(const std::vector<Subspace<F>>& subspaces) {
    if (subspaces.empty()) throw std::invalid_argument("sum needs at least one subspace");
    const VectorSpace& amb = subspaces.front().ambient();
    std::vector<Vec<F>> vs;
    for (const auto& s : subspaces)
        for (const auto& b : s.basis()) vs.push_back(b);
    return Subspace<F>::span(amb, vs);
}

// Quotient ambient / relations. The projection zeroes the pivot coordinates of
// the relation basis; the section picks the unique preimage supported on the
// non-pivot coordinates.
template <Field F>
class QuotientSpace {
public:
    QuotientSpace() = default;

    QuotientSpace(const VectorSpace& ambient, Subspace<F> relations, const F& one)
        : ambient_(ambient), relations_(std::move(relations)) {
        if (!(relations_.ambient() == ambient))
            throw std::invalid_argument("quotient: relations live in a different space");
        std::vector<bool> is_pivot(ambient.dim, false);
        for (int c : relations_.pivots()) is_pivot[c] = true;
        std::vector<std::string> labels;
        std::vector<int> free_cols;
        for (int j = 0; j < ambient.dim; ++j)
            if (!is_pivot[j]) {
                free_cols.push_back(j);
                labels.push_back(ambient.labels[j]);
            }
        space_ = VectorSpace(static_cast<int>(free_cols.size()), std::move(labels));

        Matrix<F> proj(space_.dim, ambient.dim);
        for (int j = 0; j < ambient.dim; ++j) {
            Vec<F> e(ambient.dim);
            e[j] = one;
            Vec<F> red = relations_.reduce(std::move(e));
            for (int q = 0; q < space_.dim; ++q) proj.at(q, j) = red[free_cols[q]];
        }
        projection_ = LinearMap<F>(ambient, space_, std::move(proj));

        Matrix<F> sec(ambient.dim, space_.dim);
        for (int q = 0; q < space_.dim; ++q) sec.at(free_cols[q], q) = one;
        section_ = LinearMap<F>(space_, ambient, std::move(sec));
    }

    const VectorSpace& ambient() const { return ambient_; }
    const VectorSpace& space() const { return space_; }
    const Subspace<F>& relations() const { return relations_; }
    const LinearMap<F>& projection() const { return projection_; }
    const LinearMap<F>& section() const { return section_; }
    int dim() const { return space_.dim; }

private:
    VectorSpace ambient_;
    Subspace<F> relations_;
    VectorSpace space_;
    LinearMap<F> projection_;
    LinearMap<F> section_;
};

// Solution space of homogeneous linear constraints on an unknown map X:
// dom → cod. Each constraint is a linear operator on X, evaluated on the
// elementary matrices to assemble one big system; the basis of solutions is
// canonical via the echelon nullspace (maps flattened row-major).
template <Field F>
std::vector<LinearMap<F>> solve_linear_maps(
    const VectorSpace& dom, const VectorSpace& cod,
    const std::vector<std::function<Matrix<F>(const Matrix<F>&)>>& constraints,
    const F& one) {
    const int unknowns = cod.dim * dom.dim;
    if (unknowns == 0) return {};
    // evaluate each constraint on the elementary matrices and collect only the
    // output positions that are hit, keyed so rows come out in a fixed order
    std::vector<Vec<F>> constraint_rows;
    for (const auto& c : constraints) {
        std::map<int, Vec<F>> rows_by_position;
        int u = 0;
        for (int r = 0; r < cod.dim; ++r)
            for (int s = 0; s < dom.dim; ++s, ++u) {
                Matrix<F> e(cod.dim, dom.dim);
                e.at(r, s) = one;
                Matrix<F> img = c(e);
                for (int i = 0; i < img.rows(); ++i)
                    for (int j = 0; j < img.cols(); ++j) {
                        const F& v = img.at(i, j);
                        if (v.is_zero()) continue;
                        auto [it, fresh] =
                            rows_by_position.try_emplace(i * img.cols() + j, Vec<F>());
                        if (fresh) it->second.assign(unknowns, F{});
                        it->second[u] = v;
                    }
            }
        for (auto& [pos, row] : rows_by_position) constraint_rows.push_back(std::move(row));
    }
    Matrix<F> system = Matrix<F>::from_rows(unknowns, constraint_rows);
    std::vector<Vec<F>> sols = nullspace(system, one);
    std::vector<LinearMap<F>> basis;
    for (const auto& v : sols) {
        Matrix<F> m(cod.dim, dom.dim);
        for (int r = 0; r < cod.dim; ++r)
            for (int s = 0; s < dom.dim; ++s) m.at(r, s) = v[static_cast<std::size_t>(r) * dom.dim + s];
        basis.emplace_back(dom, cod, std::move(m));
    }
    return basis;
}

} // namespace trihopf

#endif
