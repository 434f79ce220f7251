#ifndef TRIHOPF_TENSOR_HPP
#define TRIHOPF_TENSOR_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "trihopf/linalg.hpp"

namespace trihopf {

// Multilinear map with up to three input slots and one output slot, stored as
// a sorted list of nonzero structure constants. Entry (i..., k, c) contributes
// c·e_k to the value on the input basis tuple (e_i...).
template <Field F>
class SparseTensor {
public:
    static constexpr int max_arity = 3;

    struct Entry {
        std::array<std::int32_t, max_arity + 1> idx{}; // inputs then output
        F coeff{};
    };

    SparseTensor() = default;
    SparseTensor(std::vector<int> in_dims, int out_dim)
        : in_dims_(std::move(in_dims)), out_dim_(out_dim) {
        assert(static_cast<int>(in_dims_.size()) <= max_arity);
    }

    int arity() const { return static_cast<int>(in_dims_.size()); }
    const std::vector<int>& in_dims() const { return in_dims_; }
    int out_dim() const { return out_dim_; }
    const std::vector<Entry>& entries() const { return entries_; }

    void add_entry(std::span<const int> inputs, int out, const F& c) {
        assert(static_cast<int>(inputs.size()) == arity());
        if (c.is_zero()) return;
        Entry e;
        for (int s = 0; s < arity(); ++s) {
            assert(inputs[s] >= 0 && inputs[s] < in_dims_[s]);
            e.idx[s] = inputs[s];
        }
        assert(out >= 0 && out < out_dim_);
        e.idx[arity()] = out;
        e.coeff = c;
        entries_.push_back(std::move(e));
        normalized_ = false;
    }

    // Canonical form: entries sorted by index, duplicates merged, zeros gone.
    void normalize() {
        if (normalized_) return;
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
        std::vector<Entry> merged;
        for (auto& e : entries_) {
            if (!merged.empty() && merged.back().idx == e.idx)
                merged.back().coeff += e.coeff;
            else
                merged.push_back(std::move(e));
        }
        entries_.clear();
        for (auto& e : merged)
            if (!e.coeff.is_zero()) entries_.push_back(std::move(e));
        normalized_ = true;
    }

    bool is_normalized() const { return normalized_; }

    std::size_t flat_input_count() const {
        std::size_t n = 1;
        for (int d : in_dims_) n *= static_cast<std::size_t>(d);
        return n;
    }

    std::size_t flat_input_index(const Entry& e) const {
        std::size_t f = 0;
        for (int s = 0; s < arity(); ++s) f = f * in_dims_[s] + e.idx[s];
        return f;
    }

    // Value on an input basis tuple; linear scan, use TensorTable in hot loops.
    Vec<F> eval_basis(std::span<const int> inputs) const {
        Vec<F> out(out_dim_);
        for (const Entry& e : entries_) {
            bool match = true;
            for (int s = 0; s < arity(); ++s)
                if (e.idx[s] != inputs[s]) { match = false; break; }
            if (match) out[e.idx[arity()]] += e.coeff;
        }
        return out;
    }

    // Matrix of the induced map (flattened input tensor space) → output space.
    Matrix<F> to_matrix() const {
        Matrix<F> m(out_dim_, static_cast<int>(flat_input_count()));
        for (const Entry& e : entries_)
            m.at(e.idx[arity()], static_cast<int>(flat_input_index(e))) += e.coeff;
        return m;
    }

    bool operator==(const SparseTensor& o) const {
        auto key = [](const SparseTensor& t) {
            SparseTensor c = t;
            c.normalize();
            return c.entries_;
        };
        if (in_dims_ != o.in_dims_ || out_dim_ != o.out_dim_) return false;
        auto ea = key(*this), eb = key(o);
        if (ea.size() != eb.size()) return false;
        for (std::size_t i = 0; i < ea.size(); ++i)
            if (ea[i].idx != eb[i].idx || !(ea[i].coeff == eb[i].coeff)) return false;
        return true;
    }

private:
    std::vector<int> in_dims_;
    int out_dim_ = 0;
    std::vector<Entry> entries_;
    bool normalized_ = true;
};

// Precomputed lookup from flattened input index to the contiguous run of
// entries for that basis tuple. The tensor must stay alive and normalized.
template <Field F>
class TensorTable {
public:
    using Entry = typename SparseTensor<F>::Entry;

    explicit TensorTable(const SparseTensor<F>& t) : tensor_(&t) {
        assert(t.is_normalized());
        ranges_.assign(t.flat_input_count() + 1, 0);
        const auto& es = t.entries();
        std::size_t pos = 0;
        for (std::size_t f = 0; f <= t.flat_input_count(); ++f) {
            while (pos < es.size() && t.flat_input_index(es[pos]) < f) ++pos;
            ranges_[f] = static_cast<std::uint32_t>(pos);
        }
        ranges_.back() = static_cast<std::uint32_t>(es.size());
    }

    std::span<const Entry> lookup_flat(std::size_t flat) const {
        return { tensor_->entries().data() + ranges_[flat],
                 tensor_->entries().data() + ranges_[flat + 1] };
    }

    std::span<const Entry> lookup2(int i, int j) const {
        const auto& d = tensor_->in_dims();
        return lookup_flat(static_cast<std::size_t>(i) * d[1] + j);
    }

    std::span<const Entry> lookup3(int i, int j, int k) const {
        const auto& d = tensor_->in_dims();
        return lookup_flat((static_cast<std::size_t>(i) * d[1] + j) * d[2] + k);
    }

    const SparseTensor<F>& tensor() const { return *tensor_; }

private:
    const SparseTensor<F>* tensor_;
    std::vector<std::uint32_t> ranges_;
};

// Dense accumulator with a touched-index list, so clearing between the many
// small evaluations of a basis-tuple scan costs only the touched entries.
template <Field F>
class SparseAccumulator {
public:
    explicit SparseAccumulator(int dim) : dense_(dim) {}

    void add(int i, const F& c) {
        if (c.is_zero()) return;
        if (dense_[i].is_zero()) touched_.push_back(i);
        dense_[i] += c;
    }

    void sub(int i, const F& c) {
        if (c.is_zero()) return;
        if (dense_[i].is_zero()) touched_.push_back(i);
        dense_[i] -= c;
    }

    bool all_zero() const {
        for (int i : touched_)
            if (!dense_[i].is_zero()) return false;
        return true;
    }

    Vec<F> snapshot() const { return dense_; }

    void reset() {
        for (int i : touched_) dense_[i] = F{};
        touched_.clear();
    }

private:
    Vec<F> dense_;
    std::vector<int> touched_;
};

// Contraction of one tensor slot with a (sparse) vector given as coordinate
// pairs. Used by the identity scans to evaluate nested bracket expressions.
template <Field F>
using SparseVec = std::vector<std::pair<int, F>>;

template <Field F>
SparseVec<F> sparsify(const Vec<F>& v) {
    SparseVec<F> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.emplace_back(static_cast<int>(i), v[i]);
    return out;
}

template <Field F>
Vec<F> densify(const SparseVec<F>& v, int dim) {
    Vec<F> out(dim);
    for (const auto& [i, c] : v) out[i] += c;
    return out;
}

template <Field F>
std::vector<SparseVec<F>> sparse_columns(const Matrix<F>& m) {
    std::vector<SparseVec<F>> cols(m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (!m.at(i, j).is_zero()) cols[j].emplace_back(i, m.at(i, j));
    return cols;
}

template <Field F>
Vec<F> contract2(const SparseTensor<F>& t, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> out(t.out_dim());
    for (const auto& e : t.entries()) {
        const F& ca = a[e.idx[0]];
        if (ca.is_zero()) continue;
        const F& cb = b[e.idx[1]];
        if (cb.is_zero()) continue;
        out[e.idx[2]] += ca * cb * e.coeff;
    }
    return out;
}

template <Field F>
Vec<F> contract3(const SparseTensor<F>& t, const Vec<F>& a, const Vec<F>& b, const Vec<F>& c) {
    Vec<F> out(t.out_dim());
    for (const auto& e : t.entries()) {
        const F& ca = a[e.idx[0]];
        if (ca.is_zero()) continue;
        const F& cb = b[e.idx[1]];
        if (cb.is_zero()) continue;
        const F& cc = c[e.idx[2]];
        if (cc.is_zero()) continue;
        out[e.idx[3]] += ca * cb * cc * e.coeff;
    }
    return out;
}

} // namespace trihopf

#endif
