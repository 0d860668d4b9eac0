/**
 * @file sparse.hpp
 * @brief Column-major sparse matrices over an exact or floating scalar type.
 *
 * Columns enumerate outgoing transitions of a configuration, which is the
 * access pattern both verification (column sums, detailed balance) and the
 * simulator need. Entries are kept deduplicated and free of explicit zeros.
 */
#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace pasep {

template <class S>
class SparseOp {
  public:
    SparseOp() : dim_(0) {}
    explicit SparseOp(long dim) : dim_(dim), cols_(dim) {}

    long dim() const { return dim_; }

    /** Add v to entry (row, col); drops the entry if it cancels to zero. */
    void add(long row, long col, const S& v) {
        check(row, col);
        if (v == scalar_traits<S>::zero()) return;
        auto& c = cols_[col];
        auto it = c.find(row);
        if (it == c.end()) {
            c.emplace(row, v);
        } else {
            it->second = it->second + v;
            if (it->second == scalar_traits<S>::zero()) c.erase(it);
        }
    }

    void set(long row, long col, const S& v) {
        check(row, col);
        if (v == scalar_traits<S>::zero())
            cols_[col].erase(row);
        else
            cols_[col][row] = v;
    }

    S get(long row, long col) const {
        check(row, col);
        auto it = cols_[col].find(row);
        return it == cols_[col].end() ? scalar_traits<S>::zero() : it->second;
    }

    const std::map<long, S>& column(long col) const { return cols_.at(col); }

    static SparseOp identity(long dim) {
        SparseOp r(dim);
        for (long i = 0; i < dim; ++i) r.set(i, i, scalar_traits<S>::one());
        return r;
    }

    static SparseOp diagonal(const std::vector<S>& d) {
        SparseOp r(static_cast<long>(d.size()));
        for (long i = 0; i < r.dim_; ++i) r.set(i, i, d[i]);
        return r;
    }

    SparseOp transpose() const {
        SparseOp r(dim_);
        for (long j = 0; j < dim_; ++j)
            for (const auto& [i, v] : cols_[j]) r.set(j, i, v);
        return r;
    }

    SparseOp operator+(const SparseOp& o) const {
        require_same_dim(o);
        SparseOp r = *this;
        for (long j = 0; j < dim_; ++j)
            for (const auto& [i, v] : o.cols_[j]) r.add(i, j, v);
        return r;
    }

    SparseOp operator-(const SparseOp& o) const {
        require_same_dim(o);
        SparseOp r = *this;
        for (long j = 0; j < dim_; ++j)
            for (const auto& [i, v] : o.cols_[j])
                r.add(i, j, scalar_traits<S>::zero() - v);
        return r;
    }

    SparseOp operator*(const SparseOp& o) const {
        require_same_dim(o);
        SparseOp r(dim_);
        for (long j = 0; j < dim_; ++j)
            for (const auto& [k, bv] : o.cols_[j])
                for (const auto& [i, av] : cols_[k]) r.add(i, j, av * bv);
        return r;
    }

    SparseOp scaled(const S& s) const {
        SparseOp r(dim_);
        if (s == scalar_traits<S>::zero()) return r;
        for (long j = 0; j < dim_; ++j)
            for (const auto& [i, v] : cols_[j]) r.set(i, j, v * s);
        return r;
    }

    /** Matrix-vector product (this * x). */
    std::vector<S> apply(const std::vector<S>& x) const {
        if (static_cast<long>(x.size()) != dim_)
            throw std::invalid_argument("apply: dimension mismatch");
        std::vector<S> y(dim_, scalar_traits<S>::zero());
        for (long j = 0; j < dim_; ++j) {
            if (x[j] == scalar_traits<S>::zero()) continue;
            for (const auto& [i, v] : cols_[j]) y[i] = y[i] + v * x[j];
        }
        return y;
    }

    S column_sum(long col) const {
        S s = scalar_traits<S>::zero();
        for (const auto& [i, v] : cols_.at(col)) s = s + v;
        return s;
    }

    long nnz() const {
        long c = 0;
        for (const auto& col : cols_) c += static_cast<long>(col.size());
        return c;
    }

    /** Largest absolute entry, as the scalar type. */
    S max_abs() const {
        S m = scalar_traits<S>::zero();
        for (long j = 0; j < dim_; ++j)
            for (const auto& [i, v] : cols_[j]) {
                S a = scalar_traits<S>::abs(v);
                if (a > m) m = a;
            }
        return m;
    }

    bool operator==(const SparseOp& o) const {
        return dim_ == o.dim_ && cols_ == o.cols_;
    }

    /** Visit entries in (col, row) order. */
    void for_each(const std::function<void(long, long, const S&)>& f) const {
        for (long j = 0; j < dim_; ++j)
            for (const auto& [i, v] : cols_[j]) f(i, j, v);
    }

    /**
     * Text triplet dump `row col value`, one entry per line, sorted by
     * (col, row), with 1-based indices matching the iota basis order.
     */
    void dump(std::ostream& os) const {
        for_each([&os](long i, long j, const S& v) {
            os << (i + 1) << " " << (j + 1) << " " << scalar_traits<S>::str(v)
               << "\n";
        });
    }

  private:
    void check(long row, long col) const {
        if (row < 0 || row >= dim_ || col < 0 || col >= dim_)
            throw std::out_of_range("sparse index out of range");
    }
    void require_same_dim(const SparseOp& o) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument("operator dimension mismatch");
    }

    long dim_;
    std::vector<std::map<long, S>> cols_;
};

/** Max-abs difference between two operators (exact zero means equality). */
template <class S>
S max_abs_diff(const SparseOp<S>& a, const SparseOp<S>& b) {
    return (a - b).max_abs();
}

/** Commutator [A, B] = AB - BA. */
template <class S>
SparseOp<S> commutator(const SparseOp<S>& a, const SparseOp<S>& b) {
    return a * b - b * a;
}

}  // namespace pasep
