#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rlclab/field.hpp"

namespace rlclab {

/// Thrown when a linear system with a full-rank coefficient matrix has no
/// solution. For honestly constructed inputs this cannot happen, so it
/// usually indicates corrupted bookkeeping upstream.
struct inconsistent_system : std::runtime_error {
    inconsistent_system() : std::runtime_error("inconsistent linear system") {}
};

/// Sorted, duplicate-free set of row indices (0-based).
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(std::vector<std::size_t> indices) : idx_(std::move(indices)) {
        for (std::size_t i = 1; i < idx_.size(); ++i) {
            if (idx_[i - 1] >= idx_[i]) {
                throw std::invalid_argument("indices must be strictly increasing");
            }
        }
    }

    static IndexSet all(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = i;
        }
        return IndexSet(std::move(v));
    }

    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    std::size_t operator[](std::size_t i) const { return idx_[i]; }

    bool contains(std::size_t value) const {
        return std::binary_search(idx_.begin(), idx_.end(), value);
    }

    void insert(std::size_t value) {
        const auto it = std::lower_bound(idx_.begin(), idx_.end(), value);
        if (it != idx_.end() && *it == value) {
            return;
        }
        idx_.insert(it, value);
    }

    void erase(std::size_t value) {
        const auto it = std::lower_bound(idx_.begin(), idx_.end(), value);
        if (it != idx_.end() && *it == value) {
            idx_.erase(it);
        }
    }

    /// Indices in [0, n) not present in this set.
    IndexSet complement(std::size_t n) const {
        std::vector<std::size_t> out;
        out.reserve(n - std::min(n, idx_.size()));
        std::size_t j = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (j < idx_.size() && idx_[j] == i) {
                ++j;
            } else {
                out.push_back(i);
            }
        }
        return IndexSet(std::move(out));
    }

    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

    bool operator==(const IndexSet&) const = default;

private:
    std::vector<std::size_t> idx_;
};

/// Dense row-major matrix over a prime field.
class FMatrix {
public:
    FMatrix() = default;

    FMatrix(std::size_t rows, std::size_t cols, FieldSpec field)
        : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

    FMatrix(std::size_t rows, std::size_t cols, FieldSpec field, std::vector<Fel> data)
        : rows_(rows), cols_(cols), field_(field), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("matrix data size mismatch");
        }
        for (const Fel v : data_) {
            if (!field_.valid(v)) {
                throw std::invalid_argument("matrix entry outside field");
            }
        }
    }

    static FMatrix identity(std::size_t n, FieldSpec field) {
        FMatrix m(n, n, field);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Fel operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Fel& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Fel> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<Fel> row(std::size_t r) {
        return {data_.data() + r * cols_, cols_};
    }

    void append_row(std::span<const Fel> values) {
        if (values.size() != cols_) {
            throw std::invalid_argument("row length mismatch");
        }
        for (const Fel v : values) {
            if (!field_.valid(v)) {
                throw std::invalid_argument("row entry outside field");
            }
        }
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    FMatrix select_rows(const IndexSet& rows) const {
        FMatrix out(rows.size(), cols_, field_);
        std::size_t r = 0;
        for (const std::size_t src : rows) {
            if (src >= rows_) {
                throw std::out_of_range("row index outside matrix");
            }
            std::copy_n(data_.data() + src * cols_, cols_, out.data_.data() + r * cols_);
            ++r;
        }
        return out;
    }

    FMatrix transposed() const {
        FMatrix out(cols_, rows_, field_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Fel v) { return v == 0; });
    }

    bool operator==(const FMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    FieldSpec field_{};
    std::vector<Fel> data_;
};

inline FMatrix operator*(const FMatrix& a, const FMatrix& b) {
    if (a.cols() != b.rows() || !(a.field() == b.field())) {
        throw std::invalid_argument("matrix product dimension mismatch");
    }
    const std::uint64_t q = a.field().q;
    FMatrix out(a.rows(), b.cols(), a.field());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t av = a(r, k);
            if (av == 0) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) = static_cast<Fel>((out(r, c) + av * b(k, c)) % q);
            }
        }
    }
    return out;
}

inline FMatrix operator+(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.field() == b.field())) {
        throw std::invalid_argument("matrix sum shape mismatch");
    }
    FMatrix out(a.rows(), a.cols(), a.field());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a.field().add(a(r, c), b(r, c));
        }
    }
    return out;
}

inline FMatrix operator-(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.field() == b.field())) {
        throw std::invalid_argument("matrix difference shape mismatch");
    }
    FMatrix out(a.rows(), a.cols(), a.field());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a.field().sub(a(r, c), b(r, c));
        }
    }
    return out;
}

/// Maintains a basis of received rows in reduced echelon form so that each
/// added row costs O(rank * cols). Used by the simulator to track receiver
/// decodability packet by packet.
class RankTracker {
public:
    RankTracker(std::size_t cols, FieldSpec field) : cols_(cols), field_(field) {}

    std::size_t rank() const { return basis_.size(); }
    bool complete() const { return basis_.size() == cols_; }

    /// Returns true if the row was independent of the basis (rank grew).
    bool add_row(std::span<const Fel> row) {
        if (row.size() != cols_) {
            throw std::invalid_argument("row length mismatch");
        }
        if (complete()) {
            return false;
        }
        std::vector<Fel> work(row.begin(), row.end());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Fel factor = work[pivot_[i]];
            if (factor != 0) {
                subtract_scaled(work, basis_[i], factor);
            }
        }
        const auto first = std::find_if(work.begin(), work.end(), [](Fel v) { return v != 0; });
        if (first == work.end()) {
            return false;
        }
        const auto pivot = static_cast<std::size_t>(first - work.begin());
        const Fel scale = field_.inv(work[pivot]);
        for (Fel& v : work) {
            v = field_.mul(v, scale);
        }
        // keep earlier basis rows reduced against the new pivot
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Fel factor = basis_[i][pivot];
            if (factor != 0) {
                subtract_scaled(basis_[i], work, factor);
            }
        }
        basis_.push_back(std::move(work));
        pivot_.push_back(pivot);
        return true;
    }

private:
    void subtract_scaled(std::vector<Fel>& target, const std::vector<Fel>& source, Fel factor) {
        for (std::size_t c = 0; c < cols_; ++c) {
            target[c] = field_.sub(target[c], field_.mul(factor, source[c]));
        }
    }

    std::size_t cols_;
    FieldSpec field_;
    std::vector<std::vector<Fel>> basis_;
    std::vector<std::size_t> pivot_;
};

/// Row rank by Gaussian elimination. Pivots are the first nonzero entry in
/// the current column, lowest row index first, so results are deterministic.
inline std::size_t rank(FMatrix m) {
    const FieldSpec f = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m(pivot, c) == 0) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != r) {
            for (std::size_t j = c; j < m.cols(); ++j) {
                std::swap(m(pivot, j), m(r, j));
            }
        }
        const Fel scale = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) {
            m(r, j) = f.mul(m(r, j), scale);
        }
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Fel factor = m(i, c);
            if (factor == 0) {
                continue;
            }
            for (std::size_t j = c; j < m.cols(); ++j) {
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
            }
        }
        ++r;
    }
    return r;
}

/// Solves A * U = B for U. Returns the unique solution when rank(A) equals
/// the number of unknown rows (A's column count); nullopt when A is rank
/// deficient. Throws inconsistent_system if rank(A) is full but no solution
/// exists, which cannot happen for B built as A * U.
inline std::optional<FMatrix> solve(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows() || !(a.field() == b.field())) {
        throw std::invalid_argument("solve: row count or field mismatch");
    }
    const FieldSpec f = a.field();
    const std::size_t k = a.cols();
    const std::size_t l = b.cols();
    FMatrix left = a;
    FMatrix right = b;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t pivot = r;
        while (pivot < left.rows() && left(pivot, c) == 0) {
            ++pivot;
        }
        if (pivot == left.rows()) {
            continue;
        }
        if (pivot != r) {
            for (std::size_t j = 0; j < k; ++j) {
                std::swap(left(pivot, j), left(r, j));
            }
            for (std::size_t j = 0; j < l; ++j) {
                std::swap(right(pivot, j), right(r, j));
            }
        }
        const Fel scale = f.inv(left(r, c));
        for (std::size_t j = 0; j < k; ++j) {
            left(r, j) = f.mul(left(r, j), scale);
        }
        for (std::size_t j = 0; j < l; ++j) {
            right(r, j) = f.mul(right(r, j), scale);
        }
        for (std::size_t i = 0; i < left.rows(); ++i) {
            if (i == r) {
                continue;
            }
            const Fel factor = left(i, c);
            if (factor == 0) {
                continue;
            }
            for (std::size_t j = 0; j < k; ++j) {
                left(i, j) = f.sub(left(i, j), f.mul(factor, left(r, j)));
            }
            for (std::size_t j = 0; j < l; ++j) {
                right(i, j) = f.sub(right(i, j), f.mul(factor, right(r, j)));
            }
        }
        ++r;
    }
    if (r < k) {
        return std::nullopt;
    }
    for (std::size_t i = k; i < right.rows(); ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            if (right(i, j) != 0) {
                throw inconsistent_system();
            }
        }
    }
    FMatrix u(k, l, f);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            u(i, j) = right(i, j);
        }
    }
    return u;
}

struct StandardForm {
    FMatrix gp;            ///< [I_K ; P'], same shape as the input
    FMatrix basis_change;  ///< invertible K x K matrix B with gp = g * B
};

/// Reduces the top K x K block of g to the identity using elementary column
/// operations only, as required to put a generator matrix in standard form.
/// Throws if the top block is rank deficient.
inline StandardForm to_standard_form(const FMatrix& g) {
    const std::size_t k = g.cols();
    if (g.rows() < k) {
        throw std::invalid_argument("standard form needs at least K rows");
    }
    const FieldSpec f = g.field();
    FMatrix w = g;
    FMatrix b = FMatrix::identity(k, f);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t pivot = i;
        while (pivot < k && w(i, pivot) == 0) {
            ++pivot;
        }
        if (pivot == k) {
            throw std::invalid_argument("top K x K block is rank deficient");
        }
        if (pivot != i) {
            for (std::size_t r = 0; r < w.rows(); ++r) {
                std::swap(w(r, i), w(r, pivot));
            }
            for (std::size_t r = 0; r < k; ++r) {
                std::swap(b(r, i), b(r, pivot));
            }
        }
        const Fel scale = f.inv(w(i, i));
        for (std::size_t r = 0; r < w.rows(); ++r) {
            w(r, i) = f.mul(w(r, i), scale);
        }
        for (std::size_t r = 0; r < k; ++r) {
            b(r, i) = f.mul(b(r, i), scale);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (c == i) {
                continue;
            }
            const Fel factor = w(i, c);
            if (factor == 0) {
                continue;
            }
            for (std::size_t r = 0; r < w.rows(); ++r) {
                w(r, c) = f.sub(w(r, c), f.mul(factor, w(r, i)));
            }
            for (std::size_t r = 0; r < k; ++r) {
                b(r, c) = f.sub(b(r, c), f.mul(factor, b(r, i)));
            }
        }
    }
    return {std::move(w), std::move(b)};
}

/// Result of a spark computation. The spark of a matrix is the smallest
/// number of its columns that are linearly dependent; it is Infinite when
/// all columns are independent (the minimum ranges over an empty set), and
/// ExceededCap when the search was cut off before finding a dependent
/// subset. `exceeds(t)` answers "is spark > t" for any t <= searched cap.
struct Spark {
    enum class Kind { Finite, Infinite, ExceededCap };

    Kind kind = Kind::Infinite;
    std::size_t value = 0;  ///< set when kind == Finite
    std::size_t cap = 0;    ///< search bound that was in effect

    bool exceeds(std::size_t t) const {
        if (kind == Kind::Finite) {
            return value > t;
        }
        if (kind == Kind::Infinite) {
            return true;
        }
        if (t > cap) {
            throw std::logic_error("spark bound was not searched that far");
        }
        return true;
    }

    bool operator==(const Spark&) const = default;
};

namespace detail {

inline bool any_dependent_subset(const FMatrix& m, std::size_t s, std::vector<std::size_t>& pick,
                                 std::size_t depth, std::size_t start) {
    if (depth == s) {
        FMatrix sub(m.rows(), s, m.field());
        for (std::size_t c = 0; c < s; ++c) {
            for (std::size_t r = 0; r < m.rows(); ++r) {
                sub(r, c) = m(r, pick[c]);
            }
        }
        return rank(std::move(sub)) < s;
    }
    for (std::size_t c = start; c + (s - depth) <= m.cols(); ++c) {
        pick[depth] = c;
        if (any_dependent_subset(m, s, pick, depth + 1, c + 1)) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Exhaustive spark computation: tries every column subset of size
/// s = 1, 2, ..., cap and returns the first size with a dependent subset.
/// Exponential in the worst case; intended for desk-scale matrices only.
inline Spark spark(const FMatrix& m, std::size_t cap) {
    if (cap < 1) {
        throw std::invalid_argument("spark cap must be positive");
    }
    if (rank(m) == m.cols()) {
        return {Spark::Kind::Infinite, 0, cap};
    }
    std::vector<std::size_t> pick;
    for (std::size_t s = 1; s <= cap && s <= m.cols(); ++s) {
        pick.assign(s, 0);
        if (detail::any_dependent_subset(m, s, pick, 0, 0)) {
            return {Spark::Kind::Finite, s, cap};
        }
    }
    return {Spark::Kind::ExceededCap, 0, cap};
}

inline Spark spark(const FMatrix& m) { return spark(m, std::max<std::size_t>(m.cols(), 1)); }

}  // namespace rlclab
