#pragma once

// Exact linear algebra over GF(2): bit vectors, bit matrices, rank, row
// space, null space and span membership.  Everything is packed into 64-bit
// words; XOR and popcount dominate.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "matrec/caps.hpp"

namespace matrec {

// A vector over GF(2).  Addition is coordinatewise XOR, so v + v = 0.
// Comparison is lexicographic by packed words, which gives the canonical
// deterministic order used throughout the library.
class BitVec {
public:
    BitVec() = default;

    explicit BitVec(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    // Parse "0110..." with the leftmost character as coordinate 0.
    static BitVec from_string(std::string_view bits) {
        BitVec v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                v.set(i);
            else if (bits[i] != '0')
                throw std::invalid_argument("BitVec::from_string: bad character");
        }
        return v;
    }

    static BitVec unit(std::size_t length, std::size_t i) {
        BitVec v(length);
        v.set(i);
        return v;
    }

    std::size_t size() const { return len_; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        check_index(i);
        if (value)
            words_[i / 64] |= std::uint64_t{1} << (i % 64);
        else
            words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }

    void flip(std::size_t i) {
        check_index(i);
        words_[i / 64] ^= std::uint64_t{1} << (i % 64);
    }

    // Number of set coordinates.
    std::size_t weight() const {
        std::size_t w = 0;
        for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    bool any() const {
        for (auto word : words_)
            if (word) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Index of the lowest set coordinate; requires any().
    std::size_t lowest_set() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
        throw std::logic_error("BitVec::lowest_set on zero vector");
    }

    BitVec& operator+=(const BitVec& o) {
        check_same_length(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }
    friend BitVec operator+(BitVec a, const BitVec& b) { return a += b; }

    BitVec& operator&=(const BitVec& o) {
        check_same_length(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    // this & ~o
    BitVec and_not(const BitVec& o) const {
        check_same_length(o);
        BitVec r(len_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & ~o.words_[k];
        return r;
    }

    bool subset_of(const BitVec& o) const {
        check_same_length(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    bool intersects(const BitVec& o) const {
        check_same_length(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    // Parity of |this & o|, i.e. the GF(2) dot product.
    bool dot(const BitVec& o) const {
        check_same_length(o);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & o.words_[k];
        return std::popcount(acc) & 1;
    }

    void for_each_set(const std::function<void(std::size_t)>& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t word = words_[k];
            while (word) {
                fn(k * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    std::vector<std::size_t> set_bits() const {
        std::vector<std::size_t> out;
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for_each_set([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

    friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) {
        if (a.len_ != b.len_) return a.len_ <=> b.len_;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            if (a.words_[k] != b.words_[k]) return a.words_[k] <=> b.words_[k];
        return std::strong_ordering::equal;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ len_;
        for (auto word : words_) {
            h ^= word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }

    friend std::ostream& operator<<(std::ostream& os, const BitVec& v) {
        return os << v.to_string();
    }

private:
    void check_index(std::size_t i) const {
        if (i >= len_) throw std::out_of_range("BitVec index out of range");
    }
    void check_same_length(const BitVec& o) const {
        if (len_ != o.len_)
            throw std::invalid_argument("BitVec length mismatch: " + std::to_string(len_) +
                                        " vs " + std::to_string(o.len_));
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

// Coordinatewise XOR; the symmetric-difference realisation of addition.
inline BitVec vec_add(const BitVec& a, const BitVec& b) { return a + b; }

// A matrix over GF(2), stored as an ordered sequence of equal-length columns.
class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::vector<BitVec> columns)
        : rows_(rows), cols_(std::move(columns)) {
        for (const auto& c : cols_)
            if (c.size() != rows_)
                throw std::invalid_argument("BitMatrix: column length != rows");
    }

    static BitMatrix identity(std::size_t n) {
        std::vector<BitVec> cols;
        cols.reserve(n);
        for (std::size_t j = 0; j < n; ++j) cols.push_back(BitVec::unit(n, j));
        return BitMatrix(n, std::move(cols));
    }

    static BitMatrix zero(std::size_t rows, std::size_t cols) {
        return BitMatrix(rows, std::vector<BitVec>(cols, BitVec(rows)));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    const BitVec& col(std::size_t j) const { return cols_.at(j); }
    const std::vector<BitVec>& columns() const { return cols_; }

    BitVec row(std::size_t i) const {
        BitVec r(cols());
        for (std::size_t j = 0; j < cols(); ++j)
            if (cols_[j].test(i)) r.set(j);
        return r;
    }

    std::vector<BitVec> row_vectors() const {
        std::vector<BitVec> rs;
        rs.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) rs.push_back(row(i));
        return rs;
    }

    BitMatrix transpose() const {
        std::vector<BitVec> cols;
        cols.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) cols.push_back(row(i));
        return BitMatrix(this->cols(), std::move(cols));
    }

    // A * x with x over the columns.
    BitVec mul(const BitVec& x) const {
        if (x.size() != cols())
            throw std::invalid_argument("BitMatrix::mul dimension mismatch");
        BitVec out(rows_);
        x.for_each_set([&](std::size_t j) { out += cols_[j]; });
        return out;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::vector<BitVec> cols_;
};

// Incremental echelon basis of GF(2) vectors, pivoting on the lowest set
// coordinate.  The workhorse behind rank, span membership and greedy bases.
class Echelon {
public:
    // Reduces v against the basis; if a nonzero remainder is left it joins
    // the basis and true is returned.
    bool add(BitVec v) {
        reduce(v);
        if (v.none()) return false;
        insert(std::move(v));
        return true;
    }

    bool reduces_to_zero(BitVec v) const {
        reduce(v);
        return v.none();
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<BitVec>& basis() const { return basis_; }

private:
    void reduce(BitVec& v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (v.any() && v.test(lead_[k])) v += basis_[k];
    }
    void insert(BitVec v) {
        std::size_t lead = v.lowest_set();
        auto pos = std::lower_bound(lead_.begin(), lead_.end(), lead) - lead_.begin();
        basis_.insert(basis_.begin() + pos, std::move(v));
        lead_.insert(lead_.begin() + pos, lead);
    }

    std::vector<BitVec> basis_;
    std::vector<std::size_t> lead_;
};

// Expresses vectors as GF(2) combinations of a fixed generating sequence.
class GF2Solver {
public:
    explicit GF2Solver(const std::vector<BitVec>& generators)
        : ngen_(generators.size()) {
        for (std::size_t j = 0; j < generators.size(); ++j) {
            BitVec v = generators[j];
            BitVec combo(ngen_);
            reduce(v, combo);
            if (v.any()) {
                combo.set(j);
                insert(std::move(v), std::move(combo));
                pivot_gens_.push_back(j);
            }
        }
    }

    std::size_t rank() const { return basis_.size(); }

    // Generator indices that formed the echelon basis, in input order.
    const std::vector<std::size_t>& pivot_generators() const { return pivot_gens_; }

    // Combination over the generators summing to v, or nullopt if v is
    // outside their span.
    std::optional<BitVec> express(BitVec v) const {
        BitVec combo(ngen_);
        reduce(v, combo);
        if (v.any()) return std::nullopt;
        return combo;
    }

    bool in_span(const BitVec& v) const { return express(v).has_value(); }

private:
    void reduce(BitVec& v, BitVec& combo) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (v.any() && v.test(lead_[k])) {
                v += basis_[k];
                combo += combos_[k];
            }
        }
    }
    void insert(BitVec v, BitVec combo) {
        std::size_t lead = v.lowest_set();
        auto pos = static_cast<std::size_t>(
            std::lower_bound(lead_.begin(), lead_.end(), lead) - lead_.begin());
        basis_.insert(basis_.begin() + pos, std::move(v));
        combos_.insert(combos_.begin() + pos, std::move(combo));
        lead_.insert(lead_.begin() + pos, lead);
    }

    std::size_t ngen_;
    std::vector<BitVec> basis_;
    std::vector<BitVec> combos_; // combos_[k] over generators sums to basis_[k]
    std::vector<std::size_t> lead_;
    std::vector<std::size_t> pivot_gens_;
};

struct RowReduction {
    BitMatrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots; // pivot column indices, strictly increasing
};

// Row echelon form over GF(2).  Stable under row permutation: the result
// depends only on the row space and the column order.
inline RowReduction row_reduce(const BitMatrix& A) {
    std::vector<BitVec> rows = A.row_vectors();
    RowReduction out;
    std::size_t r = 0;
    for (std::size_t j = 0; j < A.cols() && r < rows.size(); ++j) {
        std::size_t pivot = r;
        while (pivot < rows.size() && !rows[pivot].test(j)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].test(j)) rows[i] += rows[r];
        out.pivots.push_back(j);
        ++r;
    }
    out.rank = r;
    // Reassemble column-major.
    std::vector<BitVec> cols(A.cols(), BitVec(A.rows()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].for_each_set([&](std::size_t j) { cols[j].set(i); });
    out.rref = BitMatrix(A.rows(), std::move(cols));
    return out;
}

// The nonzero rows of the rref, i.e. a canonical basis of the row space,
// each expressed as a vector over the columns.
inline std::vector<BitVec> row_space_basis(const BitMatrix& A) {
    RowReduction rr = row_reduce(A);
    std::vector<BitVec> rows;
    rows.reserve(rr.rank);
    for (std::size_t i = 0; i < rr.rank; ++i) rows.push_back(rr.rref.row(i));
    return rows;
}

// Visits all 2^rank row-space vectors exactly once, in Gray-code order over
// the canonical row basis (the zero vector comes first).
inline void for_each_row_space_vector(const BitMatrix& A,
                                      const std::function<void(const BitVec&)>& fn,
                                      const Caps& caps = {}) {
    std::vector<BitVec> basis = row_space_basis(A);
    if (basis.size() > caps.max_rank_exponent)
        throw capacity_error("row space sweep: rank " + std::to_string(basis.size()) +
                             " exceeds cap " + std::to_string(caps.max_rank_exponent));
    BitVec current(A.cols());
    fn(current);
    std::uint64_t total = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        // Gray step: bit ctz(i) flips between gray(i-1) and gray(i).
        current += basis[static_cast<std::size_t>(std::countr_zero(i))];
        fn(current);
    }
}

inline std::vector<BitVec> row_space(const BitMatrix& A, const Caps& caps = {}) {
    std::vector<BitVec> out;
    for_each_row_space_vector(A, [&](const BitVec& v) { out.push_back(v); }, caps);
    return out;
}

// A basis of {x : Ax = 0}; size = cols - rank.
inline std::vector<BitVec> null_space_basis(const BitMatrix& A) {
    RowReduction rr = row_reduce(A);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto j : rr.pivots) is_pivot[j] = true;
    // Row index of the pivot in column j.
    std::vector<std::size_t> pivot_row(A.cols(), 0);
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) pivot_row[rr.pivots[k]] = k;

    std::vector<BitVec> basis;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        if (is_pivot[j]) continue;
        BitVec x(A.cols());
        x.set(j);
        const BitVec& cj = rr.rref.col(j);
        for (auto p : rr.pivots)
            if (cj.test(pivot_row[p])) x.set(p);
        basis.push_back(std::move(x));
    }
    return basis;
}

// True iff v is a GF(2) combination of the columns of A.
inline bool in_span(const BitMatrix& A, const BitVec& v) {
    if (v.size() != A.rows())
        throw std::invalid_argument("in_span: dimension mismatch");
    Echelon e;
    for (std::size_t j = 0; j < A.cols(); ++j) e.add(A.col(j));
    return e.reduces_to_zero(v);
}

} // namespace matrec
