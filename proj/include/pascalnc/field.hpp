#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// GF(2^m) scalar arithmetic, dense matrices and the progressive Gauss-Jordan
// decoder shared by every coding scheme in this library.

namespace pascalnc::gf {

/// One field element. Fits every supported field (m <= 16).
using Element = std::uint16_t;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, int rank)
        : std::runtime_error(what), rank_(rank) {}
    int rank() const { return rank_; }

private:
    int rank_;
};

/// GF(2^m) arithmetic context. Immutable after construction; safe to share
/// across threads. Multiplication and inversion run on log/exp tables built
/// over the smallest multiplicative generator of the field, so any
/// irreducible reduction polynomial is accepted (primitive or not).
class FieldContext {
public:
    /// Builds the field for exponent m in [1, 16]. When no polynomial is
    /// given, a table of lexicographically smallest primitive polynomials is
    /// used (0x11D for m=8). Throws FieldError for a polynomial of wrong
    /// degree or a reducible one (the message names the factor found).
    explicit FieldContext(int m, std::optional<std::uint32_t> poly = std::nullopt);

    int m() const { return m_; }
    std::uint32_t order() const { return q_; }
    std::uint32_t poly() const { return poly_; }
    Element generator() const { return exp_[1]; }

    static std::uint32_t default_poly(int m);

    Element add(Element a, Element b) const { return a ^ b; }
    Element sub(Element a, Element b) const { return a ^ b; }

    Element mul(Element a, Element b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    /// Multiplicative inverse; inv(0) throws std::domain_error.
    Element inv(Element a) const {
        if (a == 0) throw std::domain_error("gf: inverse of zero");
        return exp_[q_ - 1 - log_[a]];
    }

    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    const std::vector<Element>& log_table() const { return log_; }
    const std::vector<Element>& exp_table() const { return exp_; }

private:
    int m_;
    std::uint32_t q_;
    std::uint32_t poly_;
    std::vector<Element> log_;  // q entries; log_[0] unused
    std::vector<Element> exp_;  // 2(q-1) entries so mul needs no modulo
};

/// Dense row-major matrix of field elements.
class FieldMatrix {
public:
    FieldMatrix() : rows_(0), cols_(0) {}
    FieldMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Element& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    Element at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<Element> row(int r) {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }
    std::span<const Element> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }

    std::vector<Element> col(int c) const;

    static FieldMatrix identity(int n);

    bool operator==(const FieldMatrix& other) const = default;

private:
    int rows_;
    int cols_;
    std::vector<Element> data_;
};

/// Standard product under field arithmetic; dimensions must agree.
FieldMatrix mat_mul(const FieldContext& ctx, const FieldMatrix& a, const FieldMatrix& b);

/// Rank by full Gauss-Jordan elimination.
int mat_rank(const FieldContext& ctx, FieldMatrix a);

/// Inverse of a square full-rank matrix; throws SingularMatrixError carrying
/// the achieved rank otherwise.
FieldMatrix mat_inverse(const FieldContext& ctx, const FieldMatrix& a);

/// Progressive Gauss-Jordan decoding workspace. Rows are kept in reduced
/// row-echelon form so that the recovered set is a pivot lookup. Single-owner
/// mutable; do not share one instance across threads.
class DecoderState {
public:
    /// k: target dimension, payload_len: payload symbols carried per packet.
    DecoderState(const FieldContext& ctx, int k, int payload_len);

    /// Reduces one (coefficient row, payload row) pair into the state.
    /// Returns true iff the row was innovative (rank increased).
    bool absorb(std::span<const Element> coeffs, std::span<const Element> payload);

    int rank() const { return static_cast<int>(rows_.size()); }
    int dimension() const { return k_; }
    bool complete() const { return rank() == k_; }

    /// True iff unit vector e_index lies in the span of absorbed rows,
    /// i.e. original packet `index` (0-based) is individually recoverable.
    bool is_recovered(int index) const { return recovered_[index] != 0; }

    int recovered_count() const { return recovered_count_; }

    /// All recoverable (packet_index, payload) pairs, index-ascending.
    std::vector<std::pair<int, std::vector<Element>>> recovered() const;

    std::vector<int> recovered_indices() const;

    const std::vector<int>& pivot_cols() const { return pivots_; }

private:
    struct Row {
        int pivot;
        std::vector<Element> coeffs;
        std::vector<Element> payload;
        int nonzeros;  // nonzero coefficient count; 1 means the row is a unit vector
    };

    void refresh_recovered(const Row& row);

    const FieldContext* ctx_;
    int k_;
    int payload_len_;
    std::vector<Row> rows_;            // sorted by pivot column
    std::vector<int> pivots_;          // pivot column per stored row
    std::vector<int> pivot_row_;       // column -> row index or -1
    std::vector<std::uint8_t> recovered_;
    int recovered_count_ = 0;
};

}  // namespace pascalnc::gf
