#include "pascalnc/field.hpp"

#include <array>
#include <sstream>

namespace pascalnc::gf {
namespace {

// Lexicographically smallest primitive polynomial per exponent, as bit masks
// including the leading term (index = m).
constexpr std::array<std::uint32_t, 17> kDefaultPoly = {
    0,
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1 (0x89 is the smallest *irreducible*, x^7+x+1 is primitive)
    0x11D,    // x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Polynomial remainder of a mod b over GF(2).
std::uint32_t poly_mod(std::uint64_t a, std::uint32_t b) {
    const int db = poly_degree(b);
    for (int d = 63; d >= db; --d) {
        if (a & (std::uint64_t{1} << d)) a ^= static_cast<std::uint64_t>(b) << (d - db);
    }
    return static_cast<std::uint32_t>(a);
}

// Carry-less multiply of two GF(2) polynomials.
std::uint64_t poly_clmul(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    for (int i = 0; b >> i; ++i) {
        if (b & (1u << i)) r ^= static_cast<std::uint64_t>(a) << i;
    }
    return r;
}

// Multiplication modulo the reduction polynomial, used only while building
// the tables (hot-path multiplication goes through the tables themselves).
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly) {
    return poly_mod(poly_clmul(a, b), poly);
}

std::string poly_to_string(std::uint32_t p) {
    std::ostringstream os;
    os << "0x" << std::hex << p;
    return os.str();
}

}  // namespace

std::uint32_t FieldContext::default_poly(int m) {
    if (m < 1 || m > 16) throw FieldError("gf: exponent m must be in [1, 16]");
    return kDefaultPoly[static_cast<std::size_t>(m)];
}

FieldContext::FieldContext(int m, std::optional<std::uint32_t> poly) {
    if (m < 1 || m > 16) throw FieldError("gf: exponent m must be in [1, 16]");
    m_ = m;
    q_ = 1u << m;
    poly_ = poly.value_or(kDefaultPoly[static_cast<std::size_t>(m)]);
    if (poly_degree(poly_) != m)
        throw FieldError("gf: reduction polynomial " + poly_to_string(poly_) +
                         " does not have degree " + std::to_string(m));

    // Exhaustive irreducibility check: trial division by every polynomial of
    // degree 1..m/2. Cheap for m <= 16 and pinpoints the offending factor.
    for (std::uint32_t f = 2; poly_degree(f) <= m / 2; ++f) {
        if (poly_mod(poly_, f) == 0)
            throw FieldError("gf: polynomial " + poly_to_string(poly_) +
                             " is reducible, divisible by factor " + poly_to_string(f));
    }

    // Find the smallest multiplicative generator and build log/exp on it.
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    const std::uint32_t group = q_ - 1;
    for (std::uint32_t g = 2; g < q_; ++g) {
        std::uint32_t x = 1;
        std::uint32_t steps = 0;
        bool full_cycle = true;
        do {
            exp_[steps] = static_cast<Element>(x);
            log_[x] = static_cast<Element>(steps);
            x = slow_mul(x, g, poly_);
            ++steps;
            if (x == 1 && steps < group) {
                full_cycle = false;
                break;
            }
        } while (steps < group);
        if (full_cycle && x == 1) {
            for (std::uint32_t i = group; i < 2 * group; ++i) exp_[i] = exp_[i - group];
            return;
        }
    }
    if (q_ == 2) {  // GF(2): trivial tables, no generator search needed
        log_[1] = 0;
        exp_.assign(2, 1);
        return;
    }
    throw FieldError("gf: no multiplicative generator found for " + poly_to_string(poly_));
}

std::vector<Element> FieldMatrix::col(int c) const {
    std::vector<Element> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = at(r, c);
    return out;
}

FieldMatrix FieldMatrix::identity(int n) {
    FieldMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FieldMatrix mat_mul(const FieldContext& ctx, const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("gf: mat_mul dimension mismatch: " + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()));
    FieldMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Element aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                out.at(i, j) ^= ctx.mul(aik, b.at(k, j));
            }
        }
    }
    return out;
}

namespace {

// In-place Gauss-Jordan; returns rank. When inv != nullptr it must start as
// the identity and receives the inverse (complete only if rank == n).
int eliminate(const FieldContext& ctx, FieldMatrix& a, FieldMatrix* inv) {
    const int rows = a.rows();
    const int cols = a.cols();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (a.at(r, c) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int j = 0; j < cols; ++j) std::swap(a.at(pivot, j), a.at(rank, j));
            if (inv)
                for (int j = 0; j < inv->cols(); ++j) std::swap(inv->at(pivot, j), inv->at(rank, j));
        }
        const Element f = ctx.inv(a.at(rank, c));
        if (f != 1) {
            for (int j = 0; j < cols; ++j) a.at(rank, j) = ctx.mul(a.at(rank, j), f);
            if (inv)
                for (int j = 0; j < inv->cols(); ++j) inv->at(rank, j) = ctx.mul(inv->at(rank, j), f);
        }
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const Element g = a.at(r, c);
            if (g == 0) continue;
            for (int j = 0; j < cols; ++j) a.at(r, j) ^= ctx.mul(g, a.at(rank, j));
            if (inv)
                for (int j = 0; j < inv->cols(); ++j) inv->at(r, j) ^= ctx.mul(g, inv->at(rank, j));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int mat_rank(const FieldContext& ctx, FieldMatrix a) { return eliminate(ctx, a, nullptr); }

FieldMatrix mat_inverse(const FieldContext& ctx, const FieldMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("gf: mat_inverse requires a square matrix");
    FieldMatrix work = a;
    FieldMatrix inv = FieldMatrix::identity(a.rows());
    const int rank = eliminate(ctx, work, &inv);
    if (rank != a.rows())
        throw SingularMatrixError(
            "gf: singular matrix, rank " + std::to_string(rank) + " of " + std::to_string(a.rows()),
            rank);
    return inv;
}

DecoderState::DecoderState(const FieldContext& ctx, int k, int payload_len)
    : ctx_(&ctx), k_(k), payload_len_(payload_len), pivot_row_(static_cast<std::size_t>(k), -1),
      recovered_(static_cast<std::size_t>(k), 0) {
    if (k <= 0) throw std::invalid_argument("gf: decoder dimension must be positive");
    if (payload_len < 0) throw std::invalid_argument("gf: negative payload length");
}

void DecoderState::refresh_recovered(const Row& row) {
    if (row.nonzeros == 1 && !recovered_[static_cast<std::size_t>(row.pivot)]) {
        recovered_[static_cast<std::size_t>(row.pivot)] = 1;
        ++recovered_count_;
    }
}

bool DecoderState::absorb(std::span<const Element> coeffs, std::span<const Element> payload) {
    if (static_cast<int>(coeffs.size()) != k_)
        throw std::invalid_argument("gf: coefficient row length != decoder dimension");
    if (static_cast<int>(payload.size()) != payload_len_)
        throw std::invalid_argument("gf: payload row length mismatch");

    std::vector<Element> c(coeffs.begin(), coeffs.end());
    std::vector<Element> p(payload.begin(), payload.end());

    // Forward-reduce against stored rows.
    for (int col = 0; col < k_; ++col) {
        const Element f = c[static_cast<std::size_t>(col)];
        if (f == 0) continue;
        const int ri = pivot_row_[static_cast<std::size_t>(col)];
        if (ri < 0) continue;
        const Row& row = rows_[static_cast<std::size_t>(ri)];
        for (int j = col; j < k_; ++j)
            c[static_cast<std::size_t>(j)] ^= ctx_->mul(f, row.coeffs[static_cast<std::size_t>(j)]);
        for (int j = 0; j < payload_len_; ++j)
            p[static_cast<std::size_t>(j)] ^= ctx_->mul(f, row.payload[static_cast<std::size_t>(j)]);
    }

    int pivot = -1;
    for (int j = 0; j < k_; ++j) {
        if (c[static_cast<std::size_t>(j)] != 0) {
            pivot = j;
            break;
        }
    }
    if (pivot < 0) return false;  // dependent row, state unchanged

    const Element norm = ctx_->inv(c[static_cast<std::size_t>(pivot)]);
    if (norm != 1) {
        for (int j = pivot; j < k_; ++j)
            c[static_cast<std::size_t>(j)] = ctx_->mul(c[static_cast<std::size_t>(j)], norm);
        for (int j = 0; j < payload_len_; ++j)
            p[static_cast<std::size_t>(j)] = ctx_->mul(p[static_cast<std::size_t>(j)], norm);
    }

    // Back-eliminate the new pivot from stored rows.
    for (auto& row : rows_) {
        const Element f = row.coeffs[static_cast<std::size_t>(pivot)];
        if (f == 0) continue;
        int nz = 0;
        for (int j = 0; j < k_; ++j) {
            Element& e = row.coeffs[static_cast<std::size_t>(j)];
            e ^= ctx_->mul(f, c[static_cast<std::size_t>(j)]);
            if (e != 0) ++nz;
        }
        for (int j = 0; j < payload_len_; ++j)
            row.payload[static_cast<std::size_t>(j)] ^= ctx_->mul(f, p[static_cast<std::size_t>(j)]);
        row.nonzeros = nz;
        refresh_recovered(row);
    }

    Row fresh{pivot, std::move(c), std::move(p), 0};
    for (int j = 0; j < k_; ++j)
        if (fresh.coeffs[static_cast<std::size_t>(j)] != 0) ++fresh.nonzeros;

    // Insert keeping rows ordered by pivot column.
    std::size_t pos = 0;
    while (pos < rows_.size() && rows_[pos].pivot < pivot) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(fresh));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        pivot_row_[static_cast<std::size_t>(rows_[i].pivot)] = static_cast<int>(i);
    refresh_recovered(rows_[pos]);
    return true;
}

std::vector<std::pair<int, std::vector<Element>>> DecoderState::recovered() const {
    std::vector<std::pair<int, std::vector<Element>>> out;
    out.reserve(static_cast<std::size_t>(recovered_count_));
    for (const auto& row : rows_) {
        if (row.nonzeros == 1) out.emplace_back(row.pivot, row.payload);
    }
    return out;
}

std::vector<int> DecoderState::recovered_indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(recovered_count_));
    for (int j = 0; j < k_; ++j)
        if (recovered_[static_cast<std::size_t>(j)]) out.push_back(j);
    return out;
}

}  // namespace pascalnc::gf
