#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "pascalnc/field.hpp"

// Pascal-matrix code construction, the systematic random codes, and the
// encoder / re-encoder / recoder pipelines shared by theory and simulation.

namespace pascalnc::codes {

enum class Scheme { PascalNC, PascalNCS, SNC, SNCS };

constexpr bool is_pascal(Scheme s) { return s == Scheme::PascalNC || s == Scheme::PascalNCS; }
constexpr bool is_scheduled(Scheme s) { return s == Scheme::PascalNCS || s == Scheme::SNCS; }

std::string to_string(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& name);

enum class RelayMode { DecodeReencode, Forward, Recode };

std::string to_string(RelayMode m);
std::optional<RelayMode> parse_relay_mode(const std::string& name);

/// Default relay behavior: Pascal schemes decode and re-encode, random
/// schemes forward unchanged.
constexpr RelayMode default_relay_mode(Scheme s) {
    return is_pascal(s) ? RelayMode::DecodeReencode : RelayMode::Forward;
}

enum class Signaling { Seeds, Coefficients, None };

std::string to_string(Signaling s);
std::optional<Signaling> parse_signaling(const std::string& name);

/// Pascal column selection policy.
struct ColumnPolicy {
    enum class Kind { Sequential, Random, Optimized };
    Kind kind = Kind::Sequential;
    std::uint64_t seed = 1;
    int budget = 16;  // candidate sets examined by Optimized

    static ColumnPolicy sequential() { return {}; }
    static ColumnPolicy random(std::uint64_t seed) { return {Kind::Random, seed, 0}; }
    static ColumnPolicy optimized(std::uint64_t seed, int budget = 16) {
        return {Kind::Optimized, seed, budget};
    }
};

std::string to_string(ColumnPolicy::Kind k);
std::optional<ColumnPolicy::Kind> parse_column_policy(const std::string& name);

/// Everything needed to reproduce one generator matrix bit-exactly.
struct CodeSpec {
    Scheme scheme = Scheme::PascalNC;
    int k = 0;
    int n = 0;
    int m = 8;
    ColumnPolicy columns;             // Pascal schemes only
    Signaling signaling = Signaling::None;
    std::uint64_t coeff_seed = 1;     // random schemes: coefficient stream seed

    double rho() const { return static_cast<double>(k) / n; }

    /// Throws std::invalid_argument when inconsistent (k/n range, column
    /// budget vs field order, signaling vs scheme).
    void validate() const;
};

/// Two-sub-block transmission split of the scheduled variants.
struct ScheduleSplit {
    int k1;
    int k2;
    int nc1;
    int nc2;

    static ScheduleSplit of(int k, int n) {
        ScheduleSplit s{};
        s.k1 = (k + 1) / 2;
        s.k2 = k - s.k1;
        const int nc = n - k;
        s.nc1 = (nc + 1) / 2;
        s.nc2 = nc - s.nc1;
        return s;
    }
};

struct Generation {
    int id = 0;
    gf::FieldMatrix x;  // payload_len x K

    Generation() = default;
    Generation(int id, gf::FieldMatrix x) : id(id), x(std::move(x)) {}
};

// Coefficient descriptors as they would be signaled on the wire.
struct SystematicRef { int index = 0; };                       // 0-based packet index
struct PascalColumnRef { int column = 0; };                    // Pascal matrix column id
struct ExplicitCoeffsRef {};                                   // full vector rides in the packet
struct SeedRef { std::uint64_t seed = 0; int sequence = 0; };  // (seed, sequence_no)

using Descriptor = std::variant<SystematicRef, PascalColumnRef, ExplicitCoeffsRef, SeedRef>;

struct Packet {
    int generation_id = 0;
    int tx_slot = 0;  // 1-based slot of first transmission
    Descriptor descriptor;
    std::vector<gf::Element> coeffs;   // length K, relative to the generation
    std::vector<gf::Element> payload;  // payload_len symbols

    bool is_systematic() const { return std::holds_alternative<SystematicRef>(descriptor); }
    int systematic_index() const {
        const auto* s = std::get_if<SystematicRef>(&descriptor);
        return s ? s->index : -1;
    }
};

/// Per-column metadata of a built generator. `depth` is the number of leading
/// rows a coded column may touch (K1 for first-sub-block coded columns of the
/// scheduled variants, K otherwise).
struct GeneratorColumn {
    bool systematic = false;
    int index = -1;          // systematic packet index when systematic
    int pascal_column = -1;  // Pascal column id when applicable
    int depth = 0;
};

struct GeneratorMatrix {
    gf::FieldMatrix g;  // K x N; column order is the transmission order
    std::vector<GeneratorColumn> columns;
    ScheduleSplit split{};          // meaningful for scheduled schemes
    std::vector<int> column_ids;    // selected Pascal ids (empty for random schemes)
};

/// Entry (i, j) of the Pascal matrix modulo q: binomial(i+j, j) mod q via the
/// additive recurrence (integer addition mod q, not field addition).
std::uint32_t pascal_entry(std::uint32_t q, std::uint32_t i, std::uint32_t j);

/// K x |col_ids| matrix whose column t holds the first K entries of Pascal
/// column col_ids[t], interpreted as field elements.
gf::FieldMatrix pascal_columns(const gf::FieldContext& ctx, int k, const std::vector<int>& col_ids);

/// Selects `count` Pascal column ids under the given policy. Optimized picks,
/// among the sequential set plus `budget` seeded random sets, the one with the
/// highest MDS score; ties break to the lexicographically smallest id list.
std::vector<int> select_columns(const gf::FieldContext& ctx, int k, int count,
                                const ColumnPolicy& policy);

/// Fraction of K x K column subsets of [I | coded] that are invertible.
/// Exhaustive when C(n, k) <= 1e5, otherwise 1e5 sampled subsets.
double mds_score(const gf::FieldContext& ctx, const gf::FieldMatrix& coded, std::uint64_t seed);

GeneratorMatrix build_generator(const gf::FieldContext& ctx, const CodeSpec& spec);

/// Reconstructs the coefficient vector of coded packet `sequence` of a random
/// scheme from the signaled (seed, sequence) pair.
std::vector<gf::Element> coeffs_from_seed(const gf::FieldContext& ctx, const CodeSpec& spec,
                                          std::uint64_t seed, int sequence);

/// X' = X G: one packet per generator column, tx_slot = column position + 1.
std::vector<Packet> encode(const gf::FieldContext& ctx, const Generation& gen,
                           const GeneratorMatrix& gm, const CodeSpec& spec);

/// Pascal relay re-encoding: rebuilds the source generator and emits every
/// column whose support is contained in `recovered`; other slots stay empty.
/// The result is the source codeword thinned by the relay's missing packets.
std::vector<std::optional<Packet>> reencode_pascal(
    const gf::FieldContext& ctx, const CodeSpec& spec,
    const std::vector<std::pair<int, std::vector<gf::Element>>>& recovered);

/// Same, against an already-built generator (hot path for the simulator).
std::vector<std::optional<Packet>> reencode_pascal(
    const gf::FieldContext& ctx, const GeneratorMatrix& gm, const CodeSpec& spec,
    const std::vector<std::pair<int, std::vector<gf::Element>>>& recovered);

/// RLNC-style recoding: `count` uniformly random combinations of the buffer,
/// coefficients composed relative to the original generation.
std::vector<Packet> recode_random(const gf::FieldContext& ctx, const std::vector<Packet>& buffer,
                                  int count, std::uint64_t seed);

/// Signaling overhead in percent: sigma = links (seed signaling), K
/// (coefficient signaling) or 0 (none / offline-optimized columns).
double signaling_overhead(const CodeSpec& spec, int links, int packet_symbols);

/// Row-major CSV with decimal elements, one row per line.
void write_matrix_csv(std::ostream& os, const gf::FieldMatrix& m);
void write_columns_csv(std::ostream& os, const std::vector<int>& ids);

}  // namespace pascalnc::codes
