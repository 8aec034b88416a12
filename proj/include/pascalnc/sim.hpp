#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "pascalnc/codes.hpp"
#include "pascalnc/optimize.hpp"
#include "pascalnc/theory.hpp"

// Timeslotted Monte Carlo line-network simulator: source encoder, per-scheme
// relay behavior, memoryless per-link erasures, progressive destination
// decoding, and PLR / achievable-rate / in-order-delay measurement.
//
// Slot conventions (documented because the delay metric depends on them):
//   - the generation's first source transmission is slot 1;
//   - a transmission in slot s is received in slot s;
//   - decode-and-re-encode and recode relays store-and-forward one whole
//     generation: node i transmits during slots i*N+1 .. (i+1)*N;
//   - forwarding relays retransmit a packet received in slot s at slot s+1;
//   - tau_j is the slot at which packet j and all packets before it are
//     simultaneously recovered at the destination; packets that never reach
//     that state contribute to the loss rate but not to the delay average.

namespace pascalnc::sim {

struct SimConfig {
    codes::CodeSpec code;
    theory::ChannelSpec channel;
    int rounds = 10000;
    std::uint64_t master_seed = 0xC0DE5EEDULL;
    std::optional<codes::RelayMode> relay_mode;  // default: per-scheme
    double slot_duration_ms = 4.8;
    int payload_symbols = 2;
    int threads = 1;  // 0 = hardware concurrency; results are thread-count invariant

    codes::RelayMode effective_relay_mode() const {
        return relay_mode.value_or(codes::default_relay_mode(code.scheme));
    }
    void validate() const;
};

struct RoundOutcome {
    /// Recovered packet sets at decode-and-re-encode relays, source side first
    /// (empty for other relay modes or single-hop runs).
    std::vector<std::vector<int>> recovered_per_hop;
    /// Per node after each link: packets decoded (decode-and-re-encode and the
    /// destination) or buffered (forward/recode relays).
    std::vector<int> decoded_count_per_hop;
    std::vector<int> delivered;      // destination's recovered packet indices
    std::vector<int> release_slot;   // tau per packet; -1 if never released in-order
};

struct SimResult {
    double plr_hat = 0.0;
    double plr_se = 0.0;
    double rho = 0.0;
    double r_hat = 0.0;  // rho * (1 - plr_hat)
    double mean_delay_slots = 0.0;
    double delay_se_slots = 0.0;
    double mean_delay_ms = 0.0;
    double delivered_fraction = 0.0;
    long long released_packets = 0;
    int rounds = 0;
    std::uint64_t seed = 0;
};

struct TraceEvent {
    int round;
    int hop;   // transmitting node for tx, link for erased, node for decoded/released
    int slot;
    std::string_view event;  // tx | erased | decoded | released
    int packet;              // column position (tx/erased) or packet index (decoded/released)
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// Per-round tallies for paired comparisons.
struct PerRoundStats {
    std::vector<int> delivered_count;
    std::vector<int> released_count;
    std::vector<long long> release_slot_sum;
};

class LineSimulator {
public:
    explicit LineSimulator(SimConfig config);

    const SimConfig& config() const { return config_; }
    const gf::FieldContext& field() const { return ctx_; }
    /// Fixed generator of Pascal schemes; null for random schemes (their
    /// generator is redrawn per generation).
    const codes::GeneratorMatrix* fixed_generator() const {
        return fixed_generator_ ? &*fixed_generator_ : nullptr;
    }

    RoundOutcome run_round(std::uint64_t round_index, const TraceSink& trace = nullptr) const;

    /// Runs all rounds (optionally multithreaded; aggregation is exact integer
    /// arithmetic, so the result does not depend on the thread count).
    SimResult run(PerRoundStats* per_round = nullptr) const;

private:
    SimConfig config_;
    gf::FieldContext ctx_;
    codes::RelayMode relay_;
    std::optional<codes::GeneratorMatrix> fixed_generator_;
};

SimResult estimate_plr(const SimConfig& config);
SimResult measure_delay(const SimConfig& config);

struct CompareReport {
    SimResult a;
    SimResult b;
    double rate_gain_percent = 0.0;      // 100 (R_a - R_b) / R_b
    double rate_gain_se = 0.0;           // paired-round standard error, percent
    double delay_increase_percent = 0.0; // 100 (T_a - T_b) / T_b
    double delay_increase_se = 0.0;
    int paired_rounds = 0;
};

/// Paired-seed comparison of two configurations with equal (K, N, channel):
/// both runs share config_a's master seed, so the erasure patterns pair up.
CompareReport compare_schemes(const SimConfig& config_a, const SimConfig& config_b);

/// Monte Carlo loss evaluator over the rate grid: rho maps to the nearest
/// integer K, every rate shares the same erasure-pattern stream (common
/// random numbers), and scheduled schemes degenerate to their unscheduled
/// twin at K = 1.
optimize::Evaluator make_sim_evaluator(const SimConfig& base);

}  // namespace pascalnc::sim
