#include "pascalnc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "pascalnc/rng.hpp"

namespace pascalnc::sim {
namespace {

constexpr std::uint64_t kTagErase = 0x45524153ULL;
constexpr std::uint64_t kTagPayload = 0x5041594cULL;
constexpr std::uint64_t kTagCode = 0x434f4445ULL;
constexpr std::uint64_t kTagRecode = 0x5245434fULL;

using rng::hash_combine;

/// Erasure decision for (round, link, slot), a pure counter hash: identical
/// across schemes, generation sizes and thread counts, and monotone in the
/// erasure probability (CRN coupling).
bool link_erases(std::uint64_t master, std::uint64_t round, int link, long long slot,
                 double delta) {
    const std::uint64_t h = hash_combine(
        hash_combine(hash_combine(hash_combine(master, kTagErase), round),
                     static_cast<std::uint64_t>(link)),
        static_cast<std::uint64_t>(slot));
    return rng::to_unit(h) < delta;
}

/// Destination-side progressive decoder with in-order release bookkeeping.
struct DestinationDecoder {
    gf::DecoderState dec;
    std::vector<int> release_slot;
    int next_needed = 0;

    DestinationDecoder(const gf::FieldContext& ctx, int k, int payload_len)
        : dec(ctx, k, payload_len), release_slot(static_cast<std::size_t>(k), -1) {}

    void absorb(const codes::Packet& p, int slot) {
        if (!dec.absorb(p.coeffs, p.payload)) return;
        while (next_needed < dec.dimension() && dec.is_recovered(next_needed)) {
            release_slot[static_cast<std::size_t>(next_needed)] = slot;
            ++next_needed;
        }
    }
};

}  // namespace

void SimConfig::validate() const {
    code.validate();
    channel.validate();
    if (rounds < 1) throw std::invalid_argument("sim: need at least one round");
    if (payload_symbols < 0) throw std::invalid_argument("sim: negative payload length");
    if (threads < 0) throw std::invalid_argument("sim: negative thread count");
    if (slot_duration_ms <= 0.0) throw std::invalid_argument("sim: slot duration must be positive");
    const auto relay = effective_relay_mode();
    if (relay == codes::RelayMode::DecodeReencode && !codes::is_pascal(code.scheme))
        throw std::invalid_argument(
            "sim: decode-and-re-encode relays rebuild the deterministic generator and are "
            "valid for Pascal schemes only");
    if (relay == codes::RelayMode::Recode && codes::is_pascal(code.scheme))
        throw std::invalid_argument("sim: recoding relays are valid for random schemes only");
}

LineSimulator::LineSimulator(SimConfig config)
    : config_(std::move(config)), ctx_(config_.code.m), relay_(config_.effective_relay_mode()) {
    config_.validate();
    if (codes::is_pascal(config_.code.scheme))
        fixed_generator_ = codes::build_generator(ctx_, config_.code);
}

RoundOutcome LineSimulator::run_round(std::uint64_t round_index, const TraceSink& trace) const {
    const auto& spec = config_.code;
    const int k = spec.k;
    const int n = spec.n;
    const int links = config_.channel.links;
    const int payload_len = config_.payload_symbols;
    const std::uint64_t master = config_.master_seed;

    // Per-round generation payload.
    codes::Generation gen;
    gen.id = static_cast<int>(round_index);
    gen.x = gf::FieldMatrix(payload_len, k);
    {
        rng::SplitMix64 prng(hash_combine(hash_combine(master, kTagPayload), round_index));
        for (int r = 0; r < payload_len; ++r)
            for (int c = 0; c < k; ++c)
                gen.x.at(r, c) = static_cast<gf::Element>(prng.below(ctx_.order()));
    }

    // Pascal generators are fixed offline; random schemes redraw per generation.
    codes::CodeSpec round_spec = spec;
    const codes::GeneratorMatrix* gm = nullptr;
    codes::GeneratorMatrix round_gm;
    if (fixed_generator_) {
        gm = &*fixed_generator_;
    } else {
        round_spec.coeff_seed = hash_combine(hash_combine(master, kTagCode), round_index);
        round_gm = codes::build_generator(ctx_, round_spec);
        gm = &round_gm;
    }

    auto source_packets = codes::encode(ctx_, gen, *gm, round_spec);

    RoundOutcome outcome;
    outcome.release_slot.assign(static_cast<std::size_t>(k), -1);
    DestinationDecoder dest(ctx_, k, payload_len);

    std::vector<std::uint8_t> seen;  // decoded-event bookkeeping (traced runs only)
    auto emit_decoded = [&](int node, int slot, const gf::DecoderState& dec) {
        if (!trace) return;
        seen.resize(static_cast<std::size_t>(k), 0);
        for (int j = 0; j < k; ++j) {
            if (dec.is_recovered(j) && !seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                trace({static_cast<int>(round_index), node, slot, "decoded", j});
            }
        }
    };

    if (relay_ == codes::RelayMode::Forward) {
        // Cut-through forwarding: column t leaves the source at slot t and, if
        // it survives link i at slot t+i-1, reaches the destination at t+L-1.
        std::vector<int> survived(static_cast<std::size_t>(links), 0);
        for (int t = 1; t <= n; ++t) {
            const auto& p = source_packets[static_cast<std::size_t>(t - 1)];
            bool alive = true;
            for (int link = 1; link <= links && alive; ++link) {
                const long long slot = t + link - 1;
                if (trace) trace({static_cast<int>(round_index), link - 1, static_cast<int>(slot), "tx", t - 1});
                if (link_erases(master, round_index, link, slot,
                                config_.channel.delta_at(link - 1))) {
                    alive = false;
                    if (trace)
                        trace({static_cast<int>(round_index), link, static_cast<int>(slot), "erased", t - 1});
                } else {
                    ++survived[static_cast<std::size_t>(link - 1)];
                }
            }
            if (alive) {
                const int arrival = t + links - 1;
                dest.absorb(p, arrival);
                if (trace) emit_decoded(links, arrival, dest.dec);
            }
        }
        for (int link = 0; link + 1 < links; ++link)
            outcome.decoded_count_per_hop.push_back(survived[static_cast<std::size_t>(link)]);
        outcome.decoded_count_per_hop.push_back(dest.dec.recovered_count());
    } else {
        // Store-and-forward pipeline: node i transmits during slots
        // i*N+1 .. (i+1)*N; position t maps to slot i*N + t.
        std::vector<std::optional<codes::Packet>> current(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) current[static_cast<std::size_t>(t)] = source_packets[static_cast<std::size_t>(t)];

        for (int link = 1; link <= links; ++link) {
            const long long base = static_cast<long long>(link - 1) * n;
            const double delta = config_.channel.delta_at(link - 1);

            std::vector<std::pair<int, const codes::Packet*>> arrivals;
            arrivals.reserve(static_cast<std::size_t>(n));
            for (int t = 1; t <= n; ++t) {
                const auto& slot_pkt = current[static_cast<std::size_t>(t - 1)];
                if (!slot_pkt) continue;
                const long long slot = base + t;
                if (trace)
                    trace({static_cast<int>(round_index), link - 1, static_cast<int>(slot), "tx", t - 1});
                if (link_erases(master, round_index, link, slot, delta)) {
                    if (trace)
                        trace({static_cast<int>(round_index), link, static_cast<int>(slot), "erased", t - 1});
                    continue;
                }
                arrivals.emplace_back(t, &*slot_pkt);
            }

            if (link == links) {
                for (const auto& [t, p] : arrivals) {
                    const int arrival = static_cast<int>(base) + t;
                    dest.absorb(*p, arrival);
                    if (trace) emit_decoded(links, arrival, dest.dec);
                }
                outcome.decoded_count_per_hop.push_back(dest.dec.recovered_count());
                break;
            }

            if (relay_ == codes::RelayMode::DecodeReencode) {
                gf::DecoderState relay_dec(ctx_, k, payload_len);
                for (const auto& [t, p] : arrivals) {
                    relay_dec.absorb(p->coeffs, p->payload);
                    if (trace) emit_decoded(link, static_cast<int>(base) + t, relay_dec);
                }
                auto recovered = relay_dec.recovered();
                outcome.recovered_per_hop.push_back(relay_dec.recovered_indices());
                outcome.decoded_count_per_hop.push_back(relay_dec.recovered_count());
                current = codes::reencode_pascal(ctx_, *gm, round_spec, recovered);
            } else {  // Recode
                std::vector<codes::Packet> buffer;
                buffer.reserve(arrivals.size());
                for (const auto& [t, p] : arrivals) buffer.push_back(*p);
                outcome.decoded_count_per_hop.push_back(static_cast<int>(buffer.size()));
                std::fill(current.begin(), current.end(), std::nullopt);
                if (!buffer.empty()) {
                    const std::uint64_t seed = hash_combine(
                        hash_combine(hash_combine(master, kTagRecode), round_index),
                        static_cast<std::uint64_t>(link));
                    auto recoded = codes::recode_random(ctx_, buffer, n, seed);
                    for (int t = 0; t < n; ++t)
                        current[static_cast<std::size_t>(t)] = std::move(recoded[static_cast<std::size_t>(t)]);
                }
            }
        }
    }

    outcome.delivered = dest.dec.recovered_indices();
    outcome.release_slot = dest.release_slot;
    if (trace) {
        for (int j = 0; j < k; ++j) {
            const int slot = outcome.release_slot[static_cast<std::size_t>(j)];
            if (slot >= 0) trace({static_cast<int>(round_index), links, slot, "released", j});
        }
    }

    // Decoded payloads must equal the generation exactly; anything else is a
    // codec defect, not a channel outcome.
    for (const auto& [idx, payload] : dest.dec.recovered()) {
        for (int r = 0; r < payload_len; ++r) {
            if (payload[static_cast<std::size_t>(r)] != gen.x.at(r, idx))
                throw std::logic_error("sim: recovered payload mismatch for packet " +
                                       std::to_string(idx));
        }
    }
    return outcome;
}

SimResult LineSimulator::run(PerRoundStats* per_round) const {
    const int rounds = config_.rounds;
    const int k = config_.code.k;

    std::vector<int> delivered(static_cast<std::size_t>(rounds));
    std::vector<int> released(static_cast<std::size_t>(rounds));
    std::vector<long long> tau_sum(static_cast<std::size_t>(rounds));

    int threads = config_.threads;
    if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, rounds);

    auto worker = [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            const auto outcome = run_round(static_cast<std::uint64_t>(r));
            delivered[static_cast<std::size_t>(r)] = static_cast<int>(outcome.delivered.size());
            int m = 0;
            long long s = 0;
            for (int slot : outcome.release_slot) {
                if (slot >= 0) {
                    ++m;
                    s += slot;
                }
            }
            released[static_cast<std::size_t>(r)] = m;
            tau_sum[static_cast<std::size_t>(r)] = s;
        }
    };

    if (threads == 1) {
        worker(0, rounds);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
        const int chunk = (rounds + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(rounds, lo + chunk);
            pool.emplace_back([&, t, lo, hi] {
                try {
                    worker(lo, hi);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Exact integer totals make the aggregate independent of execution order.
    long long sum_d = 0, sum_d2 = 0, sum_m = 0, sum_s = 0;
    for (int r = 0; r < rounds; ++r) {
        const long long d = delivered[static_cast<std::size_t>(r)];
        sum_d += d;
        sum_d2 += d * d;
        sum_m += released[static_cast<std::size_t>(r)];
        sum_s += tau_sum[static_cast<std::size_t>(r)];
    }

    SimResult res;
    res.rounds = rounds;
    res.seed = config_.master_seed;
    res.rho = config_.code.rho();
    const double rk = static_cast<double>(rounds) * k;
    res.delivered_fraction = static_cast<double>(sum_d) / rk;
    res.plr_hat = 1.0 - res.delivered_fraction;
    // Per-round loss fraction l_r = 1 - d_r/K; SE from the exact moments.
    const double mean_l = res.plr_hat;
    const double mean_l2 =
        (static_cast<double>(rounds) * k * k - 2.0 * k * static_cast<double>(sum_d) +
         static_cast<double>(sum_d2)) /
        (static_cast<double>(rounds) * k * k);
    const double var_l = std::max(0.0, mean_l2 - mean_l * mean_l);
    res.plr_se = std::sqrt(var_l / rounds);
    res.r_hat = res.rho * (1.0 - res.plr_hat);
    res.released_packets = sum_m;

    if (sum_m > 0) {
        const double t_hat = static_cast<double>(sum_s) / static_cast<double>(sum_m);
        res.mean_delay_slots = t_hat;
        res.mean_delay_ms = t_hat * config_.slot_duration_ms;
        double dev2 = 0.0;
        for (int r = 0; r < rounds; ++r) {
            const double dev = static_cast<double>(tau_sum[static_cast<std::size_t>(r)]) -
                               t_hat * released[static_cast<std::size_t>(r)];
            dev2 += dev * dev;
        }
        res.delay_se_slots = std::sqrt(dev2) / static_cast<double>(sum_m);
    } else {
        res.mean_delay_slots = std::numeric_limits<double>::quiet_NaN();
        res.mean_delay_ms = std::numeric_limits<double>::quiet_NaN();
        res.delay_se_slots = std::numeric_limits<double>::quiet_NaN();
    }

    if (per_round) {
        per_round->delivered_count = std::move(delivered);
        per_round->released_count = std::move(released);
        per_round->release_slot_sum = std::move(tau_sum);
    }
    return res;
}

SimResult estimate_plr(const SimConfig& config) { return LineSimulator(config).run(); }

SimResult measure_delay(const SimConfig& config) { return LineSimulator(config).run(); }

CompareReport compare_schemes(const SimConfig& config_a, const SimConfig& config_b) {
    if (config_a.code.k != config_b.code.k || config_a.code.n != config_b.code.n)
        throw std::invalid_argument("compare: both schemes need the same (K, N)");
    if (config_a.channel.links != config_b.channel.links ||
        config_a.channel.delta != config_b.channel.delta ||
        config_a.channel.per_link != config_b.channel.per_link)
        throw std::invalid_argument("compare: both schemes need the same channel");
    if (config_a.rounds != config_b.rounds)
        throw std::invalid_argument("compare: both schemes need the same round count");

    SimConfig paired_b = config_b;
    paired_b.master_seed = config_a.master_seed;  // paired erasure patterns

    PerRoundStats stats_a, stats_b;
    CompareReport rep;
    rep.a = LineSimulator(config_a).run(&stats_a);
    rep.b = LineSimulator(paired_b).run(&stats_b);

    const int rounds = config_a.rounds;
    const int k = config_a.code.k;
    const double rho = config_a.code.rho();

    // Rate gain with a paired-difference standard error.
    if (rep.b.r_hat > 0.0) {
        rep.rate_gain_percent = 100.0 * (rep.a.r_hat - rep.b.r_hat) / rep.b.r_hat;
        double sum = 0.0, sum2 = 0.0;
        for (int r = 0; r < rounds; ++r) {
            const double x = rho *
                             (stats_a.delivered_count[static_cast<std::size_t>(r)] -
                              stats_b.delivered_count[static_cast<std::size_t>(r)]) /
                             static_cast<double>(k);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / rounds;
        const double var = std::max(0.0, sum2 / rounds - mean * mean);
        rep.rate_gain_se = 100.0 * std::sqrt(var / rounds) / rep.b.r_hat;
    }

    // Delay increase from rounds where both sides released packets.
    if (rep.b.released_packets > 0 && rep.a.released_packets > 0 &&
        rep.b.mean_delay_slots > 0.0) {
        rep.delay_increase_percent =
            100.0 * (rep.a.mean_delay_slots - rep.b.mean_delay_slots) / rep.b.mean_delay_slots;
        double sum = 0.0, sum2 = 0.0;
        int paired = 0;
        for (int r = 0; r < rounds; ++r) {
            const int ma = stats_a.released_count[static_cast<std::size_t>(r)];
            const int mb = stats_b.released_count[static_cast<std::size_t>(r)];
            if (ma == 0 || mb == 0) continue;
            const double ta = static_cast<double>(stats_a.release_slot_sum[static_cast<std::size_t>(r)]) / ma;
            const double tb = static_cast<double>(stats_b.release_slot_sum[static_cast<std::size_t>(r)]) / mb;
            const double d = ta - tb;
            sum += d;
            sum2 += d * d;
            ++paired;
        }
        rep.paired_rounds = paired;
        if (paired > 1) {
            const double mean = sum / paired;
            const double var = std::max(0.0, sum2 / paired - mean * mean);
            rep.delay_increase_se = 100.0 * std::sqrt(var / paired) / rep.b.mean_delay_slots;
        }
    }
    return rep;
}

optimize::Evaluator make_sim_evaluator(const SimConfig& base) {
    base.validate();
    return [base](double rho) {
        SimConfig cfg = base;
        const int n = cfg.code.n;
        cfg.code.k = std::clamp(static_cast<int>(std::lround(rho * n)), 1, n - 1);
        if (codes::is_scheduled(cfg.code.scheme) && cfg.code.k < 2) {
            cfg.code.scheme = cfg.code.scheme == codes::Scheme::PascalNCS ? codes::Scheme::PascalNC
                                                                          : codes::Scheme::SNC;
        }
        return LineSimulator(cfg).run().plr_hat;
    };
}

}  // namespace pascalnc::sim
