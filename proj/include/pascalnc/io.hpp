#pragma once

#include <string>

#include <json.hpp>

#include "pascalnc/optimize.hpp"
#include "pascalnc/sim.hpp"
#include "pascalnc/theory.hpp"

// JSON record builders shared by the CLI, the tests and the bindings.

namespace pascalnc::io {

using ordered_json = nlohmann::ordered_json;

inline ordered_json theory_record(codes::Scheme scheme, int k, int n, double delta, int links,
                                  const theory::ZDistribution& zd, const theory::PlrResult& plr) {
    ordered_json rec;
    rec["scheme"] = codes::to_string(scheme);
    rec["K"] = k;
    rec["N"] = n;
    rec["delta"] = delta;
    rec["L"] = links;
    rec["probs"] = zd.probs;
    rec["plr_hop"] = theory::plr_hop(zd);
    rec["plr"] = plr.end_to_end;
    rec["is_upper_bound"] = plr.is_upper_bound;
    rec["rank_model"] = zd.rank_tag;
    return rec;
}

inline ordered_json sim_record(const sim::SimConfig& cfg, const sim::SimResult& res) {
    ordered_json rec;
    rec["scheme"] = codes::to_string(cfg.code.scheme);
    rec["K"] = cfg.code.k;
    rec["N"] = cfg.code.n;
    rec["m"] = cfg.code.m;
    rec["delta"] = cfg.channel.delta;
    if (cfg.channel.per_link) rec["delta_per_link"] = *cfg.channel.per_link;
    rec["links"] = cfg.channel.links;
    rec["relay_mode"] = codes::to_string(cfg.effective_relay_mode());
    rec["rounds"] = res.rounds;
    rec["seed"] = res.seed;
    rec["payload_symbols"] = cfg.payload_symbols;
    rec["slot_ms"] = cfg.slot_duration_ms;
    rec["plr"] = res.plr_hat;
    rec["plr_se"] = res.plr_se;
    rec["rate"] = res.r_hat;
    rec["delivered_fraction"] = res.delivered_fraction;
    rec["delay_slots"] = res.mean_delay_slots;     // null when nothing was released
    rec["delay_se_slots"] = res.delay_se_slots;
    rec["delay_ms"] = res.mean_delay_ms;
    rec["released_packets"] = res.released_packets;
    return rec;
}

inline ordered_json outcome_record(const optimize::OptimizerOutcome& o) {
    ordered_json rec;
    if (o.empty) {
        rec["rho_star"] = nullptr;
        rec["K_star"] = nullptr;
        rec["plr"] = nullptr;
        rec["R_star"] = nullptr;
    } else {
        rec["rho_star"] = o.rho_star;
        rec["K_star"] = o.k_star;
        rec["plr"] = o.plr_at_rho_star;
        rec["R_star"] = o.r_star;
    }
    rec["iterations"] = o.iterations;
    rec["evaluator"] = o.evaluator_kind;
    if (!o.warnings.empty()) rec["warnings"] = o.warnings;
    return rec;
}

}  // namespace pascalnc::io
