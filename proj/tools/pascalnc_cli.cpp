// pascalnc: network-coding codec and finite-length performance toolkit.
//
// Subcommands:
//   theory    closed-form Z-distributions and loss-rate tables over a grid
//   optimize  optimal coding-rate search per block length (CSV sweep)
//   simulate  Monte Carlo line-network run (JSON result, optional trace)
//   usecase   paired scheme comparison, overhead and delay table material
//
// Machine-first output (CSV/JSON); --pretty adds a human-readable table.
// Exit codes: 0 success, 1 failed consistency check, 2 usage error,
// 3 infeasible optimization (every block length returned an empty outcome).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pascalnc/io.hpp"
#include "pascalnc/sim.hpp"

namespace pnc = pascalnc;
using pnc::io::ordered_json;

namespace {

constexpr std::uint64_t kDefaultSeed = 0xC0DE5EEDULL;  // fixed, not wall clock

struct CommonOutput {
    std::string out_path;
    std::string format = "json";
    bool pretty = false;
    bool no_timestamp = false;
};

void add_output_options(CLI::App* cmd, CommonOutput& out, const std::string& default_format) {
    out.format = default_format;
    cmd->add_option("--out", out.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--pretty", out.pretty, "Append a human-readable table to stderr");
    cmd->add_flag("--no-timestamp", out.no_timestamp,
                  "Omit the timestamp field for byte-identical reruns");
}

void stamp(ordered_json& doc, const CommonOutput& out) {
    if (out.no_timestamp) return;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    doc["timestamp"] = buf;
}

int write_text(const CommonOutput& out, const std::string& text) {
    if (out.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out.out_path, std::ios::binary | std::ios::trunc);
    if (!f) {
        std::cerr << "error: cannot open output file: " << out.out_path << "\n";
        return 2;
    }
    f << text;
    return 0;
}

int write_json(const CommonOutput& out, const ordered_json& doc) {
    return write_text(out, doc.dump(2) + "\n");
}

pnc::codes::Scheme require_scheme(const std::string& name) {
    const auto s = pnc::codes::parse_scheme(name);
    if (!s) throw CLI::ValidationError("--scheme", "unknown scheme: " + name);
    return *s;
}

pnc::theory::RankModel pick_rank_model(const std::string& name, pnc::codes::Scheme scheme, int m) {
    const std::uint32_t q = 1u << m;
    if (name.empty() || name == "default") return pnc::theory::default_rank_model(scheme, q);
    if (name == "ideal" || name == "ideal_mds") return pnc::theory::RankModel::ideal();
    if (name == "random_q" || name == "randomq") return pnc::theory::RankModel::random_q(q);
    throw CLI::ValidationError("--rank-model", "expected ideal|random_q|default");
}

pnc::codes::RelayMode pick_relay_mode(const std::string& name, pnc::codes::Scheme scheme) {
    if (name.empty() || name == "default") return pnc::codes::default_relay_mode(scheme);
    const auto r = pnc::codes::parse_relay_mode(name);
    if (!r) throw CLI::ValidationError("--relay-mode", "expected decode-reencode|forward|recode");
    return *r;
}

pnc::codes::ColumnPolicy pick_column_policy(const std::string& name, std::uint64_t seed,
                                            int budget) {
    if (name.empty()) return pnc::codes::ColumnPolicy::optimized(seed, budget);
    const auto kind = pnc::codes::parse_column_policy(name);
    if (!kind)
        throw CLI::ValidationError("--column-policy", "expected sequential|random|optimized");
    pnc::codes::ColumnPolicy p;
    p.kind = *kind;
    p.seed = seed;
    p.budget = budget;
    return p;
}

std::string format_percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// ---------------------------------------------------------------- theory ---

struct TheoryArgs {
    std::vector<std::string> schemes{"pascalnc"};
    std::vector<int> k_list{8};
    std::vector<int> n_list{16};
    std::vector<double> delta_list{0.1};
    std::vector<int> links_list{1};
    std::string rank_model = "default";
    std::string relay_mode = "default";
    int m = 8;
    CommonOutput out;
};

int run_theory(const TheoryArgs& a) {
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "scheme,K,N,delta,L,rank_model,plr_hop,plr,is_upper_bound\n";
    for (const auto& sname : a.schemes) {
        const auto scheme = require_scheme(sname);
        const auto rm = pick_rank_model(a.rank_model, scheme, a.m);
        const auto relay = pick_relay_mode(a.relay_mode, scheme);
        for (int k : a.k_list) {
            for (int n : a.n_list) {
                if (k < 1 || k >= n)
                    throw CLI::ValidationError("--K", "grid point needs 1 <= K < N, got K=" +
                                                          std::to_string(k) +
                                                          " N=" + std::to_string(n));
                for (double delta : a.delta_list) {
                    for (int links : a.links_list) {
                        pnc::theory::ChannelSpec ch{delta, links, std::nullopt};
                        const auto zd = pnc::theory::scheme_z_dist(scheme, k, n, delta, rm);
                        const auto plr = pnc::theory::scheme_plr(scheme, k, n, ch, rm, relay);
                        rows.push_back(pnc::io::theory_record(scheme, k, n, delta, links, zd, plr));
                        char line[256];
                        std::snprintf(line, sizeof line, "%s,%d,%d,%.10g,%d,%s,%.10g,%.10g,%d\n",
                                      pnc::codes::to_string(scheme).c_str(), k, n, delta, links,
                                      zd.rank_tag.c_str(), pnc::theory::plr_hop(zd), plr.end_to_end,
                                      plr.is_upper_bound ? 1 : 0);
                        csv << line;
                    }
                }
            }
        }
    }
    if (a.out.pretty) {
        std::cerr << "theory grid: " << rows.size() << " points\n";
        for (const auto& r : rows)
            std::cerr << "  " << r["scheme"].get<std::string>() << " K=" << r["K"] << " N=" << r["N"]
                      << " delta=" << r["delta"] << " L=" << r["L"] << " plr=" << r["plr"] << "\n";
    }
    if (a.out.format == "csv") return write_text(a.out, csv.str());
    ordered_json doc;
    doc["command"] = "theory";
    doc["records"] = rows;
    stamp(doc, a.out);
    return write_json(a.out, doc);
}

// -------------------------------------------------------------- optimize ---

struct OptimizeArgs {
    std::string scheme = "pascalnc";
    std::vector<int> n_list{50};
    double delta = 0.1;
    int links = 1;
    double pe_target = 1e-3;
    std::string evaluator = "theory";
    std::string rank_model = "default";
    std::string relay_mode = "default";
    int m = 8;
    int rounds = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::string column_policy;
    std::uint64_t column_seed = 1;
    int column_budget = 16;
    int payload_symbols = 2;
    int threads = 1;
    CommonOutput out;
};

int run_optimize(const OptimizeArgs& a) {
    const auto scheme = require_scheme(a.scheme);
    const auto rm = pick_rank_model(a.rank_model, scheme, a.m);
    const auto relay = pick_relay_mode(a.relay_mode, scheme);
    pnc::theory::ChannelSpec channel{a.delta, a.links, std::nullopt};

    pnc::optimize::EvaluatorFactory factory;
    std::string kind;
    if (a.evaluator == "theory") {
        kind = "theory";
        factory = [=](int n) {
            return pnc::optimize::make_theory_evaluator(scheme, n, channel, rm, relay);
        };
    } else if (a.evaluator == "sim") {
        char kindbuf[64];
        std::snprintf(kindbuf, sizeof kindbuf, "simulation(%d;%llu)", a.rounds,
                      static_cast<unsigned long long>(a.seed));
        kind = kindbuf;
        factory = [=](int n) {
            pnc::sim::SimConfig base;
            base.code.scheme = scheme;
            base.code.k = std::max(1, n / 2);
            base.code.n = n;
            base.code.m = a.m;
            if (pnc::codes::is_pascal(scheme)) {
                base.code.columns = pick_column_policy(a.column_policy, a.column_seed, a.column_budget);
                base.code.signaling = pnc::codes::Signaling::None;
            } else {
                base.code.signaling = pnc::codes::Signaling::Seeds;
            }
            base.channel = channel;
            base.rounds = a.rounds;
            base.master_seed = a.seed;
            base.relay_mode = relay;
            base.payload_symbols = a.payload_symbols;
            base.threads = a.threads;
            return pnc::sim::make_sim_evaluator(base);
        };
    } else {
        throw CLI::ValidationError("--evaluator", "expected theory|sim");
    }

    const auto rows = pnc::optimize::optimize_sweep(a.n_list, a.pe_target, factory, kind);

    bool any_feasible = false;
    for (const auto& row : rows)
        if (row.error.empty() && !row.outcome.empty) any_feasible = true;

    if (a.out.pretty) {
        for (const auto& row : rows) {
            std::cerr << "N=" << row.n << ": ";
            if (!row.error.empty())
                std::cerr << "error: " << row.error << "\n";
            else if (row.outcome.empty)
                std::cerr << "infeasible (even K=1 misses the target)\n";
            else
                std::cerr << "K*=" << row.outcome.k_star << " rho*=" << row.outcome.rho_star
                          << " plr=" << row.outcome.plr_at_rho_star << " R*=" << row.outcome.r_star
                          << " iters=" << row.outcome.iterations << "\n";
        }
    }

    int rc;
    if (a.out.format == "csv") {
        std::ostringstream os;
        pnc::optimize::write_sweep_csv(os, scheme, rows);
        rc = write_text(a.out, os.str());
    } else {
        ordered_json doc;
        doc["command"] = "optimize";
        doc["scheme"] = pnc::codes::to_string(scheme);
        doc["delta"] = a.delta;
        doc["links"] = a.links;
        doc["pe_target"] = a.pe_target;
        doc["rows"] = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r;
            r["N"] = row.n;
            if (!row.error.empty()) r["error"] = row.error;
            r.update(pnc::io::outcome_record(row.outcome));
            doc["rows"].push_back(r);
        }
        stamp(doc, a.out);
        rc = write_json(a.out, doc);
    }
    if (rc != 0) return rc;
    return any_feasible ? 0 : 3;
}

// -------------------------------------------------------------- simulate ---

struct SimulateArgs {
    std::string scheme = "pascalnc";
    int k = 8;
    int n = 16;
    std::vector<double> delta{0.1};
    int links = 1;
    int m = 8;
    int rounds = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::string relay_mode = "default";
    std::string column_policy;
    std::uint64_t column_seed = 1;
    int column_budget = 16;
    std::string signaling = "seeds";
    int payload_symbols = 2;
    int threads = 1;
    double slot_ms = 4.8;
    std::string trace_path;
    bool check_theory = false;
    std::string rank_model = "default";
    CommonOutput out;
};

pnc::sim::SimConfig build_sim_config(const SimulateArgs& a) {
    const auto scheme = require_scheme(a.scheme);
    pnc::sim::SimConfig cfg;
    cfg.code.scheme = scheme;
    cfg.code.k = a.k;
    cfg.code.n = a.n;
    cfg.code.m = a.m;
    if (pnc::codes::is_pascal(scheme)) {
        cfg.code.columns = pick_column_policy(a.column_policy, a.column_seed, a.column_budget);
        cfg.code.signaling = pnc::codes::Signaling::None;
    } else {
        const auto sig = pnc::codes::parse_signaling(a.signaling);
        if (!sig || *sig == pnc::codes::Signaling::None)
            throw CLI::ValidationError("--signaling", "random schemes use seeds|coefficients");
        cfg.code.signaling = *sig;
    }
    if (a.delta.size() == 1) {
        cfg.channel = {a.delta.front(), a.links, std::nullopt};
    } else {
        if (static_cast<int>(a.delta.size()) != a.links)
            throw CLI::ValidationError("--delta", "give one value or one per link");
        cfg.channel = {a.delta.front(), a.links, a.delta};
    }
    cfg.rounds = a.rounds;
    cfg.master_seed = a.seed;
    cfg.relay_mode = pick_relay_mode(a.relay_mode, scheme);
    cfg.payload_symbols = a.payload_symbols;
    cfg.threads = a.threads;
    cfg.slot_duration_ms = a.slot_ms;
    return cfg;
}

int run_simulate(const SimulateArgs& a) {
    const auto cfg = build_sim_config(a);
    pnc::sim::LineSimulator simulator(cfg);

    if (!a.trace_path.empty()) {
        std::ofstream tf(a.trace_path, std::ios::binary | std::ios::trunc);
        if (!tf) {
            std::cerr << "error: cannot open trace file: " << a.trace_path << "\n";
            return 2;
        }
        for (int r = 0; r < cfg.rounds; ++r) {
            simulator.run_round(static_cast<std::uint64_t>(r), [&](const pnc::sim::TraceEvent& ev) {
                ordered_json line;
                line["round"] = ev.round;
                line["hop"] = ev.hop;
                line["slot"] = ev.slot;
                line["event"] = ev.event;
                line["packet"] = ev.packet;
                tf << line.dump() << "\n";
            });
        }
    }

    const auto res = simulator.run();
    ordered_json doc;
    doc["command"] = "simulate";
    doc.update(pnc::io::sim_record(cfg, res));

    int rc = 0;
    if (a.check_theory) {
        const auto rm = pick_rank_model(a.rank_model, cfg.code.scheme, cfg.code.m);
        const auto relay = cfg.effective_relay_mode();
        const auto plr = pnc::theory::scheme_plr(cfg.code.scheme, cfg.code.k, cfg.code.n,
                                                 cfg.channel, rm, relay);
        if (plr.requires_simulation)
            throw CLI::ValidationError("--check-theory", "no closed form for recoding relays");

        ordered_json check;
        check["theory_plr"] = plr.end_to_end;
        const bool one_sided = plr.is_upper_bound && cfg.channel.links > 1;
        double tol;
        if (one_sided) {
            tol = 3.0 * res.plr_se;
            check["sided"] = "upper_bound";
            check["pass"] = res.plr_hat <= plr.end_to_end + tol;
        } else {
            // Two-sided: binomial-exact theory variance of the per-round loss
            // fraction gives a sane tolerance even when the sim saw no losses.
            const double delta_eff =
                relay == pnc::codes::RelayMode::Forward ? 1.0 - cfg.channel.end_to_end_p()
                                                        : cfg.channel.delta_at(0);
            const auto zd = pnc::theory::scheme_z_dist(cfg.code.scheme, cfg.code.k, cfg.code.n,
                                                       delta_eff, rm);
            double m2 = 0.0;
            for (int z = 0; z <= zd.k; ++z) {
                const double frac = static_cast<double>(zd.k - z) / zd.k;
                m2 += zd.probs[static_cast<std::size_t>(z)] * frac * frac;
            }
            const double var = std::max(0.0, m2 - plr.end_to_end * plr.end_to_end);
            tol = 3.0 * std::max(res.plr_se, std::sqrt(var / res.rounds));
            check["sided"] = "two_sided";
            check["pass"] = std::abs(res.plr_hat - plr.end_to_end) <= tol;
        }
        check["tolerance"] = tol;
        doc["check"] = check;
        if (!check["pass"].get<bool>()) rc = 1;
    }

    stamp(doc, a.out);
    if (a.out.pretty)
        std::cerr << "plr=" << res.plr_hat << " (se " << res.plr_se << ")  rate=" << res.r_hat
                  << "  delay=" << res.mean_delay_slots << " slots\n";
    const int wrc = write_json(a.out, doc);
    return wrc != 0 ? wrc : rc;
}

// --------------------------------------------------------------- usecase ---

struct UsecaseArgs {
    std::vector<int> links_list{6, 10};
    int n = 50;
    double delta = 0.1;
    int m = 8;
    int packet_symbols = 1500;
    double bitrate_mbps = 2.5;
    double pe_target = 1e-3;
    int rounds = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> max_delay_ms;
    int threads = 1;
    int opt_rounds = 5000;
    int column_budget = 16;
    std::uint64_t column_seed = 1;
    int payload_symbols = 2;
    CommonOutput out;
};

int run_usecase(const UsecaseArgs& a) {
    const double slot_ms = a.packet_symbols * 8.0 / (a.bitrate_mbps * 1000.0);
    ordered_json doc;
    doc["command"] = "usecase";
    doc["N"] = a.n;
    doc["delta"] = a.delta;
    doc["m"] = a.m;
    doc["M"] = a.packet_symbols;
    doc["bitrate_mbps"] = a.bitrate_mbps;
    doc["slot_ms"] = slot_ms;
    doc["pe_target"] = a.pe_target;
    doc["rounds"] = a.rounds;
    doc["seed"] = a.seed;
    if (a.max_delay_ms) doc["max_delay_ms"] = *a.max_delay_ms;
    doc["entries"] = ordered_json::array();

    for (int links : a.links_list) {
        pnc::theory::ChannelSpec channel{a.delta, links, std::nullopt};
        const auto grid = pnc::optimize::RateGrid::of(a.n);

        // Pascal side: closed-form optimum of the scheduled scheme.
        const auto ps_eval = pnc::optimize::make_theory_evaluator(
            pnc::codes::Scheme::PascalNCS, a.n, channel, pnc::theory::RankModel::ideal(),
            pnc::codes::RelayMode::DecodeReencode);
        auto ps_opt = pnc::optimize::optimize_rate(grid, a.pe_target, ps_eval);
        ps_opt.evaluator_kind = "theory";

        // Random side, coefficient signaling: the generation size that a
        // recoding SNC deployment would pick (Monte Carlo evaluator, common
        // random numbers across candidate rates).
        pnc::sim::SimConfig snc_base;
        snc_base.code.scheme = pnc::codes::Scheme::SNC;
        snc_base.code.k = a.n / 2;
        snc_base.code.n = a.n;
        snc_base.code.m = a.m;
        snc_base.code.signaling = pnc::codes::Signaling::Coefficients;
        snc_base.channel = channel;
        snc_base.rounds = a.opt_rounds;
        snc_base.master_seed = a.seed;
        snc_base.relay_mode = pnc::codes::RelayMode::Recode;
        snc_base.payload_symbols = a.payload_symbols;
        snc_base.threads = a.threads;
        snc_base.slot_duration_ms = slot_ms;
        auto snc_opt = pnc::optimize::optimize_rate(grid, a.pe_target,
                                                    pnc::sim::make_sim_evaluator(snc_base), 1e-9);
        char kindbuf[64];
        std::snprintf(kindbuf, sizeof kindbuf, "simulation(%d;%llu)", a.opt_rounds,
                      static_cast<unsigned long long>(a.seed));
        snc_opt.evaluator_kind = kindbuf;

        ordered_json entry;
        entry["links"] = links;
        entry["pascalncs_optimum"] = pnc::io::outcome_record(ps_opt);
        entry["snc_recode_optimum"] = pnc::io::outcome_record(snc_opt);

        if (!ps_opt.empty) {
            // Head-to-head at the Pascal optimum (paired seeds, equal K).
            pnc::sim::SimConfig ps_cfg;
            ps_cfg.code.scheme = pnc::codes::Scheme::PascalNCS;
            ps_cfg.code.k = ps_opt.k_star;
            ps_cfg.code.n = a.n;
            ps_cfg.code.m = a.m;
            ps_cfg.code.columns = pnc::codes::ColumnPolicy::optimized(a.column_seed, a.column_budget);
            ps_cfg.channel = channel;
            ps_cfg.rounds = a.rounds;
            ps_cfg.master_seed = a.seed;
            ps_cfg.payload_symbols = a.payload_symbols;
            ps_cfg.threads = a.threads;
            ps_cfg.slot_duration_ms = slot_ms;

            pnc::sim::SimConfig snc_cfg = ps_cfg;
            snc_cfg.code.scheme = pnc::codes::Scheme::SNC;
            snc_cfg.code.columns = {};
            snc_cfg.code.signaling = pnc::codes::Signaling::Seeds;
            snc_cfg.relay_mode = std::nullopt;  // per-scheme default: forward

            const auto rep = pnc::sim::compare_schemes(ps_cfg, snc_cfg);
            entry["K"] = ps_opt.k_star;
            entry["pascalncs"] = pnc::io::sim_record(ps_cfg, rep.a);
            entry["snc"] = pnc::io::sim_record(snc_cfg, rep.b);
            entry["rate_gain_percent"] = rep.rate_gain_percent;
            entry["rate_gain_se"] = rep.rate_gain_se;
            entry["delay_increase_percent"] = rep.delay_increase_percent;
            entry["delay_increase_se"] = rep.delay_increase_se;
            if (a.max_delay_ms) {
                entry["pascalncs_exceeds_max_delay"] = rep.a.mean_delay_ms > *a.max_delay_ms;
                entry["snc_exceeds_max_delay"] = rep.b.mean_delay_ms > *a.max_delay_ms;
            }
        }

        ordered_json overhead;
        pnc::codes::CodeSpec seeds_spec{pnc::codes::Scheme::SNC, snc_opt.empty ? 1 : snc_opt.k_star,
                                        a.n, a.m, {}, pnc::codes::Signaling::Seeds, 1};
        overhead["seeds_percent"] = pnc::codes::signaling_overhead(seeds_spec, links, a.packet_symbols);
        if (!snc_opt.empty) {
            pnc::codes::CodeSpec coeff_spec = seeds_spec;
            coeff_spec.signaling = pnc::codes::Signaling::Coefficients;
            overhead["coefficients_percent"] =
                pnc::codes::signaling_overhead(coeff_spec, links, a.packet_symbols);
            overhead["coefficients_K"] = snc_opt.k_star;
        }
        pnc::codes::CodeSpec pascal_spec{pnc::codes::Scheme::PascalNC, 1, a.n, a.m,
                                         pnc::codes::ColumnPolicy::optimized(1),
                                         pnc::codes::Signaling::None, 1};
        overhead["pascal_optimized_percent"] =
            pnc::codes::signaling_overhead(pascal_spec, links, a.packet_symbols);
        entry["overhead"] = overhead;

        doc["entries"].push_back(entry);
    }

    if (a.out.pretty) {
        std::fprintf(stderr, "slot duration: %.4g ms (M=%d symbols at %.3g Mbps)\n", slot_ms,
                     a.packet_symbols, a.bitrate_mbps);
        for (const auto& e : doc["entries"]) {
            std::fprintf(stderr, "L=%d:", e["links"].get<int>());
            if (e.contains("rate_gain_percent"))
                std::fprintf(stderr, " rate gain %s%%, delay increase %s%%",
                             format_percent(e["rate_gain_percent"].get<double>()).c_str(),
                             format_percent(e["delay_increase_percent"].get<double>()).c_str());
            const auto& ov = e["overhead"];
            std::fprintf(stderr, "; overhead: seeds %s%%",
                         format_percent(ov["seeds_percent"].get<double>()).c_str());
            if (ov.contains("coefficients_percent"))
                std::fprintf(stderr, ", coefficients %s%%",
                             format_percent(ov["coefficients_percent"].get<double>()).c_str());
            std::fprintf(stderr, ", pascal %s%%\n",
                         format_percent(ov["pascal_optimized_percent"].get<double>()).c_str());
        }
    }

    stamp(doc, a.out);
    return write_json(a.out, doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-coding codec and finite-length performance toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key=value; [section] per subcommand)");

    TheoryArgs t;
    auto* theory = app.add_subcommand("theory", "Closed-form Z-distribution and loss-rate tables");
    theory->configurable();
    theory->add_option("--scheme", t.schemes, "Scheme grid axis");
    theory->add_option("--K", t.k_list, "Generation size grid axis");
    theory->add_option("--N", t.n_list, "Block length grid axis");
    theory->add_option("--delta", t.delta_list, "Erasure probability grid axis");
    theory->add_option("--links,-L", t.links_list, "Link count grid axis");
    theory->add_option("--rank-model", t.rank_model, "ideal|random_q|default");
    theory->add_option("--relay-mode", t.relay_mode, "decode-reencode|forward|default");
    theory->add_option("--m", t.m, "Field exponent");
    add_output_options(theory, t.out, "json");

    OptimizeArgs o;
    auto* optimize = app.add_subcommand("optimize", "Optimal coding-rate sweep");
    optimize->configurable();
    optimize->add_option("--scheme", o.scheme, "Coding scheme");
    optimize->add_option("--N", o.n_list, "Block lengths to sweep");
    optimize->add_option("--delta", o.delta, "Erasure probability");
    optimize->add_option("--links,-L", o.links, "Number of links");
    optimize->add_option("--pe-target", o.pe_target, "Loss-rate target");
    optimize->add_option("--evaluator", o.evaluator, "theory|sim");
    optimize->add_option("--rank-model", o.rank_model, "ideal|random_q|default");
    optimize->add_option("--relay-mode", o.relay_mode, "Relay behavior");
    optimize->add_option("--m", o.m, "Field exponent");
    optimize->add_option("--rounds", o.rounds, "Simulation rounds per evaluation");
    optimize->add_option("--seed", o.seed, "Master seed");
    optimize->add_option("--column-policy", o.column_policy, "sequential|random|optimized");
    optimize->add_option("--column-seed", o.column_seed, "Column selection seed");
    optimize->add_option("--column-budget", o.column_budget, "Optimized candidate sets");
    optimize->add_option("--payload-symbols", o.payload_symbols, "Simulated payload length");
    optimize->add_option("--threads", o.threads, "Worker threads (0 = auto)");
    add_output_options(optimize, o.out, "csv");

    SimulateArgs s;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo line-network simulation");
    simulate->configurable();
    simulate->add_option("--scheme", s.scheme, "Coding scheme");
    simulate->add_option("--K", s.k, "Generation size");
    simulate->add_option("--N", s.n, "Block length");
    simulate->add_option("--delta", s.delta, "Erasure probability (one value or one per link)");
    simulate->add_option("--links,-L", s.links, "Number of links");
    simulate->add_option("--m", s.m, "Field exponent");
    simulate->add_option("--rounds", s.rounds, "Simulation rounds");
    simulate->add_option("--seed", s.seed, "Master seed");
    simulate->add_option("--relay-mode", s.relay_mode, "decode-reencode|forward|recode|default");
    simulate->add_option("--column-policy", s.column_policy, "sequential|random|optimized");
    simulate->add_option("--column-seed", s.column_seed, "Column selection seed");
    simulate->add_option("--column-budget", s.column_budget, "Optimized candidate sets");
    simulate->add_option("--signaling", s.signaling, "seeds|coefficients (random schemes)");
    simulate->add_option("--payload-symbols", s.payload_symbols, "Payload symbols per packet");
    simulate->add_option("--threads", s.threads, "Worker threads (0 = auto)");
    simulate->add_option("--slot-ms", s.slot_ms, "Slot duration in milliseconds");
    simulate->add_option("--trace", s.trace_path, "Write per-slot JSONL trace to this file");
    simulate->add_flag("--check-theory", s.check_theory,
                       "Compare against the closed form (exit 1 on mismatch)");
    simulate->add_option("--rank-model", s.rank_model, "Rank model for --check-theory");
    add_output_options(simulate, s.out, "json");

    UsecaseArgs u;
    auto* usecase = app.add_subcommand("usecase", "Scheme comparison and overhead table material");
    usecase->configurable();
    usecase->add_option("--links,-L", u.links_list, "Link counts to evaluate");
    usecase->add_option("--N", u.n, "Block length");
    usecase->add_option("--delta", u.delta, "Erasure probability");
    usecase->add_option("--m", u.m, "Field exponent");
    usecase->add_option("--M", u.packet_symbols, "Packet length in symbols");
    usecase->add_option("--bitrate-mbps", u.bitrate_mbps, "Flow bit-rate");
    usecase->add_option("--pe-target", u.pe_target, "Loss-rate target");
    usecase->add_option("--rounds", u.rounds, "Comparison simulation rounds");
    usecase->add_option("--opt-rounds", u.opt_rounds, "Rounds per optimizer evaluation");
    usecase->add_option("--seed", u.seed, "Master seed");
    usecase->add_option("--max-delay-ms", u.max_delay_ms, "Flag schemes exceeding this delay");
    usecase->add_option("--threads", u.threads, "Worker threads (0 = auto)");
    usecase->add_option("--column-budget", u.column_budget, "Optimized candidate sets");
    usecase->add_option("--column-seed", u.column_seed, "Column selection seed");
    usecase->add_option("--payload-symbols", u.payload_symbols, "Simulated payload length");
    add_output_options(usecase, u.out, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (theory->parsed()) return run_theory(t);
        if (optimize->parsed()) return run_optimize(o);
        if (simulate->parsed()) return run_simulate(s);
        if (usecase->parsed()) return run_usecase(u);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
