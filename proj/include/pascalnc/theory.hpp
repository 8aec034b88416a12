#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pascalnc/codes.hpp"

// Closed-form machinery: binomial distributions, per-hop decoded-packet
// distributions, packet-loss rates for all four schemes, line-network bounds
// and the achievable-rate metric.

namespace pascalnc::theory {

/// Line network of `links` memoryless erasure channels.
struct ChannelSpec {
    double delta = 0.1;
    int links = 1;
    std::optional<std::vector<double>> per_link;  // overrides the uniform delta

    void validate() const;
    double delta_at(int link) const {  // 0-based link index
        return per_link ? (*per_link)[static_cast<std::size_t>(link)] : delta;
    }
    double p_at(int link) const { return 1.0 - delta_at(link); }
    /// Probability that one packet survives every link.
    double end_to_end_p() const;
};

/// Decodability assumption for received coded packets. ideal_mds treats any
/// K received dimensions as decodable; random_q weights e coded packets
/// covering r needed dimensions by prod_{j=0}^{r-1} (1 - q^-(e-j)).
struct RankModel {
    enum class Kind { IdealMds, RandomQ };
    Kind kind = Kind::IdealMds;
    std::uint32_t q = 256;

    static RankModel ideal() { return {Kind::IdealMds, 0}; }
    static RankModel random_q(std::uint32_t q);

    double full_rank_prob(int needed, int received) const;
    /// Complement of full_rank_prob, computed without cancellation.
    double rank_deficit_prob(int needed, int received) const;
    std::string tag() const;
};

RankModel default_rank_model(codes::Scheme scheme, std::uint32_t q);

/// Distribution of the number of information packets decoded at one hop.
struct ZDistribution {
    int k = 0;
    std::vector<double> probs;  // index z = 0..k
    std::string scheme_tag;
    std::string rank_tag;

    double mean() const;
};

/// C(n,v) p^v (1-p)^(n-v); computed in log space above n = 60.
double binom_pmf(int n, int v, double p);
/// Upper tail sum_{v=lo}^{n}; full mass when lo <= 0, zero when lo > n.
double binom_tail(int n, int lo, double p);

/// Block (unscheduled) Z-distribution: systematic arrivals U ~ bin(K, p) plus
/// coded arrivals E ~ bin(N-K, p); full decode needs E to cover K - U under
/// the rank model, otherwise only the systematic arrivals count.
ZDistribution z_dist_block(int k, int n, double delta, const RankModel& rm);

/// Scheduled (two-sub-block) Z-distribution. Rejects K = 1 (no meaningful
/// split): callers use z_dist_block there.
ZDistribution z_dist_scheduled(int k, int n, double delta, const RankModel& rm);

/// Per-hop packet loss rate 1 - E[Z]/K.
double plr_hop(const ZDistribution& z);

struct PlrResult {
    std::vector<double> per_hop;
    double end_to_end = 0.0;
    bool is_upper_bound = false;
    bool requires_simulation = false;
};

/// End-to-end bound 1 - prod_i (1 - P_i) over per-hop loss rates.
PlrResult plr_line(const std::vector<double>& per_hop);

/// Multi-hop composition for random schemes. forward substitutes the
/// end-to-end survival probability into the single-hop distribution; recode
/// has no closed form and flags the caller to simulate.
PlrResult plr_random_multihop(int k, int n, const ChannelSpec& channel, codes::RelayMode relay,
                              const RankModel& rm);

/// R = rho (1 - plr).
double achievable_rate(double rho, double plr);

/// min over links of (1 - delta_i).
double line_capacity(const ChannelSpec& channel);

/// Scheme-level dispatch: decode_reencode composes per-hop loss rates into
/// the product-form bound; forward folds all links into one effective hop;
/// recode flags simulation.
PlrResult scheme_plr(codes::Scheme scheme, int k, int n, const ChannelSpec& channel,
                     const RankModel& rm, codes::RelayMode relay);

/// Single-hop Z-distribution for a scheme (block or scheduled as appropriate;
/// K = 1 scheduled degenerates to block).
ZDistribution scheme_z_dist(codes::Scheme scheme, int k, int n, double delta, const RankModel& rm);

}  // namespace pascalnc::theory
