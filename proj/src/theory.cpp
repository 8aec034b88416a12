#include "pascalnc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pascalnc::theory {
namespace {

/// Neumaier-compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

constexpr int kLogSpaceThreshold = 60;

double binom_coeff(int n, int v) {
    double c = 1.0;
    v = std::min(v, n - v);
    for (int i = 1; i <= v; ++i) c = c * static_cast<double>(n - v + i) / static_cast<double>(i);
    return c;
}

}  // namespace

void ChannelSpec::validate() const {
    if (links < 1) throw std::invalid_argument("channel: need at least one link");
    if (per_link) {
        if (static_cast<int>(per_link->size()) != links)
            throw std::invalid_argument("channel: per-link list length != links");
        for (double d : *per_link)
            if (d < 0.0 || d > 1.0)
                throw std::invalid_argument("channel: erasure probability outside [0, 1]");
    } else if (delta < 0.0 || delta > 1.0) {
        throw std::invalid_argument("channel: erasure probability outside [0, 1]");
    }
}

double ChannelSpec::end_to_end_p() const {
    double p = 1.0;
    for (int i = 0; i < links; ++i) p *= p_at(i);
    return p;
}

RankModel RankModel::random_q(std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("rank model: q must be >= 2");
    return {Kind::RandomQ, q};
}

double RankModel::full_rank_prob(int needed, int received) const {
    if (needed <= 0) return 1.0;
    if (received < needed) return 0.0;
    if (kind == Kind::IdealMds) return 1.0;
    double log_prob = 0.0;
    for (int j = 0; j < needed; ++j)
        log_prob += std::log1p(-std::pow(static_cast<double>(q), -(received - j)));
    return std::exp(log_prob);
}

double RankModel::rank_deficit_prob(int needed, int received) const {
    if (needed <= 0) return 0.0;
    if (received < needed) return 1.0;
    if (kind == Kind::IdealMds) return 0.0;
    double log_prob = 0.0;
    for (int j = 0; j < needed; ++j)
        log_prob += std::log1p(-std::pow(static_cast<double>(q), -(received - j)));
    return -std::expm1(log_prob);
}

std::string RankModel::tag() const {
    return kind == Kind::IdealMds ? "ideal_mds" : "random_q(" + std::to_string(q) + ")";
}

RankModel default_rank_model(codes::Scheme scheme, std::uint32_t q) {
    return codes::is_pascal(scheme) ? RankModel::ideal() : RankModel::random_q(q);
}

double ZDistribution::mean() const {
    Kahan acc;
    for (std::size_t z = 0; z < probs.size(); ++z) acc.add(static_cast<double>(z) * probs[z]);
    return acc.value();
}

double binom_pmf(int n, int v, double p) {
    if (n < 0 || v < 0 || v > n) throw std::invalid_argument("binom: invalid (n, v)");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binom: p outside [0, 1]");
    if (p == 0.0) return v == 0 ? 1.0 : 0.0;
    if (p == 1.0) return v == n ? 1.0 : 0.0;
    if (n <= kLogSpaceThreshold)
        return binom_coeff(n, v) * std::pow(p, v) * std::pow(1.0 - p, n - v);
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(v + 1.0) - std::lgamma(n - v + 1.0) +
                           v * std::log(p) + (n - v) * std::log1p(-p);
    return std::exp(log_pmf);
}

double binom_tail(int n, int lo, double p) {
    if (n < 0) throw std::invalid_argument("binom: negative n");
    if (lo <= 0) return 1.0;
    if (lo > n) return 0.0;
    Kahan acc;
    for (int v = lo; v <= n; ++v) acc.add(binom_pmf(n, v, p));
    return std::min(1.0, acc.value());
}

namespace {

std::vector<double> binom_pmf_vector(int n, double p) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int v = 0; v <= n; ++v) out[static_cast<std::size_t>(v)] = binom_pmf(n, v, p);
    return out;
}

void finalize_distribution(ZDistribution& zd) {
    // Z = 0 is defined by complement so the distribution sums to one without
    // relying on cancellation-prone tail subtractions.
    Kahan rest;
    for (std::size_t z = 1; z < zd.probs.size(); ++z) rest.add(zd.probs[z]);
    zd.probs[0] = std::max(0.0, 1.0 - rest.value());
}

}  // namespace

ZDistribution z_dist_block(int k, int n, double delta, const RankModel& rm) {
    if (k < 1) throw std::invalid_argument("z_dist: K must be >= 1");
    if (n <= k) throw std::invalid_argument("z_dist: N must exceed K");
    if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("z_dist: delta outside [0, 1]");
    const double p = 1.0 - delta;
    const int nc = n - k;
    const auto pu = binom_pmf_vector(k, p);
    const auto pe = binom_pmf_vector(nc, p);

    ZDistribution zd;
    zd.k = k;
    zd.scheme_tag = "block";
    zd.rank_tag = rm.tag();
    zd.probs.assign(static_cast<std::size_t>(k) + 1, 0.0);

    Kahan full;
    for (int u = 0; u <= k; ++u) {
        // Complement form: probability the coded arrivals fail to cover K - u.
        Kahan miss;
        Kahan hit;
        for (int e = 0; e <= nc; ++e) {
            const double w = pe[static_cast<std::size_t>(e)];
            miss.add(w * rm.rank_deficit_prob(k - u, e));
            hit.add(w * rm.full_rank_prob(k - u, e));
        }
        if (u < k) zd.probs[static_cast<std::size_t>(u)] = pu[static_cast<std::size_t>(u)] * miss.value();
        full.add(pu[static_cast<std::size_t>(u)] * hit.value());
    }
    zd.probs[static_cast<std::size_t>(k)] = std::min(1.0, full.value());
    finalize_distribution(zd);
    return zd;
}

ZDistribution z_dist_scheduled(int k, int n, double delta, const RankModel& rm) {
    if (k < 2)
        throw std::invalid_argument("z_dist: scheduled split needs K >= 2; use z_dist_block");
    if (n <= k) throw std::invalid_argument("z_dist: N must exceed K");
    if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("z_dist: delta outside [0, 1]");
    const auto split = codes::ScheduleSplit::of(k, n);
    const double p = 1.0 - delta;
    const auto pu1 = binom_pmf_vector(split.k1, p);
    const auto pe1 = binom_pmf_vector(split.nc1, p);
    const auto pu2 = binom_pmf_vector(split.k2, p);
    const auto pe2 = binom_pmf_vector(split.nc2, p);

    ZDistribution zd;
    zd.k = k;
    zd.scheme_tag = "scheduled";
    zd.rank_tag = rm.tag();
    zd.probs.assign(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<Kahan> acc(static_cast<std::size_t>(k) + 1);

    // Joint sum over first-sub-block arrivals (u1 systematic, e1 coded).
    // Stage 1 solves the first K1 packets when the e1 coded arrivals cover
    // K1 - u1 dimensions. On success the leftover first-block coded packets
    // are pure redundancy (their support ends at K1), so full decode needs
    // the second-block coded arrivals to cover K2 - u2. On failure all coded
    // arrivals pool to cover the K - u1 - u2 unknowns.
    for (int u1 = 0; u1 <= split.k1; ++u1) {
        for (int e1 = 0; e1 <= split.nc1; ++e1) {
            const double w1 = pu1[static_cast<std::size_t>(u1)] * pe1[static_cast<std::size_t>(e1)];
            if (w1 == 0.0) continue;
            const double s1 = rm.full_rank_prob(split.k1 - u1, e1);
            for (int u2 = 0; u2 <= split.k2; ++u2) {
                const double w2 = w1 * pu2[static_cast<std::size_t>(u2)];
                if (w2 == 0.0) continue;
                if (s1 > 0.0) {
                    Kahan hit, miss;
                    for (int e2 = 0; e2 <= split.nc2; ++e2) {
                        const double we = pe2[static_cast<std::size_t>(e2)];
                        hit.add(we * rm.full_rank_prob(split.k2 - u2, e2));
                        miss.add(we * rm.rank_deficit_prob(split.k2 - u2, e2));
                    }
                    acc[static_cast<std::size_t>(k)].add(w2 * s1 * hit.value());
                    acc[static_cast<std::size_t>(split.k1 + u2)].add(w2 * s1 * miss.value());
                }
                const double f1 = 1.0 - s1;
                if (f1 > 0.0) {
                    Kahan hit, miss;
                    const int unknowns = k - u1 - u2;
                    for (int e2 = 0; e2 <= split.nc2; ++e2) {
                        const double we = pe2[static_cast<std::size_t>(e2)];
                        hit.add(we * rm.full_rank_prob(unknowns, e1 + e2));
                        miss.add(we * rm.rank_deficit_prob(unknowns, e1 + e2));
                    }
                    acc[static_cast<std::size_t>(k)].add(w2 * f1 * hit.value());
                    acc[static_cast<std::size_t>(u1 + u2)].add(w2 * f1 * miss.value());
                }
            }
        }
    }
    for (int z = 0; z <= k; ++z)
        zd.probs[static_cast<std::size_t>(z)] = std::min(1.0, acc[static_cast<std::size_t>(z)].value());
    finalize_distribution(zd);
    return zd;
}

double plr_hop(const ZDistribution& zd) {
    const int k = zd.k;
    Kahan acc;
    for (int z = 0; z < k; ++z)
        acc.add(zd.probs[static_cast<std::size_t>(z)] * (static_cast<double>(k - z) / k));
    return std::clamp(acc.value(), 0.0, 1.0);
}

PlrResult plr_line(const std::vector<double>& per_hop) {
    if (per_hop.empty()) throw std::invalid_argument("plr_line: empty per-hop list");
    Kahan log_acc;
    bool certain_loss = false;
    for (double pi : per_hop) {
        if (pi < 0.0 || pi > 1.0) throw std::invalid_argument("plr_line: loss rate outside [0, 1]");
        if (pi >= 1.0)
            certain_loss = true;
        else
            log_acc.add(std::log1p(-pi));
    }
    PlrResult out;
    out.per_hop = per_hop;
    out.end_to_end = certain_loss ? 1.0 : std::clamp(-std::expm1(log_acc.value()), 0.0, 1.0);
    out.is_upper_bound = true;
    return out;
}

PlrResult plr_random_multihop(int k, int n, const ChannelSpec& channel, codes::RelayMode relay,
                              const RankModel& rm) {
    channel.validate();
    if (relay == codes::RelayMode::Recode) {
        PlrResult out;
        out.requires_simulation = true;
        out.end_to_end = 1.0;
        return out;
    }
    if (relay == codes::RelayMode::DecodeReencode)
        throw std::invalid_argument("plr_random_multihop: decode-and-re-encode relays belong to "
                                    "the Pascal composition (plr_line)");
    // Store-nothing forwarding: a packet survives iff it survives every link.
    const double delta_eff = 1.0 - channel.end_to_end_p();
    const auto zd = z_dist_block(k, n, delta_eff, rm);
    PlrResult out;
    out.end_to_end = plr_hop(zd);
    out.per_hop = {out.end_to_end};
    out.is_upper_bound = false;
    return out;
}

double achievable_rate(double rho, double plr) {
    if (rho <= 0.0 || rho >= 1.0) throw std::invalid_argument("rate: rho outside (0, 1)");
    if (plr < 0.0 || plr > 1.0) throw std::invalid_argument("rate: plr outside [0, 1]");
    return rho * (1.0 - plr);
}

double line_capacity(const ChannelSpec& channel) {
    channel.validate();
    double cap = 1.0;
    for (int i = 0; i < channel.links; ++i) cap = std::min(cap, channel.p_at(i));
    return cap;
}

ZDistribution scheme_z_dist(codes::Scheme scheme, int k, int n, double delta, const RankModel& rm) {
    if (codes::is_scheduled(scheme) && k >= 2) return z_dist_scheduled(k, n, delta, rm);
    return z_dist_block(k, n, delta, rm);
}

PlrResult scheme_plr(codes::Scheme scheme, int k, int n, const ChannelSpec& channel,
                     const RankModel& rm, codes::RelayMode relay) {
    channel.validate();
    switch (relay) {
        case codes::RelayMode::DecodeReencode: {
            std::vector<double> per_hop(static_cast<std::size_t>(channel.links));
            for (int i = 0; i < channel.links; ++i)
                per_hop[static_cast<std::size_t>(i)] =
                    plr_hop(scheme_z_dist(scheme, k, n, channel.delta_at(i), rm));
            return plr_line(per_hop);
        }
        case codes::RelayMode::Forward: {
            const double delta_eff = 1.0 - channel.end_to_end_p();
            const auto zd = scheme_z_dist(scheme, k, n, delta_eff, rm);
            PlrResult out;
            out.end_to_end = plr_hop(zd);
            out.per_hop = {out.end_to_end};
            out.is_upper_bound = false;
            return out;
        }
        case codes::RelayMode::Recode: {
            PlrResult out;
            out.requires_simulation = true;
            out.end_to_end = 1.0;
            return out;
        }
    }
    throw std::logic_error("scheme_plr: unknown relay mode");
}

}  // namespace pascalnc::theory
