#include "pascalnc/codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "pascalnc/rng.hpp"

namespace pascalnc::codes {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::PascalNC: return "pascalnc";
        case Scheme::PascalNCS: return "pascalnc-s";
        case Scheme::SNC: return "snc";
        case Scheme::SNCS: return "snc-s";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
    if (name == "pascalnc") return Scheme::PascalNC;
    if (name == "pascalnc-s" || name == "pascalncs") return Scheme::PascalNCS;
    if (name == "snc") return Scheme::SNC;
    if (name == "snc-s" || name == "sncs") return Scheme::SNCS;
    return std::nullopt;
}

std::string to_string(RelayMode m) {
    switch (m) {
        case RelayMode::DecodeReencode: return "decode-reencode";
        case RelayMode::Forward: return "forward";
        case RelayMode::Recode: return "recode";
    }
    return "?";
}

std::optional<RelayMode> parse_relay_mode(const std::string& name) {
    if (name == "decode-reencode" || name == "decode_reencode") return RelayMode::DecodeReencode;
    if (name == "forward") return RelayMode::Forward;
    if (name == "recode") return RelayMode::Recode;
    return std::nullopt;
}

std::string to_string(Signaling s) {
    switch (s) {
        case Signaling::Seeds: return "seeds";
        case Signaling::Coefficients: return "coefficients";
        case Signaling::None: return "none";
    }
    return "?";
}

std::optional<Signaling> parse_signaling(const std::string& name) {
    if (name == "seeds") return Signaling::Seeds;
    if (name == "coefficients") return Signaling::Coefficients;
    if (name == "none") return Signaling::None;
    return std::nullopt;
}

std::string to_string(ColumnPolicy::Kind k) {
    switch (k) {
        case ColumnPolicy::Kind::Sequential: return "sequential";
        case ColumnPolicy::Kind::Random: return "random";
        case ColumnPolicy::Kind::Optimized: return "optimized";
    }
    return "?";
}

std::optional<ColumnPolicy::Kind> parse_column_policy(const std::string& name) {
    if (name == "sequential") return ColumnPolicy::Kind::Sequential;
    if (name == "random") return ColumnPolicy::Kind::Random;
    if (name == "optimized") return ColumnPolicy::Kind::Optimized;
    return std::nullopt;
}

void CodeSpec::validate() const {
    if (m < 1 || m > 16) throw std::invalid_argument("code: field exponent m must be in [1, 16]");
    if (k < 1) throw std::invalid_argument("code: generation size K must be >= 1");
    if (n <= k) throw std::invalid_argument("code: block length N must exceed K");
    if (is_scheduled(scheme) && k < 2)
        throw std::invalid_argument("code: scheduled schemes need K >= 2");
    const std::uint32_t q = 1u << m;
    if (is_pascal(scheme)) {
        const int count = n - k;
        const int limit = columns.kind == ColumnPolicy::Kind::Sequential
                              ? static_cast<int>(q) - 1
                              : static_cast<int>(q);
        if (count > limit)
            throw std::invalid_argument("code: N-K coded columns exceed the Pascal matrix width");
        if (columns.kind == ColumnPolicy::Kind::Optimized && columns.budget < 1)
            throw std::invalid_argument("code: optimized column policy needs budget >= 1");
        if (signaling != Signaling::None)
            throw std::invalid_argument("code: Pascal schemes signal no coefficients");
    } else {
        if (signaling == Signaling::None)
            throw std::invalid_argument("code: random schemes signal seeds or coefficients");
    }
}

std::uint32_t pascal_entry(std::uint32_t q, std::uint32_t i, std::uint32_t j) {
    if (i >= q || j >= q) throw std::invalid_argument("pascal: index out of range");
    const std::uint32_t mask = q - 1;
    const std::uint32_t w = std::min(i, j);
    const std::uint32_t h = std::max(i, j);
    if (w == 0) return 1;
    // Rolling row over the smaller dimension: after sweep r, row[c] = C(r+c, c) mod q.
    std::vector<std::uint32_t> row(w + 1, 1);
    for (std::uint32_t r = 1; r <= h; ++r)
        for (std::uint32_t c = 1; c <= w; ++c) row[c] = (row[c] + row[c - 1]) & mask;
    return row[w];
}

gf::FieldMatrix pascal_columns(const gf::FieldContext& ctx, int k,
                               const std::vector<int>& col_ids) {
    if (col_ids.empty()) throw std::invalid_argument("pascal: empty column list");
    if (k < 1) throw std::invalid_argument("pascal: need at least one row");
    const std::uint32_t q = ctx.order();
    int max_id = 0;
    for (int id : col_ids) {
        if (id < 0 || static_cast<std::uint32_t>(id) >= q)
            throw std::invalid_argument("pascal: column id " + std::to_string(id) +
                                        " out of range for q=" + std::to_string(q));
        max_id = std::max(max_id, id);
    }
    const std::uint32_t mask = q - 1;
    std::vector<std::uint32_t> row(static_cast<std::size_t>(max_id) + 1, 1);
    gf::FieldMatrix out(k, static_cast<int>(col_ids.size()));
    for (std::size_t t = 0; t < col_ids.size(); ++t)
        out.at(0, static_cast<int>(t)) = 1;  // row 0 of the Pascal matrix is all ones
    for (int r = 1; r < k; ++r) {
        for (int c = 1; c <= max_id; ++c)
            row[static_cast<std::size_t>(c)] =
                (row[static_cast<std::size_t>(c)] + row[static_cast<std::size_t>(c) - 1]) & mask;
        for (std::size_t t = 0; t < col_ids.size(); ++t)
            out.at(r, static_cast<int>(t)) =
                static_cast<gf::Element>(row[static_cast<std::size_t>(col_ids[t])]);
    }
    return out;
}

namespace {

// In-place invertibility test of the t x t matrix stored row-major in buf.
bool invertible_square(const gf::FieldContext& ctx, std::vector<gf::Element>& buf, int t) {
    for (int c = 0; c < t; ++c) {
        int pivot = -1;
        for (int r = c; r < t; ++r) {
            if (buf[static_cast<std::size_t>(r) * t + c] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return false;
        if (pivot != c)
            for (int j = 0; j < t; ++j)
                std::swap(buf[static_cast<std::size_t>(pivot) * t + j],
                          buf[static_cast<std::size_t>(c) * t + j]);
        const gf::Element f = ctx.inv(buf[static_cast<std::size_t>(c) * t + c]);
        for (int r = c + 1; r < t; ++r) {
            const gf::Element g = buf[static_cast<std::size_t>(r) * t + c];
            if (g == 0) continue;
            const gf::Element fg = ctx.mul(f, g);
            for (int j = c; j < t; ++j)
                buf[static_cast<std::size_t>(r) * t + j] ^=
                    ctx.mul(fg, buf[static_cast<std::size_t>(c) * t + j]);
        }
    }
    return true;
}

double binom_count_capped(int n, int k, double cap) {
    double c = 1.0;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > cap) return cap + 1.0;
    }
    return c;
}

bool next_combination(std::vector<int>& comb, int n) {
    const int t = static_cast<int>(comb.size());
    int i = t - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - t + i) --i;
    if (i < 0) return false;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

// Reduces the K-subset "unknown rows R, coded columns T" test to a t x t
// invertibility check on coded[R, T].
bool subset_decodable(const gf::FieldContext& ctx, const gf::FieldMatrix& coded,
                      const std::vector<int>& rows, const std::vector<int>& cols,
                      std::vector<gf::Element>& scratch) {
    const int t = static_cast<int>(rows.size());
    if (t == 0) return true;
    scratch.resize(static_cast<std::size_t>(t) * t);
    for (int r = 0; r < t; ++r)
        for (int c = 0; c < t; ++c)
            scratch[static_cast<std::size_t>(r) * t + c] =
                coded.at(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    return invertible_square(ctx, scratch, t);
}

constexpr double kExhaustiveLimit = 1e5;
constexpr int kSampledDraws = 100000;

}  // namespace

double mds_score(const gf::FieldContext& ctx, const gf::FieldMatrix& coded, std::uint64_t seed) {
    const int k = coded.rows();
    const int nc = coded.cols();
    const int n = k + nc;
    std::vector<gf::Element> scratch;

    const double total = binom_count_capped(n, k, kExhaustiveLimit);
    if (total <= kExhaustiveLimit) {
        long long good = 0, all = 0;
        const int tmax = std::min(k, nc);
        for (int t = 0; t <= tmax; ++t) {
            std::vector<int> rows(static_cast<std::size_t>(t));
            std::iota(rows.begin(), rows.end(), 0);
            do {
                std::vector<int> cols(static_cast<std::size_t>(t));
                std::iota(cols.begin(), cols.end(), 0);
                do {
                    ++all;
                    if (subset_decodable(ctx, coded, rows, cols, scratch)) ++good;
                } while (next_combination(cols, nc));
            } while (t > 0 && next_combination(rows, k));
        }
        return static_cast<double>(good) / static_cast<double>(all);
    }

    rng::SplitMix64 rng(rng::hash_combine(seed, 0x6d647363));  // "mdsc"
    std::vector<int> pool(static_cast<std::size_t>(n));
    long long good = 0;
    for (int draw = 0; draw < kSampledDraws; ++draw) {
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < k; ++i) {
            const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        std::vector<int> cols, chosen_rows;
        std::vector<bool> row_covered(static_cast<std::size_t>(k), false);
        for (int i = 0; i < k; ++i) {
            const int c = pool[static_cast<std::size_t>(i)];
            if (c < k)
                row_covered[static_cast<std::size_t>(c)] = true;
            else
                cols.push_back(c - k);
        }
        for (int r = 0; r < k; ++r)
            if (!row_covered[static_cast<std::size_t>(r)]) chosen_rows.push_back(r);
        std::sort(cols.begin(), cols.end());
        if (subset_decodable(ctx, coded, chosen_rows, cols, scratch)) ++good;
    }
    return static_cast<double>(good) / kSampledDraws;
}

namespace {

std::vector<int> distinct_random_ids(const gf::FieldContext& ctx, int count, std::uint64_t seed) {
    const auto q = static_cast<int>(ctx.order());
    std::vector<int> pool(static_cast<std::size_t>(q));
    std::iota(pool.begin(), pool.end(), 0);
    rng::SplitMix64 rng(seed);
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(q - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<int> select_columns(const gf::FieldContext& ctx, int k, int count,
                                const ColumnPolicy& policy) {
    const auto q = static_cast<int>(ctx.order());
    if (count < 1) throw std::invalid_argument("columns: need at least one coded column");
    if (count > q) throw std::invalid_argument("columns: request exceeds the Pascal matrix width");

    switch (policy.kind) {
        case ColumnPolicy::Kind::Sequential: {
            if (count > q - 1)
                throw std::invalid_argument("columns: sequential ids 1..count exceed field order");
            std::vector<int> ids(static_cast<std::size_t>(count));
            std::iota(ids.begin(), ids.end(), 1);
            return ids;
        }
        case ColumnPolicy::Kind::Random:
            return distinct_random_ids(ctx, count, policy.seed);
        case ColumnPolicy::Kind::Optimized: {
            // The search is deterministic in (field, K, count, seed, budget)
            // and expensive for large K, so completed selections are cached.
            using Key = std::tuple<std::uint32_t, int, int, std::uint64_t, int>;
            static std::mutex cache_mutex;
            static std::map<Key, std::vector<int>> cache;
            const Key key{ctx.poly(), k, count, policy.seed, policy.budget};
            {
                std::lock_guard<std::mutex> lock(cache_mutex);
                if (auto it = cache.find(key); it != cache.end()) return it->second;
            }

            std::vector<std::vector<int>> candidates;
            if (count <= q - 1) {
                std::vector<int> seq(static_cast<std::size_t>(count));
                std::iota(seq.begin(), seq.end(), 1);
                candidates.push_back(std::move(seq));
            }
            for (int c = 0; c < policy.budget; ++c)
                candidates.push_back(
                    distinct_random_ids(ctx, count, rng::hash_combine(policy.seed, 1 + c)));

            double best_score = -1.0;
            const std::vector<int>* best = nullptr;
            for (const auto& cand : candidates) {
                const double s =
                    mds_score(ctx, pascal_columns(ctx, k, cand), rng::hash_combine(policy.seed, 0));
                if (s > best_score || (s == best_score && best && cand < *best)) {
                    best_score = s;
                    best = &cand;
                }
            }
            std::lock_guard<std::mutex> lock(cache_mutex);
            return cache.emplace(key, *best).first->second;
        }
    }
    throw std::logic_error("columns: unknown policy");
}

namespace {

gf::Element random_element(rng::SplitMix64& rng, std::uint32_t q) {
    return static_cast<gf::Element>(rng.below(q));
}

int coded_count(const CodeSpec& spec) { return spec.n - spec.k; }

}  // namespace

std::vector<gf::Element> coeffs_from_seed(const gf::FieldContext& ctx, const CodeSpec& spec,
                                          std::uint64_t seed, int sequence) {
    if (is_pascal(spec.scheme))
        throw std::invalid_argument("code: seed descriptors belong to random schemes");
    if (sequence < 0 || sequence >= coded_count(spec))
        throw std::invalid_argument("code: coded sequence number out of range");
    const std::uint32_t q = ctx.order();
    rng::SplitMix64 rng(rng::hash_combine(seed, static_cast<std::uint64_t>(sequence)));
    std::vector<gf::Element> coeffs(static_cast<std::size_t>(spec.k), 0);
    int depth = spec.k;
    if (spec.scheme == Scheme::SNCS) {
        const auto split = ScheduleSplit::of(spec.k, spec.n);
        if (sequence < split.nc1) depth = split.k1;
    }
    for (int r = 0; r < depth; ++r) coeffs[static_cast<std::size_t>(r)] = random_element(rng, q);
    return coeffs;
}

GeneratorMatrix build_generator(const gf::FieldContext& ctx, const CodeSpec& spec) {
    spec.validate();
    if (ctx.m() != spec.m)
        throw std::invalid_argument("code: field context does not match spec.m");

    const int k = spec.k;
    const int n = spec.n;
    const int nc = n - k;

    GeneratorMatrix gm;
    gm.g = gf::FieldMatrix(k, n);
    gm.columns.assign(static_cast<std::size_t>(n), {});
    gm.split = ScheduleSplit::of(k, n);

    // Coefficient source for coded column `seq` (0-based among coded columns).
    gf::FieldMatrix pascal;  // k x nc for Pascal schemes
    if (is_pascal(spec.scheme)) {
        gm.column_ids = select_columns(ctx, k, nc, spec.columns);
        pascal = pascal_columns(ctx, k, gm.column_ids);
    }
    auto coded_coeffs = [&](int seq, int depth) {
        std::vector<gf::Element> c(static_cast<std::size_t>(k), 0);
        if (is_pascal(spec.scheme)) {
            for (int r = 0; r < depth; ++r) c[static_cast<std::size_t>(r)] = pascal.at(r, seq);
        } else {
            c = coeffs_from_seed(ctx, spec, spec.coeff_seed, seq);
        }
        return c;
    };

    struct Slot {
        bool systematic;
        int which;  // packet index or coded sequence number
        int depth;
    };
    std::vector<Slot> layout;
    layout.reserve(static_cast<std::size_t>(n));
    if (is_scheduled(spec.scheme)) {
        const auto& sp = gm.split;
        for (int i = 0; i < sp.k1; ++i) layout.push_back({true, i, 1});
        for (int s = 0; s < sp.nc1; ++s) layout.push_back({false, s, sp.k1});
        for (int i = sp.k1; i < k; ++i) layout.push_back({true, i, 1});
        for (int s = sp.nc1; s < nc; ++s) layout.push_back({false, s, k});
    } else {
        for (int i = 0; i < k; ++i) layout.push_back({true, i, 1});
        for (int s = 0; s < nc; ++s) layout.push_back({false, s, k});
    }

    for (int t = 0; t < n; ++t) {
        const Slot& slot = layout[static_cast<std::size_t>(t)];
        GeneratorColumn& meta = gm.columns[static_cast<std::size_t>(t)];
        if (slot.systematic) {
            gm.g.at(slot.which, t) = 1;
            meta = {true, slot.which, -1, 1};
        } else {
            const auto c = coded_coeffs(slot.which, slot.depth);
            for (int r = 0; r < k; ++r) gm.g.at(r, t) = c[static_cast<std::size_t>(r)];
            meta = {false, -1,
                    is_pascal(spec.scheme) ? gm.column_ids[static_cast<std::size_t>(slot.which)]
                                           : slot.which,
                    slot.depth};
        }
    }
    return gm;
}

namespace {

Descriptor make_descriptor(const CodeSpec& spec, const GeneratorColumn& col, int coded_seq) {
    if (col.systematic) return SystematicRef{col.index};
    if (is_pascal(spec.scheme)) return PascalColumnRef{col.pascal_column};
    if (spec.signaling == Signaling::Seeds) return SeedRef{spec.coeff_seed, coded_seq};
    return ExplicitCoeffsRef{};
}

}  // namespace

std::vector<Packet> encode(const gf::FieldContext& ctx, const Generation& gen,
                           const GeneratorMatrix& gm, const CodeSpec& spec) {
    const int k = gm.g.rows();
    const int n = gm.g.cols();
    if (gen.x.cols() != k)
        throw std::invalid_argument("encode: generation has " + std::to_string(gen.x.cols()) +
                                    " packets, generator expects " + std::to_string(k));
    const int payload_len = gen.x.rows();

    std::vector<Packet> out;
    out.reserve(static_cast<std::size_t>(n));
    int coded_seq = 0;
    for (int t = 0; t < n; ++t) {
        Packet p;
        p.generation_id = gen.id;
        p.tx_slot = t + 1;
        p.coeffs.assign(static_cast<std::size_t>(k), 0);
        for (int r = 0; r < k; ++r) p.coeffs[static_cast<std::size_t>(r)] = gm.g.at(r, t);
        p.payload.assign(static_cast<std::size_t>(payload_len), 0);
        for (int r = 0; r < k; ++r) {
            const gf::Element c = gm.g.at(r, t);
            if (c == 0) continue;
            for (int row = 0; row < payload_len; ++row)
                p.payload[static_cast<std::size_t>(row)] ^= ctx.mul(c, gen.x.at(row, r));
        }
        const GeneratorColumn& meta = gm.columns[static_cast<std::size_t>(t)];
        p.descriptor = make_descriptor(spec, meta, meta.systematic ? 0 : coded_seq);
        if (!meta.systematic) ++coded_seq;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::optional<Packet>> reencode_pascal(
    const gf::FieldContext& ctx, const GeneratorMatrix& gm, const CodeSpec& spec,
    const std::vector<std::pair<int, std::vector<gf::Element>>>& recovered) {
    const int k = gm.g.rows();
    const int n = gm.g.cols();

    std::vector<const std::vector<gf::Element>*> have(static_cast<std::size_t>(k), nullptr);
    std::size_t payload_len = 0;
    for (const auto& [idx, payload] : recovered) {
        if (idx < 0 || idx >= k)
            throw std::invalid_argument("reencode: unknown packet index " + std::to_string(idx));
        have[static_cast<std::size_t>(idx)] = &payload;
        payload_len = payload.size();
    }

    std::vector<std::optional<Packet>> out(static_cast<std::size_t>(n));
    int coded_seq = 0;
    for (int t = 0; t < n; ++t) {
        const GeneratorColumn& meta = gm.columns[static_cast<std::size_t>(t)];
        const int seq = meta.systematic ? 0 : coded_seq;
        if (!meta.systematic) ++coded_seq;

        bool sendable = true;
        for (int r = 0; r < k && sendable; ++r)
            if (gm.g.at(r, t) != 0 && !have[static_cast<std::size_t>(r)]) sendable = false;
        if (!sendable) continue;  // erased slot: nothing transmitted

        Packet p;
        p.generation_id = 0;
        p.tx_slot = t + 1;
        p.coeffs.assign(static_cast<std::size_t>(k), 0);
        p.payload.assign(payload_len, 0);
        for (int r = 0; r < k; ++r) {
            const gf::Element c = gm.g.at(r, t);
            p.coeffs[static_cast<std::size_t>(r)] = c;
            if (c == 0) continue;
            const auto& src = *have[static_cast<std::size_t>(r)];
            for (std::size_t row = 0; row < payload_len; ++row) p.payload[row] ^= ctx.mul(c, src[row]);
        }
        p.descriptor = make_descriptor(spec, meta, seq);
        out[static_cast<std::size_t>(t)] = std::move(p);
    }
    return out;
}

std::vector<std::optional<Packet>> reencode_pascal(
    const gf::FieldContext& ctx, const CodeSpec& spec,
    const std::vector<std::pair<int, std::vector<gf::Element>>>& recovered) {
    if (!is_pascal(spec.scheme))
        throw std::invalid_argument("reencode: decode-and-re-encode is a Pascal relay behavior");
    return reencode_pascal(ctx, build_generator(ctx, spec), spec, recovered);
}

std::vector<Packet> recode_random(const gf::FieldContext& ctx, const std::vector<Packet>& buffer,
                                  int count, std::uint64_t seed) {
    if (buffer.empty()) throw std::invalid_argument("recode: empty buffer");
    if (count < 1) throw std::invalid_argument("recode: need count >= 1");
    const std::size_t k = buffer.front().coeffs.size();
    const std::size_t payload_len = buffer.front().payload.size();
    const std::uint32_t q = ctx.order();

    std::vector<Packet> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        rng::SplitMix64 rng(rng::hash_combine(seed, static_cast<std::uint64_t>(i)));
        Packet p;
        p.generation_id = buffer.front().generation_id;
        p.tx_slot = i + 1;
        p.descriptor = ExplicitCoeffsRef{};
        p.coeffs.assign(k, 0);
        p.payload.assign(payload_len, 0);
        for (const Packet& src : buffer) {
            const gf::Element w = random_element(rng, q);
            if (w == 0) continue;
            for (std::size_t j = 0; j < k; ++j) p.coeffs[j] ^= ctx.mul(w, src.coeffs[j]);
            for (std::size_t j = 0; j < payload_len; ++j)
                p.payload[j] ^= ctx.mul(w, src.payload[j]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

double signaling_overhead(const CodeSpec& spec, int links, int packet_symbols) {
    if (packet_symbols <= 0) throw std::invalid_argument("overhead: packet length must be positive");
    if (links < 1) throw std::invalid_argument("overhead: need at least one link");
    int sigma = 0;
    if (!is_pascal(spec.scheme)) {
        sigma = spec.signaling == Signaling::Seeds ? links : spec.k;
    }
    return 100.0 * sigma / packet_symbols;
}

void write_matrix_csv(std::ostream& os, const gf::FieldMatrix& m) {
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << static_cast<int>(m.at(r, c));
        }
        os << '\n';
    }
}

void write_columns_csv(std::ostream& os, const std::vector<int>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) os << ',';
        os << ids[i];
    }
    os << '\n';
}

}  // namespace pascalnc::codes
