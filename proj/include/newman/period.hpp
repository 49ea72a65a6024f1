#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "newman/digits.hpp"
#include "newman/transfer.hpp"

namespace newman {

// Which recursion terms take fully floor-divided arguments. The empty set is
// the block form (arguments (n-1)^(2j) * floor(x / (n-1)^(n-1))); the full
// set {1..(n-3)/2} is the pure divide-and-conquer form. 2^((n-3)/2) variants
// exist per n; j=0 is shared by both shapes so it never appears here.
struct CorrectionVariant {
    int n;
    std::vector<int> floored_js;

    static CorrectionVariant none(const ModulusConfig& cfg) { return {cfg.n, {}}; }

    static CorrectionVariant all(const ModulusConfig& cfg) {
        CorrectionVariant v{cfg.n, {}};
        for (int j = 1; j <= (cfg.n - 3) / 2; ++j) v.floored_js.push_back(j);
        return v;
    }

    static CorrectionVariant of(const ModulusConfig& cfg, std::vector<int> js) {
        std::sort(js.begin(), js.end());
        CorrectionVariant v{cfg.n, std::move(js)};
        v.validate();
        return v;
    }

    void validate() const {
        int prev = 0;
        for (int j : floored_js) {
            if (j < 1 || j > (n - 3) / 2 || j <= prev)
                throw std::invalid_argument("variant indices must be strictly increasing in [1, (n-3)/2]");
            prev = j;
        }
    }

    bool has(int j) const {
        return std::find(floored_js.begin(), floored_js.end(), j) != floored_js.end();
    }

    // short form used in filenames and report headers
    std::string code() const {
        if (floored_js.empty()) return "none";
        std::string s = "f";
        for (size_t i = 0; i < floored_js.size(); ++i) {
            if (i) s += '-';
            s += std::to_string(floored_js[i]);
        }
        return s;
    }
};

struct PeriodicityViolation : std::runtime_error {
    uint64_t witness;
    explicit PeriodicityViolation(uint64_t x)
        : std::runtime_error("periodicity violated at x = " + std::to_string(x) +
                             " (implementation bug or a counterexample to the identity)"),
          witness(x) {}
};

// 0 on the lower half of each 2*(n-1)^(n-1) block, 1 on the upper half.
inline int block_step(const ModulusConfig& cfg, uint64_t x) {
    uint64_t d = cfg.block();
    return x % (2 * d) < d ? 0 : 1;
}

// Count drop since the start of the current block: S(x) - S(d*floor(x/d)).
// Oracle-grade (linear time); the extractor inlines the same quantity.
inline int64_t block_delta(const ModulusConfig& cfg, uint64_t x) {
    uint64_t d = cfg.block();
    return brute_count(cfg, 0, x) - brute_count(cfg, 0, d * (x / d));
}

inline int64_t variant_coefficient(int n, int j) {
    int64_t c = int64_t((binomial(n, 2 * j + 1)).convert_to<int64_t>());
    return (((n - 3) / 2 - j) & 1) ? -c : c;
}

// Correction term of the recursion: the signed count at x minus the chosen
// linear combination of counts at reduced arguments. Oracle-grade.
inline int64_t correction(const ModulusConfig& cfg, const CorrectionVariant& variant, uint64_t x) {
    int n = cfg.n;
    uint64_t b = uint64_t(cfg.base());
    uint64_t d = cfg.block();
    int64_t acc = brute_count(cfg, 0, x);
    uint64_t q = x / d;
    for (int j = 0; j <= (n - 3) / 2; ++j) {
        uint64_t arg = variant.has(j) ? x / checked_upow(b, unsigned(n - 1 - 2 * j))
                                      : checked_upow(b, unsigned(2 * j)) * q;
        acc = checked_add(acc, -checked_mul(variant_coefficient(n, j), brute_count(cfg, 0, arg)));
    }
    return acc;
}

// Equivalent form of the block-variant correction: the in-block drop plus a
// signed step. The sign factor reads the digit parity of q-1 with
// q = floor(x/(n-1)^(n-1)); when the step is zero (in particular whenever
// q = 0, where q-1 has no digit expansion) the term is skipped entirely.
inline int64_t correction_via_step(const ModulusConfig& cfg, uint64_t x) {
    int64_t delta = block_delta(cfg, x);
    if (block_step(cfg, x) == 0) return delta;
    uint64_t q = x / cfg.block();
    unsigned par = (unsigned((cfg.n - 1) / 2) + digit_sum(q - 1, unsigned(cfg.base()))) & 1u;
    return checked_add(delta, par ? -1 : +1);
}

// Canonical period of the sign-normalized correction for one (n, variant)
// pair. Convention: f(x) = values[(x - start_offset) mod length] for all
// x >= start_offset, where f(x) = parity_sign(x) * correction(x).
struct PeriodTable {
    int n;
    CorrectionVariant variant;
    uint64_t length;
    uint64_t start_offset;
    std::vector<int32_t> values;
    uint64_t checksum;

    int32_t value_at(uint64_t x) const {
        if (x < start_offset)
            throw std::out_of_range("table undefined below its start offset");
        return values[size_t((x - start_offset) % length)];
    }
};

inline uint64_t fnv1a64(const std::vector<int32_t>& values) {
    uint64_t h = 14695981039346656037ull;
    for (int32_t v : values) {
        uint32_t u = uint32_t(v);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

namespace detail {

// Fills f(x) = parity(x) * correction(x) for x in [lo, hi) into out[lo..hi).
// small_counts must cover every reduced argument (they are all <= hi/(n-1)^2).
// The scanner seed comes from the exact counter, so chunks are independent.
inline void fill_normalized_correction(const ModulusConfig& cfg,
                                       const CorrectionVariant& variant,
                                       const std::vector<int64_t>& small_counts,
                                       const ExactCounter& counter,
                                       uint64_t lo, uint64_t hi,
                                       std::vector<int32_t>& out) {
    int n = cfg.n;
    uint64_t b = uint64_t(cfg.base());
    uint64_t d = cfg.block();
    int half = (n - 3) / 2;
    std::vector<int64_t> coeff(size_t(half + 1));
    std::vector<uint64_t> divisor(size_t(half + 1));
    std::vector<uint64_t> scale(size_t(half + 1));
    for (int j = 0; j <= half; ++j) {
        coeff[size_t(j)] = variant_coefficient(n, j);
        divisor[size_t(j)] = checked_upow(b, unsigned(n - 1 - 2 * j));
        scale[size_t(j)] = checked_upow(b, unsigned(2 * j));
    }

    CountScanner sc(cfg, 0, lo, counter.count_i64(0, lo));
    uint64_t q = ~uint64_t(0);  // forces refresh on first use
    int64_t block_terms = 0;    // sum over non-floored j of coeff * S(scale_j * q)
    std::vector<uint64_t> floor_arg(size_t(half + 1), ~uint64_t(0));
    std::vector<int64_t> floor_val(size_t(half + 1), 0);

    for (uint64_t x = lo; x < hi; ++x) {
        int sgn = sc.sign();
        int64_t s_x = sc.value();
        if (x / d != q) {
            q = x / d;
            block_terms = 0;
            for (int j = 0; j <= half; ++j) {
                if (variant.has(j)) continue;
                uint64_t arg = scale[size_t(j)] * q;
                int64_t v = arg < small_counts.size() ? small_counts[size_t(arg)]
                                                      : counter.count_i64(0, arg);
                block_terms = checked_add(block_terms, checked_mul(coeff[size_t(j)], v));
            }
        }
        int64_t acc = checked_add(s_x, -block_terms);
        for (int j = 1; j <= half; ++j) {
            if (!variant.has(j)) continue;
            uint64_t arg = x / divisor[size_t(j)];
            if (arg != floor_arg[size_t(j)]) {
                floor_arg[size_t(j)] = arg;
                floor_val[size_t(j)] = arg < small_counts.size() ? small_counts[size_t(arg)]
                                                                 : counter.count_i64(0, arg);
            }
            acc = checked_add(acc, -checked_mul(coeff[size_t(j)], floor_val[size_t(j)]));
        }
        int64_t f = sgn * acc;
        if (f < std::numeric_limits<int32_t>::min() || f > std::numeric_limits<int32_t>::max())
            throw std::overflow_error("normalized correction exceeds 32-bit table range");
        out[size_t(x)] = int32_t(f);
        sc.advance();
    }
}

}  // namespace detail

// Extracts the canonical period and verifies it over verify_periods
// consecutive copies. One sequential prefix scan supplies the counts at
// reduced arguments (all below span/(n-1)^2); the normalized correction is
// then filled chunkwise, in parallel when threads > 1.
inline PeriodTable extract_period_table(const ModulusConfig& cfg,
                                        const CorrectionVariant& variant,
                                        unsigned verify_periods = 2,
                                        unsigned threads = 1) {
    if (verify_periods < 2)
        throw std::invalid_argument("need at least 2 periods to tell a period from a prefix");
    variant.validate();
    if (variant.n != cfg.n) throw std::invalid_argument("variant modulus mismatch");
    uint64_t p = cfg.period();
    uint64_t span = p * verify_periods;
    uint64_t bsq = checked_upow(uint64_t(cfg.base()), 2);

    std::vector<int64_t> small = prefix_counts(cfg, 0, span / bsq + 1);
    ExactCounter counter(cfg);
    std::vector<int32_t> f(static_cast<size_t>(span), 0);

    if (threads <= 1) {
        detail::fill_normalized_correction(cfg, variant, small, counter, 0, span, f);
    } else {
        uint64_t chunk = (span + threads - 1) / threads;
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            uint64_t lo = std::min(span, t * chunk);
            uint64_t hi = std::min(span, lo + chunk);
            if (lo >= hi) break;
            workers.emplace_back([&, lo, hi] {
                detail::fill_normalized_correction(cfg, variant, small, counter, lo, hi, f);
            });
        }
        for (auto& w : workers) w.join();
    }

    for (uint64_t x = p; x < span; ++x)
        if (f[size_t(x)] != f[size_t(x - p)]) throw PeriodicityViolation(x);

    PeriodTable table{cfg.n, variant, p, 0, std::vector<int32_t>(f.begin(), f.begin() + long(p)), 0};
    table.checksum = fnv1a64(table.values);
    return table;
}

struct TableStats {
    int32_t min_value;
    int32_t max_value;
    uint64_t distinct;
    std::map<int32_t, std::vector<uint64_t>> positions;  // only requested values
};

inline std::vector<uint64_t> positions_of(const PeriodTable& table, int32_t value) {
    std::vector<uint64_t> out;
    for (uint64_t i = 0; i < table.length; ++i)
        if (table.values[size_t(i)] == value) out.push_back(i);
    return out;
}

inline TableStats period_stats(const PeriodTable& table,
                               const std::vector<int32_t>& requested = {}) {
    if (table.values.empty()) throw std::invalid_argument("empty table");
    TableStats st{table.values[0], table.values[0], 0, {}};
    std::map<int32_t, uint64_t> freq;
    for (int32_t v : table.values) {
        st.min_value = std::min(st.min_value, v);
        st.max_value = std::max(st.max_value, v);
        ++freq[v];
    }
    st.distinct = freq.size();
    for (int32_t v : requested) st.positions[v] = positions_of(table, v);
    return st;
}

// The two short components the period-24 table decomposes into for n = 3:
// the step sequence parity(x) * parity(floor(x/4)-1) * A(x) with period 8,
// and the drop sequence parity(x) * delta(x) with period 12. Both come from
// the oracle and are verified over two extra periods. Tiled to length 24
// (the first three times, the second twice), drop-tiled minus step-tiled
// rebuilds the period-24 table elementwise.
inline std::pair<std::vector<int32_t>, std::vector<int32_t>> mod3_component_periods() {
    ModulusConfig cfg(3);
    auto step_at = [&](uint64_t x) {
        if (block_step(cfg, x) == 0) return int32_t(0);
        return int32_t(parity_sign(x, 2) * parity_sign(x / 4 - 1, 2));
    };
    auto drop_at = [&](uint64_t x) {
        return int32_t(parity_sign(x, 2) * block_delta(cfg, x));
    };
    std::vector<int32_t> step8(8), drop12(12);
    for (uint64_t x = 0; x < 8; ++x) step8[size_t(x)] = step_at(x);
    for (uint64_t x = 0; x < 12; ++x) drop12[size_t(x)] = drop_at(x);
    for (uint64_t x = 8; x < 24; ++x)
        if (step_at(x) != step8[size_t(x % 8)]) throw PeriodicityViolation(x);
    for (uint64_t x = 12; x < 36; ++x)
        if (drop_at(x) != drop12[size_t(x % 12)]) throw PeriodicityViolation(x);
    return {step8, drop12};
}

// Five-case closed form of the n=3 correction by residue mod 24.
inline int64_t mod3_correction_closed_form(uint64_t x) {
    int s = parity_sign(x, 2);
    switch (x % 24) {
        case 0: case 7: case 8: case 9: case 16: case 17: case 18: case 22: case 23:
            return 0;
        case 3: case 4: case 10: case 12: case 20:
            return s;
        case 1: case 2: case 5: case 6: case 11: case 19: case 21:
            return -s;
        case 15:
            return 2 * s;
        default:  // 13, 14
            return -2 * s;
    }
}

// Closed form of the n=3 in-block drop by residue mod 12.
inline int64_t mod3_block_delta_closed_form(uint64_t x) {
    switch (x % 12) {
        case 1: case 7: case 10:
            return parity_sign(x - 1, 2);
        case 2: case 11:
            return parity_sign(x - 2, 2);
        case 3:
            return parity_sign(x - 3, 2);
        default:
            return 0;
    }
}

// Correction table for the two nonzero residue classes mod 3: the
// sign-normalized difference parity(x) * (S_i(x) - 3*S_i(floor(x/4))) equals
// the period-24 table phase-anchored at start 16 (class 1) or 8 (class 2).
inline PeriodTable residue_correction_table(int i) {
    if (i != 1 && i != 2) throw std::invalid_argument("residue class must be 1 or 2");
    ModulusConfig cfg(3);
    uint64_t start = i == 1 ? 16 : 8;
    uint64_t p = cfg.period();
    uint64_t hi = start + 2 * p;
    std::vector<int64_t> counts = prefix_counts(cfg, i, hi);
    std::vector<int32_t> vals(static_cast<size_t>(p), 0);
    for (uint64_t x = start; x < hi; ++x) {
        int64_t f = parity_sign(x, 2) * (counts[size_t(x)] - 3 * counts[size_t(x / 4)]);
        uint64_t idx = (x - start) % p;
        if (x - start < p)
            vals[size_t(idx)] = int32_t(f);
        else if (vals[size_t(idx)] != f)
            throw PeriodicityViolation(x);
    }
    PeriodTable table{3, CorrectionVariant::none(cfg), p, start, std::move(vals), 0};
    table.checksum = fnv1a64(table.values);
    return table;
}

struct StreamStats {
    uint64_t chunk_start;
    uint64_t chunk_length;
    uint64_t positions_checked;
    int32_t min_value;
    int32_t max_value;
    uint64_t distinct;
    std::optional<uint64_t> violation;
    bool ok() const { return !violation.has_value(); }
};

// Streaming periodicity verification for moduli whose table would not fit in
// memory as a default (n = 9 already has ~3e8 entries). Walks the windows
// [start, start+len) and [start+p, start+p+len) in lockstep with two
// independently seeded scanners and compares the normalized corrections.
// Only block-variant corrections are supported here: every reduced argument
// is then a multiple of a tiny quotient and comes from the exact counter.
inline StreamStats verify_period_streaming(const ModulusConfig& cfg,
                                           uint64_t chunk_start,
                                           uint64_t chunk_length) {
    uint64_t p = cfg.period();
    uint64_t d = cfg.block();
    int half = (cfg.n - 3) / 2;
    ExactCounter counter(cfg);

    auto block_terms_at = [&](uint64_t q) {
        int64_t acc = 0;
        for (int j = 0; j <= half; ++j) {
            uint64_t arg = checked_upow(uint64_t(cfg.base()), unsigned(2 * j)) * q;
            acc = checked_add(acc,
                              checked_mul(variant_coefficient(cfg.n, j), counter.count_i64(0, arg)));
        }
        return acc;
    };

    CountScanner a(cfg, 0, chunk_start, counter.count_i64(0, chunk_start));
    CountScanner b(cfg, 0, chunk_start + p, counter.count_i64(0, chunk_start + p));
    uint64_t qa = ~uint64_t(0), qb = ~uint64_t(0);
    int64_t ta = 0, tb = 0;

    StreamStats st{chunk_start, chunk_length, 0, 0, 0, 0, std::nullopt};
    std::map<int32_t, uint64_t> freq;
    bool first = true;
    for (uint64_t k = 0; k < chunk_length; ++k) {
        uint64_t xa = chunk_start + k;
        if (xa / d != qa) { qa = xa / d; ta = block_terms_at(qa); }
        if ((xa + p) / d != qb) { qb = (xa + p) / d; tb = block_terms_at(qb); }
        int64_t fa = a.sign() * checked_add(a.value(), -ta);
        int64_t fb = b.sign() * checked_add(b.value(), -tb);
        if (fa != fb) {
            st.violation = xa;
            break;
        }
        int32_t v = int32_t(fa);
        if (first) { st.min_value = st.max_value = v; first = false; }
        st.min_value = std::min(st.min_value, v);
        st.max_value = std::max(st.max_value, v);
        ++freq[v];
        ++st.positions_checked;
        a.advance();
        b.advance();
    }
    st.distinct = freq.size();
    return st;
}

inline constexpr int kTableFormatVersion = 1;

inline void write_table(const PeriodTable& table, const std::string& path) {
    nlohmann::json j;
    j["format_version"] = kTableFormatVersion;
    j["n"] = table.n;
    j["variant"] = table.variant.floored_js;
    j["length"] = table.length;
    j["start_offset"] = table.start_offset;
    j["checksum"] = table.checksum;
    j["values"] = table.values;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump() << '\n';
}

inline PeriodTable read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("format_version").get<int>() != kTableFormatVersion)
        throw std::runtime_error("unsupported table format version in " + path);
    ModulusConfig cfg(j.at("n").get<int>());
    PeriodTable table{cfg.n,
                      CorrectionVariant::of(cfg, j.at("variant").get<std::vector<int>>()),
                      j.at("length").get<uint64_t>(),
                      j.at("start_offset").get<uint64_t>(),
                      j.at("values").get<std::vector<int32_t>>(),
                      j.at("checksum").get<uint64_t>()};
    if (table.values.size() != table.length)
        throw std::runtime_error("table length mismatch in " + path);
    if (fnv1a64(table.values) != table.checksum)
        throw std::runtime_error("table checksum mismatch in " + path);
    return table;
}

inline void write_table_csv(const PeriodTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "position,value\n";
    for (uint64_t i = 0; i < table.length; ++i)
        out << i << ',' << table.values[size_t(i)] << '\n';
}

inline void write_positions_csv(const TableStats& stats, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "value,positions\n";
    for (const auto& [value, pos] : stats.positions) {
        out << value << ",\"";
        for (size_t i = 0; i < pos.size(); ++i) {
            if (i) out << ',';
            out << pos[i];
        }
        out << "\"\n";
    }
}

}  // namespace newman
