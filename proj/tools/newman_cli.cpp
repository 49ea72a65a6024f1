// Command-line surface for the signed digit-count library. One subcommand per
// capability, deterministic output (no timestamps, fixed float formatting),
// machine-readable by default: keyed text blocks for scalar reports, CSV rows
// for series, --format json for a structured object.
//
// Exit codes: 0 success, 2 usage/input error, 3 certificate failure,
// 4 periodicity violation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "newman/newman.hpp"

namespace {

using newman::BigInt;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCertificate = 3;
constexpr int kExitPeriodicity = 4;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string s;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(values[i]);
    }
    return s;
}

std::string join_big(const std::vector<BigInt>& values) {
    std::string s;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += values[i].str();
    }
    return s;
}

std::vector<std::string> big_row_strings(const std::vector<BigInt>& row) {
    std::vector<std::string> out;
    out.reserve(row.size());
    for (const auto& v : row) out.push_back(v.str());
    return out;
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void require_odd_modulus(int n) {
    if (n < 3 || n % 2 == 0)
        throw CLI::ValidationError("--n", "modulus must be an odd integer >= 3");
}

// Canonical cache path for a (modulus, variant) table under the directory
// named by NEWMAN_TABLE_DIR; empty string when the variable is unset.
std::string cache_path(int n, const newman::CorrectionVariant& variant) {
    const char* dir = std::getenv("NEWMAN_TABLE_DIR");
    if (dir == nullptr || *dir == '\0') return {};
    std::string p(dir);
    if (p.back() != '/') p += '/';
    p += "newman_table_n" + std::to_string(n) + "_" + variant.code() + ".json";
    return p;
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

// Loads the table from the cache when present (default verification depth
// only, so a cache hit never skips extra verification the caller asked for);
// otherwise extracts and tries to populate the cache. Cache write failures
// only warn: the computed table is still correct.
newman::PeriodTable obtain_table(const newman::ModulusConfig& cfg,
                                 const newman::CorrectionVariant& variant,
                                 unsigned periods, unsigned threads) {
    std::string cache = cache_path(cfg.n, variant);
    if (!cache.empty() && periods == 2 && file_exists(cache)) {
        newman::PeriodTable t = newman::read_table(cache);
        if (t.n != cfg.n || t.variant.floored_js != variant.floored_js)
            throw std::runtime_error("cached table at " + cache + " does not match the request");
        return t;
    }
    newman::PeriodTable t = newman::extract_period_table(cfg, variant, periods, threads);
    if (!cache.empty()) {
        try {
            newman::write_table(t, cache);
        } catch (const std::exception& e) {
            std::cerr << "warning: could not write table cache: " << e.what() << "\n";
        }
    }
    return t;
}

// verified_periods == 0 means the table came from a file: the checksum was
// checked on load, but no fresh periodicity verification ran.
void print_table_report(const newman::PeriodTable& table, unsigned verified_periods,
                        const std::vector<int>& position_values, bool print_values,
                        bool as_json) {
    newman::TableStats stats =
        newman::period_stats(table, std::vector<int32_t>(position_values.begin(),
                                                         position_values.end()));
    bool include_values = print_values || table.length <= 256;
    if (as_json) {
        ordered_json out;
        out["n"] = table.n;
        out["variant"] = table.variant.code();
        out["length"] = table.length;
        out["start_offset"] = table.start_offset;
        out["checksum"] = table.checksum;
        if (verified_periods > 0) out["verified_periods"] = verified_periods;
        else out["source"] = "file";
        out["min"] = stats.min_value;
        out["max"] = stats.max_value;
        out["distinct"] = stats.distinct;
        if (include_values) out["values"] = table.values;
        if (!stats.positions.empty()) {
            ordered_json pos;
            for (const auto& [value, where] : stats.positions)
                pos[std::to_string(value)] = where;
            out["positions"] = pos;
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::cout << "n: " << table.n << "\n"
              << "variant: " << table.variant.code() << "\n"
              << "length: " << table.length << "\n"
              << "start_offset: " << table.start_offset << "\n"
              << "checksum: " << table.checksum << "\n";
    if (verified_periods > 0)
        std::cout << "verified_periods: " << verified_periods << "\n";
    else
        std::cout << "source: file\n";
    std::cout << "min: " << stats.min_value << "\n"
              << "max: " << stats.max_value << "\n"
              << "distinct: " << stats.distinct << "\n";
    if (include_values) std::cout << "values: " << join(table.values) << "\n";
    for (const auto& [value, where] : stats.positions)
        std::cout << "positions[" << value << "]: " << join(where) << "\n";
}

// ---------------------------------------------------------------- oracle ---

struct OracleOptions {
    int n = 3;
    int j = 0;
    uint64_t x = 0;
    bool vector = false;
    std::string format = "text";
};

int cmd_oracle(const OracleOptions& opt) {
    require_odd_modulus(opt.n);
    if (opt.j < 0 || opt.j >= opt.n)
        throw CLI::ValidationError("--j", "residue class must lie in [0, n)");
    newman::ModulusConfig cfg(opt.n);
    if (opt.vector) {
        newman::ResidueVector vec = newman::brute_count_vector(cfg, opt.x);
        if (opt.format == "json") {
            ordered_json out;
            out["n"] = opt.n;
            out["x"] = opt.x;
            out["values"] = vec.values;
            out["total"] = vec.total();
            std::cout << out.dump(2) << "\n";
        } else {
            for (int j = 0; j < opt.n; ++j)
                std::cout << j << "," << vec.values[size_t(j)] << "\n";
        }
        return kExitOk;
    }
    int64_t value = newman::brute_count(cfg, opt.j, opt.x);
    if (opt.format == "json") {
        ordered_json out;
        out["n"] = opt.n;
        out["j"] = opt.j;
        out["x"] = opt.x;
        out["value"] = value;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << value << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------- certify ---

struct CertifyOptions {
    int n_max = 35;
    uint64_t x_max = 200;
    bool verbose = false;
    std::string format = "text";
};

int cmd_certify(const CertifyOptions& opt) {
    require_odd_modulus(opt.n_max);
    bool all_ok = true;
    ordered_json rows = ordered_json::array();
    for (int n = 3; n <= opt.n_max; n += 2) {
        newman::ModulusConfig cfg(n);
        newman::IdentityCertificate cert = newman::identity_certificate(cfg);
        newman::MatrixCheckReport matrix = newman::validate_matrix_empirically(cfg, opt.x_max);
        bool ok = cert.row0_all_ones && cert.all_rows_all_ones && matrix.ok();
        all_ok = all_ok && ok;
        if (opt.format == "json") {
            ordered_json row;
            row["n"] = n;
            row["combination_row0"] = big_row_strings(cert.combination[0]);
            row["row0_all_ones"] = cert.row0_all_ones;
            row["all_rows_all_ones"] = cert.all_rows_all_ones;
            row["matrix_x_max"] = matrix.x_max;
            row["matrix_counterexamples"] = matrix.counterexamples;
            if (opt.verbose) {
                ordered_json powers;
                for (int j = 0; j <= (n - 1) / 2; ++j)
                    powers[std::to_string(2 * j)] =
                        big_row_strings(newman::even_power_row0(cfg, unsigned(j)));
                row["power_row0"] = powers;
            }
            rows.push_back(std::move(row));
        } else {
            std::cout << "n: " << n << "\n"
                      << "combination_row0: " << join_big(cert.combination[0]) << "\n"
                      << "row0_all_ones: " << (cert.row0_all_ones ? "true" : "false") << "\n"
                      << "all_rows_all_ones: " << (cert.all_rows_all_ones ? "true" : "false")
                      << "\n"
                      << "matrix_check: " << (matrix.ok() ? "pass" : "FAIL") << " (x_max="
                      << matrix.x_max << ", counterexamples=" << matrix.counterexamples.size()
                      << ")\n";
            if (opt.verbose)
                for (int j = 0; j <= (n - 1) / 2; ++j)
                    std::cout << "power_row0[" << 2 * j
                              << "]: " << join_big(newman::even_power_row0(cfg, unsigned(j)))
                              << "\n";
            std::cout << "\n";
        }
    }
    if (opt.format == "json") std::cout << rows.dump(2) << "\n";
    return all_ok ? kExitOk : kExitCertificate;
}

// ---------------------------------------------------------------- period ---

struct PeriodOptions {
    int n = 3;
    std::vector<int> variant;
    unsigned periods = 2;
    unsigned threads = 1;
    std::string out_path;
    std::string csv_path;
    std::vector<int> positions;
    bool print_values = false;
    int residue = 0;
    bool stream = false;
    uint64_t stream_start = 0;
    uint64_t stream_chunk = 10000000;
    std::string format = "text";
};

int cmd_period(const PeriodOptions& opt) {
    require_odd_modulus(opt.n);
    newman::ModulusConfig cfg(opt.n);

    if (opt.residue != 0) {
        if (opt.n != 3)
            throw CLI::ValidationError("--residue", "residue tables are defined for --n 3 only");
        if (!opt.variant.empty())
            throw CLI::ValidationError("--residue", "cannot combine with --variant");
        newman::PeriodTable table = newman::residue_correction_table(opt.residue);
        if (!opt.out_path.empty()) newman::write_table(table, opt.out_path);
        if (!opt.csv_path.empty()) newman::write_table_csv(table, opt.csv_path);
        print_table_report(table, 2, opt.positions, opt.print_values, opt.format == "json");
        return kExitOk;
    }

    bool streaming = opt.stream || opt.n >= 9;
    if (streaming) {
        if (!opt.variant.empty())
            throw CLI::ValidationError("--variant",
                                       "streaming verification covers the block variant only");
        newman::StreamStats st =
            newman::verify_period_streaming(cfg, opt.stream_start, opt.stream_chunk);
        if (opt.format == "json") {
            ordered_json out;
            out["n"] = opt.n;
            out["mode"] = "stream";
            out["period"] = cfg.period();
            out["chunk_start"] = st.chunk_start;
            out["chunk_length"] = st.chunk_length;
            out["positions_checked"] = st.positions_checked;
            out["min"] = st.min_value;
            out["max"] = st.max_value;
            out["distinct"] = st.distinct;
            out["ok"] = st.ok();
            if (st.violation) out["violation_witness"] = *st.violation;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "n: " << opt.n << "\n"
                      << "mode: stream\n"
                      << "period: " << cfg.period() << "\n"
                      << "chunk_start: " << st.chunk_start << "\n"
                      << "chunk_length: " << st.chunk_length << "\n"
                      << "positions_checked: " << st.positions_checked << "\n"
                      << "min: " << st.min_value << "\n"
                      << "max: " << st.max_value << "\n"
                      << "distinct: " << st.distinct << "\n"
                      << "ok: " << (st.ok() ? "true" : "false") << "\n";
            if (st.violation) std::cout << "violation_witness: " << *st.violation << "\n";
        }
        return st.ok() ? kExitOk : kExitPeriodicity;
    }

    newman::CorrectionVariant variant =
        opt.variant.empty() ? newman::CorrectionVariant::none(cfg)
                            : newman::CorrectionVariant::of(cfg, opt.variant);
    newman::PeriodTable table =
        obtain_table(cfg, variant, opt.periods, resolve_threads(opt.threads));
    if (!opt.out_path.empty()) newman::write_table(table, opt.out_path);
    if (!opt.csv_path.empty()) newman::write_table_csv(table, opt.csv_path);
    print_table_report(table, opt.periods, opt.positions, opt.print_values,
                       opt.format == "json");
    return kExitOk;
}

// ------------------------------------------------------------------ eval ---

struct EvalOptions {
    int n = 3;
    std::vector<uint64_t> xs;
    int residue = 0;
    std::string table_path;
    std::string format = "text";
};

int cmd_eval(const EvalOptions& opt) {
    require_odd_modulus(opt.n);
    std::vector<int64_t> values;
    values.reserve(opt.xs.size());
    if (opt.residue != 0) {
        if (opt.n != 3)
            throw CLI::ValidationError("--residue",
                                       "nonzero residue evaluation is defined for --n 3 only");
        for (uint64_t x : opt.xs) values.push_back(newman::mod3_residue_value(opt.residue, x));
    } else {
        newman::ModulusConfig cfg(opt.n);
        newman::CorrectionVariant variant = newman::CorrectionVariant::all(cfg);
        newman::PeriodTable table = opt.table_path.empty()
                                        ? obtain_table(cfg, variant, 2, 1)
                                        : newman::read_table(opt.table_path);
        newman::Evaluator eval(cfg, std::move(table));
        values = eval.batch(opt.xs);
    }
    if (opt.format == "json") {
        ordered_json results = ordered_json::array();
        for (size_t i = 0; i < opt.xs.size(); ++i)
            results.push_back({{"x", opt.xs[i]}, {"value", values[i]}});
        ordered_json out;
        out["n"] = opt.n;
        out["residue"] = opt.residue;
        out["results"] = results;
        std::cout << out.dump(2) << "\n";
    } else {
        for (int64_t v : values) std::cout << v << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- bounds ---

struct BoundsOptions {
    uint64_t x_min = 1;
    uint64_t x_max = 10000;
    unsigned threads = 1;
    std::string csv_path;
    std::string plot_path;
    std::string format = "text";
};

// One extra sequential pass collecting the per-x ratio series for file
// export; the scan result itself comes from the (optionally sharded) scan.
void export_bounds_series(uint64_t x_min, uint64_t x_max, const std::string& csv_path,
                          const std::string& plot_path) {
    std::ofstream csv, plot;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw std::runtime_error("cannot open for writing: " + csv_path);
        csv << "x,ratio\n";
    }
    if (!plot_path.empty()) {
        plot.open(plot_path);
        if (!plot) throw std::runtime_error("cannot open for writing: " + plot_path);
    }
    double lam = newman::growth_exponent();
    newman::ModulusConfig cfg(3);
    newman::CountScanner sc(cfg, 0);
    char line[64];
    for (uint64_t y = 1; y <= 3 * x_max; ++y) {
        sc.advance();
        if (y % 3 != 0 || y / 3 < x_min) continue;
        uint64_t x = y / 3;
        double ratio = double(sc.value()) / std::pow(double(x), lam);
        if (csv.is_open()) {
            std::snprintf(line, sizeof line, "%llu,%.17g\n",
                          static_cast<unsigned long long>(x), ratio);
            csv << line;
        }
        if (plot.is_open()) {
            std::snprintf(line, sizeof line, "%llu %.17g\n",
                          static_cast<unsigned long long>(x), ratio);
            plot << line;
        }
    }
}

int cmd_bounds(const BoundsOptions& opt) {
    newman::RatioScanResult res =
        newman::newman_ratio_scan_parallel(opt.x_min, opt.x_max, resolve_threads(opt.threads));
    auto [lower, upper] = newman::ratio_bounds();
    if (!opt.csv_path.empty() || !opt.plot_path.empty())
        export_bounds_series(opt.x_min, opt.x_max, opt.csv_path, opt.plot_path);

    if (opt.format == "json") {
        ordered_json out;
        out["x_min"] = res.x_min;
        out["x_max"] = res.x_max;
        out["lambda"] = newman::growth_exponent();
        out["sharp_lower"] = lower;
        out["sharp_upper"] = upper;
        out["min_ratio"] = res.min_ratio;
        out["argmin"] = res.argmin;
        out["max_ratio"] = res.max_ratio;
        out["argmax"] = res.argmax;
        ordered_json sharp = ordered_json::array();
        for (const auto& v : res.violations)
            sharp.push_back({{"x", v.x}, {"ratio", v.ratio}, {"bound", v.bound}});
        out["sharp_violations"] = sharp;
        out["coarse_y_min"] = res.coarse_y_min;
        out["coarse_y_max"] = res.coarse_y_max;
        ordered_json coarse = ordered_json::array();
        for (const auto& v : res.coarse_violations)
            coarse.push_back({{"y", v.x}, {"ratio", v.ratio}, {"bound", v.bound}});
        out["coarse_violations"] = coarse;
        if (!std::isnan(res.x1_ratio)) out["x1_ratio_excluded_datapoint"] = res.x1_ratio;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }

    std::cout << "x_min: " << res.x_min << "\n"
              << "x_max: " << res.x_max << "\n"
              << "lambda: " << fmt_double(newman::growth_exponent()) << "\n"
              << "sharp_lower: " << fmt_double(lower) << "\n"
              << "sharp_upper: " << fmt_double(upper) << "\n"
              << "min_ratio: " << fmt_double(res.min_ratio) << "\n"
              << "argmin: " << res.argmin << "\n"
              << "max_ratio: " << fmt_double(res.max_ratio) << "\n"
              << "argmax: " << res.argmax << "\n"
              << "sharp_violations: " << res.violations.size() << "\n";
    for (const auto& v : res.violations)
        std::cout << "sharp_violation: x=" << v.x << " ratio=" << fmt_double(v.ratio)
                  << " bound=" << fmt_double(v.bound) << "\n";
    std::cout << "coarse_y_range: " << res.coarse_y_min << ".." << res.coarse_y_max << "\n"
              << "coarse_violations: " << res.coarse_violations.size() << "\n";
    for (const auto& v : res.coarse_violations)
        std::cout << "coarse_violation: y=" << v.x << " ratio=" << fmt_double(v.ratio)
                  << " bound=" << fmt_double(v.bound) << "\n";
    if (!std::isnan(res.x1_ratio))
        std::cout << "x1_ratio: " << fmt_double(res.x1_ratio)
                  << " (documented exclusion, not a violation)\n";
    return kExitOk;
}

// ---------------------------------------------------------------- coquet ---

struct CoquetOptions {
    uint64_t x_min = 2;
    uint64_t x_max = 100;
    std::string out_path;
    std::string plot_path;
    std::string format = "text";
};

int cmd_coquet(const CoquetOptions& opt) {
    std::vector<newman::FractalSample> samples = newman::fractal_samples(opt.x_min, opt.x_max);
    if (!opt.out_path.empty()) newman::write_samples_csv(samples, opt.out_path);
    if (!opt.plot_path.empty()) newman::write_samples_plot(samples, opt.plot_path);
    if (opt.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& s : samples) rows.push_back({{"x", s.x}, {"t", s.t}, {"f", s.f}});
        std::cout << rows.dump(2) << "\n";
        return kExitOk;
    }
    char line[96];
    for (const auto& s : samples) {
        std::snprintf(line, sizeof line, "%llu,%.17g,%.17g\n",
                      static_cast<unsigned long long>(s.x), s.t, s.f);
        std::cout << line;
    }
    return kExitOk;
}

// ----------------------------------------------------------------- stats ---

struct StatsOptions {
    std::string table_path;
    int n = 0;
    std::vector<int> variant;
    unsigned periods = 2;
    unsigned threads = 1;
    std::vector<int> values;
    std::string csv_path;
    std::string positions_csv_path;
    bool print_values = false;
    std::string format = "text";
};

int cmd_stats(const StatsOptions& opt) {
    unsigned verified = 0;  // 0 = loaded from file, no fresh verification
    newman::PeriodTable table = [&] {
        if (!opt.table_path.empty()) return newman::read_table(opt.table_path);
        if (opt.n == 0)
            throw CLI::ValidationError("--table", "need either --table FILE or --n N");
        require_odd_modulus(opt.n);
        newman::ModulusConfig cfg(opt.n);
        newman::CorrectionVariant variant =
            opt.variant.empty() ? newman::CorrectionVariant::none(cfg)
                                : newman::CorrectionVariant::of(cfg, opt.variant);
        verified = opt.periods;
        return obtain_table(cfg, variant, opt.periods, resolve_threads(opt.threads));
    }();
    if (!opt.csv_path.empty()) newman::write_table_csv(table, opt.csv_path);
    if (!opt.positions_csv_path.empty()) {
        newman::TableStats stats = newman::period_stats(
            table, std::vector<int32_t>(opt.values.begin(), opt.values.end()));
        newman::write_positions_csv(stats, opt.positions_csv_path);
    }
    print_table_report(table, verified, opt.values, opt.print_values,
                       opt.format == "json");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"Signed digit-sum residue counts: oracles, certificates, period tables,"
                 " fast evaluation, and growth-bound scans"};
    app.require_subcommand(1);
    auto format_validator = CLI::IsMember({"text", "json"});

    OracleOptions oracle;
    CLI::App* cmd_oracle_app = app.add_subcommand(
        "oracle", "Enumeration oracle for the signed count of one residue class");
    cmd_oracle_app->add_option("--n", oracle.n, "odd modulus >= 3")->required();
    cmd_oracle_app->add_option("--j", oracle.j, "residue class in [0, n) (default 0)");
    cmd_oracle_app->add_option("--x", oracle.x, "count over 0 <= r < x")->required();
    cmd_oracle_app->add_flag("--vector", oracle.vector, "print all residue classes as j,value");
    cmd_oracle_app->add_option("--format", oracle.format, "text or json")
        ->check(format_validator);

    CertifyOptions certify;
    CLI::App* cmd_certify_app = app.add_subcommand(
        "certify", "Exact certificates of the binomial identity for all odd n <= nmax");
    cmd_certify_app->add_option("--nmax", certify.n_max, "largest odd modulus (default 35)");
    cmd_certify_app->add_option("--xmax", certify.x_max,
                                "empirical grounding range for the transfer rule (default 200)");
    cmd_certify_app->add_flag("--verbose,-v", certify.verbose,
                              "also dump row 0 of each even matrix power");
    cmd_certify_app->add_option("--format", certify.format, "text or json")
        ->check(format_validator);

    PeriodOptions period;
    CLI::App* cmd_period_app = app.add_subcommand(
        "period", "Extract and verify the periodic correction table for one modulus");
    cmd_period_app->add_option("--n", period.n, "odd modulus >= 3")->required();
    cmd_period_app->add_option("--variant", period.variant,
                               "floor-divided recursion indices (repeatable)");
    cmd_period_app->add_option("--periods", period.periods, "periods to verify (default 2)")
        ->check(CLI::Range(2u, 16u));
    cmd_period_app->add_option("--threads", period.threads,
                               "worker threads, 0 = hardware (default 1)")
        ->check(CLI::Range(0u, 256u));
    cmd_period_app->add_option("--out", period.out_path, "write the table as JSON");
    cmd_period_app->add_option("--csv", period.csv_path, "write position,value rows");
    cmd_period_app->add_option("--positions", period.positions,
                               "list positions of this value (repeatable)");
    cmd_period_app->add_flag("--print-values", period.print_values,
                             "print the values line even for long tables");
    cmd_period_app->add_option("--residue", period.residue,
                               "nonzero residue-class table for --n 3 (1 or 2)")
        ->check(CLI::Range(1, 2));
    cmd_period_app->add_flag("--stream", period.stream,
                             "streaming verification instead of a full table"
                             " (automatic for n >= 9)");
    cmd_period_app->add_option("--stream-start", period.stream_start,
                               "first position of the streamed chunk (default 0)");
    cmd_period_app->add_option("--stream-chunk", period.stream_chunk,
                               "streamed chunk length (default 1e7)")
        ->check(CLI::Range(uint64_t(1), uint64_t(1) << 32));
    cmd_period_app->add_option("--format", period.format, "text or json")
        ->check(format_validator);

    EvalOptions eval;
    CLI::App* cmd_eval_app = app.add_subcommand(
        "eval", "Fast table-driven evaluation of signed counts at large arguments");
    cmd_eval_app->add_option("--n", eval.n, "odd modulus >= 3")->required();
    cmd_eval_app->add_option("--x", eval.xs, "argument (repeatable)")->required();
    cmd_eval_app->add_option("--residue", eval.residue,
                             "evaluate a nonzero residue class for --n 3 (1 or 2)")
        ->check(CLI::Range(1, 2));
    cmd_eval_app->add_option("--table", eval.table_path, "load the correction table from a file");
    cmd_eval_app->add_option("--format", eval.format, "text or json")->check(format_validator);

    BoundsOptions bounds;
    CLI::App* cmd_bounds_app = app.add_subcommand(
        "bounds", "Scan the growth ratio against the sharp and coarse constants");
    cmd_bounds_app->add_option("--xmin", bounds.x_min, "first scaled argument (default 1)")
        ->check(CLI::PositiveNumber);
    cmd_bounds_app->add_option("--xmax", bounds.x_max, "last scaled argument (default 10000)")
        ->check(CLI::PositiveNumber);
    cmd_bounds_app->add_option("--threads", bounds.threads,
                               "worker threads, 0 = hardware (default 1)")
        ->check(CLI::Range(0u, 256u));
    cmd_bounds_app->add_option("--csv", bounds.csv_path, "write x,ratio rows");
    cmd_bounds_app->add_option("--plot", bounds.plot_path, "write two-column x ratio rows");
    cmd_bounds_app->add_option("--format", bounds.format, "text or json")
        ->check(format_validator);

    CoquetOptions coquet;
    CLI::App* cmd_coquet_app = app.add_subcommand(
        "coquet", "Sample the period-1 fractal factor of the growth decomposition");
    cmd_coquet_app->add_option("--xmin", coquet.x_min, "first argument (default 2)")
        ->check(CLI::PositiveNumber);
    cmd_coquet_app->add_option("--xmax", coquet.x_max, "last argument (default 100)")
        ->check(CLI::PositiveNumber);
    cmd_coquet_app->add_option("--out", coquet.out_path, "write x,t,f CSV with header");
    cmd_coquet_app->add_option("--plot", coquet.plot_path, "write two-column t f rows");
    cmd_coquet_app->add_option("--format", coquet.format, "text or json")
        ->check(format_validator);

    StatsOptions stats;
    CLI::App* cmd_stats_app = app.add_subcommand(
        "stats", "Summarize a correction table from a file or a fresh extraction");
    cmd_stats_app->add_option("--table", stats.table_path, "table file to load");
    cmd_stats_app->add_option("--n", stats.n, "odd modulus to extract instead of loading");
    cmd_stats_app->add_option("--variant", stats.variant,
                              "floor-divided recursion indices (repeatable)");
    cmd_stats_app->add_option("--periods", stats.periods, "periods to verify (default 2)")
        ->check(CLI::Range(2u, 16u));
    cmd_stats_app->add_option("--threads", stats.threads,
                              "worker threads, 0 = hardware (default 1)")
        ->check(CLI::Range(0u, 256u));
    cmd_stats_app->add_option("--value", stats.values,
                              "list positions of this value (repeatable)");
    cmd_stats_app->add_option("--csv", stats.csv_path, "write position,value rows");
    cmd_stats_app->add_option("--positions-csv", stats.positions_csv_path,
                              "write value,positions rows for requested values");
    cmd_stats_app->add_flag("--print-values", stats.print_values,
                            "print the values line even for long tables");
    cmd_stats_app->add_option("--format", stats.format, "text or json")
        ->check(format_validator);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(cmd_oracle_app)) return cmd_oracle(oracle);
        if (app.got_subcommand(cmd_certify_app)) return cmd_certify(certify);
        if (app.got_subcommand(cmd_period_app)) return cmd_period(period);
        if (app.got_subcommand(cmd_eval_app)) return cmd_eval(eval);
        if (app.got_subcommand(cmd_bounds_app)) return cmd_bounds(bounds);
        if (app.got_subcommand(cmd_coquet_app)) return cmd_coquet(coquet);
        if (app.got_subcommand(cmd_stats_app)) return cmd_stats(stats);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return kExitUsage;
    } catch (const newman::PeriodicityViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPeriodicity;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
