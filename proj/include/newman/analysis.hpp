#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "newman/digits.hpp"
#include "newman/transfer.hpp"

namespace newman {

// Growth exponent of the residue-0 count for n=3: ln 3 / ln 4.
inline double growth_exponent() { return std::log(3.0) / std::log(4.0); }

// Sharp two-sided constants for S(3x)/x^lambda: lower 2*sqrt(3)/3 (attained
// at x=2 and its 4^k multiples), upper (55/3)*(3/65)^lambda.
inline std::pair<double, double> ratio_bounds() {
    double lam = growth_exponent();
    return {2.0 * std::sqrt(3.0) / 3.0, (55.0 / 3.0) * std::pow(3.0 / 65.0, lam)};
}

// The +-1/0 correction of the fractal decomposition
// S(3x) = x^lambda * F(log_4 x) + eta(x)/3: zero for even x, else the parity
// sign of 3x-1.
inline int fractal_correction(uint64_t x) {
    if (x == 0) throw std::invalid_argument("fractal correction needs x >= 1");
    if (x % 2 == 0) return 0;
    return parity_sign(3 * x - 1, 2);
}

struct RatioScanResult {
    uint64_t x_min;
    uint64_t x_max;
    double min_ratio;
    uint64_t argmin;
    double max_ratio;
    uint64_t argmax;
    struct Violation {
        uint64_t x;
        double ratio;
        double bound;
    };
    std::vector<Violation> violations;        // sharp-bound breaches at x >= 2
    uint64_t coarse_y_min;
    uint64_t coarse_y_max;
    std::vector<Violation> coarse_violations; // breaches of 1/20 < S(y)/y^lambda < 5
    double x1_ratio;                          // recorded but never a violation; NaN if x_min > 1
};

// Streams S_{3,0} once up to 3*x_max: at every y in [max(3, 3*x_min), 3*x_max]
// the coarse Newman bounds are checked, and at every multiple y = 3x the
// ratio S(3x)/x^lambda is recorded and checked against the sharp constants
// (tolerance 1e-9). x = 1 sits below the lower constant and is kept as a
// documented datapoint, not a violation.
inline RatioScanResult newman_ratio_scan(uint64_t x_min, uint64_t x_max) {
    if (x_min < 1 || x_min > x_max) throw std::invalid_argument("need 1 <= x_min <= x_max");
    double lam = growth_exponent();
    auto [lower, upper] = ratio_bounds();
    const double tol = 1e-9;

    RatioScanResult res{x_min, x_max,
                        std::numeric_limits<double>::infinity(), 0,
                        -std::numeric_limits<double>::infinity(), 0,
                        {},
                        std::max<uint64_t>(3, 3 * x_min), 3 * x_max,
                        {},
                        std::numeric_limits<double>::quiet_NaN()};

    ModulusConfig cfg(3);
    CountScanner sc(cfg, 0);
    for (uint64_t y = 1; y <= 3 * x_max; ++y) {
        sc.advance();  // now value() == S(y)
        double s = double(sc.value());
        if (y >= res.coarse_y_min) {
            double r = s * std::pow(double(y), -lam);
            if (!(r > 1.0 / 20.0) || !(r < 5.0))
                res.coarse_violations.push_back({y, r, r <= 1.0 / 20.0 ? 1.0 / 20.0 : 5.0});
        }
        if (y % 3 == 0) {
            uint64_t x = y / 3;
            if (x < x_min) continue;
            double ratio = s / std::pow(double(x), lam);
            if (x == 1) {
                res.x1_ratio = ratio;
                continue;
            }
            if (ratio < res.min_ratio) { res.min_ratio = ratio; res.argmin = x; }
            if (ratio > res.max_ratio) { res.max_ratio = ratio; res.argmax = x; }
            if (ratio < lower - tol) res.violations.push_back({x, ratio, lower});
            if (ratio > upper + tol) res.violations.push_back({x, ratio, upper});
        }
    }
    return res;
}

// Same scan sharded over contiguous y ranges. Workers seed their scanners
// from the exact counter, so results are identical to the sequential scan
// (each ratio is computed from the same exact 64-bit count).
inline RatioScanResult newman_ratio_scan_parallel(uint64_t x_min, uint64_t x_max,
                                                  unsigned threads) {
    if (threads <= 1 || x_max - x_min < 64) return newman_ratio_scan(x_min, x_max);
    if (x_min < 1 || x_min > x_max) throw std::invalid_argument("need 1 <= x_min <= x_max");
    double lam = growth_exponent();
    auto [lower, upper] = ratio_bounds();
    const double tol = 1e-9;

    ModulusConfig cfg(3);
    ExactCounter counter(cfg);
    std::vector<RatioScanResult> parts(threads);
    std::vector<std::thread> workers;
    uint64_t span = x_max - x_min + 1;
    uint64_t chunk = (span + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        uint64_t lo = x_min + std::min<uint64_t>(span, t * chunk);
        uint64_t hi = x_min + std::min<uint64_t>(span, (t + 1) * chunk) - 1;
        if (lo > hi) break;
        workers.emplace_back([&, t, lo, hi] {
            RatioScanResult r{lo, hi,
                              std::numeric_limits<double>::infinity(), 0,
                              -std::numeric_limits<double>::infinity(), 0,
                              {},
                              std::max<uint64_t>(3, 3 * x_min), 3 * hi,
                              {},
                              std::numeric_limits<double>::quiet_NaN()};
            uint64_t y0 = lo == 1 ? 1 : 3 * (lo - 1) + 1;
            uint64_t y0_start = y0 - 1;
            CountScanner sc(cfg, 0, y0_start, counter.count_i64(0, y0_start));
            for (uint64_t y = y0; y <= 3 * hi; ++y) {
                sc.advance();
                double s = double(sc.value());
                if (y >= r.coarse_y_min) {
                    double rr = s * std::pow(double(y), -lam);
                    if (!(rr > 1.0 / 20.0) || !(rr < 5.0))
                        r.coarse_violations.push_back({y, rr, rr <= 1.0 / 20.0 ? 1.0 / 20.0 : 5.0});
                }
                if (y % 3 == 0) {
                    uint64_t x = y / 3;
                    if (x < lo) continue;
                    double ratio = s / std::pow(double(x), lam);
                    if (x == 1) {
                        r.x1_ratio = ratio;
                        continue;
                    }
                    if (ratio < r.min_ratio) { r.min_ratio = ratio; r.argmin = x; }
                    if (ratio > r.max_ratio) { r.max_ratio = ratio; r.argmax = x; }
                    if (ratio < lower - tol) r.violations.push_back({x, ratio, lower});
                    if (ratio > upper + tol) r.violations.push_back({x, ratio, upper});
                }
            }
            parts[t] = std::move(r);
        });
    }
    for (auto& w : workers) w.join();

    RatioScanResult merged = parts[0];
    merged.x_min = x_min;
    merged.x_max = x_max;
    merged.coarse_y_min = std::max<uint64_t>(3, 3 * x_min);
    merged.coarse_y_max = 3 * x_max;
    for (size_t t = 1; t < workers.size(); ++t) {
        const auto& r = parts[t];
        if (r.min_ratio < merged.min_ratio) { merged.min_ratio = r.min_ratio; merged.argmin = r.argmin; }
        if (r.max_ratio > merged.max_ratio) { merged.max_ratio = r.max_ratio; merged.argmax = r.argmax; }
        merged.violations.insert(merged.violations.end(), r.violations.begin(), r.violations.end());
        merged.coarse_violations.insert(merged.coarse_violations.end(),
                                        r.coarse_violations.begin(), r.coarse_violations.end());
        if (!std::isnan(r.x1_ratio)) merged.x1_ratio = r.x1_ratio;
    }
    return merged;
}

struct FractalSample {
    uint64_t x;
    double t;  // fractional part of log_4 x, the period-1 abscissa
    double f;  // (S(3x) - eta(x)/3) / x^lambda
};

inline std::vector<FractalSample> fractal_samples(uint64_t x_min, uint64_t x_max) {
    if (x_min < 1 || x_min > x_max) throw std::invalid_argument("need 1 <= x_min <= x_max");
    double lam = growth_exponent();
    double ln4 = std::log(4.0);
    std::vector<FractalSample> out;
    out.reserve(size_t(x_max - x_min + 1));
    ModulusConfig cfg(3);
    CountScanner sc(cfg, 0);
    for (uint64_t y = 1; y <= 3 * x_max; ++y) {
        sc.advance();
        if (y % 3 != 0 || y / 3 < x_min) continue;
        uint64_t x = y / 3;
        double t = std::log(double(x)) / ln4;
        t -= std::floor(t);
        double f = (double(sc.value()) - fractal_correction(x) / 3.0) * std::pow(double(x), -lam);
        out.push_back({x, t, f});
    }
    return out;
}

inline void write_samples_csv(const std::vector<FractalSample>& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "x,t,f\n";
    char line[96];
    for (const auto& s : samples) {
        std::snprintf(line, sizeof line, "%llu,%.17g,%.17g\n",
                      static_cast<unsigned long long>(s.x), s.t, s.f);
        out << line;
    }
}

// Two-column scatter file of (t, F) pairs, ready for a plotting tool.
inline void write_samples_plot(const std::vector<FractalSample>& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    char line[80];
    for (const auto& s : samples) {
        std::snprintf(line, sizeof line, "%.17g %.17g\n", s.t, s.f);
        out << line;
    }
}

}  // namespace newman
