#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace newman {

using std::int64_t;
using std::uint64_t;

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("64-bit signed count overflow in addition");
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("64-bit signed count overflow in multiplication");
    return r;
}

inline uint64_t checked_upow(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) {
        if (__builtin_mul_overflow(r, base, &r))
            throw std::overflow_error("unsigned 64-bit power overflow");
    }
    return r;
}

// Odd modulus n >= 3 with its derived positional base n-1.
struct ModulusConfig {
    int n;

    explicit ModulusConfig(int n_) : n(n_) {
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("modulus must be odd and >= 3: " + std::to_string(n_));
    }

    int base() const { return n - 1; }

    // Block size (n-1)^(n-1) shared by the recursion family.
    uint64_t block() const { return checked_upow(uint64_t(n - 1), unsigned(n - 1)); }

    // Canonical period 2*n*(n-1)^(n-1). Overflows 64 bits from n=17 on;
    // table extraction never goes that far, so a throwing accessor suffices.
    uint64_t period() const {
        uint64_t p = block();
        if (__builtin_mul_overflow(p, uint64_t(2 * n), &p))
            throw std::overflow_error("period does not fit in 64 bits for n=" + std::to_string(n));
        return p;
    }
};

inline unsigned digit_sum(uint64_t r, unsigned base) {
    if (base < 2) throw std::invalid_argument("digit_sum: base must be >= 2");
    unsigned s = 0;
    while (r) {
        s += unsigned(r % base);
        r /= base;
    }
    return s;
}

// (-1)^(digit sum of r in the given base)
inline int parity_sign(uint64_t r, unsigned base) {
    return digit_sum(r, base) & 1u ? -1 : +1;
}

// Signed count over one residue class: sum of parity_sign(r, n-1) for
// r in [0, x) with r == j (mod n). Direct enumeration, O(x).
inline int64_t brute_count(const ModulusConfig& cfg, int j, uint64_t x) {
    if (j < 0 || j >= cfg.n) throw std::invalid_argument("residue out of range");
    int64_t acc = 0;
    for (uint64_t r = uint64_t(j); r < x; r += uint64_t(cfg.n))
        acc += parity_sign(r, unsigned(cfg.base()));
    return acc;
}

// Length-n vector of signed counts at a common argument x.
struct ResidueVector {
    int n;
    std::vector<int64_t> values;

    int64_t total() const {
        int64_t t = 0;
        for (int64_t v : values) t = checked_add(t, v);
        return t;
    }
};

inline ResidueVector brute_count_vector(const ModulusConfig& cfg, uint64_t x) {
    ResidueVector out{cfg.n, std::vector<int64_t>(size_t(cfg.n), 0)};
    for (uint64_t r = 0; r < x; ++r)
        out.values[size_t(r % uint64_t(cfg.n))] += parity_sign(r, unsigned(cfg.base()));
    return out;
}

// Incremental scanner over r = 0,1,2,... keeping the digit expansion of the
// cursor so the parity flip per step is amortized O(1) (base is even: the
// sign flips exactly when the carry run has even length). value() is the
// signed count for the half-open prefix [0, pos()).
class CountScanner {
public:
    CountScanner(const ModulusConfig& cfg, int j)
        : CountScanner(cfg, j, 0, 0) {}

    // Seed mid-stream: acc_seed must equal the signed count at start.
    CountScanner(const ModulusConfig& cfg, int j, uint64_t start, int64_t acc_seed)
        : n_(cfg.n), base_(unsigned(cfg.base())), j_(j), pos_(start), acc_(acc_seed) {
        if (j < 0 || j >= cfg.n) throw std::invalid_argument("residue out of range");
        digits_.fill(0);
        uint64_t v = start;
        int i = 0;
        while (v) {
            digits_[size_t(i++)] = uint8_t(v % base_);
            v /= base_;
        }
        parity_ = int(digit_sum(start, base_) & 1u);
        mod_ = int(start % uint64_t(n_));
    }

    uint64_t pos() const { return pos_; }
    int64_t value() const { return acc_; }
    int sign() const { return parity_ ? -1 : +1; }  // parity sign of pos()
    int residue() const { return mod_; }            // pos() mod n

    // Consume r = pos() into the count, then move the cursor to pos()+1.
    void advance() {
        if (mod_ == j_) acc_ = checked_add(acc_, sign());
        ++pos_;
        if (++mod_ == n_) mod_ = 0;
        size_t i = 0;
        while (digits_[i] == base_ - 1) digits_[i++] = 0;
        ++digits_[i];
        // digit sum changes by 1 - i*(base-1); with even base that is odd iff i is even
        if ((i & 1) == 0) parity_ ^= 1;
    }

    void advance_to(uint64_t x) {
        while (pos_ < x) advance();
    }

private:
    int n_;
    unsigned base_;
    int j_;
    uint64_t pos_;
    int64_t acc_;
    std::array<uint8_t, 66> digits_;
    int parity_;
    int mod_;
};

// Same walk, accumulating all n residue classes at once.
class VectorScanner {
public:
    explicit VectorScanner(const ModulusConfig& cfg)
        : n_(cfg.n), base_(unsigned(cfg.base())), pos_(0),
          acc_(size_t(cfg.n), 0), parity_(0), mod_(0) {
        digits_.fill(0);
    }

    uint64_t pos() const { return pos_; }
    const std::vector<int64_t>& values() const { return acc_; }
    ResidueVector snapshot() const { return ResidueVector{n_, acc_}; }

    void advance() {
        acc_[size_t(mod_)] += parity_ ? -1 : +1;
        ++pos_;
        if (++mod_ == n_) mod_ = 0;
        size_t i = 0;
        while (digits_[i] == base_ - 1) digits_[i++] = 0;
        ++digits_[i];
        if ((i & 1) == 0) parity_ ^= 1;
    }

    void advance_to(uint64_t x) {
        while (pos_ < x) advance();
    }

private:
    int n_;
    unsigned base_;
    uint64_t pos_;
    std::vector<int64_t> acc_;
    std::array<uint8_t, 66> digits_;
    int parity_;
    int mod_;
};

// All signed counts for x = 0..x_max in one pass; element x agrees with
// brute_count(cfg, j, x).
inline std::vector<int64_t> prefix_counts(const ModulusConfig& cfg, int j, uint64_t x_max) {
    std::vector<int64_t> out;
    out.reserve(size_t(x_max + 1));
    CountScanner sc(cfg, j);
    out.push_back(sc.value());
    for (uint64_t x = 0; x < x_max; ++x) {
        sc.advance();
        out.push_back(sc.value());
    }
    return out;
}

// Closed form of the sum over all residue classes: 0 for even x (pairs
// cancel), otherwise the parity sign of the last element x-1. x=0 is the
// empty sum.
inline int64_t total_count(const ModulusConfig& cfg, uint64_t x) {
    if (x == 0 || x % 2 == 0) return 0;
    return parity_sign(x - 1, unsigned(cfg.base()));
}

}  // namespace newman
