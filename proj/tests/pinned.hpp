// Shared pinned regression values used across the test binaries. Every value
// here was computed by at least two independent routes (enumeration oracle,
// digit-counting dynamic program, table recursion, or an external prototype)
// before being frozen.
#pragma once

#include <cstdint>
#include <vector>

namespace pinned {

// Canonical period-24 correction table for modulus 3 (block variant,
// start offset 0).
inline const std::vector<int32_t> kTable3 = {
    0, -1, -1, 1, 1, -1, -1, 0, 0, 0,  1, -1,
    1, -2, -2, 2, 0,  0,  0, -1, 1, -1, 0, 0};

// FNV-1a 64 checksum of kTable3 serialized as little-endian 4-byte values.
inline constexpr uint64_t kTable3Checksum = 17087784792954776258ull;

// Checksums of the two modulus-5 tables (block variant and the floor variant
// at index 1) and the modulus-7 block-variant table.
inline constexpr uint64_t kTable5Checksum = 15891961541712548061ull;
inline constexpr uint64_t kTable5Floor1Checksum = 15133915767368529109ull;
inline constexpr uint64_t kTable7Checksum = 3354997514258837925ull;

// The period-8 step component and period-12 drop component that tile into
// kTable3 (drop tiled twice, step tiled three times, elementwise difference).
inline const std::vector<int32_t> kStep8 = {0, 0, 0, 0, -1, 1, 1, -1};
inline const std::vector<int32_t> kDrop12 = {0, -1, -1, 1, 0, 0, 0, -1, 0, 0, 1, -1};

// Large-argument values of the residue-0 signed count, each confirmed by the
// digit-counting dynamic program and the table recursion independently.
inline constexpr int64_t kCount3At1e15 = 479989672992ll;
inline constexpr int64_t kCount5At1e12 = 2030283630ll;

// Modulus-7 block-variant table statistics (extraction and streaming
// verification agree).
inline constexpr int32_t kTable7Min = -2022;
inline constexpr int32_t kTable7Max = 2022;
inline constexpr uint64_t kTable7Distinct = 4045;

// Sharp ratio-scan landmarks for modulus 3 (see the analysis module).
inline constexpr double kSharpLower = 1.1547005383792515;   // 2*sqrt(3)/3
inline constexpr double kSharpUpper = 1.601958420577085;    // (55/3)*(3/65)^lambda
inline constexpr double kLambda = 0.7924812503605781;       // ln 3 / ln 4

}  // namespace pinned
