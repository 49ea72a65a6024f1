#include <catch_amalgamated.hpp>

#include <thread>

#include "newman/eval.hpp"
#include "newman/transfer.hpp"
#include "pinned.hpp"

using namespace newman;

TEST_CASE("evaluator equals the oracle on a dense range, modulus 3") {
    ModulusConfig cfg(3);
    Evaluator ev(cfg);
    std::vector<int64_t> expect = prefix_counts(cfg, 0, 100000);
    for (uint64_t x = 0; x <= 100000; ++x) REQUIRE(ev(x) == expect[size_t(x)]);
}

TEST_CASE("evaluator equals the oracle on a dense range, modulus 5") {
    ModulusConfig cfg(5);
    Evaluator ev(cfg);
    std::vector<int64_t> expect = prefix_counts(cfg, 0, 100000);
    for (uint64_t x = 0; x <= 100000; ++x) REQUIRE(ev(x) == expect[size_t(x)]);
}

TEST_CASE("evaluator equals the digit-counting program at large arguments") {
    ModulusConfig c3(3);
    Evaluator ev3(c3);
    ExactCounter dp3(c3);
    CHECK(ev3(1000000000000000ull) == pinned::kCount3At1e15);
    CHECK(dp3.count_i64(0, 1000000000000000ull) == pinned::kCount3At1e15);
    for (uint64_t x : {999999937ull, 4294967296ull, 87178291199ull})
        CHECK(ev3(x) == dp3.count_i64(0, x));

    ModulusConfig c5(5);
    Evaluator ev5(c5);
    ExactCounter dp5(c5);
    CHECK(ev5(1000000000000ull) == pinned::kCount5At1e12);
    CHECK(dp5.count_i64(0, 1000000000000ull) == pinned::kCount5At1e12);
    for (uint64_t x : {16777259ull, 68719476736ull})
        CHECK(ev5(x) == dp5.count_i64(0, x));
}

TEST_CASE("pinned spot values") {
    ModulusConfig cfg(3);
    Evaluator ev(cfg);
    CHECK(ev(0) == 0);
    CHECK(ev(1) == 1);
    CHECK(ev(20) == 7);
    Evaluator ev5((ModulusConfig(5)));
    CHECK(ev5(1) == 1);
}

TEST_CASE("quarter-argument identity on even arguments") {
    // counting to 4x splits each length-4 block into two canceling halves
    // plus a tripled core, so the count at 4x is three times the count at x
    ModulusConfig cfg(3);
    Evaluator ev(cfg);
    for (uint64_t x = 0; x <= 10000; x += 2) REQUIRE(ev(4 * x) == 3 * ev(x));
}

TEST_CASE("batch evaluation matches pointwise evaluation") {
    ModulusConfig cfg(5);
    Evaluator ev(cfg);
    std::vector<uint64_t> xs = {0, 1, 20, 256, 2560, 123456, 99999999};
    std::vector<int64_t> batched = ev.batch(xs);
    REQUIRE(batched.size() == xs.size());
    for (size_t i = 0; i < xs.size(); ++i) CHECK(batched[i] == ev.value(xs[i]));
}

TEST_CASE("evaluator accepts only the matching all-floors table") {
    ModulusConfig c5(5);
    PeriodTable block = extract_period_table(c5, CorrectionVariant::none(c5));
    CHECK_THROWS_AS(Evaluator(c5, block), std::invalid_argument);

    PeriodTable wrong_n = extract_period_table(ModulusConfig(3),
                                               CorrectionVariant::none(ModulusConfig(3)));
    CHECK_THROWS_AS(Evaluator(c5, wrong_n), std::invalid_argument);

    PeriodTable shifted = extract_period_table(c5, CorrectionVariant::all(c5));
    shifted.start_offset = 4;
    CHECK_THROWS_AS(Evaluator(c5, shifted), std::invalid_argument);
}

TEST_CASE("evaluator is safe under concurrent use") {
    ModulusConfig cfg(3);
    Evaluator ev(cfg);
    std::vector<int64_t> expect = prefix_counts(cfg, 0, 20000);
    std::vector<std::thread> workers;
    std::vector<int> bad(4, 0);
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&, t] {
            for (uint64_t x = uint64_t(t); x <= 20000; x += 4)
                if (ev(x) != expect[size_t(x)]) ++bad[size_t(t)];
        });
    for (auto& w : workers) w.join();
    CHECK(bad == std::vector<int>(4, 0));
}

TEST_CASE("nonzero residue classes, modulus 3: oracle equality") {
    ModulusConfig cfg(3);
    for (int i : {1, 2}) {
        std::vector<int64_t> expect = prefix_counts(cfg, i, 100000);
        for (uint64_t x = 0; x <= 100000; ++x)
            REQUIRE(mod3_residue_value(i, x) == expect[size_t(x)]);
    }
}

TEST_CASE("nonzero residue classes: pinned values and guards") {
    CHECK(mod3_residue_value(1, 20) == -5);
    CHECK(mod3_residue_value(2, 20) == -2);
    CHECK(mod3_residue_value(1, 0) == 0);
    CHECK(mod3_residue_value(2, 0) == 0);
    CHECK_THROWS_AS(mod3_residue_value(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(mod3_residue_value(3, 10), std::invalid_argument);
}

TEST_CASE("nonzero residue classes at large arguments vs digit counting") {
    ModulusConfig cfg(3);
    ExactCounter dp(cfg);
    for (int i : {1, 2})
        for (uint64_t x : {1000003ull, 999999937ull, 1099511627776ull})
            CHECK(mod3_residue_value(i, x) == dp.count_i64(i, x));
}
