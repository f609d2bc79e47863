#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "coploc/sysarray.hpp"

using namespace coploc;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("sysarray") {

TEST_CASE("config derived quantities") {
    auto cfg = ArrayConfig::make(8, 8, 8);
    CHECK(cfg.magnitude_bound() == 127);
    CHECK(cfg.min_weight() == -128);
    CHECK(cfg.accumulator_bits == 20);  // 2*8 + log2(8) + 1
    cfg.validate();
    auto cfg4 = ArrayConfig::make(4, 4, 4);
    CHECK(cfg4.magnitude_bound() == 7);
    CHECK(cfg4.min_weight() == -8);
}

TEST_CASE("config validation boundaries") {
    auto cfg = ArrayConfig::make(8, 8, 8);
    cfg.accumulator_bits = 19;  // 2b + log2(L) exactly, still holds L * M^2
    CHECK_NOTHROW(cfg.validate());
    cfg.accumulator_bits = 18;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.accumulator_bits = 17;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ArrayConfig::make(8, 8, 8);
    cfg.rows = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ArrayConfig::make(8, 8, 8);
    cfg.bit_width = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.bit_width = 25;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ArrayConfig::make(8, 8, 8);
    cfg.accumulator_bits = 64;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("weight csv round-trip and validation") {
    auto cfg = ArrayConfig::make(2, 3, 8);
    WeightMatrix w(2, 3);
    w.set(0, 0, -128);
    w.set(0, 1, 0);
    w.set(0, 2, 127);
    w.set(1, 0, 5);
    w.set(1, 1, -7);
    w.set(1, 2, 64);
    auto path = temp_path("coploc_w_roundtrip.csv");
    save_weights_csv(path, w);
    auto back = load_weights_csv(path, cfg);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(back.at(i, j) == w.at(i, j));
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_weights_csv(temp_path("coploc_no_such_file.csv"), cfg),
                    std::runtime_error);

    auto bad = temp_path("coploc_w_bad.csv");
    {
        std::FILE* f = std::fopen(bad.c_str(), "w");
        std::fputs("1,2,3\n4,5\n", f);  // short row
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_weights_csv(bad, cfg), std::runtime_error);
    {
        std::FILE* f = std::fopen(bad.c_str(), "w");
        std::fputs("1,2,300\n4,5,6\n", f);  // 300 outside signed 8 bits
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_weights_csv(bad, cfg), std::runtime_error);
    {
        std::FILE* f = std::fopen(bad.c_str(), "w");
        std::fputs("1,2,3\n", f);  // missing a row
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_weights_csv(bad, cfg), std::runtime_error);
    std::remove(bad.c_str());
}

TEST_CASE("random weights are deterministic and in range") {
    auto cfg = ArrayConfig::make(16, 16, 8);
    auto a = random_weights(cfg, 7);
    auto b = random_weights(cfg, 7);
    auto c = random_weights(cfg, 8);
    bool all_equal = true, any_diff = false;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            all_equal = all_equal && a.at(i, j) == b.at(i, j);
            any_diff = any_diff || a.at(i, j) != c.at(i, j);
            CHECK(a.at(i, j) >= -128);
            CHECK(a.at(i, j) <= 127);
        }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("additive fault arithmetic") {
    auto r = effective_weight(7, AdditiveBounded{1}, 4);
    CHECK(r.value == 8);
    CHECK(r.error == 1);
    CHECK(r.out_of_range);  // signed 4-bit range tops out at 7
    r = effective_weight(7, AdditiveBounded{-4}, 4);
    CHECK(r.value == 3);
    CHECK(r.error == -4);
    CHECK_FALSE(r.out_of_range);
    CHECK_THROWS_AS(effective_weight(0, AdditiveBounded{0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(effective_weight(0, AdditiveBounded{8}, 4), std::invalid_argument);
    CHECK_THROWS_AS(effective_weight(0, AdditiveBounded{-8}, 4), std::invalid_argument);
}

TEST_CASE("stuck bit forces one readback bit") {
    auto r = effective_weight(7, StuckBit{2, 0}, 4);  // 0111 -> 0011
    CHECK(r.value == 3);
    CHECK(r.error == -4);
    CHECK_FALSE(r.out_of_range);

    r = effective_weight(-1, StuckBit{7, 0}, 8);  // 11111111 -> 01111111
    CHECK(r.value == 127);
    CHECK(r.error == 128);  // flips past the two's-complement midpoint

    r = effective_weight(0, StuckBit{7, 1}, 8);  // sign bit set on zero
    CHECK(r.value == -128);
    CHECK(r.error == -128);

    r = effective_weight(7, StuckBit{0, 1}, 4);  // bit already 1: masked
    CHECK(r.value == 7);
    CHECK(r.error == 0);

    CHECK_THROWS_AS(effective_weight(0, StuckBit{4, 0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(effective_weight(0, StuckBit{-1, 0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(effective_weight(0, StuckBit{0, 2}, 4), std::invalid_argument);
}

TEST_CASE("run_mv computes column inner products") {
    auto cfg = ArrayConfig::make(2, 2, 8);
    WeightMatrix w(2, 2);
    w.set(0, 0, 1);
    w.set(0, 1, 2);
    w.set(1, 0, 3);
    w.set(1, 1, 4);
    auto x = sketch_from_entries({7, 5}, 127);
    auto clean = run_mv(cfg, w, std::nullopt, x);
    CHECK(clean.outputs == std::vector<i64>{22, 34});
    CHECK(clean.cycle_count == cycle_model(cfg, 1));
    CHECK_FALSE(clean.fault_masked);
    CHECK_FALSE(clean.weight_out_of_range);

    auto faulty =
        run_mv(cfg, w, FaultSpec{0, 1, AdditiveBounded{2}}, x);  // w[0][1]: 2 -> 4
    CHECK(faulty.outputs == std::vector<i64>{22, 48});
}

TEST_CASE("run_mv single-column worked example") {
    auto cfg = ArrayConfig::make(4, 1, 4);
    WeightMatrix w(4, 1, 7);
    auto x = sketch_from_entries({7, 5, 3, 2}, 7, PoolKind::largest_primes);
    auto clean = run_mv(cfg, w, std::nullopt, x);
    CHECK(clean.outputs == std::vector<i64>{119});
    auto faulty = run_mv(cfg, w, FaultSpec{1, 0, AdditiveBounded{-4}}, x);
    CHECK(faulty.outputs == std::vector<i64>{99});  // deviation -20 = -4 * x[1]
}

TEST_CASE("run_mv flags masked and out-of-range faults") {
    auto cfg = ArrayConfig::make(2, 2, 4);
    WeightMatrix w(2, 2, 7);
    auto x = sketch_from_entries({3, 2}, 7);
    auto masked = run_mv(cfg, w, FaultSpec{0, 0, StuckBit{0, 1}}, x);
    CHECK(masked.fault_masked);
    CHECK(masked.outputs == run_mv(cfg, w, std::nullopt, x).outputs);
    auto oor = run_mv(cfg, w, FaultSpec{0, 0, AdditiveBounded{1}}, x);
    CHECK(oor.weight_out_of_range);
    CHECK(oor.outputs[0] == 8 * 3 + 7 * 2);
}

TEST_CASE("all-zero activations yield zero deviation everywhere") {
    auto cfg = ArrayConfig::make(3, 2, 8);
    WeightMatrix w(3, 2);
    w.set(0, 0, 11);
    w.set(1, 0, -12);
    w.set(2, 1, 13);
    SketchVector x;
    x.entries = {0, 0, 0};
    x.magnitude_bound = 127;
    auto clean = run_mv(cfg, w, std::nullopt, x);
    auto faulty = run_mv(cfg, w, FaultSpec{1, 0, AdditiveBounded{100}}, x);
    CHECK(clean.outputs == std::vector<i64>{0, 0});
    CHECK(faulty.outputs == clean.outputs);  // e * 0 = 0: fault invisible
}

TEST_CASE("run_mv dimension validation") {
    auto cfg = ArrayConfig::make(2, 2, 8);
    WeightMatrix wrong(3, 2);
    auto x = sketch_from_entries({3, 2}, 127);
    CHECK_THROWS_AS(run_mv(cfg, wrong, std::nullopt, x), std::invalid_argument);
    WeightMatrix w(2, 2);
    auto short_x = sketch_from_entries({3}, 127);
    CHECK_THROWS_AS(run_mv(cfg, w, std::nullopt, short_x), std::invalid_argument);
    CHECK_THROWS_AS(run_mv(cfg, w, FaultSpec{2, 0, AdditiveBounded{1}}, x),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_mv(cfg, w, FaultSpec{0, 2, AdditiveBounded{1}}, x),
                    std::invalid_argument);
}

TEST_CASE("cycle model: fill plus one cycle per extra vector") {
    auto cfg = ArrayConfig::make(8, 8, 8);
    CHECK(cycle_model(cfg, 1) == 23);  // 8 load + 15 fill
    CHECK(cycle_model(cfg, 2) == 24);
    CHECK(cycle_model(cfg, 3) - cycle_model(cfg, 1) == 2);
    for (std::size_t L : {4u, 16u, 256u}) {
        auto c = ArrayConfig::make(L, L, 8);
        CHECK(cycle_model(c, 2) - cycle_model(c, 1) == 1);
        CHECK(cycle_model(c, 1) == L + (L + L - 1));
    }
    CHECK_THROWS_AS(cycle_model(cfg, 0), std::invalid_argument);
}

}  // TEST_SUITE
