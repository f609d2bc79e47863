#include <doctest.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "coploc/localize.hpp"

using namespace coploc;

namespace {

bool has_candidate(const CandidateSet& set, std::size_t row) {
    for (const auto& c : set.candidates)
        if (c.row == row) return true;
    return false;
}

}  // namespace

TEST_SUITE("localize") {

TEST_CASE("one-round worked example: magnitude filter prunes the alias") {
    auto x = sketch_from_entries({7, 5, 3, 2}, 7, PoolKind::largest_primes);
    // delta = -20 divides by x[1] = 5 (e = -4) and x[3] = 2 (e = -10).
    auto with_filter = localize_one_round(-20, x, 7);
    REQUIRE(with_filter.candidates.size() == 1);
    CHECK(with_filter.candidates[0] == Candidate{1, -4});
    CHECK(with_filter.complete);
    CHECK_FALSE(with_filter.degraded);

    auto no_filter = localize_one_round(-20, x, std::nullopt);
    REQUIRE(no_filter.candidates.size() == 2);
    CHECK(no_filter.candidates[0] == Candidate{1, -4});
    CHECK(no_filter.candidates[1] == Candidate{3, -10});
    CHECK_FALSE(no_filter.complete);
}

TEST_CASE("one-round zero deviation is a caller error") {
    auto x = sketch_from_entries({7, 5, 3, 2}, 7);
    CHECK_THROWS_AS(localize_one_round(0, x, 7), std::invalid_argument);
}

TEST_CASE("one-round soundness and admission rule over the full fault space") {
    auto x = sketch_from_entries({7, 5, 3, 2}, 7, PoolKind::largest_primes);
    for (std::size_t star = 0; star < 4; ++star) {
        for (i64 e = -7; e <= 7; ++e) {
            if (e == 0) continue;
            const i64 delta = e * x.entries[star];
            auto set = localize_one_round(delta, x, std::nullopt);
            CHECK(has_candidate(set, star));  // true row always survives
            for (std::size_t k = 0; k < 4; ++k) {
                const bool admitted = has_candidate(set, k);
                const bool divides = delta % x.entries[k] == 0;
                CHECK(admitted == divides);
            }
        }
    }
}

TEST_CASE("one-round propagates the degraded flag") {
    auto x = sketch_from_entries({3, 3}, 7);
    auto set = localize_one_round(3, x, std::nullopt);
    CHECK(set.degraded);
    CHECK(set.candidates.size() == 2);  // identical entries are indistinguishable
}

TEST_CASE("two-round worked example on the consecutive pair") {
    auto pair = two_round_consecutive(7, 7);
    // Fault at row 2 with e = -2: deviations -6 and -4, ratio 2/3.
    auto r = localize_two_round(-6, -4, pair, 7);
    REQUIRE(r.ok());
    CHECK(r.row == 2);
    CHECK(r.error == -2);
    CHECK(to_string(r.status) == "ok");
}

TEST_CASE("two-round recovers every (row, error) pair exactly") {
    auto pair = two_round_consecutive(7, 7);
    for (std::size_t star = 0; star < 7; ++star) {
        for (i64 e = -7; e <= 7; ++e) {
            if (e == 0) continue;
            auto r = localize_two_round(e * pair.first.entries[star],
                                        e * pair.second.entries[star], pair, 7);
            REQUIRE(r.ok());
            CHECK(r.row == star);
            CHECK(r.error == e);
        }
    }
}

TEST_CASE("two-round status taxonomy") {
    auto pair = two_round_consecutive(7, 7);
    CHECK(localize_two_round(0, -4, pair, 7).status == TwoRoundStatus::zero_mismatch);
    CHECK(localize_two_round(-6, 0, pair, 7).status == TwoRoundStatus::zero_mismatch);
    CHECK_THROWS_AS(localize_two_round(0, 0, pair, 7), std::invalid_argument);
    CHECK(localize_two_round(-6, 4, pair, 7).status == TwoRoundStatus::sign_mismatch);
    CHECK(localize_two_round(5, 5, pair, 7).status ==
          TwoRoundStatus::no_ratio_match);  // ratio 1/1 never occurs
}

TEST_CASE("two-round check_failed is the magnitude/consistency gate") {
    auto pair = two_round_consecutive(7, 7);
    // Ratio 7/1 points at row 0, but the implied error 80 breaks the bound.
    auto r = localize_two_round(80, 560, pair, 7);
    CHECK(r.status == TwoRoundStatus::check_failed);
    CHECK(localize_two_round(80, 560, pair, 80).ok());  // same data, wider envelope
    CHECK(localize_two_round(-6, -4, pair, 1).status == TwoRoundStatus::check_failed);
}

TEST_CASE("two-round rejects a ratio match whose error is fractional") {
    // Per-row entries here are not coprime, so the reduced ratio can match
    // without the deviation being a multiple of the row entry.
    auto pair = pair_from_entries({4, 3}, {6, 8}, 127);
    REQUIRE(pair.ratios[0] == Ratio{3, 2});
    auto r = localize_two_round(2, 3, pair, 127);  // e would be 2/4
    CHECK(r.status == TwoRoundStatus::check_failed);
    CHECK(localize_two_round(4, 6, pair, 127).ok());  // e = 1 at row 0
}

TEST_CASE("two-round decode on the repeated-1s rotation base") {
    auto base = sketch_from_entries({1, 2, 1, 3, 1, 5, 7}, 7);
    auto pair = two_round_derangement(base, 1);
    auto r = localize_two_round(-3 * pair.first.entries[4], -3 * pair.second.entries[4],
                                pair, 7);
    REQUIRE(r.ok());
    CHECK(r.row == 4);
    CHECK(r.error == -3);
    for (std::size_t star = 0; star < 7; ++star) {
        for (i64 e = -7; e <= 7; ++e) {
            if (e == 0) continue;
            auto rr = localize_two_round(e * pair.first.entries[star],
                                         e * pair.second.entries[star], pair, 7);
            REQUIRE(rr.ok());
            CHECK(rr.row == star);
            CHECK(rr.error == e);
        }
    }
}

TEST_CASE("column_syndromes flags exactly the deviating columns") {
    RunOutput obs;
    obs.outputs = {10, 21, 30};
    auto s = column_syndromes(obs, {10, 20, 31});
    CHECK(s.deltas == std::vector<i64>{0, 1, -1});
    CHECK(s.faulty_columns == std::vector<std::size_t>{1, 2});
    CHECK_THROWS_AS(column_syndromes(obs, {10, 20}), std::invalid_argument);
}

TEST_CASE("expected_outputs agrees with a fault-free run") {
    auto cfg = ArrayConfig::make(4, 3, 8);
    auto w = random_weights(cfg, 5);
    auto x = sketch_from_entries({127, 125, 121, 113}, 127, PoolKind::prime_powers);
    CHECK(expected_outputs(w, x) == run_mv(cfg, w, std::nullopt, x).outputs);
    CHECK_THROWS_AS(expected_outputs(w, sketch_from_entries({1, 2}, 127)),
                    std::invalid_argument);
}

TEST_CASE("decode_pass decodes each faulty column independently") {
    auto cfg = ArrayConfig::make(4, 3, 4);
    WeightMatrix w(4, 3, 1);
    auto x = sketch_from_entries({7, 5, 3, 2}, 7, PoolKind::largest_primes);

    auto clean = run_mv(cfg, w, std::nullopt, x);
    CHECK(decode_pass(w, x, clean).empty());

    auto faulty = run_mv(cfg, w, FaultSpec{1, 2, AdditiveBounded{-4}}, x);
    auto cols = decode_pass(w, x, faulty);  // filter defaults to M = 7
    REQUIRE(cols.size() == 1);
    CHECK(cols[0].column == 2);
    REQUIRE(cols[0].set.candidates.size() == 1);
    CHECK(cols[0].set.candidates[0] == Candidate{1, -4});

    auto unfiltered = decode_pass(w, x, faulty, std::nullopt);
    CHECK(unfiltered[0].set.candidates.size() == 2);  // the row-3 alias returns
}

}  // TEST_SUITE
