#pragma once

// Decoding: per-column syndromes, the one-round divisibility test with
// optional implied-error magnitude filter, and two-round ratio recovery.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coploc/sysarray.hpp"
#include "coploc/vectors.hpp"

namespace coploc {

struct Syndrome {
    std::vector<i64> deltas;                  // observed - expected, per column
    std::vector<std::size_t> faulty_columns;  // indices with delta != 0
};

Syndrome column_syndromes(const RunOutput& observed, const std::vector<i64>& expected);

struct Candidate {
    std::size_t row;
    i64 implied_error;  // delta / x[row]
    friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    bool complete = false;  // exactly one candidate
    bool degraded = false;  // sketch had repeated entries
};

// Rows k with x[k] | delta, keeping those whose implied error
// delta / x[k] has magnitude <= max_abs_error. Pass the error-model
// envelope (M for bounded errors, 2^(b-1) for single-bit faults); pass
// nullopt to apply the divisibility test alone, which is the statistic
// the analytical failure probabilities describe.
CandidateSet localize_one_round(i64 delta, const SketchVector& x,
                                std::optional<i64> max_abs_error);

enum class TwoRoundStatus {
    ok,
    sign_mismatch,   // deviations must share the error's sign
    zero_mismatch,   // exactly one deviation zero cannot happen for e != 0
    no_ratio_match,  // reduced deviation ratio matches no row
    check_failed,    // divisibility/consistency/magnitude verification failed
};

std::string to_string(TwoRoundStatus s);

struct TwoRoundResult {
    TwoRoundStatus status = TwoRoundStatus::check_failed;
    std::size_t row = 0;  // valid when status == ok
    i64 error = 0;
    bool ok() const { return status == TwoRoundStatus::ok; }
};

// Reduce |d2|/|d1|, match the unique row with that ratio, recover
// e = d1 / first[row], then verify e * second[row] == d2 and |e| <= max_abs_error.
TwoRoundResult localize_two_round(i64 d1, i64 d2, const SketchPair& pair, i64 max_abs_error);

// Fault-free column outputs (the golden checksum for a test pass).
std::vector<i64> expected_outputs(const WeightMatrix& weights, const SketchVector& x);

struct ColumnDecode {
    std::size_t column;
    CandidateSet set;
};

// Full one-round pipeline: expected outputs, syndromes, then a candidate
// set per faulty column (columns decode independently). The two-argument
// filter defaults to the sketch's magnitude bound M.
std::vector<ColumnDecode> decode_pass(const WeightMatrix& weights, const SketchVector& x,
                                      const RunOutput& observed);
std::vector<ColumnDecode> decode_pass(const WeightMatrix& weights, const SketchVector& x,
                                      const RunOutput& observed,
                                      std::optional<i64> max_abs_error);

}  // namespace coploc
