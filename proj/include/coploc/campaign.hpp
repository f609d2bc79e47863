#pragma once

// Seeded Monte Carlo fault-injection campaigns: sweep array dimensions,
// inject one uniform random weight-register fault per trial, decode, and
// compare empirical incompleteness rates against the analytical values.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coploc/analysis.hpp"
#include "coploc/localize.hpp"
#include "coploc/rng.hpp"
#include "coploc/sysarray.hpp"

namespace coploc {

enum class ErrorModel { bounded_uniform, single_bit };
enum class SignConvention { positive_only, symmetric };
enum class Scheme { one_round, two_round_derangement, two_round_consecutive };

std::string to_string(ErrorModel m);
std::string to_string(SignConvention s);
std::string to_string(Scheme s);
ErrorModel error_model_from_string(const std::string& name);
SignConvention sign_convention_from_string(const std::string& name);
Scheme scheme_from_string(const std::string& name);

struct WeightSource {
    enum class Kind { deterministic_random, file };
    Kind kind = Kind::deterministic_random;
    u64 seed = 1;      // deterministic_random
    std::string path;  // file
};

struct CampaignConfig {
    std::vector<std::size_t> dims;  // L values
    int bit_width = 8;
    PoolKind pool_kind = PoolKind::prime_powers;
    u64 trials = 500;
    u64 rng_seed = 1;
    ErrorModel error_model = ErrorModel::bounded_uniform;
    SignConvention sign_convention = SignConvention::positive_only;
    WeightSource weight_source;
    Scheme scheme = Scheme::one_round;
    std::optional<std::size_t> cols;  // K; defaults to L (square array)
};

enum class TrialOutcome { complete_correct, incomplete, model_violation };

// One-round: the candidate set must be exactly {true_row}. True row
// present with company is incomplete; true row absent is a model
// violation (soundness breach sentinel, expected never).
TrialOutcome success_criterion(const CandidateSet& set, std::size_t true_row);

// Two-round: exact (row, e) recovery. A decode error counts as
// incomplete; a wrong recovered pair is a model violation.
TrialOutcome success_criterion(const TwoRoundResult& result, std::size_t true_row,
                               i64 true_error);

// Uniform row and column; bounded_uniform draws |e| uniform on {1..M}
// and, under the symmetric convention, a separate sign bit (so both
// conventions see the same magnitude sequence); single_bit draws a
// uniform bit position and stuck value, relying on the campaign's
// activation weight pattern.
FaultSpec sample_fault(Rng& rng, std::size_t rows, std::size_t cols, i64 M,
                       ErrorModel model, SignConvention sign, int bit_width);

struct DimResult {
    std::size_t dim = 0;  // L
    u64 trials = 0;
    u64 incomplete_count = 0;
    u64 model_violation_count = 0;
    u64 complete_correct_count = 0;
    double empirical_rate = 0.0;  // incomplete / trials
    double ci_low = 0.0;          // Wilson 95% band
    double ci_high = 0.0;
    std::optional<Rational> analytical_bound;  // one-round, non-degraded only
    std::optional<Rational> analytical_exact;
    bool degraded = false;
    std::optional<Rational> repeated_row_fraction;
    // Degradation detail: trials whose faulty row shares its entry.
    u64 repeated_row_trials = 0;
    u64 repeated_row_incomplete = 0;
};

struct CampaignResult {
    CampaignConfig config;
    std::vector<DimResult> dims;
};

// Deterministic in (config): trial t at dimension L draws all of its
// randomness from a stream keyed by (rng_seed, L, t).
CampaignResult run_campaign(const CampaignConfig& config);

}  // namespace coploc
