#include "coploc/campaign.hpp"

#include <stdexcept>
#include <unordered_map>

namespace coploc {

std::string to_string(ErrorModel m) {
    switch (m) {
        case ErrorModel::bounded_uniform: return "bounded_uniform";
        case ErrorModel::single_bit: return "single_bit";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(SignConvention s) {
    switch (s) {
        case SignConvention::positive_only: return "positive_only";
        case SignConvention::symmetric: return "symmetric";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::one_round: return "one_round";
        case Scheme::two_round_derangement: return "two_round_derangement";
        case Scheme::two_round_consecutive: return "two_round_consecutive";
    }
    throw std::logic_error("unreachable");
}

ErrorModel error_model_from_string(const std::string& name) {
    if (name == "bounded_uniform") return ErrorModel::bounded_uniform;
    if (name == "single_bit") return ErrorModel::single_bit;
    throw std::invalid_argument("unknown error model: " + name);
}

SignConvention sign_convention_from_string(const std::string& name) {
    if (name == "positive_only") return SignConvention::positive_only;
    if (name == "symmetric") return SignConvention::symmetric;
    throw std::invalid_argument("unknown sign convention: " + name);
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "one_round") return Scheme::one_round;
    if (name == "two_round_derangement") return Scheme::two_round_derangement;
    if (name == "two_round_consecutive") return Scheme::two_round_consecutive;
    throw std::invalid_argument("unknown scheme: " + name);
}

TrialOutcome success_criterion(const CandidateSet& set, std::size_t true_row) {
    bool present = false;
    for (const Candidate& c : set.candidates)
        if (c.row == true_row) present = true;
    if (!present) return TrialOutcome::model_violation;
    return set.candidates.size() == 1 ? TrialOutcome::complete_correct
                                      : TrialOutcome::incomplete;
}

TrialOutcome success_criterion(const TwoRoundResult& result, std::size_t true_row,
                               i64 true_error) {
    if (!result.ok()) return TrialOutcome::incomplete;
    return (result.row == true_row && result.error == true_error)
               ? TrialOutcome::complete_correct
               : TrialOutcome::model_violation;
}

FaultSpec sample_fault(Rng& rng, std::size_t rows, std::size_t cols, i64 M, ErrorModel model,
                       SignConvention sign, int bit_width) {
    FaultSpec spec;
    spec.row = static_cast<std::size_t>(rng.uniform_below(rows));
    spec.col = static_cast<std::size_t>(rng.uniform_below(cols));
    if (model == ErrorModel::bounded_uniform) {
        // Magnitude first, sign after: the positive_only and symmetric
        // conventions then consume identical magnitude sequences.
        i64 e = 1 + static_cast<i64>(rng.uniform_below(static_cast<u64>(M)));
        if (sign == SignConvention::symmetric && rng.uniform_below(2) == 1) e = -e;
        spec.model = AdditiveBounded{e};
    } else {
        const int bit = static_cast<int>(rng.uniform_below(static_cast<u64>(bit_width)));
        const int value = static_cast<int>(rng.uniform_below(2));
        spec.model = StuckBit{bit, value};
    }
    return spec;
}

namespace {

// Weight pattern that activates a stuck bit: stuck-at-1 needs the bit
// clear (all-zero word), stuck-at-0 needs it set (all-one word). The
// resulting error is +-2^bit, with the sign bit contributing +-2^(b-1).
i64 activation_weight(const StuckBit& stuck) { return stuck.value == 1 ? 0 : -1; }

struct DimPlan {
    ArrayConfig array;
    SketchVector one_round;            // one_round scheme
    std::optional<SketchPair> rounds;  // two-round schemes
};

DimPlan plan_for_dim(const CampaignConfig& config, std::size_t L) {
    DimPlan plan;
    const std::size_t K = config.cols.value_or(L);
    plan.array = ArrayConfig::make(L, K, config.bit_width);
    const i64 M = plan.array.magnitude_bound();
    const CoprimePool pool = make_pool(config.pool_kind, M);
    switch (config.scheme) {
        case Scheme::one_round:
            plan.one_round = one_round_vector(L, pool);
            break;
        case Scheme::two_round_derangement: {
            if (L > pool.entries.size())
                throw std::invalid_argument(
                    "two_round_derangement: dimension exceeds the coprime pool");
            std::vector<i64> base(pool.entries.begin(),
                                  pool.entries.begin() + static_cast<std::ptrdiff_t>(L));
            plan.rounds = two_round_derangement(
                sketch_from_entries(std::move(base), M, config.pool_kind), 1);
            break;
        }
        case Scheme::two_round_consecutive:
            plan.rounds = two_round_consecutive(L, M);
            break;
    }
    return plan;
}

WeightMatrix weights_for_dim(const CampaignConfig& config, const ArrayConfig& array) {
    if (config.weight_source.kind == WeightSource::Kind::file)
        return load_weights_csv(config.weight_source.path, array);
    return random_weights(array, derive_seed(config.weight_source.seed, 'W', array.rows,
                                             array.cols));
}

i64 syndrome_at_fault(const ArrayConfig& array, const WeightMatrix& weights,
                      const FaultSpec& fault, const SketchVector& x) {
    const std::vector<i64> expected = expected_outputs(weights, x);
    const RunOutput observed = run_mv(array, weights, fault, x);
    return observed.outputs[fault.col] - expected[fault.col];
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config) {
    if (config.dims.empty()) throw std::invalid_argument("campaign: no dimensions given");
    if (config.trials == 0) throw std::invalid_argument("campaign: trials must be positive");
    CampaignResult result;
    result.config = config;

    for (std::size_t L : config.dims) {
        DimPlan plan = plan_for_dim(config, L);
        const i64 M = plan.array.magnitude_bound();
        const i64 envelope = config.error_model == ErrorModel::single_bit
                                 ? (i64(1) << (config.bit_width - 1))
                                 : M;
        WeightMatrix weights = weights_for_dim(config, plan.array);

        // Multiplicity per entry, for the degraded-trial breakdown.
        std::unordered_map<i64, int> entry_count;
        if (config.scheme == Scheme::one_round)
            for (i64 x : plan.one_round.entries) ++entry_count[x];

        DimResult dim;
        dim.dim = L;
        dim.trials = config.trials;
        dim.degraded = config.scheme == Scheme::one_round && plan.one_round.degraded;

        for (u64 t = 0; t < config.trials; ++t) {
            Rng rng(derive_seed(config.rng_seed, 'T', L, t));
            FaultSpec fault =
                sample_fault(rng, L, plan.array.cols, M, config.error_model,
                             config.sign_convention, config.bit_width);
            const i64 saved = weights.at(fault.row, fault.col);
            if (config.error_model == ErrorModel::single_bit)
                weights.set(fault.row, fault.col,
                            activation_weight(std::get<StuckBit>(fault.model)));

            TrialOutcome outcome;
            bool row_repeated = false;
            if (config.scheme == Scheme::one_round) {
                const i64 delta = syndrome_at_fault(plan.array, weights, fault, plan.one_round);
                // Divisibility-only statistic: this is what the analytical
                // bound and exact value describe.
                outcome = success_criterion(localize_one_round(delta, plan.one_round, std::nullopt),
                                            fault.row);
                row_repeated = entry_count[plan.one_round.entries[fault.row]] > 1;
            } else {
                const SketchPair& pair = *plan.rounds;
                const i64 d1 = syndrome_at_fault(plan.array, weights, fault, pair.first);
                const i64 d2 = syndrome_at_fault(plan.array, weights, fault, pair.second);
                const i64 true_error =
                    effective_weight(weights.at(fault.row, fault.col), fault.model,
                                     config.bit_width)
                        .error;
                outcome = success_criterion(localize_two_round(d1, d2, pair, envelope),
                                            fault.row, true_error);
            }
            weights.set(fault.row, fault.col, saved);

            switch (outcome) {
                case TrialOutcome::complete_correct: ++dim.complete_correct_count; break;
                case TrialOutcome::incomplete: ++dim.incomplete_count; break;
                case TrialOutcome::model_violation: ++dim.model_violation_count; break;
            }
            if (row_repeated) {
                ++dim.repeated_row_trials;
                if (outcome == TrialOutcome::incomplete) ++dim.repeated_row_incomplete;
            }
        }

        dim.empirical_rate =
            static_cast<double>(dim.incomplete_count) / static_cast<double>(dim.trials);
        const Interval ci = wilson_interval(dim.incomplete_count, dim.trials, 0.95);
        dim.ci_low = ci.low;
        dim.ci_high = ci.high;

        if (config.scheme == Scheme::one_round) {
            if (!dim.degraded) {
                dim.analytical_bound = pfail_union_bound(plan.one_round.entries, M);
                dim.analytical_exact = pfail_exact(plan.one_round.entries, M);
            } else {
                i64 repeated_rows = 0;
                for (i64 x : plan.one_round.entries)
                    if (entry_count[x] > 1) ++repeated_rows;
                dim.repeated_row_fraction =
                    Rational(repeated_rows, static_cast<i64>(L));
            }
        }
        result.dims.push_back(std::move(dim));
    }
    return result;
}

}  // namespace coploc
