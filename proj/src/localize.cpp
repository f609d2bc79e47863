#include "coploc/localize.hpp"

#include <numeric>
#include <stdexcept>

namespace coploc {

std::string to_string(TwoRoundStatus s) {
    switch (s) {
        case TwoRoundStatus::ok: return "ok";
        case TwoRoundStatus::sign_mismatch: return "sign_mismatch";
        case TwoRoundStatus::zero_mismatch: return "zero_mismatch";
        case TwoRoundStatus::no_ratio_match: return "no_ratio_match";
        case TwoRoundStatus::check_failed: return "check_failed";
    }
    throw std::logic_error("unreachable");
}

Syndrome column_syndromes(const RunOutput& observed, const std::vector<i64>& expected) {
    if (observed.outputs.size() != expected.size())
        throw std::invalid_argument("column_syndromes: output width mismatch");
    Syndrome s;
    s.deltas.resize(expected.size());
    for (std::size_t j = 0; j < expected.size(); ++j) {
        s.deltas[j] = observed.outputs[j] - expected[j];
        if (s.deltas[j] != 0) s.faulty_columns.push_back(j);
    }
    return s;
}

CandidateSet localize_one_round(i64 delta, const SketchVector& x,
                                std::optional<i64> max_abs_error) {
    if (delta == 0) throw std::invalid_argument("localize_one_round: delta must be nonzero");
    CandidateSet set;
    set.degraded = x.degraded;
    for (std::size_t k = 0; k < x.entries.size(); ++k) {
        if (delta % x.entries[k] != 0) continue;
        const i64 implied = delta / x.entries[k];
        if (max_abs_error && (implied > *max_abs_error || implied < -*max_abs_error)) continue;
        set.candidates.push_back({k, implied});
    }
    set.complete = set.candidates.size() == 1;
    return set;
}

TwoRoundResult localize_two_round(i64 d1, i64 d2, const SketchPair& pair, i64 max_abs_error) {
    TwoRoundResult r;
    if ((d1 == 0) != (d2 == 0)) {
        r.status = TwoRoundStatus::zero_mismatch;
        return r;
    }
    if (d1 == 0)
        throw std::invalid_argument("localize_two_round: both deviations zero, nothing to decode");
    if ((d1 > 0) != (d2 > 0)) {
        r.status = TwoRoundStatus::sign_mismatch;
        return r;
    }
    // Entries are positive, so both deviations carry the error's sign and
    // d2/d1 equals second[row]/first[row] exactly.
    const i64 g = std::gcd(d1 < 0 ? -d1 : d1, d2 < 0 ? -d2 : d2);
    const Ratio observed{(d2 < 0 ? -d2 : d2) / g, (d1 < 0 ? -d1 : d1) / g};
    std::size_t row = pair.ratios.size();
    for (std::size_t k = 0; k < pair.ratios.size(); ++k) {
        if (pair.ratios[k] == observed) {
            row = k;
            break;
        }
    }
    if (row == pair.ratios.size()) {
        r.status = TwoRoundStatus::no_ratio_match;
        return r;
    }
    if (d1 % pair.first.entries[row] != 0) {
        r.status = TwoRoundStatus::check_failed;
        return r;
    }
    const i64 e = d1 / pair.first.entries[row];
    const i64 mag = e < 0 ? -e : e;
    if (e == 0 || mag > max_abs_error || e * pair.second.entries[row] != d2) {
        r.status = TwoRoundStatus::check_failed;
        return r;
    }
    r.status = TwoRoundStatus::ok;
    r.row = row;
    r.error = e;
    return r;
}

std::vector<i64> expected_outputs(const WeightMatrix& weights, const SketchVector& x) {
    if (weights.rows() != x.entries.size())
        throw std::invalid_argument("expected_outputs: vector length mismatch");
    std::vector<i64> y(weights.cols(), 0);
    for (std::size_t j = 0; j < weights.cols(); ++j) {
        i64 acc = 0;
        for (std::size_t i = 0; i < weights.rows(); ++i) acc += weights.at(i, j) * x.entries[i];
        y[j] = acc;
    }
    return y;
}

std::vector<ColumnDecode> decode_pass(const WeightMatrix& weights, const SketchVector& x,
                                      const RunOutput& observed) {
    return decode_pass(weights, x, observed, x.magnitude_bound);
}

std::vector<ColumnDecode> decode_pass(const WeightMatrix& weights, const SketchVector& x,
                                      const RunOutput& observed,
                                      std::optional<i64> max_abs_error) {
    const Syndrome s = column_syndromes(observed, expected_outputs(weights, x));
    std::vector<ColumnDecode> result;
    result.reserve(s.faulty_columns.size());
    for (std::size_t j : s.faulty_columns)
        result.push_back({j, localize_one_round(s.deltas[j], x, max_abs_error)});
    return result;
}

}  // namespace coploc
