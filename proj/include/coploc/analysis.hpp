#pragma once

// Exact-rational analytical evaluators: the union bound on the
// one-round failure probability, the inclusion-exclusion exact value,
// ambiguous-multiple counts, and Wilson score intervals for empirical
// rates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "coploc/numtheory.hpp"
#include "coploc/rational.hpp"

namespace coploc {

// (L-1)/(L*M) * sum_k floor(M/x_k). Requires distinct entries in [1, M]
// (repeated entries mean the coprime pool was exhausted; the bound's
// derivation does not apply there).
Rational pfail_union_bound(const std::vector<i64>& entries, i64 M);

struct ExactOptions {
    // Upper bound on inclusion-exclusion subsets visited across the whole
    // evaluation; exceeding it throws instead of silently truncating.
    u64 max_visited_subsets = 10'000'000;
};

// Exact probability that the divisibility test leaves more than one
// candidate, averaged uniformly over the faulty row: for each row i*,
// |union over k != i* of {e <= M : x_k | e}| via inclusion-exclusion with
// subset-product terms floor(M / prod). Entries must be pairwise coprime
// and distinct. Subtrees whose entry product exceeds M are pruned
// exactly (their terms are all zero).
Rational pfail_exact(const std::vector<i64>& entries, i64 M, ExactOptions opts = {});

// Same union count for one fixed faulty row, as a probability over e.
Rational pfail_exact_for_row(const std::vector<i64>& entries, std::size_t row, i64 M,
                             ExactOptions opts = {});

struct AmbiguousMultiples {
    std::vector<i64> per_entry;  // floor(M / x_k), aligned with input order
    i64 total;                   // the sum driving the union bound
};

AmbiguousMultiples ambiguous_multiples(const std::vector<i64>& entries, i64 M);

struct Interval {
    double low;
    double high;
};

// Wilson score interval for `successes` out of `trials` at the given
// two-sided confidence (e.g. 0.95).
Interval wilson_interval(u64 successes, u64 trials, double confidence);

struct EmpiricalRate {
    double rate;
    u64 trials;
    double ci_low;
    double ci_high;
};

// One analytical/empirical row of a failure-probability table. Degraded
// dims (rows beyond the pool) carry the structural prediction
// repeated_row_fraction = (#repeated-entry rows)/L instead of bound/exact.
struct PfailReport {
    std::size_t dim = 0;  // L
    PoolKind pool_kind = PoolKind::prime_powers;
    std::optional<Rational> bound;
    std::optional<Rational> exact;
    std::optional<EmpiricalRate> empirical;
    bool degraded = false;
    std::optional<Rational> repeated_row_fraction;
};

}  // namespace coploc
