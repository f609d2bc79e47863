#pragma once

// Test (sketch) vector construction: one-round coprime vectors drawn
// from a pool, and two-round pairs with pairwise distinct per-row ratios.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coploc/numtheory.hpp"

namespace coploc {

// Per-row test inputs streamed through the array during a check pass.
// degraded means the row count exceeded the pool and entries repeat.
struct SketchVector {
    std::vector<i64> entries;  // entries[k] feeds row k
    std::optional<PoolKind> pool_kind;
    i64 magnitude_bound = 0;  // M
    bool degraded = false;
};

// Reduced fraction with positive numerator and denominator.
struct Ratio {
    i64 num;
    i64 den;
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Two test vectors whose per-row ratios second[k]/first[k] are pairwise
// distinct, which makes the ratio of the two observed deviations identify
// the faulty row uniquely.
struct SketchPair {
    SketchVector first;
    SketchVector second;
    std::vector<Ratio> ratios;  // second[k]/first[k], lowest terms
};

// Row k (0-based) gets the (k+1)-th largest pool entry. When rows exceed
// the pool, entries continue round-robin from the largest and the vector
// is flagged degraded.
SketchVector one_round_vector(std::size_t rows, const CoprimePool& pool);

// Second round is a cyclic rotation of the base by `shift` rows.
// Requires a pairwise-coprime base; verifies the rotation has no fixed
// points and that all ratios are distinct.
SketchPair two_round_derangement(const SketchVector& base, std::size_t shift = 1);

// First round (1, 2, ..., L), second round (L, 1, ..., L-1). Adjacent
// integers are coprime, so every per-row ratio is already reduced.
// Requires 2 <= L <= magnitude_bound.
SketchPair two_round_consecutive(std::size_t rows, i64 magnitude_bound);

// Validated construction from raw entries (range check against M,
// degraded = repeated entries present).
SketchVector sketch_from_entries(std::vector<i64> entries, i64 magnitude_bound,
                                 std::optional<PoolKind> kind = std::nullopt);

// Pair construction from raw per-round entries (e.g. vectors loaded from
// a file); enforces the same no-fixed-point and distinct-ratio rules the
// named instantiations satisfy.
SketchPair pair_from_entries(std::vector<i64> first, std::vector<i64> second,
                             i64 magnitude_bound);

// Single CSV line "7,5,3,2" in row order.
std::string to_csv(const SketchVector& v);
std::vector<i64> parse_csv_ints(const std::string& line);

}  // namespace coploc
