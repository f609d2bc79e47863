#pragma once

// Exact integer number theory behind pool construction and the
// failure-probability formulas: prime sieve, prime-power pools,
// Euler phi, and Farey-set cardinality.

#include <cstdint>
#include <string>
#include <vector>

namespace coploc {

using i64 = std::int64_t;
using u64 = std::uint64_t;

enum class PoolKind { largest_primes, odd_primes, prime_powers };

std::string to_string(PoolKind kind);
PoolKind pool_kind_from_string(const std::string& name);

// Pairwise coprime test entries <= magnitude_bound, sorted descending.
struct CoprimePool {
    PoolKind kind;
    i64 magnitude_bound;
    std::vector<i64> entries;
};

// All primes <= m, ascending. m < 2 yields an empty list.
std::vector<i64> primes_up_to(i64 m);

// For each prime p <= m, the largest power p^k <= m. Same size as the
// prime pool; pairwise coprime since every entry has a distinct base.
CoprimePool prime_power_pool(i64 m);

// Pool of the requested kind: all primes <= m, the odd primes <= m, or
// the prime-power replacements. Entries descending.
CoprimePool make_pool(PoolKind kind, i64 m);

// gcd of |a| and |b|; gcd(0, 0) = 0.
i64 gcd(i64 a, i64 b);

// Count of k in [1, n] coprime to n.
i64 euler_phi(i64 n);

// Cardinality of the set of reduced fractions p/q with 1 <= p, q <= m,
// equal to 2 * sum_{q<=m} phi(q) - 1.
i64 farey_count(i64 m);

}  // namespace coploc
