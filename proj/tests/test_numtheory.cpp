#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coploc/numtheory.hpp"

using namespace coploc;

namespace {

// Independent reference: count reduced fractions p/q with 1 <= p, q <= m.
i64 farey_brute(i64 m) {
    std::set<std::pair<i64, i64>> reduced;
    for (i64 p = 1; p <= m; ++p)
        for (i64 q = 1; q <= m; ++q) reduced.insert({p / std::gcd(p, q), q / std::gcd(p, q)});
    return static_cast<i64>(reduced.size());
}

bool pairwise_coprime(const std::vector<i64>& xs) {
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            if (std::gcd(xs[a], xs[b]) != 1) return false;
    return true;
}

}  // namespace

TEST_SUITE("numtheory") {

TEST_CASE("primes_up_to basic lists") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(0).empty());
    CHECK(primes_up_to(2) == std::vector<i64>{2});
    CHECK(primes_up_to(10) == std::vector<i64>{2, 3, 5, 7});
    CHECK(primes_up_to(127).size() == 31);
    CHECK(primes_up_to(127).back() == 127);
    CHECK_THROWS_AS(primes_up_to(-1), std::invalid_argument);
}

TEST_CASE("prime counts at the 16-bit operand bound") {
    auto primes = primes_up_to(32767);
    CHECK(primes.size() == 3512);
    i64 above_half = 0;
    for (i64 p : primes)
        if (p > 16383) ++above_half;
    CHECK(above_half == 1612);
}

TEST_CASE("prime_power_pool replaces small primes by their largest power") {
    auto pool = prime_power_pool(127);
    CHECK(pool.kind == PoolKind::prime_powers);
    CHECK(pool.magnitude_bound == 127);
    CHECK(pool.entries.size() == 31);
    // Descending, pairwise coprime, all within bound.
    CHECK(std::is_sorted(pool.entries.rbegin(), pool.entries.rend()));
    CHECK(pairwise_coprime(pool.entries));
    for (i64 x : pool.entries) {
        CHECK(x >= 2);
        CHECK(x <= 127);
    }
    CHECK(pool.entries.front() == 127);
    CHECK(pool.entries[1] == 125);  // 5^3
    CHECK(pool.entries[2] == 121);  // 11^2
    CHECK(pool.entries.back() == 13);
    std::multiset<i64> entry_set(pool.entries.begin(), pool.entries.end());
    CHECK(entry_set.count(64) == 1);  // 2^6
    CHECK(entry_set.count(81) == 1);  // 3^4
    CHECK(entry_set.count(49) == 1);  // 7^2
    CHECK(entry_set.count(2) == 0);
    CHECK(entry_set.count(3) == 0);
}

TEST_CASE("prime_power_pool at the 4-bit bound") {
    auto pool = prime_power_pool(7);
    CHECK(pool.entries == std::vector<i64>{7, 5, 4, 3});
}

TEST_CASE("make_pool kinds") {
    auto lp = make_pool(PoolKind::largest_primes, 7);
    CHECK(lp.entries == std::vector<i64>{7, 5, 3, 2});
    auto op = make_pool(PoolKind::odd_primes, 127);
    CHECK(op.entries.size() == 30);
    for (i64 x : op.entries) CHECK(x % 2 == 1);
    CHECK(op.entries.front() == 127);
    CHECK(op.entries.back() == 3);
    auto pp = make_pool(PoolKind::prime_powers, 127);
    CHECK(pp.entries == prime_power_pool(127).entries);
    CHECK_THROWS_AS(make_pool(PoolKind::largest_primes, 1), std::invalid_argument);
    CHECK_THROWS_AS(prime_power_pool(1), std::invalid_argument);
}

TEST_CASE("every pool is descending, in range, pairwise coprime") {
    for (auto kind : {PoolKind::largest_primes, PoolKind::odd_primes, PoolKind::prime_powers}) {
        for (i64 m : {3, 7, 15, 31, 127, 1023}) {
            auto pool = make_pool(kind, m);
            CHECK(std::is_sorted(pool.entries.rbegin(), pool.entries.rend()));
            CHECK(pairwise_coprime(pool.entries));
            for (i64 x : pool.entries) {
                CHECK(x >= 2);
                CHECK(x <= m);
            }
        }
    }
}

TEST_CASE("pool kind names round-trip") {
    for (auto kind : {PoolKind::largest_primes, PoolKind::odd_primes, PoolKind::prime_powers})
        CHECK(pool_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(pool_kind_from_string("maximal_primes"), std::invalid_argument);
}

TEST_CASE("gcd conventions") {
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(0, 5) == 5);
    CHECK(gcd(-4, 6) == 2);
    CHECK(gcd(12, 18) == 6);
    CHECK(gcd(127, 125) == 1);
}

TEST_CASE("euler_phi values") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(127) == 126);
    CHECK(euler_phi(128) == 64);
    CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);
    // Independent count of coprime residues.
    for (i64 n = 1; n <= 60; ++n) {
        i64 count = 0;
        for (i64 k = 1; k <= n; ++k)
            if (std::gcd(k, n) == 1) ++count;
        CHECK(euler_phi(n) == count);
    }
}

TEST_CASE("farey_count against brute force and the totient identity") {
    CHECK(farey_count(1) == 1);
    CHECK(farey_count(2) == 3);
    CHECK(farey_count(5) == 19);
    CHECK(farey_count(30) == 555);
    CHECK(farey_count(127) == 9915);
    for (i64 m = 1; m <= 30; ++m) CHECK(farey_count(m) == farey_brute(m));
    // 2 * sum phi - 1 identity spelled out via euler_phi.
    i64 phi_sum = 0;
    for (i64 q = 1; q <= 127; ++q) phi_sum += euler_phi(q);
    CHECK(farey_count(127) == 2 * phi_sum - 1);
    CHECK_THROWS_AS(farey_count(0), std::invalid_argument);
    CHECK_THROWS_AS(farey_count(10'000'001), std::invalid_argument);
}

}  // TEST_SUITE
