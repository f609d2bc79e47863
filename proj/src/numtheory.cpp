#include "coploc/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace coploc {

std::string to_string(PoolKind kind) {
    switch (kind) {
        case PoolKind::largest_primes: return "largest_primes";
        case PoolKind::odd_primes: return "odd_primes";
        case PoolKind::prime_powers: return "prime_powers";
    }
    throw std::logic_error("unknown PoolKind");
}

PoolKind pool_kind_from_string(const std::string& name) {
    if (name == "largest_primes") return PoolKind::largest_primes;
    if (name == "odd_primes") return PoolKind::odd_primes;
    if (name == "prime_powers") return PoolKind::prime_powers;
    throw std::invalid_argument("unknown pool kind: " + name);
}

std::vector<i64> primes_up_to(i64 m) {
    if (m < 0) throw std::invalid_argument("primes_up_to: negative bound");
    if (m > (i64(1) << 31)) throw std::invalid_argument("primes_up_to: bound above 2^31");
    if (m < 2) return {};
    std::vector<bool> composite(static_cast<std::size_t>(m) + 1, false);
    for (i64 i = 2; i * i <= m; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        for (i64 j = i * i; j <= m; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    std::vector<i64> primes;
    for (i64 i = 2; i <= m; ++i)
        if (!composite[static_cast<std::size_t>(i)]) primes.push_back(i);
    return primes;
}

CoprimePool prime_power_pool(i64 m) {
    if (m < 2) throw std::invalid_argument("prime_power_pool: bound must be >= 2");
    std::vector<i64> entries;
    for (i64 p : primes_up_to(m)) {
        i64 v = p;
        while (v <= m / p) v *= p;  // largest p^k <= m, overflow-free
        entries.push_back(v);
    }
    std::sort(entries.begin(), entries.end(), std::greater<>());
    return CoprimePool{PoolKind::prime_powers, m, std::move(entries)};
}

CoprimePool make_pool(PoolKind kind, i64 m) {
    if (kind == PoolKind::prime_powers) return prime_power_pool(m);
    if (m < 2) throw std::invalid_argument("make_pool: bound must be >= 2");
    std::vector<i64> entries = primes_up_to(m);
    if (kind == PoolKind::odd_primes) entries.erase(entries.begin());  // drop 2
    std::reverse(entries.begin(), entries.end());
    return CoprimePool{kind, m, std::move(entries)};
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 euler_phi(i64 n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be >= 1");
    i64 result = n;
    i64 rest = n;
    for (i64 p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        result -= result / p;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

i64 farey_count(i64 m) {
    if (m < 1) throw std::invalid_argument("farey_count: m must be >= 1");
    if (m > 10'000'000)
        throw std::invalid_argument("farey_count: m above the 1e7 sieve guard");
    // Totient sieve: phi[i] starts at i; each prime p subtracts phi/p.
    std::vector<i64> phi(static_cast<std::size_t>(m) + 1);
    std::iota(phi.begin(), phi.end(), i64{0});
    for (i64 i = 2; i <= m; ++i) {
        if (phi[static_cast<std::size_t>(i)] != i) continue;  // i not prime
        for (i64 j = i; j <= m; j += i)
            phi[static_cast<std::size_t>(j)] -= phi[static_cast<std::size_t>(j)] / i;
    }
    i64 sum = 0;
    for (i64 q = 1; q <= m; ++q) sum += phi[static_cast<std::size_t>(q)];
    return 2 * sum - 1;
}

}  // namespace coploc
