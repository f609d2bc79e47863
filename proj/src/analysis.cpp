#include "coploc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace coploc {

namespace {

void require_entries_in_range(const std::vector<i64>& entries, i64 M) {
    if (entries.empty()) throw std::invalid_argument("entry list is empty");
    if (M < 1) throw std::invalid_argument("magnitude bound must be positive");
    for (i64 x : entries)
        if (x < 1 || x > M)
            throw std::invalid_argument("entry " + std::to_string(x) + " outside [1, M]");
}

void require_distinct(const std::vector<i64>& entries) {
    std::unordered_set<i64> seen;
    for (i64 x : entries)
        if (!seen.insert(x).second)
            throw std::invalid_argument(
                "repeated entry " + std::to_string(x) +
                "; the analytical model covers non-degraded vectors only");
}

void require_pairwise_coprime(const std::vector<i64>& entries) {
    for (std::size_t a = 0; a < entries.size(); ++a)
        for (std::size_t b = a + 1; b < entries.size(); ++b)
            if (std::gcd(entries[a], entries[b]) != 1)
                throw std::invalid_argument("entries " + std::to_string(entries[a]) + " and " +
                                            std::to_string(entries[b]) + " share a factor");
}

// Inclusion-exclusion over subsets of `xs` (ascending) with product <= M.
// Terms with product > M are zero, and because entries only grow along a
// DFS branch, the whole subtree is zero once the product check fails.
struct UnionCounter {
    const std::vector<i64>& xs;
    i64 M;
    u64 budget;
    u64 visited = 0;
    i64 count = 0;

    void descend(std::size_t from, i64 prod, int sign) {
        for (std::size_t j = from; j < xs.size(); ++j) {
            if (xs[j] > M / prod) break;  // later entries are no smaller
            const i64 p = prod * xs[j];
            if (++visited > budget)
                throw std::runtime_error(
                    "inclusion-exclusion subset budget exhausted; raise "
                    "ExactOptions::max_visited_subsets for this pool");
            count += sign * (M / p);
            descend(j + 1, p, -sign);
        }
    }
};

i64 union_count_excluding(const std::vector<i64>& sorted, i64 excluded, i64 M, u64 budget,
                          u64& visited) {
    std::vector<i64> rest;
    rest.reserve(sorted.size() - 1);
    bool skipped = false;
    for (i64 x : sorted) {
        if (!skipped && x == excluded) {
            skipped = true;
            continue;
        }
        rest.push_back(x);
    }
    UnionCounter uc{rest, M, budget - visited};
    uc.descend(0, 1, +1);
    visited += uc.visited;
    return uc.count;
}

}  // namespace

Rational pfail_union_bound(const std::vector<i64>& entries, i64 M) {
    require_entries_in_range(entries, M);
    require_distinct(entries);
    const AmbiguousMultiples am = ambiguous_multiples(entries, M);
    const i64 L = static_cast<i64>(entries.size());
    return Rational(L - 1, L) * Rational(am.total, M);
}

Rational pfail_exact(const std::vector<i64>& entries, i64 M, ExactOptions opts) {
    require_entries_in_range(entries, M);
    require_distinct(entries);
    require_pairwise_coprime(entries);
    std::vector<i64> sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    u64 visited = 0;
    Rational sum(0);
    for (i64 x : sorted)
        sum = sum + Rational(union_count_excluding(sorted, x, M, opts.max_visited_subsets, visited), M);
    return sum / Rational(static_cast<i64>(entries.size()));
}

Rational pfail_exact_for_row(const std::vector<i64>& entries, std::size_t row, i64 M,
                             ExactOptions opts) {
    require_entries_in_range(entries, M);
    require_distinct(entries);
    require_pairwise_coprime(entries);
    if (row >= entries.size()) throw std::invalid_argument("row index out of range");
    std::vector<i64> sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    u64 visited = 0;
    return Rational(union_count_excluding(sorted, entries[row], M, opts.max_visited_subsets, visited),
                    M);
}

AmbiguousMultiples ambiguous_multiples(const std::vector<i64>& entries, i64 M) {
    require_entries_in_range(entries, M);
    AmbiguousMultiples am;
    am.per_entry.reserve(entries.size());
    am.total = 0;
    for (i64 x : entries) {
        am.per_entry.push_back(M / x);
        am.total += M / x;
    }
    return am;
}

namespace {

// Acklam's rational approximation to the standard normal quantile,
// tightened with one Halley step through erfc. Keeps the statistics
// path free of any distribution-table dependency.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie strictly inside (0, 1)");
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

}  // namespace

Interval wilson_interval(u64 successes, u64 trials, double confidence) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
    if (successes > trials)
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("wilson_interval: confidence must lie in (0, 1)");
    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace coploc
