#include "coploc/vectors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace coploc {

namespace {

void require_pairwise_coprime(const std::vector<i64>& entries, const char* who) {
    for (std::size_t a = 0; a < entries.size(); ++a)
        for (std::size_t b = a + 1; b < entries.size(); ++b)
            if (std::gcd(entries[a], entries[b]) != 1)
                throw std::invalid_argument(std::string(who) +
                                            ": entries are not pairwise coprime");
}

bool has_repeats(const std::vector<i64>& entries) {
    std::unordered_set<i64> seen;
    for (i64 v : entries)
        if (!seen.insert(v).second) return true;
    return false;
}

Ratio reduce(i64 num, i64 den) {
    i64 g = std::gcd(num, den);
    return Ratio{num / g, den / g};
}

// Ratios are distinct iff no two compare equal; sorting by cross
// multiplication keeps the check O(L log L) for the large consecutive
// instantiation while remaining exact (products stay below 2^62).
void require_distinct_ratios(std::vector<Ratio> ratios, const char* who) {
    std::sort(ratios.begin(), ratios.end(), [](const Ratio& a, const Ratio& b) {
        return a.num * b.den < b.num * a.den;
    });
    for (std::size_t k = 1; k < ratios.size(); ++k)
        if (ratios[k] == ratios[k - 1])
            throw std::invalid_argument(std::string(who) + ": per-row ratios collide");
}

SketchPair make_pair_checked(SketchVector first, SketchVector second, const char* who) {
    const std::size_t rows = first.entries.size();
    if (second.entries.size() != rows)
        throw std::invalid_argument(std::string(who) + ": round lengths differ");
    std::vector<Ratio> ratios;
    ratios.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        if (second.entries[k] == first.entries[k])
            throw std::invalid_argument(std::string(who) +
                                        ": fixed point at row " + std::to_string(k));
        ratios.push_back(reduce(second.entries[k], first.entries[k]));
    }
    require_distinct_ratios(ratios, who);
    return SketchPair{std::move(first), std::move(second), std::move(ratios)};
}

}  // namespace

SketchVector one_round_vector(std::size_t rows, const CoprimePool& pool) {
    if (rows == 0) throw std::invalid_argument("one_round_vector: zero rows");
    if (pool.entries.empty()) throw std::invalid_argument("one_round_vector: empty pool");
    SketchVector v;
    v.pool_kind = pool.kind;
    v.magnitude_bound = pool.magnitude_bound;
    v.degraded = rows > pool.entries.size();
    v.entries.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k)
        v.entries.push_back(pool.entries[k % pool.entries.size()]);
    return v;
}

SketchPair two_round_derangement(const SketchVector& base, std::size_t shift) {
    const std::size_t rows = base.entries.size();
    if (rows < 2)
        throw std::invalid_argument("two_round_derangement: need at least two rows");
    if (shift < 1 || shift >= rows)
        throw std::invalid_argument("two_round_derangement: shift must be in [1, L-1]");
    // Pairwise coprimality admits repeated 1s (the only value that can
    // repeat) and nothing else; beyond pi(M) rows the base needs them.
    require_pairwise_coprime(base.entries, "two_round_derangement");
    SketchVector second = base;
    for (std::size_t k = 0; k < rows; ++k)
        second.entries[k] = base.entries[(k + shift) % rows];
    return make_pair_checked(base, std::move(second), "two_round_derangement");
}

SketchPair two_round_consecutive(std::size_t rows, i64 magnitude_bound) {
    if (rows < 2) throw std::invalid_argument("two_round_consecutive: need at least two rows");
    if (static_cast<i64>(rows) > magnitude_bound)
        throw std::invalid_argument(
            "two_round_consecutive: rows exceed the magnitude bound");
    SketchVector first;
    first.magnitude_bound = magnitude_bound;
    first.entries.resize(rows);
    std::iota(first.entries.begin(), first.entries.end(), i64{1});
    SketchVector second = first;
    second.entries[0] = static_cast<i64>(rows);
    for (std::size_t k = 1; k < rows; ++k) second.entries[k] = static_cast<i64>(k);
    return make_pair_checked(std::move(first), std::move(second), "two_round_consecutive");
}

SketchVector sketch_from_entries(std::vector<i64> entries, i64 magnitude_bound,
                                 std::optional<PoolKind> kind) {
    if (entries.empty()) throw std::invalid_argument("sketch_from_entries: no entries");
    for (i64 v : entries)
        if (v < 1 || v > magnitude_bound)
            throw std::invalid_argument("sketch_from_entries: entry " + std::to_string(v) +
                                        " outside [1, " + std::to_string(magnitude_bound) +
                                        "]");
    SketchVector v;
    v.degraded = has_repeats(entries);
    v.entries = std::move(entries);
    v.pool_kind = kind;
    v.magnitude_bound = magnitude_bound;
    return v;
}

SketchPair pair_from_entries(std::vector<i64> first, std::vector<i64> second,
                             i64 magnitude_bound) {
    return make_pair_checked(sketch_from_entries(std::move(first), magnitude_bound),
                             sketch_from_entries(std::move(second), magnitude_bound),
                             "pair_from_entries");
}

std::string to_csv(const SketchVector& v) {
    std::ostringstream out;
    for (std::size_t k = 0; k < v.entries.size(); ++k) {
        if (k) out << ',';
        out << v.entries[k];
    }
    return out.str();
}

std::vector<i64> parse_csv_ints(const std::string& line) {
    std::vector<i64> values;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        i64 v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{})
            throw std::invalid_argument("parse_csv_ints: bad integer near '" +
                                        std::string(p, std::min<std::size_t>(8, end - p)) +
                                        "'");
        values.push_back(v);
        p = next;
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p < end) {
            if (*p != ',')
                throw std::invalid_argument("parse_csv_ints: expected ',' near '" +
                                            std::string(p, 1) + "'");
            ++p;
        }
    }
    if (values.empty()) throw std::invalid_argument("parse_csv_ints: empty line");
    return values;
}

}  // namespace coploc
