#pragma once

// Exact rational numbers for the analytical failure-probability work.
// Thin wrapper over GMP keeping the canonical-form contract visible:
// always lowest terms, denominator positive.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace coploc {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(std::int64_t num, std::int64_t den = 1);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    static Rational from_string(const std::string& s);  // "num/den" or "num"

    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    // "num/den" in lowest terms; integers render with denominator 1 ("3/1").
    std::string str() const;
    double to_double() const { return q_.get_d(); }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

}  // namespace coploc
