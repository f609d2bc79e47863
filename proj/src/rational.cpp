#include "coploc/rational.hpp"

#include <stdexcept>

namespace coploc {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(mpz_class(num), mpz_class(den));
    q_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal " + s);
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.q_ == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(mpq_class(q_ / o.q_));
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace coploc
