#include "copoly/rational.hpp"

#include <cmath>
#include <ostream>

#include "copoly/error.hpp"

namespace copoly {

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string buf(s);
  size_t start = (!buf.empty() && (buf[0] == '-' || buf[0] == '+')) ? 1 : 0;
  if (buf.size() == start) throw ParseError("bad rational: '" + std::string(whole) + "'");
  for (size_t i = start; i < buf.size(); ++i)
    if (buf[i] < '0' || buf[i] > '9') throw ParseError("bad rational: '" + std::string(whole) + "'");
  if (buf[0] == '+') buf.erase(0, 1);
  return mpz_class(buf, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  return rat_normalize(parse_integer(text.substr(0, slash), text),
                       parse_integer(text.substr(slash + 1), text));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ZeroDenominator("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational rat_normalize(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ZeroDenominator("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot rationalize a non-finite value");
  // Convergents of the continued fraction, then the best semiconvergent.
  mpq_class exact(x);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  mpq_class rest = exact;
  const mpz_class bound = max_den;
  while (true) {
    mpz_class a = rest.get_num() / rest.get_den();
    if (rest < 0 && a * rest.get_den() != rest.get_num()) a -= 1;
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > bound) {
      mpz_class t = (bound - k0) / k1;
      mpq_class semi(t * h1 + h0, t * k1 + k0), conv(h1, k1);
      semi.canonicalize();
      conv.canonicalize();
      return abs(semi - exact) < abs(conv - exact) ? Rational(semi) : Rational(conv);
    }
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    mpq_class frac = rest - a;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return Rational(mpq_class(h1, k1));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace copoly
