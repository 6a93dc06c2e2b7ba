#include "mvlab/rational.hpp"

#include "mvlab/error.hpp"

#include <cctype>

namespace mvlab {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw Error(ErrorKind::ParseError, "empty integer in '" + std::string(text) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::ParseError, "bad integer '" + std::string(text) + "'");
    }
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

int sign(const Rational& q) { return sgn(q); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational best_rational_approximation(double x, const Integer& max_den) {
  Rational exact(x);  // exact binary value
  if (exact.get_den() <= max_den) return exact;

  // Convergents h/k of the continued fraction of `exact`.
  Integer h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
  Integer num = exact.get_num(), den = exact.get_den();
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (k > max_den) {
      // Largest semiconvergent that still respects the bound.
      Integer m = (max_den - k_prev2) / k_prev;
      Rational semi(m * h_prev + h_prev2, m * k_prev + k_prev2);
      semi.canonicalize();
      Rational conv(h_prev, k_prev);
      conv.canonicalize();
      Rational d_semi = abs(semi - exact), d_conv = abs(conv - exact);
      return d_semi < d_conv ? semi : conv;
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Integer rem = num - a * den;
    num = den;
    den = rem;
  }
  Rational conv(h_prev, k_prev);
  conv.canonicalize();
  return conv;
}

}  // namespace mvlab
