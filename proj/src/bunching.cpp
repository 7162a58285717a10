#include "jetconj/bunching.hpp"

#include <cmath>
#include <stdexcept>

namespace jetconj {

using boost::multiprecision::gcd;

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

double Rational::to_double() const {
  return num.convert_to<double>() / den.convert_to<double>();
}

bool rat_less(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
bool rat_leq(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }

BigInt pow2(long long e) {
  if (e < 0) throw std::invalid_argument("pow2: negative exponent");
  return BigInt(1) << static_cast<unsigned>(e);
}

Rational epsilon_bunching(int d) {
  if (d < 2) throw std::invalid_argument("epsilon_bunching: need d >= 2");
  if (d == 2) return Rational::of(1, 14);
  const long long dd = d;
  const long long e1 = 2 * dd * (dd - 1) * (dd - 1);
  const long long e2 = dd * (dd - 1) * (dd - 1);
  BigInt den = pow2(e1) - pow2(e2) - pow2(dd - 1) + 1;
  return Rational(pow2(dd - 1) - 1, den);
}

Rational delta_threshold(int d) {
  if (d < 2) throw std::invalid_argument("delta_threshold: need d >= 2");
  const long long dd = d;
  BigInt D = pow2(dd - 1);
  BigInt DB = boost::multiprecision::pow(D, static_cast<unsigned>(dd * (dd - 1)));
  return Rational(D - 1, DB - 1);
}

Rational easy_bound(int d) {
  if (d < 2) throw std::invalid_argument("easy_bound: need d >= 2");
  const long long dd = d;
  const long long e = 3 * dd * (dd - 1) * (dd - 1) / 2;  // always an integer
  return Rational(BigInt(1), 2 * (pow2(e) - 1));
}

double bunching_margin(int d, double Lambda, double M) {
  if (Lambda <= 0 || M <= 0) throw std::invalid_argument("bunching_margin: need positive inputs");
  return (2.0 + epsilon_bunching(d).to_double()) * std::log(Lambda) + std::log(M);
}

double series_margin(int d, double Lambda, double M) {
  if (Lambda <= 0 || M <= 0) throw std::invalid_argument("series_margin: need positive inputs");
  const long long dd = d;
  // D^B = 2^{d(d-1)^2} fits a double comfortably for d <= 6.
  double DB = std::ldexp(1.0, static_cast<int>(dd * (dd - 1) * (dd - 1)));
  double delta = delta_threshold(d).to_double();
  return DB * std::log(Lambda * Lambda * M) - delta * std::log(Lambda * M);
}

double series_margin_alt(int d, double Lambda, double M) {
  if (Lambda <= 0 || M <= 0) throw std::invalid_argument("series_margin_alt: need positive inputs");
  const long long dd = d;
  BigInt D = pow2(dd - 1);
  BigInt DB = boost::multiprecision::pow(D, static_cast<unsigned>(dd * (dd - 1)));
  Rational x(D - 1, DB * DB - DB - D + 1);
  return (2.0 + x.to_double()) * std::log(Lambda) + std::log(M);
}

RescaleChoice choose_R(int d, double Lambda, double M) {
  if (Lambda <= 0 || M <= 0) throw std::invalid_argument("choose_R: need positive inputs");
  RescaleChoice out;
  const long long dd = d;
  const long long e = 3 * dd * (dd - 1) * (dd - 1) / 2;
  const double E = (pow2(e) - 1).convert_to<double>();
  out.lower_growth = E * std::log(Lambda * Lambda * M);
  out.upper_contraction = -std::log(Lambda);
  out.upper_quadratic = 0.5 * (-std::log(Lambda * Lambda * Lambda * M));
  out.log_lo = std::max(0.0, out.lower_growth);
  out.log_hi = std::min(out.upper_contraction, out.upper_quadratic);
  out.feasible = out.log_hi > out.log_lo;
  if (out.feasible) {
    out.R = std::exp(0.5 * (out.log_lo + out.log_hi));
  } else {
    const char* upper_name = out.upper_contraction <= out.upper_quadratic
                                 ? "linear contraction bound (R * Lambda < 1)"
                                 : "quadratic-term bound (R^2 * Lambda^3 * M < 1)";
    if (out.log_hi <= 0.0) {
      out.violated = std::string("no room above R = 1: ") + upper_name + " fails for every R > 1";
    } else {
      out.violated =
          std::string("solution-growth lower bound (R > (Lambda^2 M)^E) exceeds the ") + upper_name;
    }
  }
  return out;
}

}  // namespace jetconj
