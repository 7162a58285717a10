#pragma once
// Weak-bunching arithmetic: the exact rational thresholds that quantify how
// much slower than squared-contraction the linear parts may expand, plus the
// feasibility window for the rescaling factor used by the end-to-end run.
//
// Throughout, D = 2^{d-1}, B = d(d-1).  The bunching exponent is
//
//     eps(2) = 1/14,
//     eps(d) = (2^{d-1} - 1) / (2^{2 d (d-1)^2} - 2^{d (d-1)^2} - 2^{d-1} + 1)
//              for d >= 3,
//
// and the series threshold is delta = (D - 1)/(D^B - 1).  The summability
// condition for the conjugacy series reads, in log space,
//
//     D^B * ln(Lambda^2 M) - delta * ln(Lambda M) < 0,
//
// equivalently Lambda^{2 + x} M < 1 with x = (D-1)/(D^{2B} - D^B - D + 1);
// both routes are implemented and must agree (they are the same inequality
// up to a positive factor).  Denominators overflow 64-bit integers from
// d = 4 on, hence exact big-integer rationals.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace jetconj {

using BigInt = boost::multiprecision::cpp_int;

struct Rational {
  BigInt num{0};
  BigInt den{1};

  Rational() = default;
  Rational(BigInt n, BigInt d);
  static Rational of(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

  std::string str() const;
  double to_double() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

bool rat_less(const Rational& a, const Rational& b);
bool rat_leq(const Rational& a, const Rational& b);

BigInt pow2(long long e);

// The bunching exponent eps(d), d >= 2.
Rational epsilon_bunching(int d);

// delta = (D-1)/(D^{d(d-1)} - 1).
Rational delta_threshold(int d);

// The simpler sufficient bound 1/(2 (2^{3 d (d-1)^2 / 2} - 1)); it dominates
// eps(d) for all d, with equality exactly at d = 2.
Rational easy_bound(int d);

// Bunching condition Lambda^{2+eps(d)} M < 1; returns the log-space margin
// (negative means the condition holds).
double bunching_margin(int d, double Lambda, double M);

// Series summability condition, primary route (see header comment).
double series_margin(int d, double Lambda, double M);
// Same condition through the rewritten exponent; must agree in sign.
double series_margin_alt(int d, double Lambda, double M);

inline bool bunching_holds(int d, double L, double M) { return bunching_margin(d, L, M) < 0; }
inline bool series_holds(int d, double L, double M) { return series_margin(d, L, M) < 0; }

// Feasibility window for the rescaling factor R > 1: in log space
//   lower = max(0, E * ln(Lambda^2 M)),  E = 2^{3 d (d-1)^2 / 2} - 1,
//   upper = min(-ln Lambda, (1/2) * (-ln(Lambda^3 M))),
// and R is the log-midpoint when the window is nonempty.
struct RescaleChoice {
  bool feasible = false;
  double R = 0.0;
  double log_lo = 0.0, log_hi = 0.0;
  double lower_growth = 0.0;       // E * ln(Lambda^2 M)
  double upper_contraction = 0.0;  // -ln Lambda
  double upper_quadratic = 0.0;    // (1/2) * (-ln(Lambda^3 M))
  std::string violated;            // empty when feasible
};
RescaleChoice choose_R(int d, double Lambda, double M);

}  // namespace jetconj
