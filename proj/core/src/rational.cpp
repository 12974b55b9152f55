#include "turan/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "turan/errors.hpp"

namespace turan {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view s = text.substr(b, e - b);
  if (s.empty()) throw InvalidError("empty rational literal");

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw InvalidError("bad rational literal");

  Rat out;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw InvalidError("bad rational literal '" + std::string(text) + "'");
    out = Rat(mpz_class(std::string(num)), mpz_class(std::string(den)));
    if (out.get_den() == 0) throw InvalidError("zero denominator in '" + std::string(text) + "'");
    out.canonicalize();
  } else if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
      throw InvalidError("bad decimal literal '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole{std::string(ip)};
    mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(std::string(fp));
    out = Rat(whole * scale + frac, scale);
    out.canonicalize();
  } else {
    if (!all_digits(s)) throw InvalidError("bad rational literal '" + std::string(text) + "'");
    out = Rat(mpz_class(std::string(s)));
  }
  if (neg) out = -out;
  return out;
}

std::string rational_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rational_from_double(double x, std::uint64_t max_den) {
  if (max_den < 1) throw InvalidError("max_den must be >= 1");
  if (!std::isfinite(x)) throw InvalidError("non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);

  // Convergents p/q of the continued fraction of v.
  mpz_class p0 = 1, q0 = 0;  // h_{-1}/k_{-1}
  mpz_class p1, q1 = 1;      // h_0/k_0
  double frac = v;
  p1 = mpz_class(std::floor(frac));
  mpz_class bound(static_cast<unsigned long>(max_den));
  Rat best(p1);
  for (int it = 0; it < 64; ++it) {
    double rem = frac - std::floor(frac);
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
    mpz_class a(std::floor(frac));
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > bound) {
      // Largest semiconvergent that still fits.
      mpz_class t = (bound - q0) / q1;
      mpz_class ps = t * p1 + p0, qs = t * q1 + q0;
      Rat cand(ps, qs);
      cand.canonicalize();
      Rat prev(p1, q1);
      prev.canonicalize();
      double dc = std::fabs(v - cand.get_d());
      double dp = std::fabs(v - prev.get_d());
      best = dc < dp ? cand : prev;
      return neg ? Rat(-best) : best;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rat cur(p1, q1);
    cur.canonicalize();
    best = cur;
    if (std::fabs(v - best.get_d()) < 1e-18) break;
  }
  return neg ? Rat(-best) : best;
}

Rat rat_pow(const Rat& base, unsigned long e) {
  Rat out;
  mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
  out.canonicalize();
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

DensityValue exact_value(Rat q) {
  DensityValue d;
  d.exact = true;
  d.approx = q.get_d();
  d.rational = std::move(q);
  return d;
}

DensityValue approx_value(double v, double err) {
  DensityValue d;
  d.exact = false;
  d.approx = v;
  d.error_bound = err;
  return d;
}

std::string DensityValue::to_string() const {
  if (exact) return rational_to_string(rational);
  return format_double(approx) + " +- " + format_double(error_bound);
}

}  // namespace turan
