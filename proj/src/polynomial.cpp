#include "inscribed/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace inscribed {

int Polynomial::degree() const {
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
    if (c_[i] != 0.0) return i;
  return -1;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Polynomial Polynomial::cleaned(double rel_tol) const { return truncated(rel_tol * max_abs_coefficient()); }

Polynomial Polynomial::truncated(double cut) const {
  std::vector<double> out = c_;
  for (double& v : out)
    if (std::abs(v) <= cut) v = 0.0;
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return Polynomial{};
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> out = a.c_;
  for (double& v : out) v *= s;
  return Polynomial(std::move(out));
}

namespace {

double polish(const Polynomial& p, const Polynomial& dp, double x) {
  for (int it = 0; it < 4; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double step = p(x) / d;
    const double next = x - step;
    if (!std::isfinite(next) || std::abs(p(next)) >= std::abs(p(x))) break;
    x = next;
  }
  return x;
}

// Bisection on a bracket with a sign change.
double bisect(const Polynomial& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> roots_by_monotone_pieces(const Polynomial& p) {
  const int n = p.degree();
  const double lead = p.coefficient(n);
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p.coefficient(i) / lead));
  bound += 1.0;
  std::vector<double> knots{-bound};
  for (double r : real_roots(p.derivative()))
    if (r > -bound && r < bound) knots.push_back(r);
  knots.push_back(bound);
  const double scale = p.max_abs_coefficient();
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double fa = p(a), fb = p(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0.0) {
      roots.push_back(bisect(p, a, b));
    } else if (i > 0 && std::abs(fa) <= 1e-14 * scale * std::max(1.0, std::pow(std::abs(a), n))) {
      roots.push_back(a);  // tangency at a critical point
    }
  }
  if (p(knots.back()) == 0.0) roots.push_back(knots.back());
  return roots;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p) {
  const int n = p.degree();
  std::vector<double> roots;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-p.coefficient(0) / p.coefficient(1));
    return roots;
  }
  if (n == 2) {
    const double a = p.coefficient(2), b = p.coefficient(1), c = p.coefficient(0);
    const double disc = b * b - 4 * a * c;
    const double disc_tol = 1e-14 * (b * b + std::abs(4 * a * c));
    if (disc < -disc_tol) return roots;
    if (disc <= disc_tol) {
      roots.push_back(-b / (2 * a));
      return roots;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const Polynomial dp = p.derivative();
    double r1 = q / a;
    double r2 = (q != 0.0) ? c / q : -r1;
    r1 = polish(p, dp, r1);
    r2 = polish(p, dp, r2);
    roots = {std::min(r1, r2), std::max(r1, r2)};
    return roots;
  }
  roots = roots_by_monotone_pieces(p);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

Polynomial RationalFunction::derivative_numerator() const {
  return num.derivative() * den - num * den.derivative();
}

double RationalFunction::derivative(double x) const {
  const double d = den(x);
  return derivative_numerator()(x) / (d * d);
}

double RationalFunction::limit_at_zero() const {
  const Polynomial n = num.cleaned(), d = den.cleaned();
  const int dn = d.degree();
  if (dn < 0) return std::numeric_limits<double>::quiet_NaN();
  int order_d = 0;
  while (d.coefficient(order_d) == 0.0) ++order_d;
  for (int i = 0; i < order_d; ++i)
    if (n.coefficient(i) != 0.0)
      return std::copysign(std::numeric_limits<double>::infinity(), n.coefficient(i) * d.coefficient(order_d));
  return n.coefficient(order_d) / d.coefficient(order_d);
}

double RationalFunction::limit_at_infinity() const {
  const Polynomial n = num.cleaned(), d = den.cleaned();
  const int dn = d.degree(), nn = n.degree();
  if (dn < 0) return std::numeric_limits<double>::quiet_NaN();
  if (nn < dn) return 0.0;
  if (nn == dn) return n.coefficient(nn) / d.coefficient(dn);
  return std::copysign(std::numeric_limits<double>::infinity(), n.coefficient(nn) * d.coefficient(dn));
}

}  // namespace inscribed
