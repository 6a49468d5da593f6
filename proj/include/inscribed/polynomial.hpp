#pragma once

#include <initializer_list>
#include <vector>

namespace inscribed {

/// Dense real polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) {}
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  const std::vector<double>& coefficients() const { return c_; }
  double coefficient(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0.0; }
  /// Highest index whose coefficient is nonzero, or -1 for the zero polynomial.
  int degree() const;
  double operator()(double x) const;
  Polynomial derivative() const;
  double max_abs_coefficient() const;
  /// Coefficients below rel_tol * max|c| become exact zeros.
  Polynomial cleaned(double rel_tol = 1e-13) const;
  /// Coefficients with |c| <= cut become exact zeros.
  Polynomial truncated(double cut) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  std::vector<double> c_;
};

/// All real roots, sorted ascending.  Double roots are reported once.
std::vector<double> real_roots(const Polynomial& p);

struct RationalFunction {
  Polynomial num;
  Polynomial den;

  double operator()(double x) const { return num(x) / den(x); }
  /// Numerator of the derivative: num' * den - num * den'.
  Polynomial derivative_numerator() const;
  double derivative(double x) const;
  /// Limit as x -> 0+ (uses the lowest-order nonvanishing coefficients).
  double limit_at_zero() const;
  /// Limit as x -> +infinity.
  double limit_at_infinity() const;
};

}  // namespace inscribed
