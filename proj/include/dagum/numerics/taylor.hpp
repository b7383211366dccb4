#pragma once

#include <span>
#include <vector>

namespace dagum::numerics {

/// Truncated power series a_0 + a_1 (x - x0) + ... + a_N (x - x0)^N.
///
/// Coefficient k holds f^(k)(x0) / k!.  All arithmetic keeps the length
/// fixed at N + 1; operands of binary operations must share N and x0.
class TaylorSeries {
 public:
  TaylorSeries(std::vector<double> coefficients, double expansion_point);

  /// The identity x expanded at x0.
  static TaylorSeries variable(double x0, int order);
  static TaylorSeries constant(double value, double x0, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double expansion_point() const { return x0_; }
  std::span<const double> coefficients() const { return coeffs_; }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  double value() const { return coeffs_.front(); }

  /// f^(k)(x0) = k! a_k.
  double derivative(int k) const;

  TaylorSeries& operator+=(const TaylorSeries& other);
  TaylorSeries& operator-=(const TaylorSeries& other);
  TaylorSeries& operator*=(const TaylorSeries& other);
  TaylorSeries& operator/=(const TaylorSeries& other);
  TaylorSeries& operator+=(double c);
  TaylorSeries& operator-=(double c);
  TaylorSeries& operator*=(double c);
  TaylorSeries& operator/=(double c);

  TaylorSeries operator-() const;

 private:
  void check_compatible(const TaylorSeries& other) const;

  std::vector<double> coeffs_;
  double x0_;
};

TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b);
TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b);
TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries operator+(TaylorSeries a, double c);
TaylorSeries operator+(double c, TaylorSeries a);
TaylorSeries operator-(TaylorSeries a, double c);
TaylorSeries operator-(double c, const TaylorSeries& a);
TaylorSeries operator*(TaylorSeries a, double c);
TaylorSeries operator*(double c, TaylorSeries a);
TaylorSeries operator/(TaylorSeries a, double c);
TaylorSeries operator/(double c, const TaylorSeries& a);

TaylorSeries exp(const TaylorSeries& a);
TaylorSeries expm1(const TaylorSeries& a);
TaylorSeries log(const TaylorSeries& a);
TaylorSeries log1p(const TaylorSeries& a);
TaylorSeries pow(const TaylorSeries& a, double p);
TaylorSeries sin(const TaylorSeries& a);
TaylorSeries cos(const TaylorSeries& a);

/// Series of f' at the same point, one order shorter.
TaylorSeries differentiate(const TaylorSeries& a);

}  // namespace dagum::numerics
