#include "dagum/numerics/taylor.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dagum::numerics {

namespace {

std::vector<double> zeros_like(const TaylorSeries& a) {
  return std::vector<double>(a.coefficients().size(), 0.0);
}

bool is_nonnegative_integer(double p) {
  return p >= 0.0 && std::floor(p) == p && p < 1024.0;
}

}  // namespace

TaylorSeries::TaylorSeries(std::vector<double> coefficients, double expansion_point)
    : coeffs_(std::move(coefficients)), x0_(expansion_point) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("TaylorSeries needs at least one coefficient");
  }
}

TaylorSeries TaylorSeries::variable(double x0, int order) {
  if (order < 0) throw std::invalid_argument("negative series order");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = x0;
  if (order >= 1) c[1] = 1.0;
  return TaylorSeries(std::move(c), x0);
}

TaylorSeries TaylorSeries::constant(double value, double x0, int order) {
  if (order < 0) throw std::invalid_argument("negative series order");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = value;
  return TaylorSeries(std::move(c), x0);
}

double TaylorSeries::derivative(int k) const {
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * (*this)[k];
}

void TaylorSeries::check_compatible(const TaylorSeries& other) const {
  if (other.coeffs_.size() != coeffs_.size() || other.x0_ != x0_) {
    throw std::invalid_argument("TaylorSeries operands differ in order or expansion point");
  }
}

TaylorSeries& TaylorSeries::operator+=(const TaylorSeries& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

TaylorSeries& TaylorSeries::operator-=(const TaylorSeries& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

TaylorSeries& TaylorSeries::operator*=(const TaylorSeries& other) {
  *this = *this * other;
  return *this;
}

TaylorSeries& TaylorSeries::operator/=(const TaylorSeries& other) {
  *this = *this / other;
  return *this;
}

TaylorSeries& TaylorSeries::operator+=(double c) {
  coeffs_[0] += c;
  return *this;
}

TaylorSeries& TaylorSeries::operator-=(double c) {
  coeffs_[0] -= c;
  return *this;
}

TaylorSeries& TaylorSeries::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  return *this;
}

TaylorSeries& TaylorSeries::operator/=(double c) {
  for (double& v : coeffs_) v /= c;
  return *this;
}

TaylorSeries TaylorSeries::operator-() const {
  TaylorSeries r = *this;
  for (double& v : r.coeffs_) v = -v;
  return r;
}

TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) { return a -= b; }
TaylorSeries operator+(TaylorSeries a, double c) { return a += c; }
TaylorSeries operator+(double c, TaylorSeries a) { return a += c; }
TaylorSeries operator-(TaylorSeries a, double c) { return a -= c; }
TaylorSeries operator-(double c, const TaylorSeries& a) { return -a + c; }
TaylorSeries operator*(TaylorSeries a, double c) { return a *= c; }
TaylorSeries operator*(double c, TaylorSeries a) { return a *= c; }
TaylorSeries operator/(TaylorSeries a, double c) { return a /= c; }

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
  if (a.order() != b.order() || a.expansion_point() != b.expansion_point()) {
    throw std::invalid_argument("TaylorSeries operands differ in order or expansion point");
  }
  const int n = a.order();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
    c[static_cast<std::size_t>(k)] = s;
  }
  return TaylorSeries(std::move(c), a.expansion_point());
}

TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b) {
  if (a.order() != b.order() || a.expansion_point() != b.expansion_point()) {
    throw std::invalid_argument("TaylorSeries operands differ in order or expansion point");
  }
  if (b[0] == 0.0) throw std::domain_error("TaylorSeries division by a series vanishing at x0");
  const int n = a.order();
  std::vector<double> q(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = s / b[0];
  }
  return TaylorSeries(std::move(q), a.expansion_point());
}

TaylorSeries operator/(double c, const TaylorSeries& a) {
  return TaylorSeries::constant(c, a.expansion_point(), a.order()) / a;
}

namespace {

// e_n = (1/n) sum_{k=1}^n k a_k e_{n-k}, seeded with e_0 = exp(a_0).
std::vector<double> exp_coefficients(const TaylorSeries& a) {
  std::vector<double> e = zeros_like(a);
  e[0] = std::exp(a[0]);
  for (int n = 1; n <= a.order(); ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * a[k] * e[static_cast<std::size_t>(n - k)];
    e[static_cast<std::size_t>(n)] = s / n;
  }
  return e;
}

// Coefficients of log(b) for n >= 1, where b_0 = base.
std::vector<double> log_coefficients(const TaylorSeries& a, double base) {
  std::vector<double> l = zeros_like(a);
  for (int n = 1; n <= a.order(); ++n) {
    double s = a[n];
    for (int k = 1; k < n; ++k) s -= (static_cast<double>(k) / n) * l[static_cast<std::size_t>(k)] * a[n - k];
    l[static_cast<std::size_t>(n)] = s / base;
  }
  return l;
}

}  // namespace

TaylorSeries exp(const TaylorSeries& a) {
  return TaylorSeries(exp_coefficients(a), a.expansion_point());
}

TaylorSeries expm1(const TaylorSeries& a) {
  std::vector<double> e = exp_coefficients(a);
  e[0] = std::expm1(a[0]);
  return TaylorSeries(std::move(e), a.expansion_point());
}

TaylorSeries log(const TaylorSeries& a) {
  if (a[0] <= 0.0) throw std::domain_error("log of a series with non-positive value");
  std::vector<double> l = log_coefficients(a, a[0]);
  l[0] = std::log(a[0]);
  return TaylorSeries(std::move(l), a.expansion_point());
}

TaylorSeries log1p(const TaylorSeries& a) {
  if (a[0] <= -1.0) throw std::domain_error("log1p of a series with value <= -1");
  std::vector<double> l = log_coefficients(a, 1.0 + a[0]);
  l[0] = std::log1p(a[0]);
  return TaylorSeries(std::move(l), a.expansion_point());
}

TaylorSeries pow(const TaylorSeries& a, double p) {
  if (p == 0.0) return TaylorSeries::constant(1.0, a.expansion_point(), a.order());
  if (a[0] == 0.0) {
    if (!is_nonnegative_integer(p)) {
      throw std::domain_error("non-integer power of a series vanishing at x0");
    }
    TaylorSeries r = TaylorSeries::constant(1.0, a.expansion_point(), a.order());
    for (int i = 0; i < static_cast<int>(p); ++i) r = r * a;
    return r;
  }
  if (a[0] < 0.0 && std::floor(p) != p) {
    throw std::domain_error("non-integer power of a negative series");
  }
  // u = a^p satisfies a u' = p a' u.
  std::vector<double> u = zeros_like(a);
  u[0] = std::pow(a[0], p);
  for (int n = 1; n <= a.order(); ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += (p * k - (n - k)) * a[k] * u[static_cast<std::size_t>(n - k)];
    u[static_cast<std::size_t>(n)] = s / (n * a[0]);
  }
  return TaylorSeries(std::move(u), a.expansion_point());
}

namespace {

std::pair<std::vector<double>, std::vector<double>> sin_cos_coefficients(const TaylorSeries& a) {
  std::vector<double> s = zeros_like(a);
  std::vector<double> c = zeros_like(a);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (int n = 1; n <= a.order(); ++n) {
    double ss = 0.0;
    double cc = 0.0;
    for (int k = 1; k <= n; ++k) {
      ss += k * a[k] * c[static_cast<std::size_t>(n - k)];
      cc -= k * a[k] * s[static_cast<std::size_t>(n - k)];
    }
    s[static_cast<std::size_t>(n)] = ss / n;
    c[static_cast<std::size_t>(n)] = cc / n;
  }
  return {std::move(s), std::move(c)};
}

}  // namespace

TaylorSeries sin(const TaylorSeries& a) {
  return TaylorSeries(sin_cos_coefficients(a).first, a.expansion_point());
}

TaylorSeries cos(const TaylorSeries& a) {
  return TaylorSeries(sin_cos_coefficients(a).second, a.expansion_point());
}

TaylorSeries differentiate(const TaylorSeries& a) {
  if (a.order() < 1) throw std::invalid_argument("cannot differentiate an order-0 series");
  std::vector<double> d(static_cast<std::size_t>(a.order()), 0.0);
  for (int k = 1; k <= a.order(); ++k) d[static_cast<std::size_t>(k - 1)] = k * a[k];
  return TaylorSeries(std::move(d), a.expansion_point());
}

}  // namespace dagum::numerics
