#include "dagum/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dagum::numerics {

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
  if (!(decay_rate > 0.0)) throw std::invalid_argument("decay_rate must be positive");
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// Kronrod-21 estimate on [a, b] with the QUADPACK error heuristic.
Segment gk21(const Integrand& f, double a, double b, int& evaluations) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv1[11];
  double fv2[11];
  const double fc = f(centre);
  double resk = wk[0] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv1[i] = f1;
    fv2[i] = f2;
    resk += wk[i] * (f1 + f2);
    resabs += wk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) resg += wg[i / 2] * (f1 + f2);
  }
  evaluations += 21;

  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fc - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    resasc += wk[i] * (std::abs(fv1[i] - mean) + std::abs(fv2[i] - mean));
  }

  const double ah = std::abs(half);
  double err = std::abs((resk - resg) * half);
  resasc *= ah;
  resabs *= ah;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return Segment{a, b, resk * half, err};
}

QuadResult adaptive_finite(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  QuadResult out;
  if (a == b) return out;

  std::priority_queue<Segment> heap;
  Segment first = gk21(f, a, b, out.evaluations);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);

  auto converged = [&] { return total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (!converged()) {
    if (out.subdivisions >= cfg.max_subdivisions) {
      out.value = total;
      out.abs_error = total_err;
      throw QuadratureError("quadrature did not converge within max_subdivisions", out);
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) <= 100.0 * kEps * std::max(1.0, std::abs(mid))) {
      out.value = total;
      out.abs_error = total_err;
      throw QuadratureError("quadrature interval collapsed before reaching tolerance", out);
    }
    heap.pop();
    Segment left = gk21(f, worst.a, mid, out.evaluations);
    Segment right = gk21(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++out.subdivisions;
  }

  // Re-sum to shed drift from the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error = total_err;
  return out;
}

bool removable(double exponent) { return exponent > -1.0 && exponent < 0.0; }

// Finite range with optional algebraic endpoint behaviour.
QuadResult finite_with_endpoints(const Integrand& f, double a, double b, const QuadConfig& cfg,
                                 EndpointBehavior eb) {
  const bool lo = removable(eb.lo_exponent);
  const bool hi = removable(eb.hi_exponent);
  if (lo && hi) {
    const double mid = 0.5 * (a + b);
    QuadConfig half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;
    QuadResult r1 = finite_with_endpoints(f, a, mid, half, {eb.lo_exponent, 0.0});
    QuadResult r2 = finite_with_endpoints(f, mid, b, half, {0.0, eb.hi_exponent});
    return QuadResult{r1.value + r2.value, r1.abs_error + r2.abs_error,
                      r1.subdivisions + r2.subdivisions, r1.evaluations + r2.evaluations};
  }
  if (lo || hi) {
    // x = a + w^p (or b - w^p) with p = 1 / (1 + e) makes (x - a)^e dx regular.
    const double e = lo ? eb.lo_exponent : eb.hi_exponent;
    const double p = 1.0 / (1.0 + e);
    const double width = b - a;
    const double w_max = std::pow(width, 1.0 + e);
    Integrand g = [&f, a, b, p, width, lo](double w) {
      const double offset = std::min(std::pow(w, p), width);
      const double x = lo ? a + offset : b - offset;
      return p * std::pow(w, p - 1.0) * f(x);
    };
    return adaptive_finite(g, 0.0, w_max, cfg);
  }
  return adaptive_finite(f, a, b, cfg);
}

QuadResult semi_infinite(const Integrand& f, double lo, const QuadConfig& cfg, EndpointBehavior eb) {
  if (cfg.tail_cutoff_strategy == TailStrategy::exp_substitution) {
    const double rate = cfg.decay_rate;
    Integrand g = [&f, lo, rate](double u) { return f(lo - std::log(u) / rate) / (rate * u); };
    // x -> lo corresponds to u -> 1.
    return finite_with_endpoints(g, 0.0, 1.0, cfg, {0.0, eb.lo_exponent});
  }

  QuadResult out;
  double panel = 1.0 / cfg.decay_rate;
  double a = lo;
  int quiet = 0;
  QuadConfig panel_cfg = cfg;
  for (int k = 0; k < 64; ++k) {
    const double b = a + panel;
    QuadResult r = finite_with_endpoints(f, a, b, panel_cfg, k == 0 ? EndpointBehavior{eb.lo_exponent, 0.0}
                                                                     : EndpointBehavior{});
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.subdivisions += r.subdivisions;
    out.evaluations += r.evaluations;
    if (std::abs(r.value) + r.abs_error < cfg.abs_tol / 10.0) {
      if (++quiet == 2) return out;
    } else {
      quiet = 0;
    }
    a = b;
    panel *= 2.0;
  }
  throw QuadratureError("tail truncation did not reach abs_tol / 10", out);
}

}  // namespace

QuadResult integrate(const Integrand& f, Interval range, const QuadConfig& cfg, EndpointBehavior endpoints) {
  cfg.validate();
  if (std::isnan(range.lo) || std::isnan(range.hi) || std::isinf(range.lo)) {
    throw std::invalid_argument("integration range must have a finite lower limit");
  }
  if (range.hi < range.lo) {
    QuadResult r = integrate(f, Interval{range.hi, range.lo}, cfg,
                             EndpointBehavior{endpoints.hi_exponent, endpoints.lo_exponent});
    r.value = -r.value;
    return r;
  }
  if (std::isinf(range.hi)) return semi_infinite(f, range.lo, cfg, endpoints);
  return finite_with_endpoints(f, range.lo, range.hi, cfg, endpoints);
}

}  // namespace dagum::numerics
