#include "dagum/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "dagum/kernels.hpp"

namespace dagum::classify {

using models::DagumParams;
using models::Expression;
using models::Model;

namespace {

constexpr double kPi = std::numbers::pi;

// Citations are emitted verbatim in verdict documents.
enum class Cite {
  beta_above_two,
  thm3_i,
  thm3_ii,
  lemma1,
  thm6_i,
  thm6_ii,
  l_threshold,
  lcm_beta_above_two,
  thm9_beta_necessity,
  thm9_product_necessity,
  thm9_i,
  eq4_15,
  thm9_iii,
  remark4_i,
  remark4_ii,
  remark4_iii,
  remark4_iv,
  remark4_v,
};

const char* citation(Cite c) {
  switch (c) {
    case Cite::beta_above_two: return "Section 3: beta <= 2 is a necessary condition";
    case Cite::thm3_i: return "Theorem 3(i)";
    case Cite::thm3_ii: return "Theorem 3(ii)";
    case Cite::lemma1: return "Lemma 1";
    case Cite::thm6_i: return "Theorem 6(i)";
    case Cite::thm6_ii: return "Theorem 6(ii)";
    case Cite::l_threshold: return "Eq. (4.2)";
    case Cite::lcm_beta_above_two: return "Section 3: beta <= 2 is necessary for C, and L is contained in C";
    case Cite::thm9_beta_necessity: return "Theorem 9 (necessity: beta <= 2)";
    case Cite::thm9_product_necessity: return "Theorem 9 (necessity: beta*gamma <= 1)";
    case Cite::thm9_i: return "Theorem 9(i)";
    case Cite::eq4_15: return "Eq. (4.15)";
    case Cite::thm9_iii: return "Theorem 9(iii), Eq. (4.16)";
    case Cite::remark4_i: return "Remark 4(i)";
    case Cite::remark4_ii: return "Remark 4(ii)";
    case Cite::remark4_iii: return "Remark 4(iii)";
    case Cite::remark4_iv: return "Remark 4(iv)";
    case Cite::remark4_v: return "Remark 4(v)";
  }
  return "";
}

Verdict proven(Status s, Cite c) {
  Verdict v;
  v.status = s;
  v.basis = Basis::theorem;
  v.citation = citation(c);
  return v;
}

Verdict refuted(Certificate cert, std::string notes) {
  Verdict v;
  v.status = Status::ProvenNotCM;
  v.basis = Basis::certificate;
  v.certificate = std::move(cert);
  v.notes = std::move(notes);
  return v;
}

Verdict undetermined(std::string notes) {
  Verdict v;
  v.notes = std::move(notes);
  return v;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool near_one(double beta) { return std::abs(beta - 1.0) < kernels::kEndpointBand; }
bool near_two(double beta) { return std::abs(beta - 2.0) < kernels::kEndpointBand; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Witness test shared by the eta scans.
bool clearly_negative(const kernels::KernelValue& k) { return k.value + std::max(k.err_estimate, 1e-11) < 0.0; }

kernels::KernelValue eta_or_phi(double alpha, double beta, double t) {
  if (alpha == 0.0) return kernels::phi(beta, t);
  return kernels::eta(alpha, beta, t);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::ProvenCM: return "ProvenCM";
    case Status::ProvenNotCM: return "ProvenNotCM";
    case Status::ProvenLCM: return "ProvenLCM";
    case Status::ProvenNotLCM: return "ProvenNotLCM";
    case Status::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::theorem: return "theorem";
    case Basis::certificate: return "certificate";
    case Basis::none: return "none";
  }
  return "none";
}

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::derivative_sign: return "derivative_sign";
    case CertificateKind::eta_sign: return "eta_sign";
    case CertificateKind::indefinite_gram: return "indefinite_gram";
  }
  return "derivative_sign";
}

numerics::Maximum psi_maximum(double beta) {
  require(std::isfinite(beta) && beta >= 1.0 && beta <= 2.0, "psi_max: beta must lie in [1, 2]");
  if (near_one(beta)) return {std::numeric_limits<double>::infinity(), 1.0};  // 1 - e^{-t} increases to 1
  if (near_two(beta)) return {kPi, 2.0};
  const double period = kPi / std::sin(kPi / beta);
  auto f = [beta](double t) { return kernels::psi_minus_one(beta, t).value; };
  const numerics::Maximum m = numerics::maximize_1d(f, {0.0, 3.0 * period}, kComposedTol);
  return {m.t_star, 1.0 + m.f_star};
}

double psi_max(double beta) { return psi_maximum(beta).f_star; }

double l_of_beta(double beta) {
  require(std::isfinite(beta) && beta >= 1.0 && beta <= 2.0, "l: beta must lie in [1, 2]");
  if (near_one(beta)) return 0.0;
  if (near_two(beta)) return 2.0;
  const double period = kPi / std::sin(kPi / beta);
  auto f = [beta](double t) { return kernels::psi_minus_one(beta, t).value; };
  return beta * numerics::maximize_1d(f, {0.0, 3.0 * period}, kComposedTol).f_star;
}

double beta_star(double tol) {
  require(std::isfinite(tol) && tol > 0.0, "beta_star: tol must be > 0");
  return numerics::find_root([](double b) { return l_of_beta(b) - 1.0; }, {1.5, 1.9}, tol);
}

std::optional<Certificate> eta_scan(double alpha, double beta) {
  require(std::isfinite(alpha) && alpha >= 0.0, "eta_scan: alpha must be >= 0");
  require(std::isfinite(beta) && beta > 1.0 && beta <= 2.0, "eta_scan: beta must lie in (1, 2]");
  const double horizon = 6.0 * kPi / std::sin(kPi / beta);
  const double step = horizon / kEtaScanPoints;

  std::vector<double> values(kEtaScanPoints + 1, 0.0);
  std::optional<Certificate> best;
  auto consider = [&](double t, const kernels::KernelValue& k) {
    if (clearly_negative(k) && (!best || k.value < best->value)) {
      best = Certificate{CertificateKind::eta_sign, t, std::nullopt, k.value, {}};
    }
  };
  for (int i = 1; i <= kEtaScanPoints; ++i) {
    const double t = step * i;
    const kernels::KernelValue k = eta_or_phi(alpha, beta, t);
    values[static_cast<std::size_t>(i)] = k.value;
    consider(t, k);
  }
  if (best) return best;

  // Refine the deepest interior grid minima.
  std::vector<int> minima;
  for (int i = 2; i < kEtaScanPoints; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (values[u] <= values[u - 1] && values[u] <= values[u + 1]) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
  });
  if (minima.size() > 8) minima.resize(8);
  for (int i : minima) {
    std::uintmax_t iters = 100;
    auto f = [&](double t) { return eta_or_phi(alpha, beta, t).value; };
    const auto [t, v] = boost::math::tools::brent_find_minima(f, step * (i - 1), step * (i + 1),
                                                              std::numeric_limits<double>::digits / 2, iters);
    (void)v;
    consider(t, eta_or_phi(alpha, beta, t));
  }
  return best;
}

CBounds c_bounds(double beta, double alpha_tol) {
  require(std::isfinite(beta) && beta > 1.0 && beta <= 2.0, "c_bounds: beta must lie in (1, 2]");
  require(std::isfinite(alpha_tol) && alpha_tol > 0.0, "c_bounds: alpha_tol must be > 0");
  double lo = 0.0;
  double hi = 0.5 * beta;
  while (hi - lo > alpha_tol) {
    const double mid = 0.5 * (lo + hi);
    if (eta_scan(mid, beta)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Every bisection step lacked a witness: look for one closer to 0.
  for (int k = 1; lo == 0.0 && k <= 30; ++k) {
    const double a = hi * std::ldexp(1.0, -k);
    if (eta_scan(a, beta)) lo = a;
  }
  return {lo, hi};
}

Verdict classify_aux_cm(double alpha, double beta, bool numeric_refutation) {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be >= 0");
  if (beta > 2.0) return proven(Status::ProvenNotCM, Cite::beta_above_two);
  if (beta <= 1.0) return proven(Status::ProvenCM, Cite::thm3_i);
  if (beta == 2.0) return proven(alpha >= 1.0 ? Status::ProvenCM : Status::ProvenNotCM, Cite::lemma1);
  if (alpha >= 0.5 * beta) return proven(Status::ProvenCM, Cite::thm3_ii);

  if (!numeric_refutation) return undetermined("no theorem applies");
  if (auto cert = eta_scan(alpha, beta)) {
    return refuted(*cert, "eta_{alpha,beta} is negative on the scan grid");
  }
  Verdict v = undetermined("no theorem applies and the eta scan found no negative value");
  const CBounds cb = c_bounds(beta);
  v.c_bounds = cb;
  if (alpha >= cb.upper) v.notes += "; numerically consistent with CM (alpha >= grid-based c upper bound)";
  return v;
}

Verdict classify_aux_lcm(double alpha, double beta, double tol) {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be >= 0");
  require(std::isfinite(tol) && tol > 0.0, "tol must be > 0");
  if (beta > 2.0) return proven(Status::ProvenNotLCM, Cite::lcm_beta_above_two);
  if (beta <= 1.0) return proven(Status::ProvenLCM, Cite::thm6_i);
  if (beta == 2.0) return proven(alpha >= 2.0 ? Status::ProvenLCM : Status::ProvenNotLCM, Cite::thm6_ii);

  const double l = l_of_beta(beta);
  Verdict v;
  if (alpha >= l + tol) {
    v = proven(Status::ProvenLCM, Cite::l_threshold);
  } else if (alpha < l - tol) {
    v = proven(Status::ProvenNotLCM, Cite::l_threshold);
  } else {
    v = undetermined("alpha lies within the tolerance band around l(beta)");
  }
  v.notes += (v.notes.empty() ? "" : "; ") + std::string("l(beta) = ") + fmt(l);
  return v;
}

Verdict classify_dagum(double beta, double gamma, bool numeric_refutation, double tol) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(tol) && tol > 0.0, "tol must be > 0");
  const double product = beta * gamma;
  if (beta > 2.0) return proven(Status::ProvenNotCM, Cite::thm9_beta_necessity);
  if (beta > 1.0 && product >= 1.0 - 1e-12 && product <= 1.0 + 1e-4) {
    return proven(Status::ProvenNotCM, Cite::eq4_15);
  }
  if (product > 1.0) return proven(Status::ProvenNotCM, Cite::thm9_product_necessity);
  if (beta <= 1.0) return proven(Status::ProvenCM, Cite::thm9_i);

  const double l = l_of_beta(beta);
  std::string notes = "l(beta) = " + fmt(l);
  if (l < 1.0) {
    const double bound = (1.0 - l) / (beta + l);
    notes += ", gamma bound (1 - l)/(beta + l) = " + fmt(bound);
    if (gamma <= bound - tol) {
      Verdict v = proven(Status::ProvenCM, Cite::thm9_iii);
      v.notes = notes;
      return v;
    }
  } else {
    notes += ", beta >= beta_*";
  }

  if (!numeric_refutation) return undetermined(notes + "; no theorem applies");
  const std::vector<double> grid = default_scan_grid();
  if (auto cert = cm_scan(Expression::reduced(DagumParams{beta, gamma}), kDefaultScanOrder, grid)) {
    return refuted(*cert, notes + "; derivative sign of x^(beta gamma - 1)/(1 + x^beta)^(gamma + 1)");
  }
  return undetermined(notes + "; no theorem applies and the derivative scan found no violation");
}

Verdict classify_g(double alpha, double lambda, bool numeric_refutation) {
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be >= 0");
  if (alpha == 1.0 && lambda <= 1.0) return proven(Status::ProvenCM, Cite::remark4_iii);
  if (alpha >= 2.0 * lambda) return proven(Status::ProvenCM, Cite::remark4_ii);
  if (alpha >= lambda && lambda >= 1.0) return proven(Status::ProvenCM, Cite::remark4_i);
  if (alpha < lambda) return proven(Status::ProvenNotCM, Cite::remark4_iv);
  if (alpha == lambda && alpha > 0.0 && alpha < 1.0) return proven(Status::ProvenNotCM, Cite::remark4_v);

  if (!numeric_refutation) return undetermined("no theorem applies");
  const std::vector<double> grid = default_scan_grid();
  if (auto cert = cm_scan(Expression::of(Model::g({alpha, lambda})), kDefaultScanOrder, grid)) {
    return refuted(*cert, "derivative sign of g");
  }
  return undetermined("no theorem applies and the derivative scan found no violation");
}

std::vector<double> default_scan_grid() { return numerics::geomspace(1e-3, 1e3, 241); }

std::optional<Certificate> cm_scan(const Expression& e, int max_order, std::span<const double> x_grid) {
  require(max_order >= 2, "cm_scan: max_order must be >= 2");
  for (double x : x_grid) require(std::isfinite(x) && x > 0.0, "cm_scan: grid points must be > 0");

  std::vector<numerics::TaylorSeries> series;
  series.reserve(x_grid.size());
  for (double x : x_grid) series.push_back(models::taylor_eval(e, x, max_order));

  const double eps = std::numeric_limits<double>::epsilon();
  for (int n = 0; n <= max_order; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const double nf = factorial(n);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      const numerics::TaylorSeries& s = series[i];
      const double value = sign * nf * s[n];
      // Rounding scale of an n-th derivative for a function of size |f| at distance x from 0.
      const double scale = std::max(std::abs(value), nf * std::abs(s[0]) / std::pow(x_grid[i], n));
      const double slack = 100.0 * eps * scale;
      if (std::isfinite(value) && value < -10.0 * slack) {
        return Certificate{CertificateKind::derivative_sign, x_grid[i], n, value, {}};
      }
    }
  }
  return std::nullopt;
}

std::optional<Certificate> lcm_scan(const Expression& e, int max_order, std::span<const double> x_grid) {
  return cm_scan(e.neg_log(), max_order, x_grid);
}

ThresholdTable build_threshold_table(std::span<const double> beta_grid, const TableOptions& options) {
  ThresholdTable table;
  table.beta_grid.assign(beta_grid.begin(), beta_grid.end());
  for (double b : beta_grid) {
    const double p = psi_max(b);
    table.psi_max.push_back(p);
    table.l_values.push_back(near_one(b) ? 0.0 : near_two(b) ? 2.0 : b * (p - 1.0));
    if (options.with_c_bounds) {
      CBounds cb{0.0, 0.0};
      if (near_one(b)) {
        cb = {0.0, 0.0};
      } else {
        cb = c_bounds(std::min(b, 2.0), options.alpha_tol);
      }
      table.c_lower.push_back(cb.lower);
      table.c_upper.push_back(cb.upper);
    }
  }
  table.beta_star = beta_star(options.beta_star_tol);
  return table;
}

std::vector<std::string> table_violations(const ThresholdTable& t) {
  std::vector<std::string> out;
  const std::size_t n = t.beta_grid.size();
  if (t.psi_max.size() != n || t.l_values.size() != n) {
    out.push_back("column lengths differ");
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double b = t.beta_grid[i];
    const std::string at = " at beta = " + fmt(b);
    if (t.psi_max[i] < 1.0 - 1e-12 || t.psi_max[i] > 4.0 / b + 1e-12) out.push_back("psi_max outside [1, 4/beta]" + at);
    if (i == 0) continue;
    if (!(t.l_values[i] > t.l_values[i - 1])) out.push_back("l not strictly increasing" + at);
    if (t.l_values[i] / b < t.l_values[i - 1] / t.beta_grid[i - 1]) out.push_back("l/beta decreasing" + at);
    if (t.psi_max[i] < t.psi_max[i - 1]) out.push_back("psi_max decreasing" + at);
  }
  if (!t.c_lower.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double b = t.beta_grid[i];
      const std::string at = " at beta = " + fmt(b);
      if (t.c_lower[i] > t.c_upper[i]) out.push_back("c_lower > c_upper" + at);
      if (b > 1.0 && b < 2.0) {
        if (!(t.c_lower[i] > 0.0)) out.push_back("c_lower not positive" + at);
        if (t.c_upper[i] > 0.5 * b) out.push_back("c_upper above beta/2" + at);
        if (t.c_upper[i] > t.l_values[i]) out.push_back("c_upper above l" + at);
      }
    }
  }
  return out;
}

}  // namespace dagum::classify
