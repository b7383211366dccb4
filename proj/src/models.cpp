#include "dagum/models.hpp"

#include <cmath>
#include <string>

namespace dagum::models {

using numerics::TaylorSeries;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

void require_x_nonnegative(double x) {
  if (!(x >= 0.0) || std::isinf(x)) throw std::domain_error("argument must be finite and >= 0");
}

void require_x_positive(double x) {
  if (std::isnan(x) || x < 0.0 || std::isinf(x)) throw std::domain_error("argument must be finite and > 0");
  if (x == 0.0) throw Diverges("function has a pole at the origin");
}

// Closed forms shared by double and TaylorSeries arguments.

template <class T>
T dagum_generic(double beta, double gamma, const T& x) {
  using std::expm1, std::log1p, std::pow;
  return -expm1(-gamma * log1p(pow(x, -beta)));
}

template <class T>
T dagum_semivariogram_generic(double beta, double gamma, const T& x) {
  using std::exp, std::log1p, std::pow;
  return exp(-gamma * log1p(pow(x, -beta)));
}

template <class T>
T cauchy_generic(double theta, double eta, const T& x) {
  using std::exp, std::log1p, std::pow;
  return exp(-(eta / theta) * log1p(pow(x, theta)));
}

template <class T>
T cauchy_semivariogram_generic(double theta, double eta, const T& x) {
  using std::expm1, std::log1p, std::pow;
  return -expm1(-(eta / theta) * log1p(pow(x, theta)));
}

template <class T>
T aux_generic(double alpha, double beta, const T& x) {
  using std::pow;
  return pow(x, -alpha) / (1.0 + pow(x, beta));
}

template <class T>
T g_generic(double alpha, double lambda, const T& x) {
  using std::exp, std::log1p, std::pow;
  return pow(x, -alpha) * exp(-lambda * log1p(x * x));
}

template <class T>
T reduced_generic(double beta, double gamma, const T& x) {
  using std::exp, std::log1p, std::pow;
  return pow(x, beta * gamma - 1.0) * exp(-(gamma + 1.0) * log1p(pow(x, beta)));
}

template <class T>
T model_generic(const Model& m, const T& x) {
  switch (m.kind) {
    case ModelKind::dagum: return dagum_generic(m.p1, m.p2, x);
    case ModelKind::dagum5: return dagum_generic(m.p1, m.p2 / m.p1, x);
    case ModelKind::cauchy: return cauchy_generic(m.p1, m.p2, x);
    case ModelKind::aux: return aux_generic(m.p1, m.p2, x);
    case ModelKind::g: return g_generic(m.p1, m.p2, x);
  }
  throw std::invalid_argument("unsupported model");
}

template <class T>
T semivariogram_generic(const Model& m, const T& x) {
  switch (m.kind) {
    case ModelKind::dagum: return dagum_semivariogram_generic(m.p1, m.p2, x);
    case ModelKind::dagum5: return dagum_semivariogram_generic(m.p1, m.p2 / m.p1, x);
    case ModelKind::cauchy: return cauchy_semivariogram_generic(m.p1, m.p2, x);
    case ModelKind::aux:
    case ModelKind::g: break;
  }
  throw std::invalid_argument("semivariogram needs a correlation model");
}

template <class T>
T expression_generic(const Expression& e, const T& x) {
  using std::sin;
  switch (e.kind) {
    case ExprKind::model: return model_generic(e.model, x);
    case ExprKind::reduced_dagum: {
      const DagumParams p = e.model.as_dagum();
      return reduced_generic(p.beta, p.gamma, x);
    }
    case ExprKind::semivariogram: return semivariogram_generic(e.model, x);
    case ExprKind::sine: return sin(x);
    case ExprKind::reciprocal: return 1.0 / x;
  }
  throw std::invalid_argument("unsupported expression");
}

}  // namespace

Model Model::dagum(DagumParams p) { return Model{ModelKind::dagum, p.beta, p.gamma}; }
Model Model::dagum5(DagumSec5Params p) { return Model{ModelKind::dagum5, p.gamma5, p.epsilon}; }
Model Model::cauchy(CauchyParams p) { return Model{ModelKind::cauchy, p.theta, p.eta}; }
Model Model::aux(AuxParams p) { return Model{ModelKind::aux, p.alpha, p.beta}; }
Model Model::g(GParams p) { return Model{ModelKind::g, p.alpha, p.lambda}; }

void Model::validate() const {
  switch (kind) {
    case ModelKind::dagum:
      require(finite_positive(p1), "dagum: beta must be > 0");
      require(finite_positive(p2), "dagum: gamma must be > 0");
      return;
    case ModelKind::dagum5:
      require(finite_positive(p1) && p1 <= 2.0, "dagum5: gamma must lie in (0, 2]");
      require(finite_positive(p2) && p2 < p1, "dagum5: epsilon must lie in (0, gamma)");
      return;
    case ModelKind::cauchy:
      require(finite_positive(p1) && p1 <= 2.0, "cauchy: theta must lie in (0, 2]");
      require(finite_positive(p2), "cauchy: eta must be > 0");
      return;
    case ModelKind::aux:
      require(finite_nonnegative(p1), "aux: alpha must be >= 0");
      require(finite_nonnegative(p2), "aux: beta must be >= 0");
      return;
    case ModelKind::g:
      require(finite_nonnegative(p1), "g: alpha must be >= 0");
      require(finite_nonnegative(p2), "g: lambda must be >= 0");
      return;
  }
  throw std::invalid_argument("unknown model kind");
}

std::string_view Model::id() const { return to_string(kind); }

std::array<std::string_view, 2> Model::param_names() const {
  switch (kind) {
    case ModelKind::dagum: return {"beta", "gamma"};
    case ModelKind::dagum5: return {"gamma", "epsilon"};
    case ModelKind::cauchy: return {"theta", "eta"};
    case ModelKind::aux: return {"alpha", "beta"};
    case ModelKind::g: return {"alpha", "lambda"};
  }
  return {"", ""};
}

DagumParams Model::as_dagum() const {
  if (kind == ModelKind::dagum) return DagumParams{p1, p2};
  if (kind == ModelKind::dagum5) return DagumParams{p1, p2 / p1};
  throw std::invalid_argument("model is not a Dagum model");
}

ModelKind parse_model_kind(std::string_view id) {
  if (id == "dagum") return ModelKind::dagum;
  if (id == "dagum5") return ModelKind::dagum5;
  if (id == "cauchy") return ModelKind::cauchy;
  if (id == "aux") return ModelKind::aux;
  if (id == "g") return ModelKind::g;
  throw std::invalid_argument("unknown model '" + std::string(id) + "'");
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::dagum: return "dagum";
    case ModelKind::dagum5: return "dagum5";
    case ModelKind::cauchy: return "cauchy";
    case ModelKind::aux: return "aux";
    case ModelKind::g: return "g";
  }
  return "unknown";
}

bool is_correlation(ModelKind kind) {
  return kind == ModelKind::dagum || kind == ModelKind::dagum5 || kind == ModelKind::cauchy;
}

double dagum_eval(DagumParams p, double x) {
  Model::dagum(p).validate();
  require_x_nonnegative(x);
  if (x == 0.0) return 1.0;
  return dagum_generic(p.beta, p.gamma, x);
}

double dagum_sec5_eval(DagumSec5Params p, double t) {
  Model::dagum5(p).validate();
  require_x_nonnegative(t);
  if (t == 0.0) return 1.0;
  return dagum_generic(p.gamma5, p.epsilon / p.gamma5, t);
}

double cauchy_eval(CauchyParams p, double t) {
  Model::cauchy(p).validate();
  require_x_nonnegative(t);
  return cauchy_generic(p.theta, p.eta, t);
}

double aux_eval(AuxParams p, double x) {
  Model::aux(p).validate();
  if (x == 0.0 && p.alpha == 0.0) return 1.0;
  require_x_positive(x);
  return aux_generic(p.alpha, p.beta, x);
}

double g_eval(GParams p, double x) {
  Model::g(p).validate();
  if (x == 0.0 && p.alpha == 0.0) return 1.0;
  require_x_positive(x);
  return g_generic(p.alpha, p.lambda, x);
}

double reduced_dagum_eval(DagumParams p, double x) {
  Model::dagum(p).validate();
  const double e = p.beta * p.gamma - 1.0;
  if (x == 0.0 && e >= 0.0) return e == 0.0 ? 1.0 : 0.0;
  require_x_positive(x);
  return reduced_generic(p.beta, p.gamma, x);
}

double reduced_dagum_factored(DagumParams p, double x) {
  Model::dagum(p).validate();
  const double e = p.beta * p.gamma - 1.0;
  if (x == 0.0 && e >= 0.0) return e == 0.0 ? 1.0 : 0.0;
  require_x_positive(x);
  const double inner = std::pow(x, -e / (1.0 + p.gamma)) * (1.0 + std::pow(x, p.beta));
  return std::pow(1.0 / inner, 1.0 + p.gamma);
}

double evaluate(const Model& m, double x) {
  switch (m.kind) {
    case ModelKind::dagum: return dagum_eval(DagumParams{m.p1, m.p2}, x);
    case ModelKind::dagum5: return dagum_sec5_eval(DagumSec5Params{m.p1, m.p2}, x);
    case ModelKind::cauchy: return cauchy_eval(CauchyParams{m.p1, m.p2}, x);
    case ModelKind::aux: return aux_eval(AuxParams{m.p1, m.p2}, x);
    case ModelKind::g: return g_eval(GParams{m.p1, m.p2}, x);
  }
  throw std::invalid_argument("unsupported model");
}

double semivariogram(const Model& m, double t) {
  m.validate();
  require_x_nonnegative(t);
  if (t == 0.0) {
    if (!is_correlation(m.kind)) throw std::invalid_argument("semivariogram needs a correlation model");
    return 0.0;
  }
  return semivariogram_generic(m, t);
}

double evaluate(const Expression& e, double x) {
  if (e.kind != ExprKind::sine) {
    e.model.validate();
    require_x_positive(x);
  }
  if (!e.neg_log_derivative) return expression_generic(e, x);
  return taylor_eval(e, x, 0).value();
}

TaylorSeries taylor_eval(const Expression& e, double x0, int order) {
  if (order < 0) throw std::invalid_argument("taylor_eval: order must be >= 0");
  if (e.kind != ExprKind::sine) {
    e.model.validate();
    if (!(x0 > 0.0) || std::isinf(x0)) throw std::domain_error("taylor_eval: x0 must be > 0");
  }
  if (!e.neg_log_derivative) return expression_generic(e, TaylorSeries::variable(x0, order));
  const TaylorSeries f = expression_generic(e, TaylorSeries::variable(x0, order + 1));
  return -numerics::differentiate(log(f));
}

}  // namespace dagum::models
