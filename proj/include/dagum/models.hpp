#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dagum/numerics/taylor.hpp"

namespace dagum::models {

struct DagumParams {
  double beta;
  double gamma;
};

/// 1 - (t^gamma / (1 + t^gamma))^(epsilon / gamma).
struct DagumSec5Params {
  double gamma5;
  double epsilon;
};

/// (1 + t^theta)^(-eta / theta).
struct CauchyParams {
  double theta;
  double eta;
};

/// f(x) = 1 / (x^alpha (1 + x^beta)).
struct AuxParams {
  double alpha;
  double beta;
};

/// g(x) = 1 / (x^alpha (1 + x^2)^lambda).
struct GParams {
  double alpha;
  double lambda;
};

/// Raised when a function with a pole at the origin is evaluated there.
class Diverges : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ModelKind { dagum, dagum5, cauchy, aux, g };

/// A catalog member with its two parameters in the order of param_names().
struct Model {
  ModelKind kind;
  double p1;
  double p2;

  static Model dagum(DagumParams p);
  static Model dagum5(DagumSec5Params p);
  static Model cauchy(CauchyParams p);
  static Model aux(AuxParams p);
  static Model g(GParams p);

  /// Checks the parameter constraints; throws std::invalid_argument.
  void validate() const;

  std::string_view id() const;
  std::array<std::string_view, 2> param_names() const;

  /// Dagum parameters (beta, gamma) of a dagum or dagum5 model.
  DagumParams as_dagum() const;
};

/// Parses "dagum", "dagum5", "cauchy", "aux" or "g".
ModelKind parse_model_kind(std::string_view id);
std::string_view to_string(ModelKind kind);

/// Whether the model is a correlation function (value 1 at the origin).
bool is_correlation(ModelKind kind);

double dagum_eval(DagumParams p, double x);
double dagum_sec5_eval(DagumSec5Params p, double t);
double cauchy_eval(CauchyParams p, double t);
double aux_eval(AuxParams p, double x);
double g_eval(GParams p, double x);

/// x^(beta gamma - 1) / (1 + x^beta)^(gamma + 1).
double reduced_dagum_eval(DagumParams p, double x);

/// The same function written as (1 / (x^((1 - beta gamma)/(1 + gamma)) (1 + x^beta)))^(1 + gamma).
double reduced_dagum_factored(DagumParams p, double x);

/// Value of any catalog model at x.
double evaluate(const Model& m, double x);

/// 1 - rho(t) for correlation models.
double semivariogram(const Model& m, double t);

enum class ExprKind { model, reduced_dagum, semivariogram, sine, reciprocal };

/// A closed-form expression available to Taylor evaluation.
///
/// reduced_dagum uses the model's Dagum parameters.  With neg_log_derivative
/// set the expression is -(log f)'.
struct Expression {
  ExprKind kind = ExprKind::model;
  Model model{ModelKind::aux, 0.0, 0.0};
  bool neg_log_derivative = false;

  static Expression of(const Model& m) { return Expression{ExprKind::model, m, false}; }
  static Expression reduced(DagumParams p) { return Expression{ExprKind::reduced_dagum, Model::dagum(p), false}; }
  Expression neg_log() const {
    Expression e = *this;
    e.neg_log_derivative = true;
    return e;
  }
};

/// Value of the expression at x > 0.
double evaluate(const Expression& e, double x);

/// Taylor coefficients of the expression at x0 up to `order`.
///
/// sine is also accepted at x0 <= 0; everything else needs x0 > 0.
numerics::TaylorSeries taylor_eval(const Expression& e, double x0, int order);

}  // namespace dagum::models
