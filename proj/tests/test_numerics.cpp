#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dagum/models.hpp"
#include "dagum/numerics/extrapolate.hpp"
#include "dagum/numerics/optimize.hpp"
#include "dagum/numerics/quadrature.hpp"
#include "dagum/numerics/taylor.hpp"

using namespace dagum::numerics;
using dagum::models::AuxParams;
using dagum::models::Expression;
using dagum::models::ExprKind;
using dagum::models::Model;
using dagum::models::taylor_eval;

namespace {

constexpr double kPi = std::numbers::pi;

Expression sine() { return Expression{ExprKind::sine, Model::aux({0.0, 0.0}), false}; }
Expression reciprocal() { return Expression{ExprKind::reciprocal, Model::aux({0.0, 0.0}), false}; }

}  // namespace

TEST_SUITE("taylor") {
  TEST_CASE("sine at the origin") {
    const TaylorSeries s = taylor_eval(sine(), 0.0, 5);
    const std::vector<double> want{0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0};
    REQUIRE(s.order() == 5);
    for (int k = 0; k <= 5; ++k) CHECK(s[k] == doctest::Approx(want[k]).epsilon(1e-15));
  }

  TEST_CASE("reciprocal at one alternates") {
    const TaylorSeries s = taylor_eval(reciprocal(), 1.0, 3);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(-1.0));
    CHECK(s[2] == doctest::Approx(1.0));
    CHECK(s[3] == doctest::Approx(-1.0));
  }

  TEST_CASE("second coefficient of 1/(1+x^2) at 0.1") {
    const TaylorSeries s = taylor_eval(Expression::of(Model::aux({0.0, 2.0})), 0.1, 2);
    const double x = 0.1;
    const double f2 = (6 * x * x - 2) / std::pow(1 + x * x, 3);
    CHECK(s[2] == doctest::Approx(f2 / 2).epsilon(1e-13));
    CHECK(s.derivative(2) < 0.0);
  }

  TEST_CASE("domain and order errors") {
    CHECK_THROWS(taylor_eval(Expression::of(Model::aux({0.5, 1.5})), 0.0, 3));
    CHECK_THROWS(taylor_eval(Expression::of(Model::aux({0.5, 1.5})), -1.0, 3));
    CHECK_THROWS(taylor_eval(reciprocal(), 1.0, -1));
  }

  TEST_CASE("product rule on catalog pairs") {
    const std::vector<Model> models{Model::aux({0.5, 1.5}), Model::dagum({1.5, 0.4}), Model::cauchy({1.2, 0.7}),
                                    Model::g({1.0, 0.5})};
    for (double x0 : {0.3, 1.0, 4.0}) {
      for (const Model& a : models) {
        for (const Model& b : models) {
          const int n = 8;
          const TaylorSeries fa = taylor_eval(Expression::of(a), x0, n);
          const TaylorSeries fb = taylor_eval(Expression::of(b), x0, n);
          const TaylorSeries prod = fa * fb;
          for (int k = 0; k <= n; ++k) {
            double cauchy = 0.0;
            double scale = 0.0;
            for (int i = 0; i <= k; ++i) {
              cauchy += fa[i] * fb[k - i];
              scale += std::abs(fa[i] * fb[k - i]);
            }
            CHECK(std::abs(prod[k] - cauchy) <= 1e-12 * scale + 1e-300);
          }
        }
      }
    }
  }

  TEST_CASE("first coefficient matches central differences") {
    const std::vector<Expression> exprs{
        Expression::of(Model::aux({0.5, 1.5})),   Expression::of(Model::aux({0.0, 2.0})),
        Expression::of(Model::dagum({1.5, 0.4})), Expression::of(Model::dagum5({1.0, 0.5})),
        Expression::of(Model::cauchy({1.2, 0.7})), Expression::of(Model::g({0.5, 0.5})),
        Expression::reduced({1.5, 0.4}),         Expression::of(Model::aux({1.0, 2.0})).neg_log()};
    for (const Expression& e : exprs) {
      for (double x0 : {0.2, 1.0, 3.0}) {
        const double h = 1e-5 * x0;
        const double fd = (dagum::models::evaluate(e, x0 + h) - dagum::models::evaluate(e, x0 - h)) / (2 * h);
        const double c1 = taylor_eval(e, x0, 3)[1];
        CHECK(std::abs(c1 - fd) <= 1e-6 * std::abs(c1));
      }
    }
  }

  TEST_CASE("elementary functions compose") {
    const TaylorSeries x = TaylorSeries::variable(0.7, 12);
    const TaylorSeries one = exp(log(x)) - x;
    const TaylorSeries pyth = sin(x) * sin(x) + cos(x) * cos(x);
    const TaylorSeries root = pow(x, 0.5);
    const TaylorSeries pw = pow(x, 2.5) / (x * x) - root;
    for (int k = 0; k <= 12; ++k) {
      CHECK(std::abs(one[k]) < 1e-14);
      CHECK(std::abs(pyth[k] - (k == 0 ? 1.0 : 0.0)) < 1e-14);
      CHECK(std::abs(pw[k]) <= 1e-13 * std::abs(root[k]));
    }
    const TaylorSeries d = differentiate(sin(x));
    const TaylorSeries c = cos(x);
    REQUIRE(d.order() == 11);
    for (int k = 0; k <= 11; ++k) CHECK(d[k] == doctest::Approx(c[k]).epsilon(1e-13));
  }

  TEST_CASE("mismatched operands are rejected") {
    CHECK_THROWS(TaylorSeries::variable(1.0, 3) + TaylorSeries::variable(1.0, 4));
    CHECK_THROWS(TaylorSeries::variable(1.0, 3) * TaylorSeries::variable(2.0, 3));
    CHECK_THROWS(TaylorSeries({}, 0.0));
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("exponential on the half line") {
    const QuadResult r = integrate([](double t) { return std::exp(-t); }, {0.0, INFINITY});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.abs_error >= 0.0);
  }

  TEST_CASE("truncation strategy on the half line") {
    QuadConfig cfg;
    cfg.tail_cutoff_strategy = TailStrategy::truncate_at_T;
    const QuadResult r = integrate([](double t) { return t * std::exp(-t); }, {0.0, INFINITY}, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("sine over a half period") {
    const QuadResult r = integrate([](double t) { return std::sin(t); }, {0.0, kPi});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("singular endpoint of the Lemma-type integral") {
    auto f = [](double s) { return std::sin(s) / std::sqrt(2 * kPi - s); };
    const QuadResult r = integrate(f, {0.0, 2 * kPi}, {}, {0.0, -0.5});
    CHECK(r.value < 0.0);
    CHECK(r.value == doctest::Approx(-0.860815449338031534).epsilon(1e-9));
  }

  TEST_CASE("integrable singularity at the lower endpoint") {
    const QuadResult r = integrate([](double s) { return std::pow(s, -0.7); }, {0.0, 1.0}, {}, {-0.7, 0.0});
    CHECK(r.value == doctest::Approx(1.0 / 0.3).epsilon(1e-10));
  }

  TEST_CASE("linearity within combined error") {
    auto f = [](double t) { return std::exp(-t) * std::cos(3 * t); };
    auto g = [](double t) { return 1.0 / (1.0 + t * t); };
    const double a = 2.5;
    const double b = -0.75;
    QuadConfig cfg;
    cfg.tail_cutoff_strategy = TailStrategy::truncate_at_T;
    const QuadResult rf = integrate(f, {0.0, INFINITY}, cfg);
    const QuadResult rg = integrate(g, {0.0, INFINITY}, cfg);
    const QuadResult rs = integrate([&](double t) { return a * f(t) + b * g(t); }, {0.0, INFINITY}, cfg);
    const double combined = rs.abs_error + std::abs(a) * rf.abs_error + std::abs(b) * rg.abs_error;
    CHECK(std::abs(rs.value - (a * rf.value + b * rg.value)) <= combined + 1e-15);
    CHECK(rg.value == doctest::Approx(kPi / 2).epsilon(1e-9));
  }

  TEST_CASE("non-convergence reports a partial estimate") {
    QuadConfig cfg;
    cfg.max_subdivisions = 2;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 1e-15;
    auto f = [](double t) { return std::sin(1.0 / t); };
    try {
      integrate(f, {1e-4, 1.0}, cfg);
      FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
      CHECK(std::isfinite(e.partial().value));
      CHECK(e.partial().subdivisions <= 2);
    }
  }

  TEST_CASE("invalid configuration") {
    QuadConfig cfg;
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, {NAN, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, {-INFINITY, 0.0}), std::invalid_argument);
  }

  TEST_CASE("reversed limits change the sign") {
    const QuadResult r = integrate([](double t) { return t * t; }, {3.0, 0.0});
    CHECK(r.value == doctest::Approx(-9.0));
  }
}

TEST_SUITE("optimize") {
  TEST_CASE("one minus cosine peaks at pi") {
    const Maximum m = maximize_1d([](double t) { return 1 - std::cos(t); }, {0.0, 2 * kPi}, 1e-10);
    CHECK(m.t_star == doctest::Approx(kPi).epsilon(1e-7));
    CHECK(m.f_star == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("downward parabola") {
    const Maximum m = maximize_1d([](double t) { return -(t - 1) * (t - 1); }, {0.0, 2.0}, 1e-10);
    CHECK(m.t_star == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(m.f_star) < 1e-12);
  }

  TEST_CASE("global maximum among several local ones") {
    auto f = [](double t) { return std::sin(t) + 0.1 * t; };
    const Maximum m = maximize_1d(f, {0.0, 20.0}, 1e-10);
    for (double t : linspace(0.0, 20.0, 20001)) CHECK(m.f_star >= f(t) - 1e-10);
  }

  TEST_CASE("adding a constant leaves the maximizer in place") {
    auto f = [](double t) { return std::exp(-t) * std::sin(2 * t); };
    const Maximum a = maximize_1d(f, {0.0, 10.0}, 1e-10);
    const Maximum b = maximize_1d([&](double t) { return f(t) + 17.0; }, {0.0, 10.0}, 1e-10);
    CHECK(std::abs(a.t_star - b.t_star) < 1e-6);
    CHECK(b.f_star - a.f_star == doctest::Approx(17.0));
  }

  TEST_CASE("bisection roots") {
    CHECK(find_root([](double x) { return x * x - 2; }, {1.0, 2.0}, 1e-12) == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(find_root([](double x) { return x; }, {-1.0, 1.0}, 1e-12)) < 1e-12);
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, {-1.0, 1.0}, 1e-12), NoSignChange);
    CHECK_THROWS_AS(Bracket({1.0, 1.0}).validate(), std::invalid_argument);
  }

  TEST_CASE("grids") {
    const auto l = linspace(0.0, 10.0, 11);
    REQUIRE(l.size() == 11);
    CHECK(l.front() == 0.0);
    CHECK(l.back() == 10.0);
    CHECK(l[3] == doctest::Approx(3.0));
    const auto g = geomspace(1e-3, 1e3, 7);
    REQUIRE(g.size() == 7);
    CHECK(g[3] == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(1e3));
    const auto d = geomspace(1e-2, 1e-4, 3);
    CHECK(d[1] == doctest::Approx(1e-3));
  }
}

TEST_SUITE("extrapolate") {
  TEST_CASE("partial sums of the alternating harmonic series") {
    std::vector<double> s;
    double acc = 0.0;
    for (int k = 1; k <= 12; ++k) {
      acc += (k % 2 ? 1.0 : -1.0) / k;
      s.push_back(acc);
    }
    const Extrapolation e = wynn_epsilon(s);
    CHECK(e.value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(std::abs(e.value - std::log(2.0)) < 100 * e.err_estimate + 1e-12);
  }

  TEST_CASE("constant sequences are fixed points") {
    const std::vector<double> s(6, 0.25);
    CHECK(wynn_epsilon(s).value == 0.25);
  }
}
