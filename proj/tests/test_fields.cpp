#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "dagum/fields.hpp"
#include "dagum/rng.hpp"

using namespace dagum::fields;
using dagum::CounterRng;
using dagum::models::Model;

namespace {

PointSet line(std::initializer_list<double> xs) {
  PointSet ps;
  ps.points.resize(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) ps.points(i++, 0) = x;
  ps.id = "line";
  return ps;
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("deterministic per seed and stream") {
    CounterRng a(7, 3);
    CounterRng b(7, 3);
    CounterRng c(7, 4);
    CounterRng d(8, 3);
    int same_c = 0;
    int same_d = 0;
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next();
      CHECK(x == b.next());
      same_c += x == c.next();
      same_d += x == d.next();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
    CHECK(a.counter() == 100);
  }

  TEST_CASE("uniform and normal moments") {
    CounterRng r(1, 0);
    const int n = 200000;
    double su = 0.0;
    double sn = 0.0;
    double sn2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = r.uniform();
      CHECK_FALSE((u <= 0.0 || u >= 1.0));
      su += u;
    }
    for (int i = 0; i < n; ++i) {
      const double z = r.normal();
      sn += z;
      sn2 += z * z;
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
    for (int i = 0; i < 1000; ++i) {
      const auto k = r.integer(1, 10);
      CHECK(k >= 1);
      CHECK(k <= 10);
    }
  }
}

TEST_SUITE("gram") {
  TEST_CASE("two points on a line") {
    const Model m = Model::dagum({0.5, 1.0});
    const PointSet ps = line({0.0, 1.0});
    const Eigen::MatrixXd g = gram_matrix(m, ps, Convention::squared_distance);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 1) == 1.0);
    CHECK(g(0, 1) == doctest::Approx(0.5));
    CHECK(g(1, 0) == doctest::Approx(0.5));
    const PsdReport r = psd_check(m, ps, Convention::squared_distance);
    CHECK(r.verdict == PsdVerdict::psd);
    CHECK(r.min_eigenvalue == doctest::Approx(0.5));
    CHECK(r.max_eigenvalue == doctest::Approx(1.5));
    CHECK(r.tol == kEigenTol);
  }

  TEST_CASE("single point") {
    const Eigen::MatrixXd g = gram_matrix(Model::cauchy({1.0, 1.0}), line({3.0}), Convention::plain_distance);
    REQUIRE(g.rows() == 1);
    CHECK(g(0, 0) == 1.0);
  }

  TEST_CASE("conventions differ") {
    const Model m = Model::cauchy({1.0, 1.0});
    const PointSet ps = line({0.0, 1.0, 2.0});
    const Eigen::MatrixXd plain = gram_matrix(m, ps, Convention::plain_distance);
    CHECK(plain(0, 1) == doctest::Approx(0.5));
    CHECK(plain(1, 2) == doctest::Approx(0.5));
    CHECK(plain(0, 2) == doctest::Approx(1.0 / 3.0));
    const Eigen::MatrixXd sq = gram_matrix(m, ps, Convention::squared_distance);
    CHECK(sq(0, 2) == doctest::Approx(0.2));
    CHECK(parse_convention("plain") == Convention::plain_distance);
    CHECK(parse_convention("squared_distance") == Convention::squared_distance);
    CHECK_THROWS_AS(parse_convention("euclid"), std::invalid_argument);
  }

  TEST_CASE("diverging families are shifted") {
    const Model m = Model::aux({0.5, 1.5});
    CHECK(radial_kernel(m, 0.0) == 1.0);
    CHECK(radial_kernel(m, 2.0) == doctest::Approx(dagum::models::aux_eval({0.5, 1.5}, 3.0) /
                                                   dagum::models::aux_eval({0.5, 1.5}, 1.0)));
  }

  TEST_CASE("permutation equivariance") {
    const Model m = Model::dagum({1.5, 0.3});
    const PointSet ps = random_point_set(3, 40, 5.0, 11, 0);
    std::vector<int> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 7, perm.end());
    PointSet shuffled = ps;
    for (int i = 0; i < 40; ++i) shuffled.points.row(i) = ps.points.row(perm[static_cast<std::size_t>(i)]);
    const Eigen::MatrixXd a = gram_matrix(m, ps, Convention::squared_distance);
    const Eigen::MatrixXd b = gram_matrix(m, shuffled, Convention::squared_distance);
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) CHECK(b(i, j) == a(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
    }
    const PsdReport ra = psd_check(m, ps, Convention::squared_distance);
    const PsdReport rb = psd_check(m, shuffled, Convention::squared_distance);
    CHECK(ra.min_eigenvalue == doctest::Approx(rb.min_eigenvalue).epsilon(1e-10).scale(ra.max_eigenvalue));
    CHECK(ra.max_eigenvalue == doctest::Approx(rb.max_eigenvalue).epsilon(1e-12));
  }

  TEST_CASE("point sets") {
    const PointSet a = random_point_set(2, 50, 10.0, 3, 5);
    const PointSet b = random_point_set(2, 50, 10.0, 3, 5);
    CHECK(a.points == b.points);
    CHECK(a.id == b.id);
    CHECK(a.dimension() == 2);
    CHECK(a.size() == 50);
    CHECK(a.points.minCoeff() > 0.0);
    CHECK(a.points.maxCoeff() < 10.0);
    CHECK_NOTHROW(a.validate());
    CHECK_THROWS_AS(line({1.0, 2.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(random_point_set(0, 5, 1.0, 1, 1), std::invalid_argument);
  }
}

TEST_SUITE("psd") {
  TEST_CASE("proven model on 200 points in five dimensions") {
    const PsdReport r =
        psd_check(Model::dagum({0.5, 1.0}), random_point_set(5, 200, 10.0, 7, 0), Convention::squared_distance);
    CHECK(r.verdict == PsdVerdict::psd);
    CHECK(r.min_eigenvalue >= -kEigenTol * r.max_eigenvalue);
    CHECK(r.dimension == 5);
    CHECK(r.n_points == 200);
  }

  TEST_CASE("search finds nothing for a proven model") {
    CHECK_FALSE(nonpsd_search(Model::dagum({0.5, 1.0}), 10, 30, 40, 1).has_value());
  }

  TEST_CASE("search outcomes are genuine and reproducible") {
    for (const Model& m : {Model::dagum({3.0, 0.2}), Model::g({0.5, 0.5}), Model::dagum({1.5, 2.0 / 3.0})}) {
      const auto a = nonpsd_search(m, 10, 30, 60, 5);
      const auto b = nonpsd_search(m, 10, 30, 60, 5);
      REQUIRE(a.has_value() == b.has_value());
      if (a) {
        CHECK(a->report.verdict == PsdVerdict::indefinite);
        CHECK(a->report.min_eigenvalue < -kEigenTol * a->report.max_eigenvalue);
        CHECK(a->trial == b->trial);
        CHECK(a->point_set.points == b->point_set.points);
        const PsdReport again = psd_check(m, a->point_set, Convention::squared_distance);
        CHECK(again.min_eigenvalue == a->report.min_eigenvalue);
      }
    }
  }

  TEST_CASE("a non-permissible profile is detected") {
    const auto hit = nonpsd_search(Model::dagum({3.0, 1.0}), 3, 30, 40, 2);
    CHECK(hit.has_value());
  }
}

TEST_SUITE("simulation") {
  TEST_CASE("deterministic per seed") {
    const Model m = Model::dagum5({1.0, 0.5});
    const Profile a = simulate_profile(m, 128, 0.5, 9);
    const Profile b = simulate_profile(m, 128, 0.5, 9);
    const Profile c = simulate_profile(m, 128, 0.5, 10);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.seed == 9);
    CHECK(a.spacing == 0.5);
  }

  TEST_CASE("pair correlation in distribution") {
    const Model m = Model::cauchy({1.0, 1.0});
    double acc = 0.0;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
      const Profile p = simulate_profile(m, 2, 1.0, static_cast<std::uint64_t>(s));
      acc += p.values[0] * p.values[1];
    }
    CHECK(std::abs(acc / seeds - 0.5) <= 0.02);
  }

  TEST_CASE("unit variance") {
    const Model m = Model::dagum5({1.0, 0.5});
    double acc = 0.0;
    std::size_t count = 0;
    for (int s = 0; s < 100; ++s) {
      const Profile p = simulate_profile(m, 512, 1.0, static_cast<std::uint64_t>(s));
      for (double v : p.values) {
        CHECK(std::isfinite(v));
        acc += v * v;
      }
      count += p.values.size();
    }
    CHECK(std::abs(acc / static_cast<double>(count) - 1.0) <= 0.15);
  }

  TEST_CASE("failed factorization") {
    CHECK_THROWS_AS(simulate_profile(Model::dagum({3.0, 1.0}), 64, 0.1, 1), NotPermissible);
    CHECK_THROWS_AS(simulate_profile(Model::aux({0.5, 1.0}), 64, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_profile(Model::cauchy({1.0, 1.0}), 1, 0.1, 1), std::invalid_argument);
  }
}

TEST_SUITE("exponents") {
  TEST_CASE("local exponents") {
    CHECK(std::abs(estimate_local_exponent(Model::cauchy({1.0, 1.0})).value - 1.0) <= 0.02);
    CHECK(std::abs(estimate_local_exponent(Model::dagum5({1.0, 0.5})).value - 0.5) <= 0.02);
    CHECK(std::abs(estimate_local_exponent(Model::dagum5({2.0, 1.0})).value - 1.0) <= 0.02);
  }

  TEST_CASE("tail exponents") {
    CHECK(std::abs(estimate_hurst_exponent(Model::cauchy({1.0, 0.5})).value + 0.5) <= 0.02);
    CHECK(std::abs(estimate_hurst_exponent(Model::cauchy({2.0, 1.0})).value + 1.0) <= 0.02);
    // rho(t) ~ (epsilon / gamma) t^-gamma for the Dagum parametrization
    CHECK(std::abs(estimate_hurst_exponent(Model::dagum5({1.0, 0.5})).value + 1.0) <= 0.02);
    CHECK(std::abs(estimate_hurst_exponent(Model::dagum5({1.6, 0.5})).value + 1.6) <= 0.02);
  }

  TEST_CASE("local exponent ignores the tail parameter") {
    for (double eps : {0.25, 0.5, 1.0}) {
      std::vector<double> est;
      for (double g : {eps + 0.1, 1.2, 1.6, 2.0}) {
        if (g <= eps) continue;
        est.push_back(estimate_local_exponent(Model::dagum5({g, eps})).value);
      }
      const auto [lo, hi] = std::minmax_element(est.begin(), est.end());
      CHECK(*hi - *lo <= 0.03);
    }
  }

  TEST_CASE("least-squares slope is reported alongside") {
    const ExponentEstimate e = estimate_local_exponent(Model::cauchy({0.25, 1.0}));
    CHECK(std::abs(e.value - 0.25) <= 0.02);
    CHECK(e.err_estimate >= 0.0);
    CHECK(std::isfinite(e.ls_slope));
  }

  TEST_CASE("profile-based estimate") {
    for (const Model& m : {Model::cauchy({1.0, 1.0}), Model::cauchy({0.5, 1.0}), Model::dagum5({1.0, 0.5})}) {
      double acc = 0.0;
      const int seeds = 20;
      for (int s = 0; s < seeds; ++s) {
        acc += estimate_local_exponent(simulate_profile(m, 512, 0.01, static_cast<std::uint64_t>(s)));
      }
      const double want = m.kind == dagum::models::ModelKind::cauchy ? m.p1 : m.p2;
      CHECK(std::abs(acc / seeds - want) <= 0.15);
    }
  }

  TEST_CASE("estimators need correlation models") {
    CHECK_THROWS_AS(estimate_local_exponent(Model::aux({0.5, 1.0})), std::invalid_argument);
  }
}
