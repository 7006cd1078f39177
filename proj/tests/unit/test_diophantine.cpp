#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "fup/diophantine.hpp"
#include "fup/error.hpp"
#include "fup/random.hpp"

using namespace fup;

namespace {

constexpr double kPi = std::numbers::pi;

// Largest q <= Q admitting some b with |x - b/q| < 1/(q Q), by exhaustive search.
std::int64_t exhaustive_max_q(const ExactRational& x, std::int64_t mdelta) {
  std::int64_t best = 0;
  for (std::int64_t q = 1; q <= mdelta; ++q)
    for (std::int64_t b = 0; b <= q; ++b)
      if (std::gcd(b, q) == 1 && abs(x - ExactRational(b, q)) < ExactRational(1, q * mdelta)) best = q;
  return best;
}

double dist_to_int(double x) { return std::abs(x - std::round(x)); }

}  // namespace

TEST_SUITE("diophantine") {
  TEST_CASE("continued fractions and convergents") {
    CHECK(continued_fraction(ExactRational(5, 16)) == std::vector<std::int64_t>{0, 3, 5});
    const auto c = convergents(ExactRational(5, 16));
    CHECK(c == std::vector<ExactRational>{ExactRational(0), ExactRational(1, 3), ExactRational(5, 16)});
    CHECK(continued_fraction(ExactRational(-7, 3)) == std::vector<std::int64_t>{-3, 1, 2});
  }

  TEST_CASE("best_rational examples") {
    const auto one = best_rational(ExactRational(1), 16, 4);
    CHECK(one.b == 0);
    CHECK(one.q == 1);
    CHECK(one.gamma == 0.0);

    const auto r = best_rational(ExactRational(3, 2), 4, 2);
    CHECK(r.b == 1);
    CHECK(r.q == 2);
    CHECK(r.gamma == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.error == ExactRational(1, 8));

    const auto five = best_rational(ExactRational(5), 16, 4);
    CHECK(five.b == 1);
    CHECK(five.q == 3);
    CHECK(five.error == ExactRational(1, 48));
    CHECK(five.gamma == doctest::Approx(std::log(3.0) / std::log(16.0)).epsilon(1e-15));
    CHECK(five.strict_regime);

    CHECK_THROWS_AS(best_rational(ExactRational(1, 2), 16, 4), ParameterError);
    CHECK_THROWS_AS(best_rational(ExactRational(16), 16, 4), ParameterError);
  }

  TEST_CASE("best_rational matches exhaustive search") {
    for (std::int64_t m = 2; m <= 64; ++m)
      for (std::int64_t r = 1; r <= 8; ++r)
        for (std::int64_t p = r; p < m * r; ++p) {
          if (std::gcd(p, r) != 1) continue;
          const ExactRational alpha(p, r);
          const ExactRational x = alpha / ExactRational(m);
          for (std::int64_t mdelta = 1; mdelta * mdelta <= m; ++mdelta) {
            const auto got = best_rational(alpha, m, mdelta);
            REQUIRE(got.strict_regime);
            CHECK(got.q == exhaustive_max_q(x, mdelta));
          }
        }
  }

  TEST_CASE("F_1 special values and bound") {
    CHECK(std::abs(f1_eval(4, 0.0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(f1_eval(4, 0.25)) < 1e-15);
    CHECK(f1_abs(4, 0.25) < 1e-15);
    Rng rng(8);
    for (std::int64_t q : {2, 3, 4, 8, 17}) {
      const double qd = static_cast<double>(q);
      for (int t = 0; t < 10000; ++t) {
        const double x = rng.uniform(-2.0, 2.0);
        const double bound = std::min(qd, 1.0 / dist_to_int(x)) / qd;
        CHECK(f1_abs(q, x) <= bound + 1e-12);
        CHECK(std::abs(f1_abs(q, x) - std::abs(f1_eval(q, x))) <= 1e-12);
      }
    }
  }

  TEST_CASE("F_k recursion") {
    Rng rng(12);
    for (auto [m, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 2}, {9, 3}, {16, 4}}) {
      for (int k = 2; k <= 4; ++k) {
        const auto ck = cantor_elements(build_alphabet_initial(m, q), k);
        const auto ck1 = cantor_elements(build_alphabet_initial(m, q), k - 1);
        for (int t = 0; t < 200; ++t) {
          const double x = rng.dyadic(1.0);
          const cplx lhs = fk_eval(ck, x);
          const cplx rhs = f1_eval(q, x) * fk_eval(ck1, static_cast<double>(m) * x);
          CHECK(std::abs(lhs - rhs) <= 1e-12);
          CHECK(std::abs(lhs) <= 1.0 + 1e-12);
        }
      }
      CHECK(std::abs(fk_eval(cantor_elements(build_alphabet_initial(m, q), 3), 0.0) - cplx(1.0)) < 1e-15);
    }
  }

  TEST_CASE("f1_sup brackets the supremum") {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
      const double lo = rng.uniform();
      const double len = rng.uniform(0.0, 0.05);
      const auto s = f1_sup(5, lo, len, 64);
      double fine = 0.0;
      for (int i = 0; i <= 20000; ++i) fine = std::max(fine, f1_abs(5, lo + len * i / 20000.0));
      CHECK(s.grid_sup <= fine + 1e-15);
      CHECK(fine <= s.certified_sup + 1e-15);
    }
  }

  TEST_CASE("G bounds") {
    GBoundOptions fast{20000, 32};
    const auto g1 = g_bound(4, 2, ExactRational(1), fast);
    CHECK(g1.g_grid <= g1.g_upper);
    CHECK(g1.g_upper <= 12.0 * std::pow(4.0, -0.5) * 2.0);
    CHECK(g1.g_upper <= 2.0 * std::pow(4.0, -0.5) + 1e-12);

    const auto g5 = g_bound(16, 4, ExactRational(5), fast);
    CHECK(g5.approx.q == 3);
    CHECK(g5.g_upper <= 12.0 / 4.0 * (4.0 / 3.0 + std::log(3.0)));
    CHECK(g5.prop_rhs == doctest::Approx(3.0 * (4.0 / 3.0 + std::log(3.0))).epsilon(1e-14));

    for (auto alpha : {ExactRational(3, 2), ExactRational(7, 3)}) {
      const auto g = g_bound(9, 2, alpha, fast);
      CHECK(g.g_upper <= 2.0 * 2.0 / 9.0 + 1e-12);
    }
  }

  TEST_CASE("S_k against G^k") {
    GBoundOptions fast{20000, 32};
    const auto gu = g_bound(16, 4, ExactRational(5), fast).g_upper;
    const auto c1 = cantor_elements(build_alphabet_initial(16, 4), 1);
    CHECK(sk_estimate(c1, ExactRational(5), 5000) <= gu);
    const auto c2 = cantor_elements(build_alphabet_initial(16, 4), 2);
    CHECK(sk_estimate(c2, ExactRational(5), 5000) <= gu * gu);
    const auto g4 = g_bound(4, 2, ExactRational(1), fast).g_upper;
    const auto c3 = cantor_elements(build_alphabet_initial(4, 2), 3);
    CHECK(sk_estimate(c3, ExactRational(1), 5000) <= std::pow(g4, 3));
    CHECK_THROWS_AS(sk_estimate(cantor_elements(Alphabet(4, {0, 2}), 2), ExactRational(1)), ParameterError);
  }

  TEST_CASE("theorem2 report") {
    Theorem2Options opts;
    opts.g = {20000, 32};
    const auto r1 = theorem2_report(16, 4, 3, ExactRational(1), 0.0, opts);
    CHECK(r1.modulus == 4096);
    CHECK(r1.approx.gamma == 0.0);
    CHECK(r1.empirical_slack == doctest::Approx(0.5 - r1.delta - r1.report.beta));
    const auto r5 = theorem2_report(16, 4, 3, ExactRational(5), 0.0, opts);
    CHECK(r5.modulus == 20480);
    CHECK(r5.dilated_size == 64);
    CHECK(r5.report.beta > r1.report.beta);
    CHECK(r5.implied_constant > 0.0);
    CHECK_THROWS_AS(theorem2_report(16, 5, 2, ExactRational(1)), ParameterError);
  }
}
