#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fup/fft.hpp"
#include "fup/random.hpp"

using namespace fup;

namespace {

ComplexVec direct_dft(const ComplexVec& u, bool adjoint) {
  const std::size_t n = u.size();
  ComplexVec out(n);
  const long double sign = adjoint ? 1.0L : -1.0L;
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<long double> acc{};
    for (std::size_t l = 0; l < n; ++l) {
      const long double angle =
          sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * l) % n) / n;
      acc += std::complex<long double>(std::cos(angle), std::sin(angle)) *
             std::complex<long double>(u[l].real(), u[l].imag());
    }
    acc /= std::sqrt(static_cast<long double>(n));
    out[j] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

ComplexVec random_vec(Rng& rng, std::size_t n) {
  ComplexVec u(n);
  for (auto& x : u) x = rng.complex_uniform();
  return u;
}

double max_diff(const ComplexVec& a, const ComplexVec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("fft") {
  TEST_CASE("delta maps to the constant column") {
    ComplexVec u(4);
    u[0] = 1.0;
    for (const auto& z : dft_apply(u)) CHECK(std::abs(z - cplx(0.5, 0.0)) < 1e-15);
  }

  TEST_CASE("matches direct summation") {
    Rng rng(11);
    for (std::size_t n : {1, 2, 3, 4, 6, 7, 8, 11, 12, 13, 30, 45, 49, 60, 97, 128, 210, 243, 250, 343, 374}) {
      const ComplexVec u = random_vec(rng, n);
      const double scale = std::sqrt(norm2(u));
      CHECK(max_diff(dft_apply(u), direct_dft(u, false)) <= 1e-12 * scale);
      CHECK(max_diff(dft_apply(u, Direction::kAdjoint), direct_dft(u, true)) <= 1e-12 * scale);
    }
  }

  TEST_CASE("unitarity and involution") {
    Rng rng(5);
    for (std::size_t n : {8, 27, 64, 243, 1024, 4096, 20480, 1000, 1331}) {
      const DftPlan plan(n);
      for (int t = 0; t < 5; ++t) {
        const ComplexVec u = random_vec(rng, n);
        const ComplexVec f = plan.apply(u, Direction::kForward);
        const double nu = std::sqrt(norm2(u));
        CHECK(std::abs(std::sqrt(norm2(f)) - nu) <= 1e-12 * nu);
        CHECK(max_diff(plan.apply(f, Direction::kAdjoint), u) <= 1e-12 * nu);
      }
    }
  }

  TEST_CASE("factorisation") {
    CHECK(DftPlan(20480).factors() == std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 5});
    CHECK(DftPlan(1331).factors() == std::vector<std::size_t>{11, 11, 11});
    CHECK(DftPlan(97).factors() == std::vector<std::size_t>{97});
  }
}
