#pragma once

// Upper-bound machinery for dilated Cantor sets: rational approximation of
// alpha/M, the exponential sums F_k, and the quantities G and S_k.

#include <cstdint>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/fft.hpp"
#include "fup/rational.hpp"
#include "fup/spectral.hpp"

namespace fup {

/// Simple continued fraction terms [a_0; a_1, ...] of a rational.
std::vector<std::int64_t> continued_fraction(const ExactRational& x);

/// Convergents p_n/q_n of x.
std::vector<ExactRational> convergents(const ExactRational& x);

struct RationalApprox {
  std::int64_t b = 0;
  std::int64_t q = 1;
  std::int64_t mdelta = 1;     // denominator budget Q = M^delta
  double gamma = 0.0;          // log q / log M
  ExactRational error;         // |alpha/M - b/q|
  bool strict_regime = false;  // error <  1/(q Q)
  bool weak_regime = false;    // error <= 1/(q Q)
};

/// The admissible fraction b/q (q <= Mdelta, |alpha/M - b/q| < 1/(q Mdelta))
/// with the largest denominator. Candidates are the convergents and
/// intermediate fractions of the continued fraction of alpha/M.
RationalApprox best_rational(const ExactRational& alpha, std::int64_t base, std::int64_t mdelta);

/// F_1(x) = Q^{-1} sum_{j<Q} exp(-2 pi i j x), by direct summation.
cplx f1_eval(std::int64_t mdelta, double x);

/// |F_1(x)| = |sin(pi Q x) / (Q sin(pi x))|, with a direct sum near integers.
double f1_abs(std::int64_t mdelta, double x);

struct SupBracket {
  double grid_sup = 0.0;       // max over the sample points (a lower bound)
  double certified_sup = 0.0;  // grid_sup + Lipschitz slack, capped at 1
};

/// Encloses sup |F_1| over [lo, lo + length] using `points` samples and
/// |d/dx F_1| <= pi (Q - 1).
SupBracket f1_sup(std::int64_t mdelta, double lo, double length, int points = 64);

/// F_k(x) = M^{-delta k} sum_{l in C_k} exp(-2 pi i l x), by direct summation.
cplx fk_eval(const CantorSet& cantor, double x);

struct ExpSumBounds {
  std::int64_t base = 0;
  std::int64_t mdelta = 0;
  int depth = 0;
  double delta = 0.0;
  ExactRational alpha;
  double g_grid = 0.0;   // lower estimate of G
  double g_upper = 0.0;  // certified upper bound on G
  double s_k_grid = 0.0; // lower estimate of S_k (0 when not computed)
  std::int64_t outer_points = 0;
  double outer_step = 0.0;
  int inner_points = 0;
  double outer_lipschitz = 0.0;
  double prop_rhs = 0.0;  // 12 M^{delta-1} (Q/q + log q) for the best admissible q
  RationalApprox approx;
};

struct GBoundOptions {
  std::int64_t outer_points = 200000;
  int inner_points = 64;
};

/// G = M^{-(1-delta)} sup_x sum_{j<Q} sup_{x + (alpha/M) j + [0, alpha Q / M^2]} |F_1|
/// for the alphabet {0, ..., Q-1}; returns a grid lower estimate and a
/// certified upper bound.
ExpSumBounds g_bound(std::int64_t base, std::int64_t mdelta, const ExactRational& alpha,
                     const GBoundOptions& opts = {});

/// Grid lower estimate of S_k = M^{-(1-delta)k} sup_x sum_{j in C_k} |F_k(x + alpha M^{-k} j)|.
double sk_estimate(const CantorSet& cantor, const ExactRational& alpha, std::int64_t grid = 20000);

struct Theorem2Options {
  PowerIterationOptions power{};
  GBoundOptions g{};
};

struct Theorem2Report {
  std::int64_t base = 0;
  std::int64_t mdelta = 0;
  int depth = 0;
  ExactRational alpha;
  std::int64_t modulus = 0;  // N
  double delta = 0.0;
  double eps = 0.0;
  std::int64_t dilated_size = 0;
  RationalApprox approx;
  NormCertificate norm;
  FupExponentReport report;      // beta = -log(sigma) / log N
  double target_exponent = 0.0;  // 1/2 - delta + gamma/2 - eps
  double empirical_slack = 0.0;  // (1/2 - delta + gamma/2) - beta_k(N)
  ExpSumBounds g;
  double implied_constant = 0.0;  // sigma^2 / (alpha G_upper^k); reported only
};

/// Computes ||1_{C_k(N)} F_N 1_{C_k(N)}|| and the associated Diophantine data.
/// Refuses Mdelta^2 > M.
Theorem2Report theorem2_report(std::int64_t base, std::int64_t mdelta, int depth,
                               const ExactRational& alpha, double eps = 0.0,
                               const Theorem2Options& opts = {});

}  // namespace fup
