#include "fup/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fup/error.hpp"

namespace fup {
namespace {

constexpr double kPi = std::numbers::pi;

cplx unit_phase(long double t) {
  t -= std::floor(t);
  const long double angle = -2.0L * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

bool admissible(const ExactRational& x, std::int64_t b, std::int64_t q, std::int64_t mdelta, bool strict) {
  const ExactRational err = abs(x - ExactRational(b, q));
  const ExactRational bound(1, q * mdelta);
  return strict ? err < bound : err <= bound;
}

}  // namespace

std::vector<std::int64_t> continued_fraction(const ExactRational& x) {
  std::vector<std::int64_t> terms;
  std::int64_t num = x.numerator(), den = x.denominator();
  while (den != 0) {
    std::int64_t a = num / den;
    if (num % den != 0 && num < 0) --a;  // floor
    terms.push_back(a);
    const std::int64_t r = num - a * den;
    num = den;
    den = r;
  }
  return terms;
}

std::vector<ExactRational> convergents(const ExactRational& x) {
  std::vector<ExactRational> out;
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{-1}/q_{-1}, p_{-2}/q_{-2}
  for (std::int64_t a : continued_fraction(x)) {
    const std::int64_t p = a * p0 + p1;
    const std::int64_t q = a * q0 + q1;
    out.emplace_back(p, q);
    p1 = p0;
    q1 = q0;
    p0 = p;
    q0 = q;
  }
  return out;
}

RationalApprox best_rational(const ExactRational& alpha, std::int64_t base, std::int64_t mdelta) {
  if (base < 2) throw ParameterError("best_rational needs M >= 2");
  if (mdelta < 1 || mdelta > base) throw ParameterError("best_rational needs 1 <= Mdelta <= M");
  if (alpha < ExactRational(1) || alpha >= ExactRational(base))
    throw ParameterError("best_rational needs 1 <= alpha < M");
  const ExactRational x = alpha / ExactRational(base);

  // Walk convergents and the intermediate fractions between them, in
  // increasing denominator order, keeping the admissible one with largest q.
  std::int64_t best_b = -1, best_q = 0;
  std::int64_t p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  bool done = false;
  for (std::int64_t a : continued_fraction(x)) {
    const std::int64_t first = (q_prev == 0 || a == 0) ? a : 1;
    for (std::int64_t s = first; s <= a; ++s) {
      const std::int64_t p = s * p_prev + p_prev2;
      const std::int64_t q = s * q_prev + q_prev2;
      if (q > mdelta) {
        done = true;
        break;
      }
      if (q > 0 && q >= best_q && admissible(x, p, q, mdelta, true)) {
        best_b = p;
        best_q = q;
      }
    }
    if (done) break;
    const std::int64_t p = a * p_prev + p_prev2;
    const std::int64_t q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  if (best_q == 0) throw std::logic_error("no admissible fraction found; Dirichlet guarantees q = 1 works");

  RationalApprox r;
  r.b = best_b;
  r.q = best_q;
  r.mdelta = mdelta;
  r.gamma = std::log(static_cast<double>(best_q)) / std::log(static_cast<double>(base));
  r.error = abs(x - ExactRational(best_b, best_q));
  r.strict_regime = admissible(x, best_b, best_q, mdelta, true);
  r.weak_regime = admissible(x, best_b, best_q, mdelta, false);
  return r;
}

cplx f1_eval(std::int64_t mdelta, double x) {
  const long double xr = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
  cplx acc{};
  for (std::int64_t j = 0; j < mdelta; ++j) acc += unit_phase(static_cast<long double>(j) * xr);
  return acc / static_cast<double>(mdelta);
}

double f1_abs(std::int64_t mdelta, double x) {
  const double xr = x - std::round(x);  // in [-1/2, 1/2]
  const double s = std::sin(kPi * xr);
  if (std::abs(s) < 1e-4) return std::abs(f1_eval(mdelta, xr));
  return std::abs(std::sin(kPi * static_cast<double>(mdelta) * xr) / (static_cast<double>(mdelta) * s));
}

SupBracket f1_sup(std::int64_t mdelta, double lo, double length, int points) {
  if (points < 2) throw ParameterError("f1_sup needs at least 2 points");
  SupBracket out;
  const double step = length / (points - 1);
  for (int i = 0; i < points; ++i) out.grid_sup = std::max(out.grid_sup, f1_abs(mdelta, lo + i * step));
  const double lipschitz = kPi * static_cast<double>(mdelta - 1);
  out.certified_sup = std::min(1.0, out.grid_sup + lipschitz * step / 2.0);
  return out;
}

cplx fk_eval(const CantorSet& cantor, double x) {
  const long double xr = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
  cplx acc{};
  for (std::int64_t l : cantor.elements) acc += unit_phase(static_cast<long double>(l) * xr);
  return acc / static_cast<double>(cantor.elements.size());  // M^{-delta k} = |A|^{-k}
}

ExpSumBounds g_bound(std::int64_t base, std::int64_t mdelta, const ExactRational& alpha,
                     const GBoundOptions& opts) {
  if (mdelta < 2 || mdelta > base) throw ParameterError("g_bound needs 2 <= Mdelta <= M");
  if (opts.outer_points < 1) throw ParameterError("g_bound needs outer_points >= 1");
  ExpSumBounds out;
  out.base = base;
  out.mdelta = mdelta;
  out.depth = 1;
  out.alpha = alpha;
  out.delta = std::log(static_cast<double>(mdelta)) / std::log(static_cast<double>(base));
  out.approx = best_rational(alpha, base, mdelta);
  out.outer_points = opts.outer_points;
  out.inner_points = opts.inner_points;
  out.outer_step = 1.0 / static_cast<double>(opts.outer_points);

  const double m = static_cast<double>(base);
  const double a = alpha.to_double();
  const double shift = a / m;                                      // eta step
  const double window = a * static_cast<double>(mdelta) / (m * m);  // alpha (max A + 1) / M^2
  const double prefactor = static_cast<double>(mdelta) / m;        // M^{-(1-delta)}

  double best_grid = 0.0, best_upper = 0.0;
  for (std::int64_t i = 0; i < opts.outer_points; ++i) {
    const double x = static_cast<double>(i) * out.outer_step;
    double grid_sum = 0.0, upper_sum = 0.0;
    for (std::int64_t j = 0; j < mdelta; ++j) {
      const SupBracket s = f1_sup(mdelta, x + shift * static_cast<double>(j), window, opts.inner_points);
      grid_sum += s.grid_sup;
      upper_sum += s.certified_sup;
    }
    best_grid = std::max(best_grid, grid_sum);
    best_upper = std::max(best_upper, upper_sum);
  }
  // Each summand is pi (Q - 1)-Lipschitz in x, and the sum is 1-periodic.
  out.outer_lipschitz = static_cast<double>(mdelta) * kPi * static_cast<double>(mdelta - 1);
  const double upper = std::min(best_upper + out.outer_lipschitz * out.outer_step / 2.0, static_cast<double>(mdelta));
  out.g_grid = prefactor * best_grid;
  out.g_upper = prefactor * upper;

  const double q = static_cast<double>(out.approx.q);
  out.prop_rhs = 12.0 / std::pow(m, 1.0 - out.delta) * (static_cast<double>(mdelta) / q + std::log(q));
  return out;
}

double sk_estimate(const CantorSet& cantor, const ExactRational& alpha, std::int64_t grid) {
  if (cantor.depth > 4 || cantor.elements.size() > 4096)
    throw CapacityError("sk_estimate limited to k <= 4 and |C_k| <= 4096");
  if (grid < 1) throw ParameterError("sk_estimate needs grid >= 1");
  const std::int64_t base = cantor.alphabet.base();
  const std::int64_t q = cantor.alphabet.size();
  if (!cantor.alphabet.is_initial_segment())
    throw ParameterError("sk_estimate expects the alphabet {0, ..., Q-1}");
  const double m = static_cast<double>(base);
  const double scale = alpha.to_double() / static_cast<double>(cantor.modulus);  // alpha M^{-k}

  // |F_k(x)| = prod_{r<k} |F_1(M^r x)|.
  auto fk_abs = [&](double x) {
    double prod = 1.0;
    double y = x - std::floor(x);
    for (int r = 0; r < cantor.depth; ++r) {
      prod *= f1_abs(q, y);
      y = y * m;
      y -= std::floor(y);
    }
    return prod;
  };

  double best = 0.0;
  for (std::int64_t i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    double s = 0.0;
    for (std::int64_t j : cantor.elements) s += fk_abs(x + scale * static_cast<double>(j));
    best = std::max(best, s);
  }
  const double prefactor = std::pow(static_cast<double>(q) / m, cantor.depth);  // M^{-(1-delta)k}
  return prefactor * best;
}

Theorem2Report theorem2_report(std::int64_t base, std::int64_t mdelta, int depth, const ExactRational& alpha,
                               double eps, const Theorem2Options& opts) {
  if (mdelta < 2 || mdelta > base) throw ParameterError("theorem2 needs 2 <= Mdelta <= M");
  if (!initial_alphabet_in_dilation_regime(base, mdelta))
    throw ParameterError("theorem2 requires 0 < delta <= 1/2, i.e. Mdelta^2 <= M");

  Theorem2Report r;
  r.base = base;
  r.mdelta = mdelta;
  r.depth = depth;
  r.alpha = alpha;
  r.eps = eps;

  const Alphabet alphabet = build_alphabet_initial(base, mdelta);
  const CantorSet cantor = cantor_elements(alphabet, depth);
  const DilatedCantorSet dilated = dilate(cantor, alpha);
  r.modulus = dilated.modulus;
  r.delta = alphabet.dimension();
  r.dilated_size = static_cast<std::int64_t>(dilated.elements.size());
  r.approx = best_rational(alpha, base, mdelta);

  r.norm = masked_norm(dilated.elements, dilated.elements, dilated.modulus, opts.power);
  r.report = beta_dilated(r.norm, dilated);
  const double main_term = 0.5 - r.delta + r.approx.gamma / 2.0;
  r.target_exponent = main_term - eps;
  r.empirical_slack = main_term - r.report.beta;

  r.g = g_bound(base, mdelta, alpha, opts.g);
  r.g.depth = depth;
  r.implied_constant = r.norm.sigma_max * r.norm.sigma_max / (alpha.to_double() * std::pow(r.g.g_upper, depth));
  return r;
}

}  // namespace fup
