#include "fup/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fup/error.hpp"

namespace fup {
namespace {

constexpr double kPi = std::numbers::pi;

// exp(-2 pi i t) with t reduced mod 1 in extended precision.
cplx unit_phase(long double t) {
  t -= std::floor(t);
  const long double angle = -2.0L * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::vector<double> uniform_grid(double lo, double hi, std::int64_t points) {
  std::vector<double> ys(static_cast<std::size_t>(points));
  for (std::int64_t i = 0; i < points; ++i)
    ys[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return ys;
}

// |F_M(f_y)(l)|^2 for every l, where f_y(l) = f(l) exp(-2 pi i l y);
// equals |G_f(l/M + y)|^2.
void shifted_spectrum(const SeedFunction& seed, const DftPlan& plan, double y, ComplexVec& work,
                      ComplexVec& out) {
  const auto m = static_cast<std::size_t>(seed.base());
  for (std::size_t l = 0; l < m; ++l) {
    const cplx f = seed.values[l];
    work[l] = f == cplx{} ? cplx{} : f * unit_phase(static_cast<long double>(l) * y);
  }
  plan.apply(work, out, Direction::kForward);
}

}  // namespace

double SeedFunction::norm_squared() const { return norm2(values); }

double SeedFunction::l1_norm() const {
  double s = 0.0;
  for (const auto& z : values) s += std::abs(z);
  return s;
}

std::int64_t SeedFunction::support_span() const {
  std::int64_t lo = -1, hi = -1;
  for (std::size_t l = 0; l < values.size(); ++l) {
    if (values[l] != cplx{}) {
      if (lo < 0) lo = static_cast<std::int64_t>(l);
      hi = static_cast<std::int64_t>(l);
    }
  }
  return lo < 0 ? 0 : hi - lo;
}

SeedFunction SeedFunction::normalized() const {
  const double n = std::sqrt(norm_squared());
  SeedFunction out = *this;
  for (auto& z : out.values) z /= n;
  return out;
}

SeedFunction make_seed(const Alphabet& alphabet, ComplexVec values) {
  if (static_cast<std::int64_t>(values.size()) != alphabet.base())
    throw ParameterError("seed function must have length M");
  for (std::size_t l = 0; l < values.size(); ++l)
    if (values[l] != cplx{} && !alphabet.contains(static_cast<std::int64_t>(l)))
      throw ParameterError("seed function is nonzero off the alphabet at l = " + std::to_string(l));
  if (!(norm2(values) > 0.0)) throw ParameterError("seed function has zero norm");
  return SeedFunction{alphabet, std::move(values)};
}

SeedFunction indicator_seed(const Alphabet& alphabet) {
  ComplexVec v(static_cast<std::size_t>(alphabet.base()));
  for (std::int64_t a : alphabet.letters()) v[static_cast<std::size_t>(a)] = 1.0;
  return make_seed(alphabet, std::move(v));
}

SeedFunction gaussian_seed(const Alphabet& alphabet) {
  const auto m = static_cast<double>(alphabet.base());
  ComplexVec v(static_cast<std::size_t>(alphabet.base()));
  for (std::int64_t a : alphabet.letters()) {
    const double d = static_cast<double>(a) - m / 2.0;
    const double sign = (a % 2 == 0) ? 1.0 : -1.0;  // e^{i pi l}
    v[static_cast<std::size_t>(a)] = sign * std::exp(-kPi * d * d / m) / std::sqrt(m);
  }
  return make_seed(alphabet, std::move(v));
}

cplx symbol_eval(const SeedFunction& seed, double x) {
  const long double xr = static_cast<long double>(x) - std::floor(static_cast<long double>(x));
  cplx acc{};
  for (std::size_t l = 0; l < seed.values.size(); ++l) {
    if (seed.values[l] == cplx{}) continue;
    acc += seed.values[l] * unit_phase(static_cast<long double>(l) * xr);
  }
  return acc / std::sqrt(static_cast<double>(seed.base()));
}

ConvolutionChain convolution_chain(const SeedFunction& seed, int depth) {
  CantorSet cantor = cantor_elements(seed.alphabet, depth);
  const std::int64_t m = seed.base();
  ComplexVec u(static_cast<std::size_t>(cantor.modulus));
  for (std::int64_t n : cantor.elements) {
    cplx prod = 1.0;
    std::int64_t rest = n;
    for (int j = 0; j < depth; ++j) {
      prod *= seed.values[static_cast<std::size_t>(rest % m)];
      rest /= m;
    }
    u[static_cast<std::size_t>(n)] = prod;
  }
  return ConvolutionChain{seed, std::move(cantor), std::move(u)};
}

double verify_product_formula(const ConvolutionChain& chain) {
  if (chain.cantor.modulus > (std::int64_t{1} << 20))
    throw CapacityError("product formula check limited to M^k <= 2^20");
  const ComplexVec spectrum = dft_apply(chain.u, Direction::kForward);
  const std::int64_t m = chain.seed.base();
  double worst = 0.0;
  for (std::int64_t j = 0; j < chain.cantor.modulus; ++j) {
    cplx prod = 1.0;
    std::int64_t mr = 1;
    for (int r = 1; r <= chain.depth(); ++r) {
      mr *= m;
      prod *= symbol_eval(chain.seed, static_cast<double>(j % mr) / static_cast<double>(mr));
    }
    worst = std::max(worst, std::abs(spectrum[static_cast<std::size_t>(j)] - prod));
  }
  return worst;
}

std::vector<double> band_mass(const SeedFunction& seed, const std::vector<double>& ys) {
  const auto m = static_cast<std::size_t>(seed.base());
  const DftPlan plan(m);
  ComplexVec work(m), spec(m);
  std::vector<double> out(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    shifted_spectrum(seed, plan, ys[i], work, spec);
    double s = 0.0;
    for (std::int64_t a : seed.alphabet.letters()) s += std::norm(spec[static_cast<std::size_t>(a)]);
    out[i] = s;
  }
  return out;
}

ZCertificate z_certificate(const SeedFunction& seed, std::int64_t grid_points) {
  if (grid_points < 2) throw ParameterError("z_certificate needs at least 2 grid points");
  const double m = static_cast<double>(seed.base());
  const auto ys = uniform_grid(0.0, 1.0 / m, grid_points);
  const auto mass = band_mass(seed, ys);
  const auto it = std::min_element(mass.begin(), mass.end());

  ZCertificate z;
  z.grid_points = grid_points;
  z.z_grid_min = *it;
  z.argmin_y = ys[static_cast<std::size_t>(it - mass.begin())];
  z.grid_step = 1.0 / (m * static_cast<double>(grid_points - 1));
  // The band mass is a real trigonometric polynomial of degree span(supp f),
  // bounded by ||f||^2 on all of R; Bernstein bounds its derivative.
  z.lipschitz_bound = 2.0 * kPi * static_cast<double>(seed.support_span()) * seed.norm_squared();
  z.z_certified_lower = z.z_grid_min - z.lipschitz_bound * z.grid_step / 2.0;
  return z;
}

TailBoundCheck verify_tail_bound(std::int64_t base, double delta, std::int64_t y_samples) {
  if (y_samples < 2) throw ParameterError("verify_tail_bound needs at least 2 samples");
  const Alphabet alphabet = build_alphabet_interval(base, delta);
  const SeedFunction seed = gaussian_seed(alphabet);
  const auto m = static_cast<std::size_t>(base);
  const double md = static_cast<double>(base);

  const DftPlan plan(m);
  ComplexVec work(m), spec(m);
  std::vector<bool> in_alphabet(m, false);
  for (std::int64_t a : alphabet.letters()) in_alphabet[static_cast<std::size_t>(a)] = true;

  TailBoundCheck check;
  check.base = base;
  check.delta = delta;
  const auto ys = uniform_grid(0.0, 1.0 / md, y_samples);
  for (double y : ys) {
    shifted_spectrum(seed, plan, y, work, spec);
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l)
      if (!in_alphabet[l]) s += std::norm(spec[l]);
    if (s >= check.lhs_grid_max) {
      check.lhs_grid_max = s;
      check.worst_y = y;
    }
  }
  const double step = 1.0 / (md * static_cast<double>(y_samples - 1));
  const double lipschitz = 2.0 * kPi * static_cast<double>(seed.support_span()) * seed.norm_squared();
  check.lhs_certified = check.lhs_grid_max + lipschitz * step / 2.0;
  check.rhs = 60.0 / std::sqrt(md) * std::exp(-kPi / 4.0 * std::pow(md, 2.0 * delta - 1.0));
  check.holds = check.lhs_certified <= check.rhs;
  return check;
}

cplx gaussian_symbol_lattice(std::int64_t base, double x, double radius) {
  const double m = static_cast<double>(base);
  const auto lo = static_cast<std::int64_t>(std::ceil(m / 2.0 - radius));
  const auto hi = static_cast<std::int64_t>(std::floor(m / 2.0 + radius));
  const long double shift = static_cast<long double>(x) - 0.5L;
  cplx acc{};
  for (std::int64_t l = lo; l <= hi; ++l) {
    const double d = static_cast<double>(l) - m / 2.0;
    acc += std::exp(-kPi * d * d / m) * unit_phase(static_cast<long double>(l) * shift);
  }
  return acc / m;
}

cplx gaussian_symbol_theta(std::int64_t base, double x, int terms) {
  const double m = static_cast<double>(base);
  cplx acc{};
  for (int k = -terms; k <= terms; ++k) {
    const long double xi = static_cast<long double>(x) - 0.5L + k;
    const double amp = std::exp(-kPi * m * static_cast<double>(xi * xi));
    // exp(-pi i M xi) = exp(-2 pi i (M xi / 2))
    acc += amp * unit_phase(static_cast<long double>(m) * xi / 2.0L);
  }
  return acc / std::sqrt(m);
}

Theorem1Certificate theorem1_certificate(std::int64_t base, double delta, int depth,
                                         const Theorem1Options& opts) {
  Theorem1Certificate out;
  out.nominal_delta = delta;
  if (!(delta > 0.5 && delta < 1.0))
    out.warnings.push_back("delta outside (1/2, 1): the lower-bound construction is not in its stated regime");

  const Alphabet alphabet = build_alphabet_interval(base, delta);
  const SeedFunction raw = gaussian_seed(alphabet);
  const SeedFunction seed = raw.normalized();
  const double m = static_cast<double>(base);
  out.seed_norm_squared = raw.norm_squared();

  out.z = z_certificate(seed, opts.grid_points);
  out.tail = verify_tail_bound(base, delta, opts.grid_points);

  const ConvolutionChain chain = convolution_chain(seed, depth);
  const ComplexVec spectrum = dft_apply(chain.u, Direction::kForward);
  for (std::int64_t j : chain.cantor.elements) out.chain_lhs += std::norm(spectrum[static_cast<std::size_t>(j)]);
  const double zc = std::max(out.z.z_certified_lower, 0.0);
  out.chain_rhs = std::pow(zc, depth);
  out.chain_holds = out.chain_lhs >= out.chain_rhs - 1e-12;

  out.norm = masked_norm(chain.cantor.elements, chain.cantor.elements, chain.cantor.modulus, opts.power);
  out.report = beta_k(out.norm, chain.cantor);
  out.sigma_lower = std::pow(zc, depth / 2.0);
  out.sigma_above_lower = out.norm.sigma_max >= out.sigma_lower - opts.power.tol;
  out.beta_upper_from_z = zc > 0.0 ? -std::log(zc) / (2.0 * std::log(m)) : std::numeric_limits<double>::infinity();

  const double decay = std::exp(-kPi / 4.0 * std::pow(m, 2.0 * delta - 1.0));
  out.beta_bound = 170.0 * decay;
  out.beta_within_bound = out.report.beta <= out.beta_bound + 1e-6;

  out.norm_lower_ok = out.seed_norm_squared >= 1.0 / (2.0 * std::sqrt(2.0 * m));
  out.width_ok = base >= 4 && 1.0 - 2.0 / std::pow(m, delta) >= 0.5;
  const double x = 340.0 * decay;
  out.exp_step_ok = 1.0 - x / 2.0 >= std::exp(-x);

  if (!out.norm_lower_ok) out.warnings.push_back("||f||^2 >= 1/(2 sqrt(2M)) fails at this M");
  if (!out.width_ok) out.warnings.push_back("M below the regime 1 - 2/M^delta >= 1/2 used by the tail estimate");
  if (!out.tail.holds) out.warnings.push_back("tail estimate 60 M^{-1/2} exp(-(pi/4) M^{2 delta - 1}) fails numerically");
  if (!out.exp_step_ok) out.warnings.push_back("1 - x/2 >= e^{-x} fails at x = 340 exp(-(pi/4) M^{2 delta - 1})");
  if (!out.chain_holds) out.warnings.push_back("chain inequality ||1_C F u_k||^2 >= Z^k violated");
  if (!out.sigma_above_lower) out.warnings.push_back("computed sigma below the certified lower bound");
  out.binding = out.warnings.empty();
  return out;
}

}  // namespace fup
