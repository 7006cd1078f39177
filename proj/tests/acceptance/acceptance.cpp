// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fup/baker.hpp"
#include "fup/cantor.hpp"
#include "fup/diophantine.hpp"
#include "fup/error.hpp"
#include "fup/fft.hpp"
#include "fup/random.hpp"
#include "fup/spectral.hpp"
#include "fup/svg.hpp"
#include "fup/sweep.hpp"
#include "fup/testfn.hpp"

using namespace fup;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Collects failures for one criterion; detail lines are printed under the verdict.
struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  template <class... Args>
  void note(const char* fmt, Args... args) {
    if constexpr (sizeof...(Args) == 0) {
      notes.emplace_back(fmt);
    } else {
      char buf[512];
      std::snprintf(buf, sizeof buf, fmt, args...);
      notes.emplace_back(buf);
    }
  }
  template <class... Args>
  void expect(bool cond, const char* fmt, Args... args) {
    if (cond) return;
    ok = false;
    note(fmt, args...);
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 for no runtime requirement
  std::function<void(Check&)> body;
};

cplx symbol(const SeedFunction& f, double x) {
  cplx acc{};
  for (std::size_t l = 0; l < f.values.size(); ++l)
    if (f.values[l] != cplx{})
      acc += f.values[l] * std::polar(1.0, -2.0 * kPi * std::fmod(static_cast<double>(l) * x, 1.0));
  return acc / std::sqrt(static_cast<double>(f.base()));
}

double l1(const SeedFunction& f) {
  double s = 0.0;
  for (auto v : f.values) s += std::abs(v);
  return s;
}

double sq(const ComplexVec& v) {
  double s = 0.0;
  for (auto z : v) s += std::norm(z);
  return s;
}

double dist_to_int(double x) { return std::abs(x - std::round(x)); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Alphabet> interval_alphabets(std::int64_t max_m) {
  std::vector<Alphabet> out;
  for (std::int64_t m = 4; m <= max_m; ++m)
    for (double delta : {0.6, 0.75, 0.9})
      if (std::pow(static_cast<double>(m), delta) > 2.0) out.push_back(build_alphabet_interval(m, delta));
  return out;
}

std::vector<Alphabet> initial_alphabets(std::int64_t max_m) {
  std::vector<Alphabet> out;
  for (std::int64_t m = 2; m <= max_m; ++m)
    for (std::int64_t q = 1; q * q <= m; ++q) out.push_back(build_alphabet_initial(m, q));
  return out;
}

void c1_dft_unitarity(Check& c) {
  Rng rng(101);
  double worst = 0.0;
  for (std::size_t n : {8, 27, 64, 243, 1024, 4096}) {
    const DftPlan plan(n);
    for (int t = 0; t < 20; ++t) {
      ComplexVec u(n);
      for (auto& z : u) z = rng.complex_uniform();
      const double nu = std::sqrt(sq(u));
      const double dev = std::abs(std::sqrt(sq(plan.apply(u, Direction::kForward))) - nu) / nu;
      worst = std::max(worst, dev);
      c.expect(dev <= 1e-12, "N=%zu relative deviation %.3e", n, dev);
    }
  }
  c.note("max relative deviation %.3e", worst);
}

void c2_oracle_equivalence(Check& c) {
  Rng rng(102);
  int cases = 0;
  double worst = 0.0;
  for (std::int64_t m = 2; m <= 8; ++m) {
    std::vector<std::vector<std::int64_t>> alphabets;
    const std::int64_t subsets = std::int64_t{1} << m;
    if (m <= 4) {
      for (std::int64_t mask = 1; mask < subsets; ++mask) {
        std::vector<std::int64_t> letters;
        for (std::int64_t l = 0; l < m; ++l)
          if (mask >> l & 1) letters.push_back(l);
        alphabets.push_back(letters);
      }
    } else {
      for (std::int64_t q = 1; q * q <= m; ++q) alphabets.push_back(build_alphabet_initial(m, q).letters());
      for (double delta : {0.6, 0.75, 0.9})
        if (std::pow(static_cast<double>(m), delta) > 2.0)
          alphabets.push_back(build_alphabet_interval(m, delta).letters());
      for (int t = 0; t < 6; ++t) {
        const auto mask = static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(subsets - 1)) + 1;
        std::vector<std::int64_t> letters;
        for (std::int64_t l = 0; l < m; ++l)
          if (mask >> l & 1) letters.push_back(l);
        alphabets.push_back(letters);
      }
    }
    for (const auto& letters : alphabets) {
      const Alphabet a(m, letters);
      for (int k = 1; k <= 3; ++k) {
        const CantorSet cs = cantor_elements(a, k);
        if (cs.modulus > 512) break;
        const auto pow = masked_norm(cs.elements, cs.elements, cs.modulus);
        const auto dense = masked_norm_dense(cs.elements, cs.elements, cs.modulus);
        const double dev = std::abs(pow.sigma_max - dense.sigma_max);
        worst = std::max(worst, dev);
        ++cases;
        c.expect(dev <= 1e-8, "M=%lld |A|=%zu k=%d power %.15f dense %.15f", static_cast<long long>(m),
                 letters.size(), k, pow.sigma_max, dense.sigma_max);
      }
    }
  }
  c.note("%d Cantor submatrices, max |sigma_power - sigma_dense| = %.3e", cases, worst);
}

void c3_sandwich(Check& c) {
  auto alphabets = interval_alphabets(16);
  for (auto& a : initial_alphabets(16)) alphabets.push_back(a);
  int cases = 0;
  for (const auto& a : alphabets)
    for (int k = 1; k <= 3; ++k) {
      const CantorSet cs = cantor_elements(a, k);
      const auto cert = masked_norm(cs.elements, cs.elements, cs.modulus);
      const double delta = std::log(static_cast<double>(a.size())) / std::log(static_cast<double>(a.base()));
      const double beta = -std::log(cert.sigma_max) / (k * std::log(static_cast<double>(a.base())));
      const double lo = std::max(0.0, 0.5 - delta), hi = 0.5 - delta / 2.0;
      ++cases;
      c.expect(lo - 1e-9 <= beta && beta <= hi + 1e-9, "M=%lld |A|=%lld k=%d beta %.12f outside [%.12f, %.12f]",
               static_cast<long long>(a.base()), static_cast<long long>(a.size()), k, beta, lo, hi);
    }
  c.note("%d (alphabet, k) cases", cases);
}

void c4_exact_small(Check& c) {
  // 2x2 oracle: rows and columns {0, 2} of F_3.
  const double s = 1.0 / std::sqrt(3.0);
  const cplx w = std::polar(1.0, -2.0 * kPi * 4.0 / 3.0);
  const cplx a[2][2] = {{s, s}, {s, s * w}};
  cplx g[2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r) g[i][j] += std::conj(a[r][i]) * a[r][j];
  const double tr = (g[0][0] + g[1][1]).real();
  const double det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).real();
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  const double l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
  c.expect(std::abs(l1 - 1.0) <= 1e-14 && std::abs(l2 - 1.0 / 3.0) <= 1e-14, "oracle eigenvalues %.15f %.15f", l1, l2);

  const CantorSet cs = cantor_elements(Alphabet(3, {0, 2}), 1);
  const auto cert = masked_norm(cs.elements, cs.elements, cs.modulus);
  c.expect(std::abs(cert.sigma_max - 1.0) <= 1e-10, "sigma_max %.15f", cert.sigma_max);
  c.expect(std::abs(cert.sigma_max - std::sqrt(l1)) <= 1e-10, "sigma vs oracle %.15f", std::sqrt(l1));
  c.note("sigma_max = %.15f, Gram eigenvalues {%.15f, %.15f}", cert.sigma_max, l1, l2);
}

std::vector<SeedFunction> small_grid_seeds() {
  std::vector<Alphabet> alphabets{Alphabet(3, {0, 2}), Alphabet(5, {0, 2, 4})};
  for (auto& a : interval_alphabets(16)) alphabets.push_back(a);
  for (auto& a : initial_alphabets(16))
    if (a.size() > 1) alphabets.push_back(a);
  std::vector<SeedFunction> seeds;
  for (const auto& a : alphabets) {
    seeds.push_back(indicator_seed(a));
    seeds.push_back(gaussian_seed(a));
  }
  return seeds;
}

void c5_product_formula(Check& c) {
  double worst = 0.0;
  int cases = 0;
  for (const auto& f : small_grid_seeds())
    for (int k = 1; k <= 3; ++k) {
      const auto chain = convolution_chain(f, k);
      const std::int64_t n = chain.cantor.modulus;
      const ComplexVec fu = DftPlan(static_cast<std::size_t>(n)).apply(chain.u, Direction::kForward);
      double dev = 0.0;
      for (std::int64_t j = 0; j < n; ++j) {
        cplx prod = 1.0;
        std::int64_t mr = 1;
        for (int r = 1; r <= k; ++r) {
          mr *= f.base();
          prod *= symbol(f, static_cast<double>(j % mr) / static_cast<double>(mr));
        }
        dev = std::max(dev, std::abs(fu[static_cast<std::size_t>(j)] - prod));
      }
      const double tol = 1e-10 * std::pow(l1(f), k);
      worst = std::max(worst, dev / std::pow(l1(f), k));
      ++cases;
      c.expect(dev <= tol, "M=%lld k=%d deviation %.3e > %.3e", static_cast<long long>(f.base()), k, dev, tol);
    }
  c.note("%d cases, max deviation / ||f||_1^k = %.3e", cases, worst);
}

void c6_comb(Check& c) {
  Rng rng(106);
  double worst = 0.0;
  auto seeds = small_grid_seeds();
  for (std::int64_t m : {64, 100, 256})
    for (double delta : {0.6, 0.9}) {
      seeds.push_back(gaussian_seed(build_alphabet_interval(m, delta)));
      seeds.push_back(indicator_seed(build_alphabet_interval(m, delta)));
    }
  for (const auto& f : seeds) {
    const double nf = sq(f.values);
    for (int t = 0; t < 100; ++t) {
      const double y = rng.uniform();
      double s = 0.0;
      for (std::int64_t j = 0; j < f.base(); ++j)
        s += std::norm(symbol(f, static_cast<double>(j) / static_cast<double>(f.base()) + y));
      worst = std::max(worst, std::abs(s - nf) / nf);
      c.expect(std::abs(s - nf) <= 1e-10 * nf, "M=%lld y=%.6f comb %.15f vs %.15f", static_cast<long long>(f.base()),
               y, s, nf);
    }
  }
  c.note("%zu seeds x 100 shifts, max relative deviation %.3e", seeds.size(), worst);
}

void c7_chain_norm_support(Check& c) {
  double worst = 0.0;
  int cases = 0;
  for (const auto& f : small_grid_seeds())
    for (int k = 1; k <= 3; ++k) {
      const auto chain = convolution_chain(f, k);
      const double expect = std::pow(sq(f.values), k);
      const double rel = std::abs(sq(chain.u) - expect) / expect;
      worst = std::max(worst, rel);
      c.expect(rel <= 1e-10, "M=%lld k=%d relative norm deviation %.3e", static_cast<long long>(f.base()), k, rel);
      for (std::int64_t j = 0; j < chain.cantor.modulus; ++j)
        if (chain.u[static_cast<std::size_t>(j)] != cplx{}) {
          bool in = true;
          for (std::int64_t r = j, d = 0; d < k; ++d, r /= f.base()) in = in && f.alphabet.contains(r % f.base());
          c.expect(in, "M=%lld k=%d u_k nonzero off C_k at %lld", static_cast<long long>(f.base()), k,
                   static_cast<long long>(j));
        }
      ++cases;
    }
  c.note("%d cases, max relative deviation %.3e", cases, worst);
}

void c8_chain_lower(Check& c) {
  for (std::int64_t m : {16, 64})
    for (double delta : {0.6, 0.75, 0.9}) {
      const SeedFunction f = gaussian_seed(build_alphabet_interval(m, delta)).normalized();
      const ZCertificate z = z_certificate(f);
      for (int k = 1; k <= 3; ++k) {
        const auto chain = convolution_chain(f, k);
        const ComplexVec fu =
            DftPlan(static_cast<std::size_t>(chain.cantor.modulus)).apply(chain.u, Direction::kForward);
        double lhs = 0.0;
        for (std::int64_t j : chain.cantor.elements) lhs += std::norm(fu[static_cast<std::size_t>(j)]);
        const double rhs = std::pow(z.z_certified_lower, k);
        c.expect(lhs >= rhs - 1e-12, "M=%lld delta=%.2f k=%d lhs %.6e < z^k %.6e", static_cast<long long>(m), delta, k,
                 lhs, rhs);
        if (k == 3)
          c.note("M=%lld delta=%.2f k=3: lhs %.6e >= z^k %.6e (z = %.6f)", static_cast<long long>(m), delta, lhs, rhs,
                 z.z_certified_lower);
      }
    }
}

void c9_tail(Check& c) {
  for (std::int64_t m : {64, 256})
    for (double delta : {0.6, 0.75}) {
      const auto t = verify_tail_bound(m, delta);
      const double md = static_cast<double>(m);
      const double rhs = 60.0 / std::sqrt(md) * std::exp(-kPi / 4.0 * std::pow(md, 2.0 * delta - 1.0));
      c.expect(t.lhs_certified >= t.lhs_grid_max, "certified value below grid max");
      c.expect(t.lhs_certified <= rhs, "M=%lld delta=%.2f lhs %.6e > rhs %.6e", static_cast<long long>(m), delta,
               t.lhs_certified, rhs);
      c.note("M=%lld delta=%.2f: certified lhs %.4e <= %.4e", static_cast<long long>(m), delta, t.lhs_certified, rhs);
    }
}

void c10_theorem1(Check& c) {
  const auto cert = theorem1_certificate(64, 0.9, 2);
  const double bound = 170.0 * std::exp(-kPi / 4.0 * std::pow(64.0, 0.8));
  const double beta = -std::log(cert.norm.sigma_max) / (2.0 * std::log(64.0));
  c.expect(cert.report.modulus == 4096, "N = %lld", static_cast<long long>(cert.report.modulus));
  c.expect(cert.norm.converged && cert.norm.residual <= 1e-10, "residual %.3e", cert.norm.residual);
  c.expect(std::abs(beta - cert.report.beta) <= 1e-12, "reported beta %.15f vs %.15f", cert.report.beta, beta);
  c.expect(beta <= bound + 1e-6, "beta_2 %.6e > %.6e", beta, bound + 1e-6);
  c.note("sigma = %.15f (%s, residual %.2e), beta_2 = %.3e <= %.3e", cert.norm.sigma_max,
         to_string(cert.norm.method).c_str(), cert.norm.residual, beta, bound + 1e-6);
}

std::int64_t exhaustive_max_q(const ExactRational& x, std::int64_t mdelta) {
  std::int64_t best = 0;
  for (std::int64_t q = 1; q <= mdelta; ++q)
    for (std::int64_t b = 0; b <= q; ++b)
      if (std::gcd(b, q) == 1 && abs(x - ExactRational(b, q)) < ExactRational(1, q * mdelta)) best = q;
  return best;
}

void c11_dirichlet(Check& c) {
  int cases = 0;
  for (std::int64_t m : {4, 9, 16, 25}) {
    const auto mdelta = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(m))));
    for (std::int64_t r = 1; r <= 4; ++r)
      for (std::int64_t p = r; p < m * r; ++p) {
        if (std::gcd(p, r) != 1) continue;
        const ExactRational alpha(p, r);
        const ExactRational x = alpha / ExactRational(m);
        const auto got = best_rational(alpha, m, mdelta);
        const bool strict = got.q >= 1 && got.q <= mdelta &&
                            abs(x - ExactRational(got.b, got.q)) < ExactRational(1, got.q * mdelta);
        c.expect(strict, "M=%lld alpha=%s: (b, q) = (%lld, %lld) not admissible", static_cast<long long>(m),
                 alpha.to_string().c_str(), static_cast<long long>(got.b), static_cast<long long>(got.q));
        const std::int64_t best = exhaustive_max_q(x, mdelta);
        c.expect(got.q == best, "M=%lld alpha=%s: q = %lld, exhaustive %lld", static_cast<long long>(m),
                 alpha.to_string().c_str(), static_cast<long long>(got.q), static_cast<long long>(best));
        ++cases;
      }
  }
  c.note("%d (M, alpha) cases", cases);
}

void c12_g_bound(Check& c) {
  for (std::int64_t m : {16, 64}) {
    const auto mdelta = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(m))));
    const double md = static_cast<double>(m), delta = 0.5;
    for (const auto& alpha : {ExactRational(1), ExactRational(3, 2), ExactRational(5), ExactRational(7)}) {
      const auto g = g_bound(m, mdelta, alpha);
      const ExactRational x = alpha / ExactRational(m);
      const bool hyp = abs(x - ExactRational(g.approx.b, g.approx.q)) < ExactRational(1, g.approx.q * mdelta);
      c.expect(hyp, "M=%lld alpha=%s: (b, q) fails the hypothesis", static_cast<long long>(m),
               alpha.to_string().c_str());
      const double q = static_cast<double>(g.approx.q);
      const double rhs = 12.0 * std::pow(md, delta - 1.0) * (std::pow(md, delta) / q + std::log(q));
      c.expect(g.g_grid <= g.g_upper, "grid estimate above certified bound");
      c.expect(g.g_upper <= rhs, "M=%lld alpha=%s: G_upper %.6f > %.6f", static_cast<long long>(m),
               alpha.to_string().c_str(), g.g_upper, rhs);
      c.note("M=%lld alpha=%s q=%lld: G_upper %.4f <= %.4f", static_cast<long long>(m), alpha.to_string().c_str(),
             static_cast<long long>(g.approx.q), g.g_upper, rhs);
    }
  }
}

void c13_exp_sums(Check& c) {
  Rng rng(113);
  double worst_rec = 0.0, worst_f1 = 0.0;
  const std::vector<std::pair<std::int64_t, std::int64_t>> configs{{4, 2}, {9, 3}, {16, 4}};
  for (auto [m, q] : configs) {
    const Alphabet a = build_alphabet_initial(m, q);
    std::vector<CantorSet> sets;
    for (int k = 1; k <= 4; ++k) sets.push_back(cantor_elements(a, k));
    for (int k = 2; k <= 4; ++k)
      for (int t = 0; t < 1000 / static_cast<int>(configs.size() * 3) + 1; ++t) {
        const double x = rng.dyadic(1.0);
        cplx f1{};
        for (std::int64_t j = 0; j < q; ++j) f1 += std::polar(1.0, -2.0 * kPi * std::fmod(j * x, 1.0));
        f1 /= static_cast<double>(q);
        const cplx lhs = fk_eval(sets[k - 1], x);
        const cplx rhs = f1 * fk_eval(sets[k - 2], std::fmod(static_cast<double>(m) * x, 1.0));
        worst_rec = std::max(worst_rec, std::abs(lhs - rhs));
        c.expect(std::abs(lhs - rhs) <= 1e-12, "M=%lld k=%d x=%.17g recursion deviation %.3e",
                 static_cast<long long>(m), k, x, std::abs(lhs - rhs));
      }
  }
  for (std::int64_t q : {2, 3, 4, 8}) {
    const double qd = static_cast<double>(q);
    for (int t = 0; t < 10000 / 4; ++t) {
      const double x = rng.uniform(-1.0, 1.0);
      const double bound = std::min(qd, 1.0 / dist_to_int(x)) / qd;
      const double v = std::abs(f1_eval(q, x));
      worst_f1 = std::max(worst_f1, v - bound);
      c.expect(v <= bound + 1e-12, "Q=%lld x=%.17g |F_1| %.15f > %.15f", static_cast<long long>(q), x, v, bound);
    }
  }
  c.note("max recursion deviation %.3e, max |F_1| - bound %.3e", worst_rec, worst_f1);
}

void c14_sk(Check& c) {
  for (std::int64_t m : {4, 16}) {
    const auto mdelta = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(m))));
    for (const auto& alpha : {ExactRational(1), ExactRational(3, 2), ExactRational(5)}) {
      if (!(alpha < ExactRational(m))) {
        c.note("M=%lld alpha=%s skipped (alpha must lie in [1, M))", static_cast<long long>(m),
               alpha.to_string().c_str());
        continue;
      }
      const double gu = g_bound(m, mdelta, alpha).g_upper;
      for (int k : {2, 3}) {
        const double sk = sk_estimate(cantor_elements(build_alphabet_initial(m, mdelta), k), alpha);
        c.expect(sk <= std::pow(gu, k), "M=%lld alpha=%s k=%d: S_k %.6f > G^k %.6f", static_cast<long long>(m),
                 alpha.to_string().c_str(), k, sk, std::pow(gu, k));
        c.note("M=%lld alpha=%s k=%d: S_k %.4f <= G^k %.4f", static_cast<long long>(m), alpha.to_string().c_str(), k,
               sk, std::pow(gu, k));
      }
    }
  }
}

void c15_theorem2_trend(Check& c) {
  const auto r1 = theorem2_report(16, 4, 3, ExactRational(1));
  const auto r5 = theorem2_report(16, 4, 3, ExactRational(5));
  for (const auto* r : {&r1, &r5})
    c.note("alpha=%s N=%lld gamma=%.4f sigma=%.10f beta_k(N)=%.6f eps_emp=%.6f", r->alpha.to_string().c_str(),
           static_cast<long long>(r->modulus), r->approx.gamma, r->norm.sigma_max, r->report.beta,
           r->empirical_slack);
  c.expect(std::abs(r5.approx.gamma - std::log(3.0) / std::log(16.0)) <= 1e-12, "gamma(5) = %.6f", r5.approx.gamma);
  c.expect(r1.approx.gamma == 0.0, "gamma(1) = %.6f", r1.approx.gamma);
  c.expect(r5.report.beta > r1.report.beta, "beta(alpha=5) %.6f <= beta(alpha=1) %.6f", r5.report.beta,
           r1.report.beta);
}

void c16_baker(Check& c) {
  for (auto [n, m] : std::vector<std::pair<std::int64_t, std::int64_t>>{{81, 3}, {64, 4}, {250, 5}}) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    const auto rep = gelfand_bound(build_baker(n, Alphabet(m, all), make_sharp_cutoff(n / m)));
    c.expect(std::abs(rep.rho_upper - 1.0) <= 1e-10, "unitary N=%lld M=%lld rho %.15f", static_cast<long long>(n),
             static_cast<long long>(m), rep.rho_upper);
    c.note("unitary N=%lld M=%lld: rho_upper = %.15f", static_cast<long long>(n), static_cast<long long>(m),
           rep.rho_upper);
  }
  const auto rep = gelfand_bound(build_baker(243, Alphabet(3, {0, 2}), make_smooth_cutoff(81)));
  c.expect(rep.rho_upper < 1.0, "smooth bump rho_upper %.15f", rep.rho_upper);
  for (std::size_t i = 1; i < rep.powers.size(); ++i) {
    const auto& a = rep.powers[i - 1];
    const auto& b = rep.powers[i];
    c.expect(b.power == 2 * a.power, "schedule not doubling at %lld", static_cast<long long>(b.power));
    c.expect(b.norm_estimate <= a.norm_estimate * a.norm_estimate + 1e-9, "||B^%lld|| = %.12f > ||B^%lld||^2 = %.12f",
             static_cast<long long>(b.power), b.norm_estimate, static_cast<long long>(a.power),
             a.norm_estimate * a.norm_estimate);
  }
  c.note("smooth bump N=243: rho_upper = %.6f over %zu powers", rep.rho_upper, rep.powers.size());
}

void c17_determinism(Check& c) {
  const fs::path root = fs::temp_directory_path() / "fup_acceptance_determinism";
  fs::remove_all(root);
  struct Job {
    std::string name;
    SweepSpec spec;
    PlotKind plot;
  };
  std::vector<Job> jobs;
  {
    SweepSpec s;
    s.command = SweepCommand::kBeta;
    s.m_values = {3, 16};
    s.alphabets = {{0, 2}};
    s.deltas = {0.75};
    s.mdeltas = {4};
    s.k_values = {1, 2, 3};
    s.seed = 17;
    jobs.push_back({"beta", s, PlotKind::kBetaVsK});
  }
  {
    SweepSpec s;
    s.command = SweepCommand::kBaker;
    s.n_values = {27, 81, 243};
    s.m_values = {3};
    s.alphabets = {{0, 2}};
    s.n_max = 16;
    s.seed = 17;
    jobs.push_back({"baker", s, PlotKind::kGapVsN});
  }
  for (auto& job : jobs) {
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      SweepSpec s = job.spec;
      s.out_dir = root / (job.name + std::to_string(run));
      s.threads = run == 0 ? 1 : 2;
      fs::create_directories(s.out_dir);
      const RunRecord rec = run_sweep(s);
      write_run(s, rec);
      emit_plot(load_results(s.out_dir / "results.jsonl"), job.plot, s.out_dir / "plot.svg");
      dirs.push_back(s.out_dir);
    }
    for (const char* f : {"results.jsonl", "summary.csv", "run.json", "plot.svg"}) {
      const std::string a = slurp(dirs[0] / f), b = slurp(dirs[1] / f);
      c.expect(!a.empty() && a == b, "%s/%s differs between runs", job.name.c_str(), f);
    }
  }
  const std::string p1 = render_svg(profile_panels(100, 2.0 / 3.0));
  c.expect(p1 == render_svg(profile_panels(100, 2.0 / 3.0)), "profile SVG differs between runs");
  c.note("beta and baker sweeps (1 vs 2 threads): JSONL, CSV, run.json and SVG byte-identical");
  fs::remove_all(root);
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<Criterion> criteria{
      {1, "DFT unitarity", 1.0, c1_dft_unitarity},
      {2, "power iteration vs dense Jacobi SVD", 10.0, c2_oracle_equivalence},
      {3, "finite-k exponent sandwich", 30.0, c3_sandwich},
      {4, "exact small case M=3, A={0,2}, k=1", 0.0, c4_exact_small},
      {5, "product formula for the convolution chain", 0.0, c5_product_formula},
      {6, "comb identity", 0.0, c6_comb},
      {7, "chain norm and support", 0.0, c7_chain_norm_support},
      {8, "chain lower bound by Z^k", 0.0, c8_chain_lower},
      {9, "Gaussian tail bound", 30.0, c9_tail},
      {10, "Cantor FUP exponent at M=64, delta=0.9, k=2", 120.0, c10_theorem1},
      {11, "Dirichlet approximation solver", 5.0, c11_dirichlet},
      {12, "certified G bound", 60.0, c12_g_bound},
      {13, "exponential-sum identities", 0.0, c13_exp_sums},
      {14, "S_k <= G^k", 0.0, c14_sk},
      {15, "dilated exponent trend in gamma", 300.0, c15_theorem2_trend},
      {16, "baker map spectral radius", 120.0, c16_baker},
      {17, "determinism of sweep outputs", 0.0, c17_determinism},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.notes.emplace_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_seconds > 0.0 && secs >= cr.budget_seconds) {
      check.ok = false;
      char buf[128];
      std::snprintf(buf, sizeof buf, "runtime %.2f s exceeds %.0f s", secs, cr.budget_seconds);
      check.notes.emplace_back(buf);
    }
    failures += !check.ok;
    std::printf("%s  [%2d] %s (%.2f s)\n", check.ok ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs);
    const std::size_t shown = check.ok ? check.notes.size() : std::min<std::size_t>(check.notes.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) std::printf("        %s\n", check.notes[i].c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
