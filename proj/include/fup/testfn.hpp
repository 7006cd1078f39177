#pragma once

// Test functions for the lower-bound construction: seeds f on Z_M, the
// digit-wise convolution chain u_k, the symbol G_f and the band mass Z_A(f).

#include <cstdint>
#include <string>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/fft.hpp"
#include "fup/spectral.hpp"

namespace fup {

/// A function on Z_M supported on the letters of an alphabet.
struct SeedFunction {
  Alphabet alphabet;
  ComplexVec values;  // length M

  std::int64_t base() const { return alphabet.base(); }
  double norm_squared() const;
  double l1_norm() const;
  /// max - min over the support; the degree of |G_f|^2 as a trigonometric polynomial.
  std::int64_t support_span() const;
  SeedFunction normalized() const;
};

/// Validates length M, zero off the alphabet, and nonzero norm.
SeedFunction make_seed(const Alphabet& alphabet, ComplexVec values);

/// f = 1_A.
SeedFunction indicator_seed(const Alphabet& alphabet);

/// f(l) = M^{-1/2} exp(-pi (l - M/2)^2 / M) (-1)^l on the alphabet, 0 elsewhere.
SeedFunction gaussian_seed(const Alphabet& alphabet);

/// G_f(x) = M^{-1/2} sum_l f(l) exp(-2 pi i l x), evaluated by direct summation.
cplx symbol_eval(const SeedFunction& seed, double x);

struct ConvolutionChain {
  SeedFunction seed;
  CantorSet cantor;
  ComplexVec u;  // length M^k, supported on C_k

  int depth() const { return cantor.depth; }
};

/// u_k = f * f_M * ... * f_{M^{k-1}}. Because the factors live on disjoint
/// digit positions, u_k(a_0 + a_1 M + ...) = prod_j f(a_j), which is how the
/// chain is built.
ConvolutionChain convolution_chain(const SeedFunction& seed, int depth);

/// max_j |F_{M^k} u_k (j) - prod_{r=1}^k G_f(j / M^r)|.
double verify_product_formula(const ConvolutionChain& chain);

/// sum_{a in A} |G_f(a/M + y)|^2 for each y, via one M-point DFT per y.
std::vector<double> band_mass(const SeedFunction& seed, const std::vector<double>& ys);

struct ZCertificate {
  double z_grid_min = 0.0;
  double z_certified_lower = 0.0;
  double grid_step = 0.0;
  double lipschitz_bound = 0.0;
  double argmin_y = 0.0;
  std::int64_t grid_points = 0;
};

/// Encloses Z_A(f) = min_{0 <= y <= 1/M} sum_{a in A} |G_f(a/M + y)|^2 using a
/// uniform grid on [0, 1/M] and a Bernstein derivative bound.
ZCertificate z_certificate(const SeedFunction& seed, std::int64_t grid_points = 100000);

struct TailBoundCheck {
  std::int64_t base = 0;
  double delta = 0.0;
  double lhs_grid_max = 0.0;
  double lhs_certified = 0.0;  // grid max plus Bernstein slack
  double rhs = 0.0;            // 60 M^{-1/2} exp(-(pi/4) M^{2 delta - 1})
  double worst_y = 0.0;
  bool holds = false;
};

/// Certified max over y in [0, 1/M] of sum_{l not in A} |G_{g 1_A}(l/M + y)|^2
/// for the interval alphabet, compared with 60 M^{-1/2} exp(-(pi/4) M^{2 delta - 1}).
TailBoundCheck verify_tail_bound(std::int64_t base, double delta, std::int64_t y_samples = 100000);

/// Untruncated Gaussian symbol G_g(x) as a lattice sum over
/// |l - M/2| <= radius. The default radius 10 sqrt(M) + M^delta keeps the
/// neglected tail below exp(-100 pi).
cplx gaussian_symbol_lattice(std::int64_t base, double x, double radius);

/// The same symbol through its Poisson-summed theta form,
/// M^{-1/2} sum_{|k| <= terms} exp(-pi M (x - 1/2 + k)^2) exp(-pi i M (x - 1/2 + k)).
cplx gaussian_symbol_theta(std::int64_t base, double x, int terms);

struct Theorem1Options {
  std::int64_t grid_points = 100000;
  PowerIterationOptions power{};
};

struct Theorem1Certificate {
  FupExponentReport report;
  NormCertificate norm;
  ZCertificate z;                  // for the normalized seed
  TailBoundCheck tail;
  double nominal_delta = 0.0;
  double seed_norm_squared = 0.0;  // ||g 1_A||^2 before normalisation
  double chain_lhs = 0.0;          // ||1_{C_k} F u_k||^2
  double chain_rhs = 0.0;          // z_certified_lower^k
  bool chain_holds = false;
  double sigma_lower = 0.0;        // z_certified_lower^{k/2}
  bool sigma_above_lower = false;
  double beta_upper_from_z = 0.0;  // -log(z_certified_lower) / (2 log M)
  double beta_bound = 0.0;         // 170 exp(-(pi/4) M^{2 delta - 1})
  bool beta_within_bound = false;  // beta_k <= beta_bound + 1e-6
  // Regime conditions of the lower-bound argument, checked numerically.
  bool norm_lower_ok = false;      // ||f||^2 >= 1 / (2 sqrt(2M))
  bool width_ok = false;           // M >= 4 and 1 - 2/M^delta >= 1/2
  bool exp_step_ok = false;        // 1 - x/2 >= e^{-x} at x = 340 exp(-(pi/4) M^{2 delta - 1})
  bool binding = false;
  std::vector<std::string> warnings;
};

/// Runs the full lower-bound pipeline for the interval alphabet and Gaussian seed.
Theorem1Certificate theorem1_certificate(std::int64_t base, double delta, int depth,
                                         const Theorem1Options& opts = {});

}  // namespace fup
