#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/fft.hpp"
#include "fup/spectral.hpp"

namespace fup {

enum class CutoffKind { kSmoothBump, kSharp, kSampled };

std::string to_string(CutoffKind kind);

/// Samples chi(l / (N/M)) for 0 <= l < N/M.
struct CutoffProfile {
  CutoffKind kind = CutoffKind::kSmoothBump;
  std::vector<double> samples;

  /// True for the sharp cutoff, which is not compactly supported in (0, 1).
  bool outside_smooth_class() const { return kind == CutoffKind::kSharp; }
};

/// chi(t) = exp(1 - 1/(1 - (2t - 1)^2)) on (0, 1), 0 elsewhere.
double smooth_bump(double t);

CutoffProfile make_smooth_cutoff(std::int64_t block_size);
CutoffProfile make_sharp_cutoff(std::int64_t block_size);
/// Loaded profile; values must lie in [0, 1].
CutoffProfile make_sampled_cutoff(std::vector<double> samples);

/// B_N = F_N^* diag(chi F_{N/M} chi, ..., chi F_{N/M} chi) I_{A,M}, applied
/// matrix-free. I_{A,M} keeps index j exactly when floor(j / (N/M)) is a letter.
class BakerMap {
 public:
  BakerMap(std::int64_t n, Alphabet alphabet, CutoffProfile cutoff);

  std::int64_t size() const { return n_; }
  std::int64_t base() const { return alphabet_.base(); }
  std::int64_t block_size() const { return block_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const CutoffProfile& cutoff() const { return cutoff_; }

  void apply(std::span<const cplx> v, std::span<cplx> out) const;
  void apply_adjoint(std::span<const cplx> v, std::span<cplx> out) const;

  ComplexVec apply(std::span<const cplx> v) const;
  ComplexVec apply_adjoint(std::span<const cplx> v) const;

 private:
  std::int64_t n_;
  std::int64_t block_;
  Alphabet alphabet_;
  CutoffProfile cutoff_;
  DftPlan full_plan_;
  DftPlan block_plan_;
};

BakerMap build_baker(std::int64_t n, const Alphabet& alphabet, const CutoffProfile& cutoff);

struct PowerNorm {
  std::int64_t power = 0;
  double norm_estimate = 0.0;  // sqrt(lambda (1 + residual)), lambda the Rayleigh quotient of (B^n)^* B^n
  double rayleigh_norm = 0.0;  // sqrt of the Rayleigh quotient
  double residual = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;
};

struct GelfandReport {
  std::int64_t n = 0;
  std::int64_t base = 0;
  std::vector<PowerNorm> powers;  // n = 1, 2, 4, ..., n_max
  double rho_upper = 1.0;         // min_n ||B^n||^{1/n}
  std::vector<double> envelope;   // running min after each recorded power
  bool submultiplicative = true;  // ||B^{2n}|| <= ||B^n||^2 + 1e-9 along the schedule
  // Comparison with M^{-(1/2 - delta + gamma/2) + eps}; present only for
  // alphabets {0, ..., Q-1} with Q^2 <= M.
  std::optional<double> theorem3_bound;
  std::optional<double> gamma;
  std::optional<std::int64_t> q;
  ExactRational alpha;
  int depth = 0;
  double eps = 0.0;
};

struct GelfandOptions {
  std::int64_t n_max = 64;
  PowerIterationOptions power{1e-10, 20000, 0};
  double eps = 0.0;
};

/// Writes N = alpha M^k with 1 <= alpha < M.
std::pair<ExactRational, int> split_dimension(std::int64_t n, std::int64_t base);

/// Upper bounds on the spectral radius of B_N from norms of B^n along a
/// doubling schedule. For N <= 1024 a stalled power iteration restarts from the
/// top eigenvector of the dense Gram matrix of B^n; one that still fails is
/// reported with its best iterate rather than thrown.
GelfandReport gelfand_bound(const BakerMap& map, const GelfandOptions& opts = {});

}  // namespace fup
