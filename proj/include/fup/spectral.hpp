#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/fft.hpp"

namespace fup {

/// Largest N for which the masked submatrix may be formed densely.
inline constexpr std::int64_t kDenseLimit = 512;

enum class NormMethod { kPowerIteration, kDenseSvd, kDenseEigen };

std::string to_string(NormMethod m);

struct NormCertificate {
  double sigma_max = 0.0;
  NormMethod method = NormMethod::kPowerIteration;
  std::int64_t iterations = 0;
  double residual = 0.0;  // ||A^*A v - sigma^2 v|| / sigma^2
  std::uint64_t seed = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  std::int64_t max_iterations = 100000;
  std::uint64_t seed = 0;
  // When the smaller side of the operator has at most this many indices and
  // power iteration has not converged after `dense_fallback_after` steps, the
  // top eigenpair of the Gram matrix is computed densely instead. 0 disables.
  std::int64_t dense_fallback_limit = 4096;
  std::int64_t dense_fallback_after = 2000;
};

/// Thrown when power iteration exhausts its budget; carries the best iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, NormCertificate best, std::vector<cplx> best_vector)
      : std::runtime_error(what), best_(best), vector_(std::move(best_vector)) {}
  const NormCertificate& best() const { return best_; }
  const std::vector<cplx>& best_vector() const { return vector_; }

 private:
  NormCertificate best_;
  std::vector<cplx> vector_;
};

/// The operator 1_X F_N 1_Y viewed as a map C^|Y| -> C^|X|. Applications are
/// scatter / FFT / gather; F_N itself is never formed.
class MaskedDft {
 public:
  MaskedDft(std::vector<std::int64_t> rows, std::vector<std::int64_t> cols, std::int64_t n);

  std::int64_t size() const { return n_; }
  const std::vector<std::int64_t>& rows() const { return rows_; }
  const std::vector<std::int64_t>& cols() const { return cols_; }

  /// x-values (length |X|) = 1_X F_N (v placed on Y).
  void apply(std::span<const cplx> v, std::span<cplx> out) const;
  /// y-values (length |Y|) = 1_Y F_N^* (w placed on X).
  void apply_adjoint(std::span<const cplx> w, std::span<cplx> out) const;

  /// Dense |X| x |Y| submatrix, row-major. Only permitted for N <= kDenseLimit
  /// unless `force` is set.
  std::vector<cplx> dense(bool force = false) const;

 private:
  std::int64_t n_;
  std::vector<std::int64_t> rows_;
  std::vector<std::int64_t> cols_;
  DftPlan plan_;
  mutable std::vector<cplx> buf_in_;
  mutable std::vector<cplx> buf_out_;
};

/// Largest singular value of an arbitrary linear map via power iteration on
/// A^*A, given matrix-free apply / adjoint callbacks.
template <class Apply, class Adjoint>
NormCertificate power_iteration(std::size_t in_dim, std::size_t out_dim, Apply&& apply,
                                Adjoint&& adjoint, const PowerIterationOptions& opts);

/// Same, started from `start` instead of a seeded random vector.
template <class Apply, class Adjoint>
NormCertificate power_iteration_from(std::vector<cplx> start, std::size_t out_dim, Apply&& apply,
                                     Adjoint&& adjoint, const PowerIterationOptions& opts);

struct EigenPair {
  double value = 0.0;
  std::vector<cplx> vector;
};

/// Largest eigenvalue and a unit eigenvector of a Hermitian n x n matrix given
/// column-major (only the upper triangle is read). Uses LAPACK zheevr.
EigenPair hermitian_top_eigenpair(std::vector<cplx> matrix, std::size_t n);

/// ||1_X F_N 1_Y|| by seeded power iteration, falling back to masked_norm_gram
/// when the iteration stalls and the operator is small enough (see
/// PowerIterationOptions). Throws ConvergenceError when the budget is exhausted.
NormCertificate masked_norm(std::span<const std::int64_t> rows, std::span<const std::int64_t> cols,
                            std::int64_t n, const PowerIterationOptions& opts = {});

/// ||1_X F_N 1_Y|| from the singular values of the explicit submatrix
/// (one-sided Jacobi). N <= kDenseLimit.
NormCertificate masked_norm_dense(std::span<const std::int64_t> rows,
                                  std::span<const std::int64_t> cols, std::int64_t n);

/// ||1_X F_N 1_Y|| from the top eigenpair of the smaller Gram matrix, which is
/// Toeplitz-like and built from a single FFT. The returned residual is
/// recomputed matrix-free from the resulting singular vector, and a short
/// power-iteration polish runs if it is still above tolerance.
NormCertificate masked_norm_gram(std::span<const std::int64_t> rows, std::span<const std::int64_t> cols,
                                 std::int64_t n, const PowerIterationOptions& opts = {});

/// Singular values (descending) of a row-major rows x cols complex matrix by
/// one-sided Jacobi rotations.
std::vector<double> jacobi_singular_values(std::span<const cplx> matrix, std::size_t rows,
                                           std::size_t cols);

struct FupExponentReport {
  std::int64_t base = 0;   // M
  int depth = 0;           // k
  std::int64_t modulus = 0;  // N
  double delta = 0.0;
  double sigma_max = 0.0;
  double beta = 0.0;
  double lower_theory = 0.0;  // max(0, 1/2 - delta)
  double upper_theory = 0.0;  // 1/2 - delta/2
};

/// beta_k = -log(sigma) / (k log M) for a certificate computed on C_k with N = M^k.
FupExponentReport beta_k(const NormCertificate& cert, const CantorSet& cantor);

/// beta_k(N) = -log(sigma) / log N for a dilated set.
FupExponentReport beta_dilated(const NormCertificate& cert, const DilatedCantorSet& dilated);

}  // namespace fup

#include "fup/detail/power_iteration.ipp"
