#include "fup/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fup/error.hpp"

namespace fup {
namespace {

void check_indices(std::span<const std::int64_t> idx, std::int64_t n, const char* what) {
  for (std::int64_t i : idx)
    if (i < 0 || i >= n) throw ParameterError(std::string(what) + " index outside [0, N)");
}

// exp(-2 pi i (a b mod n) / n) with the product reduced exactly.
cplx dft_entry(std::int64_t a, std::int64_t b, std::int64_t n) {
  const auto t = static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n);
  const long double angle =
      -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(t) / static_cast<long double>(n);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

}  // namespace

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::kPowerIteration:
      return "power-iteration";
    case NormMethod::kDenseSvd:
      return "dense-svd";
    case NormMethod::kDenseEigen:
      return "dense-eigen";
  }
  return "unknown";
}

MaskedDft::MaskedDft(std::vector<std::int64_t> rows, std::vector<std::int64_t> cols, std::int64_t n)
    : n_(n), rows_(std::move(rows)), cols_(std::move(cols)), plan_(static_cast<std::size_t>(n)) {
  check_indices(rows_, n_, "row");
  check_indices(cols_, n_, "column");
  buf_in_.assign(static_cast<std::size_t>(n_), cplx{});
  buf_out_.assign(static_cast<std::size_t>(n_), cplx{});
}

void MaskedDft::apply(std::span<const cplx> v, std::span<cplx> out) const {
  std::fill(buf_in_.begin(), buf_in_.end(), cplx{});
  for (std::size_t i = 0; i < cols_.size(); ++i) buf_in_[static_cast<std::size_t>(cols_[i])] = v[i];
  plan_.apply(buf_in_, buf_out_, Direction::kForward);
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = buf_out_[static_cast<std::size_t>(rows_[i])];
}

void MaskedDft::apply_adjoint(std::span<const cplx> w, std::span<cplx> out) const {
  std::fill(buf_in_.begin(), buf_in_.end(), cplx{});
  for (std::size_t i = 0; i < rows_.size(); ++i) buf_in_[static_cast<std::size_t>(rows_[i])] = w[i];
  plan_.apply(buf_in_, buf_out_, Direction::kAdjoint);
  for (std::size_t i = 0; i < cols_.size(); ++i) out[i] = buf_out_[static_cast<std::size_t>(cols_[i])];
}

std::vector<cplx> MaskedDft::dense(bool force) const {
  if (n_ > kDenseLimit && !force) throw CapacityError("dense masked DFT only for N <= 512");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  std::vector<cplx> m(rows_.size() * cols_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < cols_.size(); ++c) m[r * cols_.size() + c] = scale * dft_entry(rows_[r], cols_[c], n_);
  return m;
}

NormCertificate masked_norm(std::span<const std::int64_t> rows, std::span<const std::int64_t> cols,
                            std::int64_t n, const PowerIterationOptions& opts) {
  if (!(opts.tol > 0.0)) throw ParameterError("tolerance must be positive");
  const auto small_side = static_cast<std::int64_t>(std::min(rows.size(), cols.size()));
  const bool can_fall_back = opts.dense_fallback_limit > 0 && small_side <= opts.dense_fallback_limit &&
                             opts.dense_fallback_after < opts.max_iterations;
  PowerIterationOptions first = opts;
  if (can_fall_back) first.max_iterations = opts.dense_fallback_after;

  const MaskedDft op({rows.begin(), rows.end()}, {cols.begin(), cols.end()}, n);
  try {
    return power_iteration(
        cols.size(), rows.size(),
        [&](std::span<const cplx> v, std::span<cplx> out) { op.apply(v, out); },
        [&](std::span<const cplx> w, std::span<cplx> out) { op.apply_adjoint(w, out); }, first);
  } catch (const ConvergenceError&) {
    if (!can_fall_back) throw;
  }
  PowerIterationOptions rest = opts;
  rest.max_iterations = opts.max_iterations - opts.dense_fallback_after;
  NormCertificate cert = masked_norm_gram(rows, cols, n, rest);
  cert.iterations += opts.dense_fallback_after;
  return cert;
}

NormCertificate masked_norm_gram(std::span<const std::int64_t> rows, std::span<const std::int64_t> cols,
                                 std::int64_t n, const PowerIterationOptions& opts) {
  if (!(opts.tol > 0.0)) throw ParameterError("tolerance must be positive");
  const MaskedDft op({rows.begin(), rows.end()}, {cols.begin(), cols.end()}, n);
  NormCertificate cert;
  cert.method = NormMethod::kDenseEigen;
  cert.seed = opts.seed;
  if (rows.empty() || cols.empty()) {
    cert.converged = true;
    return cert;
  }

  // (A^*A)_{ab} = h(a - b) with h = N^{-1/2} F^* 1_X; (AA^*)_{xy} = N^{-1/2} (F 1_Y)(x - y).
  const bool col_side = cols.size() <= rows.size();
  const auto side = col_side ? cols : rows;
  const auto other = col_side ? rows : cols;
  ComplexVec indicator(static_cast<std::size_t>(n));
  for (std::int64_t j : other) indicator[static_cast<std::size_t>(j)] = 1.0;
  const ComplexVec h = DftPlan(static_cast<std::size_t>(n))
                           .apply(indicator, col_side ? Direction::kAdjoint : Direction::kForward);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t m = side.size();
  std::vector<cplx> gram(m * m);
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t a = 0; a <= b; ++a) {
      const std::int64_t d = ((side[a] - side[b]) % n + n) % n;
      gram[b * m + a] = scale * h[static_cast<std::size_t>(d)];
    }
  EigenPair top = hermitian_top_eigenpair(std::move(gram), m);

  std::vector<cplx> v(cols.size());
  if (col_side) {
    v = std::move(top.vector);
  } else {
    op.apply_adjoint(top.vector, v);
  }
  if (norm2(v) == 0.0) {
    cert.converged = true;
    return cert;
  }

  // Matrix-free certificate for v; polish with power steps if needed.
  PowerIterationOptions polish = opts;
  polish.max_iterations = std::max<std::int64_t>(opts.max_iterations, 2);
  NormCertificate refined = power_iteration_from(
      std::move(v), rows.size(), [&](std::span<const cplx> x, std::span<cplx> out) { op.apply(x, out); },
      [&](std::span<const cplx> w, std::span<cplx> out) { op.apply_adjoint(w, out); }, polish);
  refined.method = NormMethod::kDenseEigen;
  return refined;
}

NormCertificate masked_norm_dense(std::span<const std::int64_t> rows, std::span<const std::int64_t> cols,
                                  std::int64_t n) {
  const MaskedDft op({rows.begin(), rows.end()}, {cols.begin(), cols.end()}, n);
  const auto sv = jacobi_singular_values(op.dense(), rows.size(), cols.size());
  NormCertificate cert;
  cert.method = NormMethod::kDenseSvd;
  cert.sigma_max = sv.empty() ? 0.0 : sv.front();
  cert.converged = true;
  return cert;
}

std::vector<double> jacobi_singular_values(std::span<const cplx> matrix, std::size_t rows,
                                           std::size_t cols) {
  if (matrix.size() != rows * cols) throw ParameterError("matrix size mismatch");
  // Orthogonalise columns of B, where B = A if cols <= rows and A^* otherwise;
  // both have the same nonzero singular values. Columns are stored contiguously.
  const bool transpose = cols > rows;
  const std::size_t m = transpose ? cols : rows;  // column length
  const std::size_t n = transpose ? rows : cols;  // column count
  std::vector<cplx> b(m * n);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx a = matrix[r * cols + c];
      if (transpose)
        b[r * m + c] = std::conj(a);
      else
        b[c * m + r] = a;
    }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        cplx* ci = &b[i * m];
        cplx* cj = &b[j * m];
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t t = 0; t < m; ++t) {
          alpha += std::norm(ci[t]);
          beta += std::norm(cj[t]);
          gamma += std::conj(ci[t]) * cj[t];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 10.0 * eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate the phase out of gamma, then apply the real Jacobi rotation
        // that zeroes the (now real) inner product.
        const cplx phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const cplx x = ci[k];
          const cplx y = cj[k] * phase;
          ci[k] = c * x - s * y;
          cj[k] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t t = 0; t < m; ++t) s += std::norm(b[j * m + t]);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

FupExponentReport beta_k(const NormCertificate& cert, const CantorSet& cantor) {
  if (!(cert.sigma_max > 0.0)) throw std::logic_error("beta_k: sigma_max is zero for a nonempty Cantor set");
  FupExponentReport r;
  r.base = cantor.alphabet.base();
  r.depth = cantor.depth;
  r.modulus = cantor.modulus;
  r.delta = cantor.dimension();
  r.sigma_max = cert.sigma_max;
  r.beta = -std::log(cert.sigma_max) / (cantor.depth * std::log(static_cast<double>(r.base))) + 0.0;
  r.lower_theory = std::max(0.0, 0.5 - r.delta);
  r.upper_theory = 0.5 - r.delta / 2.0;
  return r;
}

FupExponentReport beta_dilated(const NormCertificate& cert, const DilatedCantorSet& dilated) {
  if (!(cert.sigma_max > 0.0)) throw std::logic_error("beta_dilated: sigma_max is zero");
  FupExponentReport r;
  r.base = dilated.base.alphabet.base();
  r.depth = dilated.base.depth;
  r.modulus = dilated.modulus;
  r.delta = dilated.base.dimension();
  r.sigma_max = cert.sigma_max;
  r.beta = -std::log(cert.sigma_max) / std::log(static_cast<double>(dilated.modulus)) + 0.0;
  r.lower_theory = std::max(0.0, 0.5 - r.delta);
  r.upper_theory = 0.5 - r.delta / 2.0;
  return r;
}

}  // namespace fup
