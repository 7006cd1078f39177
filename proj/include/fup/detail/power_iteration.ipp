#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fup/random.hpp"

namespace fup {

template <class Apply, class Adjoint>
NormCertificate power_iteration(std::size_t in_dim, std::size_t out_dim, Apply&& apply,
                                Adjoint&& adjoint, const PowerIterationOptions& opts) {
  Rng rng(opts.seed);
  std::vector<cplx> v(in_dim);
  for (auto& x : v) x = rng.complex_uniform();
  return power_iteration_from(std::move(v), out_dim, std::forward<Apply>(apply), std::forward<Adjoint>(adjoint),
                              opts);
}

template <class Apply, class Adjoint>
NormCertificate power_iteration_from(std::vector<cplx> v, std::size_t out_dim, Apply&& apply,
                                     Adjoint&& adjoint, const PowerIterationOptions& opts) {
  const std::size_t in_dim = v.size();
  NormCertificate cert;
  cert.method = NormMethod::kPowerIteration;
  cert.seed = opts.seed;
  if (in_dim == 0 || out_dim == 0) {
    cert.converged = true;
    return cert;
  }

  std::vector<cplx> w(out_dim), z(in_dim);
  const double nv = std::sqrt(norm2(v));
  if (nv == 0.0) throw std::invalid_argument("power iteration start vector is zero");
  for (auto& x : v) x /= nv;

  double lambda_prev = -1.0;
  for (std::int64_t it = 1; it <= opts.max_iterations; ++it) {
    apply(std::span<const cplx>(v), std::span<cplx>(w));
    adjoint(std::span<const cplx>(w), std::span<cplx>(z));
    const double lambda = norm2(w);  // <v, A^*A v> for unit v
    cert.iterations = it;
    if (lambda == 0.0) {
      // v landed in the kernel; the map is zero on this start vector.
      cert.sigma_max = 0.0;
      cert.residual = 0.0;
      cert.converged = true;
      return cert;
    }
    double rnorm = 0.0;
    for (std::size_t i = 0; i < in_dim; ++i) rnorm += std::norm(z[i] - lambda * v[i]);
    const double residual = std::sqrt(rnorm) / lambda;
    const double change = lambda_prev < 0.0 ? 1.0 : std::abs(lambda - lambda_prev) / lambda;
    cert.sigma_max = std::sqrt(lambda);
    cert.residual = residual;
    if (change < opts.tol && residual < opts.tol) {
      cert.converged = true;
      return cert;
    }
    lambda_prev = lambda;
    const double nz = std::sqrt(norm2(z));
    for (std::size_t i = 0; i < in_dim; ++i) v[i] = z[i] / nz;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iterations) +
                             " iterations (residual " + std::to_string(cert.residual) + ")",
                         cert, v);
}

}  // namespace fup
