#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <stdexcept>
#include <string>

#include "fup/error.hpp"
#include "fup/spectral.hpp"

namespace fup {

EigenPair hermitian_top_eigenpair(std::vector<cplx> matrix, std::size_t n) {
  if (matrix.size() != n * n) throw ParameterError("Hermitian matrix size mismatch");
  EigenPair out;
  if (n == 0) return out;
  const auto ln = static_cast<lapack_int>(n);
  std::vector<double> w(n);
  std::vector<cplx> z(n);
  std::vector<lapack_int> support(2);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', ln, matrix.data(), ln, 0.0, 0.0, ln, ln,
                                         0.0, &found, w.data(), z.data(), ln, support.data());
  if (info != 0 || found != 1) throw std::runtime_error("zheevr failed with info " + std::to_string(info));
  out.value = w[0];
  out.vector = std::move(z);
  return out;
}

}  // namespace fup
