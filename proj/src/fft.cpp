#include "fup/fft.hpp"

#include <cmath>
#include <numbers>

#include "fup/error.hpp"

namespace fup {

DftPlan::DftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw ParameterError("DFT length must be >= 1");
  scale_ = 1.0 / std::sqrt(static_cast<double>(n));

  std::size_t rest = n;
  for (std::size_t p : {2u, 3u, 5u, 7u}) {
    while (rest % p == 0) {
      factors_.push_back(p);
      rest /= p;
    }
  }
  for (std::size_t p = 11; p * p <= rest; p += 2) {
    while (rest % p == 0) {
      factors_.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) factors_.push_back(rest);

  roots_.resize(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t t = 0; t < n; ++t) {
    const long double angle = -two_pi * static_cast<long double>(t) / static_cast<long double>(n);
    roots_[t] = cplx(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
  }
}

void DftPlan::recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t stage,
                      std::size_t len, std::vector<cplx>& scratch) const {
  if (stage == factors_.size()) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = factors_[stage];
  const std::size_t m = len / p;
  for (std::size_t r = 0; r < p; ++r) recurse(in + r * stride, stride * p, out + r * m, stage + 1, m, scratch);

  const std::size_t tstride = n_ / len;  // exp(-2 pi i / len) = roots_[tstride]
  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const cplx a = out[k];
      const cplx b = out[k + m] * roots_[k * tstride];
      out[k] = a + b;
      out[k + m] = a - b;
    }
    return;
  }
  const std::size_t pstride = n_ / p;  // exp(-2 pi i / p)
  scratch.resize(p);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) scratch[r] = out[r * m + k] * root(r * k * tstride);
    for (std::size_t q = 0; q < p; ++q) {
      cplx acc = scratch[0];
      std::size_t idx = 0;
      const std::size_t step = (q * pstride) % n_;
      for (std::size_t r = 1; r < p; ++r) {
        idx += step;
        if (idx >= n_) idx -= n_;
        acc += scratch[r] * roots_[idx];
      }
      out[k + q * m] = acc;
    }
  }
}

void DftPlan::apply(std::span<const cplx> in, std::span<cplx> out, Direction dir) const {
  if (in.size() != n_ || out.size() != n_) throw ParameterError("DFT buffer length mismatch");
  std::vector<cplx> scratch;
  if (dir == Direction::kForward) {
    recurse(in.data(), 1, out.data(), 0, n_, scratch);
    for (auto& z : out) z *= scale_;
  } else {
    // F^* u = conj(F conj(u))
    std::vector<cplx> conj_in(in.begin(), in.end());
    for (auto& z : conj_in) z = std::conj(z);
    recurse(conj_in.data(), 1, out.data(), 0, n_, scratch);
    for (auto& z : out) z = std::conj(z) * scale_;
  }
}

ComplexVec DftPlan::apply(std::span<const cplx> in, Direction dir) const {
  ComplexVec out(n_);
  apply(in, out, dir);
  return out;
}

ComplexVec dft_apply(std::span<const cplx> u, Direction dir) {
  return DftPlan(u.size()).apply(u, dir);
}

double norm2(std::span<const cplx> u) {
  double s = 0.0;
  for (const auto& z : u) s += std::norm(z);
  return s;
}

}  // namespace fup
