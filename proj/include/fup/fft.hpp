#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fup {

using cplx = std::complex<double>;
using ComplexVec = std::vector<cplx>;

enum class Direction { kForward, kAdjoint };

/// Unitary DFT of length N:  (F_N u)(j) = N^{-1/2} sum_l exp(-2 pi i j l / N) u(l).
///
/// Mixed-radix decimation in time. Radix-2 stages use a dedicated butterfly;
/// every other prime factor p uses a direct p-point butterfly, so a stage costs
/// O(N p). Factors 3, 5, 7 keep the whole transform O(N log N); a large prime
/// factor degrades gracefully to direct summation (O(N^2) when N is prime).
///
/// A plan is immutable after construction and may be shared across threads.
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  const std::vector<std::size_t>& factors() const { return factors_; }

  /// out = F_N in (or F_N^* in). `in` and `out` must not alias.
  void apply(std::span<const cplx> in, std::span<cplx> out, Direction dir) const;

  ComplexVec apply(std::span<const cplx> in, Direction dir) const;

 private:
  void recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t stage,
               std::size_t len, std::vector<cplx>& scratch) const;
  cplx root(std::size_t t) const { return roots_[t % n_]; }

  std::size_t n_;
  double scale_;
  std::vector<std::size_t> factors_;
  std::vector<cplx> roots_;  // exp(-2 pi i t / N)
};

/// Convenience wrapper building a one-shot plan.
ComplexVec dft_apply(std::span<const cplx> u, Direction dir = Direction::kForward);

double norm2(std::span<const cplx> u);  // sum |u_l|^2

}  // namespace fup
