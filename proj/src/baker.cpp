#include "fup/baker.hpp"

#include <algorithm>
#include <cmath>

#include "fup/diophantine.hpp"
#include "fup/error.hpp"

namespace fup {

std::string to_string(CutoffKind kind) {
  switch (kind) {
    case CutoffKind::kSmoothBump: return "bump";
    case CutoffKind::kSharp: return "sharp";
    case CutoffKind::kSampled: return "sampled";
  }
  return "unknown";
}

double smooth_bump(double t) {
  if (!(t > 0.0 && t < 1.0)) return 0.0;
  const double s = 2.0 * t - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

CutoffProfile make_smooth_cutoff(std::int64_t block_size) {
  if (block_size < 1) throw ParameterError("cutoff block size must be >= 1");
  CutoffProfile c{CutoffKind::kSmoothBump, std::vector<double>(static_cast<std::size_t>(block_size))};
  for (std::int64_t l = 0; l < block_size; ++l)
    c.samples[static_cast<std::size_t>(l)] = smooth_bump(static_cast<double>(l) / static_cast<double>(block_size));
  return c;
}

CutoffProfile make_sharp_cutoff(std::int64_t block_size) {
  if (block_size < 1) throw ParameterError("cutoff block size must be >= 1");
  return CutoffProfile{CutoffKind::kSharp, std::vector<double>(static_cast<std::size_t>(block_size), 1.0)};
}

CutoffProfile make_sampled_cutoff(std::vector<double> samples) {
  if (samples.empty()) throw ParameterError("sampled cutoff is empty");
  for (double v : samples)
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("cutoff samples must lie in [0, 1]");
  return CutoffProfile{CutoffKind::kSampled, std::move(samples)};
}

BakerMap::BakerMap(std::int64_t n, Alphabet alphabet, CutoffProfile cutoff)
    : n_(n),
      block_(alphabet.base() > 0 ? n / alphabet.base() : 0),
      alphabet_(std::move(alphabet)),
      cutoff_(std::move(cutoff)),
      full_plan_(static_cast<std::size_t>(std::max<std::int64_t>(n, 1))),
      block_plan_(static_cast<std::size_t>(std::max<std::int64_t>(block_, 1))) {
  if (n < alphabet_.base() || n % alphabet_.base() != 0)
    throw ParameterError("baker map needs N to be a positive multiple of M");
  if (static_cast<std::int64_t>(cutoff_.samples.size()) != block_)
    throw ParameterError("cutoff profile must have N/M samples");
}

void BakerMap::apply(std::span<const cplx> v, std::span<cplx> out) const {
  if (static_cast<std::int64_t>(v.size()) != n_ || static_cast<std::int64_t>(out.size()) != n_)
    throw ParameterError("baker map buffer length mismatch");
  const auto blk = static_cast<std::size_t>(block_);
  ComplexVec mid(static_cast<std::size_t>(n_)), tmp(blk), spec(blk);
  for (std::int64_t a : alphabet_.letters()) {
    const std::size_t off = static_cast<std::size_t>(a) * blk;
    for (std::size_t l = 0; l < blk; ++l) tmp[l] = cutoff_.samples[l] * v[off + l];
    block_plan_.apply(tmp, spec, Direction::kForward);
    for (std::size_t l = 0; l < blk; ++l) mid[off + l] = cutoff_.samples[l] * spec[l];
  }
  full_plan_.apply(mid, out, Direction::kAdjoint);
}

void BakerMap::apply_adjoint(std::span<const cplx> v, std::span<cplx> out) const {
  if (static_cast<std::int64_t>(v.size()) != n_ || static_cast<std::int64_t>(out.size()) != n_)
    throw ParameterError("baker map buffer length mismatch");
  const auto blk = static_cast<std::size_t>(block_);
  ComplexVec mid(static_cast<std::size_t>(n_)), tmp(blk), spec(blk);
  full_plan_.apply(v, mid, Direction::kForward);
  std::fill(out.begin(), out.end(), cplx{});
  for (std::int64_t a : alphabet_.letters()) {
    const std::size_t off = static_cast<std::size_t>(a) * blk;
    for (std::size_t l = 0; l < blk; ++l) tmp[l] = cutoff_.samples[l] * mid[off + l];
    block_plan_.apply(tmp, spec, Direction::kAdjoint);
    for (std::size_t l = 0; l < blk; ++l) out[off + l] = cutoff_.samples[l] * spec[l];
  }
}

ComplexVec BakerMap::apply(std::span<const cplx> v) const {
  ComplexVec out(static_cast<std::size_t>(n_));
  apply(v, out);
  return out;
}

ComplexVec BakerMap::apply_adjoint(std::span<const cplx> v) const {
  ComplexVec out(static_cast<std::size_t>(n_));
  apply_adjoint(v, out);
  return out;
}

BakerMap build_baker(std::int64_t n, const Alphabet& alphabet, const CutoffProfile& cutoff) {
  return BakerMap(n, alphabet, cutoff);
}

std::pair<ExactRational, int> split_dimension(std::int64_t n, std::int64_t base) {
  if (base < 2 || n < base || n % base != 0) throw ParameterError("split_dimension needs N in M Z, N >= M");
  int k = 0;
  std::int64_t pk = 1;
  while (pk <= n / base) {
    pk *= base;
    ++k;
  }
  return {ExactRational(n, pk), k};
}

namespace {
constexpr std::int64_t kBakerDenseLimit = 1024;
}  // namespace

GelfandReport gelfand_bound(const BakerMap& map, const GelfandOptions& opts) {
  if (opts.n_max < 1) throw ParameterError("gelfand_bound needs n_max >= 1");
  GelfandReport rep;
  rep.n = map.size();
  rep.base = map.base();
  rep.eps = opts.eps;
  const auto dim = static_cast<std::size_t>(map.size());

  for (std::int64_t power = 1; power <= opts.n_max; power *= 2) {
    ComplexVec scratch(dim);
    auto apply_pow = [&](std::span<const cplx> v, std::span<cplx> out) {
      std::copy(v.begin(), v.end(), out.begin());
      for (std::int64_t i = 0; i < power; ++i) {
        map.apply(out, scratch);
        std::copy(scratch.begin(), scratch.end(), out.begin());
      }
    };
    auto adjoint_pow = [&](std::span<const cplx> v, std::span<cplx> out) {
      std::copy(v.begin(), v.end(), out.begin());
      for (std::int64_t i = 0; i < power; ++i) {
        map.apply_adjoint(out, scratch);
        std::copy(scratch.begin(), scratch.end(), out.begin());
      }
    };
    const bool can_fall_back = opts.power.dense_fallback_limit > 0 &&
                               map.size() <= std::min<std::int64_t>(opts.power.dense_fallback_limit, kBakerDenseLimit) &&
                               opts.power.dense_fallback_after < opts.power.max_iterations;
    PowerIterationOptions first = opts.power;
    if (can_fall_back) first.max_iterations = opts.power.dense_fallback_after;
    NormCertificate cert;
    bool converged = true;
    try {
      cert = power_iteration(dim, dim, apply_pow, adjoint_pow, first);
    } catch (const ConvergenceError& e) {
      cert = e.best();
      converged = false;
    }
    if (!converged && can_fall_back) {
      // Start again from the top eigenvector of the dense Gram matrix of B^n.
      std::vector<cplx> dense(dim * dim);
      ComplexVec unit(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        std::fill(unit.begin(), unit.end(), cplx{});
        unit[c] = 1.0;
        apply_pow(unit, std::span<cplx>(dense.data() + c * dim, dim));
      }
      std::vector<cplx> gram(dim * dim);
      for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t a = 0; a <= b; ++a) {
          cplx acc{};
          for (std::size_t t = 0; t < dim; ++t) acc += std::conj(dense[a * dim + t]) * dense[b * dim + t];
          gram[b * dim + a] = acc;
        }
      EigenPair top = hermitian_top_eigenpair(std::move(gram), dim);
      PowerIterationOptions rest = opts.power;
      rest.max_iterations = std::max<std::int64_t>(opts.power.max_iterations - opts.power.dense_fallback_after, 2);
      const std::int64_t spent = cert.iterations;
      try {
        cert = power_iteration_from(std::move(top.vector), dim, apply_pow, adjoint_pow, rest);
        converged = true;
      } catch (const ConvergenceError& e) {
        cert = e.best();
      }
      cert.iterations += spent;
    }
    PowerNorm pn;
    pn.power = power;
    pn.rayleigh_norm = cert.sigma_max;
    pn.residual = cert.residual;
    pn.iterations = cert.iterations;
    pn.converged = converged;
    pn.norm_estimate = cert.sigma_max * std::sqrt(1.0 + cert.residual);
    rep.powers.push_back(pn);

    const double root = pn.norm_estimate > 0.0 ? std::pow(pn.norm_estimate, 1.0 / static_cast<double>(power)) : 0.0;
    rep.rho_upper = rep.envelope.empty() ? root : std::min(rep.rho_upper, root);
    rep.envelope.push_back(rep.rho_upper);
    if (rep.powers.size() >= 2) {
      const double prev = rep.powers[rep.powers.size() - 2].norm_estimate;
      if (pn.norm_estimate > prev * prev + 1e-9) rep.submultiplicative = false;
    }
  }

  const auto [alpha, depth] = split_dimension(map.size(), map.base());
  rep.alpha = alpha;
  rep.depth = depth;
  const Alphabet& alphabet = map.alphabet();
  if (alphabet.is_initial_segment() && initial_alphabet_in_dilation_regime(alphabet.base(), alphabet.size())) {
    const RationalApprox approx = best_rational(alpha, alphabet.base(), alphabet.size());
    const double delta = alphabet.dimension();
    rep.q = approx.q;
    rep.gamma = approx.gamma;
    rep.theorem3_bound =
        std::pow(static_cast<double>(alphabet.base()), -(0.5 - delta + approx.gamma / 2.0) + opts.eps);
  }
  return rep;
}

}  // namespace fup
