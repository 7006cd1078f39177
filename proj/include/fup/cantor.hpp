#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fup/rational.hpp"

namespace fup {

/// Largest M^k (exclusive) supported by set arithmetic. Every index below it is
/// exactly representable as a double.
inline constexpr std::int64_t kIndexCap = std::int64_t{1} << 53;

/// Returns base^exp, throwing CapacityError when the result reaches kIndexCap.
std::int64_t checked_pow(std::int64_t base, int exp);

/// Base M together with a strictly increasing letter set in [0, M).
///
/// The dimension is kept as the exact pair (|letters|, M); dimension() recomputes
/// log|letters| / log M on demand.
class Alphabet {
 public:
  Alphabet(std::int64_t base, std::vector<std::int64_t> letters);

  std::int64_t base() const { return base_; }
  const std::vector<std::int64_t>& letters() const { return letters_; }
  std::int64_t size() const { return static_cast<std::int64_t>(letters_.size()); }
  bool contains(std::int64_t letter) const;
  double dimension() const;

  /// True for initial segments {0, 1, ..., Q-1}.
  bool is_initial_segment() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::int64_t base_;
  std::vector<std::int64_t> letters_;
};

/// {l in Z_M : |l - M/2| <= M^delta / 2}. Requires M >= 3 and M^delta > 2.
Alphabet build_alphabet_interval(std::int64_t base, double delta);

/// {0, ..., Mdelta - 1}.
Alphabet build_alphabet_initial(std::int64_t base, std::int64_t mdelta);

/// True when Mdelta^2 <= M, i.e. the dimension is at most 1/2.
bool initial_alphabet_in_dilation_regime(std::int64_t base, std::int64_t mdelta);

struct CantorSet {
  Alphabet alphabet;
  int depth;                            // k
  std::int64_t modulus;                 // M^k
  std::vector<std::int64_t> elements;   // strictly increasing

  double dimension() const { return alphabet.dimension(); }
};

/// All integers in [0, M^k) whose k base-M digits lie in the alphabet.
CantorSet cantor_elements(const Alphabet& alphabet, int depth);

/// True when every base-M digit of n (k digits) is a letter.
bool digits_in_alphabet(const Alphabet& alphabet, int depth, std::int64_t n);

struct DilatedCantorSet {
  CantorSet base;
  ExactRational alpha;
  std::int64_t modulus;                 // N = alpha * M^k
  std::vector<std::int64_t> elements;   // {ceil(alpha * j)}
};

/// Dilates C_k by alpha in [1, M). N = alpha * M^k must be an integer multiple of M.
DilatedCantorSet dilate(const CantorSet& cantor, const ExactRational& alpha);

}  // namespace fup
