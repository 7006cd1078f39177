#include "fup/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fup/error.hpp"

namespace fup {

std::int64_t checked_pow(std::int64_t base, int exp) {
  if (base < 1 || exp < 0) throw ParameterError("checked_pow needs base >= 1 and exp >= 0");
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > (kIndexCap - 1) / base)
      throw CapacityError(std::to_string(base) + "^" + std::to_string(exp) + " exceeds 2^53");
    result *= base;
  }
  return result;
}

Alphabet::Alphabet(std::int64_t base, std::vector<std::int64_t> letters)
    : base_(base), letters_(std::move(letters)) {
  if (base_ < 2) throw ParameterError("alphabet base must be >= 2");
  if (letters_.empty()) throw ParameterError("alphabet must be nonempty");
  std::sort(letters_.begin(), letters_.end());
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] < 0 || letters_[i] >= base_)
      throw ParameterError("letter " + std::to_string(letters_[i]) + " outside [0, M)");
    if (i > 0 && letters_[i] <= letters_[i - 1])
      throw ParameterError("alphabet letters must be distinct");
  }
}

bool Alphabet::contains(std::int64_t letter) const {
  return std::binary_search(letters_.begin(), letters_.end(), letter);
}

double Alphabet::dimension() const {
  return std::log(static_cast<double>(letters_.size())) / std::log(static_cast<double>(base_));
}

bool Alphabet::is_initial_segment() const {
  return letters_.front() == 0 && letters_.back() == size() - 1;
}

Alphabet build_alphabet_interval(std::int64_t base, double delta) {
  if (base < 3) throw ParameterError("interval alphabet needs M >= 3");
  if (!(delta > 0.0) || delta > 1.0) throw ParameterError("interval alphabet needs 0 < delta <= 1");
  const double width = std::pow(static_cast<double>(base), delta);
  if (width <= 2.0) throw ParameterError("interval alphabet degenerates: M^delta <= 2");
  // |l - M/2| <= M^delta/2, written as |2l - M| <= M^delta. Ties are included;
  // the relative slack absorbs pow() rounding when M^delta is an exact integer.
  const double limit = width * (1.0 + 1e-12);
  std::vector<std::int64_t> letters;
  for (std::int64_t l = 0; l < base; ++l) {
    if (std::abs(static_cast<double>(2 * l - base)) <= limit) letters.push_back(l);
  }
  return Alphabet(base, std::move(letters));
}

Alphabet build_alphabet_initial(std::int64_t base, std::int64_t mdelta) {
  if (mdelta < 1 || mdelta > base) throw ParameterError("initial alphabet needs 1 <= Mdelta <= M");
  std::vector<std::int64_t> letters(static_cast<std::size_t>(mdelta));
  for (std::int64_t i = 0; i < mdelta; ++i) letters[static_cast<std::size_t>(i)] = i;
  return Alphabet(base, std::move(letters));
}

bool initial_alphabet_in_dilation_regime(std::int64_t base, std::int64_t mdelta) {
  return mdelta >= 2 && mdelta * mdelta <= base;
}

CantorSet cantor_elements(const Alphabet& alphabet, int depth) {
  if (depth < 1) throw ParameterError("Cantor depth k must be >= 1");
  const std::int64_t modulus = checked_pow(alphabet.base(), depth);
  const std::int64_t count = checked_pow(alphabet.size(), depth);
  if (count > (std::int64_t{1} << 32)) throw CapacityError("|A|^k too large to enumerate");

  // Build by appending the most significant digit: C_j = C_{j-1} + M^{j-1} A.
  // Letters are sorted, so each level stays sorted when the new digit is the outer loop.
  std::vector<std::int64_t> elements{0};
  std::int64_t place = 1;
  for (int level = 0; level < depth; ++level) {
    std::vector<std::int64_t> next;
    next.reserve(elements.size() * alphabet.letters().size());
    for (std::int64_t a : alphabet.letters())
      for (std::int64_t c : elements) next.push_back(c + a * place);
    elements = std::move(next);
    place *= alphabet.base();
  }
  return CantorSet{alphabet, depth, modulus, std::move(elements)};
}

bool digits_in_alphabet(const Alphabet& alphabet, int depth, std::int64_t n) {
  if (n < 0) return false;
  for (int i = 0; i < depth; ++i) {
    if (!alphabet.contains(n % alphabet.base())) return false;
    n /= alphabet.base();
  }
  return n == 0;
}

DilatedCantorSet dilate(const CantorSet& cantor, const ExactRational& alpha) {
  const std::int64_t base = cantor.alphabet.base();
  if (alpha < ExactRational(1) || alpha >= ExactRational(base))
    throw ParameterError("dilation factor must satisfy 1 <= alpha < M, got " + alpha.to_string());
  const ExactRational scaled = alpha * ExactRational(cantor.modulus);
  if (!scaled.is_integer())
    throw ParameterError("N = alpha * M^k = " + scaled.to_string() + " is not an integer");
  const std::int64_t modulus = scaled.numerator();
  if (modulus % base != 0)
    throw ParameterError("N = " + std::to_string(modulus) + " is not a multiple of M");
  if (modulus >= kIndexCap) throw CapacityError("N exceeds 2^53");

  std::vector<std::int64_t> elements;
  elements.reserve(cantor.elements.size());
  for (std::int64_t j : cantor.elements) {
    const std::int64_t e = (alpha * ExactRational(j)).ceil();
    if (elements.empty() || elements.back() != e) elements.push_back(e);
  }
  return DilatedCantorSet{cantor, alpha, modulus, std::move(elements)};
}

}  // namespace fup
