#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace clustest {

/// GF(2^t) arithmetic for 1 <= t <= 32, elements stored in the low t bits.
class GaloisField {
 public:
  explicit GaloisField(unsigned bits);

  unsigned bits() const noexcept { return bits_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint32_t mask() const noexcept { return mask_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << bits_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;

 private:
  unsigned bits_;
  std::uint64_t modulus_;
  std::uint32_t mask_;
};

/// Low-weight irreducible polynomial of degree t (bit t set), 1 <= t <= 32.
std::uint64_t irreducible_polynomial(unsigned bits);

/// Ben-Or irreducibility test for a GF(2)[x] polynomial of degree <= 32.
bool is_irreducible(std::uint64_t poly);

/// Degree-(k-1) polynomial over GF(2^t) evaluated at the distinct nonzero
/// points 1..n. Any k of the n values are jointly uniform when the
/// coefficients are.
class KWisePolynomial {
 public:
  KWisePolynomial(GaloisField field, std::vector<std::uint32_t> coefficients,
                  std::uint64_t n_indices);

  /// Field value of variable `index` (0-based), i.e. the polynomial at
  /// point index + 1.
  std::uint32_t value(std::uint64_t index) const noexcept;

  const GaloisField& field() const noexcept { return field_; }
  std::span<const std::uint32_t> coefficients() const noexcept { return coefficients_; }
  std::uint64_t n_indices() const noexcept { return n_indices_; }

 private:
  GaloisField field_;
  std::vector<std::uint32_t> coefficients_;
  std::uint64_t n_indices_;
};

/// One walk coin. raw is uniform over [1, 16]; raw <= d means "move along
/// port raw", anything larger means "stay".
struct CoinValue {
  std::uint8_t raw = 1;

  bool is_move(std::uint32_t degree) const noexcept { return raw <= degree; }
  /// 1-based port; meaningful only when is_move().
  std::uint32_t port() const noexcept { return raw; }

  bool operator==(const CoinValue&) const = default;
};

/// Seeded k-wise independent source over n_indices variables.
class KWiseSource {
 public:
  /// Field width is max(4, bit_width(n_indices)) so that 2^t >= n + 1 and
  /// coins can take 4 low bits. Throws Error{kInvalidK} if k is even, zero,
  /// or larger than n_indices.
  KWiseSource(std::uint32_t k, std::uint64_t n_indices, std::uint64_t seed);

  /// Explicit field width (must satisfy 2^t >= n + 1). Used for reduced-width
  /// enumeration; coins require t >= 4.
  KWiseSource(std::uint32_t k, std::uint64_t n_indices, std::uint64_t seed, unsigned field_bits);

  std::uint32_t k() const noexcept { return k_; }
  std::uint64_t n_indices() const noexcept { return poly_.n_indices(); }
  unsigned field_bits() const noexcept { return poly_.field().bits(); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::span<const std::uint32_t> coefficients() const noexcept { return poly_.coefficients(); }

  std::uint32_t value(std::uint64_t index) const noexcept { return poly_.value(index); }

  /// Coin for 0-based (walk, step) in a K x L layout; flattened index is
  /// walk * walk_length + step. Throws Error{kIndexOutOfRange}.
  CoinValue coin(std::uint64_t walk, std::uint64_t step, std::uint64_t walk_length) const;

 private:
  std::uint32_t k_;
  std::uint64_t seed_;
  KWisePolynomial poly_;
};

/// Largest odd k <= min(target, n_indices); at least 1.
std::uint32_t clamp_independence(std::uint64_t target, std::uint64_t n_indices) noexcept;

}  // namespace clustest
