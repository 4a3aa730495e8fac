#include "clustest/kwise.hpp"

#include <array>
#include <bit>
#include <sstream>

#include "clustest/error.hpp"
#include "clustest/random.hpp"

namespace clustest {
namespace {

constexpr std::array<std::uint64_t, 33> kIrreducible = {
    0x0,        0x3,        0x7,        0xb,        0x13,       0x25,        0x43,
    0x83,       0x11b,      0x203,      0x409,      0x805,      0x1009,      0x201b,
    0x4021,     0x8003,     0x1002b,    0x20009,    0x40009,    0x80027,     0x100009,
    0x200005,   0x400003,   0x800021,   0x100001b,  0x2000009,  0x400001b,   0x8000027,
    0x10000003, 0x20000005, 0x40000003, 0x80000009, 0x10000008d,
};

int degree_of(std::uint64_t p) noexcept { return 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) noexcept {
  const int dm = degree_of(m);
  while (a != 0 && degree_of(a) >= dm) a ^= m << (degree_of(a) - dm);
  return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  const int dm = degree_of(m);
  std::uint64_t r = 0;
  a = poly_mod(a, m);
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> dm) & 1) a ^= m;
  }
  return r;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

unsigned coin_field_bits(std::uint64_t n_indices) {
  return std::max(4u, static_cast<unsigned>(std::bit_width(n_indices)));
}

std::vector<std::uint32_t> seeded_coefficients(std::uint32_t k, std::uint64_t seed,
                                               std::uint32_t mask) {
  Rng rng(seed);
  std::vector<std::uint32_t> c(k);
  for (auto& x : c) x = static_cast<std::uint32_t>(rng()) & mask;
  return c;
}

void check_k(std::uint32_t k, std::uint64_t n) {
  if (k == 0 || k % 2 == 0 || k > n) {
    std::ostringstream out;
    out << "k=" << k << " must be odd and at most n_indices=" << n;
    throw Error(ErrorCode::kInvalidK, out.str());
  }
}

}  // namespace

std::uint64_t irreducible_polynomial(unsigned bits) {
  if (bits < 1 || bits > 32) {
    throw Error(ErrorCode::kConfigError, "field width " + std::to_string(bits) + " not in [1, 32]");
  }
  return kIrreducible[bits];
}

bool is_irreducible(std::uint64_t poly) {
  const int t = degree_of(poly);
  if (t < 1 || t > 32) return false;
  std::uint64_t p = 2;  // x
  for (int i = 1; i <= t / 2; ++i) {
    p = poly_mulmod(p, p, poly);
    if (poly_gcd(poly, p ^ 2) != 1) return false;
  }
  return true;
}

GaloisField::GaloisField(unsigned bits)
    : bits_(bits),
      modulus_(irreducible_polynomial(bits)),
      mask_(static_cast<std::uint32_t>((std::uint64_t{1} << bits) - 1)) {}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  std::uint64_t x = a;
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= x;
    b >>= 1;
    x <<= 1;
  }
  for (int bit = 2 * static_cast<int>(bits_) - 2; bit >= static_cast<int>(bits_); --bit) {
    if ((r >> bit) & 1) r ^= modulus_ << (bit - bits_);
  }
  return static_cast<std::uint32_t>(r);
}

KWisePolynomial::KWisePolynomial(GaloisField field, std::vector<std::uint32_t> coefficients,
                                 std::uint64_t n_indices)
    : field_(field), coefficients_(std::move(coefficients)), n_indices_(n_indices) {
  if (n_indices_ + 1 > field_.size()) {
    std::ostringstream out;
    out << n_indices_ << " evaluation points do not fit GF(2^" << field_.bits() << ")";
    throw Error(ErrorCode::kIndexOutOfRange, out.str());
  }
  for (auto& c : coefficients_) c &= field_.mask();
}

std::uint32_t KWisePolynomial::value(std::uint64_t index) const noexcept {
  const auto x = static_cast<std::uint32_t>(index + 1);
  std::uint32_t acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = field_.mul(acc, x) ^ *it;
  }
  return acc;
}

KWiseSource::KWiseSource(std::uint32_t k, std::uint64_t n_indices, std::uint64_t seed)
    : KWiseSource(k, n_indices, seed, coin_field_bits(n_indices)) {}

KWiseSource::KWiseSource(std::uint32_t k, std::uint64_t n_indices, std::uint64_t seed,
                         unsigned field_bits)
    : k_((check_k(k, n_indices), k)),
      seed_(seed),
      poly_(GaloisField(field_bits),
            seeded_coefficients(k, seed, GaloisField(field_bits).mask()), n_indices) {}

CoinValue KWiseSource::coin(std::uint64_t walk, std::uint64_t step,
                            std::uint64_t walk_length) const {
  const std::uint64_t index = walk * walk_length + step;
  if (step >= walk_length || index >= n_indices()) {
    std::ostringstream out;
    out << "coin (" << walk << ", " << step << ") with walk length " << walk_length
        << " outside " << n_indices() << " variables";
    throw Error(ErrorCode::kIndexOutOfRange, out.str());
  }
  if (field_bits() < 4) {
    throw Error(ErrorCode::kConfigError, "coins need a field of at least 4 bits");
  }
  return CoinValue{static_cast<std::uint8_t>(1 + (value(index) & 0xF))};
}

std::uint32_t clamp_independence(std::uint64_t target, std::uint64_t n_indices) noexcept {
  std::uint64_t k = std::min(target, n_indices);
  if (k == 0) return 1;
  if (k % 2 == 0) --k;
  return static_cast<std::uint32_t>(std::max<std::uint64_t>(k, 1));
}

}  // namespace clustest
