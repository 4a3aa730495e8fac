#include <gtest/gtest.h>

#include <map>
#include <set>

#include "clustest/error.hpp"
#include "clustest/kwise.hpp"
#include "clustest/random.hpp"

namespace clustest {
namespace {

// Carry-less product followed by polynomial long division; independent of
// GaloisField::mul.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, unsigned t, std::uint64_t modulus) {
  unsigned __int128 prod = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if ((b >> i) & 1) prod ^= static_cast<unsigned __int128>(a) << i;
  }
  for (int bit = 63; bit >= static_cast<int>(t); --bit) {
    if ((prod >> bit) & 1) prod ^= static_cast<unsigned __int128>(modulus) << (bit - static_cast<int>(t));
  }
  return static_cast<std::uint32_t>(prod);
}

TEST(GaloisField, TableEntriesAreIrreducible) {
  for (unsigned t = 1; t <= 32; ++t) {
    const std::uint64_t p = irreducible_polynomial(t);
    EXPECT_EQ(p >> t, 1u) << t;
    EXPECT_TRUE(is_irreducible(p)) << t;
  }
  EXPECT_FALSE(is_irreducible(0b101));   // x^2 + 1 = (x + 1)^2
  EXPECT_FALSE(is_irreducible(0b1111));  // x^3 + x^2 + x + 1
}

TEST(GaloisField, MultiplicationMatchesSlowReference) {
  Rng rng(1);
  for (unsigned t : {1u, 2u, 4u, 7u, 8u, 13u, 20u, 31u, 32u}) {
    const GaloisField f(t);
    for (int i = 0; i < 2000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng()) & f.mask();
      const auto b = static_cast<std::uint32_t>(rng()) & f.mask();
      ASSERT_EQ(f.mul(a, b), slow_mul(a, b, t, f.modulus())) << t;
    }
  }
}

TEST(GaloisField, NonzeroElementsHaveInverses) {
  for (unsigned t : {2u, 3u, 4u, 5u}) {
    const GaloisField f(t);
    for (std::uint32_t a = 1; a < f.size(); ++a) {
      std::set<std::uint32_t> products;
      for (std::uint32_t b = 0; b < f.size(); ++b) products.insert(f.mul(a, b));
      EXPECT_EQ(products.size(), f.size());
    }
  }
}

// Every k-subset of the n outputs is exactly uniform over GF(2^t)^k when the
// k coefficients range over all of GF(2^t)^k.
void expect_exact_kwise(unsigned t, std::uint32_t k, std::uint64_t n) {
  const GaloisField field(t);
  const std::uint64_t q = field.size();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < k; ++i) total *= q;
  std::vector<std::vector<std::uint32_t>> values(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> coeffs(k);
    std::uint64_t c = code;
    for (auto& x : coeffs) {
      x = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    const KWisePolynomial poly(field, coeffs, n);
    for (std::uint64_t i = 0; i < n; ++i) values[code].push_back(poly.value(i));
  }
  std::vector<std::uint64_t> idx(k);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t depth, std::uint64_t from) {
    if (depth == k) {
      std::vector<std::uint32_t> hist(total, 0);
      for (const auto& row : values) {
        std::uint64_t key = 0;
        for (std::uint64_t i : idx) key = key * q + row[i];
        ++hist[key];
      }
      for (auto h : hist) ASSERT_EQ(h, 1u);
      return;
    }
    for (std::uint64_t i = from; i < n; ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
}

TEST(KWise, ExactThreeWiseUniformity) {
  expect_exact_kwise(2, 3, 3);
  expect_exact_kwise(3, 3, 7);
  expect_exact_kwise(4, 3, 15);
}

TEST(KWise, TwoWalksOfLengthTwoAreJointlyUniform) {
  // K = 3 walks of L = 2 steps in GF(16); k = 5 covers any two walks.
  const GaloisField field(4);
  constexpr std::uint64_t L = 2, K = 3;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint32_t>> hist;
  for (std::uint32_t code = 0; code < (1u << 20); ++code) {
    std::vector<std::uint32_t> coeffs(5);
    for (std::uint32_t i = 0; i < 5; ++i) coeffs[i] = (code >> (4 * i)) & 15;
    const KWisePolynomial poly(field, coeffs, K * L);
    for (std::uint64_t a = 0; a < K; ++a) {
      for (std::uint64_t b = a + 1; b < K; ++b) {
        auto& h = hist[{a, b}];
        h.resize(1u << 16);
        const std::uint32_t key = poly.value(a * L) | poly.value(a * L + 1) << 4 |
                                  poly.value(b * L) << 8 | poly.value(b * L + 1) << 12;
        ++h[key];
      }
    }
  }
  for (const auto& [walks, h] : hist) {
    for (auto c : h) ASSERT_EQ(c, 16u);  // 2^20 seeds over 2^16 outcomes
  }
}

TEST(KWise, SourceValidation) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  EXPECT_EQ(code([] { KWiseSource(4, 7, 0); }), ErrorCode::kInvalidK);
  EXPECT_EQ(code([] { KWiseSource(0, 7, 0); }), ErrorCode::kInvalidK);
  EXPECT_EQ(code([] { KWiseSource(9, 7, 0); }), ErrorCode::kInvalidK);
  EXPECT_NO_THROW(KWiseSource(3, 7, 0));
  const KWiseSource s(3, 6, 0);
  EXPECT_EQ(code([&] { s.coin(3, 0, 2); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code([&] { s.coin(0, 2, 2); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code([] { KWiseSource(3, 7, 0, 3).coin(0, 0, 7); }), ErrorCode::kConfigError);
}

TEST(KWise, DeterministicStreams) {
  const KWiseSource a(81, 790, 42), b(81, 790, 42), c(81, 790, 43);
  bool differs = false;
  for (std::uint64_t i = 0; i < 790; ++i) {
    ASSERT_EQ(a.value(i), b.value(i));
    differs |= a.value(i) != c.value(i);
  }
  EXPECT_TRUE(differs);
}

TEST(KWise, CoinMappingTable) {
  const KWiseSource s(5, 100, 9);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CoinValue c = s.coin(i / 10, i % 10, 10);
    EXPECT_EQ(c.raw, 1 + (s.value(i) & 15));
  }
  EXPECT_TRUE(CoinValue{1}.is_move(6));
  EXPECT_EQ(CoinValue{1}.port(), 1u);
  EXPECT_TRUE(CoinValue{6}.is_move(6));
  EXPECT_FALSE(CoinValue{14}.is_move(6));  // bits 1101
  for (std::uint8_t raw = 7; raw <= 16; ++raw) EXPECT_FALSE(CoinValue{raw}.is_move(6));
}

TEST(KWise, ClampIndependence) {
  EXPECT_EQ(clamp_independence(81, 790), 81u);
  EXPECT_EQ(clamp_independence(81, 21), 21u);
  EXPECT_EQ(clamp_independence(81, 20), 19u);
  EXPECT_EQ(clamp_independence(81, 0), 1u);
}

TEST(KWise, CoinsAreRoughlyUniform) {
  const KWiseSource s(17, 1u << 16, 5);
  std::vector<int> hist(17, 0);
  for (std::uint64_t i = 0; i < (1u << 16); ++i) ++hist[s.coin(i, 0, 1).raw];
  for (int raw = 1; raw <= 16; ++raw) EXPECT_NEAR(hist[raw], 4096, 5 * 64) << raw;
}

}  // namespace
}  // namespace clustest
