#pragma once

// Slow, independent reference implementations used to check the library.
// Nothing here calls into cppforge arithmetic.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;

// Schoolbook carry-less product, then long division by the modulus.
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, unsigned e, u128 modulus) {
  u128 prod = 0;
  for (unsigned i = 0; i < 64; ++i) {
    if ((b >> i) & 1) prod ^= u128(a) << i;
  }
  for (int bit = 127; bit >= static_cast<int>(e); --bit) {
    if ((prod >> bit) & 1) prod ^= modulus << (bit - e);
  }
  return static_cast<std::uint64_t>(prod);
}

inline std::uint64_t pow(std::uint64_t a, u128 k, unsigned e, u128 modulus) {
  std::uint64_t r = 1;
  while (k) {
    if (k & 1) r = mul(r, a, e, modulus);
    a = mul(a, a, e, modulus);
    k >>= 1;
  }
  return r;
}

// Polynomial remainder over GF(2), for trial division.
inline u128 poly_mod(u128 a, u128 b) {
  auto degree = [](u128 p) {
    for (int i = 127; i >= 0; --i)
      if ((p >> i) & 1) return i;
    return -1;
  };
  const int d = degree(b);
  for (int i = degree(a); i >= d; --i) {
    if ((a >> i) & 1) a ^= b << (i - d);
  }
  return a;
}

// Irreducible iff no polynomial of degree 1..e/2 divides it.
inline bool irreducible_by_trial_division(unsigned e, u128 modulus) {
  for (unsigned d = 1; d <= e / 2; ++d) {
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << d); ++low) {
      const u128 divisor = (u128(1) << d) | low;
      if (poly_mod(modulus, divisor) == 0) return false;
    }
  }
  return true;
}

// Sort-and-scan: the first repeated value, as a pair of inputs.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> first_collision(const std::vector<std::uint64_t>& images) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted;
  sorted.reserve(images.size());
  for (std::uint64_t x = 0; x < images.size(); ++x) sorted.emplace_back(images[x], x);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first == sorted[i - 1].first) return std::make_pair(sorted[i - 1].second, sorted[i].second);
  }
  return std::nullopt;
}

inline bool is_permutation(const std::vector<std::uint64_t>& images) { return !first_collision(images); }

template <class F>
std::vector<std::uint64_t> images(F&& f, std::uint64_t size, bool plus_x = false) {
  std::vector<std::uint64_t> out(size);
  for (std::uint64_t x = 0; x < size; ++x) out[x] = f(x) ^ (plus_x ? x : 0);
  return out;
}

template <class F>
bool is_cpp(F&& f, std::uint64_t size) {
  return is_permutation(images(f, size)) && is_permutation(images(f, size, true));
}

// d^{-1} mod M by trying every candidate.
inline std::optional<std::uint64_t> brute_inverse(std::uint64_t d, std::uint64_t M) {
  for (std::uint64_t k = 1; k < M; ++k) {
    if (static_cast<u128>(d % M) * k % M == 1) return k;
  }
  return std::nullopt;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace oracle
