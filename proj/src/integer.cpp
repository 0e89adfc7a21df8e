#include "cppforge/integer.hpp"

#include <algorithm>
#include <numeric>

#include "cppforge/error.hpp"

namespace cppforge {

std::string to_decimal(Exponent value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Exponent parse_exponent(std::string_view text) {
  if (text.empty()) fail(ErrorCode::ParseError, "empty exponent");
  constexpr Exponent kMax = ~Exponent{0};
  Exponent value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') fail(ErrorCode::ParseError, "exponent is not a decimal integer: " + std::string(text));
    const auto digit = static_cast<unsigned>(c - '0');
    if (value > (kMax - digit) / 10) fail(ErrorCode::ParseError, "exponent overflows 128 bits: " + std::string(text));
    value = value * 10 + digit;
  }
  return value;
}

Exponent gcd(Exponent a, Exponent b) noexcept {
  while (b != 0) {
    const Exponent t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<Exponent>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are sufficient for every n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Brent's variant; returns a nontrivial factor or 0 when the budget runs out.
std::uint64_t pollard_rho(std::uint64_t n, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1; budget > 0; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const auto f = [&](std::uint64_t v) {
      return static_cast<std::uint64_t>((static_cast<Exponent>(mulmod(v, v, n)) + c) % n);
    };
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1 && budget > 0; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1 && budget > 0; k += kBatch) {
        ys = y;
        const std::uint64_t steps = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        budget = budget > steps ? budget - steps : 0;
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void split(std::uint64_t n, std::uint64_t& budget, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n, budget);
  if (d == 0) fail(ErrorCode::FactorizationTimeout, "Pollard rho budget exhausted on cofactor " + std::to_string(n));
  split(d, budget, out);
  split(n / d, budget, out);
}

}  // namespace

std::vector<std::uint64_t> factorize(std::uint64_t n, const FactorizationBudget& budget) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  for (std::uint64_t p = 2; p <= budget.trial_division_limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  std::uint64_t rho_budget = budget.rho_iterations;
  split(n, rho_budget, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cppforge
