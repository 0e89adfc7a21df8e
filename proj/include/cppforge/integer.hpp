#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cppforge {

/// Exponents such as 2^{2m}+1 are kept exact; 128 bits cover every field up
/// to degree 64 without overflow.
using Exponent = unsigned __int128;

/// 2^e - 1 for 0 <= e <= 64.
constexpr std::uint64_t mersenne(unsigned e) noexcept {
  return e >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << e) - 1;
}

constexpr Exponent pow2(unsigned k) noexcept { return Exponent{1} << k; }

std::string to_decimal(Exponent value);
Exponent parse_exponent(std::string_view text);  // throws Error(ParseError)

Exponent gcd(Exponent a, Exponent b) noexcept;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

struct FactorizationBudget {
  std::uint64_t trial_division_limit = 1'000'000;
  std::uint64_t rho_iterations = 50'000'000;
};

/// Prime factors with multiplicity, ascending. Throws FactorizationTimeout
/// when Pollard rho exhausts its iteration budget.
std::vector<std::uint64_t> factorize(std::uint64_t n, const FactorizationBudget& budget = {});

}  // namespace cppforge
