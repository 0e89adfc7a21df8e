#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "cppforge/constructions.hpp"
#include "cppforge/evaluator.hpp"
#include "cppforge/field.hpp"
#include "cppforge/poly.hpp"

namespace cppforge {

/// d * d_inv = 1 mod `modulus`, d_inv in [1, modulus).
struct ExponentInverse {
  Exponent d;
  Exponent modulus;
  Exponent d_inv;
};

/// Extended Euclid. M >= 2; throws NotCoprime.
ExponentInverse exp_inverse_euclid(Exponent d, Exponent M);

/// Inverse of r modulo 2^{2m} - 1 from its residues mod 2^m - 1 and 2^m + 1:
/// 2^{m-1}(2^m+1) r1^{-1} + 2^{m-1}(2^m-1) r2^{-1}. The result is checked by
/// multiplication before it is returned. Throws NotCoprime.
ExponentInverse exp_inverse_crt(Exponent r, unsigned m);

/// (x/a)^{d^{-1}} for a x^d. Throws NonMonomial or NotCoprime.
SparsePoly invert_monomial(const SparsePoly& p);

/// Closed-form inverse exponents for the three monomial families.
Exponent inverse_exponent1(unsigned m);  // 2^{3m-1} + 2^{3m-2} - 2^{2m-2} - 2^{m-2}
Exponent inverse_exponent2(unsigned m);  // by m mod 4
Exponent inverse_exponent3(unsigned m);  // 2^{2m-1} + 2^m + 2^{m-1} - 1

/// v x^{d'} with d' the closed form above, under the forward family's
/// hypotheses on (m, v). d' is cross-checked against Euclid.
StructuredCpp inverse_family1(unsigned m, const FieldElement& v);
StructuredCpp inverse_family2(unsigned m, const FieldElement& v);
StructuredCpp inverse_family3(unsigned m, const FieldElement& v);

/// Inverse of recursive_extend(seed, n, 0): x/v when tr(x) = 0, otherwise
/// x g(tr x)/tr x. `target` picks the degree-nm field (default field when
/// null).
StructuredCpp inverse_recursive_u0(std::shared_ptr<const SeedCpp> seed, unsigned n, FieldRef target = nullptr);

/// Inverse of recursive_extend(seed, n, u) for u != 0 (three branches on
/// tr(x)). Throws ZeroU or EvenExtension.
StructuredCpp inverse_recursive(std::shared_ptr<const SeedCpp> seed, unsigned n, const FieldElement& u);

/// Inverse by table: h[f(x)] = x over a whole field.
class LookupTable {
 public:
  LookupTable(FieldRef field, std::vector<std::uint32_t> table) : field_(std::move(field)), table_(std::move(table)) {}

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<std::uint32_t>& table() const noexcept { return table_; }
  std::uint64_t operator()(std::uint64_t x) const noexcept { return table_[x]; }
  Evaluator evaluator() const;

 private:
  FieldRef field_;
  std::vector<std::uint32_t> table_;
};

/// Throws FieldTooLarge above the exhaustive cap (or degree 32) and
/// NotBijectiveError with the first colliding pair found.
LookupTable compositional_inverse_table(const Evaluator& f, const FieldRef& field, unsigned threads = 0);

/// The closed-form inverse of a constructed polynomial: the exact monomial
/// for any single-term expansion, F-bar or F-tilde for the recursive and
/// single-trace families. Throws PreconditionViolated otherwise.
std::variant<SparsePoly, StructuredCpp> closed_form_inverse(const StructuredCpp& F);

}  // namespace cppforge
