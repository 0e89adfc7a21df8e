#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cppforge/error.hpp"
#include "cppforge/integer.hpp"

namespace cppforge {

/// Bit i of a modulus is the coefficient of X^i; bit `degree` is always set,
/// so degree-64 moduli need the extra word.
using Modulus = unsigned __int128;

class BinaryField;
using FieldRef = std::shared_ptr<const BinaryField>;

/// GF(2^e) in a polynomial basis. Elements are e-bit vectors held in a
/// `uint64_t` (bit i = coefficient of x^i). The raw-bit operations below are
/// the hot path used by every sweep; `FieldElement` wraps them with field
/// identity checks for API boundaries.
///
/// Instances are immutable once built. The generator and factorization caches
/// are filled at most once under `std::call_once`, so a field may be shared
/// freely between threads.
class BinaryField {
 public:
  static constexpr unsigned kMaxDegree = 64;

  /// Use `make_field`; the constructor trusts its modulus.
  BinaryField(unsigned degree, Modulus modulus);

  unsigned degree() const noexcept { return degree_; }
  Modulus modulus() const noexcept { return modulus_; }
  /// Number of elements minus one, 2^e - 1.
  std::uint64_t group_order() const noexcept { return mersenne(degree_); }
  /// All-ones mask over the e valid bits; also the largest element.
  std::uint64_t mask() const noexcept { return mask_; }
  bool contains(std::uint64_t bits) const noexcept { return (bits & ~mask_) == 0; }

  bool same_as(const BinaryField& other) const noexcept {
    return this == &other || (degree_ == other.degree_ && modulus_ == other.modulus_);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t square(std::uint64_t a) const noexcept;
  /// a^k with 0^0 = 1. The exponent is reduced mod 2^e - 1 only when a != 0,
  /// so 0^k = 0 for every k > 0 no matter how k is written.
  std::uint64_t pow(std::uint64_t a, Exponent k) const noexcept;
  /// Throws DivisionByZero on 0.
  std::uint64_t inv(std::uint64_t a) const;
  /// a^{2^j}; j is taken mod e.
  std::uint64_t frobenius(std::uint64_t a, unsigned j) const noexcept;
  /// a^{2^{e-1}}, the unique square root.
  std::uint64_t sqrt(std::uint64_t a) const noexcept { return frobenius(a, degree_ - 1); }
  /// Sum of a^{2^{m i}} for 0 <= i < e/m. Throws NonDivisorSubdegree.
  std::uint64_t rel_trace(std::uint64_t a, unsigned m) const;
  /// a^{2^m} == a. Throws NonDivisorSubdegree.
  bool in_subfield(std::uint64_t a, unsigned m) const;

  /// Smallest (by integer value) primitive element. Cached.
  std::uint64_t generator() const;
  /// Prime factors of 2^e - 1 with multiplicity, ascending. Cached.
  const std::vector<std::uint64_t>& order_factors() const;
  /// Multiplicative order by the factorization of 2^e - 1; a must be nonzero.
  std::uint64_t multiplicative_order(std::uint64_t a) const;

  /// Ring multiplication modulo an arbitrary degree-e polynomial; `low` is the
  /// modulus with its leading bit removed. Exposed for the irreducibility test.
  static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, unsigned degree, std::uint64_t low) noexcept;

 private:
  unsigned degree_;
  Modulus modulus_;
  std::uint64_t mask_;
  std::uint64_t low_;  // modulus without X^e

  mutable std::once_flag factors_once_;
  mutable std::vector<std::uint64_t> factors_;
  mutable std::once_flag generator_once_;
  mutable std::uint64_t generator_ = 0;
};

/// True iff `modulus` has degree exactly e, a nonzero constant term, and no
/// factor of degree <= e/2 (Rabin's test via x^{2^k} mod f).
bool is_irreducible(unsigned degree, Modulus modulus);

/// Validated field. With no modulus, picks the smallest irreducible of degree
/// e by integer value. Throws DegreeOutOfRange or ReducibleModulus.
FieldRef make_field(unsigned degree, std::optional<Modulus> modulus = std::nullopt);

/// Element bound to its field. Arithmetic between elements of different
/// fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldRef field, std::uint64_t bits);

  static FieldElement zero(FieldRef field) { return {std::move(field), 0}; }
  static FieldElement one(FieldRef field) { return {std::move(field), 1}; }

  const FieldRef& field() const noexcept { return field_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool is_zero() const noexcept { return bits_ == 0; }
  bool is_one() const noexcept { return bits_ == 1; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.bits_ == b.bits_ && a.field_->same_as(*b.field_);
  }

 private:
  FieldRef field_;
  std::uint64_t bits_;
};

void check_same_field(const BinaryField& a, const BinaryField& b);

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement square(const FieldElement& a);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, Exponent k);
FieldElement frobenius(const FieldElement& a, unsigned j);
FieldElement rel_trace(const FieldElement& a, unsigned m);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

/// The degree-m subfield of a parent field.
class SubfieldHandle {
 public:
  /// Throws NonDivisorSubdegree unless m | e.
  SubfieldHandle(FieldRef parent, unsigned sub_degree);

  const FieldRef& parent() const noexcept { return parent_; }
  unsigned sub_degree() const noexcept { return sub_degree_; }
  bool contains(std::uint64_t bits) const { return parent_->in_subfield(bits, sub_degree_); }
  bool contains(const FieldElement& a) const;
  /// 0 first, then g^{k (2^e-1)/(2^m-1)} for k = 0 .. 2^m - 2.
  std::vector<std::uint64_t> enumerate() const;

 private:
  FieldRef parent_;
  unsigned sub_degree_;
};

std::vector<FieldElement> subfield_enumerate(const SubfieldHandle& h);

FieldElement find_generator(const FieldRef& field);

/// beta = g^{(2^e-1)/3}. Throws NoCubeRoot when e is odd.
FieldElement primitive_cube_root(const FieldRef& field);

/// v^{(2^e-1)/3} == 1. Throws NoCubeClassification when e is odd and
/// ZeroCoefficient for v = 0.
bool is_cube(const FieldElement& v);

/// Returns z = sum_{j<m} c^{-(2^{j+1}-1)} (sum_{k<=(n-1)/2} Z^{q^{2k}})^{2^j}
/// with q = 2^m, which satisfies z^2 + c z = Z + Tr(Z) where Tr is the trace
/// onto the degree-m subfield. c must be a nonzero subfield element, the
/// field degree must be n*m with n odd.
FieldElement solve_quadratic_linearized(const FieldElement& c, const FieldElement& Z, unsigned m, unsigned n);

/// Field homomorphism from a smaller field into one whose degree it divides.
/// x of the source is sent to the first root of the source modulus found
/// among h, h^2, h^3, ... where h = g^{(2^E-1)/(2^k-1)} generates the target's
/// degree-k subgroup, and the map is extended linearly.
class Embedding {
 public:
  Embedding(FieldRef source, FieldRef target);

  const FieldRef& source() const noexcept { return source_; }
  const FieldRef& target() const noexcept { return target_; }
  std::uint64_t operator()(std::uint64_t bits) const noexcept;
  FieldElement operator()(const FieldElement& a) const;

 private:
  FieldRef source_;
  FieldRef target_;
  std::vector<std::uint64_t> basis_images_;  // image of x^i
};

/// Lowercase hex of the bit-vector, "0" for zero.
std::string to_hex(std::uint64_t bits);
std::string to_hex_wide(Modulus bits);
std::uint64_t parse_hex(const std::string& text);  // optional 0x prefix
Modulus parse_hex_wide(const std::string& text);

}  // namespace cppforge
