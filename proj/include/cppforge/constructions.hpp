#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cppforge/field.hpp"
#include "cppforge/poly.hpp"

namespace cppforge {

/// Largest seed field; g is stored as a full table over it.
inline constexpr unsigned kMaxSeedDegree = 16;

/// x L(x) + v x over F_q, checked to be a CPP, with its inverse as a table.
struct SeedCpp {
  FieldRef field;
  LinearizedPoly L;
  FieldElement v;
  std::vector<std::uint64_t> g_table;

  unsigned q_degree() const noexcept { return field->degree(); }
  std::uint64_t operator()(std::uint64_t y) const noexcept { return field->mul(y, L(y) ^ v.bits()); }
  std::uint64_t g(std::uint64_t y) const noexcept { return g_table[y]; }
};

/// Verifies x L(x) + v x exhaustively and tabulates its inverse. Throws
/// PreconditionViolated (v in {0,1}, not a CPP, field above 2^16) or
/// FieldMismatch.
SeedCpp make_seed(LinearizedPoly L, FieldElement v);

/// Re-wraps a Recursive/SingleTrace output as a seed over its own field,
/// using L'(x) = L(tr x) + u tr x + u x written as a linearized polynomial.
SeedCpp reseed(const StructuredCpp& F);

/// Moves elements between a field and one of its extensions. `lower` only
/// works for subfield elements and needs the small field to be enumerable.
class SubfieldBridge {
 public:
  SubfieldBridge(FieldRef small, FieldRef big);

  const FieldRef& small() const noexcept { return embedding_.source(); }
  const FieldRef& big() const noexcept { return embedding_.target(); }
  const Embedding& embedding() const noexcept { return embedding_; }

  std::uint64_t lift(std::uint64_t bits) const noexcept { return embedding_(bits); }
  /// Throws SubfieldViolation when `bits` is not in the image.
  std::uint64_t lower(std::uint64_t bits) const;

 private:
  Embedding embedding_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> back_;  // (big, small), sorted
};

/// Brings a coefficient meant for the degree-`sub` subfield of a degree-`big`
/// field into that big field. Elements already in a degree-`big` field are
/// checked for membership; elements of a degree-`sub` field are embedded
/// into make_field(big). Returns the ambient field and the bits there.
std::pair<FieldRef, std::uint64_t> lift_coefficient(const FieldElement& c, unsigned sub, unsigned big,
                                                     const FieldRef& prefer = nullptr);

/// Forward exponents, exact (no reduction).
Exponent family1_exponent(unsigned m);  // 2^{2m} + 2^m + 2
Exponent family2_exponent(unsigned m);  // 2^{m+1} + 3
Exponent family3_exponent(unsigned m);  // 2^{m-2} (2^m + 3)

/// Hypothesis checks shared by the forward and inverse monomial families.
/// Each throws PreconditionViolated naming the failed clause.
void check_family1(unsigned m, const FieldElement& v);
CubeRootBranch check_family2(unsigned m, const FieldElement& v);
void check_family3(unsigned m, const FieldElement& v);

StructuredCpp monomial_family1(unsigned m, const FieldElement& v);
StructuredCpp monomial_family2(unsigned m, const FieldElement& v);
StructuredCpp monomial_family3(unsigned m, const FieldElement& v);

/// x^{2^{2m}+1} + x^{2^m+1} + v x over F_{2^{3m}}, v in F_{2^m} \ {0,1}.
StructuredCpp trinomial(unsigned m, const FieldElement& v);

/// x (L(tr x) + u tr x + u x) + v x over F_{2^{nm}}. u may be given in the
/// seed field or in a degree-nm field (then it must lie in the subfield).
StructuredCpp recursive_extend(std::shared_ptr<const SeedCpp> seed, unsigned n, const FieldElement& u);
StructuredCpp recursive_extend(const SeedCpp& seed, unsigned n, const FieldElement& u);

/// Field of F_{2^{nm}} for a seed and u, with u's bits there. Throws
/// EvenExtension or SubfieldViolation.
std::pair<FieldRef, std::uint64_t> extension_target(const SeedCpp& seed, unsigned n, const FieldElement& u);

/// x (u tr x + u x) + v x; the L = 0 case of recursive_extend.
StructuredCpp trace_cpp(unsigned m, unsigned n, const FieldElement& u, const FieldElement& v);

/// x (sum_j c_j tr_{d_j m}(x) + c x) + c~ x with d_0 = 1, c = sum_j c_j.
/// `chain` holds (d_1, c_1) .. (d_s, c_s). Throws BrokenDivisorChain.
StructuredCpp multi_trace_cpp(unsigned m, unsigned n, const std::vector<TraceLink>& chain, const FieldElement& c0,
                              const FieldElement& c_tilde);

/// Every (L, v) over F_{2^m} with x L(x) + v x a CPP, L = 0 first and then L
/// by the integer sum a_i q^i, v ascending. max_results = 0 means no limit,
/// which is refused when the grid exceeds 2^26 candidates.
std::vector<SeedCpp> seed_search(unsigned m, std::size_t max_results = 0, unsigned threads = 0);

}  // namespace cppforge
