#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cppforge/evaluator.hpp"
#include "cppforge/field.hpp"

namespace cppforge {

struct Term {
  std::uint64_t coeff;
  Exponent exp;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Explicit term list over one field. Terms are kept sorted by exponent with
/// no duplicates and no zero coefficients; exponents are stored as written
/// (never reduced) so 0^k keeps its meaning.
class SparsePoly {
 public:
  explicit SparsePoly(FieldRef field);
  /// Sorts, merges like exponents by XOR, and drops zero coefficients.
  SparsePoly(FieldRef field, std::vector<Term> terms);

  static SparsePoly monomial(const FieldElement& coeff, Exponent exp);

  const FieldRef& field() const noexcept { return field_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  std::uint64_t operator()(std::uint64_t x) const noexcept;
  Evaluator evaluator() const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) noexcept {
    return a.field_->same_as(*b.field_) && a.terms_ == b.terms_;
  }

 private:
  FieldRef field_;
  std::vector<Term> terms_;
};

FieldElement eval(const SparsePoly& p, const FieldElement& x);

SparsePoly add_polys(const SparsePoly& p, const SparsePoly& q);

/// (c x^d) o (c' x^d') = c c'^d x^{d d'}, with d d' reduced mod 2^e - 1 and a
/// zero residue of a positive product written as 2^e - 1. Throws NonMonomial.
SparsePoly compose_monomial(const SparsePoly& outer, const SparsePoly& inner);

/// a p(x/a): each term (c, d) becomes (c a^{1-d}, d). Throws ZeroScale.
SparsePoly scale_conjugate(const SparsePoly& p, const FieldElement& a);

/// sum_i a_i x^{2^i} with every a_i in the degree-`sub_degree` subfield of
/// `field`. The coefficient list always has exactly `sub_degree` entries.
class LinearizedPoly {
 public:
  /// Pads missing coefficients with zero. Throws NonDivisorSubdegree,
  /// SubfieldViolation, or PreconditionViolated (too many coefficients).
  LinearizedPoly(FieldRef field, unsigned sub_degree, std::vector<std::uint64_t> coeffs);

  static LinearizedPoly zero(FieldRef field, unsigned sub_degree) { return {std::move(field), sub_degree, {}}; }

  const FieldRef& field() const noexcept { return field_; }
  unsigned sub_degree() const noexcept { return sub_degree_; }
  std::span<const std::uint64_t> coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept;

  std::uint64_t operator()(std::uint64_t x) const noexcept;

  /// Same polynomial with its coefficients carried into a larger field.
  LinearizedPoly embedded(const Embedding& into) const;

  friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) noexcept {
    return a.field_->same_as(*b.field_) && a.sub_degree_ == b.sub_degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  FieldRef field_;
  unsigned sub_degree_;
  std::vector<std::uint64_t> coeffs_;
};

/// Evaluates L at x; when x lives in a proper extension of L's field the
/// coefficients are embedded first.
FieldElement eval_linearized(const LinearizedPoly& L, const FieldElement& x);

enum class Family {
  Monomial1,
  Monomial2,
  Monomial3,
  Trinomial,
  Recursive,
  SingleTrace,
  MultiTrace,
  InverseMonomial1,
  InverseMonomial2,
  InverseMonomial3,
  InverseRecursiveU0,
  InverseRecursive,
};

std::string_view to_string(Family f) noexcept;
Family parse_family(std::string_view name);  // throws ParseError

/// Which trace condition admitted v in the second monomial family.
enum class CubeRootBranch { Beta, BetaSquared, Both };
std::string_view to_string(CubeRootBranch b) noexcept;

struct SeedCpp;

struct MonomialParams {
  unsigned m;
  FieldElement v;
  Exponent d;
  std::optional<CubeRootBranch> branch;
};

struct TrinomialParams {
  unsigned m;
  FieldElement v;
};

/// x (L(tr x) + u tr x + u x) + v x. `L` has its coefficients in the ambient
/// field; `seed` is empty for the pure trace family.
struct RecursiveParams {
  unsigned m;
  unsigned n;
  FieldElement u;
  FieldElement v;
  LinearizedPoly L;
  std::shared_ptr<const SeedCpp> seed;
};

struct TraceLink {
  unsigned d;
  FieldElement c;
};

struct MultiTraceParams {
  unsigned m;
  unsigned n;
  FieldElement c0;
  std::vector<TraceLink> chain;
  FieldElement c_tilde;
};

/// u is zero for the u = 0 inverse.
struct InverseRecursiveParams {
  unsigned m;
  unsigned n;
  FieldElement u;
  FieldElement v;
  std::shared_ptr<const SeedCpp> seed;
};

using FamilyParams = std::variant<MonomialParams, TrinomialParams, RecursiveParams, MultiTraceParams, InverseRecursiveParams>;

/// A polynomial from one of the construction families: its parameters, a
/// direct evaluator of the defining formula, and the explicit term list when
/// one is short enough to be useful.
class StructuredCpp {
 public:
  StructuredCpp(Family family, FieldRef field, FamilyParams params, Evaluator kernel,
                std::optional<SparsePoly> expansion = std::nullopt);

  Family family() const noexcept { return family_; }
  const FieldRef& field() const noexcept { return field_; }
  const FamilyParams& params() const noexcept { return params_; }
  const std::optional<SparsePoly>& expansion() const noexcept { return expansion_; }

  std::uint64_t operator()(std::uint64_t x) const { return kernel_(x); }
  const Evaluator& evaluator() const noexcept { return kernel_; }

  /// One-line human summary for logs and reports.
  std::string describe() const;

 private:
  Family family_;
  FieldRef field_;
  FamilyParams params_;
  Evaluator kernel_;
  std::optional<SparsePoly> expansion_;
};

FieldElement structured_eval(const StructuredCpp& F, const FieldElement& x);

}  // namespace cppforge
