#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cppforge/evaluator.hpp"
#include "cppforge/field.hpp"

namespace cppforge {

enum class VerifyMode { Exhaustive, Sampled };
enum class Verdict { Verified, Refuted, Inconclusive };

std::string_view to_string(VerifyMode mode) noexcept;
std::string_view to_string(Verdict verdict) noexcept;

/// A concrete failure. For a collision, `map`(x1) = `map`(x2) = image with
/// x1 != x2. For a failed composition, x1 is the input, x2 the intermediate
/// value and image the final value, which differs from x1.
struct Counterexample {
  std::string map;  // "f", "f+x", "h(f(x))" or "f(h(x))"
  std::uint64_t x1;
  std::uint64_t x2;
  std::uint64_t image;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::Exhaustive;
  std::string subject;
  bool perm_f = false;
  std::optional<bool> perm_f_plus_x;
  std::optional<bool> inverse_ok;
  std::optional<Counterexample> counterexample;
  std::uint64_t checked = 0;
  std::chrono::duration<double> elapsed{};
  unsigned field_degree = 0;

  /// Sampled reports are never Verified.
  Verdict verdict() const noexcept;
  bool is_cpp() const noexcept { return perm_f && perm_f_plus_x.value_or(false); }
};

/// 2^24 unless CPPFORGE_EXHAUSTIVE_CAP holds a positive integer (values above
/// 2^28 are accepted with a warning on stderr).
std::uint64_t exhaustive_cap();

/// Throws FieldTooLarge when 2^e exceeds the cap.
void require_exhaustive(const BinaryField& field);

struct VerifyOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::string subject;
};

VerificationReport is_permutation_exhaustive(const Evaluator& f, const FieldRef& field, const VerifyOptions& options = {});

/// One sweep marks both f and f + x.
VerificationReport is_cpp(const Evaluator& f, const FieldRef& field, const VerifyOptions& options = {});

/// h(f(x)) = x and f(h(x)) = x for every x.
VerificationReport verify_inverse_pair(const Evaluator& f, const Evaluator& h, const FieldRef& field,
                                       const VerifyOptions& options = {});

struct SampleOptions {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  /// Each drawn x is also evaluated at c x for every c listed here, which
  /// lets a caller aim the sample at a suspected collision structure.
  std::vector<std::uint64_t> probe_multipliers;
  /// Also look for collisions of f + x.
  bool plus_identity = false;
  /// Checked as h(f(x)) = x at every sampled point when present.
  std::optional<Evaluator> inverse;
  std::string subject;
};

/// Birthday-style collision search on pseudorandom points. Reports Refuted
/// with a counterexample or Inconclusive; never Verified.
VerificationReport sampled_check(const Evaluator& f, const FieldRef& field, const SampleOptions& options);

/// For every linearized L over F_{2^m}, x L(x) and x L(x) + x are not both
/// permutations. Exhaustive; m <= 4, otherwise SearchSpaceTooLarge.
bool remark_check(unsigned m);

}  // namespace cppforge
