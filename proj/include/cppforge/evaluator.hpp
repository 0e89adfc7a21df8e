#pragma once

#include <cstdint>
#include <functional>

namespace cppforge {

/// A pure map on raw field bits. Everything that verification touches is
/// reduced to one of these; callers must not rely on call order.
using Evaluator = std::function<std::uint64_t(std::uint64_t)>;

inline Evaluator identity_map() {
  return [](std::uint64_t x) { return x; };
}

/// x -> f(x) + x
inline Evaluator plus_identity(Evaluator f) {
  return [f = std::move(f)](std::uint64_t x) { return f(x) ^ x; };
}

/// x -> outer(inner(x))
inline Evaluator compose(Evaluator outer, Evaluator inner) {
  return [outer = std::move(outer), inner = std::move(inner)](std::uint64_t x) { return outer(inner(x)); };
}

}  // namespace cppforge
