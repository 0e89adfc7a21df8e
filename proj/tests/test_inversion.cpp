#include <doctest.h>

#include <optional>
#include <random>

#include "cppforge/constructions.hpp"
#include "cppforge/inversion.hpp"
#include "cppforge/verify.hpp"
#include "oracles.hpp"

using namespace cppforge;

namespace {

// The three-branch inverse of x (L(tr x) + u tr x + u x) + v x written out
// directly from its formula. `negative_half` selects the u^{-1/2} factor in
// front of the general-branch sum; false gives the u^{1/2} variant.
struct TildeOracle {
  const SeedCpp& seed;
  FieldRef big;
  unsigned n;
  std::uint64_t u;
  bool negative_half;

  std::uint64_t operator()(std::uint64_t x) const {
    const auto& F = *big;
    const unsigned m = seed.q_degree();
    const SubfieldBridge bridge(seed.field, big);
    const std::uint64_t v = bridge.lift(seed.v.bits());
    std::uint64_t S = 0, y = x;
    for (unsigned k = 0; k <= (n - 1) / 2; ++k, y = F.frobenius(y, 2 * m)) S ^= y;
    const std::uint64_t t = F.rel_trace(x, m);
    std::uint64_t acc = 0, Sj = S;
    if (t == 0) {
      for (unsigned j = 0; j < m; ++j, Sj = F.square(Sj)) {
        const std::uint64_t c = F.mul(F.pow(u, pow2(j) - 1), F.inv(F.pow(v, pow2(j + 1) - 1)));
        acc ^= F.mul(c, Sj);
      }
      return acc;
    }
    const std::uint64_t g = bridge.lift(seed.g(bridge.lower(t)));
    const std::uint64_t uh = F.sqrt(u);
    const std::uint64_t a = F.mul(uh, g);
    if ((a ^ F.sqrt(t)) == 0) return F.sqrt(F.mul(x, F.inv(u)));
    const std::uint64_t w = F.mul(t, F.inv(a)) ^ a;
    for (unsigned j = 0; j < m; ++j, Sj = F.square(Sj)) acc ^= F.mul(F.inv(F.pow(w, pow2(j + 1) - 1)), Sj);
    return g ^ F.mul(negative_half ? F.inv(uh) : uh, acc);
  }
};

std::shared_ptr<const SeedCpp> trace_seed() {
  const FieldRef f2 = make_field(2);
  return std::make_shared<const SeedCpp>(reseed(trace_cpp(2, 3, FieldElement(f2, 2), FieldElement(f2, 3))));
}

}  // namespace

TEST_CASE("exponent inverse by Euclid matches brute force") {
  CHECK(exp_inverse_euclid(22, 63).d_inv == 43);
  for (unsigned e = 2; e <= 10; ++e) {
    const std::uint64_t M = mersenne(e);
    for (std::uint64_t d = 1; d < 3 * M; d += 1) {
      const auto brute = oracle::brute_inverse(d, M);
      if (brute) {
        CHECK(exp_inverse_euclid(d, M).d_inv == *brute);
      } else {
        CHECK_THROWS_AS(exp_inverse_euclid(d, M), Error);
      }
    }
  }
  try {
    exp_inverse_euclid(3, 63);
    FAIL("3 is not invertible mod 63");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCoprime);
  }
}

TEST_CASE("CRT inverse agrees with Euclid") {
  std::mt19937_64 rng(11);
  for (unsigned m = 2; m <= 16; ++m) {
    const Exponent M = pow2(2 * m) - 1;
    int done = 0;
    while (done < 1000) {
      const Exponent r = rng() % static_cast<std::uint64_t>(M);
      if (gcd(r, M) != 1) continue;
      CHECK(exp_inverse_crt(r, m).d_inv == exp_inverse_euclid(r, M).d_inv);
      ++done;
    }
  }
  CHECK_THROWS_AS(exp_inverse_crt(3, 2), Error);
}

TEST_CASE("closed-form inverse exponents") {
  for (unsigned m = 2; m <= 10; ++m) {
    if (m % 3 != 0) {
      const Exponent M = pow2(3 * m) - 1;
      CHECK(inverse_exponent1(m) * family1_exponent(m) % M == 1);
    }
    if (m % 2 == 1 && m >= 3) {
      const Exponent M = pow2(2 * m) - 1;
      CAPTURE(m);
      CHECK(inverse_exponent2(m) * family2_exponent(m) % M == 1);
      CHECK(inverse_exponent3(m) * family3_exponent(m) % M == 1);
    }
  }
}

TEST_CASE("inverse monomial families invert the forward families") {
  for (unsigned m : {3u, 5u}) {
    const FieldRef f = make_field(2 * m);
    for (std::uint64_t v = 1; v <= f->mask(); ++v) {
      const FieldElement ve(f, v);
      for (auto [fwd, inv] : {std::pair{monomial_family2, inverse_family2}, {monomial_family3, inverse_family3}}) {
        std::optional<StructuredCpp> F;
        try {
          F = fwd(m, ve);
        } catch (const Error&) {
          CHECK_THROWS_AS(inv(m, ve), Error);
          continue;
        }
        // The stated inverse keeps the coefficient v, so it undoes F only
        // up to the scalar v^{1-d'}; the exponent part is exact.
        const StructuredCpp H = inv(m, ve);
        CHECK(oracle::is_cpp(H, f->mask() + 1));
        const Exponent d_inv = H.expansion()->terms()[0].exp;
        const std::uint64_t scale = f->mul(v, f->inv(f->pow(v, d_inv)));
        for (std::uint64_t x = 0; x <= f->mask(); ++x) REQUIRE(H((*F)(x)) == f->mul(scale, x));
      }
    }
  }
  const FieldRef f = make_field(6);
  for (std::uint64_t v = 1; v < 64; ++v) {
    if (f->rel_trace(v, 2) != 0) continue;
    const StructuredCpp F = monomial_family1(2, FieldElement(f, v));
    const StructuredCpp H = inverse_family1(2, FieldElement(f, v));
    const std::uint64_t scale = f->mul(v, f->inv(f->pow(v, inverse_exponent1(2))));
    for (std::uint64_t x = 0; x < 64; ++x) REQUIRE(H(F(x)) == f->mul(scale, x));
  }
}

TEST_CASE("monomial inverse") {
  const FieldRef f = make_field(6);
  const SparsePoly p = SparsePoly::monomial(FieldElement(f, 9), 22);
  const SparsePoly h = invert_monomial(p);
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(h(p(x)) == x);
  CHECK_THROWS_AS(invert_monomial(SparsePoly::monomial(FieldElement(f, 1), 3)), Error);
  CHECK_THROWS_AS(invert_monomial(SparsePoly(f, {{1, 1}, {1, 2}})), Error);
}

TEST_CASE("u = 0 inverse") {
  const auto seed = trace_seed();
  const StructuredCpp F = recursive_extend(seed, 3, FieldElement::zero(seed->field));
  const StructuredCpp H = inverse_recursive_u0(seed, 3, F.field());
  const auto r = verify_inverse_pair(F.evaluator(), H.evaluator(), F.field());
  CHECK(r.verdict() == Verdict::Verified);
  CHECK(H(0) == 0);
}

TEST_CASE("three-branch inverse with u^{-1/2}") {
  const auto seed = trace_seed();
  const FieldRef f6 = seed->field;
  int sqrt_branch_hits = 0;
  for (std::uint64_t u : {1ull, 2ull, 5ull, 0x2bull, 0x3full}) {
    const StructuredCpp F = recursive_extend(seed, 3, FieldElement(f6, u));
    const StructuredCpp H = inverse_recursive(seed, 3, FieldElement(f6, u));
    const FieldRef big = F.field();
    CHECK(H(0) == 0);
    const auto r = verify_inverse_pair(F.evaluator(), H.evaluator(), big);
    REQUIRE(r.verdict() == Verdict::Verified);
    const std::uint64_t ub = std::get<InverseRecursiveParams>(H.params()).u.bits();
    const TildeOracle ref{*seed, big, 3, ub, true};
    for (std::uint64_t x = 0; x <= big->mask(); x += 97) CHECK(ref(x) == H(x));

    // Branch (ii) fires exactly when L(tr x) + u tr x + v = 0.
    const SubfieldBridge bridge(f6, big);
    const std::uint64_t uh = big->sqrt(ub);
    for (std::uint64_t x = 1; x <= big->mask(); x += 13) {
      const std::uint64_t t = big->rel_trace(x, 6);
      if (t == 0) continue;
      const std::uint64_t ts = bridge.lower(t);
      const std::uint64_t tf = big->rel_trace(F(x), 6);
      const std::uint64_t g = bridge.lift(seed->g(bridge.lower(tf)));
      const bool trigger = (big->mul(uh, g) ^ big->sqrt(tf)) == 0;
      const bool zero = (seed->L(ts) ^ f6->mul(u, ts) ^ seed->v.bits()) == 0;
      CHECK(trigger == zero);
      sqrt_branch_hits += trigger;
    }
  }
  CHECK(sqrt_branch_hits > 0);
  CHECK_THROWS_AS(inverse_recursive(seed, 3, FieldElement::zero(f6)), Error);
}

TEST_CASE("the u^{1/2} variant is not an inverse for some u != 1") {
  const auto seed = trace_seed();
  const FieldRef f6 = seed->field;
  bool failed_somewhere = false;
  for (std::uint64_t u = 2; u < 64 && !failed_somewhere; ++u) {
    const StructuredCpp F = recursive_extend(seed, 3, FieldElement(f6, u));
    const FieldRef big = F.field();
    const std::uint64_t ub = std::get<RecursiveParams>(F.params()).u.bits();
    const TildeOracle wrong{*seed, big, 3, ub, false};
    for (std::uint64_t x = 0; x <= big->mask(); x += 5) {
      if (wrong(F(x)) != x) {
        failed_somewhere = true;
        break;
      }
    }
  }
  CHECK(failed_somewhere);
}

TEST_CASE("closed_form_inverse dispatch") {
  const auto seed = trace_seed();
  const FieldRef f6 = seed->field;
  const StructuredCpp R = recursive_extend(seed, 3, FieldElement(f6, 5));
  const auto inv = closed_form_inverse(R);
  REQUIRE(std::holds_alternative<StructuredCpp>(inv));
  CHECK(std::get<StructuredCpp>(inv).family() == Family::InverseRecursive);
  const FieldRef f = make_field(6);
  std::uint64_t v = 1;
  while (f->rel_trace(v, 2) != 0) ++v;
  const StructuredCpp M = monomial_family1(2, FieldElement(f, v));
  const auto mi = closed_form_inverse(M);
  REQUIRE(std::holds_alternative<SparsePoly>(mi));
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(std::get<SparsePoly>(mi)(M(x)) == x);
  const StructuredCpp T = trinomial(2, FieldElement(make_field(2), 2));
  CHECK_THROWS_AS(closed_form_inverse(T), Error);
}

TEST_CASE("inverse tables") {
  const FieldRef f = make_field(6);
  const LookupTable id = compositional_inverse_table(identity_map(), f);
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(id(x) == x);
  const LookupTable sq = compositional_inverse_table([&](std::uint64_t x) { return f->square(x); }, f);
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(sq(x) == f->pow(x, 32));
  const StructuredCpp T = trinomial(2, FieldElement(make_field(2), 2));
  const LookupTable ti = compositional_inverse_table(T.evaluator(), f);
  for (std::uint64_t x = 0; x < 64; ++x) {
    CHECK(ti(T(x)) == x);
    CHECK(T(ti(x)) == x);
  }
  CHECK(oracle::is_cpp(ti, 64));
  try {
    compositional_inverse_table([&](std::uint64_t x) { return f->pow(x, 3); }, f);
    FAIL("x^3 is not a bijection of GF(64)");
  } catch (const NotBijectiveError& e) {
    CHECK(e.first() != e.second());
    CHECK(f->pow(e.first(), 3) == e.image());
    CHECK(f->pow(e.second(), 3) == e.image());
  }
}
