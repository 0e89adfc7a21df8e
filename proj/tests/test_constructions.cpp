#include <doctest.h>

#include <optional>
#include <random>

#include "cppforge/constructions.hpp"
#include "cppforge/verify.hpp"
#include "oracles.hpp"

using namespace cppforge;

namespace {

template <class F>
bool cpp_oracle(const F& f, const FieldRef& field) {
  return oracle::is_cpp(f, field->mask() + 1);
}

// A seed over GF(2^6) with L != 0: re-seeding a trace CPP.
std::shared_ptr<const SeedCpp> nontrivial_seed() {
  const FieldRef f2 = make_field(2);
  const StructuredCpp T = trace_cpp(2, 3, FieldElement(f2, 2), FieldElement(f2, 3));
  return std::make_shared<const SeedCpp>(reseed(T));
}

}  // namespace

TEST_CASE("seed search over small fields finds only L = 0") {
  // Brute-force counts: 2^m - 2 seeds, all with L = 0.
  CHECK(seed_search(1).empty());
  for (unsigned m = 2; m <= 4; ++m) {
    const auto seeds = seed_search(m);
    CHECK(seeds.size() == (std::size_t{1} << m) - 2);
    for (const auto& s : seeds) {
      CHECK(s.L.is_zero());
      CHECK(cpp_oracle(s, s.field));
    }
  }
  CHECK(seed_search(4, 3).size() == 3);
  CHECK_THROWS_AS(seed_search(9), Error);
}

TEST_CASE("seed search results are CPPs with a correct g") {
  const auto seeds = seed_search(5, 40);
  REQUIRE(!seeds.empty());
  for (const auto& s : seeds) {
    for (std::uint64_t y = 0; y < 32; ++y) CHECK(s.g(s(y)) == y);
  }
}

TEST_CASE("no linearized L makes both x L(x) and x L(x) + x permutations") {
  for (unsigned m = 1; m <= 4; ++m) CHECK(remark_check(m));
}

TEST_CASE("make_seed checks its hypotheses") {
  const FieldRef f = make_field(3);
  CHECK_THROWS_AS(make_seed(LinearizedPoly::zero(f, 3), FieldElement::one(f)), Error);
  CHECK_THROWS_AS(make_seed(LinearizedPoly::zero(f, 3), FieldElement::zero(f)), Error);
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t v = 2; v < 8; ++v) {
      const LinearizedPoly L(f, 3, {a, 1});
      const bool cpp = oracle::is_cpp([&](std::uint64_t x) { return f->mul(x, L(x) ^ v); }, 8);
      if (cpp) {
        CHECK_NOTHROW(make_seed(L, FieldElement(f, v)));
      } else {
        CHECK_THROWS_AS(make_seed(L, FieldElement(f, v)), Error);
      }
    }
  }
  const SeedCpp s = make_seed(LinearizedPoly::zero(f, 3), FieldElement(f, 5));
  CHECK(s.q_degree() == 3);
}

TEST_CASE("monomial families give CPPs for every admitted v") {
  for (unsigned m : {2u, 4u}) {
    const FieldRef f = make_field(3 * m);
    int admitted = 0;
    for (std::uint64_t v = 1; v <= f->mask(); ++v) {
      if (f->rel_trace(v, m) != 0) {
        CHECK_THROWS_AS(monomial_family1(m, FieldElement(f, v)), Error);
        continue;
      }
      const StructuredCpp F = monomial_family1(m, FieldElement(f, v));
      CHECK(cpp_oracle(F, f));
      ++admitted;
    }
    CHECK(admitted == (1 << (2 * m)) - 1);
  }
  for (unsigned m : {3u, 5u}) {
    const FieldRef f = make_field(2 * m);
    int beta = 0, beta2 = 0, both = 0, third = 0;
    for (std::uint64_t v = 1; v <= f->mask(); ++v) {
      try {
        const StructuredCpp F = monomial_family2(m, FieldElement(f, v));
        CHECK(cpp_oracle(F, f));
        const auto branch = *std::get<MonomialParams>(F.params()).branch;
        beta += branch == CubeRootBranch::Beta;
        beta2 += branch == CubeRootBranch::BetaSquared;
        both += branch == CubeRootBranch::Both;
      } catch (const Error&) {
      }
      std::optional<StructuredCpp> G;
      try {
        G = monomial_family3(m, FieldElement(f, v));
      } catch (const Error&) {
        continue;
      }
      CHECK(cpp_oracle(*G, f));
      ++third;
    }
    CHECK(beta > 0);
    CHECK(beta2 > 0);
    CHECK(both == 0);
    CHECK(third > 0);
  }
}

TEST_CASE("monomial families reject bad m") {
  const FieldRef f9 = make_field(9);
  try {
    monomial_family1(3, FieldElement(f9, 1));
    FAIL("accepted m = 3");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("gcd(3, m)") != std::string::npos);
  }
  CHECK_THROWS_AS(monomial_family2(2, FieldElement(make_field(4), 1)), Error);
  CHECK_THROWS_AS(monomial_family3(4, FieldElement(make_field(8), 1)), Error);
  CHECK(family1_exponent(2) == 22);
  CHECK(family2_exponent(3) == 19);
  CHECK(family3_exponent(3) == 22);
}

TEST_CASE("trinomial") {
  for (unsigned m = 1; m <= 4; ++m) {
    const FieldRef small = make_field(m);
    for (std::uint64_t v = 2; v <= small->mask(); ++v) {
      const StructuredCpp T = trinomial(m, FieldElement(small, v));
      CHECK(cpp_oracle(T, T.field()));
      CHECK(T.expansion()->terms().size() == 3);
      for (std::uint64_t x = 0; x <= T.field()->mask(); x += 3) CHECK(T(x) == (*T.expansion())(x));
    }
  }
  CHECK_THROWS_AS(trinomial(2, FieldElement::one(make_field(2))), Error);
}

TEST_CASE("trace construction and the trace identities") {
  const auto seed = nontrivial_seed();
  REQUIRE_FALSE(seed->L.is_zero());
  CHECK(cpp_oracle(*seed, seed->field));
  const FieldRef f6 = seed->field;
  for (std::uint64_t u : {0ull, 1ull, 7ull}) {
    const StructuredCpp F = recursive_extend(seed, 3, FieldElement(f6, u));
    const FieldRef big = F.field();
    REQUIRE(big->degree() == 18);
    const SubfieldBridge bridge(f6, big);
    CHECK(is_cpp(F.evaluator(), big).is_cpp());
    for (std::uint64_t x = 0; x <= big->mask(); x += 3) {
      const std::uint64_t t = bridge.lower(big->rel_trace(x, 6));
      const std::uint64_t tf = bridge.lower(big->rel_trace(F(x), 6));
      // tr F(x) = t L(t) + v t, and g undoes it.
      REQUIRE(tf == (*seed)(t));
      REQUIRE(seed->g(tf) == t);
    }
  }
  CHECK_THROWS_AS(recursive_extend(seed, 2, FieldElement(f6, 1)), Error);
}

TEST_CASE("recursive family with L = 0 and u = 0 is v x") {
  const FieldRef f = make_field(3);
  const auto seed = std::make_shared<const SeedCpp>(make_seed(LinearizedPoly::zero(f, 3), FieldElement(f, 6)));
  const StructuredCpp F = recursive_extend(seed, 5, FieldElement::zero(f));
  const Embedding emb(f, F.field());
  for (std::uint64_t x = 0; x <= F.field()->mask(); x += 17) CHECK(F(x) == F.field()->mul(emb(6), x));
}

TEST_CASE("multi-trace collapses to the single trace") {
  const FieldRef f2 = make_field(2), f6 = make_field(6);
  for (std::uint64_t c0 : {0ull, 1ull, 2ull}) {
    for (std::uint64_t ct : {2ull, 3ull}) {
      const StructuredCpp T = trace_cpp(2, 3, FieldElement(f2, c0), FieldElement(f2, ct));
      const StructuredCpp empty = multi_trace_cpp(2, 3, {}, FieldElement(f2, c0), FieldElement(f2, ct));
      // tr_{nm} is the identity, so its term cancels against c x.
      const StructuredCpp full =
          multi_trace_cpp(2, 3, {{3, FieldElement(f6, 0x2b)}}, FieldElement(f2, c0), FieldElement(f2, ct));
      for (std::uint64_t x = 0; x < 64; ++x) {
        CHECK(empty(x) == T(x));
        CHECK(full(x) == T(x));
      }
      CHECK(cpp_oracle(T, f6));
    }
  }
}

TEST_CASE("multi-trace chains") {
  const FieldRef f2 = make_field(2);
  std::mt19937_64 rng(9);
  // m = 2, n = 9, chain 1 | 3 | 9.
  const FieldRef f6 = make_field(6), f18 = make_field(18);
  for (int i = 0; i < 3; ++i) {
    const StructuredCpp F = multi_trace_cpp(2, 9, {{3, FieldElement(f6, rng() & 63)}, {9, FieldElement(f18, rng() & f18->mask())}},
                                            FieldElement(f2, rng() & 3), FieldElement(f2, 2 + rng() % 2));
    CHECK(is_cpp(F.evaluator(), F.field()).is_cpp());
  }
  CHECK_THROWS_AS(multi_trace_cpp(2, 9, {{2, FieldElement(f2, 1)}}, FieldElement(f2, 1), FieldElement(f2, 2)), Error);
  CHECK_THROWS_AS(multi_trace_cpp(2, 9, {{3, FieldElement(f6, 1)}, {3, FieldElement(f6, 1)}}, FieldElement(f2, 1),
                                  FieldElement(f2, 2)),
                  Error);
  CHECK_THROWS_AS(multi_trace_cpp(2, 4, {}, FieldElement(f2, 1), FieldElement(f2, 2)), Error);
  CHECK_THROWS_AS(multi_trace_cpp(2, 3, {}, FieldElement(f2, 1), FieldElement(f2, 1)), Error);
}

TEST_CASE("subfield bridge") {
  const FieldRef small = make_field(4), big = make_field(12);
  const SubfieldBridge bridge(small, big);
  for (std::uint64_t x = 0; x < 16; ++x) CHECK(bridge.lower(bridge.lift(x)) == x);
  std::uint64_t outside = 2;
  while (big->in_subfield(outside, 4)) ++outside;
  CHECK_THROWS_AS(bridge.lower(outside), Error);
}

TEST_CASE("reseed keeps the function") {
  const auto seed = nontrivial_seed();
  const FieldRef f2 = make_field(2);
  const StructuredCpp T = trace_cpp(2, 3, FieldElement(f2, 2), FieldElement(f2, 3));
  for (std::uint64_t x = 0; x < 64; ++x) CHECK((*seed)(x) == T(x));
}
