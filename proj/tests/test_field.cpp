#include <doctest.h>

#include <random>
#include <set>

#include "cppforge/field.hpp"
#include "oracles.hpp"

using namespace cppforge;

namespace {

Modulus smallest_irreducible(unsigned e) {
  for (Modulus low = 1;; low += 2) {
    const Modulus candidate = (Modulus{1} << e) | low;
    if (oracle::irreducible_by_trial_division(e, candidate)) return candidate;
  }
}

}  // namespace

TEST_CASE("default modulus is the smallest irreducible") {
  CHECK(make_field(1)->modulus() == 0b11);
  for (unsigned e = 2; e <= 16; ++e) {
    CAPTURE(e);
    CHECK(make_field(e)->modulus() == smallest_irreducible(e));
  }
  CHECK(make_field(6)->modulus() == 0x43);
}

TEST_CASE("irreducibility agrees with trial division") {
  for (unsigned e = 2; e <= 10; ++e) {
    for (Modulus low = 0; low < (Modulus{1} << e); ++low) {
      const Modulus m = (Modulus{1} << e) | low;
      CHECK(is_irreducible(e, m) == oracle::irreducible_by_trial_division(e, m));
    }
  }
}

TEST_CASE("bad fields are rejected") {
  // X^6 + 1 = (X^3 + 1)^2.
  CHECK(oracle::poly_mod(0b1000001, 0b1001) == 0);
  try {
    make_field(6, Modulus{0b1000001});
    FAIL("accepted a reducible modulus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleModulus);
  }
  CHECK_THROWS_AS(make_field(0), Error);
  CHECK_THROWS_AS(make_field(65), Error);
  CHECK_THROWS_AS(make_field(4, Modulus{0b111}), Error);
  // 0b1011011 happens to be irreducible.
  CHECK(oracle::irreducible_by_trial_division(6, 0b1011011));
  CHECK(make_field(6, Modulus{0b1011011})->degree() == 6);
}

TEST_CASE("multiplication matches the schoolbook oracle") {
  std::mt19937_64 rng(1);
  for (unsigned e : {1u, 2u, 3u, 6u, 8u, 13u, 24u, 31u, 32u, 33u, 48u, 63u, 64u}) {
    const FieldRef f = make_field(e);
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t a = rng() & f->mask(), b = rng() & f->mask();
      CAPTURE(e);
      REQUIRE(f->mul(a, b) == oracle::mul(a, b, e, f->modulus()));
      CHECK(f->square(a) == f->mul(a, a));
    }
  }
}

TEST_CASE("pow, inverse, Frobenius and square root") {
  std::mt19937_64 rng(2);
  for (unsigned e : {2u, 5u, 6u, 17u, 40u, 64u}) {
    const FieldRef f = make_field(e);
    const Exponent M = f->group_order();
    CHECK(f->pow(0, 0) == 1);
    CHECK(f->pow(0, M) == 0);
    CHECK(f->pow(0, 5) == 0);
    for (int i = 0; i < 200; ++i) {
      std::uint64_t a = rng() & f->mask();
      if (a == 0) a = 1;
      const Exponent k = rng();
      CHECK(f->pow(a, k) == oracle::pow(a, k, e, f->modulus()));
      CHECK(f->pow(a, M) == 1);
      CHECK(f->mul(a, f->inv(a)) == 1);
      CHECK(f->sqrt(f->square(a)) == a);
      CHECK(f->frobenius(a, 3) == f->pow(a, 8));
      CHECK(f->frobenius(a, e) == a);
    }
    CHECK_THROWS_AS(f->inv(0), Error);
  }
}

TEST_CASE("relative trace lands in the subfield") {
  const FieldRef f = make_field(12);
  for (unsigned m : {1u, 2u, 3u, 4u, 6u}) {
    for (std::uint64_t x = 0; x < 4096; x += 7) {
      const auto t = f->rel_trace(x, m);
      CHECK(f->in_subfield(t, m));
    }
    CHECK(f->rel_trace(1, m) == ((12 / m) & 1));
  }
  CHECK_THROWS_AS(f->rel_trace(1, 5), Error);
}

TEST_CASE("generator, orders and cube roots") {
  for (unsigned e : {2u, 6u, 11u, 20u, 36u}) {
    const FieldRef f = make_field(e);
    const std::uint64_t g = f->generator();
    CHECK(f->multiplicative_order(g) == f->group_order());
    // Smallest primitive element by integer value.
    for (std::uint64_t c = 1; c < g; ++c) CHECK(f->multiplicative_order(c) != f->group_order());
  }
  const FieldRef f6 = make_field(6);
  const FieldElement beta = primitive_cube_root(f6);
  CHECK(pow(beta, 3).is_one());
  CHECK_FALSE(beta.is_one());
  CHECK_THROWS_AS(primitive_cube_root(make_field(5)), Error);
  int cubes = 0;
  for (std::uint64_t v = 1; v < 64; ++v) cubes += is_cube(FieldElement(f6, v));
  CHECK(cubes == 21);
  CHECK_THROWS_AS(is_cube(FieldElement::zero(f6)), Error);
}

TEST_CASE("elements of different fields do not mix") {
  const FieldElement a(make_field(4), 3), b(make_field(5), 3);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(FieldElement(make_field(4), 16), Error);
}

TEST_CASE("subfield enumeration") {
  const SubfieldHandle h(make_field(12), 4);
  const auto elems = h.enumerate();
  CHECK(elems.size() == 16);
  CHECK(std::set<std::uint64_t>(elems.begin(), elems.end()).size() == 16);
  for (auto x : elems) CHECK(h.contains(x));
  CHECK_THROWS_AS(SubfieldHandle(make_field(12), 5), Error);
}

TEST_CASE("embedding is a ring homomorphism") {
  for (auto [k, E] : {std::pair{2u, 6u}, {3u, 12u}, {4u, 20u}, {6u, 18u}}) {
    const FieldRef small = make_field(k), big = make_field(E);
    const Embedding emb(small, big);
    for (std::uint64_t a = 0; a <= small->mask(); ++a) {
      CHECK(big->in_subfield(emb(a), k));
      for (std::uint64_t b = 0; b <= small->mask(); b += 3) {
        CHECK(emb(small->mul(a, b)) == big->mul(emb(a), emb(b)));
        CHECK(emb(a ^ b) == (emb(a) ^ emb(b)));
      }
    }
  }
}

TEST_CASE("linearized quadratic solver") {
  // z^2 + c z = Z + Tr(Z) over F_{2^{nm}}, n odd.
  for (auto [m, n] : {std::pair{2u, 3u}, {3u, 3u}, {2u, 5u}, {1u, 7u}}) {
    const FieldRef f = make_field(m * n);
    for (std::uint64_t c : SubfieldHandle(f, m).enumerate()) {
      if (c == 0) continue;
      for (std::uint64_t Z = 0; Z <= f->mask(); Z += 5) {
        const std::uint64_t z = solve_quadratic_linearized(FieldElement(f, c), FieldElement(f, Z), m, n).bits();
        CHECK((f->square(z) ^ f->mul(c, z)) == (Z ^ f->rel_trace(Z, m)));
      }
    }
  }
}

TEST_CASE("hex round trip") {
  CHECK(to_hex(0) == "0");
  CHECK(to_hex(0xAB) == "ab");
  CHECK(parse_hex("0xff") == 255);
  CHECK(parse_hex(to_hex(~0ull)) == ~0ull);
  CHECK(parse_hex_wide(to_hex_wide(Modulus{1} << 64 | 0x1b)) == (Modulus{1} << 64 | 0x1b));
  CHECK_THROWS_AS(parse_hex("xyz"), Error);
}
