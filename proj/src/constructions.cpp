#include "cppforge/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "cppforge/parallel.hpp"

namespace cppforge {
namespace {

std::string deg(unsigned e) { return "GF(2^" + std::to_string(e) + ")"; }

void precondition(bool ok, const std::string& clause) {
  if (!ok) fail(ErrorCode::PreconditionViolated, clause);
}

// Checks that y -> f(y) is a bijection of [0, q) and fills its inverse.
bool invert_into(std::uint64_t q, const auto& f, std::vector<std::uint64_t>& table) {
  table.assign(q, 0);
  std::vector<bool> seen(q, false);
  for (std::uint64_t y = 0; y < q; ++y) {
    const std::uint64_t img = f(y);
    if (seen[img]) return false;
    seen[img] = true;
    table[img] = y;
  }
  return true;
}

bool is_bijection(std::uint64_t q, const auto& f) {
  std::vector<bool> seen(q, false);
  for (std::uint64_t y = 0; y < q; ++y) {
    const std::uint64_t img = f(y);
    if (seen[img]) return false;
    seen[img] = true;
  }
  return true;
}

// sum_{k < big/small} a^{2^{small k}} for a in the degree-`big` subfield.
std::uint64_t partial_trace(const BinaryField& f, std::uint64_t a, unsigned small, unsigned big) {
  std::uint64_t acc = a;
  for (unsigned k = 1; k < big / small; ++k) {
    a = f.frobenius(a, small);
    acc ^= a;
  }
  return acc;
}

StructuredCpp monomial_cpp(Family family, unsigned m, const FieldElement& v, Exponent d,
                           std::optional<CubeRootBranch> branch) {
  const FieldRef field = v.field();
  const Exponent order = field->group_order();
  if (gcd(d % order, order) != 1) {
    fail(ErrorCode::PreconditionViolated, "gcd(" + to_decimal(d) + ", 2^" + std::to_string(field->degree()) + " - 1) != 1");
  }
  const std::uint64_t c = field->inv(v.bits());
  Evaluator kernel = [field, c, d](std::uint64_t x) { return field->mul(c, field->pow(x, d)); };
  SparsePoly expansion(field, {Term{c, d}});
  return {family, field, MonomialParams{m, v, d, branch}, std::move(kernel), std::move(expansion)};
}

void check_extension_degree(unsigned n) {
  if (n == 0 || n % 2 == 0) fail(ErrorCode::EvenExtension, "n = " + std::to_string(n) + " must be odd");
}

StructuredCpp extend_impl(Family family, std::shared_ptr<const SeedCpp> seed, unsigned n, const FieldRef& target,
                          std::uint64_t u) {
  const unsigned m = seed->q_degree();
  const Embedding emb(seed->field, target);
  LinearizedPoly L = seed->L.embedded(emb);
  const std::uint64_t v = emb(seed->v.bits());
  Evaluator kernel = [f = target, m, u, v, L](std::uint64_t x) {
    const std::uint64_t t = f->rel_trace(x, m);
    return f->mul(x, L(t) ^ f->mul(u, t) ^ f->mul(u, x)) ^ f->mul(v, x);
  };
  RecursiveParams params{m, n, FieldElement(target, u), FieldElement(target, v), std::move(L), std::move(seed)};
  return {family, target, std::move(params), std::move(kernel)};
}

// The field every parameter of a recursive construction should live in.
FieldRef pick_target(unsigned degree, std::initializer_list<const FieldElement*> hints) {
  for (const FieldElement* h : hints) {
    if (h->field()->degree() == degree) return h->field();
  }
  return make_field(degree);
}

}  // namespace

SubfieldBridge::SubfieldBridge(FieldRef small, FieldRef big) : embedding_(std::move(small), std::move(big)) {
  const unsigned k = embedding_.source()->degree();
  if (k > kMaxSeedDegree + 8) {
    fail(ErrorCode::DegreeOutOfRange, "subfield lookup supports degree <= " + std::to_string(kMaxSeedDegree + 8));
  }
  const std::uint64_t q = std::uint64_t{1} << k;
  back_.reserve(q);
  for (std::uint64_t a = 0; a < q; ++a) back_.emplace_back(embedding_(a), a);
  std::sort(back_.begin(), back_.end());
}

std::uint64_t SubfieldBridge::lower(std::uint64_t bits) const {
  const auto it = std::lower_bound(back_.begin(), back_.end(), std::pair<std::uint64_t, std::uint64_t>{bits, 0});
  if (it == back_.end() || it->first != bits) {
    fail(ErrorCode::SubfieldViolation, to_hex(bits) + " is not in the degree-" +
                                           std::to_string(small()->degree()) + " subfield of " + deg(big()->degree()));
  }
  return it->second;
}

std::pair<FieldRef, std::uint64_t> lift_coefficient(const FieldElement& c, unsigned sub, unsigned big,
                                                     const FieldRef& prefer) {
  const auto& f = c.field();
  if (f->degree() == big) {
    if (!f->in_subfield(c.bits(), sub)) {
      fail(ErrorCode::SubfieldViolation, to_hex(c.bits()) + " is not in the degree-" + std::to_string(sub) +
                                             " subfield of " + deg(big));
    }
    if (prefer && !prefer->same_as(*f)) check_same_field(*prefer, *f);
    return {f, c.bits()};
  }
  if (f->degree() == sub) {
    FieldRef target = prefer && prefer->degree() == big ? prefer : make_field(big);
    const std::uint64_t bits = Embedding(f, target)(c.bits());
    return {std::move(target), bits};
  }
  fail(ErrorCode::SubfieldViolation,
       "coefficient from " + deg(f->degree()) + " fits neither " + deg(sub) + " nor " + deg(big));
}

SeedCpp make_seed(LinearizedPoly L, FieldElement v) {
  check_same_field(*L.field(), *v.field());
  const FieldRef field = v.field();
  const unsigned m = field->degree();
  precondition(m <= kMaxSeedDegree, "seed field " + deg(m) + " exceeds " + deg(kMaxSeedDegree));
  precondition(L.sub_degree() == m, "seed L must be linearized over the seed field itself");
  precondition(!v.is_zero() && !v.is_one(), "v must not be 0 or 1");
  SeedCpp seed{field, std::move(L), std::move(v), {}};
  const std::uint64_t q = std::uint64_t{1} << m;
  const bool perm = invert_into(q, [&](std::uint64_t y) { return seed(y); }, seed.g_table);
  precondition(perm, "x L(x) + v x is not a permutation of " + deg(m));
  precondition(is_bijection(q, [&](std::uint64_t y) { return seed(y) ^ y; }),
               "x L(x) + v x + x is not a permutation of " + deg(m));
  return seed;
}

SeedCpp reseed(const StructuredCpp& F) {
  precondition(F.family() == Family::Recursive || F.family() == Family::SingleTrace,
               "only recursive or single-trace outputs can be re-seeded");
  const auto& p = std::get<RecursiveParams>(F.params());
  const auto& f = *F.field();
  const unsigned e = f.degree();
  std::vector<std::uint64_t> coeffs(e, 0);
  for (unsigned j = 0; j < e; ++j) {
    coeffs[j] = p.L.coeffs()[j % p.m];
    if (j % p.m == 0) coeffs[j] ^= p.u.bits();
  }
  coeffs[0] ^= p.u.bits();
  return make_seed(LinearizedPoly(F.field(), e, std::move(coeffs)), p.v);
}

Exponent family1_exponent(unsigned m) { return pow2(2 * m) + pow2(m) + 2; }
Exponent family2_exponent(unsigned m) { return pow2(m + 1) + 3; }
Exponent family3_exponent(unsigned m) {
  precondition(m >= 2, "family 3 exponent needs m >= 2");
  return pow2(m - 2) * (pow2(m) + 3);
}

void check_family1(unsigned m, const FieldElement& v) {
  precondition(m >= 2, "m >= 2");
  precondition(std::gcd(3u, m) == 1, "gcd(3, m) = 1 fails for m = " + std::to_string(m));
  precondition(v.field()->degree() == 3 * m, "v must lie in " + deg(3 * m));
  precondition(!v.is_zero(), "v != 0");
  precondition(v.field()->rel_trace(v.bits(), m) == 0, "Tr_m(v) = 0 fails");
}

CubeRootBranch check_family2(unsigned m, const FieldElement& v) {
  precondition(m >= 3 && m % 2 == 1, "m must be odd and >= 3");
  precondition(v.field()->degree() == 2 * m, "v must lie in " + deg(2 * m));
  precondition(!v.is_zero(), "v != 0");
  const auto& f = *v.field();
  const std::uint64_t beta = primitive_cube_root(v.field()).bits();
  const std::uint64_t bv = f.mul(beta, v.bits());
  const bool first = f.rel_trace(bv, m) == 0;
  const bool second = f.rel_trace(f.mul(beta, bv), m) == 0;
  precondition(first || second, "neither Tr_m(beta v) = 0 nor Tr_m(beta^2 v) = 0");
  if (first && second) return CubeRootBranch::Both;
  return first ? CubeRootBranch::Beta : CubeRootBranch::BetaSquared;
}

void check_family3(unsigned m, const FieldElement& v) {
  precondition(m >= 3 && m % 2 == 1, "m must be odd and >= 3");
  precondition(v.field()->degree() == 2 * m, "v must lie in " + deg(2 * m));
  precondition(!v.is_zero(), "v != 0");
  precondition(!is_cube(v), "v must be a non-cube");
  precondition(v.field()->pow(v.bits(), pow2(m) + 1) == 1, "v^{2^m+1} = 1 fails");
}

StructuredCpp monomial_family1(unsigned m, const FieldElement& v) {
  check_family1(m, v);
  return monomial_cpp(Family::Monomial1, m, v, family1_exponent(m), std::nullopt);
}

StructuredCpp monomial_family2(unsigned m, const FieldElement& v) {
  const auto branch = check_family2(m, v);
  return monomial_cpp(Family::Monomial2, m, v, family2_exponent(m), branch);
}

StructuredCpp monomial_family3(unsigned m, const FieldElement& v) {
  check_family3(m, v);
  return monomial_cpp(Family::Monomial3, m, v, family3_exponent(m), std::nullopt);
}

StructuredCpp trinomial(unsigned m, const FieldElement& v) {
  precondition(m >= 1, "m >= 1");
  auto [field, vb] = lift_coefficient(v, m, 3 * m);
  precondition(vb != 0 && vb != 1, "v must not be 0 or 1");
  Evaluator kernel = [f = field, m, vb](std::uint64_t x) {
    const std::uint64_t a = f->frobenius(x, m);
    return f->mul(x, a ^ f->frobenius(a, m) ^ vb);
  };
  SparsePoly expansion(field, {Term{1, pow2(2 * m) + 1}, Term{1, pow2(m) + 1}, Term{vb, 1}});
  return {Family::Trinomial, field, TrinomialParams{m, FieldElement(field, vb)}, std::move(kernel), std::move(expansion)};
}

std::pair<FieldRef, std::uint64_t> extension_target(const SeedCpp& seed, unsigned n, const FieldElement& u) {
  check_extension_degree(n);
  const unsigned m = seed.q_degree();
  if (u.field()->same_as(*seed.field)) {
    const FieldRef target = n == 1 ? seed.field : make_field(n * m);
    return {target, Embedding(seed.field, target)(u.bits())};
  }
  return lift_coefficient(u, m, n * m);
}

StructuredCpp recursive_extend(std::shared_ptr<const SeedCpp> seed, unsigned n, const FieldElement& u) {
  auto [target, ub] = extension_target(*seed, n, u);
  return extend_impl(Family::Recursive, std::move(seed), n, target, ub);
}

StructuredCpp recursive_extend(const SeedCpp& seed, unsigned n, const FieldElement& u) {
  return recursive_extend(std::make_shared<const SeedCpp>(seed), n, u);
}

StructuredCpp trace_cpp(unsigned m, unsigned n, const FieldElement& u, const FieldElement& v) {
  check_extension_degree(n);
  const FieldRef target = pick_target(n * m, {&v, &u});
  const std::uint64_t vb = lift_coefficient(v, m, n * m, target).second;
  const std::uint64_t ub = lift_coefficient(u, m, n * m, target).second;
  const FieldRef small = m == n * m ? target : make_field(m);
  const std::uint64_t v_small = SubfieldBridge(small, target).lower(vb);
  auto seed = std::make_shared<const SeedCpp>(make_seed(LinearizedPoly::zero(small, m), FieldElement(small, v_small)));
  return extend_impl(Family::SingleTrace, std::move(seed), n, target, ub);
}

StructuredCpp multi_trace_cpp(unsigned m, unsigned n, const std::vector<TraceLink>& chain, const FieldElement& c0,
                              const FieldElement& c_tilde) {
  precondition(m >= 1, "m >= 1");
  precondition(n % 2 == 1, "n = " + std::to_string(n) + " must be odd");
  unsigned prev = 1;
  for (const auto& link : chain) {
    if (link.d <= prev || link.d % prev != 0) {
      fail(ErrorCode::BrokenDivisorChain, std::to_string(prev) + " does not properly divide " + std::to_string(link.d));
    }
    prev = link.d;
  }
  if (n % prev != 0) fail(ErrorCode::BrokenDivisorChain, std::to_string(prev) + " does not divide n = " + std::to_string(n));

  const unsigned e = n * m;
  std::vector<const FieldElement*> hints{&c_tilde, &c0};
  for (const auto& link : chain) hints.push_back(&link.c);
  FieldRef target;
  for (const FieldElement* h : hints) {
    if (h->field()->degree() == e) {
      target = h->field();
      break;
    }
  }
  if (!target) target = make_field(e);

  const std::uint64_t ct = lift_coefficient(c_tilde, m, e, target).second;
  precondition(ct != 0 && ct != 1, "c~ must not be 0 or 1");
  std::vector<unsigned> degrees{m};
  std::vector<std::uint64_t> coeffs{lift_coefficient(c0, m, e, target).second};
  std::vector<TraceLink> lifted;
  for (const auto& link : chain) {
    degrees.push_back(link.d * m);
    coeffs.push_back(lift_coefficient(link.c, link.d * m, e, target).second);
    lifted.push_back({link.d, FieldElement(target, coeffs.back())});
  }
  const std::uint64_t c = std::accumulate(coeffs.begin(), coeffs.end(), std::uint64_t{0}, std::bit_xor<>());

  Evaluator kernel = [f = target, degrees, coeffs, c, ct](std::uint64_t x) {
    std::uint64_t t = f->rel_trace(x, degrees.back());
    std::uint64_t acc = f->mul(c, x) ^ f->mul(coeffs.back(), t);
    for (std::size_t j = degrees.size() - 1; j-- > 0;) {
      t = partial_trace(*f, t, degrees[j], degrees[j + 1]);
      acc ^= f->mul(coeffs[j], t);
    }
    return f->mul(x, acc) ^ f->mul(ct, x);
  };
  MultiTraceParams params{m, n, FieldElement(target, coeffs[0]), std::move(lifted), FieldElement(target, ct)};
  return {Family::MultiTrace, target, std::move(params), std::move(kernel)};
}

std::vector<SeedCpp> seed_search(unsigned m, std::size_t max_results, unsigned threads) {
  if (m == 0 || m > 8) fail(ErrorCode::SearchSpaceTooLarge, "seed search supports 1 <= m <= 8, got " + std::to_string(m));
  const std::uint64_t q = std::uint64_t{1} << m;
  const Exponent l_count = Exponent{1} << (m * m);
  const Exponent candidates = l_count * (q - 2);
  if (max_results == 0 && candidates > (Exponent{1} << 26)) {
    fail(ErrorCode::SearchSpaceTooLarge, "unbounded search over " + to_decimal(candidates) +
                                             " candidates; pass a result limit");
  }
  const FieldRef field = make_field(m);
  const auto& f = *field;
  std::vector<std::uint64_t> mul_table(q * q);
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) mul_table[a * q + b] = f.mul(a, b);
  }

  struct Hit {
    std::uint64_t index;
    std::uint64_t v;
  };
  // (L index, v) pairs passing the CPP test for indices in [begin, end).
  const auto scan = [&](std::uint64_t begin, std::uint64_t end, std::vector<Hit>& out) {
    std::vector<std::uint64_t> a(m), y(q);
    std::vector<char> perm(q);
    std::vector<char> seen(q);
    for (std::uint64_t index = begin; index < end; ++index) {
      for (unsigned i = 0; i < m; ++i) a[i] = (index >> (m * i)) & (q - 1);
      for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t acc = 0, power = x;
        for (unsigned i = 0; i < m; ++i) {
          acc ^= mul_table[a[i] * q + power];
          power = mul_table[power * q + power];
        }
        y[x] = mul_table[x * q + acc];
      }
      for (std::uint64_t w = 0; w < q; ++w) {
        std::fill(seen.begin(), seen.end(), 0);
        bool ok = true;
        for (std::uint64_t x = 0; x < q && ok; ++x) {
          const std::uint64_t img = y[x] ^ mul_table[w * q + x];
          ok = !seen[img];
          seen[img] = 1;
        }
        perm[w] = ok;
      }
      for (std::uint64_t v = 2; v < q; ++v) {
        if (perm[v] && perm[v ^ 1]) out.push_back({index, v});
      }
    }
  };

  const std::uint64_t total = l_count > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(l_count);
  const std::uint64_t batch = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 1u << 14));
  const unsigned workers = resolve_threads(threads);
  std::vector<SeedCpp> seeds;
  for (std::uint64_t start = 0; start < total; start += batch) {
    const std::uint64_t stop = std::min(total, start + batch);
    std::vector<std::vector<Hit>> parts(workers);
    parallel_chunks(stop - start, workers, [&](unsigned chunk, std::uint64_t b, std::uint64_t e) {
      scan(start + b, start + e, parts[chunk]);
    });
    for (const auto& part : parts) {
      for (const Hit& hit : part) {
        std::vector<std::uint64_t> coeffs(m);
        for (unsigned i = 0; i < m; ++i) coeffs[i] = (hit.index >> (m * i)) & (q - 1);
        seeds.push_back(make_seed(LinearizedPoly(field, m, std::move(coeffs)), FieldElement(field, hit.v)));
        if (max_results != 0 && seeds.size() == max_results) return seeds;
      }
    }
  }
  return seeds;
}

}  // namespace cppforge
