#include "cppforge/inversion.hpp"

#include "cppforge/parallel.hpp"
#include "cppforge/verify.hpp"

namespace cppforge {
namespace {

using Signed = __int128;

StructuredCpp inverse_monomial(Family family, unsigned m, const FieldElement& v, Exponent forward, Exponent closed,
                               std::optional<CubeRootBranch> branch) {
  const FieldRef field = v.field();
  const Exponent order = field->group_order();
  const Exponent euclid = exp_inverse_euclid(forward % order, order).d_inv;
  if (closed % order != euclid) {
    fail(ErrorCode::PreconditionViolated, "closed-form inverse exponent " + to_decimal(closed) + " disagrees with Euclid (" +
                                              to_decimal(euclid) + ")");
  }
  const std::uint64_t c = v.bits();
  Evaluator kernel = [field, c, closed](std::uint64_t x) { return field->mul(c, field->pow(x, closed)); };
  SparsePoly expansion(field, {Term{c, closed}});
  return {family, field, MonomialParams{m, v, closed, branch}, std::move(kernel), std::move(expansion)};
}

// S(x) = sum_{k=0}^{(n-1)/2} x^{q^{2k}}
std::uint64_t half_trace_sum(const BinaryField& f, std::uint64_t x, unsigned m, unsigned n) {
  std::uint64_t s = x;
  for (unsigned k = 1; k <= (n - 1) / 2; ++k) {
    x = f.frobenius(x, 2 * m);
    s ^= x;
  }
  return s;
}

// sum_j coeffs[j] S^{2^j}
std::uint64_t frobenius_combination(const BinaryField& f, std::uint64_t s, const std::uint64_t* coeffs, unsigned count) {
  std::uint64_t acc = 0;
  for (unsigned j = 0; j < count; ++j) {
    acc ^= f.mul(coeffs[j], s);
    s = f.square(s);
  }
  return acc;
}

}  // namespace

ExponentInverse exp_inverse_euclid(Exponent d, Exponent M) {
  if (M < 2) fail(ErrorCode::PreconditionViolated, "modulus must be at least 2");
  const Exponent reduced = d % M;
  if (gcd(reduced, M) != 1) {
    fail(ErrorCode::NotCoprime, "gcd(" + to_decimal(d) + ", " + to_decimal(M) + ") = " + to_decimal(gcd(reduced, M)));
  }
  Signed r0 = static_cast<Signed>(M), r1 = static_cast<Signed>(reduced);
  Signed s0 = 0, s1 = 1;
  while (r1 != 0) {
    const Signed quot = r0 / r1;
    const Signed r2 = r0 - quot * r1;
    const Signed s2 = s0 - quot * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  Signed inv = s0 % static_cast<Signed>(M);
  if (inv < 0) inv += static_cast<Signed>(M);
  return {d, M, static_cast<Exponent>(inv)};
}

ExponentInverse exp_inverse_crt(Exponent r, unsigned m) {
  if (m == 0 || m > 32) fail(ErrorCode::PreconditionViolated, "CRT inversion needs 1 <= m <= 32");
  const Exponent M = pow2(2 * m) - 1;
  const Exponent m1 = pow2(m) - 1;
  const Exponent m2 = pow2(m) + 1;
  if (gcd(r % M, M) != 1) fail(ErrorCode::NotCoprime, "gcd(" + to_decimal(r) + ", 2^" + std::to_string(2 * m) + " - 1) != 1");
  const Exponent inv1 = m1 == 1 ? 0 : exp_inverse_euclid(r % m1, m1).d_inv;
  const Exponent inv2 = exp_inverse_euclid(r % m2, m2).d_inv;
  const Exponent half = pow2(m - 1);
  const Exponent result = ((half * m2 % M) * inv1 % M + (half * m1 % M) * inv2 % M) % M;
  if ((r % M) * result % M != 1 % M) {
    fail(ErrorCode::NotCoprime, "CRT combination failed its multiplication check for r = " + to_decimal(r));
  }
  return {r, M, result};
}

SparsePoly invert_monomial(const SparsePoly& p) {
  if (!p.is_monomial()) fail(ErrorCode::NonMonomial, "invert_monomial needs a single term");
  const auto& f = *p.field();
  const Term t = p.terms()[0];
  const Exponent order = f.group_order();
  if (t.exp == 0 || t.exp % order == 0) {
    if (order == 1 && t.exp != 0) return p;  // GF(2): a = 1 and x^d = x
    fail(ErrorCode::NotCoprime, "x^" + to_decimal(t.exp) + " is not a permutation of GF(2^" + std::to_string(f.degree()) + ")");
  }
  const Exponent d_inv = exp_inverse_euclid(t.exp, order).d_inv;
  return {p.field(), {Term{f.pow(f.inv(t.coeff), d_inv), d_inv}}};
}

Exponent inverse_exponent1(unsigned m) {
  if (m < 2) fail(ErrorCode::PreconditionViolated, "m >= 2");
  return pow2(3 * m - 1) + pow2(3 * m - 2) - pow2(2 * m - 2) - pow2(m - 2);
}

Exponent inverse_exponent2(unsigned m) {
  if (m % 4 == 1) return (pow2(2 * m + 1) - pow2(m + 1) + 1) / 5;
  if (m % 4 == 3) return (pow2(2 * m) - pow2(m + 1) + 2) / 5;
  fail(ErrorCode::PreconditionViolated, "m must be odd");
}

Exponent inverse_exponent3(unsigned m) {
  if (m < 1) fail(ErrorCode::PreconditionViolated, "m >= 1");
  return pow2(2 * m - 1) + pow2(m) + pow2(m - 1) - 1;
}

StructuredCpp inverse_family1(unsigned m, const FieldElement& v) {
  check_family1(m, v);
  return inverse_monomial(Family::InverseMonomial1, m, v, family1_exponent(m), inverse_exponent1(m), std::nullopt);
}

StructuredCpp inverse_family2(unsigned m, const FieldElement& v) {
  const auto branch = check_family2(m, v);
  return inverse_monomial(Family::InverseMonomial2, m, v, family2_exponent(m), inverse_exponent2(m), branch);
}

StructuredCpp inverse_family3(unsigned m, const FieldElement& v) {
  check_family3(m, v);
  return inverse_monomial(Family::InverseMonomial3, m, v, family3_exponent(m), inverse_exponent3(m), std::nullopt);
}

StructuredCpp inverse_recursive_u0(std::shared_ptr<const SeedCpp> seed, unsigned n, FieldRef target) {
  if (n == 0 || n % 2 == 0) fail(ErrorCode::EvenExtension, "n = " + std::to_string(n) + " must be odd");
  const unsigned m = seed->q_degree();
  if (!target) target = n == 1 ? seed->field : make_field(n * m);
  if (target->degree() != n * m) fail(ErrorCode::FieldMismatch, "target field must have degree n*m");
  auto bridge = std::make_shared<const SubfieldBridge>(seed->field, target);
  const auto& f = *target;
  const std::uint64_t v = bridge->lift(seed->v.bits());
  const std::uint64_t v_inv = f.inv(v);
  // g(t)/t only depends on t, which ranges over F_q.
  std::vector<std::uint64_t> ratio(seed->g_table.size(), 0);
  for (std::uint64_t t = 1; t < ratio.size(); ++t) ratio[t] = f.mul(bridge->lift(seed->g(t)), f.inv(bridge->lift(t)));

  Evaluator kernel = [target, bridge, m, v_inv, ratio = std::move(ratio)](std::uint64_t x) {
    const std::uint64_t t = target->rel_trace(x, m);
    if (t == 0) return target->mul(x, v_inv);
    return target->mul(x, ratio[bridge->lower(t)]);
  };
  InverseRecursiveParams params{m, n, FieldElement::zero(target), FieldElement(target, v), std::move(seed)};
  return {Family::InverseRecursiveU0, target, std::move(params), std::move(kernel)};
}

StructuredCpp inverse_recursive(std::shared_ptr<const SeedCpp> seed, unsigned n, const FieldElement& u) {
  if (u.is_zero()) fail(ErrorCode::ZeroU, "u = 0; use the u = 0 inverse");
  auto [target, u_big] = extension_target(*seed, n, u);
  const unsigned m = seed->q_degree();
  auto bridge = std::make_shared<const SubfieldBridge>(seed->field, target);
  const auto& f = *target;
  const std::uint64_t v = bridge->lift(seed->v.bits());
  const std::uint64_t u_inv = f.inv(u_big);
  const std::uint64_t u_half = f.sqrt(u_big);
  const std::uint64_t u_neg_half = f.inv(u_half);

  // tr(x) = 0: coefficients u^{2^j-1} / v^{2^{j+1}-1}.
  std::vector<std::uint64_t> kernel_coeffs(m);
  {
    const std::uint64_t v_inv = f.inv(v);
    std::uint64_t up = 1, vp = v_inv;
    for (unsigned j = 0; j < m; ++j) {
      kernel_coeffs[j] = f.mul(up, vp);
      up = f.mul(f.square(up), u_big);
      vp = f.mul(f.square(vp), v_inv);
    }
  }

  // Per nonzero t in F_q: whether the square-root branch applies, g(t), and
  // u^{-1/2} w^{2^{j+1}-1} with w = (t/(u^{1/2} g(t)) + u^{1/2} g(t))^{-1}.
  const std::uint64_t q = seed->g_table.size();
  std::vector<char> sqrt_branch(q, 0);
  std::vector<std::uint64_t> g_big(q, 0);
  std::vector<std::uint64_t> general(q * m, 0);
  for (std::uint64_t ts = 1; ts < q; ++ts) {
    const std::uint64_t t = bridge->lift(ts);
    const std::uint64_t g = bridge->lift(seed->g(ts));
    g_big[ts] = g;
    const std::uint64_t a = f.mul(u_half, g);
    if ((a ^ f.sqrt(t)) == 0) {
      sqrt_branch[ts] = 1;
      continue;
    }
    const std::uint64_t w = f.inv(f.mul(t, f.inv(a)) ^ a);
    std::uint64_t wp = w;
    for (unsigned j = 0; j < m; ++j) {
      general[ts * m + j] = f.mul(u_neg_half, wp);
      wp = f.mul(f.square(wp), w);
    }
  }

  Evaluator kernel = [target, bridge, m, n, u_inv, kernel_coeffs = std::move(kernel_coeffs),
                      sqrt_branch = std::move(sqrt_branch), g_big = std::move(g_big),
                      general = std::move(general)](std::uint64_t x) {
    const auto& F = *target;
    const std::uint64_t t = F.rel_trace(x, m);
    if (t == 0) return frobenius_combination(F, half_trace_sum(F, x, m, n), kernel_coeffs.data(), m);
    const std::uint64_t ts = bridge->lower(t);
    if (sqrt_branch[ts]) return F.sqrt(F.mul(x, u_inv));
    return g_big[ts] ^ frobenius_combination(F, half_trace_sum(F, x, m, n), &general[ts * m], m);
  };
  InverseRecursiveParams params{m, n, FieldElement(target, u_big), FieldElement(target, v), std::move(seed)};
  return {Family::InverseRecursive, target, std::move(params), std::move(kernel)};
}

Evaluator LookupTable::evaluator() const {
  return [table = std::make_shared<const std::vector<std::uint32_t>>(table_)](std::uint64_t x) { return (*table)[x]; };
}

LookupTable compositional_inverse_table(const Evaluator& f, const FieldRef& field, unsigned threads) {
  if (field->degree() > 32) fail(ErrorCode::FieldTooLarge, "inverse tables hold at most 2^32 entries");
  require_exhaustive(*field);
  const std::uint64_t size = field->mask() + 1;
  std::vector<std::uint32_t> images(size);
  parallel_chunks(size, threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t x = begin; x < end; ++x) images[x] = static_cast<std::uint32_t>(f(x));
  });
  std::vector<std::uint32_t> table(size, 0);
  std::vector<bool> seen(size, false);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint32_t y = images[x];
    if (y >= size) fail(ErrorCode::FieldMismatch, "map produced " + to_hex(y) + ", outside the field");
    if (seen[y]) throw NotBijectiveError(table[y], x, y);
    seen[y] = true;
    table[y] = static_cast<std::uint32_t>(x);
  }
  return {field, std::move(table)};
}

std::variant<SparsePoly, StructuredCpp> closed_form_inverse(const StructuredCpp& F) {
  if (F.expansion() && F.expansion()->is_monomial()) return invert_monomial(*F.expansion());
  if (F.family() == Family::Recursive || F.family() == Family::SingleTrace) {
    const auto& p = std::get<RecursiveParams>(F.params());
    if (p.u.is_zero()) return inverse_recursive_u0(p.seed, p.n, F.field());
    return inverse_recursive(p.seed, p.n, p.u);
  }
  fail(ErrorCode::PreconditionViolated, std::string("no closed-form inverse for family ") + std::string(to_string(F.family())));
}

}  // namespace cppforge
