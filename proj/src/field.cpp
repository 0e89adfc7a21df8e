#include "cppforge/field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>

#if defined(__x86_64__) || defined(__i386__)
#include <wmmintrin.h>
#define CPPFORGE_HAVE_X86_CLMUL 1
#endif

namespace cppforge {

namespace {

using u128 = unsigned __int128;

u128 clmul_portable(std::uint64_t a, std::uint64_t b) noexcept {
  u128 r = 0;
  const u128 wide = a;
  while (b != 0) {
    r ^= wide << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

#ifdef CPPFORGE_HAVE_X86_CLMUL
__attribute__((target("pclmul,sse2"))) u128 clmul_hw(std::uint64_t a, std::uint64_t b) noexcept {
  const __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
  alignas(16) std::uint64_t out[2];
  _mm_store_si128(reinterpret_cast<__m128i*>(out), p);
  return (static_cast<u128>(out[1]) << 64) | out[0];
}

const bool kHasClmul = __builtin_cpu_supports("pclmul");
#endif

inline u128 clmul(std::uint64_t a, std::uint64_t b) noexcept {
#ifdef CPPFORGE_HAVE_X86_CLMUL
  if (kHasClmul) return clmul_hw(a, b);
#endif
  return clmul_portable(a, b);
}

// Folds X^e -> low until the product fits in e bits. Each round lowers the
// degree of the overflow by at least one, usually by far more.
inline std::uint64_t reduce(u128 p, unsigned e, std::uint64_t low) noexcept {
  for (;;) {
    const u128 hi = p >> e;
    if (hi == 0) return static_cast<std::uint64_t>(p);
    const u128 lo = e >= 64 ? static_cast<u128>(static_cast<std::uint64_t>(p)) : (p & ((u128{1} << e) - 1));
    p = lo ^ clmul(static_cast<std::uint64_t>(hi), low);  // hi < 2^63 since p < 2^(2e-1)
  }
}

int poly_degree(u128 p) noexcept {
  if (p == 0) return -1;
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<std::uint64_t>(p));
}

u128 poly_mod(u128 a, u128 b) noexcept {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

u128 poly_gcd(u128 a, u128 b) noexcept {
  while (b != 0) {
    const u128 t = poly_mod(a, b);
    a = b;
    b = t;
  }
  return a;
}

std::vector<std::uint64_t> distinct_primes(std::uint64_t n) {
  auto f = factorize(n);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace

BinaryField::BinaryField(unsigned degree, Modulus modulus)
    : degree_(degree),
      modulus_(modulus),
      mask_(mersenne(degree)),
      low_(static_cast<std::uint64_t>(modulus ^ (Modulus{1} << degree))) {}

std::uint64_t BinaryField::mul_mod(std::uint64_t a, std::uint64_t b, unsigned degree, std::uint64_t low) noexcept {
  return reduce(clmul(a, b), degree, low);
}

std::uint64_t BinaryField::mul(std::uint64_t a, std::uint64_t b) const noexcept { return reduce(clmul(a, b), degree_, low_); }

std::uint64_t BinaryField::square(std::uint64_t a) const noexcept { return reduce(clmul(a, a), degree_, low_); }

std::uint64_t BinaryField::pow(std::uint64_t a, Exponent k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  auto e = static_cast<std::uint64_t>(k % group_order());
  std::uint64_t result = 1;
  for (int bit = 63 - std::countl_zero(e | 1); bit >= 0; --bit) {
    result = square(result);
    if ((e >> bit) & 1) result = mul(result, a);
  }
  return result;
}

std::uint64_t BinaryField::inv(std::uint64_t a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
  return pow(a, group_order() - 1);
}

std::uint64_t BinaryField::frobenius(std::uint64_t a, unsigned j) const noexcept {
  for (j %= degree_; j != 0; --j) a = square(a);
  return a;
}

std::uint64_t BinaryField::rel_trace(std::uint64_t a, unsigned m) const {
  if (m == 0 || degree_ % m != 0) {
    fail(ErrorCode::NonDivisorSubdegree, std::to_string(m) + " does not divide " + std::to_string(degree_));
  }
  std::uint64_t acc = a;
  for (unsigned i = 1; i < degree_ / m; ++i) {
    for (unsigned s = 0; s < m; ++s) a = square(a);
    acc ^= a;
  }
  return acc;
}

bool BinaryField::in_subfield(std::uint64_t a, unsigned m) const {
  if (m == 0 || degree_ % m != 0) {
    fail(ErrorCode::NonDivisorSubdegree, std::to_string(m) + " does not divide " + std::to_string(degree_));
  }
  return frobenius(a, m) == a;
}

const std::vector<std::uint64_t>& BinaryField::order_factors() const {
  std::call_once(factors_once_, [this] { factors_ = factorize(group_order()); });
  return factors_;
}

std::uint64_t BinaryField::multiplicative_order(std::uint64_t a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero, "zero has no multiplicative order");
  std::uint64_t order = group_order();
  for (std::uint64_t p : order_factors()) {
    if (pow(a, order / p) == 1) order /= p;
  }
  return order;
}

std::uint64_t BinaryField::generator() const {
  std::call_once(generator_once_, [this] {
    auto primes = order_factors();
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::uint64_t g = 1; g <= mask_; ++g) {
      const bool primitive =
          std::all_of(primes.begin(), primes.end(), [&](std::uint64_t p) { return pow(g, group_order() / p) != 1; });
      if (primitive) {
        generator_ = g;
        return;
      }
    }
  });
  return generator_;
}

bool is_irreducible(unsigned degree, Modulus modulus) {
  if (degree == 0 || degree > BinaryField::kMaxDegree) return false;
  if (poly_degree(modulus) != static_cast<int>(degree) || (modulus & 1) == 0) return false;
  const auto low = static_cast<std::uint64_t>(modulus ^ (Modulus{1} << degree));
  const std::uint64_t x = degree == 1 ? (low & 1) : 2;
  // powers[k] = x^{2^k} mod f
  std::vector<std::uint64_t> powers(degree + 1);
  powers[0] = x;
  for (unsigned k = 1; k <= degree; ++k) powers[k] = BinaryField::mul_mod(powers[k - 1], powers[k - 1], degree, low);
  if (powers[degree] != x) return false;
  for (std::uint64_t p : distinct_primes(degree)) {
    const u128 h = powers[degree / p] ^ x;
    if (poly_degree(poly_gcd(modulus, h)) != 0) return false;
  }
  return true;
}

FieldRef make_field(unsigned degree, std::optional<Modulus> modulus) {
  if (degree < 1 || degree > BinaryField::kMaxDegree) {
    fail(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(degree) + " outside [1, 64]");
  }
  if (modulus) {
    if (!is_irreducible(degree, *modulus)) {
      fail(ErrorCode::ReducibleModulus,
           to_hex_wide(*modulus) + " is not an irreducible degree-" + std::to_string(degree) + " polynomial");
    }
    return std::make_shared<const BinaryField>(degree, *modulus);
  }
  // Default fields are shared so their generator caches are computed once.
  static std::mutex cache_mutex;
  static std::array<FieldRef, BinaryField::kMaxDegree + 1> cache;
  std::lock_guard lock(cache_mutex);
  if (cache[degree]) return cache[degree];
  const Modulus top = Modulus{1} << degree;
  for (Modulus low = 1; low < top; low += 2) {
    if (is_irreducible(degree, top | low)) {
      cache[degree] = std::make_shared<const BinaryField>(degree, top | low);
      return cache[degree];
    }
  }
  fail(ErrorCode::ReducibleModulus, "no irreducible polynomial of degree " + std::to_string(degree));
}

FieldElement::FieldElement(FieldRef field, std::uint64_t bits) : field_(std::move(field)), bits_(bits) {
  if (!field_) fail(ErrorCode::FieldMismatch, "element without a field");
  if (!field_->contains(bits)) {
    fail(ErrorCode::FieldMismatch, to_hex(bits) + " has bits above degree " + std::to_string(field_->degree()));
  }
}

void check_same_field(const BinaryField& a, const BinaryField& b) {
  if (!a.same_as(b)) {
    fail(ErrorCode::FieldMismatch, "GF(2^" + std::to_string(a.degree()) + ") mod " + to_hex_wide(a.modulus()) +
                                       " vs GF(2^" + std::to_string(b.degree()) + ") mod " + to_hex_wide(b.modulus()));
  }
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  check_same_field(*a.field(), *b.field());
  return {a.field(), a.bits() ^ b.bits()};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  check_same_field(*a.field(), *b.field());
  return {a.field(), a.field()->mul(a.bits(), b.bits())};
}

FieldElement square(const FieldElement& a) { return {a.field(), a.field()->square(a.bits())}; }

FieldElement inv(const FieldElement& a) { return {a.field(), a.field()->inv(a.bits())}; }

FieldElement pow(const FieldElement& a, Exponent k) { return {a.field(), a.field()->pow(a.bits(), k)}; }

FieldElement frobenius(const FieldElement& a, unsigned j) { return {a.field(), a.field()->frobenius(a.bits(), j)}; }

FieldElement rel_trace(const FieldElement& a, unsigned m) { return {a.field(), a.field()->rel_trace(a.bits(), m)}; }

SubfieldHandle::SubfieldHandle(FieldRef parent, unsigned sub_degree) : parent_(std::move(parent)), sub_degree_(sub_degree) {
  if (sub_degree_ == 0 || parent_->degree() % sub_degree_ != 0) {
    fail(ErrorCode::NonDivisorSubdegree,
         std::to_string(sub_degree_) + " does not divide " + std::to_string(parent_->degree()));
  }
}

bool SubfieldHandle::contains(const FieldElement& a) const {
  check_same_field(*parent_, *a.field());
  return contains(a.bits());
}

std::vector<std::uint64_t> SubfieldHandle::enumerate() const {
  const std::uint64_t sub_order = mersenne(sub_degree_);
  const std::uint64_t h = parent_->pow(parent_->generator(), parent_->group_order() / sub_order);
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(sub_order) + 1);
  out.push_back(0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < sub_order; ++k) {
    out.push_back(x);
    x = parent_->mul(x, h);
  }
  return out;
}

std::vector<FieldElement> subfield_enumerate(const SubfieldHandle& h) {
  std::vector<FieldElement> out;
  for (std::uint64_t bits : h.enumerate()) out.emplace_back(h.parent(), bits);
  return out;
}

FieldElement find_generator(const FieldRef& field) { return {field, field->generator()}; }

FieldElement primitive_cube_root(const FieldRef& field) {
  if (field->degree() % 2 != 0) fail(ErrorCode::NoCubeRoot, "3 does not divide 2^" + std::to_string(field->degree()) + " - 1");
  return {field, field->pow(field->generator(), field->group_order() / 3)};
}

bool is_cube(const FieldElement& v) {
  const auto& f = *v.field();
  if (f.degree() % 2 != 0) {
    fail(ErrorCode::NoCubeClassification, "3 does not divide 2^" + std::to_string(f.degree()) + " - 1");
  }
  if (v.is_zero()) fail(ErrorCode::ZeroCoefficient, "cube classification of zero");
  return f.pow(v.bits(), f.group_order() / 3) == 1;
}

FieldElement solve_quadratic_linearized(const FieldElement& c, const FieldElement& Z, unsigned m, unsigned n) {
  check_same_field(*c.field(), *Z.field());
  const auto& f = *c.field();
  if (n % 2 == 0 || m == 0 || f.degree() != n * m) {
    fail(ErrorCode::PreconditionViolated, "field degree must be n*m with n odd (n=" + std::to_string(n) +
                                              ", m=" + std::to_string(m) + ", e=" + std::to_string(f.degree()) + ")");
  }
  if (c.is_zero()) fail(ErrorCode::ZeroCoefficient, "c must be nonzero");
  if (!f.in_subfield(c.bits(), m)) fail(ErrorCode::SubfieldViolation, "c is not in the degree-" + std::to_string(m) + " subfield");

  std::uint64_t s = 0;
  std::uint64_t conj = Z.bits();
  for (unsigned k = 0; k <= (n - 1) / 2; ++k) {
    s ^= conj;
    conj = f.frobenius(conj, 2 * m);
  }
  const std::uint64_t c_inv = f.inv(c.bits());
  std::uint64_t coeff = c_inv;  // c^{-(2^{j+1}-1)}
  std::uint64_t z = 0;
  for (unsigned j = 0; j < m; ++j) {
    z ^= f.mul(coeff, s);
    s = f.square(s);
    coeff = f.mul(f.square(coeff), c_inv);
  }
  return {c.field(), z};
}

Embedding::Embedding(FieldRef source, FieldRef target) : source_(std::move(source)), target_(std::move(target)) {
  const unsigned k = source_->degree();
  const unsigned e = target_->degree();
  if (e % k != 0) {
    fail(ErrorCode::NonDivisorSubdegree, "cannot embed GF(2^" + std::to_string(k) + ") into GF(2^" + std::to_string(e) + ")");
  }
  basis_images_.resize(k);
  if (source_->same_as(*target_)) {
    for (unsigned i = 0; i < k; ++i) basis_images_[i] = std::uint64_t{1} << i;
    return;
  }
  constexpr unsigned kMaxSearchDegree = 24;
  if (k > kMaxSearchDegree) {
    fail(ErrorCode::DegreeOutOfRange, "embedding search supports source degree <= " + std::to_string(kMaxSearchDegree));
  }
  const auto& t = *target_;
  const Modulus p = source_->modulus();
  const auto eval_at = [&](std::uint64_t a) {
    std::uint64_t acc = 0;
    for (int i = static_cast<int>(k); i >= 0; --i) acc = t.mul(acc, a) ^ static_cast<std::uint64_t>((p >> i) & 1);
    return acc;
  };
  const std::uint64_t h = t.pow(t.generator(), t.group_order() / mersenne(k));
  std::uint64_t alpha = h;
  for (std::uint64_t j = 1; eval_at(alpha) != 0; ++j) {
    if (j > mersenne(k)) fail(ErrorCode::ReducibleModulus, "source modulus has no root in the target field");
    alpha = t.mul(alpha, h);
  }
  std::uint64_t power = 1;
  for (unsigned i = 0; i < k; ++i) {
    basis_images_[i] = power;
    power = t.mul(power, alpha);
  }
}

std::uint64_t Embedding::operator()(std::uint64_t bits) const noexcept {
  std::uint64_t out = 0;
  for (; bits != 0; bits &= bits - 1) out ^= basis_images_[static_cast<std::size_t>(std::countr_zero(bits))];
  return out;
}

FieldElement Embedding::operator()(const FieldElement& a) const {
  check_same_field(*source_, *a.field());
  return {target_, (*this)(a.bits())};
}

std::string to_hex_wide(Modulus bits) {
  if (bits == 0) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  while (bits != 0) {
    out.push_back(kDigits[static_cast<unsigned>(bits & 0xf)]);
    bits >>= 4;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_hex(std::uint64_t bits) { return to_hex_wide(bits); }

Modulus parse_hex_wide(const std::string& text) {
  std::string_view s = text;
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  if (s.empty() || s.size() > 32) fail(ErrorCode::ParseError, "bad hex value '" + text + "'");
  Modulus value = 0;
  for (char c : s) {
    unsigned digit;
    if (c >= '0' && c <= '9') {
      digit = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      digit = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      digit = static_cast<unsigned>(c - 'A' + 10);
    } else {
      fail(ErrorCode::ParseError, "bad hex value '" + text + "'");
    }
    value = (value << 4) | digit;
  }
  return value;
}

std::uint64_t parse_hex(const std::string& text) {
  const Modulus v = parse_hex_wide(text);
  if ((v >> 64) != 0) fail(ErrorCode::ParseError, "hex value exceeds 64 bits: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

}  // namespace cppforge
