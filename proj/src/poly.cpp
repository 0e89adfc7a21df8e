#include "cppforge/poly.hpp"

#include <algorithm>
#include <sstream>

namespace cppforge {

SparsePoly::SparsePoly(FieldRef field) : field_(std::move(field)) {}

SparsePoly::SparsePoly(FieldRef field, std::vector<Term> terms) : field_(std::move(field)) {
  for (const auto& t : terms) {
    if (!field_->contains(t.coeff)) fail(ErrorCode::FieldMismatch, "coefficient " + to_hex(t.coeff) + " outside field");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().exp == t.exp) {
      terms_.back().coeff ^= t.coeff;
    } else {
      terms_.push_back(t);
    }
    if (terms_.back().coeff == 0) terms_.pop_back();
  }
}

SparsePoly SparsePoly::monomial(const FieldElement& coeff, Exponent exp) {
  return {coeff.field(), {Term{coeff.bits(), exp}}};
}

std::uint64_t SparsePoly::operator()(std::uint64_t x) const noexcept {
  std::uint64_t acc = 0;
  for (const auto& t : terms_) acc ^= field_->mul(t.coeff, field_->pow(x, t.exp));
  return acc;
}

Evaluator SparsePoly::evaluator() const {
  return [p = *this](std::uint64_t x) { return p(x); };
}

FieldElement eval(const SparsePoly& p, const FieldElement& x) {
  check_same_field(*p.field(), *x.field());
  return {p.field(), p(x.bits())};
}

SparsePoly add_polys(const SparsePoly& p, const SparsePoly& q) {
  check_same_field(*p.field(), *q.field());
  std::vector<Term> all(p.terms().begin(), p.terms().end());
  all.insert(all.end(), q.terms().begin(), q.terms().end());
  return {p.field(), std::move(all)};
}

SparsePoly compose_monomial(const SparsePoly& outer, const SparsePoly& inner) {
  check_same_field(*outer.field(), *inner.field());
  if (!outer.is_monomial() || !inner.is_monomial()) fail(ErrorCode::NonMonomial, "compose_monomial needs single-term inputs");
  const auto& f = *outer.field();
  const Term a = outer.terms()[0];
  const Term b = inner.terms()[0];
  const Exponent order = f.group_order();
  Exponent exp = 0;
  if (a.exp != 0 && b.exp != 0) {
    exp = (a.exp % order) * (b.exp % order) % order;
    if (exp == 0) exp = order;
  }
  return {outer.field(), {Term{f.mul(a.coeff, f.pow(b.coeff, a.exp)), exp}}};
}

SparsePoly scale_conjugate(const SparsePoly& p, const FieldElement& a) {
  check_same_field(*p.field(), *a.field());
  if (a.is_zero()) fail(ErrorCode::ZeroScale, "scale must be nonzero");
  const auto& f = *p.field();
  const Exponent order = f.group_order();
  std::vector<Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    const Exponent shift = (1 + order - t.exp % order) % order;  // 1 - d mod 2^e - 1
    out.push_back({f.mul(t.coeff, f.pow(a.bits(), shift)), t.exp});
  }
  return {p.field(), std::move(out)};
}

LinearizedPoly::LinearizedPoly(FieldRef field, unsigned sub_degree, std::vector<std::uint64_t> coeffs)
    : field_(std::move(field)), sub_degree_(sub_degree), coeffs_(std::move(coeffs)) {
  if (sub_degree_ == 0 || field_->degree() % sub_degree_ != 0) {
    fail(ErrorCode::NonDivisorSubdegree,
         std::to_string(sub_degree_) + " does not divide " + std::to_string(field_->degree()));
  }
  if (coeffs_.size() > sub_degree_) {
    fail(ErrorCode::PreconditionViolated, "linearized polynomial over GF(2^" + std::to_string(sub_degree_) + ") has at most " +
                                              std::to_string(sub_degree_) + " coefficients");
  }
  coeffs_.resize(sub_degree_, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!field_->contains(coeffs_[i]) || !field_->in_subfield(coeffs_[i], sub_degree_)) {
      fail(ErrorCode::SubfieldViolation, "coefficient a_" + std::to_string(i) + " = " + to_hex(coeffs_[i]) +
                                             " is not in the degree-" + std::to_string(sub_degree_) + " subfield");
    }
  }
}

bool LinearizedPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint64_t a) { return a == 0; });
}

std::uint64_t LinearizedPoly::operator()(std::uint64_t x) const noexcept {
  std::uint64_t acc = 0;
  for (std::uint64_t a : coeffs_) {
    if (a != 0) acc ^= field_->mul(a, x);
    x = field_->square(x);
  }
  return acc;
}

LinearizedPoly LinearizedPoly::embedded(const Embedding& into) const {
  check_same_field(*field_, *into.source());
  std::vector<std::uint64_t> lifted;
  lifted.reserve(coeffs_.size());
  for (std::uint64_t a : coeffs_) lifted.push_back(into(a));
  return {into.target(), sub_degree_, std::move(lifted)};
}

FieldElement eval_linearized(const LinearizedPoly& L, const FieldElement& x) {
  if (L.field()->same_as(*x.field())) return {x.field(), L(x.bits())};
  if (x.field()->degree() % L.field()->degree() != 0) check_same_field(*L.field(), *x.field());
  const LinearizedPoly lifted = L.embedded(Embedding(L.field(), x.field()));
  return {x.field(), lifted(x.bits())};
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Monomial1: return "Monomial1";
    case Family::Monomial2: return "Monomial2";
    case Family::Monomial3: return "Monomial3";
    case Family::Trinomial: return "Trinomial";
    case Family::Recursive: return "Recursive";
    case Family::SingleTrace: return "SingleTrace";
    case Family::MultiTrace: return "MultiTrace";
    case Family::InverseMonomial1: return "InverseMonomial1";
    case Family::InverseMonomial2: return "InverseMonomial2";
    case Family::InverseMonomial3: return "InverseMonomial3";
    case Family::InverseRecursiveU0: return "InverseRecursiveU0";
    case Family::InverseRecursive: return "InverseRecursive";
  }
  return "Unknown";
}

Family parse_family(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Family::InverseRecursive); ++i) {
    const auto f = static_cast<Family>(i);
    if (to_string(f) == name) return f;
  }
  fail(ErrorCode::ParseError, "unknown family '" + std::string(name) + "'");
}

std::string_view to_string(CubeRootBranch b) noexcept {
  switch (b) {
    case CubeRootBranch::Beta: return "beta";
    case CubeRootBranch::BetaSquared: return "beta2";
    case CubeRootBranch::Both: return "both";
  }
  return "unknown";
}

StructuredCpp::StructuredCpp(Family family, FieldRef field, FamilyParams params, Evaluator kernel,
                             std::optional<SparsePoly> expansion)
    : family_(family),
      field_(std::move(field)),
      params_(std::move(params)),
      kernel_(std::move(kernel)),
      expansion_(std::move(expansion)) {
  if (expansion_) check_same_field(*field_, *expansion_->field());
}

std::string StructuredCpp::describe() const {
  std::ostringstream os;
  os << to_string(family_) << " over GF(2^" << field_->degree() << ")";
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, MonomialParams>) {
          os << " m=" << p.m << " v=" << to_hex(p.v.bits()) << " d=" << to_decimal(p.d);
        } else if constexpr (std::is_same_v<P, TrinomialParams>) {
          os << " m=" << p.m << " v=" << to_hex(p.v.bits());
        } else if constexpr (std::is_same_v<P, RecursiveParams> || std::is_same_v<P, InverseRecursiveParams>) {
          os << " m=" << p.m << " n=" << p.n << " u=" << to_hex(p.u.bits()) << " v=" << to_hex(p.v.bits());
        } else {
          os << " m=" << p.m << " n=" << p.n << " c0=" << to_hex(p.c0.bits()) << " chain=[";
          for (std::size_t i = 0; i < p.chain.size(); ++i) {
            os << (i ? "," : "") << p.chain[i].d << ":" << to_hex(p.chain[i].c.bits());
          }
          os << "] c~=" << to_hex(p.c_tilde.bits());
        }
      },
      params_);
  return os.str();
}

FieldElement structured_eval(const StructuredCpp& F, const FieldElement& x) {
  check_same_field(*F.field(), *x.field());
  return {F.field(), F(x.bits())};
}

}  // namespace cppforge
