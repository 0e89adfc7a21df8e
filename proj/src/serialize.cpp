#include "cppforge/serialize.hpp"

#include <fstream>

namespace cppforge {
namespace {

[[noreturn]] void parse_error(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string()) parse_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

unsigned small_int(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xffffffffLL) {
    parse_error(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<unsigned>();
}

Exponent exponent(const Json& v) {
  if (v.is_string()) return parse_exponent(v.get<std::string>());
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  parse_error("exponent must be a decimal string");
}

std::uint64_t hex(const Json& v) {
  if (!v.is_string()) parse_error("field elements must be hex strings");
  return parse_hex(v.get<std::string>());
}

FieldElement element(const FieldRef& field, const Json& j, const char* key) {
  const std::uint64_t bits = hex(member(j, key));
  if (!field->contains(bits)) parse_error(std::string("'") + key + "' has bits outside GF(2^" + std::to_string(field->degree()) + ")");
  return {field, bits};
}

Json hex_list(std::span<const std::uint64_t> values) {
  Json out = Json::array();
  for (std::uint64_t v : values) out.push_back(to_hex(v));
  return out;
}

Json params_json(const StructuredCpp& F) {
  Json p = Json::object();
  std::visit(
      [&](const auto& q) {
        using P = std::decay_t<decltype(q)>;
        p["m"] = q.m;
        if constexpr (std::is_same_v<P, MonomialParams>) {
          p["v"] = to_hex(q.v.bits());
          p["d"] = to_decimal(q.d);
          if (q.branch) p["branch"] = std::string(to_string(*q.branch));
        } else if constexpr (std::is_same_v<P, TrinomialParams>) {
          p["v"] = to_hex(q.v.bits());
        } else if constexpr (std::is_same_v<P, RecursiveParams>) {
          p["n"] = q.n;
          p["u"] = to_hex(q.u.bits());
          p["v"] = to_hex(q.v.bits());
          if (F.family() == Family::Recursive) p["seed"] = to_json(*q.seed);
        } else if constexpr (std::is_same_v<P, MultiTraceParams>) {
          p["n"] = q.n;
          p["c0"] = to_hex(q.c0.bits());
          Json chain = Json::array();
          for (const auto& link : q.chain) chain.push_back({{"d", link.d}, {"c", to_hex(link.c.bits())}});
          p["chain"] = std::move(chain);
          p["c_tilde"] = to_hex(q.c_tilde.bits());
        } else {
          p["n"] = q.n;
          if (F.family() == Family::InverseRecursive) p["u"] = to_hex(q.u.bits());
          p["v"] = to_hex(q.v.bits());
          p["seed"] = to_json(*q.seed);
        }
      },
      F.params());
  return p;
}

}  // namespace

Json to_json(const BinaryField& field) {
  return {{"degree", field.degree()}, {"modulus_hex", to_hex_wide(field.modulus())}};
}

FieldRef field_from_json(const Json& j) {
  const unsigned degree = small_int(j, "degree");
  if (!j.contains("modulus_hex")) return make_field(degree);
  return make_field(degree, parse_hex_wide(text(j, "modulus_hex")));
}

Json to_json(const SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) terms.push_back({{"coeff_hex", to_hex(t.coeff)}, {"exp", to_decimal(t.exp)}});
  return {{"field", to_json(*p.field())}, {"terms", std::move(terms)}};
}

SparsePoly poly_from_json(const Json& j) {
  const FieldRef field = field_from_json(member(j, "field"));
  const Json& terms = member(j, "terms");
  if (!terms.is_array()) parse_error("'terms' must be an array");
  std::vector<Term> out;
  for (const auto& t : terms) {
    const std::uint64_t c = hex(member(t, "coeff_hex"));
    if (!field->contains(c)) parse_error("coefficient " + to_hex(c) + " outside the field");
    out.push_back({c, exponent(member(t, "exp"))});
  }
  return {field, std::move(out)};
}

Json to_json(const SeedCpp& seed) {
  return {{"field", to_json(*seed.field)},
          {"L", hex_list(seed.L.coeffs())},
          {"v", to_hex(seed.v.bits())},
          {"g_table", hex_list(seed.g_table)}};
}

SeedCpp seed_from_json(const Json& j) {
  const FieldRef field = field_from_json(member(j, "field"));
  const Json& L = member(j, "L");
  if (!L.is_array()) parse_error("'L' must be an array");
  std::vector<std::uint64_t> coeffs;
  for (const auto& a : L) coeffs.push_back(hex(a));
  SeedCpp seed = make_seed(LinearizedPoly(field, field->degree(), std::move(coeffs)), element(field, j, "v"));
  if (j.contains("g_table")) {
    const Json& g = j.at("g_table");
    bool same = g.is_array() && g.size() == seed.g_table.size();
    for (std::size_t i = 0; same && i < g.size(); ++i) same = hex(g[i]) == seed.g_table[i];
    if (!same) parse_error("stored g_table does not invert x L(x) + v x");
  }
  return seed;
}

Json to_json(const StructuredCpp& F) {
  Json j{{"field", to_json(*F.field())}, {"family", std::string(to_string(F.family()))}, {"params", params_json(F)}};
  if (F.expansion()) j["terms"] = to_json(*F.expansion())["terms"];
  return j;
}

StructuredCpp structured_from_json(const Json& j) {
  const FieldRef field = field_from_json(member(j, "field"));
  const Family family = parse_family(text(j, "family"));
  const Json& p = member(j, "params");
  const unsigned m = small_int(p, "m");
  const auto seed = [&] { return std::make_shared<const SeedCpp>(seed_from_json(member(p, "seed"))); };
  const auto check_d = [&](StructuredCpp F) {
    if (p.contains("d") && exponent(p.at("d")) != std::get<MonomialParams>(F.params()).d) {
      parse_error("stored exponent does not match the family");
    }
    return F;
  };
  switch (family) {
    case Family::Monomial1: return check_d(monomial_family1(m, element(field, p, "v")));
    case Family::Monomial2: return check_d(monomial_family2(m, element(field, p, "v")));
    case Family::Monomial3: return check_d(monomial_family3(m, element(field, p, "v")));
    case Family::InverseMonomial1: return check_d(inverse_family1(m, element(field, p, "v")));
    case Family::InverseMonomial2: return check_d(inverse_family2(m, element(field, p, "v")));
    case Family::InverseMonomial3: return check_d(inverse_family3(m, element(field, p, "v")));
    case Family::Trinomial: return trinomial(m, element(field, p, "v"));
    case Family::Recursive: {
      auto F = recursive_extend(seed(), small_int(p, "n"), element(field, p, "u"));
      if (!F.field()->same_as(*field)) parse_error("recursive polynomial rebuilt over a different field");
      return F;
    }
    case Family::SingleTrace:
      return trace_cpp(m, small_int(p, "n"), element(field, p, "u"), element(field, p, "v"));
    case Family::MultiTrace: {
      std::vector<TraceLink> chain;
      const Json& c = member(p, "chain");
      if (!c.is_array()) parse_error("'chain' must be an array");
      for (const auto& link : c) chain.push_back({small_int(link, "d"), element(field, link, "c")});
      return multi_trace_cpp(m, small_int(p, "n"), chain, element(field, p, "c0"), element(field, p, "c_tilde"));
    }
    case Family::InverseRecursiveU0: return inverse_recursive_u0(seed(), small_int(p, "n"), field);
    case Family::InverseRecursive: return inverse_recursive(seed(), small_int(p, "n"), element(field, p, "u"));
  }
  parse_error("unknown family");
}

Json to_json(const LookupTable& table) {
  Json values = Json::array();
  for (std::uint32_t v : table.table()) values.push_back(to_hex(v));
  return {{"field", to_json(*table.field())}, {"table", std::move(values)}};
}

LookupTable table_from_json(const Json& j) {
  const FieldRef field = field_from_json(member(j, "field"));
  const Json& t = member(j, "table");
  if (field->degree() > 32 || !t.is_array() || t.size() != field->mask() + 1) {
    parse_error("'table' must list one value per field element");
  }
  std::vector<std::uint32_t> values;
  values.reserve(t.size());
  for (const auto& v : t) {
    const std::uint64_t bits = hex(v);
    if (!field->contains(bits)) parse_error("table value " + to_hex(bits) + " outside the field");
    values.push_back(static_cast<std::uint32_t>(bits));
  }
  return {field, std::move(values)};
}

Json to_json(const VerificationReport& r) {
  Json j{{"mode", std::string(to_string(r.mode))},
         {"subject", r.subject},
         {"field_degree", r.field_degree},
         {"checked", r.checked},
         {"perm_f", r.perm_f}};
  if (r.perm_f_plus_x) j["perm_f_plus_x"] = *r.perm_f_plus_x;
  if (r.inverse_ok) j["inverse_ok"] = *r.inverse_ok;
  j["verdict"] = std::string(to_string(r.verdict()));
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"map", c.map}, {"x1", to_hex(c.x1)}, {"x2", to_hex(c.x2)}, {"image", to_hex(c.image)}};
  }
  return j;
}

AnyPoly any_poly_from_json(const Json& j) {
  if (!j.is_object()) parse_error("expected a JSON object");
  if (j.contains("family")) return structured_from_json(j);
  if (j.contains("table")) return table_from_json(j);
  if (j.contains("terms")) return poly_from_json(j);
  parse_error("object is neither a polynomial, a constructed family nor a table");
}

Json to_json(const AnyPoly& p) {
  return std::visit([](const auto& q) { return to_json(q); }, p);
}

FieldRef field_of(const AnyPoly& p) {
  return std::visit([](const auto& q) { return q.field(); }, p);
}

Evaluator evaluator_of(const AnyPoly& p) {
  return std::visit(
      [](const auto& q) -> Evaluator {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, StructuredCpp>) {
          return q.evaluator();
        } else {
          return q.evaluator();
        }
      },
      p);
}

std::string describe(const AnyPoly& p) {
  return std::visit(
      [](const auto& q) -> std::string {
        using Q = std::decay_t<decltype(q)>;
        const std::string field = "GF(2^" + std::to_string(q.field()->degree()) + ")";
        if constexpr (std::is_same_v<Q, StructuredCpp>) {
          return q.describe();
        } else if constexpr (std::is_same_v<Q, SparsePoly>) {
          return std::to_string(q.terms().size()) + "-term polynomial over " + field;
        } else {
          return "lookup table over " + field;
        }
      },
      p);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace cppforge
