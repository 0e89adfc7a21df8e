// cppforge: build complete permutation polynomials over GF(2^e), invert
// them, and check the results. JSON goes to stdout, logs to stderr.
//
// Exit codes: 0 success / verified, 1 refuted, 2 inconclusive (sampled),
// 3 library error (bad parameters, field too large, ...).

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cppforge/acceptance.hpp"
#include "cppforge/constructions.hpp"
#include "cppforge/inversion.hpp"
#include "cppforge/serialize.hpp"
#include "cppforge/verify.hpp"

namespace {

using namespace cppforge;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitError = 3;

std::string command_line;

Json manifest(const std::string& command) {
  return {{"tool", "cppforge"}, {"version", kVersion}, {"command", command}, {"argv", command_line}};
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

// Accepts either a bare polynomial document or construct's {"polynomial": ...}.
AnyPoly load_poly(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("polynomial")) j = j.at("polynomial");
  return any_poly_from_json(j);
}

struct ConstructArgs {
  std::string family;
  unsigned m = 0;
  unsigned n = 1;
  std::optional<std::string> u, v, c0, chain, seed_file, modulus;
  std::string coeff_field = "small";
};

// A coefficient that belongs to the degree-`sub` subfield of GF(2^big).
FieldElement coefficient(const std::string& hex_text, unsigned sub, unsigned big, const ConstructArgs& a) {
  const std::uint64_t bits = parse_hex(hex_text);
  if (a.coeff_field == "big") {
    return {a.modulus ? make_field(big, parse_hex_wide(*a.modulus)) : make_field(big), bits};
  }
  return {make_field(sub), bits};
}

std::vector<TraceLink> parse_chain(const std::string& text, unsigned m, unsigned n, const ConstructArgs& a) {
  std::vector<TraceLink> chain;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorCode::ParseError, "chain entries look like d:chex, got '" + item + "'");
    const auto d = static_cast<unsigned>(std::stoul(item.substr(0, colon)));
    if (d == 0) fail(ErrorCode::BrokenDivisorChain, "chain degree 0");
    chain.push_back({d, coefficient(item.substr(colon + 1), d * m, n * m, a)});
  }
  return chain;
}

StructuredCpp construct(const ConstructArgs& a) {
  const auto need = [](const std::optional<std::string>& value, const char* flag) -> const std::string& {
    if (!value) fail(ErrorCode::PreconditionViolated, std::string("missing ") + flag);
    return *value;
  };
  if (a.family == "mono1" || a.family == "mono2" || a.family == "mono3") {
    const unsigned e = a.family == "mono1" ? 3 * a.m : 2 * a.m;
    if (e == 0 || e > 64) fail(ErrorCode::DegreeOutOfRange, "m = " + std::to_string(a.m) + " gives no valid field");
    const FieldRef field = a.modulus ? make_field(e, parse_hex_wide(*a.modulus)) : make_field(e);
    // Without --v, a zero v still lets the factory name a bad m first.
    const FieldElement v(field, a.v ? parse_hex(*a.v) : 0);
    if (a.family == "mono1") return monomial_family1(a.m, v);
    if (a.family == "mono2") return monomial_family2(a.m, v);
    return monomial_family3(a.m, v);
  }
  if (a.family == "trinomial") return trinomial(a.m, coefficient(need(a.v, "--v"), a.m, 3 * a.m, a));
  if (a.family == "trace") {
    return trace_cpp(a.m, a.n, coefficient(a.u.value_or("0"), a.m, a.n * a.m, a),
                     coefficient(need(a.v, "--v"), a.m, a.n * a.m, a));
  }
  if (a.family == "recursive") {
    Json j = read_json_file(need(a.seed_file, "--seed-file"));
    if (j.is_object() && j.contains("seeds")) {
      if (!j.at("seeds").is_array() || j.at("seeds").empty()) fail(ErrorCode::ParseError, "seed file lists no seeds");
      j = j.at("seeds").at(0);
    }
    auto seed = std::make_shared<const SeedCpp>(seed_from_json(j));
    const unsigned m = seed->q_degree();
    const std::uint64_t ub = parse_hex(a.u.value_or("0"));
    if (a.coeff_field == "big") {
      const FieldRef big = a.modulus ? make_field(a.n * m, parse_hex_wide(*a.modulus)) : make_field(a.n * m);
      return recursive_extend(seed, a.n, FieldElement(big, ub));
    }
    return recursive_extend(seed, a.n, FieldElement(seed->field, ub));
  }
  if (a.family == "multitrace") {
    const auto chain = a.chain ? parse_chain(*a.chain, a.m, a.n, a) : std::vector<TraceLink>{};
    return multi_trace_cpp(a.m, a.n, chain, coefficient(a.c0.value_or("0"), a.m, a.n * a.m, a),
                           coefficient(need(a.v, "--v"), a.m, a.n * a.m, a));
  }
  fail(ErrorCode::ParseError, "unknown family '" + a.family + "'");
}

int run_construct(const ConstructArgs& a) {
  const StructuredCpp F = construct(a);
  std::cerr << "constructed " << F.describe() << '\n';
  emit({{"polynomial", to_json(F)}, {"manifest", manifest("construct")}});
  return 0;
}

struct VerifyArgs {
  std::string poly;
  bool perm = false;
  bool cpp = false;
  std::optional<std::string> inverse_of;
  std::optional<std::uint64_t> sampled;
  std::uint64_t seed = 0;
  std::vector<std::string> probes;
  unsigned threads = 0;
};

int run_verify(const VerifyArgs& a) {
  const AnyPoly p = load_poly(a.poly);
  const FieldRef field = field_of(p);
  const Evaluator h = evaluator_of(p);
  std::optional<AnyPoly> forward;
  if (a.inverse_of) {
    forward = load_poly(*a.inverse_of);
    check_same_field(*field, *field_of(*forward));
  }
  const std::string subject = describe(p);
  VerificationReport report;
  Json extra = Json::object();
  if (a.sampled) {
    SampleOptions o;
    o.trials = *a.sampled;
    o.seed = a.seed;
    o.subject = subject;
    for (const auto& probe : a.probes) o.probe_multipliers.push_back(parse_hex(probe));
    if (forward) {
      o.inverse = h;
      report = sampled_check(evaluator_of(*forward), field, o);
    } else {
      o.plus_identity = !a.perm;
      report = sampled_check(h, field, o);
    }
    extra["rng_seed"] = a.seed;
    extra["trials"] = *a.sampled;
  } else {
    const VerifyOptions o{a.threads, subject};
    if (forward) {
      report = verify_inverse_pair(evaluator_of(*forward), h, field, o);
    } else if (a.perm) {
      report = is_permutation_exhaustive(h, field, o);
    } else {
      report = is_cpp(h, field, o);
    }
  }
  std::cerr << to_string(report.verdict()) << ": " << subject << " (" << report.checked << " points, "
            << report.elapsed.count() << " s)\n";
  Json m = manifest("verify");
  m.update(extra);
  emit({{"report", to_json(report)}, {"manifest", m}});
  switch (report.verdict()) {
    case Verdict::Verified: return 0;
    case Verdict::Refuted: return kExitRefuted;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

struct InvertArgs {
  std::optional<std::string> exponent;
  std::optional<unsigned> degree;
  bool crt = false;
  std::optional<unsigned> m;
  std::optional<std::string> r;
  std::optional<std::string> poly;
  unsigned max_degree = 20;
  unsigned threads = 0;
};

Json exponent_json(const ExponentInverse& inv) {
  return {{"d", to_decimal(inv.d)}, {"modulus", to_decimal(inv.modulus)}, {"d_inv", to_decimal(inv.d_inv)}};
}

int run_invert(const InvertArgs& a) {
  if (a.crt) {
    if (!a.m || !a.r) fail(ErrorCode::PreconditionViolated, "--crt needs --m and --r");
    emit({{"inverse", exponent_json(exp_inverse_crt(parse_exponent(*a.r), *a.m))}, {"manifest", manifest("invert")}});
    return 0;
  }
  if (a.exponent) {
    if (!a.degree || *a.degree == 0 || *a.degree > 64) fail(ErrorCode::DegreeOutOfRange, "--exponent needs --degree in 1..64");
    const Exponent M = pow2(*a.degree) - 1;
    emit({{"inverse", exponent_json(exp_inverse_euclid(parse_exponent(*a.exponent), M))}, {"manifest", manifest("invert")}});
    return 0;
  }
  if (!a.poly) fail(ErrorCode::PreconditionViolated, "give --exponent, --crt or --poly");
  const AnyPoly p = load_poly(*a.poly);
  Json out;
  std::string mode;
  if (const auto* F = std::get_if<StructuredCpp>(&p); F && (F->expansion() && F->expansion()->is_monomial() ||
                                                           F->family() == Family::Recursive ||
                                                           F->family() == Family::SingleTrace)) {
    out = std::visit([](const auto& q) { return to_json(q); }, closed_form_inverse(*F));
    mode = "closed-form";
  } else if (const auto* s = std::get_if<SparsePoly>(&p); s && s->is_monomial()) {
    out = to_json(invert_monomial(*s));
    mode = "closed-form";
  } else {
    const FieldRef field = field_of(p);
    if (field->degree() > a.max_degree) {
      fail(ErrorCode::FieldTooLarge, "no closed form known and GF(2^" + std::to_string(field->degree()) +
                                         ") exceeds --max-degree " + std::to_string(a.max_degree));
    }
    out = to_json(compositional_inverse_table(evaluator_of(p), field, a.threads));
    mode = "table";
  }
  std::cerr << "inverse by " << mode << '\n';
  Json m = manifest("invert");
  m["mode"] = mode;
  emit({{"polynomial", out}, {"manifest", m}});
  return 0;
}

int run_search(unsigned m, std::size_t max_results, unsigned threads) {
  const auto seeds = seed_search(m, max_results, threads);
  Json list = Json::array();
  for (const auto& s : seeds) list.push_back(to_json(s));
  std::cerr << seeds.size() << " seeds over GF(2^" << m << ")\n";
  Json mf = manifest("search");
  mf["max_results"] = max_results;
  emit({{"count", seeds.size()}, {"seeds", std::move(list)}, {"manifest", mf}});
  return 0;
}

int run_eval(const std::string& poly, const std::vector<std::string>& xs) {
  const AnyPoly p = load_poly(poly);
  const FieldRef field = field_of(p);
  const Evaluator f = evaluator_of(p);
  Json points = Json::array();
  for (const auto& text : xs) {
    const std::uint64_t x = parse_hex(text);
    if (!field->contains(x)) fail(ErrorCode::FieldMismatch, text + " is not an element of GF(2^" + std::to_string(field->degree()) + ")");
    points.push_back({{"x", to_hex(x)}, {"value", to_hex(f(x))}});
  }
  emit({{"field", to_json(*field)}, {"points", std::move(points)}});
  return 0;
}

int run_selftest(const std::vector<int>& criteria, unsigned threads, bool verbose) {
  AcceptanceOptions options;
  options.threads = threads;
  if (verbose) options.log = &std::cerr;
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_acceptance(criteria, options);
  bool ok = true;
  Json lines = Json::array();
  for (const auto& r : results) {
    std::cerr << format_result(r) << '\n';
    lines.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"notes", r.notes}});
    ok = ok && r.pass;
  }
  std::cerr << "total " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  emit({{"criteria", std::move(lines)}, {"pass", ok}, {"manifest", manifest("selftest")}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Complete permutation polynomials over GF(2^e): construct, verify, invert"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a polynomial from one of the families");
  construct_cmd->add_option("--family", ca.family, "mono1|mono2|mono3|trinomial|recursive|trace|multitrace")
      ->required()
      ->check(CLI::IsMember({"mono1", "mono2", "mono3", "trinomial", "recursive", "trace", "multitrace"}));
  construct_cmd->add_option("--m", ca.m, "Subfield degree m");
  construct_cmd->add_option("--n", ca.n, "Extension degree n (odd)");
  construct_cmd->add_option("--u", ca.u, "u as hex");
  construct_cmd->add_option("--v", ca.v, "v (or c~ for multitrace) as hex");
  construct_cmd->add_option("--c0", ca.c0, "c_0 for multitrace, hex");
  construct_cmd->add_option("--chain", ca.chain, "Trace chain d1:c1hex,d2:c2hex");
  construct_cmd->add_option("--seed-file", ca.seed_file, "Seed JSON (from search) for recursive");
  construct_cmd->add_option("--modulus", ca.modulus, "Ambient field modulus, hex");
  construct_cmd->add_option("--coeff-field", ca.coeff_field, "Read u, v, c_i in the small subfield or the big field")
      ->check(CLI::IsMember({"small", "big"}));

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check a polynomial: permutation, CPP or inverse pair");
  verify_cmd->add_option("--poly", va.poly, "Polynomial JSON")->required();
  auto* perm_flag = verify_cmd->add_flag("--perm", va.perm, "Only check that f permutes the field");
  auto* cpp_flag = verify_cmd->add_flag("--cpp", va.cpp, "Check f and f + x (default)");
  auto* inv_opt = verify_cmd->add_option("--inverse-of", va.inverse_of, "Check that --poly inverts this polynomial");
  perm_flag->excludes(cpp_flag)->excludes(inv_opt);
  cpp_flag->excludes(inv_opt);
  verify_cmd->add_option("--sampled", va.sampled, "Random trials instead of an exhaustive sweep");
  verify_cmd->add_option("--seed", va.seed, "RNG seed for --sampled");
  verify_cmd->add_option("--probe", va.probes, "Also evaluate at c x for each sampled x (hex, repeatable)");
  verify_cmd->add_option("--threads", va.threads, "Worker threads (0 = all cores)");

  InvertArgs ia;
  auto* invert_cmd = app.add_subcommand("invert", "Exponent or compositional inverses");
  invert_cmd->add_option("--exponent", ia.exponent, "Invert d modulo 2^degree - 1");
  invert_cmd->add_option("--degree", ia.degree, "Field degree for --exponent");
  invert_cmd->add_flag("--crt", ia.crt, "Invert r modulo 2^{2m} - 1 through its two CRT residues");
  invert_cmd->add_option("--m", ia.m, "m for --crt");
  invert_cmd->add_option("--r", ia.r, "r for --crt");
  invert_cmd->add_option("--poly", ia.poly, "Polynomial JSON to invert");
  invert_cmd->add_option("--max-degree", ia.max_degree, "Largest field for table inversion");
  invert_cmd->add_option("--threads", ia.threads, "Worker threads (0 = all cores)");

  unsigned search_m = 0, search_threads = 0;
  std::size_t search_max = 0;
  auto* search_cmd = app.add_subcommand("search", "Enumerate CPP seeds x L(x) + v x over GF(2^m)");
  search_cmd->add_option("--m", search_m, "Seed field degree")->required();
  search_cmd->add_option("--max-results", search_max, "Stop after this many seeds (0 = all)");
  search_cmd->add_option("--threads", search_threads, "Worker threads (0 = all cores)");

  std::string eval_poly;
  std::vector<std::string> eval_x;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a polynomial at points");
  eval_cmd->add_option("--poly", eval_poly, "Polynomial JSON")->required();
  eval_cmd->add_option("--x", eval_x, "Point as hex (repeatable)")->required();

  std::vector<int> criteria;
  unsigned selftest_threads = 0;
  bool selftest_verbose = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest_cmd->add_option("--criteria", criteria, "Subset of criteria 1-10");
  selftest_cmd->add_option("--threads", selftest_threads, "Worker threads (0 = all cores)");
  selftest_cmd->add_flag("--verbose", selftest_verbose, "Progress on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct_cmd) return run_construct(ca);
    if (*verify_cmd) return run_verify(va);
    if (*invert_cmd) return run_invert(ia);
    if (*search_cmd) return run_search(search_m, search_max, search_threads);
    if (*eval_cmd) return run_eval(eval_poly, eval_x);
    if (*selftest_cmd) return run_selftest(criteria, selftest_threads, selftest_verbose);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
