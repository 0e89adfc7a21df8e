#include "cppforge/verify.hpp"

#include <array>
#include <bit>
#include <cstdlib>
#include <iostream>
#include <random>
#include <unordered_map>

#include "cppforge/parallel.hpp"

namespace cppforge {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 24;
constexpr std::uint64_t kWarnCap = std::uint64_t{1} << 28;

class Occupancy {
 public:
  explicit Occupancy(std::uint64_t size) : words_((size + 63) / 64, 0) {}

  /// False if y was already present.
  bool mark(std::uint64_t y) noexcept {
    std::uint64_t& w = words_[y >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (y & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }

  /// ORs `other` in; returns an element present in both, if any.
  std::optional<std::uint64_t> merge(const Occupancy& other) noexcept {
    std::optional<std::uint64_t> overlap;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t both = words_[i] & other.words_[i];
      if (both != 0 && !overlap) overlap = i * 64 + static_cast<std::uint64_t>(std::countr_zero(both));
      words_[i] |= other.words_[i];
    }
    return overlap;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Marks the images of K maps over the whole field and returns, per map, an
// image hit twice (if any).
template <std::size_t K, class Images>
std::array<std::optional<std::uint64_t>, K> sweep(std::uint64_t size, unsigned threads, const Images& images) {
  struct Part {
    std::vector<Occupancy> sets;
    std::array<std::optional<std::uint64_t>, K> repeat{};
  };
  const unsigned workers = resolve_threads(threads);
  const unsigned chunks = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, size)));
  std::vector<Part> parts(chunks);
  for (auto& p : parts) p.sets.assign(K, Occupancy(size));

  parallel_chunks(size, workers, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
    Part& part = parts[chunk];
    std::array<std::uint64_t, K> out{};
    std::size_t open = K;
    for (std::uint64_t x = begin; x < end && open != 0; ++x) {
      images(x, out);
      for (std::size_t k = 0; k < K; ++k) {
        if (!part.repeat[k] && !part.sets[k].mark(out[k])) {
          part.repeat[k] = out[k];
          --open;
        }
      }
    }
  });

  std::array<std::optional<std::uint64_t>, K> result{};
  for (std::size_t k = 0; k < K; ++k) {
    for (const auto& p : parts) {
      if (p.repeat[k]) {
        result[k] = p.repeat[k];
        break;
      }
    }
    for (std::size_t c = 1; c < parts.size() && !result[k]; ++c) result[k] = parts[0].sets[k].merge(parts[c].sets[k]);
  }
  return result;
}

// First two inputs mapping to `image`.
template <class Map>
Counterexample preimages(std::string name, std::uint64_t size, std::uint64_t image, const Map& map) {
  std::optional<std::uint64_t> first;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (map(x) != image) continue;
    if (first) return {std::move(name), *first, x, image};
    first = x;
  }
  fail(ErrorCode::NotBijective, "collision at " + to_hex(image) + " could not be re-located; the map is not pure");
}

std::uint64_t field_size(const BinaryField& f) {
  require_exhaustive(f);
  return f.mask() + 1;
}

}  // namespace

std::string_view to_string(VerifyMode mode) noexcept {
  return mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict VerificationReport::verdict() const noexcept {
  const bool ok = perm_f && perm_f_plus_x.value_or(true) && inverse_ok.value_or(true);
  if (!ok) return Verdict::Refuted;
  return mode == VerifyMode::Exhaustive ? Verdict::Verified : Verdict::Inconclusive;
}

std::uint64_t exhaustive_cap() {
  const char* raw = std::getenv("CPPFORGE_EXHAUSTIVE_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 0);
  if (end == raw || *end != '\0' || value == 0) {
    std::cerr << "warning: ignoring CPPFORGE_EXHAUSTIVE_CAP='" << raw << "'\n";
    return kDefaultCap;
  }
  if (value > kWarnCap) {
    static std::once_flag warned;
    std::call_once(warned, [&] {
      std::cerr << "warning: exhaustive cap " << value << " needs " << value / 4 << " bytes of bitset per worker\n";
    });
  }
  return value;
}

void require_exhaustive(const BinaryField& field) {
  const unsigned e = field.degree();
  const std::uint64_t cap = exhaustive_cap();
  if (e >= 64 || (std::uint64_t{1} << e) > cap) {
    fail(ErrorCode::FieldTooLarge, "GF(2^" + std::to_string(e) + ") exceeds the exhaustive cap of " + std::to_string(cap) +
                                       " elements");
  }
}

VerificationReport is_permutation_exhaustive(const Evaluator& f, const FieldRef& field, const VerifyOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t size = field_size(*field);
  const auto repeat = sweep<1>(size, options.threads, [&](std::uint64_t x, std::array<std::uint64_t, 1>& out) { out[0] = f(x); });
  VerificationReport r;
  r.subject = options.subject;
  r.field_degree = field->degree();
  r.checked = size;
  r.perm_f = !repeat[0];
  if (repeat[0]) r.counterexample = preimages("f", size, *repeat[0], f);
  r.elapsed = Clock::now() - start;
  return r;
}

VerificationReport is_cpp(const Evaluator& f, const FieldRef& field, const VerifyOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t size = field_size(*field);
  const auto repeat = sweep<2>(size, options.threads, [&](std::uint64_t x, std::array<std::uint64_t, 2>& out) {
    out[0] = f(x);
    out[1] = out[0] ^ x;
  });
  VerificationReport r;
  r.subject = options.subject;
  r.field_degree = field->degree();
  r.checked = size;
  r.perm_f = !repeat[0];
  r.perm_f_plus_x = !repeat[1];
  if (repeat[0]) {
    r.counterexample = preimages("f", size, *repeat[0], f);
  } else if (repeat[1]) {
    r.counterexample = preimages("f+x", size, *repeat[1], [&](std::uint64_t x) { return f(x) ^ x; });
  }
  r.elapsed = Clock::now() - start;
  return r;
}

VerificationReport verify_inverse_pair(const Evaluator& f, const Evaluator& h, const FieldRef& field,
                                       const VerifyOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t size = field_size(*field);
  const unsigned workers = resolve_threads(options.threads);
  std::vector<std::optional<Counterexample>> found(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, size)));
  parallel_chunks(size, workers, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t x = begin; x < end; ++x) {
      const std::uint64_t y = f(x);
      const std::uint64_t back = h(y);
      if (back != x) {
        found[chunk] = Counterexample{"h(f(x))", x, y, back};
        return;
      }
      const std::uint64_t w = h(x);
      const std::uint64_t fw = f(w);
      if (fw != x) {
        found[chunk] = Counterexample{"f(h(x))", x, w, fw};
        return;
      }
    }
  });
  VerificationReport r;
  r.subject = options.subject;
  r.field_degree = field->degree();
  r.checked = size;
  for (auto& c : found) {
    if (c) {
      r.counterexample = std::move(c);
      break;
    }
  }
  r.inverse_ok = !r.counterexample;
  r.perm_f = *r.inverse_ok;
  r.elapsed = Clock::now() - start;
  return r;
}

VerificationReport sampled_check(const Evaluator& f, const FieldRef& field, const SampleOptions& options) {
  if (options.trials == 0) fail(ErrorCode::PreconditionViolated, "sampled check needs at least one trial");
  const auto start = Clock::now();
  const auto& F = *field;
  std::mt19937_64 rng(options.seed);
  std::unordered_map<std::uint64_t, std::uint64_t> seen_f;
  std::unordered_map<std::uint64_t, std::uint64_t> seen_fx;
  seen_f.reserve(options.trials * (1 + options.probe_multipliers.size()));
  if (options.plus_identity) seen_fx.reserve(seen_f.bucket_count());

  VerificationReport r;
  r.mode = VerifyMode::Sampled;
  r.subject = options.subject;
  r.field_degree = F.degree();
  r.perm_f = true;
  if (options.plus_identity) r.perm_f_plus_x = true;
  if (options.inverse) r.inverse_ok = true;

  // False once a violation has been recorded.
  const auto probe = [&](std::uint64_t x) {
    ++r.checked;
    const std::uint64_t y = f(x);
    if (auto [it, fresh] = seen_f.emplace(y, x); !fresh && it->second != x) {
      r.perm_f = false;
      r.counterexample = Counterexample{"f", it->second, x, y};
      return false;
    }
    if (options.plus_identity) {
      if (auto [it, fresh] = seen_fx.emplace(y ^ x, x); !fresh && it->second != x) {
        r.perm_f_plus_x = false;
        r.counterexample = Counterexample{"f+x", it->second, x, y ^ x};
        return false;
      }
    }
    if (options.inverse) {
      const std::uint64_t back = (*options.inverse)(y);
      if (back != x) {
        r.inverse_ok = false;
        r.counterexample = Counterexample{"h(f(x))", x, y, back};
        return false;
      }
    }
    return true;
  };

  for (std::uint64_t t = 0; t < options.trials; ++t) {
    const std::uint64_t x = rng() & F.mask();
    if (!probe(x)) break;
    bool ok = true;
    for (std::uint64_t c : options.probe_multipliers) {
      if (!(ok = probe(F.mul(c, x)))) break;
    }
    if (!ok) break;
  }
  r.elapsed = Clock::now() - start;
  return r;
}

bool remark_check(unsigned m) {
  if (m == 0 || m > 4) fail(ErrorCode::SearchSpaceTooLarge, "remark check is exhaustive only for 1 <= m <= 4");
  const FieldRef field = make_field(m);
  const auto& f = *field;
  const std::uint64_t q = std::uint64_t{1} << m;
  std::vector<std::uint64_t> a(m);
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << (m * m)); ++index) {
    for (unsigned i = 0; i < m; ++i) a[i] = (index >> (m * i)) & (q - 1);
    std::vector<char> seen_a(q, 0), seen_b(q, 0);
    bool perm_a = true, perm_b = true;
    for (std::uint64_t x = 0; x < q; ++x) {
      std::uint64_t l = 0, power = x;
      for (unsigned i = 0; i < m; ++i) {
        l ^= f.mul(a[i], power);
        power = f.square(power);
      }
      const std::uint64_t y = f.mul(x, l);
      perm_a = perm_a && !seen_a[y];
      perm_b = perm_b && !seen_b[y ^ x];
      seen_a[y] = 1;
      seen_b[y ^ x] = 1;
    }
    if (perm_a && perm_b) return false;
  }
  return true;
}

}  // namespace cppforge
