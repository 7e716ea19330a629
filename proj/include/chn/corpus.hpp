#ifndef CHN_CORPUS_HPP
#define CHN_CORPUS_HPP

#include <chn/classify.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace chn {

enum class CorpusKind { family_a, family_b, twisted, conjugated, lie_span, special };

inline const char* to_string(CorpusKind k) {
  switch (k) {
    case CorpusKind::family_a: return "family-a";
    case CorpusKind::family_b: return "family-b";
    case CorpusKind::twisted: return "twisted";
    case CorpusKind::conjugated: return "conjugated";
    case CorpusKind::lie_span: return "lie-span";
    case CorpusKind::special: return "special";
  }
  return "?";
}

template <class F>
struct CorpusEntry {
  CorpusKind kind;
  std::string name;
  Subalgebra<F> h;
  std::optional<Subalgebra<F>> untwisted;  // twisted entries only
};

inline constexpr std::uint64_t default_corpus_seed = 20240607;

/// Seeded generator of closed subalgebras of k0+a+n.
template <class F>
class CorpusGenerator {
 public:
  CorpusGenerator(AlgebraContext<F> g, std::uint64_t seed) : g_(std::move(g)), rng_(seed) {}

  /// Deterministic instances: every recipe of both families, a few twists, negative controls.
  std::vector<CorpusEntry<F>> fixed() {
    std::vector<CorpusEntry<F>> out;
    const int n = g_->n();
    for (int k = 0; k < n; ++k) {
      std::string spec = "totally-real:" + std::to_string(k);
      out.push_back({CorpusKind::family_a, spec, build_family_a(g_, SubspaceSpec<F>::parse(spec)), std::nullopt});
    }
    for (int k = 0; k <= 2 * n - 2; ++k) {
      std::string spec = "dim:" + std::to_string(k);
      out.push_back({CorpusKind::family_b, spec, build_family_b(g_, SubspaceSpec<F>::parse(spec)), std::nullopt});
    }
    for (int k = 1; k < n; ++k) {
      std::string spec = "complex:" + std::to_string(2 * k);
      out.push_back({CorpusKind::family_b, spec, build_family_b(g_, SubspaceSpec<F>::parse(spec)), std::nullopt});
    }
    if (n >= 3) {
      const char* spec = "constant-angle:3/5:2";
      out.push_back({CorpusKind::family_b, spec, build_family_b(g_, SubspaceSpec<F>::parse(spec)), std::nullopt});
    }
    std::vector<LieVector<F>> nil = g_->roots().E;
    for (const auto& f : g_->roots().JE) nil.push_back(f);
    nil.push_back(g_->roots().Z);
    out.push_back({CorpusKind::special, "n", Subalgebra<F>::from_closed(g_, nil), std::nullopt});
    out.push_back({CorpusKind::special, "span{E1}", Subalgebra<F>::from_closed(g_, {g_->labeled("E1")}), std::nullopt});
    out.push_back({CorpusKind::special, "span{Z}", Subalgebra<F>::from_closed(g_, {g_->roots().Z}), std::nullopt});
    out.push_back({CorpusKind::special, "R != 0", build_r_nonzero_example(g_), std::nullopt});
    if (n >= 3) out.push_back({CorpusKind::special, "R in Phi(s_d)", build_r_in_phi_example(g_), std::nullopt});
    return out;
  }

  std::vector<CorpusEntry<F>> generate(std::size_t count) {
    auto out = fixed();
    std::size_t base = out.size();
    while (out.size() < count) {
      std::size_t i = out.size() - base;
      switch (i % 8) {
        case 0: out.push_back(random_family_a()); break;
        case 1: out.push_back(random_family_b()); break;
        case 2:
        case 3: {
          if (auto t = random_twisted()) {
            out.push_back(std::move(*t));
            break;
          }
          out.push_back(random_lie_span());
          break;
        }
        case 4: out.push_back(conjugate(out[pick(out.size())])); break;
        default: out.push_back(random_lie_span()); break;
      }
    }
    return out;
  }

  /// At least `count` twisted instances with T != 0.
  std::vector<CorpusEntry<F>> twisted(std::size_t count) {
    std::vector<CorpusEntry<F>> out;
    for (std::size_t tries = 0; out.size() < count && tries < 50 * count; ++tries)
      if (auto t = random_twisted()) out.push_back(std::move(*t));
    return out;
  }

 private:
  long small(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(small(0, static_cast<long>(n) - 1)); }
  F coeff() {
    static const long num[] = {-2, -1, 1, 1, 2, 3};
    static const long den[] = {1, 1, 1, 2, 3};
    return ratio<F>(num[pick(6)], den[pick(5)]);
  }

  const AdaptedLayout& L() const { return g_->layout(); }

  /// Random nonzero vector of g_alpha with some zero entries.
  Vec<F> random_alpha() {
    Vec<F> v(L().an_dim, F(0));
    while (is_zero_vec(v))
      for (std::size_t i = 1; i + 1 < L().an_dim; ++i)
        if (small(0, 2) == 0) v[i] = coeff();
    return v;
  }

  /// Real combinations of E1..E(n-1) rotated by a per-line Pythagorean phase.
  std::vector<Vec<F>> random_totally_real() {
    static const long triples[][3] = {{1, 0, 1}, {3, 4, 5}, {4, 3, 5}, {5, 12, 13}, {0, 1, 1}};
    const std::size_t m = L().alpha_dim / 2;
    std::vector<Vec<F>> lines;
    for (std::size_t j = 0; j < m; ++j) {
      const auto* t = triples[pick(5)];
      Vec<F> v(L().an_dim, F(0));
      v[L().e(j)] = ratio<F>(t[0], t[2]);
      v[L().f(j)] = ratio<F>(t[1], t[2]);
      lines.push_back(v);
    }
    std::size_t k = pick(m + 1);
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < k; ++i) {
      Vec<F> v(L().an_dim, F(0));
      for (const auto& l : lines)
        if (small(0, 1) == 0) axpy(v, coeff(), l);
      if (!is_zero_vec(v)) out.push_back(v);
    }
    return Subspace<F>::span(L().an_dim, out).basis();
  }

  std::vector<Vec<F>> random_subspace() {
    std::size_t k = pick(L().alpha_dim + 1);
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(random_alpha());
    return Subspace<F>::span(L().an_dim, out).basis();
  }

  /// Coordinate subspaces: spans of some E's and F's, which have large normalizers.
  std::vector<Vec<F>> random_coordinate_subspace() {
    std::vector<Vec<F>> out;
    const std::size_t m = L().alpha_dim / 2;
    for (std::size_t j = 0; j < m; ++j) {
      long r = small(0, 3);
      if (r == 1 || r == 3) out.push_back(unit_vector<F>(L().an_dim, L().e(j)));
      if (r == 2 || r == 3) out.push_back(unit_vector<F>(L().an_dim, L().f(j)));
    }
    return out;
  }

  CorpusEntry<F> random_family_a() {
    auto m = random_totally_real();
    return {CorpusKind::family_a, "random totally real dim " + std::to_string(m.size()), build_family_a(g_, m), std::nullopt};
  }

  CorpusEntry<F> random_family_b() {
    auto m = random_subspace();
    return {CorpusKind::family_b, "random dim " + std::to_string(m.size()), build_family_b(g_, m), std::nullopt};
  }

  std::optional<CorpusEntry<F>> random_twisted() {
    auto m = small(0, 2) == 0 ? random_totally_real() : random_coordinate_subspace();
    auto nz = k0_normalizer(*g_, m);
    if (nz.empty()) return std::nullopt;
    Vec<F> t(L().k0_dim, F(0));
    for (const auto& v : nz)
      if (small(0, 1) == 0) axpy(t, coeff(), v);
    if (is_zero_vec(t)) t = nz[pick(nz.size())];
    bool with_z = !is_totally_real(*g_, m) || small(0, 1) == 0;
    auto h = build_twisted(g_, m, t, with_z);
    return CorpusEntry<F>{CorpusKind::twisted, "twisted dim " + std::to_string(m.size()) + (with_z ? " +Z" : ""), std::move(h),
                          untwisted(g_, m, with_z)};
  }

  CorpusEntry<F> random_lie_span() {
    const std::size_t K = L().k0_dim, N = L().an_dim;
    std::size_t seeds = 1 + pick(3);
    std::vector<LieVector<F>> gens;
    for (std::size_t s = 0; s < seeds; ++s) {
      Vec<F> k0(K, F(0)), an(N, F(0));
      std::size_t terms = 1 + pick(3);
      for (std::size_t t = 0; t < terms; ++t) {
        std::size_t pos = pick(K + N);
        // k0 directions are drawn less often; they tend to blow the span up.
        if (pos < K && small(0, 2) != 0) pos = K + pick(N);
        if (pos < K)
          k0[pos] = coeff();
        else
          an[pos - K] = coeff();
      }
      gens.push_back(g_->from_parts(k0, an));
    }
    return {CorpusKind::lie_span, "lie_span of " + std::to_string(seeds), Subalgebra<F>::lie_span(g_, gens), std::nullopt};
  }

  CorpusEntry<F> conjugate(const CorpusEntry<F>& e) {
    static const long scales[][2] = {{2, 1}, {1, 2}, {3, 1}, {2, 3}};
    const auto* s = scales[pick(4)];
    Vec<F> nil(L().an_dim, F(0));
    for (std::size_t i = 1; i < L().an_dim; ++i)
      if (small(0, 2) == 0) nil[i] = coeff();
    auto x = GroupElement<F>::torus(g_, ratio<F>(s[0], s[1])) * GroupElement<F>::exp_nilpotent(g_, g_->from_an(nil));
    return {CorpusKind::conjugated, "conjugate of " + e.name, conjugate_to_base_point(e.h, x), std::nullopt};
  }

  AlgebraContext<F> g_;
  std::mt19937_64 rng_;
};

}  // namespace chn

#endif  // CHN_CORPUS_HPP
