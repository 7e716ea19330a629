#ifndef CHN_CLASSIFY_HPP
#define CHN_CLASSIFY_HPP

#include <chn/geometry.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chn {

/// A requested family instance cannot be built (bad recipe, not totally real, T not normalizing m).
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Subspaces of g_alpha

/// m in g_alpha: explicit vectors (a+n coordinates) or a recipe
///   totally-real:k       E1..Ek
///   complex:2k           E1,F1,..,Ek,Fk
///   dim:k                E1..E(n-1), then F1,..
///   hyperplane           dim:2n-3
///   constant-angle:c:2j  pairs E(2i-1), c F(2i-1) + s E(2i), s = sqrt(1-c^2) rational
template <class F>
struct SubspaceSpec {
  enum class Kind { explicit_basis, totally_real, complex, dim, hyperplane, constant_angle };
  Kind kind = Kind::dim;
  std::size_t dim = 0;
  F cos{0};
  std::vector<Vec<F>> vectors;

  static SubspaceSpec parse(const std::string& text) {
    SubspaceSpec s;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto parse_dim = [&](const std::string& v) {
      try {
        std::size_t used = 0;
        long k = std::stol(v, &used);
        if (used != v.size() || k < 0) throw ParseError("");
        return static_cast<std::size_t>(k);
      } catch (const std::exception&) {
        throw ParseError("bad dimension '" + v + "' in subspace spec '" + text + "'");
      }
    };
    if (head == "totally-real") {
      s.kind = Kind::totally_real;
      s.dim = parse_dim(rest);
    } else if (head == "complex") {
      s.kind = Kind::complex;
      s.dim = parse_dim(rest);
    } else if (head == "dim") {
      s.kind = Kind::dim;
      s.dim = parse_dim(rest);
    } else if (head == "hyperplane" && rest.empty()) {
      s.kind = Kind::hyperplane;
    } else if (head == "constant-angle") {
      auto c2 = rest.find(':');
      if (c2 == std::string::npos) throw ParseError("constant-angle spec needs cos:dim, got '" + text + "'");
      s.kind = Kind::constant_angle;
      s.cos = parse_scalar<F>(rest.substr(0, c2));
      s.dim = parse_dim(rest.substr(c2 + 1));
    } else {
      throw ParseError("unknown subspace spec '" + text + "'");
    }
    return s;
  }

  static SubspaceSpec explicit_vectors(std::vector<Vec<F>> v) {
    SubspaceSpec s;
    s.kind = Kind::explicit_basis;
    s.vectors = std::move(v);
    return s;
  }
};

/// Basis of the requested m in a+n coordinates.
template <class F>
std::vector<Vec<F>> realize(const Algebra<F>& g, const SubspaceSpec<F>& spec) {
  using K = typename SubspaceSpec<F>::Kind;
  const auto& L = g.layout();
  const std::size_t m = static_cast<std::size_t>(g.n() - 1);
  auto e = [&](std::size_t i) { return unit_vector<F>(L.an_dim, L.e(i)); };
  auto f = [&](std::size_t i) { return unit_vector<F>(L.an_dim, L.f(i)); };
  auto fail = [&](const std::string& why) {
    return ConstructionError("subspace not realizable for n=" + std::to_string(g.n()) + ": " + why);
  };
  std::vector<Vec<F>> out;
  switch (spec.kind) {
    case K::explicit_basis:
      for (const auto& v : spec.vectors)
        if (v.size() != L.an_dim || !is_zero(v[0]) || !is_zero(v[L.z()])) throw fail("vector outside g_alpha");
      return Subspace<F>::span(L.an_dim, spec.vectors).basis();
    case K::totally_real:
      if (spec.dim > m) throw fail("totally real dimension above n-1");
      for (std::size_t i = 0; i < spec.dim; ++i) out.push_back(e(i));
      return out;
    case K::complex:
      if (spec.dim % 2 != 0 || spec.dim > 2 * m) throw fail("complex dimension must be even and at most 2n-2");
      for (std::size_t i = 0; i < spec.dim / 2; ++i) {
        out.push_back(e(i));
        out.push_back(f(i));
      }
      return out;
    case K::hyperplane:
    case K::dim: {
      std::size_t k = spec.kind == K::hyperplane ? 2 * m - 1 : spec.dim;
      if (k > 2 * m) throw fail("dimension above 2n-2");
      for (std::size_t i = 0; i < k; ++i) out.push_back(i < m ? e(i) : f(i - m));
      return out;
    }
    case K::constant_angle: {
      if (spec.dim % 2 != 0 || spec.dim > m) throw fail("constant-angle dimension must be even and at most n-1");
      if (sign(spec.cos) < 0 || sign(F(spec.cos - F(1))) > 0) throw fail("cos must lie in [0,1]");
      auto sn = field_traits<F>::sqrt(F(F(1) - spec.cos * spec.cos));
      if (!sn) throw fail("sin is irrational for cos = " + format(spec.cos) + "; give explicit vectors");
      for (std::size_t j = 0; j < spec.dim / 2; ++j) {
        out.push_back(e(2 * j));
        out.push_back(spec.cos * f(2 * j) + *sn * e(2 * j + 1));
      }
      return out;
    }
  }
  return out;
}

template <class F>
bool is_totally_real(const Algebra<F>& g, const std::vector<Vec<F>>& m) {
  for (const auto& x : m) {
    Vec<F> jx = g.j_matrix().apply(x);
    for (const auto& y : m)
      if (!is_zero(dot(jx, y))) return false;
  }
  return true;
}

template <class F>
bool is_complex_subspace(const Algebra<F>& g, const std::vector<Vec<F>>& m) {
  auto span = Subspace<F>::span(g.layout().an_dim, m);
  for (const auto& x : span.basis())
    if (!span.contains(g.j_matrix().apply(x))) return false;
  return true;
}

/// {T in k0 : [T, m] in m}, in T coordinates.
template <class F>
std::vector<Vec<F>> k0_normalizer(const Algebra<F>& g, const std::vector<Vec<F>>& m) {
  const auto& L = g.layout();
  std::vector<Vec<F>> alpha_m;
  for (const auto& v : m) alpha_m.push_back(g.an_to_alpha(v));
  // Orthogonal complement of m inside g_alpha.
  std::vector<Vec<F>> perp = alpha_m.empty() ? std::vector<Vec<F>>{}
                                             : nullspace(Matrix<F>::from_rows(alpha_m, L.alpha_dim));
  if (alpha_m.empty())
    for (std::size_t i = 0; i < L.alpha_dim; ++i) perp.push_back(unit_vector<F>(L.alpha_dim, i));
  Matrix<F> sys(alpha_m.size() * perp.size(), L.k0_dim);
  std::size_t row = 0;
  for (const auto& w : alpha_m)
    for (const auto& c : perp) {
      for (std::size_t k = 0; k < L.k0_dim; ++k) sys(row, k) = dot(c, g.k0_action(k).apply(w));
      ++row;
    }
  return nullspace(sys);
}

/// The element C of k0 with ad(C) = J on g_alpha.
template <class F>
Vec<F> central_j_element(const Algebra<F>& g) {
  const auto& L = g.layout();
  const std::size_t a = L.alpha_dim;
  Matrix<F> sys(a * a, L.k0_dim);
  Vec<F> rhs(a * a);
  for (std::size_t k = 0; k < L.k0_dim; ++k)
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < a; ++c) sys(r * a + c, k) = g.k0_action(k)(r, c);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t c = 0; c < a; ++c) rhs[r * a + c] = g.j_matrix()(r + 1, c + 1);
  auto sol = solve(sys, rhs);
  if (!sol) throw std::logic_error("no element of k0 acts as J on g_alpha");
  return *sol;
}

/// Element of k0 acting on g_alpha as the given operator (alpha coordinates), if any.
template <class F>
std::optional<Vec<F>> k0_element_acting_as(const Algebra<F>& g, const Matrix<F>& op) {
  const auto& L = g.layout();
  const std::size_t a = L.alpha_dim;
  Matrix<F> sys(a * a, L.k0_dim);
  Vec<F> rhs(a * a);
  for (std::size_t k = 0; k < L.k0_dim; ++k)
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < a; ++c) sys(r * a + c, k) = g.k0_action(k)(r, c);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t c = 0; c < a; ++c) rhs[r * a + c] = op(r, c);
  return solve(sys, rhs);
}

// ---------------------------------------------------------------------------
// Constructors

template <class F>
Subalgebra<F> build_family_a(const AlgebraContext<F>& g, const std::vector<Vec<F>>& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    Vec<F> ji = g->j_matrix().apply(m[i]);
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      F c = dot(ji, m[j]);
      if (!is_zero(c))
        throw ConstructionError("m is not totally real: [W" + std::to_string(i + 1) + ",W" + std::to_string(j + 1) +
                                "] = " + format(c) + " Z is not in a+m");
    }
  }
  std::vector<LieVector<F>> gens{g->roots().B};
  for (const auto& w : m) gens.push_back(g->from_an(w));
  return Subalgebra<F>::from_closed(g, gens);
}

template <class F>
Subalgebra<F> build_family_a(const AlgebraContext<F>& g, const SubspaceSpec<F>& spec) {
  return build_family_a(g, realize(*g, spec));
}

template <class F>
Subalgebra<F> build_family_b(const AlgebraContext<F>& g, const std::vector<Vec<F>>& m) {
  std::vector<LieVector<F>> gens{g->roots().B};
  for (const auto& w : m) gens.push_back(g->from_an(w));
  gens.push_back(g->roots().Z);
  return Subalgebra<F>::from_closed(g, gens);
}

template <class F>
Subalgebra<F> build_family_b(const AlgebraContext<F>& g, const SubspaceSpec<F>& spec) {
  return build_family_b(g, realize(*g, spec));
}

/// span{B + T} + m (+ g_2alpha), for T in k0 normalizing m.
template <class F>
Subalgebra<F> build_twisted(const AlgebraContext<F>& g, const std::vector<Vec<F>>& m, const Vec<F>& t, bool with_z) {
  auto span = Subspace<F>::span(g->layout().an_dim, m);
  for (const auto& w : m)
    if (!span.contains(g->alpha_to_an(g->k0_act(t, g->an_to_alpha(w)))))
      throw ConstructionError("T does not normalize m");
  if (!with_z && !is_totally_real(*g, m)) throw ConstructionError("without g_2alpha, m must be totally real");
  std::vector<LieVector<F>> gens{g->roots().B + g->from_k0(t)};
  for (const auto& w : m) gens.push_back(g->from_an(w));
  if (with_z) gens.push_back(g->roots().Z);
  return Subalgebra<F>::from_closed(g, gens);
}

/// a+m (+ g_2alpha) with the k0 parts dropped.
template <class F>
Subalgebra<F> untwisted(const AlgebraContext<F>& g, const std::vector<Vec<F>>& m, bool with_z) {
  return with_z ? build_family_b(g, m) : build_family_a(g, m);
}

/// Abelian h = span{B + E1, -F1 + Z - C/2}: a = x = 1, d = 0 and R != 0.
template <class F>
Subalgebra<F> build_r_nonzero_example(const AlgebraContext<F>& g) {
  Vec<F> c = central_j_element(*g);
  auto x1 = g->roots().B + g->labeled("E1");
  auto x2 = g->roots().Z - g->labeled("F1") - ratio<F>(1, 2) * g->from_k0(c);
  return Subalgebra<F>::from_closed(g, {x1, x2});
}

/// h = span{B + U, E1 + Z + P, E2 + P} with U = 3/4 F1 + 1/4 F2 and P in k0
/// acting on span_C{E1, E2} as -(i/4)[[1,1],[1,1]]; here R - bT = Phi(E2) != 0.
template <class F>
Subalgebra<F> build_r_in_phi_example(const AlgebraContext<F>& g) {
  if (g->n() < 3) throw DimensionError("this example needs n >= 3");
  const auto& L = g->layout();
  const std::size_t a = L.alpha_dim, m = a / 2;
  // Real form of the complex operator A = -(i/4)[[1,1],[1,1]]: E_j -> -1/4 (F1 + F2), F_j -> 1/4 (E1 + E2).
  Matrix<F> op(a, a);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) {
      op(m + k, j) = ratio<F>(-1, 4);
      op(k, m + j) = ratio<F>(1, 4);
    }
  auto p = k0_element_acting_as(*g, op);
  if (!p) throw std::logic_error("k0 does not contain the required rotation");
  auto P = g->from_k0(*p);
  auto u = ratio<F>(3, 4) * g->labeled("F1") + ratio<F>(1, 4) * g->labeled("F2");
  return Subalgebra<F>::from_closed(g, {g->roots().B + u, g->labeled("E1") + g->roots().Z + P, g->labeled("E2") + P});
}

// ---------------------------------------------------------------------------
// Sandwich

/// Orbits of h and h' through o coincide: same tangent space and same II.
template <class F>
bool verify_sandwich(const Subalgebra<F>& h, const Subalgebra<F>& hp) {
  if (h.algebra().n() != hp.algebra().n()) throw ContextError("sandwich: subalgebras from different algebras");
  if (!hp.in_an()) throw PreconditionError("sandwich: h' must lie in a+n");
  if (!(h.an_projection() == hp.an_projection())) throw PreconditionError("sandwich: h' is not the a+n projection of h");
  auto gens = h.basis();
  for (const auto& v : hp.basis()) gens.push_back(v);
  auto res = closure_check(h.algebra(), gens);
  if (!res.closed) throw PreconditionError("sandwich: q + h' is not a subalgebra: " + res.witness(h.algebra()));
  OrbitGeometry<F> gh(h), ghp(hp);
  const auto& tv = gh.split().tangent.vectors;
  const auto& tvp = ghp.split().tangent.vectors;
  auto span_h = Subspace<F>::span(h.algebra().layout().an_dim, tv);
  auto span_hp = Subspace<F>::span(h.algebra().layout().an_dim, tvp);
  if (!(span_h == span_hp)) return false;
  for (const auto& x : tv)
    for (const auto& y : tv)
      if (!negligible(Vec<F>(gh.sff_an(x, y) - ghp.sff_an(x, y)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Identity suite

struct IdentityResult {
  std::string name;
  bool applicable = false;
  bool passed = true;
  std::string residual = "0";
  std::string note;
};

enum class TraceBranch { none, zero, outside_phi, inside_phi };

inline const char* to_string(TraceBranch b) {
  switch (b) {
    case TraceBranch::none: return "n/a";
    case TraceBranch::zero: return "R-bT=0";
    case TraceBranch::outside_phi: return "R-bT notin Phi(s_d)";
    case TraceBranch::inside_phi: return "R-bT in Phi(s_d)";
  }
  return "?";
}

template <class F>
struct IdentitySuiteResult {
  std::vector<IdentityResult> results;
  TraceBranch branch = TraceBranch::none;

  bool all_passed() const {
    for (const auto& r : results)
      if (r.applicable && !r.passed) return false;
    return true;
  }

  const IdentityResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
};

namespace identity_names {
inline constexpr const char* orthogonality = "decomposition orthogonality";
inline constexpr const char* ab_uv = "ab + <U,V> = 0";
inline constexpr const char* tvu = "<[T,V],U> = -(b/2)(1+|U|^2)(1+2<JU,V>)";
inline constexpr const char* urv = "<[U,R],V> = (1/2)(b^2+|V|^2)(1+2<JU,V>)";
inline constexpr const char* trace = "sum <[Phi(W_i),W_i],U>";
inline constexpr const char* xi_a1x0 = "<H,xi> with a=1, x=0";
inline constexpr const char* xi_a1x1 = "<H,xi> with a=x=1";
inline constexpr const char* xi_a0 = "<H,B-bZ> with a=0";
}  // namespace identity_names

/// Scalars of the case analysis, all exact.
template <class F>
struct CaseQuantities {
  F u2{0}, v2{0}, juv{0}, trace_sum{0};
  std::size_t dim_s = 0, d = 0;
  Vec<F> r_minus_bt;
};

template <class F>
CaseQuantities<F> case_quantities(const Subalgebra<F>& h) {
  const auto& g = h.algebra();
  const auto& dec = h.decomposition();
  CaseQuantities<F> c;
  c.u2 = dot(dec.U, dec.U);
  c.v2 = dot(dec.V, dec.V);
  c.juv = dot(g.j_matrix().apply(dec.U), dec.V);
  c.dim_s = dec.dim_s();
  c.d = dec.d;
  for (std::size_t i = 0; i < dec.d; ++i) {
    Vec<F> br = g.alpha_to_an(g.k0_act(dec.phi_W[i], g.an_to_alpha(dec.W[i])));
    c.trace_sum += dot(br, dec.U) / dec.W_norm2[i];
  }
  c.r_minus_bt = dec.R - dec.b * dec.T;
  return c;
}

template <class F>
TraceBranch trace_branch(const Subalgebra<F>& h) {
  const auto& dec = h.decomposition();
  if (!dec.has_x1()) return TraceBranch::none;
  Vec<F> p = dec.R - dec.b * dec.T;
  if (is_zero_vec(p)) return TraceBranch::zero;
  std::vector<Vec<F>> img(dec.phi_W.begin(), dec.phi_W.begin() + static_cast<long>(dec.d));
  auto span = Subspace<F>::span(h.algebra().layout().k0_dim, img);
  return span.contains(p) ? TraceBranch::inside_phi : TraceBranch::outside_phi;
}

template <class F>
IdentitySuiteResult<F> verify_identities(const Subalgebra<F>& h, const Vec<F>* mean_curv = nullptr) {
  namespace N = identity_names;
  const auto& g = h.algebra();
  const auto& dec = h.decomposition();
  const auto& L = g.layout();
  IdentitySuiteResult<F> out;
  auto record = [&](const char* name, bool applicable, const F& residual, std::string note = {}) {
    IdentityResult r{name, applicable, true, "0", std::move(note)};
    if (applicable) {
      r.passed = is_zero(residual);
      r.residual = format(residual);
    }
    out.results.push_back(std::move(r));
  };
  auto c = case_quantities(h);
  const F half = ratio<F>(1, 2);
  const F one(1);

  // Orthogonality of the canonical generating set.
  {
    std::vector<Vec<F>> gens;
    if (dec.has_x1()) gens.push_back(dec.x1_an());
    if (dec.has_x2()) gens.push_back(dec.x2_an());
    for (const auto& w : dec.W) gens.push_back(w);
    F worst(0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        F v = dot(gens[i], gens[j]);
        if (!is_zero(v)) worst = v;
      }
    record(N::orthogonality, true, worst);
  }
  record(N::ab_uv, true, F(dec.a * dec.b + dot(dec.U, dec.V)));

  const bool ax = dec.has_x1() && dec.has_x2();
  {
    F r1(0), r2(0);
    if (ax) {
      Vec<F> tv = g.alpha_to_an(g.k0_act(dec.T, g.an_to_alpha(dec.V)));
      r1 = dot(tv, dec.U) + dec.b * half * (one + c.u2) * (one + F(2) * c.juv);
      Vec<F> ur = F(-1) * g.alpha_to_an(g.k0_act(dec.R, g.an_to_alpha(dec.U)));
      r2 = dot(ur, dec.V) - half * (dec.b * dec.b + c.v2) * (one + F(2) * c.juv);
    }
    record(N::tvu, ax, r1);
    record(N::urv, ax, r2);
  }

  out.branch = trace_branch(h);
  {
    F rhs(0);
    const F dd(static_cast<long>(c.d));
    switch (out.branch) {
      case TraceBranch::zero: rhs = -dd / F(2); break;
      case TraceBranch::outside_phi: rhs = -c.juv - (F(2) + dd) / F(2); break;
      case TraceBranch::inside_phi: rhs = -c.juv - (F(1) + dd) / F(2); break;
      case TraceBranch::none: break;
    }
    record(N::trace, out.branch != TraceBranch::none, F(c.trace_sum - rhs), to_string(out.branch));
  }

  Vec<F> H = mean_curv ? *mean_curv : mean_curvature(h);
  const F ds(static_cast<long>(c.dim_s));
  const F dd(static_cast<long>(c.d));
  {
    bool app = dec.has_x1() && !dec.has_x2() && !is_zero(c.u2);
    F r(0);
    if (app) {
      Vec<F> xi = F(-1) * dec.U;
      xi[0] = c.u2;
      r = dot(H, xi) - (c.u2 * (ds + one) / F(2) + dd / F(2));
    }
    record(N::xi_a1x0, app, r);
  }
  {
    F r(0);
    if (ax) {
      Vec<F> xi = F(-1) * dec.U;
      xi[0] = c.u2;
      xi[L.z()] = -dec.b * (one + c.u2);
      Vec<F> rv = g.alpha_to_an(g.k0_act(dec.R, g.an_to_alpha(dec.V)));
      F b2 = dec.b * dec.b;
      F expected = (F(2) + ds) / F(2) * c.u2 - c.trace_sum +
                   (b2 + c.u2 * (one + b2) - F(2) * c.juv - F(2) * dot(rv, dec.U)) / (F(2) * (b2 + c.v2 + one));
      r = dot(H, xi) - expected;
    }
    record(N::xi_a1x1, ax, r);
  }
  {
    bool app = !dec.has_x1() && h.orbit_dim() > 0;
    F r(0);
    if (app) {
      Vec<F> xi(L.an_dim, F(0));
      xi[0] = F(1);
      xi[L.z()] = -dec.b;
      F expected = ds / F(2) + dec.x * (c.v2 / F(2) + one + dec.b * dec.b) / (dec.b * dec.b + c.v2 + one);
      r = dot(H, xi) - expected;
    }
    record(N::xi_a0, app, r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

enum class Family { a, b, none };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::a: return "a";
    case Family::b: return "b";
    case Family::none: return "none";
  }
  return "?";
}

/// Label for a canonical family instance with dim m = k.
inline std::string family_label(Family f, int n, std::size_t k, bool complex) {
  if (f == Family::a) return k + 1 == static_cast<std::size_t>(n) ? "RH^" + std::to_string(n) + "-focal" : "RH^" + std::to_string(k + 1);
  if (complex) return "CH^" + std::to_string(k / 2 + 1);
  if (k + 3 == 2 * static_cast<std::size_t>(n)) return "Lohnherr";
  return "generic-focal";
}

template <class F>
struct Certificate {
  std::string name;  // which normal vector was paired with H
  Vec<F> normal;
  F value{0};
};

template <class F>
struct ClassificationVerdict {
  bool minimal = false;
  bool totally_geodesic = false;
  bool degenerate = false;
  Family family = Family::none;
  std::string label;
  std::size_t dim_m = 0;
  std::vector<std::string> reduction;
  std::optional<Certificate<F>> certificate;
  bool consistent = true;  // the outcome agrees with the classification theorem
};

template <class F>
ClassificationVerdict<F> match_classification(const Subalgebra<F>& h, const MinimalityReport<F>& rep) {
  const auto& g = h.algebra();
  const auto& dec = h.decomposition();
  const auto& L = g.layout();
  ClassificationVerdict<F> v;
  v.minimal = rep.is_minimal;
  v.totally_geodesic = rep.is_totally_geodesic;
  v.degenerate = rep.degenerate;
  v.dim_m = dec.dim_s();
  if (rep.degenerate) {
    v.label = "point";
    return v;
  }
  const Vec<F>& H = rep.mean_curvature;
  if (!rep.is_minimal) {
    auto c = case_quantities(h);
    Certificate<F> cert;
    if (!dec.has_x1()) {
      cert.name = "<H,B-bZ>";
      cert.normal = Vec<F>(L.an_dim, F(0));
      cert.normal[0] = F(1);
      cert.normal[L.z()] = -dec.b;
      v.label = "horosphere-like-nonminimal";
    } else {
      cert.normal = F(-1) * dec.U;
      cert.normal[0] = c.u2;
      if (dec.has_x2()) {
        cert.name = "<H,|U|^2B-U-b(1+|U|^2)Z>";
        cert.normal[L.z()] = -dec.b * (F(1) + c.u2);
      } else {
        cert.name = "<H,|U|^2B-U>";
      }
      v.label = "other-nonminimal";
    }
    cert.value = dot(H, cert.normal);
    if (sign(cert.value) <= 0) {
      cert.name = "<H,H>";
      cert.normal = H;
      cert.value = dot(H, H);
    }
    v.certificate = cert;
    return v;
  }

  // Minimal of positive dimension: expect U = V = R = b = 0 and s_d = 0.
  const bool canonical = is_zero_vec(dec.U) && is_zero_vec(dec.V) && is_zero_vec(dec.R) && is_zero(dec.b) &&
                         dec.d == 0 && dec.has_x1();
  if (!canonical) {
    v.consistent = false;
    v.label = "unexpected-minimal";
    return v;
  }
  const bool with_z = dec.has_x2();
  if (!is_zero_vec(dec.T) || !dec.q.empty()) {
    auto hp = untwisted(h.context(), dec.W, with_z);
    if (!verify_sandwich(h, hp)) {
      v.consistent = false;
      v.label = "sandwich-failed";
      return v;
    }
    std::string what = with_z ? "a+m+g_2alpha" : "a+m";
    v.reduction.push_back("k0 parts dropped: orbit equals that of " + what);
  }
  v.family = with_z ? Family::b : Family::a;
  bool complex = with_z && is_complex_subspace(g, dec.W);
  v.label = family_label(v.family, g.n(), v.dim_m, complex);
  if (with_z && complex != rep.is_totally_geodesic) v.consistent = false;
  if (!with_z && !rep.is_totally_geodesic) v.consistent = false;
  return v;
}

template <class F>
ClassificationVerdict<F> match_classification(const Subalgebra<F>& h) {
  return match_classification(h, analyze_minimality(h));
}

// ---------------------------------------------------------------------------
// Family requests, as accepted by the generator

struct FamilyRequest {
  std::string family;  // "a", "b" or "twisted"
  std::string spec;
  bool with_z = true;  // twisted only
};

template <class F>
Subalgebra<F> generate_family(const AlgebraContext<F>& g, const FamilyRequest& req) {
  auto m = realize(*g, SubspaceSpec<F>::parse(req.spec));
  if (req.family == "a") return build_family_a(g, m);
  if (req.family == "b") return build_family_b(g, m);
  if (req.family == "twisted") {
    auto nz = k0_normalizer(*g, m);
    if (nz.empty()) throw ConstructionError("no element of k0 normalizes m");
    return build_twisted(g, m, nz.front(), req.with_z);
  }
  throw ParseError("unknown family '" + req.family + "'");
}

template <class F>
std::string expected_label(const Algebra<F>& g, const FamilyRequest& req) {
  auto m = realize(g, SubspaceSpec<F>::parse(req.spec));
  bool b = req.family == "b" || (req.family == "twisted" && req.with_z);
  return family_label(b ? Family::b : Family::a, g.n(), m.size(), b && is_complex_subspace(g, m));
}

/// Every recipe that the generator accepts for this n; twisted ones only when some T != 0 normalizes m.
template <class F>
std::vector<FamilyRequest> legal_requests(const Algebra<F>& g) {
  const int n = g.n();
  std::vector<FamilyRequest> out;
  auto s = [](const std::string& k, int v) { return k + ":" + std::to_string(v); };
  for (int k = 0; k < n; ++k) {
    out.push_back({"a", s("totally-real", k)});
    out.push_back({"a", s("dim", k)});
    out.push_back({"b", s("totally-real", k)});
    out.push_back({"b", s("complex", 2 * k)});
    out.push_back({"twisted", s("totally-real", k), false});
    out.push_back({"twisted", s("totally-real", k), true});
    out.push_back({"twisted", s("complex", 2 * k), true});
  }
  for (int k = 0; k <= 2 * n - 2; ++k) out.push_back({"b", s("dim", k)});
  out.push_back({"b", "hyperplane"});
  for (int j = 2; j < n; j += 2) out.push_back({"b", "constant-angle:3/5:" + std::to_string(j)});
  std::erase_if(out, [&](const FamilyRequest& r) {
    return r.family == "twisted" && k0_normalizer(g, realize(g, SubspaceSpec<F>::parse(r.spec))).empty();
  });
  return out;
}

}  // namespace chn

#endif  // CHN_CLASSIFY_HPP
