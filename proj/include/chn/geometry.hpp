#ifndef CHN_GEOMETRY_HPP
#define CHN_GEOMETRY_HPP

#include <chn/subalgebra.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace chn {

/// Zero test for mean curvature vectors: exact, or |v| <= epsilon in float mode.
template <class F>
bool negligible(const Vec<F>& v) {
  if constexpr (field_traits<F>::exact) {
    return is_zero_vec(v);
  } else {
    return std::sqrt(field_traits<F>::to_double(dot(v, v))) <= field_traits<F>::epsilon;
  }
}

template <class F>
struct TangentNormalSplit {
  OrthogonalBasis<F> tangent;  // (X1)_{a+n}, (X2)_{a+n}, W_1.. in a+n coordinates
  OrthogonalBasis<F> normal;

  Vec<F> project_tangent(const Vec<F>& v) const { return tangent.project(v, euclid); }
  Vec<F> project_normal(const Vec<F>& v) const { return normal.project(v, euclid); }

  static F euclid(const Vec<F>& a, const Vec<F>& b) { return dot(a, b); }
};

template <class F>
TangentNormalSplit<F> tangent_normal(const Subalgebra<F>& h) {
  const auto& dec = h.decomposition();
  TangentNormalSplit<F> out;
  auto add = [&](const Vec<F>& v) {
    for (const auto& t : out.tangent.vectors)
      if (!is_zero(dot(t, v))) throw std::logic_error("canonical tangent generators are not orthogonal");
    out.tangent.vectors.push_back(v);
    out.tangent.norm2.push_back(dot(v, v));
  };
  if (dec.has_x1()) add(dec.x1_an());
  if (dec.has_x2()) add(dec.x2_an());
  for (const auto& w : dec.W) add(w);
  const std::size_t N = h.algebra().layout().an_dim;
  std::vector<Vec<F>> comp = out.tangent.vectors.empty()
                                 ? std::vector<Vec<F>>{}
                                 : nullspace(Matrix<F>::from_rows(out.tangent.vectors, N));
  if (out.tangent.vectors.empty())
    for (std::size_t i = 0; i < N; ++i) comp.push_back(unit_vector<F>(N, i));
  out.normal = orthogonalize(comp);
  return out;
}

/// Second fundamental form of the orbit H.o at o, evaluated three ways.
/// Vectors are in a+n coordinates.
template <class F>
class OrbitGeometry {
 public:
  explicit OrbitGeometry(const Subalgebra<F>& h) : h_(&h), split_(tangent_normal(h)) {
    const auto& g = h.algebra();
    for (const auto& nu : split_.normal.vectors) psi_normal_.push_back(g.psi(g.from_an(nu)));
  }

  const Subalgebra<F>& subalgebra() const { return *h_; }
  const TangentNormalSplit<F>& split() const { return split_; }

  void require_tangent(const Vec<F>& v, const char* op) const {
    if (v.size() != g().layout().an_dim || !h_->an_projection().contains(v))
      throw DomainError(std::string(op) + ": vector is not tangent to the orbit");
  }

  /// Lie-theoretic formula on p: [X_k, Psi(Y)] projected to Psi(normal), pulled back by Psi.
  /// extra_lift (T coordinates, in q) perturbs the choice of X_k.
  Vec<F> sff_p(const Vec<F>& x, const Vec<F>& y, const Vec<F>* extra_lift = nullptr) const {
    require_tangent(x, "sff_p");
    require_tangent(y, "sff_p");
    Vec<F> t = h_->phi(x);
    if (extra_lift) t = t + *extra_lift;
    auto xt = g().from_parts(t, x);
    auto xk = ratio<F>(1, 2) * (xt + g().theta(xt));
    auto br = g().bracket(xk, g().psi(g().from_an(y)));
    Vec<F> out(g().layout().an_dim, F(0));
    for (std::size_t j = 0; j < psi_normal_.size(); ++j)
      axpy(out, F(g().q_theta(br, psi_normal_[j]) / split_.normal.norm2[j]), split_.normal.vectors[j]);
    return out;
  }

  /// Expanded a+n formula with T = Phi(X), then normal projection.
  Vec<F> sff_an(const Vec<F>& x, const Vec<F>& y) const {
    require_tangent(x, "sff_an");
    require_tangent(y, "sff_an");
    const auto& L = g().layout();
    const std::size_t z = L.z();
    const F& b = y[0];
    const F& xz = x[z];
    const F& yz = y[z];
    Vec<F> u = strip(x), v = strip(y);
    Vec<F> ju = g().j_matrix().apply(u), jv = g().j_matrix().apply(v);
    const F half = ratio<F>(1, 2);
    Vec<F> out = F(-b * half) * u;
    axpy(out, F(-yz * half), ju);
    axpy(out, F(-xz * half), jv);
    out = out + g().alpha_to_an(g().k0_act(h_->phi(x), g().an_to_alpha(v)));
    out[0] += dot(u, v) * half + xz * yz;
    out[z] -= b * xz + dot(jv, u) * half;
    return split_.project_normal(out);
  }

  bool koszul_applicable() const { return h_->in_an(); }

  /// Levi-Civita connection of the left-invariant metric via the six-term
  /// formula, over the orthonormal adapted basis of a+n.
  Vec<F> koszul_sff(const Vec<F>& x, const Vec<F>& y) const {
    if (!koszul_applicable()) throw DomainError("koszul_sff: subalgebra has a k0 component");
    require_tangent(x, "koszul_sff");
    require_tangent(y, "koszul_sff");
    const std::size_t N = g().layout().an_dim;
    auto br = [&](const Vec<F>& p, const Vec<F>& q) { return g().an_part(g().bracket(g().from_an(p), g().from_an(q))); };
    Vec<F> xy = br(x, y);
    Vec<F> nabla(N, F(0));
    for (std::size_t k = 0; k < N; ++k) {
      Vec<F> w = unit_vector<F>(N, k);
      nabla[k] = (xy[k] - dot(br(y, w), x) + dot(br(w, x), y)) / F(2);
    }
    return split_.project_normal(nabla);
  }

 private:
  const Algebra<F>& g() const { return h_->algebra(); }

  Vec<F> strip(Vec<F> v) const {
    v[0] = F(0);
    v[g().layout().z()] = F(0);
    return v;
  }

  const Subalgebra<F>* h_;
  TangentNormalSplit<F> split_;
  std::vector<LieVector<F>> psi_normal_;
};

template <class F>
Vec<F> sff_p(const Subalgebra<F>& h, const Vec<F>& x, const Vec<F>& y) {
  return OrbitGeometry<F>(h).sff_p(x, y);
}

template <class F>
Vec<F> sff_an(const Subalgebra<F>& h, const Vec<F>& x, const Vec<F>& y) {
  return OrbitGeometry<F>(h).sff_an(x, y);
}

template <class F>
Vec<F> koszul_sff(const Subalgebra<F>& h, const Vec<F>& x, const Vec<F>& y) {
  return OrbitGeometry<F>(h).koszul_sff(x, y);
}

/// II on the orthogonal tangent generating set.
template <class F>
struct SffTensor {
  OrthogonalBasis<F> tangent;
  std::vector<std::vector<Vec<F>>> values;

  /// II(X, Y) by bilinearity over the tangent basis.
  Vec<F> operator()(const Vec<F>& x, const Vec<F>& y) const {
    Vec<F> out(x.size(), F(0));
    for (std::size_t i = 0; i < tangent.size(); ++i) {
      F ci = dot(x, tangent.vectors[i]) / tangent.norm2[i];
      if (is_zero(ci)) continue;
      for (std::size_t j = 0; j < tangent.size(); ++j) {
        F cj = dot(y, tangent.vectors[j]) / tangent.norm2[j];
        if (!is_zero(cj)) axpy(out, F(ci * cj), values[i][j]);
      }
    }
    return out;
  }

  bool vanishes() const {
    for (const auto& row : values)
      for (const auto& v : row)
        if (!negligible(v)) return false;
    return true;
  }
};

template <class F>
SffTensor<F> sff_tensor(const OrbitGeometry<F>& geo) {
  SffTensor<F> t;
  t.tangent = geo.split().tangent;
  const std::size_t k = t.tangent.size();
  t.values.assign(k, std::vector<Vec<F>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t.values[i][j] = geo.sff_an(t.tangent.vectors[i], t.tangent.vectors[j]);
  return t;
}

/// Un-normalized trace sum_i II(X_i, X_i)/|X_i|^2.
template <class F>
Vec<F> mean_curvature(const SffTensor<F>& t, std::size_t an_dim) {
  Vec<F> h(an_dim, F(0));
  for (std::size_t i = 0; i < t.tangent.size(); ++i) axpy(h, F(F(1) / t.tangent.norm2[i]), t.values[i][i]);
  return h;
}

template <class F>
Vec<F> mean_curvature(const Subalgebra<F>& h) {
  return mean_curvature(sff_tensor(OrbitGeometry<F>(h)), h.algebra().layout().an_dim);
}

template <class F>
struct MinimalityReport {
  Vec<F> mean_curvature;
  bool degenerate = false;  // zero-dimensional orbit
  bool is_minimal = false;
  bool is_totally_geodesic = false;
  bool symmetric = true;
  bool normal_valued = true;
  bool p_agrees = true;  // sff_p == sff_an on all tangent pairs
  bool lift_independent = true;
  bool koszul_applicable = false;
  bool koszul_agrees = true;
  std::size_t pairs_checked = 0;
};

/// II on all generator pairs with every cross-check.
template <class F>
MinimalityReport<F> analyze_minimality(const Subalgebra<F>& h) {
  OrbitGeometry<F> geo(h);
  auto t = sff_tensor(geo);
  MinimalityReport<F> r;
  const std::size_t N = h.algebra().layout().an_dim;
  r.mean_curvature = mean_curvature(t, N);
  r.degenerate = t.tangent.size() == 0;
  r.is_minimal = negligible(r.mean_curvature);
  r.is_totally_geodesic = t.vanishes();
  r.koszul_applicable = geo.koszul_applicable();
  const auto& q = h.decomposition().q;
  auto same = [](const Vec<F>& a, const Vec<F>& b) { return negligible(Vec<F>(a - b)); };
  for (std::size_t i = 0; i < t.tangent.size(); ++i)
    for (std::size_t j = 0; j < t.tangent.size(); ++j) {
      const auto& xi = t.tangent.vectors[i];
      const auto& xj = t.tangent.vectors[j];
      const auto& v = t.values[i][j];
      ++r.pairs_checked;
      r.symmetric = r.symmetric && same(v, t.values[j][i]);
      for (const auto& w : t.tangent.vectors) r.normal_valued = r.normal_valued && negligible(Vec<F>{dot(v, w)});
      r.p_agrees = r.p_agrees && same(v, geo.sff_p(xi, xj));
      for (const auto& qq : q) r.lift_independent = r.lift_independent && same(v, geo.sff_p(xi, xj, &qq));
      if (r.koszul_applicable) r.koszul_agrees = r.koszul_agrees && same(v, geo.koszul_sff(xi, xj));
    }
  return r;
}

template <class F>
bool is_minimal(const Subalgebra<F>& h) {
  return negligible(mean_curvature(h));
}

template <class F>
bool is_totally_geodesic(const Subalgebra<F>& h) {
  return sff_tensor(OrbitGeometry<F>(h)).vanishes();
}

// ---------------------------------------------------------------------------
// Kaehler angles

enum class KaehlerType { totally_real, complex, constant_angle, mixed };

inline const char* to_string(KaehlerType t) {
  switch (t) {
    case KaehlerType::totally_real: return "totally-real";
    case KaehlerType::complex: return "complex";
    case KaehlerType::constant_angle: return "constant-angle";
    case KaehlerType::mixed: return "mixed";
  }
  return "?";
}

template <class F>
struct KaehlerAngles {
  KaehlerType type = KaehlerType::complex;
  bool totally_real = true;
  bool complex = true;
  std::optional<F> cos2;       // common value of cos^2 when the angle is constant
  std::vector<double> angles;  // radians, ascending, one per dimension of m
};

/// Kaehler angles of m in g_alpha (a+n coordinates), from the compression
/// K = P_m J|_m; -K^2 has eigenvalues cos^2 of the angles.
template <class F>
KaehlerAngles<F> kaehler_angles(const Algebra<F>& g, const std::vector<Vec<F>>& m) {
  const auto& L = g.layout();
  for (const auto& v : m)
    if (v.size() != L.an_dim || !is_zero(v[0]) || !is_zero(v[L.z()]))
      throw DomainError("kaehler_angles: subspace is not contained in g_alpha");
  auto w = orthogonalize(m);
  const std::size_t k = w.size();
  const auto& J = g.j_matrix();
  KaehlerAngles<F> out;
  Matrix<F> K(k, k);
  std::vector<Vec<F>> jw;
  for (const auto& v : w.vectors) jw.push_back(J.apply(v));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) K(i, j) = dot(jw[j], w.vectors[i]) / w.norm2[i];
  out.totally_real = K.is_zero_matrix();
  auto span = Subspace<F>::span(L.an_dim, w.vectors);
  for (const auto& v : jw) out.complex = out.complex && span.contains(v);
  Matrix<F> c2 = F(-1) * (K * K);
  if (k > 0) {
    F c = c2(0, 0);
    if ((c2 - c * Matrix<F>::identity(k)).is_zero_matrix()) out.cos2 = c;
  } else {
    out.cos2 = F(1);
  }
  if (out.complex)
    out.type = KaehlerType::complex;
  else if (out.totally_real)
    out.type = KaehlerType::totally_real;
  else if (out.cos2)
    out.type = KaehlerType::constant_angle;
  else
    out.type = KaehlerType::mixed;

  // Float angles from the symmetric form of -K^2 in an orthonormal basis.
  Eigen::MatrixXd A(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double ni = std::sqrt(field_traits<F>::to_double(w.norm2[i]));
      double nj = std::sqrt(field_traits<F>::to_double(w.norm2[j]));
      A(i, j) = field_traits<F>::to_double(dot(jw[j], w.vectors[i])) / (ni * nj);
    }
  Eigen::MatrixXd S = -(A * A);
  if (k > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      double c = std::sqrt(std::clamp(es.eigenvalues()(i), 0.0, 1.0));
      out.angles.push_back(std::acos(c));
    }
    std::sort(out.angles.begin(), out.angles.end());
  }
  return out;
}

}  // namespace chn

#endif  // CHN_GEOMETRY_HPP
