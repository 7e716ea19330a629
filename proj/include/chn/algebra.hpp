#ifndef CHN_ALGEBRA_HPP
#define CHN_ALGEBRA_HPP

#include <chn/complex_matrix.hpp>
#include <chn/field.hpp>
#include <chn/linalg.hpp>

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chn {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An argument lies outside the subspace an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element of g = su(1,n) in coordinates over the fixed ambient basis.
template <class F>
struct LieVector {
  int n = 0;
  Vec<F> coeffs;

  static LieVector zero(int n) { return {n, Vec<F>(static_cast<std::size_t>((n + 1) * (n + 1) - 1), F(0))}; }

  bool is_zero() const { return is_zero_vec(coeffs); }

  friend LieVector operator+(LieVector a, const LieVector& b) {
    check_same(a, b);
    a.coeffs = std::move(a.coeffs) + b.coeffs;
    return a;
  }
  friend LieVector operator-(LieVector a, const LieVector& b) {
    check_same(a, b);
    a.coeffs = std::move(a.coeffs) - b.coeffs;
    return a;
  }
  friend LieVector operator-(LieVector a) {
    a.coeffs = -std::move(a.coeffs);
    return a;
  }
  friend LieVector operator*(const F& s, LieVector a) {
    a.coeffs = s * std::move(a.coeffs);
    return a;
  }
  friend bool operator==(const LieVector& a, const LieVector& b) { return a.n == b.n && vec_equal(a.coeffs, b.coeffs); }

  static void check_same(const LieVector& a, const LieVector& b) {
    if (a.n != b.n || a.coeffs.size() != b.coeffs.size())
      throw ContextError("Lie vectors from different algebras (n=" + std::to_string(a.n) + " vs n=" +
                         std::to_string(b.n) + ")");
  }
};

/// Bases of the restricted root spaces and the distinguished vectors.
template <class F>
struct RootDecomposition {
  std::vector<LieVector<F>> k0;  // labeled T1..T_{(n-1)^2}
  std::vector<LieVector<F>> a;
  std::vector<LieVector<F>> g_alpha;  // raw eigenspace basis, RREF order
  std::vector<LieVector<F>> g_2alpha;
  std::vector<LieVector<F>> g_minus_alpha;
  std::vector<LieVector<F>> g_minus_2alpha;
  std::vector<LieVector<F>> k;
  std::vector<LieVector<F>> p;
  LieVector<F> B;
  LieVector<F> Z;
  std::vector<LieVector<F>> E;   // adapted orthonormal basis of g_alpha ...
  std::vector<LieVector<F>> JE;  // ... paired with F_i = J E_i
};

template <class F>
struct MetricContext {
  int n = 0;
  Matrix<F> killing;  // trace(ad X_i ad X_j) over the ambient basis
  F kappa{0};         // Killing(B, B)
  Matrix<F> q_theta;  // Gram matrix of Q_theta, scaled so Q_theta(B,B) = 1
};

/// Positions of the adapted basis
///   T_1..T_K | B E_1..E_{n-1} F_1..F_{n-1} Z | thetaE_1.. thetaF_1.. thetaZ
/// Within the a+n block ("an coordinates") B is 0, E_i is i, F_i is n-1+i, Z is 2n-1.
struct AdaptedLayout {
  int n = 0;
  std::size_t k0_dim = 0;
  std::size_t alpha_dim = 0;
  std::size_t an_dim = 0;
  std::size_t total = 0;

  explicit AdaptedLayout(int n_ = 0)
      : n(n_),
        k0_dim(static_cast<std::size_t>((n_ - 1) * (n_ - 1))),
        alpha_dim(static_cast<std::size_t>(2 * (n_ - 1))),
        an_dim(static_cast<std::size_t>(2 * n_)),
        total(static_cast<std::size_t>((n_ + 1) * (n_ + 1) - 1)) {}

  std::size_t an_begin() const { return k0_dim; }
  std::size_t neg_begin() const { return k0_dim + an_dim; }
  // indices inside an coordinates
  static constexpr std::size_t b() { return 0; }
  std::size_t e(std::size_t i) const { return 1 + i; }
  std::size_t f(std::size_t i) const { return static_cast<std::size_t>(n) + i; }
  std::size_t z() const { return an_dim - 1; }
};

template <class F>
class Algebra;

template <class F>
using AlgebraContext = std::shared_ptr<const Algebra<F>>;

/// The matrix model of su(1,n) with Hermitian form diag(-1,1,...,1),
/// together with everything derived from it: Killing form, Cartan
/// involution, restricted root spaces, the metric on a+n and J.
template <class F>
class Algebra {
 public:
  static AlgebraContext<F> build(int n) {
    if (n < 2) throw DimensionError("complex hyperbolic space needs n >= 2, got " + std::to_string(n));
    auto alg = std::shared_ptr<Algebra>(new Algebra(n));
    alg->construct();
    return alg;
  }

  /// Same algebra, but every bracket afterwards has its g_2alpha component negated.
  /// A deliberately broken build for checking that the self-check suites notice.
  static AlgebraContext<F> build_sign_flipped(int n) {
    if (n < 2) throw DimensionError("complex hyperbolic space needs n >= 2, got " + std::to_string(n));
    auto alg = std::shared_ptr<Algebra>(new Algebra(n));
    alg->construct();
    alg->flip_z_ = true;
    return alg;
  }

  int n() const { return n_; }
  std::size_t dim() const { return dim_; }
  const AdaptedLayout& layout() const { return layout_; }
  const MetricContext<F>& metric_context() const { return metric_; }
  const RootDecomposition<F>& roots() const { return roots_; }

  // -- matrix model ---------------------------------------------------------

  const CMatrix<F>& ambient_matrix(std::size_t i) const { return basis_[i]; }

  LieVector<F> ambient_vector(std::size_t i) const {
    auto v = LieVector<F>::zero(n_);
    v.coeffs[i] = F(1);
    return v;
  }

  CMatrix<F> to_matrix(const LieVector<F>& x) const {
    check(x);
    CMatrix<F> m(static_cast<std::size_t>(n_ + 1));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x.coeffs[i])) continue;
      for (const auto& [r, c, val] : sparse_basis_[i]) m(r, c) += x.coeffs[i] * val;
    }
    return m;
  }

  /// Membership in su(1,n): X^dagger I + I X = 0 and trace X = 0.
  static bool in_su1n(const CMatrix<F>& m) {
    const std::size_t N = m.size();
    CMatrix<F> I(N);
    I(0, 0) = {F(-1), F(0)};
    for (std::size_t i = 1; i < N; ++i) I(i, i) = {F(1), F(0)};
    return (m.adjoint() * I + I * m).is_zero() && m.trace().is_zero();
  }

  LieVector<F> from_matrix(const CMatrix<F>& m) const {
    if (m.size() != static_cast<std::size_t>(n_ + 1))
      throw ContextError("matrix of size " + std::to_string(m.size()) + " in an algebra with n=" + std::to_string(n_));
    auto x = LieVector<F>::zero(n_);
    F acc = m(0, 0).im;
    x.coeffs[0] = acc;
    for (int k = 1; k < n_; ++k) {
      acc += m(k, k).im;
      x.coeffs[k] = acc;
    }
    std::size_t idx = static_cast<std::size_t>(n_);
    for (int j = 1; j <= n_; ++j)
      for (int k = j + 1; k <= n_; ++k) {
        x.coeffs[idx++] = m(j, k).re;
        x.coeffs[idx++] = m(j, k).im;
      }
    for (int j = 1; j <= n_; ++j) {
      x.coeffs[idx++] = m(j, 0).re;
      x.coeffs[idx++] = m(j, 0).im;
    }
    if (!(to_matrix(x) == m)) throw DomainError("matrix is not in su(1," + std::to_string(n_) + ")");
    return x;
  }

  // -- Lie structure --------------------------------------------------------

  LieVector<F> bracket(const LieVector<F>& x, const LieVector<F>& y) const {
    check(x);
    check(y);
    auto out = from_matrix(commutator(to_matrix(x), to_matrix(y)));
    if (flip_z_) {
      auto c = adapted(out);
      c[layout_.an_begin() + layout_.z()] = -c[layout_.an_begin() + layout_.z()];
      out = from_adapted(c);
    }
    return out;
  }

  /// theta(X) = -X^dagger.
  LieVector<F> theta(const LieVector<F>& x) const {
    check(x);
    LieVector<F> out = x;
    for (std::size_t i = 0; i < dim_; ++i)
      if (!theta_fixes_[i]) out.coeffs[i] = -out.coeffs[i];
    return out;
  }

  F killing(const LieVector<F>& x, const LieVector<F>& y) const { return gram(metric_.killing, x, y); }
  F q_theta(const LieVector<F>& x, const LieVector<F>& y) const { return gram(metric_.q_theta, x, y); }

  /// The left-invariant inner product on a+n.
  F metric(const LieVector<F>& x, const LieVector<F>& y) const {
    require_an(x, "metric");
    require_an(y, "metric");
    return dot(an_part(x), an_part(y));
  }

  /// J on a+n: JB = Z, JZ = -B, and on g_alpha the vector with <JU,V> = Z-coefficient of [U,V].
  LieVector<F> complex_structure(const LieVector<F>& x) const {
    require_an(x, "complex_structure");
    return from_an(j_matrix_.apply(an_part(x)));
  }

  /// Psi = (1 - theta)/2 restricted to a+n; an isometry onto (p, Q_theta).
  LieVector<F> psi(const LieVector<F>& x) const {
    require_an(x, "psi");
    return ratio<F>(1, 2) * (x - theta(x));
  }

  LieVector<F> psi_inverse(const LieVector<F>& p) const {
    if (!(theta(p) == -p)) throw DomainError("psi_inverse: argument is not in p");
    Vec<F> c = adapted(p);
    Vec<F> an(layout_.an_dim, F(0));
    an[0] = c[layout_.an_begin()];
    for (std::size_t i = 1; i < layout_.an_dim; ++i) an[i] = F(2) * c[layout_.an_begin() + i];
    return from_an(an);
  }

  // -- adapted coordinates --------------------------------------------------

  Vec<F> adapted(const LieVector<F>& x) const {
    check(x);
    return adapted_from_ambient_.apply(x.coeffs);
  }

  LieVector<F> from_adapted(const Vec<F>& c) const {
    LieVector<F> x{n_, ambient_from_adapted_.apply(c)};
    return x;
  }

  Vec<F> an_part(const LieVector<F>& x) const {
    Vec<F> c = adapted(x);
    return Vec<F>(c.begin() + static_cast<long>(layout_.an_begin()),
                  c.begin() + static_cast<long>(layout_.neg_begin()));
  }

  Vec<F> k0_part(const LieVector<F>& x) const {
    Vec<F> c = adapted(x);
    return Vec<F>(c.begin(), c.begin() + static_cast<long>(layout_.k0_dim));
  }

  LieVector<F> from_parts(const Vec<F>& k0, const Vec<F>& an) const {
    Vec<F> c(layout_.total, F(0));
    for (std::size_t i = 0; i < k0.size(); ++i) c[i] = k0[i];
    for (std::size_t i = 0; i < an.size(); ++i) c[layout_.an_begin() + i] = an[i];
    return from_adapted(c);
  }

  LieVector<F> from_an(const Vec<F>& an) const { return from_parts(Vec<F>(layout_.k0_dim, F(0)), an); }
  LieVector<F> from_k0(const Vec<F>& k0) const { return from_parts(k0, Vec<F>(layout_.an_dim, F(0))); }

  /// a+n coordinates of a g_alpha vector given in alpha coordinates.
  Vec<F> alpha_to_an(const Vec<F>& alpha) const {
    Vec<F> an(layout_.an_dim, F(0));
    for (std::size_t i = 0; i < alpha.size(); ++i) an[1 + i] = alpha[i];
    return an;
  }

  Vec<F> an_to_alpha(const Vec<F>& an) const { return Vec<F>(an.begin() + 1, an.end() - 1); }

  bool in_an(const LieVector<F>& x) const {
    Vec<F> c = adapted(x);
    for (std::size_t i = 0; i < layout_.total; ++i) {
      bool inside = i >= layout_.an_begin() && i < layout_.neg_begin();
      if (!inside && !is_zero(c[i])) return false;
    }
    return true;
  }

  /// x in k0 + a + n (zero components in g_{-alpha}, g_{-2alpha}).
  bool in_parabolic(const LieVector<F>& x) const {
    Vec<F> c = adapted(x);
    for (std::size_t i = layout_.neg_begin(); i < layout_.total; ++i)
      if (!is_zero(c[i])) return false;
    return true;
  }

  void require_an(const LieVector<F>& x, const char* op) const {
    if (!in_an(x)) throw DomainError(std::string(op) + ": argument is not in a+n");
  }

  // -- derived structure in adapted coordinates ----------------------------

  /// J as a matrix on a+n coordinates.
  const Matrix<F>& j_matrix() const { return j_matrix_; }

  /// Q_theta restricted to k0, in T coordinates.
  const Matrix<F>& k0_gram() const { return k0_gram_; }

  F k0_inner(const Vec<F>& s, const Vec<F>& t) const { return dot(s, k0_gram_.apply(t)); }

  /// [T, V] for T in k0 (T coordinates) and V in g_alpha (alpha coordinates).
  Vec<F> k0_act(const Vec<F>& t, const Vec<F>& v) const {
    Vec<F> out(layout_.alpha_dim, F(0));
    for (std::size_t k = 0; k < t.size(); ++k)
      if (!is_zero(t[k])) axpy(out, t[k], k0_action_[k].apply(v));
    return out;
  }

  const Matrix<F>& k0_action(std::size_t k) const { return k0_action_[k]; }

  // -- labels ---------------------------------------------------------------

  /// "B", "Z", "E<i>", "F<i>", "T<i>" (1-based), as adapted coordinate positions.
  std::optional<std::size_t> label_position(const std::string& label) const {
    if (label == "B") return layout_.an_begin();
    if (label == "Z") return layout_.an_begin() + layout_.z();
    if (label.size() < 2) return std::nullopt;
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(label.substr(1), &used);
      if (used != label.size() - 1 || label[1] == '+' || label[1] == '-') return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (idx == 0) return std::nullopt;
    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    switch (label[0]) {
      case 'E':
        if (idx <= m) return layout_.an_begin() + layout_.e(idx - 1);
        break;
      case 'F':
        if (idx <= m) return layout_.an_begin() + layout_.f(idx - 1);
        break;
      case 'T':
        if (idx <= layout_.k0_dim) return idx - 1;
        break;
      default:
        break;
    }
    return std::nullopt;
  }

  std::string label(std::size_t adapted_position) const {
    const auto& L = layout_;
    if (adapted_position < L.k0_dim) return "T" + std::to_string(adapted_position + 1);
    if (adapted_position < L.neg_begin()) {
      std::size_t i = adapted_position - L.an_begin();
      if (i == 0) return "B";
      if (i == L.z()) return "Z";
      if (i < static_cast<std::size_t>(n_)) return "E" + std::to_string(i);
      return "F" + std::to_string(i - static_cast<std::size_t>(n_) + 1);
    }
    std::size_t i = adapted_position - L.neg_begin();
    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    if (i < m) return "thetaE" + std::to_string(i + 1);
    if (i < 2 * m) return "thetaF" + std::to_string(i - m + 1);
    return "thetaZ";
  }

  std::vector<std::string> an_labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < layout_.an_dim; ++i) out.push_back(label(layout_.an_begin() + i));
    return out;
  }

  LieVector<F> labeled(const std::string& name) const {
    auto pos = label_position(name);
    if (!pos) throw ParseError("unknown basis label '" + name + "' for n=" + std::to_string(n_));
    return adapted_basis_[*pos];
  }

  const std::vector<LieVector<F>>& adapted_basis() const { return adapted_basis_; }

  /// Restricted root value lambda(B) of each adapted basis position (0 for k0 and a).
  F grade(std::size_t adapted_position) const {
    const auto& L = layout_;
    if (adapted_position < L.an_begin()) return F(0);
    if (adapted_position < L.neg_begin()) {
      std::size_t i = adapted_position - L.an_begin();
      if (i == 0) return F(0);
      return i == L.z() ? F(1) : ratio<F>(1, 2);
    }
    return adapted_position + 1 == L.total ? F(-1) : ratio<F>(-1, 2);
  }

 private:
  explicit Algebra(int n) : n_(n), dim_(static_cast<std::size_t>((n + 1) * (n + 1) - 1)), layout_(n) {}

  struct Entry {
    std::size_t r;
    std::size_t c;
    Complex<F> val;
  };

  void check(const LieVector<F>& x) const {
    if (x.n != n_ || x.coeffs.size() != dim_)
      throw ContextError("Lie vector for n=" + std::to_string(x.n) + " used with algebra n=" + std::to_string(n_));
  }

  static F gram(const Matrix<F>& g, const LieVector<F>& x, const LieVector<F>& y) {
    return dot(x.coeffs, g.apply(y.coeffs));
  }

  void add_basis(std::vector<Entry> entries, bool in_k) {
    CMatrix<F> m(static_cast<std::size_t>(n_ + 1));
    for (const auto& e : entries) m(e.r, e.c) = e.val;
    basis_.push_back(m);
    sparse_basis_.push_back(std::move(entries));
    theta_fixes_.push_back(in_k);
  }

  void build_ambient_basis() {
    const Complex<F> one{F(1), F(0)}, i{F(0), F(1)};
    const std::size_t N = static_cast<std::size_t>(n_);
    for (std::size_t j = 1; j <= N; ++j) add_basis({{j - 1, j - 1, i}, {j, j, -i}}, true);
    for (std::size_t j = 1; j <= N; ++j)
      for (std::size_t k = j + 1; k <= N; ++k) {
        add_basis({{j, k, one}, {k, j, -one}}, true);
        add_basis({{j, k, i}, {k, j, i}}, true);
      }
    for (std::size_t j = 1; j <= N; ++j) {
      add_basis({{0, j, one}, {j, 0, one}}, false);
      add_basis({{j, 0, i}, {0, j, -i}}, false);
    }
  }

  void construct() {
    build_ambient_basis();

    // Structure constants, ad matrices and the Killing form trace(ad X ad Y).
    std::vector<std::vector<Vec<F>>> sc(dim_, std::vector<Vec<F>>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      sc[i][i] = Vec<F>(dim_, F(0));
      for (std::size_t j = i + 1; j < dim_; ++j) {
        sc[i][j] = from_matrix(commutator(basis_[i], basis_[j])).coeffs;
        sc[j][i] = -sc[i][j];
      }
    }
    metric_.n = n_;
    metric_.killing = Matrix<F>(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j) {
        // sum_c sum_r ad_i(r, c) ad_j(c, r) with ad_i(r, c) = sc[i][c][r]
        F t(0);
        for (std::size_t c = 0; c < dim_; ++c) {
          const auto& col = sc[i][c];
          for (std::size_t r = 0; r < dim_; ++r) {
            if (is_zero(col[r])) continue;
            const F& other = sc[j][r][c];
            if (!is_zero(other)) t += col[r] * other;
          }
        }
        metric_.killing(i, j) = t;
        metric_.killing(j, i) = t;
      }

    // Q_theta up to scale: -Killing(theta X, Y).
    Matrix<F> qraw(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        qraw(i, j) = theta_fixes_[i] ? F(-metric_.killing(i, j)) : F(metric_.killing(i, j));

    // a = R A0 with A0 the first p basis element. ad(A0) has minimal
    // polynomial x(x^2 - mu^2)(x^2 - 4 mu^2); mu = alpha(A0).
    const std::size_t a0_index = dim_ - 2 * static_cast<std::size_t>(n_);
    Matrix<F> ad_a0(dim_, dim_);
    for (std::size_t c = 0; c < dim_; ++c)
      for (std::size_t r = 0; r < dim_; ++r) ad_a0(r, c) = sc[a0_index][c][r];
    F mu = restricted_root_scale(ad_a0);
    F to_b = F(1) / (F(2) * mu);
    LieVector<F> B = to_b * ambient_vector(a0_index);
    Matrix<F> ad_b = to_b * ad_a0;

    F qbb = dot(B.coeffs, qraw.apply(B.coeffs));
    metric_.kappa = dot(B.coeffs, metric_.killing.apply(B.coeffs));
    metric_.q_theta = (F(1) / qbb) * qraw;

    auto eigenspace = [&](const F& lambda) {
      Matrix<F> m = ad_b - lambda * Matrix<F>::identity(dim_);
      std::vector<LieVector<F>> out;
      for (auto& v : nullspace(m)) out.push_back({n_, std::move(v)});
      return out;
    };
    roots_.B = B;
    roots_.a = {B};
    roots_.g_alpha = eigenspace(ratio<F>(1, 2));
    roots_.g_2alpha = eigenspace(F(1));
    roots_.g_minus_alpha = eigenspace(ratio<F>(-1, 2));
    roots_.g_minus_2alpha = eigenspace(F(-1));

    Matrix<F> theta_minus_id(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) theta_minus_id(i, i) = theta_fixes_[i] ? F(0) : F(-2);
    for (auto& v : nullspace(ad_b.vstack(theta_minus_id))) roots_.k0.push_back({n_, std::move(v)});

    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    if (roots_.g_alpha.size() != 2 * m || roots_.g_2alpha.size() != 1 || roots_.k0.size() != m * m ||
        roots_.g_minus_alpha.size() != 2 * m || roots_.g_minus_2alpha.size() != 1)
      throw std::logic_error("restricted root space dimensions do not match su(1,n)");

    // Unit Z spanning g_2alpha.
    const auto& z0 = roots_.g_2alpha.front();
    roots_.Z = F(1) / exact_sqrt(F(q_theta(z0, z0) / F(2)), "|Z|") * z0;

    // J on g_alpha from <JU, V> = <[U, V], Z> for V in g_alpha.
    const auto& ga = roots_.g_alpha;
    Matrix<F> gram_alpha(ga.size(), ga.size());
    for (std::size_t i = 0; i < ga.size(); ++i)
      for (std::size_t j = 0; j < ga.size(); ++j) gram_alpha(i, j) = q_theta(ga[i], ga[j]) / F(2);
    auto gram_alpha_inv = inverse(gram_alpha);
    if (!gram_alpha_inv) throw std::logic_error("metric on g_alpha is degenerate");
    auto j_alpha = [&](const LieVector<F>& u) {
      Vec<F> rhs(ga.size());
      for (std::size_t l = 0; l < ga.size(); ++l) rhs[l] = q_theta(bracket(u, ga[l]), roots_.Z) / F(2);
      Vec<F> y = gram_alpha_inv->apply(rhs);
      auto out = LieVector<F>::zero(n_);
      for (std::size_t k = 0; k < ga.size(); ++k) out = out + y[k] * ga[k];
      return out;
    };
    auto inner_n = [&](const LieVector<F>& x, const LieVector<F>& y) { return q_theta(x, y) / F(2); };

    // Adapted orthonormal basis E_i, F_i = J E_i.
    for (const auto& v : ga) {
      LieVector<F> w = v;
      for (std::size_t i = 0; i < roots_.E.size(); ++i) {
        w = w - inner_n(v, roots_.E[i]) * roots_.E[i];
        w = w - inner_n(v, roots_.JE[i]) * roots_.JE[i];
      }
      if (w.is_zero()) continue;
      LieVector<F> e = F(1) / exact_sqrt(inner_n(w, w), "|E|") * w;
      roots_.JE.push_back(j_alpha(e));
      roots_.E.push_back(std::move(e));
    }
    if (roots_.E.size() != m) throw std::logic_error("J does not pair g_alpha into complex lines");

    // Adapted basis and its inverse change of coordinates.
    adapted_basis_ = roots_.k0;
    adapted_basis_.push_back(B);
    for (const auto& e : roots_.E) adapted_basis_.push_back(e);
    for (const auto& f : roots_.JE) adapted_basis_.push_back(f);
    adapted_basis_.push_back(roots_.Z);
    for (const auto& e : roots_.E) adapted_basis_.push_back(theta(e));
    for (const auto& f : roots_.JE) adapted_basis_.push_back(theta(f));
    adapted_basis_.push_back(theta(roots_.Z));
    std::vector<Vec<F>> cols;
    for (const auto& v : adapted_basis_) cols.push_back(v.coeffs);
    ambient_from_adapted_ = Matrix<F>::from_columns(cols, dim_);
    auto inv = inverse(ambient_from_adapted_);
    if (!inv) throw std::logic_error("adapted basis is not a basis of g");
    adapted_from_ambient_ = *inv;

    for (const auto& t : roots_.k0) roots_.k.push_back(t);
    roots_.p.push_back(B);
    for (std::size_t i = 0; i < m; ++i) {
      roots_.k.push_back(roots_.E[i] + theta(roots_.E[i]));
      roots_.p.push_back(roots_.E[i] - theta(roots_.E[i]));
    }
    for (std::size_t i = 0; i < m; ++i) {
      roots_.k.push_back(roots_.JE[i] + theta(roots_.JE[i]));
      roots_.p.push_back(roots_.JE[i] - theta(roots_.JE[i]));
    }
    roots_.k.push_back(roots_.Z + theta(roots_.Z));
    roots_.p.push_back(roots_.Z - theta(roots_.Z));

    // J on a+n coordinates: JB = Z, JZ = -B, J on g_alpha as solved above.
    j_matrix_ = Matrix<F>(layout_.an_dim, layout_.an_dim);
    j_matrix_(layout_.z(), 0) = F(1);
    j_matrix_(0, layout_.z()) = F(-1);
    for (std::size_t i = 0; i < 2 * m; ++i) {
      const auto& u = adapted_basis_[layout_.an_begin() + 1 + i];
      Vec<F> ju = adapted(j_alpha(u));
      for (std::size_t r = 0; r < layout_.an_dim; ++r) j_matrix_(r, 1 + i) = ju[layout_.an_begin() + r];
    }

    k0_gram_ = Matrix<F>(layout_.k0_dim, layout_.k0_dim);
    for (std::size_t i = 0; i < layout_.k0_dim; ++i)
      for (std::size_t j = 0; j < layout_.k0_dim; ++j) k0_gram_(i, j) = q_theta(roots_.k0[i], roots_.k0[j]);

    for (std::size_t k = 0; k < layout_.k0_dim; ++k) {
      Matrix<F> act(2 * m, 2 * m);
      for (std::size_t i = 0; i < 2 * m; ++i) {
        Vec<F> c = adapted(bracket(roots_.k0[k], adapted_basis_[layout_.an_begin() + 1 + i]));
        for (std::size_t r = 0; r < layout_.total; ++r) {
          bool in_alpha = r > layout_.an_begin() && r < layout_.an_begin() + layout_.z();
          if (in_alpha)
            act(r - layout_.an_begin() - 1, i) = c[r];
          else if (!is_zero(c[r]))
            throw std::logic_error("k0 does not normalize g_alpha");
        }
      }
      k0_action_.push_back(std::move(act));
    }
  }

  static F exact_sqrt(const F& x, const char* what) {
    auto r = field_traits<F>::sqrt(x);
    if (!r) throw std::logic_error(std::string("normalization of ") + what + " is not representable: " + format(x));
    return *r;
  }

  // Reads mu off the minimal polynomial x^5 - 5 mu^2 x^3 + 4 mu^4 x of ad(A0).
  static F restricted_root_scale(const Matrix<F>& ad) {
    std::vector<Vec<F>> powers;
    Matrix<F> p = Matrix<F>::identity(ad.rows());
    for (int k = 0; k <= 6; ++k) {
      Vec<F> flat(p.data().begin(), p.data().end());
      if (!powers.empty()) {
        auto coeffs = solve(Matrix<F>::from_columns(powers, flat.size()), flat);
        if (coeffs) {
          // p = sum_j coeffs[j] ad^j
          if (k != 5 || !is_zero((*coeffs)[0]) || !is_zero((*coeffs)[2]) || !is_zero((*coeffs)[4]))
            throw std::logic_error("ad(A0) does not have the rank-one root structure 0, +-mu, +-2mu");
          F mu2 = (*coeffs)[3] / F(5);
          if (!is_zero(F((*coeffs)[1] + F(4) * mu2 * mu2)))
            throw std::logic_error("ad(A0) eigenvalues are not in ratio 1:2");
          return exact_sqrt(mu2, "alpha(A0)");
        }
      }
      powers.push_back(std::move(flat));
      p = p * ad;
    }
    throw std::logic_error("minimal polynomial of ad(A0) has degree above 6");
  }

  int n_;
  bool flip_z_ = false;
  std::size_t dim_;
  AdaptedLayout layout_;
  std::vector<CMatrix<F>> basis_;
  std::vector<std::vector<Entry>> sparse_basis_;
  std::vector<bool> theta_fixes_;
  MetricContext<F> metric_;
  RootDecomposition<F> roots_;
  std::vector<LieVector<F>> adapted_basis_;
  Matrix<F> ambient_from_adapted_;
  Matrix<F> adapted_from_ambient_;
  Matrix<F> j_matrix_;
  Matrix<F> k0_gram_;
  std::vector<Matrix<F>> k0_action_;
};

template <class F = Rational>
AlgebraContext<F> build_algebra(int n) {
  return Algebra<F>::build(n);
}

/// "1/2 E1 - T2 + Z" style rendering over the adapted labels.
template <class F>
std::string describe(const Algebra<F>& g, const LieVector<F>& x) {
  Vec<F> c = g.adapted(x);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_zero(c[i])) continue;
    std::string coeff = format(c[i]);
    bool negative = sign(c[i]) < 0;
    if (negative) coeff = format(F(-c[i]));
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (coeff != "1") out += coeff + " ";
    out += g.label(i);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Identity suites

struct IdentityCheck {
  std::string name;
  bool passed = true;
  std::size_t evaluated = 0;
  std::string witness{};  // first failing instance
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const IdentityCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline void record(IdentityCheck& c, bool ok, const std::string& where) {
  ++c.evaluated;
  if (!ok && c.passed) {
    c.passed = false;
    c.witness = where;
  }
}

template <class F>
std::vector<std::pair<std::string, LieVector<F>>> alpha_basis_labeled(const Algebra<F>& g) {
  std::vector<std::pair<std::string, LieVector<F>>> out;
  const auto& L = g.layout();
  for (std::size_t i = 0; i < L.alpha_dim; ++i) {
    std::size_t pos = L.an_begin() + 1 + i;
    out.emplace_back(g.label(pos), g.adapted_basis()[pos]);
  }
  return out;
}

}  // namespace detail

/// The five theta-bracket identities, checked exactly on the adapted basis.
template <class F>
IdentityReport verify_lemma21(const Algebra<F>& g) {
  const auto& B = g.roots().B;
  const auto& Z = g.roots().Z;
  const auto tZ = g.theta(Z);
  const auto half = ratio<F>(1, 2);
  const auto alpha = detail::alpha_basis_labeled(g);
  IdentityCheck a{"(a) [thetaU,B] = 1/2 thetaU"}, b{"(b) [thetaZ,B] = thetaZ"},
      c{"(c) [thetaU,V] = <U,V>B mod k0"}, d{"(d) [thetaU,Z] = -JU"}, e{"(e) [thetaZ,Z] = 2B"};
  for (const auto& [lu, u] : alpha) {
    const auto tu = g.theta(u);
    detail::record(a, (g.bracket(tu, B) - half * tu).is_zero(), "U=" + lu);
    detail::record(d, (g.bracket(tu, Z) + g.complex_structure(u)).is_zero(), "U=" + lu);
    for (const auto& [lv, v] : alpha) {
      auto residual = g.bracket(tu, v) - g.metric(u, v) * B;
      Vec<F> rc = g.adapted(residual);
      bool in_k0 = is_zero_vec(std::span<const F>(rc).subspan(g.layout().k0_dim));
      detail::record(c, in_k0, "U=" + lu + ", V=" + lv);
    }
  }
  detail::record(b, (g.bracket(tZ, B) - tZ).is_zero(), "thetaZ");
  detail::record(e, (g.bracket(tZ, Z) - F(2) * B).is_zero(), "thetaZ");
  return {{a, b, c, d, e}};
}

/// Bracket relations of a+n on the adapted basis.
template <class F>
IdentityReport verify_an_brackets(const Algebra<F>& g) {
  const auto& B = g.roots().B;
  const auto& Z = g.roots().Z;
  const auto half = ratio<F>(1, 2);
  const auto alpha = detail::alpha_basis_labeled(g);
  IdentityCheck bu{"[B,U] = 1/2 U"}, bz{"[B,Z] = Z"}, zu{"[Z,U] = 0"}, uv{"[U,V] = <JU,V>Z"};
  detail::record(bz, (g.bracket(B, Z) - Z).is_zero(), "B,Z");
  for (const auto& [lu, u] : alpha) {
    detail::record(bu, (g.bracket(B, u) - half * u).is_zero(), "U=" + lu);
    detail::record(zu, g.bracket(Z, u).is_zero(), "U=" + lu);
    const auto ju = g.complex_structure(u);
    for (const auto& [lv, v] : alpha)
      detail::record(uv, (g.bracket(u, v) - g.metric(ju, v) * Z).is_zero(), "U=" + lu + ", V=" + lv);
  }
  return {{bu, bz, zu, uv}};
}

/// Jacobi identity on all ambient basis triples.
template <class F>
IdentityCheck verify_jacobi(const Algebra<F>& g) {
  IdentityCheck c{"Jacobi on ambient basis"};
  const std::size_t d = g.dim();
  std::vector<std::vector<LieVector<F>>> br(d, std::vector<LieVector<F>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      br[i][j] = g.bracket(g.ambient_vector(i), g.ambient_vector(j));
      br[j][i] = -br[i][j];
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        auto s = g.bracket(g.ambient_vector(i), br[j][k]) + g.bracket(g.ambient_vector(j), br[k][i]) +
                 g.bracket(g.ambient_vector(k), br[i][j]);
        detail::record(c, s.is_zero(),
                       "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
  return c;
}

/// [g_lambda, g_mu] lies in g_{lambda+mu} for every pair of adapted basis vectors.
template <class F>
IdentityCheck verify_grading(const Algebra<F>& g) {
  IdentityCheck c{"root space grading"};
  const auto& basis = g.adapted_basis();
  const std::size_t d = basis.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      F target = g.grade(i) + g.grade(j);
      Vec<F> br = g.adapted(g.bracket(basis[i], basis[j]));
      bool ok = true;
      for (std::size_t r = 0; r < d && ok; ++r)
        if (!is_zero(br[r]) && !is_zero(F(g.grade(r) - target))) ok = false;
      detail::record(c, ok, "[" + g.label(i) + "," + g.label(j) + "]");
    }
  return c;
}

}  // namespace chn

#endif  // CHN_ALGEBRA_HPP
