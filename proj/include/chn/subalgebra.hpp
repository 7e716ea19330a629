#ifndef CHN_SUBALGEBRA_HPP
#define CHN_SUBALGEBRA_HPP

#include <chn/algebra.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chn {

class ClosureError : public std::runtime_error {
 public:
  ClosureError(std::size_t first, std::size_t second, std::string witness)
      : std::runtime_error("generators are not closed under the bracket: " + witness),
        first_(first),
        second_(second),
        witness_(std::move(witness)) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const std::string& witness() const { return witness_; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::string witness_;
};

class NotParabolicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
struct ClosureResult {
  bool closed = true;
  std::size_t first = 0;
  std::size_t second = 0;
  LieVector<F> x, y;
  LieVector<F> bracket;   // [x, y] = [gens[first], gens[second]]
  LieVector<F> residual;  // its part outside the span

  std::string witness(const Algebra<F>& g) const {
    return "[" + describe(g, x) + "," + describe(g, y) + "] = " + describe(g, bracket) + " (generators " +
           std::to_string(first + 1) + " and " + std::to_string(second + 1) + "), " + describe(g, residual) +
           " outside the span";
  }
};

namespace detail {

// Adapted coordinates restricted to k0 + a + n.
template <class F>
Vec<F> parabolic_coords(const Algebra<F>& g, const LieVector<F>& x) {
  if (!g.in_parabolic(x)) throw DomainError("vector " + describe(g, x) + " is not in k0+a+n");
  Vec<F> c = g.adapted(x);
  c.resize(g.layout().neg_begin());
  return c;
}

template <class F>
LieVector<F> from_parabolic(const Algebra<F>& g, Vec<F> c) {
  c.resize(g.layout().total, F(0));
  return g.from_adapted(c);
}

}  // namespace detail

/// Exact closure test on the span of gens; reports the first failing pair.
template <class F>
ClosureResult<F> closure_check(const Algebra<F>& g, const std::vector<LieVector<F>>& gens) {
  std::vector<Vec<F>> coords;
  for (const auto& x : gens) coords.push_back(detail::parabolic_coords(g, x));
  auto span = Subspace<F>::span(g.layout().neg_begin(), coords);
  ClosureResult<F> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      auto br = g.bracket(gens[i], gens[j]);
      Vec<F> c = g.adapted(br);
      Vec<F> head(c.begin(), c.begin() + static_cast<long>(g.layout().neg_begin()));
      Vec<F> tail_residual = span.reduce(head);
      tail_residual.resize(g.layout().total, F(0));
      for (std::size_t k = g.layout().neg_begin(); k < g.layout().total; ++k) tail_residual[k] = c[k];
      if (!is_zero_vec(tail_residual)) {
        out.closed = false;
        out.first = i;
        out.second = j;
        out.x = gens[i];
        out.y = gens[j];
        out.bracket = br;
        out.residual = g.from_adapted(tail_residual);
        return out;
      }
    }
  return out;
}

/// Data of the direct sum h = q + R X1 + R X2 + m in canonical position.
/// a+n parts (U, V, W) are in a+n coordinates, k0 parts (q, T, R, Phi(W)) in
/// T coordinates.
template <class F>
struct CanonicalDecomposition {
  std::vector<Vec<F>> q;

  F a{0};
  Vec<F> U;
  Vec<F> T;

  F b{0};
  F x{0};
  Vec<F> V;
  Vec<F> R;

  std::vector<Vec<F>> W;  // s_d part first, then m_nd
  std::vector<Vec<F>> phi_W;
  std::vector<F> W_norm2;
  std::size_t d = 0;

  std::size_t dim_s() const { return W.size(); }
  bool has_x1() const { return !is_zero(a); }
  bool has_x2() const { return !is_zero(x); }

  /// (X1)_{a+n} = aB + U.
  Vec<F> x1_an() const {
    Vec<F> v = U;
    v[0] = a;
    return v;
  }

  /// (X2)_{a+n} = bB + V + xZ.
  Vec<F> x2_an() const {
    Vec<F> v = V;
    v[0] = b;
    v.back() = x;
    return v;
  }

  std::size_t dim() const { return q.size() + W.size() + (has_x1() ? 1 : 0) + (has_x2() ? 1 : 0); }
};

/// A Lie subalgebra of k0 + a + n, stored by its RREF basis in adapted
/// coordinates, with the canonical decomposition computed at construction.
template <class F>
class Subalgebra {
 public:
  static Subalgebra from_closed(AlgebraContext<F> ctx, std::vector<LieVector<F>> gens) {
    auto res = closure_check(*ctx, gens);
    if (!res.closed) throw ClosureError(res.first, res.second, res.witness(*ctx));
    return Subalgebra(std::move(ctx), std::move(gens));
  }

  /// Smallest subalgebra containing gens; gens may be anywhere in g but the
  /// result must land in k0 + a + n.
  static Subalgebra lie_span(AlgebraContext<F> ctx, std::vector<LieVector<F>> gens) {
    const Algebra<F>& g = *ctx;
    std::vector<LieVector<F>> basis;
    std::vector<Vec<F>> coords;
    Subspace<F> span(g.dim());
    auto push = [&](const LieVector<F>& v) {
      Vec<F> c = g.adapted(v);
      if (span.contains(c)) return;
      coords.push_back(c);
      basis.push_back(v);
      span = Subspace<F>::span(g.dim(), coords);
    };
    for (const auto& v : gens) push(v);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) push(g.bracket(basis[j], basis[i]));
    for (const auto& v : basis)
      if (!g.in_parabolic(v))
        throw NotParabolicError("the generated subalgebra leaves k0+a+n: contains " + describe(g, v));
    return Subalgebra(std::move(ctx), std::move(gens), basis);
  }

  const AlgebraContext<F>& context() const { return ctx_; }
  const Algebra<F>& algebra() const { return *ctx_; }
  const std::vector<LieVector<F>>& generators() const { return gens_; }

  /// RREF basis in parabolic coordinates (T block, then a+n block).
  const Subspace<F>& span() const { return span_; }
  std::size_t dim() const { return span_.dim(); }

  std::vector<LieVector<F>> basis() const {
    std::vector<LieVector<F>> out;
    for (const auto& c : span_.basis()) out.push_back(detail::from_parabolic(*ctx_, c));
    return out;
  }

  bool contains(const LieVector<F>& x) const {
    if (!ctx_->in_parabolic(x)) return false;
    return span_.contains(detail::parabolic_coords(*ctx_, x));
  }

  const CanonicalDecomposition<F>& decomposition() const { return dec_; }

  /// h_{a+n} in a+n coordinates.
  const Subspace<F>& an_projection() const { return an_; }
  std::size_t orbit_dim() const { return an_.dim(); }

  /// Phi(X) in T coordinates, the k0 correction with X + Phi(X) in h.
  Vec<F> phi(const Vec<F>& x_an) const {
    auto c = an_.coordinates(x_an);
    if (!c) throw DomainError("phi: vector is not in the a+n projection of h");
    Vec<F> out(ctx_->layout().k0_dim, F(0));
    for (std::size_t r = 0; r < c->size(); ++r) axpy(out, (*c)[r], lifts_[r]);
    return out;
  }

  LieVector<F> phi(const LieVector<F>& x) const {
    ctx_->require_an(x, "phi");
    return ctx_->from_k0(phi(ctx_->an_part(x)));
  }

  /// h contained in a + n (no k0 components anywhere).
  bool in_an() const {
    for (const auto& c : span_.basis())
      for (std::size_t i = 0; i < ctx_->layout().k0_dim; ++i)
        if (!is_zero(c[i])) return false;
    return true;
  }

  friend bool operator==(const Subalgebra& a, const Subalgebra& b) {
    return a.ctx_->n() == b.ctx_->n() && a.span_ == b.span_;
  }

 private:
  Subalgebra(AlgebraContext<F> ctx, std::vector<LieVector<F>> gens)
      : Subalgebra(ctx, gens, gens) {}

  Subalgebra(AlgebraContext<F> ctx, std::vector<LieVector<F>> gens, const std::vector<LieVector<F>>& spanning)
      : ctx_(std::move(ctx)), gens_(std::move(gens)) {
    std::vector<Vec<F>> coords;
    for (const auto& x : spanning) coords.push_back(detail::parabolic_coords(*ctx_, x));
    span_ = Subspace<F>::span(ctx_->layout().neg_begin(), coords);
    decompose();
  }

  void decompose();

  AlgebraContext<F> ctx_;
  std::vector<LieVector<F>> gens_;
  Subspace<F> span_;
  Subspace<F> an_;
  std::vector<Vec<F>> lifts_;  // Phi of the RREF basis of an_
  CanonicalDecomposition<F> dec_;
};

template <class F>
void Subalgebra<F>::decompose() {
  const auto& L = ctx_->layout();
  const std::size_t K = L.k0_dim, N = L.an_dim;
  const auto& hb = span_.basis();
  const std::size_t m = hb.size();
  auto t_of = [&](const Vec<F>& v) { return Vec<F>(v.begin(), v.begin() + static_cast<long>(K)); };
  auto y_of = [&](const Vec<F>& v) { return Vec<F>(v.begin() + static_cast<long>(K), v.end()); };

  // q = h cap k0 from the left kernel of the a+n block.
  Matrix<F> yt(N, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < N; ++r) yt(r, i) = hb[i][K + r];
  std::vector<Vec<F>> q_raw;
  for (const auto& c : nullspace(yt)) {
    Vec<F> t(K, F(0));
    for (std::size_t i = 0; i < m; ++i) axpy(t, c[i], t_of(hb[i]));
    q_raw.push_back(std::move(t));
  }
  dec_.q = Subspace<F>::span(K, q_raw).basis();

  // h~ = Q_theta-complement of q in h.
  Matrix<F> cons(dec_.q.size(), m);
  for (std::size_t j = 0; j < dec_.q.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) cons(j, i) = ctx_->k0_inner(dec_.q[j], t_of(hb[i]));
  std::vector<Vec<F>> tilde = combine(hb, nullspace(cons), K + N);

  // Rows [y | t]; the y block has full rank, so RREF pivots all sit in it.
  std::vector<Vec<F>> yt_rows;
  for (const auto& v : tilde) {
    Vec<F> row = y_of(v);
    Vec<F> t = t_of(v);
    row.insert(row.end(), t.begin(), t.end());
    yt_rows.push_back(std::move(row));
  }
  std::vector<Vec<F>> an_basis;
  lifts_.clear();
  if (!yt_rows.empty()) {
    auto [red, piv] = rref(Matrix<F>::from_rows(yt_rows, N + K));
    for (std::size_t r = 0; r < piv.size(); ++r) {
      if (piv[r] >= N) throw std::logic_error("a+n projection of h~ is not injective");
      Vec<F> row = red.row(r);
      an_basis.emplace_back(row.begin(), row.begin() + static_cast<long>(N));
      lifts_.emplace_back(row.begin() + static_cast<long>(N), row.end());
    }
  }
  an_ = Subspace<F>::span(N, an_basis);

  // s = h_{a+n} cap g_alpha.
  const std::size_t z = L.z();
  Matrix<F> bz(2, an_basis.size());
  for (std::size_t r = 0; r < an_basis.size(); ++r) {
    bz(0, r) = an_basis[r][0];
    bz(1, r) = an_basis[r][z];
  }
  std::vector<Vec<F>> s = combine(an_basis, nullspace(bz), N);
  s = Subspace<F>::span(N, s).basis();

  // m_nd = ker Phi|_s, s_d its complement in s.
  Matrix<F> phis(K, s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    Vec<F> p = phi(s[k]);
    for (std::size_t r = 0; r < K; ++r) phis(r, k) = p[r];
  }
  std::vector<Vec<F>> m_nd = combine(s, nullspace(phis), N);
  Matrix<F> perp(m_nd.size(), s.size());
  for (std::size_t j = 0; j < m_nd.size(); ++j)
    for (std::size_t k = 0; k < s.size(); ++k) perp(j, k) = dot(m_nd[j], s[k]);
  std::vector<Vec<F>> s_d = combine(s, nullspace(perp), N);

  auto od = orthogonalize(s_d);
  auto ond = orthogonalize(m_nd);
  dec_.W = od.vectors;
  dec_.W_norm2 = od.norm2;
  dec_.d = od.size();
  dec_.W.insert(dec_.W.end(), ond.vectors.begin(), ond.vectors.end());
  dec_.W_norm2.insert(dec_.W_norm2.end(), ond.norm2.begin(), ond.norm2.end());
  dec_.phi_W.clear();
  for (const auto& w : dec_.W) dec_.phi_W.push_back(phi(w));

  // C = h_{a+n} cap s^perp, of dimension 0, 1 or 2.
  Matrix<F> sperp(s.size(), an_basis.size());
  for (std::size_t k = 0; k < s.size(); ++k)
    for (std::size_t r = 0; r < an_basis.size(); ++r) sperp(k, r) = dot(s[k], an_basis[r]);
  std::vector<Vec<F>> C = combine(an_basis, nullspace(sperp), N);

  Vec<F> zero_an(N, F(0));
  Vec<F> zero_k0(K, F(0));
  dec_.a = F(0);
  dec_.x = F(0);
  dec_.b = F(0);
  dec_.U = dec_.V = zero_an;
  dec_.T = dec_.R = zero_k0;
  auto strip = [&](Vec<F> v) {
    v[0] = F(0);
    v[z] = F(0);
    return v;
  };
  auto set_x1 = [&](const Vec<F>& c) {
    dec_.a = F(1);
    dec_.U = strip(c);
    dec_.T = phi(c);
  };
  auto set_x2 = [&](const Vec<F>& c) {
    dec_.x = F(1);
    dec_.b = c[0];
    dec_.V = strip(c);
    dec_.R = phi(c);
  };
  if (C.size() == 2) {
    // Solve for the element with (b, z) = (1, 0).
    Matrix<F> sys(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      sys(0, k) = C[k][0];
      sys(1, k) = C[k][z];
    }
    auto coeff = solve(sys, Vec<F>{F(1), F(0)});
    if (!coeff) throw std::logic_error("complement of s does not map onto a + g_2alpha");
    Vec<F> x1 = (*coeff)[0] * C[0] + (*coeff)[1] * C[1];
    // Element of C orthogonal to x1, scaled to z = 1.
    Vec<F> w = dot(C[1], x1) * C[0] - dot(C[0], x1) * C[1];
    if (is_zero(w[z])) w = dot(C[0], x1) * C[1] - dot(C[1], x1) * C[0];
    if (is_zero(w[z])) throw std::logic_error("no X2 with nonzero Z component");
    set_x1(x1);
    set_x2(F(1) / w[z] * w);
  } else if (C.size() == 1) {
    const Vec<F>& c = C[0];
    if (is_zero(c[z]))
      set_x1(F(1) / c[0] * c);
    else
      set_x2(F(1) / c[z] * c);
  }
}

/// Exact AN group element represented by matrices g and g^{-1}.
template <class F>
class GroupElement {
 public:
  static GroupElement identity(AlgebraContext<F> ctx) {
    auto I = CMatrix<F>::identity(static_cast<std::size_t>(ctx->n() + 1));
    return GroupElement(std::move(ctx), I, I);
  }

  /// exp(N) for N in n, by the terminating power series.
  static GroupElement exp_nilpotent(AlgebraContext<F> ctx, const LieVector<F>& nil) {
    ctx->require_an(nil, "exp_nilpotent");
    if (!is_zero(ctx->an_part(nil)[0])) throw DomainError("exp_nilpotent: argument has an a component");
    auto m = ctx->to_matrix(nil);
    auto g = series(m);
    auto gi = series(F(-1) * m);
    return GroupElement(std::move(ctx), g, gi);
  }

  /// exp(tB) with s = e^{t/2}, from the spectral projectors of B (eigenvalues 0, +-1/2).
  static GroupElement torus(AlgebraContext<F> ctx, const F& s) {
    if (sign(s) <= 0) throw DomainError("torus: scale must be positive");
    auto b = ctx->to_matrix(ctx->roots().B);
    const std::size_t N = b.size();
    auto b2 = b * b;
    if (!(b2 * b == ratio<F>(1, 4) * b)) throw std::logic_error("B does not satisfy B^3 = B/4");
    auto pp = F(2) * b2 + b, pm = F(2) * b2 - b, p0 = CMatrix<F>::identity(N) - F(4) * b2;
    F si = F(1) / s;
    return GroupElement(std::move(ctx), s * pp + si * pm + p0, si * pp + s * pm + p0);
  }

  /// exp(tB) for real t; only meaningful in floating point.
  static GroupElement exp_torus(AlgebraContext<F> ctx, double t) {
    static_assert(!field_traits<F>::exact, "exp_torus needs the float field; use torus(s) with s = e^{t/2}");
    return torus(std::move(ctx), F(std::exp(t / 2)));
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.ctx_->n() != b.ctx_->n()) throw ContextError("group elements from different algebras");
    return GroupElement(a.ctx_, a.g_ * b.g_, b.g_inv_ * a.g_inv_);
  }

  /// Ad(g^{-1}) X = g^{-1} X g.
  LieVector<F> ad_inverse(const LieVector<F>& x) const { return ctx_->from_matrix(g_inv_ * ctx_->to_matrix(x) * g_); }
  LieVector<F> ad(const LieVector<F>& x) const { return ctx_->from_matrix(g_ * ctx_->to_matrix(x) * g_inv_); }

  const CMatrix<F>& matrix() const { return g_; }
  const CMatrix<F>& inverse_matrix() const { return g_inv_; }

 private:
  GroupElement(AlgebraContext<F> ctx, CMatrix<F> g, CMatrix<F> gi) : ctx_(std::move(ctx)), g_(std::move(g)), g_inv_(std::move(gi)) {}

  static CMatrix<F> series(const CMatrix<F>& m) {
    auto out = CMatrix<F>::identity(m.size());
    auto term = out;
    for (long k = 1; k <= static_cast<long>(m.size()) + 1; ++k) {
      term = ratio<F>(1, k) * (term * m);
      if (term.is_zero()) return out;
      out = out + term;
    }
    throw DomainError("exp_nilpotent: matrix is not nilpotent");
  }

  AlgebraContext<F> ctx_;
  CMatrix<F> g_;
  CMatrix<F> g_inv_;
};

/// Ad(g^{-1}) h, whose orbit through o is congruent to the orbit of h through g.o.
template <class F>
Subalgebra<F> conjugate_to_base_point(const Subalgebra<F>& h, const GroupElement<F>& g) {
  std::vector<LieVector<F>> gens;
  for (const auto& x : h.basis()) {
    auto y = g.ad_inverse(x);
    if (!h.algebra().in_parabolic(y)) throw std::logic_error("AN conjugate left k0+a+n");
    gens.push_back(std::move(y));
  }
  return Subalgebra<F>::from_closed(h.context(), std::move(gens));
}

}  // namespace chn

#endif  // CHN_SUBALGEBRA_HPP
