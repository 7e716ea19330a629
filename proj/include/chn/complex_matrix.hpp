#ifndef CHN_COMPLEX_MATRIX_HPP
#define CHN_COMPLEX_MATRIX_HPP

#include <chn/field.hpp>

#include <cassert>
#include <cstddef>
#include <vector>

namespace chn {

/// Gaussian-rational (or complex double) scalar.
template <class F>
struct Complex {
  F re{0};
  F im{0};

  bool is_zero() const { return chn::is_zero(re) && chn::is_zero(im); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const F& s, const Complex& a) { return {s * a.re, s * a.im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex conj() const { return {re, -im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return (a - b).is_zero(); }
};

/// Square complex matrix; products skip zero entries since the matrices of
/// su(1,n) basis elements have at most two nonzeros.
template <class F>
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t size) : size_(size), data_(size * size) {}

  static CMatrix identity(std::size_t size) {
    CMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = {F(1), F(0)};
    return m;
  }

  std::size_t size() const { return size_; }
  Complex<F>& operator()(std::size_t r, std::size_t c) { return data_[r * size_ + c]; }
  const Complex<F>& operator()(std::size_t r, std::size_t c) const { return data_[r * size_ + c]; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    assert(a.size_ == b.size_);
    const std::size_t n = a.size_;
    CMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const auto& bkj = b(k, j);
          if (!bkj.is_zero()) out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend CMatrix operator-(CMatrix a, const CMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend CMatrix operator*(const F& s, CMatrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  CMatrix adjoint() const {
    CMatrix out(size_);
    for (std::size_t r = 0; r < size_; ++r)
      for (std::size_t c = 0; c < size_; ++c) out(c, r) = (*this)(r, c).conj();
    return out;
  }

  Complex<F> trace() const {
    Complex<F> t;
    for (std::size_t i = 0; i < size_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const CMatrix& a, const CMatrix& b) { return (a - b).is_zero(); }

 private:
  std::size_t size_ = 0;
  std::vector<Complex<F>> data_;
};

template <class F>
CMatrix<F> commutator(const CMatrix<F>& a, const CMatrix<F>& b) {
  return a * b - b * a;
}

}  // namespace chn

#endif  // CHN_COMPLEX_MATRIX_HPP
