#pragma once

/**
 * @file tensor.hpp
 * @brief Sparse labeled tensors over the deformed three- and four-space
 *        bases, with exact scalar components.
 *
 * Basis order is (+, 3, -) for the three-space and (0, +, 3, -) for the
 * four-space.  Every slot is marked contravariant (upper) or covariant
 * (lower); contraction requires one slot of each kind.
 */

#include "qnc/scalar.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qnc {

enum class Space { euclid3, mink4 };

inline int space_dim(Space s) { return s == Space::euclid3 ? 3 : 4; }

inline const std::vector<std::string>& space_labels(Space s) {
  static const std::vector<std::string> e{"+", "3", "-"};
  static const std::vector<std::string> m{"0", "+", "3", "-"};
  return s == Space::euclid3 ? e : m;
}

using Index = std::vector<uint8_t>;

class Tensor {
 public:
  Tensor() : space_(Space::euclid3) {}
  Tensor(Space sp, std::vector<bool> up) : space_(sp), up_(std::move(up)) {}

  Space space() const { return space_; }
  int dim() const { return space_dim(space_); }
  int nslots() const { return static_cast<int>(up_.size()); }
  const std::vector<bool>& variance() const { return up_; }
  bool slot_up(int k) const { return up_[static_cast<size_t>(k)]; }

  const std::map<Index, QScalar>& components() const { return comp_; }

  void set(const Index& idx, QScalar v) {
    if (v.is_zero())
      comp_.erase(idx);
    else
      comp_[idx] = std::move(v);
  }
  void add_to(const Index& idx, const QScalar& v) {
    auto it = comp_.find(idx);
    if (it == comp_.end()) {
      if (!v.is_zero()) comp_.emplace(idx, v);
      return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) comp_.erase(it);
  }
  QScalar get(const Index& idx) const {
    auto it = comp_.find(idx);
    return it == comp_.end() ? QScalar() : it->second;
  }
  bool is_zero() const { return comp_.empty(); }

  friend Tensor operator+(const Tensor& a, const Tensor& b) {
    Tensor r = a;
    for (const auto& [k, v] : b.comp_) r.add_to(k, v);
    return r;
  }
  friend Tensor operator-(const Tensor& a, const Tensor& b) {
    Tensor r = a;
    for (const auto& [k, v] : b.comp_) r.add_to(k, -v);
    return r;
  }
  Tensor scaled(const QScalar& s) const {
    Tensor r(space_, up_);
    if (s.is_zero()) return r;
    for (const auto& [k, v] : comp_) r.comp_[k] = v * s;
    return r;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.space_ == b.space_ && a.up_ == b.up_ && a.comp_ == b.comp_;
  }

  /// Entrywise complex conjugation of the components.
  Tensor conjugated() const {
    Tensor r(space_, up_);
    for (const auto& [k, v] : comp_) r.comp_[k] = scalar_conjugate(v);
    return r;
  }

 private:
  Space space_;
  std::vector<bool> up_;
  std::map<Index, QScalar> comp_;
};

/// Kronecker delta with one upper and one lower slot.
inline Tensor delta_tensor(Space sp) {
  Tensor d(sp, {true, false});
  for (uint8_t a = 0; a < space_dim(sp); ++a) d.set({a, a}, QScalar(1));
  return d;
}

/// Tensor product: slots of a followed by slots of b.
inline Tensor outer(const Tensor& a, const Tensor& b) {
  std::vector<bool> up = a.variance();
  up.insert(up.end(), b.variance().begin(), b.variance().end());
  Tensor r(a.space(), up);
  for (const auto& [ka, va] : a.components())
    for (const auto& [kb, vb] : b.components()) {
      Index k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      r.set(k, va * vb);
    }
  return r;
}

/// Contract slot `sa` of a (upper/lower) against slot `sb` of b.
/// Result slots: a's remaining slots in order, then b's remaining slots.
inline Tensor contract(const Tensor& a, int sa, const Tensor& b, int sb) {
  if (a.slot_up(sa) == b.slot_up(sb))
    throw std::invalid_argument("contraction needs one upper and one lower slot");
  std::vector<bool> up;
  for (int k = 0; k < a.nslots(); ++k)
    if (k != sa) up.push_back(a.slot_up(k));
  for (int k = 0; k < b.nslots(); ++k)
    if (k != sb) up.push_back(b.slot_up(k));
  Tensor r(a.space(), up);
  for (const auto& [ka, va] : a.components())
    for (const auto& [kb, vb] : b.components()) {
      if (ka[static_cast<size_t>(sa)] != kb[static_cast<size_t>(sb)]) continue;
      Index k;
      k.reserve(up.size());
      for (int t = 0; t < a.nslots(); ++t)
        if (t != sa) k.push_back(ka[static_cast<size_t>(t)]);
      for (int t = 0; t < b.nslots(); ++t)
        if (t != sb) k.push_back(kb[static_cast<size_t>(t)]);
      r.add_to(k, va * vb);
    }
  return r;
}

/// Reorder slots: new slot k holds what old slot perm[k] held.
inline Tensor transpose(const Tensor& a, const std::vector<int>& perm) {
  std::vector<bool> up(perm.size());
  for (size_t k = 0; k < perm.size(); ++k)
    up[k] = a.slot_up(perm[k]);
  Tensor r(a.space(), up);
  for (const auto& [ka, va] : a.components()) {
    Index k(perm.size());
    for (size_t t = 0; t < perm.size(); ++t)
      k[t] = ka[static_cast<size_t>(perm[t])];
    r.set(k, va);
  }
  return r;
}

/* ------------------------------------------------------------------ */
/* Dense matrices                                                      */
/* ------------------------------------------------------------------ */

class Matrix {
 public:
  Matrix() : n_(0) {}
  explicit Matrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}

  int n() const { return n_; }
  QScalar& at(int r, int c) { return e_[static_cast<size_t>(r) * n_ + c]; }
  const QScalar& at(int r, int c) const {
    return e_[static_cast<size_t>(r) * n_ + c];
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r(a.n_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r(a.n_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
  }
  Matrix scaled(const QScalar& s) const {
    Matrix r(n_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * s;
    return r;
  }
  bool is_zero() const {
    for (const auto& v : e_)
      if (!v.is_zero()) return false;
    return true;
  }

 private:
  int n_;
  std::vector<QScalar> e_;
};

inline Matrix matrix_identity(int n) {
  Matrix m(n);
  for (int k = 0; k < n; ++k) m.at(k, k) = QScalar(1);
  return m;
}

inline Matrix matrix_mul(const Matrix& a, const Matrix& b) {
  Matrix r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int k = 0; k < a.n(); ++k) {
      const QScalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < a.n(); ++j) {
        const QScalar& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + aik * bkj;
      }
    }
  return r;
}

/// Lexicographic matrix view of a tensor with slots (up, up, down, down):
/// row = first index pair, column = second.
inline Matrix as_matrix(const Tensor& t) {
  if (t.nslots() != 4 || !t.slot_up(0) || !t.slot_up(1) || t.slot_up(2) ||
      t.slot_up(3))
    throw std::invalid_argument("matrix view needs slots (up, up, down, down)");
  int d = t.dim();
  Matrix m(d * d);
  for (const auto& [k, v] : t.components())
    m.at(k[0] * d + k[1], k[2] * d + k[3]) = v;
  return m;
}

/// Inverse of as_matrix for the same slot pattern.
inline Tensor matrix_to_tensor(const Matrix& m, Space sp) {
  int d = space_dim(sp);
  Tensor t(sp, {true, true, false, false});
  for (int r = 0; r < d * d; ++r)
    for (int c = 0; c < d * d; ++c) {
      const QScalar& v = m.at(r, c);
      if (v.is_zero()) continue;
      t.set({static_cast<uint8_t>(r / d), static_cast<uint8_t>(r % d),
             static_cast<uint8_t>(c / d), static_cast<uint8_t>(c % d)},
            v);
    }
  return t;
}

/// Matrices acting on the first resp. last two factors of a cubic space.
inline Matrix lift_front(const Matrix& r, int d) {
  Matrix m(d * d * d);
  for (int a = 0; a < d * d; ++a)
    for (int b = 0; b < d * d; ++b) {
      const QScalar& v = r.at(a, b);
      if (v.is_zero()) continue;
      for (int c = 0; c < d; ++c) m.at(a * d + c, b * d + c) = v;
    }
  return m;
}

inline Matrix lift_back(const Matrix& r, int d) {
  Matrix m(d * d * d);
  for (int a = 0; a < d * d; ++a)
    for (int b = 0; b < d * d; ++b) {
      const QScalar& v = r.at(a, b);
      if (v.is_zero()) continue;
      for (int c = 0; c < d; ++c) m.at(c * d * d + a, c * d * d + b) = v;
    }
  return m;
}

/// Braid relation check: (R x 1)(1 x R)(R x 1) == (1 x R)(R x 1)(1 x R).
inline bool braid_holds(const Matrix& r, int d) {
  Matrix f = lift_front(r, d);
  Matrix b = lift_back(r, d);
  Matrix lhs = matrix_mul(matrix_mul(f, b), f);
  Matrix rhs = matrix_mul(matrix_mul(b, f), b);
  return lhs == rhs;
}

}  // namespace qnc
