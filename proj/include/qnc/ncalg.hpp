#pragma once

#include "qnc/spaces.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qnc {

// Normal-ordered monomial l^lp * X-block * D-block.  Blocks are exponent
// vectors over the basis indices of the space (slot 3 unused in the
// three-dimensional case).  Within a block generators appear in ascending
// basis order.
struct Monomial {
  int lp = 0;
  std::array<uint8_t, 4> x{}, d{};

  bool operator==(const Monomial& o) const { return lp == o.lp && x == o.x && d == o.d; }
  bool operator<(const Monomial& o) const {
    if (lp != o.lp) return lp < o.lp;
    if (x != o.x) return x < o.x;
    return d < o.d;
  }
  int xdeg() const { return x[0] + x[1] + x[2] + x[3]; }
  int ddeg() const { return d[0] + d[1] + d[2] + d[3]; }
};

// Polynomial in the algebra: map from normal monomial to coefficient.
class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(const QScalar& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
  }
  static NCPoly term(const Monomial& m, const QScalar& c) {
    NCPoly p;
    if (!c.is_zero()) p.terms_[m] = c;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<Monomial, QScalar>& terms() const { return terms_; }

  void add_term(const Monomial& m, const QScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCPoly operator+(const NCPoly& o) const {
    NCPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  NCPoly operator-(const NCPoly& o) const {
    NCPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, QScalar() - c);
    return r;
  }
  NCPoly scaled(const QScalar& c) const {
    NCPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
  }
  bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

 private:
  std::map<Monomial, QScalar> terms_;
};

// coeff * G^a G^b with a <= b, right side of a reordering rule
struct PairTerm {
  QScalar c;
  uint8_t a, b;
};

// coeff * X^x D^d, right side of a derivative-past-coordinate rule
struct CrossTerm {
  QScalar c;
  uint8_t x, d;
};

// Complete presentation data driving the rewrite engine.  xx[j][i] and
// dd[j][i] are populated for j > i only.  cross0/cross give
// D^a X^b = cross0[a][b] + sum_t c_t X^{x_t} D^{d_t}.  Scale-generator
// exchange: X^i l = q^xl_e l X^i and D^i l = q^dl_e l D^i.
struct RuleSet {
  Space space = Space::euclid3;
  int dim = 3;
  std::array<std::array<std::vector<PairTerm>, 4>, 4> xx, dd;
  std::array<std::array<QScalar, 4>, 4> cross0;
  std::array<std::array<std::vector<CrossTerm>, 4>, 4> cross;
  int xl_e = 0, dl_e = 0;
};

namespace detail {

using Block = std::array<uint8_t, 4>;

inline uint32_t pack_block(const Block& b) {
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
}

inline int block_deg(const Block& b) { return b[0] + b[1] + b[2] + b[3]; }

inline int lowest_gen(const Block& b, int dim) {
  for (int i = 0; i < dim; ++i)
    if (b[i]) return i;
  return -1;
}
inline int highest_gen(const Block& b, int dim) {
  for (int i = dim - 1; i >= 0; --i)
    if (b[i]) return i;
  return -1;
}

// Solves proj^{AB}_{CD} G^C G^D = 0 for the ill-ordered products in terms
// of the ordered ones.  The projector must annihilate exactly the span of
// the ill-ordered monomials' defect: pivots are required to land on every
// ill-ordered column and the leftover equations must be dependent,
// otherwise the presentation would not have a PBW basis and we throw.
inline std::array<std::array<std::vector<PairTerm>, 4>, 4> solve_pair_rules(
    const Tensor& proj) {
  int d = space_dim(proj.space());
  struct Pair {
    int c, dd;
  };
  std::vector<Pair> ill, ord;
  for (int c = 0; c < d; ++c)
    for (int e = 0; e < d; ++e)
      (c > e ? ill : ord).push_back({c, e});
  size_t nill = ill.size(), ncol = size_t(d) * size_t(d);
  auto col_pair = [&](size_t k) { return k < nill ? ill[k] : ord[k - nill]; };

  std::vector<std::vector<QScalar>> rows;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      std::vector<QScalar> row(ncol);
      bool nz = false;
      for (size_t k = 0; k < ncol; ++k) {
        Pair p = col_pair(k);
        Index idx = {uint8_t(a), uint8_t(b), uint8_t(p.c), uint8_t(p.dd)};
        row[k] = proj.get(idx);
        nz = nz || !row[k].is_zero();
      }
      if (nz) rows.push_back(std::move(row));
    }

  size_t r = 0;
  std::vector<size_t> pivot_row(nill, size_t(-1));
  for (size_t col = 0; col < nill && r < rows.size(); ++col) {
    size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    QScalar inv = QScalar(1) / rows[r][col];
    for (auto& v : rows[r]) v = v * inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      QScalar f = rows[i][col];
      for (size_t k = 0; k < ncol; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
    }
    pivot_row[col] = r;
    ++r;
  }
  for (size_t col = 0; col < nill; ++col)
    if (pivot_row[col] == size_t(-1))
      throw std::logic_error("reordering rules underdetermined");
  for (size_t i = r; i < rows.size(); ++i)
    for (const auto& v : rows[i])
      if (!v.is_zero()) throw std::logic_error("reordering rules overdetermined");

  std::array<std::array<std::vector<PairTerm>, 4>, 4> out;
  for (size_t col = 0; col < nill; ++col) {
    const auto& row = rows[pivot_row[col]];
    for (size_t k = 0; k < nill; ++k)
      if (k != col && !row[k].is_zero())
        throw std::logic_error("reordering rules entangled");
    std::vector<PairTerm> terms;
    for (size_t k = nill; k < ncol; ++k)
      if (!row[k].is_zero()) {
        Pair p = col_pair(k);
        terms.push_back({QScalar() - row[k], uint8_t(p.c), uint8_t(p.dd)});
      }
    out[size_t(ill[col].c)][size_t(ill[col].dd)] = std::move(terms);
  }
  return out;
}

}  // namespace detail

struct ClearResult {
  bool equal = false;
  int clearing_power = 0;
  NCPoly residue;
};

// Rewrite engine for one quantum space.  Reordering rules are solved from
// the antisymmetric projector, derivative-past-coordinate rules come from
// the inverse exchange matrix, and every product is brought to the normal
// form l-power, ascending X-block, ascending D-block.
class Algebra {
 public:
  static const Algebra& euclid() {
    static Algebra a(Space::euclid3);
    return a;
  }
  static const Algebra& mink() {
    static Algebra a(Space::mink4);
    return a;
  }

  Space space() const { return rules_.space; }
  int dim() const { return rules_.dim; }
  const RuleSet& rule_set() const { return rules_; }

  NCPoly one() const { return NCPoly(QScalar(1)); }
  NCPoly x_gen(int i) const {
    Monomial m;
    m.x[size_t(i)] = 1;
    return NCPoly::term(m, QScalar(1));
  }
  NCPoly d_gen(int i) const {
    Monomial m;
    m.d[size_t(i)] = 1;
    return NCPoly::term(m, QScalar(1));
  }
  NCPoly l_pow(int k) const {
    Monomial m;
    m.lp = k;
    return NCPoly::term(m, QScalar(1));
  }

  NCPoly mul(const NCPoly& a, const NCPoly& b) const {
    NCPoly acc;
    for (const auto& [m1, c1] : a.terms())
      for (const auto& [m2, c2] : b.terms()) monomial_mul(m1, m2, c1 * c2, acc);
    return acc;
  }

  // metric-contracted bilinears, the building blocks of every derived element
  const NCPoly& dot_xx() const { return dot_xx_; }
  const NCPoly& dot_xd() const { return dot_xd_; }
  const NCPoly& dot_dd() const { return dot_dd_; }

  const NCPoly& lambda_poly() const { return lam_; }
  const NCPoly& lambda_power(int k) const {
    while (int(lampow_.size()) <= k) lampow_.push_back(mul(lampow_.back(), lam_));
    return lampow_[size_t(k)];
  }

  // degree of an element under conjugation by the scaling operator:
  // n = D-degree - X-degree, defined only for homogeneous input
  std::optional<int> lambda_grade(const NCPoly& p) const {
    std::optional<int> n;
    for (const auto& [m, c] : p.terms()) {
      int g = m.ddeg() - m.xdeg();
      if (n && *n != g) return std::nullopt;
      n = g;
    }
    return n ? n : std::optional<int>(0);
  }

  NCPoly conjugate(const NCPoly& p) const {
    NCPoly acc;
    for (const auto& [m, c] : p.terms()) {
      NCPoly cur = mul(conj_block(m.d, dbar_, cjd_), conj_block(m.x, xbar_, cjx_));
      if (m.lp != 0) {
        Monomial lm;
        lm.lp = -m.lp;
        cur = mul(cur, NCPoly::term(lm, lbar_pow(m.lp)));
      }
      acc = acc + cur.scaled(scalar_conjugate(c));
    }
    return acc;
  }

  // Decides equality in the algebra where l^2 equals the scaling element.
  // The difference is split by parity of the l-power; the odd part is
  // premultiplied by l; each part is then cleared of l by the substitution
  // l^{2j} m -> lambda^{N+j} m after shifting with the smallest power N
  // that makes all exponents nonnegative.  Both parts must vanish.
  ClearResult clear_and_equal(const NCPoly& a, const NCPoly& b) const {
    NCPoly diff = a - b;
    NCPoly parts[2];
    for (const auto& [m, c] : diff.terms())
      parts[size_t(((m.lp % 2) + 2) % 2)].add_term(m, c);

    ClearResult res;
    res.equal = true;
    for (int parity = 0; parity < 2; ++parity) {
      NCPoly part = parts[parity];
      if (parity == 1) {
        NCPoly shifted;
        for (const auto& [m, c] : part.terms()) {
          Monomial m2 = m;
          m2.lp += 1;
          shifted.add_term(m2, c);
        }
        part = shifted;
      }
      if (part.is_zero()) continue;
      int minj = 0;
      bool first = true;
      for (const auto& [m, c] : part.terms()) {
        int j = m.lp / 2;
        minj = first ? j : std::min(minj, j);
        first = false;
      }
      int N = std::max(0, -minj);
      NCPoly cleared;
      for (const auto& [m, c] : part.terms()) {
        Monomial bare = m;
        bare.lp = 0;
        cleared = cleared + mul(lambda_power(N + m.lp / 2), NCPoly::term(bare, c));
      }
      res.clearing_power = std::max(res.clearing_power, N);
      if (!cleared.is_zero()) {
        res.equal = false;
        if (res.residue.is_zero()) res.residue = cleared;
      }
    }
    return res;
  }

 private:
  explicit Algebra(Space sp) {
    int d = space_dim(sp);
    rules_.space = sp;
    rules_.dim = d;
    const Tensor* metric_inv;
    const Tensor* rinv;
    QScalar rpref(1);
    if (sp == Space::euclid3) {
      const auto& t = euclid_tensors();
      rules_.xx = detail::solve_pair_rules(t.P3);
      rules_.dd = detail::solve_pair_rules(t.P3);
      metric_inv = &t.g_inv;
      rinv = &t.rhat3_inv;
      rules_.xl_e = -2;
      rules_.dl_e = 2;
    } else {
      const auto& t = mink_tensors();
      rules_.xx = detail::solve_pair_rules(t.PA);
      rules_.dd = detail::solve_pair_rules(t.PA);
      metric_inv = &t.eta_inv;
      rinv = &t.RII_inv;
      rpref = qpow(-2);
      rules_.xl_e = 1;
      rules_.dl_e = -1;
    }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        rules_.cross0[size_t(a)][size_t(b)] =
            metric_inv->get({uint8_t(a), uint8_t(b)});
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            QScalar k =
                rpref * rinv->get({uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(e)});
            if (!k.is_zero())
              rules_.cross[size_t(a)][size_t(b)].push_back({k, uint8_t(c), uint8_t(e)});
          }
      }
    build_dots();
    build_lambda();
    build_bar();
    lampow_ = {one(), lam_};
  }

  const Tensor& metric() const {
    return space() == Space::euclid3 ? euclid_tensors().g : mink_tensors().eta;
  }

  void build_dots() {
    const Tensor& g = metric();
    for (int a = 0; a < dim(); ++a)
      for (int b = 0; b < dim(); ++b) {
        QScalar c = g.get({uint8_t(a), uint8_t(b)});
        if (c.is_zero()) continue;
        dot_xx_ = dot_xx_ + mul(x_gen(a), x_gen(b)).scaled(c);
        dot_xd_ = dot_xd_ + mul(x_gen(a), d_gen(b)).scaled(c);
        dot_dd_ = dot_dd_ + mul(d_gen(a), d_gen(b)).scaled(c);
      }
  }

  void build_lambda() {
    QScalar one_s(1);
    if (space() == Space::euclid3) {
      lam_ = NCPoly(one_s) + dot_xd_.scaled(qpow(4) - one_s) +
             mul(dot_xx_, dot_dd_).scaled(qpow(2) * (qpow(2) - one_s) * (qpow(2) - one_s));
    } else {
      QScalar u = qpow(2) - one_s;
      QScalar v = one_s + qpow(2);
      lam_ = NCPoly(one_s) + dot_xd_.scaled(qpow(-2) * (one_s - qpow(2))) +
             mul(dot_xx_, dot_dd_).scaled(qpow(-2) * u * u / (v * v));
    }
  }

  void build_bar() {
    const Tensor& g = metric();
    int d = dim();
    int off = d == 4 ? 1 : 0;
    // coordinates conjugate through the spatial metric; the time
    // coordinate is fixed
    for (int a = 0; a < d; ++a) {
      if (d == 4 && a == 0) {
        xbar_[0] = x_gen(0);
        continue;
      }
      NCPoly img;
      for (int b = off; b < d; ++b) {
        QScalar c = g.get({uint8_t(a), uint8_t(b)});
        if (!c.is_zero()) img = img + x_gen(b).scaled(c);
      }
      xbar_[size_t(a)] = img;
    }
    if (space() == Space::euclid3) {
      // dbar^A = g_{AB} l^{-2} Dbar^B with
      // Dbar^B = -q^{-6} (D^B + q^2 (q^2-1) X^B (D.D))
      std::array<NCPoly, 4> dbig;
      for (int b = 0; b < 3; ++b)
        dbig[size_t(b)] =
            (d_gen(b) + mul(x_gen(b), dot_dd_).scaled(qpow(2) * (qpow(2) - QScalar(1))))
                .scaled(QScalar() - qpow(-6));
      for (int a = 0; a < 3; ++a) {
        NCPoly img;
        for (int b = 0; b < 3; ++b) {
          QScalar c = g.get({uint8_t(a), uint8_t(b)});
          if (!c.is_zero()) img = img + mul(l_pow(-2), dbig[size_t(b)]).scaled(c);
        }
        dbar_[size_t(a)] = img;
      }
      lbar_ = qpow(-6);
    } else {
      // dbar^0 = -q^4 l^{-2} Dhat^0, dbar^A = -q^4 eta_{AB} l^{-2} Dhat^B,
      // Dhat^a = D^a + c X^a (D.D), c = q^{-2}(1-q^2)/(1+q^2)
      QScalar c = qpow(-2) * (QScalar(1) - qpow(2)) / (QScalar(1) + qpow(2));
      std::array<NCPoly, 4> dhat;
      for (int b = 0; b < 4; ++b)
        dhat[size_t(b)] = d_gen(b) + mul(x_gen(b), dot_dd_).scaled(c);
      for (int a = 0; a < 4; ++a) {
        NCPoly img;
        if (a == 0) {
          img = mul(l_pow(-2), dhat[0]);
        } else {
          for (int b = 1; b < 4; ++b) {
            QScalar k = g.get({uint8_t(a), uint8_t(b)});
            if (!k.is_zero()) img = img + mul(l_pow(-2), dhat[size_t(b)]).scaled(k);
          }
        }
        dbar_[size_t(a)] = img.scaled(QScalar() - qpow(4));
      }
      lbar_ = qpow(4);
    }
  }

  QScalar lbar_pow(int k) const {
    QScalar r(1);
    for (int i = 0; i < (k > 0 ? k : -k); ++i) r = k > 0 ? r * lbar_ : r / lbar_;
    return r;
  }

  // conjugate image of a whole block: generators reversed, each mapped to
  // its bar image, memoized on the exponent vector
  const NCPoly& conj_block(const detail::Block& b, const std::array<NCPoly, 4>& img,
                           std::unordered_map<uint32_t, NCPoly>& cache) const {
    uint32_t key = detail::pack_block(b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    NCPoly out;
    int g = detail::lowest_gen(b, dim());
    if (g < 0) {
      out = one();
    } else {
      detail::Block rest = b;
      --rest[size_t(g)];
      out = mul(conj_block(rest, img, cache), img[size_t(g)]);
    }
    return cache.emplace(key, std::move(out)).first->second;
  }

  using Block = detail::Block;
  using BlockTerms = std::vector<std::pair<Block, QScalar>>;
  struct XDTerm {
    Block x, d;
    QScalar c;
  };
  using XDTerms = std::vector<XDTerm>;

  static uint64_t key2(const Block& b, int g) {
    return uint64_t(detail::pack_block(b)) << 8 | uint64_t(uint8_t(g));
  }
  static uint64_t key_bb(const Block& a, const Block& b) {
    return uint64_t(detail::pack_block(a)) << 32 | uint64_t(detail::pack_block(b));
  }

  // x-block times one generator from the right
  const BlockTerms& insert_x_right(const Block& xa, int g) const {
    uint64_t key = key2(xa, g);
    auto it = ixr_.find(key);
    if (it != ixr_.end()) return it->second;
    BlockTerms out;
    int h = detail::highest_gen(xa, dim());
    if (h <= g) {
      Block b = xa;
      ++b[size_t(g)];
      out.push_back({b, QScalar(1)});
    } else {
      Block rest = xa;
      --rest[size_t(h)];
      for (const auto& t : rules_.xx[size_t(h)][size_t(g)])
        for (const auto& [x1, c1] : insert_x_right(rest, t.a))
          for (const auto& [x2, c2] : insert_x_right(x1, t.b))
            accumulate(out, x2, t.c * c1 * c2);
    }
    return ixr_.emplace(key, std::move(out)).first->second;
  }

  // one generator times an x-block from the left
  const BlockTerms& insert_x_left(int g, const Block& xa) const {
    uint64_t key = key2(xa, g);
    auto it = ixl_.find(key);
    if (it != ixl_.end()) return it->second;
    BlockTerms out;
    int h = detail::lowest_gen(xa, dim());
    if (h < 0 || g <= h) {
      Block b = xa;
      ++b[size_t(g)];
      out.push_back({b, QScalar(1)});
    } else {
      Block rest = xa;
      --rest[size_t(h)];
      for (const auto& t : rules_.xx[size_t(g)][size_t(h)])
        for (const auto& [x1, c1] : insert_x_left(t.b, rest))
          for (const auto& [x2, c2] : insert_x_left(t.a, x1))
            accumulate(out, x2, t.c * c1 * c2);
    }
    return ixl_.emplace(key, std::move(out)).first->second;
  }

  const BlockTerms& insert_d_right(const Block& da, int g) const {
    uint64_t key = key2(da, g);
    auto it = idr_.find(key);
    if (it != idr_.end()) return it->second;
    BlockTerms out;
    int h = detail::highest_gen(da, dim());
    if (h <= g) {
      Block b = da;
      ++b[size_t(g)];
      out.push_back({b, QScalar(1)});
    } else {
      Block rest = da;
      --rest[size_t(h)];
      for (const auto& t : rules_.dd[size_t(h)][size_t(g)])
        for (const auto& [d1, c1] : insert_d_right(rest, t.a))
          for (const auto& [d2, c2] : insert_d_right(d1, t.b))
            accumulate(out, d2, t.c * c1 * c2);
    }
    return idr_.emplace(key, std::move(out)).first->second;
  }

  static void accumulate(BlockTerms& out, const Block& b, const QScalar& c) {
    if (c.is_zero()) return;
    for (auto& [bb, cc] : out)
      if (bb == b) {
        cc = cc + c;
        return;
      }
    out.push_back({b, c});
  }
  static void accumulate_xd(XDTerms& out, const Block& x, const Block& d, const QScalar& c) {
    if (c.is_zero()) return;
    for (auto& t : out)
      if (t.x == x && t.d == d) {
        t.c = t.c + c;
        return;
      }
    out.push_back({x, d, c});
  }

  // one derivative generator moved through an x-block; resulting d-blocks
  // have degree at most one
  const XDTerms& dx_gen(int a, const Block& xv) const {
    uint64_t key = key2(xv, a);
    auto it = dxg_.find(key);
    if (it != dxg_.end()) return it->second;
    XDTerms out;
    int b = detail::lowest_gen(xv, dim());
    if (b < 0) {
      Block db{};
      db[size_t(a)] = 1;
      out.push_back({Block{}, db, QScalar(1)});
    } else {
      Block rest = xv;
      --rest[size_t(b)];
      const QScalar& c0 = rules_.cross0[size_t(a)][size_t(b)];
      if (!c0.is_zero()) out.push_back({rest, Block{}, c0});
      for (const auto& t : rules_.cross[size_t(a)][size_t(b)])
        for (const auto& u : dx_gen(t.d, rest))
          for (const auto& [x2, c2] : insert_x_left(t.x, u.x))
            accumulate_xd(out, x2, u.d, t.c * u.c * c2);
    }
    return dxg_.emplace(key, std::move(out)).first->second;
  }

  // full d-block moved through a full x-block
  const XDTerms& dx_product(const Block& dv, const Block& xv) const {
    uint64_t key = key_bb(dv, xv);
    auto it = dxp_.find(key);
    if (it != dxp_.end()) return it->second;
    XDTerms out;
    int a = detail::highest_gen(dv, dim());
    if (a < 0 || detail::block_deg(xv) == 0) {
      out.push_back({xv, dv, QScalar(1)});
    } else {
      Block rest = dv;
      --rest[size_t(a)];
      for (const auto& u : dx_gen(a, xv))
        for (const auto& v : dx_product(rest, u.x)) {
          int g = detail::highest_gen(u.d, dim());
          if (g < 0) {
            accumulate_xd(out, v.x, v.d, u.c * v.c);
          } else {
            for (const auto& [d2, c2] : insert_d_right(v.d, g))
              accumulate_xd(out, v.x, d2, u.c * v.c * c2);
          }
        }
    }
    return dxp_.emplace(key, std::move(out)).first->second;
  }

  const BlockTerms& xblock_mul(const Block& xa, const Block& xb) const {
    uint64_t key = key_bb(xa, xb);
    auto it = xbm_.find(key);
    if (it != xbm_.end()) return it->second;
    BlockTerms out;
    int g = detail::lowest_gen(xb, dim());
    if (g < 0) {
      out.push_back({xa, QScalar(1)});
    } else {
      Block rest = xb;
      --rest[size_t(g)];
      for (const auto& [x1, c1] : insert_x_right(xa, g))
        for (const auto& [x2, c2] : xblock_mul(x1, rest)) accumulate(out, x2, c1 * c2);
    }
    return xbm_.emplace(key, std::move(out)).first->second;
  }

  const BlockTerms& dblock_mul(const Block& da, const Block& db) const {
    uint64_t key = key_bb(da, db);
    auto it = dbm_.find(key);
    if (it != dbm_.end()) return it->second;
    BlockTerms out;
    int g = detail::lowest_gen(db, dim());
    if (g < 0) {
      out.push_back({da, QScalar(1)});
    } else {
      Block rest = db;
      --rest[size_t(g)];
      for (const auto& [d1, c1] : insert_d_right(da, g))
        for (const auto& [d2, c2] : dblock_mul(d1, rest)) accumulate(out, d2, c1 * c2);
    }
    return dbm_.emplace(key, std::move(out)).first->second;
  }

  void monomial_mul(const Monomial& m1, const Monomial& m2, const QScalar& c,
                    NCPoly& acc) const {
    QScalar f = c;
    if (m2.lp != 0) {
      int grade = m1.ddeg() - m1.xdeg();
      int e = space() == Space::euclid3 ? 2 * m2.lp * grade : -m2.lp * grade;
      if (e != 0) f = f * QScalar::q_power(e);
    }
    for (const auto& u : dx_product(m1.d, m2.x)) {
      QScalar fu = f * u.c;
      for (const auto& [xv, cx] : xblock_mul(m1.x, u.x))
        for (const auto& [dv, cd] : dblock_mul(u.d, m2.d)) {
          Monomial m;
          m.lp = m1.lp + m2.lp;
          m.x = xv;
          m.d = dv;
          acc.add_term(m, fu * cx * cd);
        }
    }
  }

  RuleSet rules_;
  NCPoly dot_xx_, dot_xd_, dot_dd_, lam_;
  std::array<NCPoly, 4> xbar_, dbar_;
  QScalar lbar_;
  mutable std::vector<NCPoly> lampow_;
  mutable std::unordered_map<uint64_t, BlockTerms> ixr_, ixl_, idr_, xbm_, dbm_;
  mutable std::unordered_map<uint64_t, XDTerms> dxg_, dxp_;
  mutable std::unordered_map<uint32_t, NCPoly> cjx_, cjd_;
};

inline NCPoly nc_mul(const Algebra& alg, const NCPoly& a, const NCPoly& b) {
  return alg.mul(a, b);
}
inline NCPoly nc_conjugate(const Algebra& alg, const NCPoly& p) {
  return alg.conjugate(p);
}
inline ClearResult clear_and_equal(const Algebra& alg, const NCPoly& a, const NCPoly& b) {
  return alg.clear_and_equal(a, b);
}

// ---- word-level rewriting, used for confluence checks and as an
// ---- independent oracle against the monomial engine

// atoms 0..dim-1 are coordinates, dim..2*dim-1 are derivatives
using Word = std::vector<uint8_t>;
using WordSum = std::map<Word, QScalar>;

namespace detail {

inline void word_add(WordSum& s, const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = s.find(w);
  if (it == s.end()) {
    s.emplace(w, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) s.erase(it);
  }
}

inline bool pair_reducible(const RuleSet& rs, uint8_t u, uint8_t v) {
  int d = rs.dim;
  bool ux = u < d, vx = v < d;
  if (ux && vx) return u > v;
  if (!ux && !vx) return u > v;
  return !ux && vx;  // derivative before coordinate
}

// expands the pair at position i into the rewritten sum
inline void word_apply(const RuleSet& rs, const Word& w, size_t i, const QScalar& c,
                       WordSum& out) {
  int d = rs.dim;
  uint8_t u = w[i], v = w[i + 1];
  auto emit2 = [&](uint8_t a, uint8_t b, const QScalar& k) {
    Word nw = w;
    nw[i] = a;
    nw[i + 1] = b;
    word_add(out, nw, k);
  };
  if (u < d && v < d) {
    for (const auto& t : rs.xx[u][v]) emit2(t.a, t.b, c * t.c);
  } else if (u >= d && v >= d) {
    for (const auto& t : rs.dd[u - size_t(d)][v - size_t(d)])
      emit2(uint8_t(t.a + d), uint8_t(t.b + d), c * t.c);
  } else {
    size_t a = u - size_t(d), b = v;
    const QScalar& c0 = rs.cross0[a][b];
    if (!c0.is_zero()) {
      Word nw;
      nw.reserve(w.size() - 2);
      for (size_t k = 0; k < w.size(); ++k)
        if (k != i && k != i + 1) nw.push_back(w[k]);
      word_add(out, nw, c * c0);
    }
    for (const auto& t : rs.cross[a][b]) emit2(t.x, uint8_t(t.d + d), c * t.c);
  }
}

inline int first_reducible(const RuleSet& rs, const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (pair_reducible(rs, w[i], w[i + 1])) return int(i);
  return -1;
}

}  // namespace detail

inline WordSum word_reduce(const RuleSet& rs, const WordSum& input) {
  WordSum done, pending = input;
  while (!pending.empty()) {
    auto it = pending.begin();
    Word w = it->first;
    QScalar c = it->second;
    pending.erase(it);
    int i = detail::first_reducible(rs, w);
    if (i < 0) {
      detail::word_add(done, w, c);
    } else {
      WordSum next;
      detail::word_apply(rs, w, size_t(i), c, next);
      for (const auto& [nw, nc] : next) detail::word_add(pending, nw, nc);
    }
  }
  return done;
}

inline WordSum word_reduce(const RuleSet& rs, const Word& w) {
  WordSum s;
  s.emplace(w, QScalar(1));
  return word_reduce(rs, s);
}

struct OverlapReport {
  bool ok = true;
  int checked = 0;
  int failed = 0;
};

// For every length-three word the two one-step rewrite choices must meet
// at the same normal form; this is the local-confluence certificate for
// the rule set.
inline OverlapReport overlap_check(const RuleSet& rs) {
  OverlapReport rep;
  int n = 2 * rs.dim;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Word w = {uint8_t(a), uint8_t(b), uint8_t(c)};
        WordSum left, right;
        if (detail::pair_reducible(rs, w[0], w[1])) {
          detail::word_apply(rs, w, 0, QScalar(1), left);
        } else {
          left.emplace(w, QScalar(1));
        }
        if (detail::pair_reducible(rs, w[1], w[2])) {
          detail::word_apply(rs, w, 1, QScalar(1), right);
        } else {
          right.emplace(w, QScalar(1));
        }
        ++rep.checked;
        if (!(word_reduce(rs, left) == word_reduce(rs, right))) {
          rep.ok = false;
          ++rep.failed;
        }
      }
  return rep;
}

// bridge from a reduced word sum to the monomial representation
inline NCPoly words_to_poly(const RuleSet& rs, const WordSum& s) {
  NCPoly p;
  for (const auto& [w, c] : s) {
    Monomial m;
    for (uint8_t a : w) {
      if (a < rs.dim)
        ++m.x[a];
      else
        ++m.d[size_t(a - rs.dim)];
    }
    p.add_term(m, c);
  }
  return p;
}

inline std::string nc_debug(const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "{" << scalar_str(c) << "}";
    if (m.lp) os << " l^" << m.lp;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m.x[size_t(i)]; ++k) os << " x" << i;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m.d[size_t(i)]; ++k) os << " d" << i;
  }
  return os.str();
}

}  // namespace qnc
