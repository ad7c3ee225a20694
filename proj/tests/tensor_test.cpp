#include "qnc/spaces.hpp"

#include <gtest/gtest.h>

using namespace qnc;

namespace {
Index ix(std::initializer_list<int> v) {
  Index r;
  for (int x : v) r.push_back(static_cast<uint8_t>(x));
  return r;
}
QScalar one() { return QScalar(1); }
}  // namespace

TEST(Tensor, ContractMatchesHandExpansion) {
  // metric times inverse metric is the identity, both contraction orders
  const auto& t = euclid_tensors();
  Tensor id1 = contract(t.g_inv, 1, t.g, 0);  // g^{AB} g_{BC}
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      EXPECT_TRUE(id1.get(ix({a, c})) == (a == c ? one() : QScalar()));
  Tensor id2 = contract(t.g, 1, t.g_inv, 0);  // g_{AB} g^{BC}
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      EXPECT_TRUE(id2.get(ix({a, c})) == (a == c ? one() : QScalar()));
}

TEST(Tensor, LoweredEpsilonTable) {
  // frozen all-lower epsilon entries, hand-computed from the mixed table
  // by closing the upper slot with the metric
  const auto& t = euclid_tensors();
  EXPECT_TRUE(t.eps_low.get(ix({0, 2, 1})) == qpow(1));                 // +-3
  EXPECT_TRUE(t.eps_low.get(ix({2, 0, 1})) == -qpow(1));                // -+3
  EXPECT_TRUE(t.eps_low.get(ix({1, 1, 1})) == one() - qpow(2));        // 333
  EXPECT_TRUE(t.eps_low.get(ix({0, 1, 2})) == -qpow(-1));              // +3-
  EXPECT_TRUE(t.eps_low.get(ix({1, 0, 2})) == qpow(1));                // 3+-
  EXPECT_TRUE(t.eps_low.get(ix({2, 1, 0})) == qpow(3));                // -3+
  EXPECT_TRUE(t.eps_low.get(ix({1, 2, 0})) == -qpow(1));               // 3-+
  EXPECT_EQ(t.eps_low.components().size(), 7u);
}

TEST(Tensor, RaisedEpsilonSpotValues) {
  // eps^{-+3} = q and eps^{F++} = 0, derived by contracting twice with
  // the inverse metric by hand
  const auto& t = euclid_tensors();
  EXPECT_TRUE(t.eps_up.get(ix({2, 0, 1})) == qpow(1));
  for (int f = 0; f < 3; ++f)
    EXPECT_TRUE(t.eps_up.get(ix({f, 0, 0})).is_zero());
}

TEST(Tensor, ExchangeMatrixSpotValues) {
  // frozen entries of the three-space exchange matrix, each expanded by
  // hand from delta*delta - q^-4 eps eps - q^-4 (q^2-1) g g
  const auto& t = euclid_tensors();
  auto R = [&](int a, int b, int c, int d) { return t.rhat3.get(ix({a, b, c, d})); };
  EXPECT_TRUE(R(0, 0, 0, 0) == one());                       // (++,++)
  EXPECT_TRUE(R(0, 1, 0, 1).is_zero());                      // (+3,+3)
  EXPECT_TRUE(R(0, 1, 1, 0) == qpow(-2));                    // (+3,3+)
  EXPECT_TRUE(R(1, 0, 1, 0) == one() - qpow(-4));            // (3+,3+)
  EXPECT_TRUE(R(0, 2, 2, 0) == qpow(-4));                    // (+-,-+)
  EXPECT_TRUE(R(1, 1, 1, 1) == qpow(-2));                    // (33,33)
  EXPECT_TRUE(R(1, 1, 2, 0) == qpow(-1) - qpow(-5));         // (33,-+)
  EXPECT_TRUE(R(2, 0, 2, 0) ==
              (one() - qpow(-2)) * (one() - qpow(-4)));      // (-+,-+)
}

TEST(Tensor, ExchangeMatrixInverse) {
  const auto& t = euclid_tensors();
  Matrix r = as_matrix(t.rhat3);
  Matrix rinv = as_matrix(t.rhat3_inv);
  EXPECT_TRUE(matrix_mul(r, rinv) == matrix_identity(9));
  EXPECT_TRUE(matrix_mul(rinv, r) == matrix_identity(9));
}

TEST(Tensor, ProjectorAlgebraThreeSpace) {
  const auto& t = euclid_tensors();
  Matrix p1 = as_matrix(t.P1), p3 = as_matrix(t.P3), p5 = as_matrix(t.P5);
  EXPECT_TRUE(matrix_mul(p1, p1) == p1);
  EXPECT_TRUE(matrix_mul(p3, p3) == p3);
  EXPECT_TRUE(matrix_mul(p5, p5) == p5);
  EXPECT_TRUE(matrix_mul(p1, p3).is_zero());
  EXPECT_TRUE(matrix_mul(p3, p1).is_zero());
  EXPECT_TRUE(matrix_mul(p1, p5).is_zero());
  EXPECT_TRUE(matrix_mul(p5, p3).is_zero());
  EXPECT_TRUE(p1 + p3 + p5 == matrix_identity(9));
  // frozen spin-1 block entry: P3^{+3}_{+3} = q^4/(1+q^4), hand-computed
  // from the double epsilon contraction
  QScalar expect = qpow(4) / (one() + qpow(4));
  EXPECT_TRUE(t.P3.get(ix({0, 1, 0, 1})) == expect);
}

TEST(Tensor, EigenDecompositionThreeSpace) {
  const auto& t = euclid_tensors();
  Matrix r = as_matrix(t.rhat3);
  Matrix combo = as_matrix(t.P5) - as_matrix(t.P3).scaled(qpow(-4)) +
                 as_matrix(t.P1).scaled(qpow(-6));
  EXPECT_TRUE(r == combo);
  // characteristic equation (R-1)(R+q^-4)(R-q^-6) = 0
  Matrix id = matrix_identity(9);
  Matrix m = matrix_mul(matrix_mul(r - id, r + id.scaled(qpow(-4))),
                        r - id.scaled(qpow(-6)));
  EXPECT_TRUE(m.is_zero());
}

TEST(Tensor, ResolventProjectorsMatchDirectBuild) {
  // projectors rebuilt from the characteristic polynomial of the
  // exchange matrix; the normalizations were solved by hand from the
  // eigenvalues 1, -q^-4, q^-6
  const auto& t = euclid_tensors();
  Matrix r = as_matrix(t.rhat3);
  Matrix id = matrix_identity(9);
  QScalar c5 = qpow(10) / ((qpow(4) + one()) * (qpow(6) - one()));
  QScalar c3 = qpow(10) / ((qpow(4) + one()) * (qpow(2) + one()));
  QScalar c1 = qpow(12) / ((qpow(2) + one()) * (one() - qpow(6)));
  Matrix p5 = matrix_mul(r + id.scaled(qpow(-4)), r - id.scaled(qpow(-6))).scaled(c5);
  Matrix p3 = matrix_mul(r - id, r - id.scaled(qpow(-6))).scaled(c3);
  Matrix p1 = matrix_mul(r - id, r + id.scaled(qpow(-4))).scaled(c1);
  EXPECT_TRUE(p5 == as_matrix(t.P5));
  EXPECT_TRUE(p3 == as_matrix(t.P3));
  EXPECT_TRUE(p1 == as_matrix(t.P1));
}

TEST(Tensor, BraidRelationThreeSpace) {
  const auto& t = euclid_tensors();
  EXPECT_TRUE(braid_holds(as_matrix(t.rhat3), 3));
  EXPECT_TRUE(braid_holds(as_matrix(t.rhat3_inv), 3));
  // negative control: perturbing one entry must break the braid relation
  Matrix bad = as_matrix(t.rhat3);
  bad.at(4, 4) = bad.at(4, 4) + one();
  EXPECT_FALSE(braid_holds(bad, 3));
}

TEST(Tensor, FourSpaceMetric) {
  const auto& m = mink_tensors();
  Tensor id = contract(m.eta_inv, 1, m.eta, 0);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      EXPECT_TRUE(id.get(ix({a, c})) == (a == c ? one() : QScalar()));
  EXPECT_TRUE(m.eta.get(ix({0, 0})) == -one());
}

TEST(Tensor, SelfDualProjectorFrozenEntries) {
  // spot values transcribed from the block tables and checked by hand
  const auto& m = mink_tensors();
  QScalar f = one() / ((one() + qpow(2)) * (one() + qpow(2)));
  EXPECT_TRUE(m.Pplus.get(ix({1, 0, 1, 0})) == qpow(2) * f);   // (+0,+0)
  EXPECT_TRUE(m.Pplus.get(ix({1, 0, 0, 1})) == -f);            // (+0,0+)
  EXPECT_TRUE(m.Pplus.get(ix({0, 1, 1, 0})) == -qpow(4) * f);  // (0+,+0)
  EXPECT_TRUE(m.Pplus.get(ix({1, 0, 2, 1})) == f);             // (+0,3+), eps_{+3}^+ = 1
  EXPECT_TRUE(m.Pminus.get(ix({1, 0, 0, 1})) == -qpow(4) * f);
  EXPECT_TRUE(m.Pminus.get(ix({1, 0, 2, 1})) == -qpow(2) * f);
  EXPECT_TRUE(m.PT.get(ix({0, 0, 0, 0})) == qpow(2) * f);
  // the all-spatial blocks of the two dual projectors coincide, so the
  // four-space epsilon vanishes there
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c)
        for (int d = 1; d <= 3; ++d)
          EXPECT_TRUE(m.eps4.get(ix({a, b, c, d})).is_zero());
}

TEST(Tensor, ProjectorAlgebraFourSpace) {
  const auto& m = mink_tensors();
  Matrix ps = as_matrix(m.PS), pt = as_matrix(m.PT);
  Matrix pp = as_matrix(m.Pplus), pm = as_matrix(m.Pminus);
  EXPECT_TRUE(matrix_mul(pp, pp) == pp);
  EXPECT_TRUE(matrix_mul(pm, pm) == pm);
  EXPECT_TRUE(matrix_mul(pt, pt) == pt);
  EXPECT_TRUE(matrix_mul(ps, ps) == ps);
  const Matrix* all[] = {&ps, &pt, &pp, &pm};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      EXPECT_TRUE(matrix_mul(*all[a], *all[b]).is_zero()) << a << "," << b;
    }
  EXPECT_TRUE(ps + pt + pp + pm == matrix_identity(16));
}

TEST(Tensor, ExchangeMatricesFourSpace) {
  const auto& m = mink_tensors();
  Matrix ri = as_matrix(m.RI), rii = as_matrix(m.RII);
  EXPECT_TRUE(matrix_mul(ri, as_matrix(m.RI_inv)) == matrix_identity(16));
  EXPECT_TRUE(matrix_mul(rii, as_matrix(m.RII_inv)) == matrix_identity(16));
  // alternative forms via the resolution of the identity
  Matrix id = matrix_identity(16);
  Matrix pp = as_matrix(m.Pplus), pm = as_matrix(m.Pminus);
  Matrix ri2 = id - pp.scaled(QScalar(1) + qpow(2)) - pm.scaled(QScalar(1) + qpow(-2));
  EXPECT_TRUE(ri == ri2);
  Matrix rii2 = id.scaled(qpow(-2)) + as_matrix(m.PT).scaled(qpow(2) - qpow(-2)) -
                as_matrix(m.PA).scaled(QScalar(1) + qpow(-2));
  EXPECT_TRUE(rii == rii2);
  EXPECT_TRUE(braid_holds(ri, 4));
}

TEST(Tensor, MatrixViewRoundTrip) {
  const auto& t = euclid_tensors();
  Matrix r = as_matrix(t.rhat3);
  EXPECT_TRUE(matrix_to_tensor(r, Space::euclid3) == t.rhat3);
  const auto& m = mink_tensors();
  EXPECT_TRUE(matrix_to_tensor(as_matrix(m.RII), Space::mink4) == m.RII);
}

TEST(Tensor, PairOrderIsPermutation) {
  for (Space sp : {Space::euclid3, Space::mink4})
    for (bool block : {false, true}) {
      auto p = pair_order(sp, block);
      int n = space_dim(sp) * space_dim(sp);
      ASSERT_EQ(static_cast<int>(p.size()), n);
      std::vector<bool> seen(static_cast<size_t>(n));
      for (int v : p) {
        ASSERT_GE(v, 0);
        ASSERT_LT(v, n);
        EXPECT_FALSE(seen[static_cast<size_t>(v)]);
        seen[static_cast<size_t>(v)] = true;
      }
    }
}

TEST(Tensor, TransposeAndOuterShapes) {
  const auto& t = euclid_tensors();
  Tensor gg = outer(t.g_inv, t.g);
  EXPECT_EQ(gg.nslots(), 4);
  EXPECT_TRUE(gg.get(ix({0, 2, 1, 1})) == -qpow(1));  // g^{+-} g_{33}
  Tensor tr = transpose(gg, {2, 3, 0, 1});
  EXPECT_TRUE(tr.get(ix({1, 1, 0, 2})) == -qpow(1));
  EXPECT_FALSE(tr.slot_up(0));
  EXPECT_TRUE(tr.slot_up(2));
}
