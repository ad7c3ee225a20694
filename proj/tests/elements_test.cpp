#include "qnc/elements.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

using namespace qnc;

namespace {

QScalar one() { return QScalar(1); }
QScalar ihalf() { return QScalar::i_unit() * QScalar::rational(BigRat(1, 2)); }

/*
 * Oracles for the momentum components.  The derivative square and the
 * conjugate derivative are substituted by hand with explicitly entered
 * metric numbers, bypassing both the tensor layer and the catalog.
 */

NCPoly euclid_dd_by_hand(const Algebra& A) {
  return A.mul(A.d_gen(0), A.d_gen(2)).scaled(-qpow(1)) +
         A.mul(A.d_gen(1), A.d_gen(1)) +
         A.mul(A.d_gen(2), A.d_gen(0)).scaled(-qpow(-1));
}

NCPoly euclid_p3_by_hand(const Algebra& A) {
  NCPoly dd = euclid_dd_by_hand(A);
  NCPoly big = (A.d_gen(1) + A.mul(A.x_gen(1), dd).scaled(qpow(2) * (qpow(2) - one())))
                   .scaled(QScalar() - qpow(-6));
  NCPoly dbar3 = A.mul(A.l_pow(-2), big);
  return A.d_gen(1).scaled(QScalar() - ihalf()) + dbar3.scaled(ihalf());
}

NCPoly mink_dd_by_hand(const Algebra& A) {
  return A.mul(A.d_gen(0), A.d_gen(0)).scaled(QScalar(-1)) +
         A.mul(A.d_gen(1), A.d_gen(3)).scaled(-qpow(1)) +
         A.mul(A.d_gen(2), A.d_gen(2)) +
         A.mul(A.d_gen(3), A.d_gen(1)).scaled(-qpow(-1));
}

NCPoly mink_p0_by_hand(const Algebra& A) {
  QScalar c = qpow(-2) * (one() - qpow(2)) / (one() + qpow(2));
  NCPoly dhat0 = A.mul(A.l_pow(-2), A.d_gen(0) + A.mul(A.x_gen(0), mink_dd_by_hand(A)).scaled(c));
  return (A.d_gen(0) + dhat0.scaled(qpow(4))).scaled(QScalar() - ihalf());
}

std::vector<std::string> euclid_expected_names() {
  std::vector<std::string> n = {"Lambda", "W", "tau", "T+", "T-", "T3"};
  for (const char* s : {"+", "3", "-"}) {
    n.push_back(std::string("dbar") + s);
    n.push_back(std::string("P") + s);
    n.push_back(std::string("L") + s);
    for (const char* t : {"+", "3", "-"}) n.push_back(std::string("M") + s + t);
  }
  return n;
}

std::vector<std::string> mink_expected_names() {
  std::vector<std::string> n = {"Lambda", "U", "rho", "sigma"};
  for (const char* s : {"0", "+", "3", "-"}) {
    n.push_back(std::string("dhat") + s);
    n.push_back(std::string("P") + s);
    for (const char* t : {"0", "+", "3", "-"}) n.push_back(std::string("V") + s + t);
  }
  for (const char* s : {"+", "3", "-"}) {
    n.push_back(std::string("R") + s);
    n.push_back(std::string("S") + s);
  }
  return n;
}

}  // namespace

TEST(Elements, CatalogCoversBothSpaces) {
  const ElementCatalog& eu = euclid_elements();
  const ElementCatalog& mk = mink_elements();

  auto eun = euclid_expected_names();
  EXPECT_EQ(eu.names().size(), eun.size());
  for (const std::string& n : eun) EXPECT_TRUE(eu.has(n)) << n;

  auto mkn = mink_expected_names();
  EXPECT_EQ(mk.names().size(), mkn.size());
  for (const std::string& n : mkn) EXPECT_TRUE(mk.has(n)) << n;

  EXPECT_FALSE(eu.has("U"));
  EXPECT_FALSE(mk.has("W"));
  EXPECT_THROW(eu.def("nosuch"), std::domain_error);
  EXPECT_THROW(mk.def("W"), std::domain_error);
}

TEST(Elements, ScalingElementStartsAtOne) {
  for (Space sp : {Space::euclid3, Space::mink4}) {
    const ElementDef& d = element(sp, "Lambda");
    ASSERT_EQ(d.parts.size(), 1u);
    EXPECT_EQ(d.parts[0].ell_offset, 0);
    EXPECT_EQ(d.parts[0].tau_halves, 0);
    auto it = d.parts[0].avatar.terms().find(Monomial{});
    ASSERT_TRUE(it != d.parts[0].avatar.terms().end());
    EXPECT_TRUE(it->second == one());
    EXPECT_EQ(lambda_grade(element_catalog(sp).algebra(), d.parts[0].avatar), 0);
  }
}

TEST(Elements, MomentumMatchesDirectSubstitution) {
  const ElementCatalog& eu = euclid_elements();
  EXPECT_TRUE(eu.realize("P3") == euclid_p3_by_hand(eu.algebra()));

  const ElementCatalog& mk = mink_elements();
  EXPECT_TRUE(mk.realize("P0") == mink_p0_by_hand(mk.algebra()));
}

TEST(Elements, ConjugateDerivativeNullContractions) {
  // the conjugate derivative satisfies the same antisymmetric-projector
  // relations as the plain derivative
  const ElementCatalog& eu = euclid_elements();
  const Algebra& A = eu.algebra();
  const EuclidTensors& T = euclid_tensors();
  NCPoly dbar[3] = {eu.realize("dbar+"), eu.realize("dbar3"), eu.realize("dbar-")};
  for (int a = 0; a < 3; ++a) {
    NCPoly acc;
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) {
        QScalar e = T.eps3.get({uint8_t(d), uint8_t(c), uint8_t(a)});
        if (!e.is_zero()) acc = acc + A.mul(dbar[c], dbar[d]).scaled(e);
      }
    EXPECT_TRUE(acc.is_zero()) << a;
  }

  const ElementCatalog& mk = mink_elements();
  const Algebra& B = mk.algebra();
  const MinkTensors& M = mink_tensors();
  NCPoly dhat[4] = {mk.realize("dhat0"), mk.realize("dhat+"), mk.realize("dhat3"),
                    mk.realize("dhat-")};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      NCPoly accp, accm;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          QScalar wp = M.Pplus.get({uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)});
          if (!wp.is_zero()) accp = accp + B.mul(dhat[c], dhat[d]).scaled(wp);
          QScalar wm = M.Pminus.get({uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)});
          if (!wm.is_zero()) accm = accm + B.mul(dhat[c], dhat[d]).scaled(wm);
        }
      EXPECT_TRUE(accp.is_zero()) << a << b;
      EXPECT_TRUE(accm.is_zero()) << a << b;
    }
}

TEST(Elements, AngularMomentumRouteThroughLiteralForm) {
  // second route: multiply the literal l * X^C dbar^D eps contraction and
  // let the engine push X past l^{-2}
  const ElementCatalog& eu = euclid_elements();
  const Algebra& A = eu.algebra();
  const EuclidTensors& T = euclid_tensors();
  static const char* sym[3] = {"+", "3", "-"};
  for (int a = 0; a < 3; ++a) {
    NCPoly acc;
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) {
        QScalar e = T.eps3.get({uint8_t(d), uint8_t(c), uint8_t(a)});
        if (!e.is_zero())
          acc = acc + A.mul(A.x_gen(c), eu.realize(std::string("dbar") + sym[d])).scaled(e);
      }
    NCPoly literal = A.mul(A.l_pow(1), acc);
    EXPECT_TRUE(literal == eu.realize(std::string("L") + sym[a])) << a;
  }
}

TEST(Elements, BoostRouteThroughLiteralForm) {
  const ElementCatalog& mk = mink_elements();
  const Algebra& B = mk.algebra();
  const MinkTensors& M = mink_tensors();
  static const char* sym[4] = {"0", "+", "3", "-"};
  NCPoly dhat[4] = {mk.realize("dhat0"), mk.realize("dhat+"), mk.realize("dhat3"),
                    mk.realize("dhat-")};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      NCPoly acc;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          QScalar w = M.PA.get({uint8_t(a), uint8_t(b), uint8_t(k), uint8_t(l)});
          if (!w.is_zero()) acc = acc + B.mul(B.x_gen(k), dhat[l]).scaled(w);
        }
      NCPoly literal = B.mul(B.l_pow(1), acc);
      EXPECT_TRUE(literal == mk.realize(std::string("V") + sym[a] + sym[b])) << a << b;
    }
}

TEST(Elements, ScalingFoldOfGroupLikeElement) {
  // two-part form l + l^{-1} (...) against the stored one-part avatar;
  // they agree exactly in the quotient where l^2 is the scaling element
  const ElementCatalog& mk = mink_elements();
  const Algebra& B = mk.algebra();
  const MinkTensors& M = mink_tensors();
  static const char* sym[4] = {"0", "+", "3", "-"};
  NCPoly xdot;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      QScalar k = M.eta.get({uint8_t(a), uint8_t(b)});
      if (!k.is_zero())
        xdot = xdot + B.mul(B.x_gen(a), mk.realize(std::string("dhat") + sym[b])).scaled(k);
    }
  QScalar cu = qpow(2) * (qpow(2) - one()) / (qpow(2) + one());
  NCPoly literal = B.mul(B.l_pow(1), B.one() + xdot.scaled(cu));
  auto res = clear_and_equal(B, literal, mk.realize("U"));
  EXPECT_TRUE(res.equal);
}

TEST(Elements, HermitianElementsOfThreeSpace) {
  const ElementCatalog& eu = euclid_elements();
  const Algebra& A = eu.algebra();

  NCPoly w = eu.realize("W");
  EXPECT_TRUE(clear_and_equal(A, A.conjugate(w), w).equal);

  NCPoly p3 = eu.realize("P3");
  EXPECT_TRUE(clear_and_equal(A, A.conjugate(p3), p3).equal);

  // conjugation lowers the vector index through the metric
  NCPoly lplus = eu.realize("L+");
  EXPECT_TRUE(clear_and_equal(A, A.conjugate(lplus), eu.realize("L-").scaled(-qpow(1))).equal);
}

TEST(Elements, HermitianElementsOfFourSpace) {
  const ElementCatalog& mk = mink_elements();
  const Algebra& B = mk.algebra();

  NCPoly u = mk.realize("U");
  EXPECT_TRUE(clear_and_equal(B, B.conjugate(u), u).equal);

  NCPoly p0 = mk.realize("P0");
  EXPECT_TRUE(clear_and_equal(B, B.conjugate(p0), p0).equal);
  NCPoly p3 = mk.realize("P3");
  EXPECT_TRUE(clear_and_equal(B, B.conjugate(p3), p3).equal);

  // selfdual and antiselfdual components swap under conjugation
  NCPoly rplus = mk.realize("R+");
  EXPECT_TRUE(clear_and_equal(B, B.conjugate(rplus), mk.realize("S-").scaled(qpow(1))).equal);

  NCPoly rho = mk.realize("rho");
  EXPECT_TRUE(clear_and_equal(B, B.conjugate(rho), NCPoly() - mk.realize("sigma")).equal);
}

TEST(Elements, AntisymmetricFormContractsBack) {
  const ElementCatalog& eu = euclid_elements();
  const EuclidTensors& T = euclid_tensors();
  static const char* sym[3] = {"+", "3", "-"};
  for (int f = 0; f < 3; ++f) {
    NCPoly lhs;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        QScalar e = T.eps_low.get({uint8_t(b), uint8_t(a), uint8_t(f)});
        if (!e.is_zero())
          lhs = lhs + eu.realize(std::string("M") + sym[a] + sym[b]).scaled(e);
      }
    NCPoly rhs;
    for (int c = 0; c < 3; ++c) {
      QScalar g = T.g.get({uint8_t(f), uint8_t(c)});
      if (!g.is_zero()) rhs = rhs + eu.realize(std::string("L") + sym[c]).scaled(g);
    }
    EXPECT_TRUE(lhs == rhs.scaled(one() + qpow(4))) << f;
  }
}

TEST(Elements, BoostDecompositionInverts) {
  const ElementCatalog& mk = mink_elements();
  static const char* sym[4] = {"0", "+", "3", "-"};

  EXPECT_TRUE(mk.realize("V00").is_zero());
  for (int a = 1; a < 4; ++a) {
    NCPoly r = mk.realize(std::string("R") + sym[a]);
    NCPoly s = mk.realize(std::string("S") + sym[a]);
    EXPECT_TRUE(mk.realize(std::string("V") + sym[a] + "0") == r + s.scaled(qpow(2))) << a;
    EXPECT_TRUE(mk.realize(std::string("V0") + sym[a]) ==
                NCPoly() - r.scaled(qpow(2)) - s)
        << a;
  }
}

TEST(Elements, GroupLikeExchangeWithCoordinates) {
  // tau^{-1/2} scales the coordinate ladder by q^{+-2}
  const ElementCatalog& eu = euclid_elements();
  const Algebra& A = eu.algebra();
  NCPoly tau = eu.realize("tau");
  struct Row {
    int gen;
    QScalar f;
  };
  const Row rows[3] = {{0, qpow(2)}, {1, one()}, {2, qpow(-2)}};
  for (const Row& r : rows) {
    NCPoly lhs = A.mul(tau, A.x_gen(r.gen));
    NCPoly rhs = A.mul(A.x_gen(r.gen), tau).scaled(r.f);
    EXPECT_TRUE(clear_and_equal(A, lhs, rhs).equal) << r.gen;
  }
}

TEST(Elements, TauPowersBlockPlainRealization) {
  const ElementCatalog& eu = euclid_elements();
  const ElementDef& tp = eu.def("T+");
  ASSERT_EQ(tp.parts.size(), 1u);
  EXPECT_EQ(tp.parts[0].ell_offset, -1);
  EXPECT_EQ(tp.parts[0].tau_halves, 1);
  EXPECT_THROW(eu.realize("T+"), std::domain_error);
  EXPECT_THROW(eu.realize("T3"), std::domain_error);
  EXPECT_NO_THROW(eu.realize("tau"));
}

TEST(Elements, GradeDiagnostics) {
  const Algebra& A = Algebra::euclid();
  EXPECT_EQ(lambda_grade(A, A.x_gen(1)), -1);
  EXPECT_EQ(lambda_grade(A, A.d_gen(1)), 1);
  EXPECT_EQ(lambda_grade(A, euclid_elements().realize("P3")), 1);
  EXPECT_EQ(lambda_grade(A, NCPoly()), 0);
  try {
    lambda_grade(A, A.x_gen(0) + A.d_gen(0));
    FAIL() << "expected a grade mixture error";
  } catch (const std::domain_error& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("-1"), std::string::npos);
    EXPECT_NE(msg.find('1'), std::string::npos);
  }
}
