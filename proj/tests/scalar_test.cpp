#include "qnc/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qnc;

namespace {

QScalar qp(int e) { return QScalar::q_power(e); }

// Deterministic sample stream of scalars with small numerators and
// denominators drawn from the usual structural factors.
class SampleGen {
 public:
  explicit SampleGen(unsigned seed) : rng_(seed) {}

  QScalar next(bool with_s = true) {
    RatFunc a = rat();
    RatFunc b = with_s && coin() ? rat() : RatFunc();
    return QScalar(a, b);
  }

  QScalar next_nonzero(bool with_s = true) {
    for (;;) {
      QScalar x = next(with_s);
      if (!x.is_zero()) return x;
    }
  }

 private:
  std::mt19937 rng_;
  bool coin() { return (rng_() & 1u) != 0; }
  int small() { return static_cast<int>(rng_() % 7) - 3; }
  Poly poly() {
    Poly p;
    int terms = 1 + static_cast<int>(rng_() % 3);
    for (int t = 0; t < terms; ++t) {
      GaussRat c(BigRat(small()), coin() ? BigRat(small()) : BigRat(0));
      p = p + Poly::monomial(c, static_cast<int>(rng_() % 5));
    }
    return p;
  }
  RatFunc rat() {
    Poly d;
    do {
      d = poly();
    } while (d.is_zero());
    return RatFunc(poly(), d);
  }
};

// Value arithmetic for eval results: pairs (a, b) standing for a + b*r
// with r^2 = 1 + q0^2.
ScalarValue val_mul(const ScalarValue& x, const ScalarValue& y,
                    const BigRat& q0) {
  GaussRat r2 = GaussRat(BigRat(1) + q0 * q0);
  return {x.va * y.va + x.vb * y.vb * r2, x.va * y.vb + x.vb * y.va};
}
ScalarValue val_add(const ScalarValue& x, const ScalarValue& y) {
  return {x.va + y.va, x.vb + y.vb};
}

}  // namespace

TEST(ScalarField, CanonicalFractionReduction) {
  // (q^2 - 1)/(q - 1) must canonicalize to q + 1.
  RatFunc f(poly_q_power(2) - Poly(1), poly_q_power(1) - Poly(1));
  EXPECT_EQ(ratfunc_str(f), "q + 1");
  RatFunc g(poly_q_power(4) - Poly(1), poly_q_power(2) - Poly(1));
  EXPECT_EQ(ratfunc_str(g), "q^2 + 1");
  EXPECT_TRUE(f * f == RatFunc(poly_q_power(2) + Poly(2) * poly_q_power(1) + Poly(1)));
}

TEST(ScalarField, MonicDenominatorInvariant) {
  // 2 q^2 + 2 in the denominator becomes monic; the 2 moves to the numerator.
  RatFunc f(poly_q_power(1), Poly(2) * poly_q_power(2) + Poly(2));
  EXPECT_EQ(poly_str(f.den()), "q^2 + 1");
  EXPECT_EQ(ratfunc_str(f), "1/2*q/(q^2 + 1)");
  // Gaussian leading units are normalized away as well.
  RatFunc g(Poly::monomial(gauss_i(), 1), Poly(gauss_i()));
  EXPECT_EQ(ratfunc_str(g), "q");
}

TEST(ScalarField, LaurentPrinting) {
  QScalar lam = qp(1) - qp(-1);
  EXPECT_EQ(scalar_str(lam), "q - q^-1");
  RatFunc f(Poly(1) - poly_q_power(4), poly_q_power(4));
  EXPECT_EQ(ratfunc_str(f), "-1 + q^-4");
  EXPECT_EQ(scalar_str(qp(-2)), "q^-2");
  EXPECT_EQ(scalar_str(QScalar(1) - qp(-2) - qp(-4) + qp(-6)),
            "1 - q^-2 - q^-4 + q^-6");
}

TEST(ScalarField, SSquareIsOnePlusQSquared) {
  QScalar s = QScalar::s_unit();
  EXPECT_TRUE(s * s == QScalar(1) + qp(2));
  // 1/s = s/(1+q^2)
  QScalar inv = QScalar(1) / s;
  EXPECT_TRUE(inv * s == QScalar(1));
  EXPECT_TRUE(inv == QScalar(RatFunc(), RatFunc(Poly(1), poly_q_power(2) + Poly(1))));
}

TEST(ScalarField, ConjugationFixesQAndSAndFlipsI) {
  QScalar i = QScalar::i_unit();
  EXPECT_TRUE(scalar_conjugate(i) == -i);
  QScalar s = QScalar::s_unit();
  EXPECT_TRUE(scalar_conjugate(s) == s);
  EXPECT_TRUE(scalar_conjugate(qp(3)) == qp(3));

  SampleGen gen(7);
  for (int t = 0; t < 100; ++t) {
    QScalar x = gen.next();
    EXPECT_TRUE(scalar_conjugate(scalar_conjugate(x)) == x);
    QScalar y = gen.next();
    // conjugation is a ring homomorphism on this commutative field
    EXPECT_TRUE(scalar_conjugate(x * y) ==
                scalar_conjugate(x) * scalar_conjugate(y));
    EXPECT_TRUE(scalar_conjugate(x + y) ==
                scalar_conjugate(x) + scalar_conjugate(y));
  }
}

TEST(ScalarField, FieldAxiomsOnSamples) {
  SampleGen gen(11);
  for (int t = 0; t < 100; ++t) {
    QScalar x = gen.next();
    QScalar y = gen.next();
    QScalar z = gen.next();
    EXPECT_TRUE(x + y == y + x);
    EXPECT_TRUE(x * y == y * x);
    EXPECT_TRUE((x + y) + z == x + (y + z));
    EXPECT_TRUE((x * y) * z == x * (y * z));
    EXPECT_TRUE(x * (y + z) == x * y + x * z);
    EXPECT_TRUE(x + QScalar() == x);
    EXPECT_TRUE(x * QScalar(1) == x);
    QScalar w = gen.next_nonzero();
    EXPECT_TRUE((x / w) * w == x);
    EXPECT_TRUE(w / w == QScalar(1));
  }
}

TEST(ScalarField, EvalIsAHomomorphism) {
  SampleGen gen(13);
  BigRat q0(2, 3);
  for (int t = 0; t < 100; ++t) {
    QScalar x = gen.next();
    QScalar y = gen.next();
    auto vx = scalar_eval(x, q0);
    auto vy = scalar_eval(y, q0);
    if (!vx || !vy) continue;  // sampled a pole; skip the pair
    auto vsum = scalar_eval(x + y, q0);
    auto vprod = scalar_eval(x * y, q0);
    ASSERT_TRUE(vsum && vprod);
    ScalarValue es = val_add(*vx, *vy);
    ScalarValue ep = val_mul(*vx, *vy, q0);
    EXPECT_TRUE(vsum->va == es.va && vsum->vb == es.vb);
    EXPECT_TRUE(vprod->va == ep.va && vprod->vb == ep.vb);
  }
}

TEST(ScalarField, EvalReportsPoles) {
  QScalar x(RatFunc(Poly(1), poly_q_power(1) - Poly(1)));
  EvalError err;
  auto v = scalar_eval(x, BigRat(1), SBranch::plus, &err);
  EXPECT_FALSE(v.has_value());
  EXPECT_FALSE(err.reason.empty());
  auto w = scalar_eval(x, BigRat(2));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->va == GaussRat(BigRat(1)));
}

TEST(ScalarField, EvalBranchFlipsSPart) {
  QScalar s = QScalar::s_unit();
  auto plus = scalar_eval(s, BigRat(1), SBranch::plus);
  auto minus = scalar_eval(s, BigRat(1), SBranch::minus);
  ASSERT_TRUE(plus && minus);
  EXPECT_TRUE(plus->vb == GaussRat(BigRat(1)));
  EXPECT_TRUE(minus->vb == GaussRat(BigRat(-1)));
}

TEST(ScalarField, GaussianAndMixedPrinting) {
  QScalar i = QScalar::i_unit();
  EXPECT_EQ(scalar_str(i), "i");
  EXPECT_EQ(scalar_str(-i), "-i");
  EXPECT_EQ(scalar_str(QScalar(2) * i), "2*i");
  EXPECT_EQ(scalar_str(QScalar::rational(BigRat(3, 2))), "3/2");
  EXPECT_EQ(scalar_str(QScalar(1) + QScalar(2) * i), "(1 + 2*i)");
  EXPECT_EQ(scalar_str(QScalar(1) + QScalar::s_unit()), "1 + s");
  EXPECT_EQ(scalar_str(qp(1) * QScalar::s_unit()), "q*s");
  EXPECT_EQ(scalar_str(-(QScalar(1) + qp(2))), "-q^2 - 1");
}

TEST(ScalarField, SExtensionDivisionRoundTrip) {
  SampleGen gen(17);
  for (int t = 0; t < 60; ++t) {
    QScalar x = gen.next();
    QScalar w = gen.next_nonzero(true);
    EXPECT_TRUE((x * w) / w == x);
  }
}
