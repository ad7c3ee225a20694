#include "qnc/expr.hpp"

#include <gtest/gtest.h>

namespace qnc {
namespace {

struct Rng {
  uint64_t s = 0x243f6a8885a308d3ull;
  uint32_t next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return uint32_t(s >> 33);
  }
  int range(int n) { return int(next() % uint32_t(n)); }
};

NCPoly sample_poly(const Algebra& alg, Rng& rng, int nterms, int maxdeg) {
  NCPoly p;
  for (int t = 0; t < nterms; ++t) {
    Monomial m;
    m.lp = rng.range(5) - 2;
    for (int k = rng.range(maxdeg + 1); k > 0; --k)
      ++m.x[size_t(rng.range(alg.dim()))];
    for (int k = rng.range(maxdeg + 1); k > 0; --k)
      ++m.d[size_t(rng.range(alg.dim()))];
    QScalar c = qpow(rng.range(7) - 3) * QScalar(rng.range(9) - 4);
    if (rng.range(3) == 0) c = c * QScalar::i_unit();
    if (rng.range(4) == 0) c = c + QScalar::s_unit();
    p.add_term(m, c);
  }
  return p;
}

TEST(Expr, GoldenBindingReduction) {
  // oracle: the exchange rule moves the lowering coordinate past the
  // raising one at the cost of a diagonal pair
  const Algebra& alg = Algebra::euclid();
  NCPoly direct = alg.mul(alg.x_gen(2), alg.x_gen(0));
  NCPoly expect = alg.mul(alg.x_gen(0), alg.x_gen(2)) +
                  alg.mul(alg.x_gen(1), alg.x_gen(1))
                      .scaled(qpow(1) - qpow(-1));
  ASSERT_TRUE(direct == expect);

  EXPECT_EQ(reduce_to_string("X- * X+", Space::euclid3),
            "X+*X- + (q - q^-1)*X3*X3");
}

TEST(Expr, LaurentGeneratorPrintsOnTheRight) {
  const Algebra& alg = Algebra::euclid();
  NCPoly direct = alg.mul(alg.l_pow(1), alg.x_gen(1));
  // oracle for the printed factor: push the coordinate to the left
  NCPoly expect = alg.mul(alg.x_gen(1), alg.l_pow(1)).scaled(qpow(2));
  ASSERT_TRUE(direct == expect);

  EXPECT_EQ(reduce_to_string("l * X3", Space::euclid3), "q^2*X3*l");
  EXPECT_TRUE(reduce_string("q^2*X3*l", Space::euclid3) == direct);

  // the four-space pushes with the opposite sign convention
  const Algebra& mk = Algebra::mink();
  NCPoly dm = mk.mul(mk.l_pow(1), mk.x_gen(0));
  EXPECT_EQ(poly_to_string(mk, dm), "q^-1*X0*l");
}

TEST(Expr, ScalarArithmetic) {
  EXPECT_EQ(reduce_to_string("i*i", Space::euclid3), "-1");
  EXPECT_EQ(reduce_to_string("s^2", Space::euclid3), "q^2 + 1");
  EXPECT_EQ(reduce_to_string("(1 + q)^2", Space::euclid3), "q^2 + 2*q + 1");
  EXPECT_EQ(reduce_to_string("q^2 / (q*q)", Space::euclid3), "1");
  EXPECT_EQ(reduce_to_string("3/2*i", Space::euclid3), "3/2*i");
  EXPECT_EQ(reduce_to_string("1/(1 + q^2)", Space::euclid3), "1/(q^2 + 1)");
  EXPECT_EQ(reduce_to_string("q^-2 - q^-4", Space::euclid3), "q^-2 - q^-4");
  EXPECT_EQ(reduce_to_string("X+^0", Space::euclid3), "1");
  EXPECT_EQ(reduce_to_string("2^3", Space::euclid3), "8");
}

TEST(Expr, SyntaxErrorsCarryPositions) {
  try {
    parse_expr("X+ *", Space::euclid3);
    FAIL() << "dangling operator accepted";
  } catch (const ExprError& e) {
    EXPECT_EQ(e.col, 5);
    EXPECT_NE(e.message.find("expected a value"), std::string::npos);
  }
  try {
    parse_expr("X+ X3", Space::euclid3);
    FAIL() << "juxtaposition accepted";
  } catch (const ExprError& e) {
    EXPECT_EQ(e.col, 4);
    EXPECT_NE(e.message.find("expected operator"), std::string::npos);
  }
  try {
    parse_expr("2 + foo", Space::euclid3);
    FAIL() << "unknown symbol accepted";
  } catch (const ExprError& e) {
    EXPECT_EQ(e.col, 5);
    EXPECT_NE(e.message.find("unknown symbol 'foo'"), std::string::npos);
  }
  try {
    parse_expr("q^(2)", Space::euclid3);
    FAIL() << "non-integer exponent accepted";
  } catch (const ExprError& e) {
    EXPECT_NE(e.message.find("integer exponent"), std::string::npos);
  }
}

TEST(Expr, EvaluationErrors) {
  EXPECT_THROW(reduce_string("X3 / X3", Space::euclid3), ExprError);
  EXPECT_THROW(reduce_string("(X+ + X-)^-1", Space::euclid3), ExprError);
  EXPECT_THROW(reduce_string("1/0", Space::euclid3), ExprError);
  // the spaces have disjoint symbol tables where the bases differ
  EXPECT_THROW(parse_expr("X0", Space::euclid3), ExprError);
  EXPECT_NO_THROW(parse_expr("X0", Space::mink4));
  EXPECT_THROW(parse_expr("W", Space::mink4), ExprError);
  // elements carrying a group-like half power have no plain value
  EXPECT_THROW(reduce_string("T+", Space::euclid3), std::domain_error);
}

TEST(Expr, LaurentInverses) {
  const Algebra& alg = Algebra::euclid();
  EXPECT_TRUE(reduce_string("l^-1 * l", Space::euclid3) == alg.one());
  EXPECT_TRUE(reduce_string("(2*l)^-2", Space::euclid3) ==
              alg.l_pow(-2).scaled(QScalar::rational(BigRat(1, 4))));
  EXPECT_TRUE(reduce_string("l^-2", Space::euclid3) == alg.l_pow(-2));
}

TEST(Expr, ElementNamesEvaluateThroughTheCatalog) {
  for (Space sp : {Space::euclid3, Space::mink4}) {
    const ElementCatalog& cat = element_catalog(sp);
    const char* probe = sp == Space::euclid3 ? "W" : "U";
    EXPECT_TRUE(reduce_string(probe, sp) == cat.realize(probe));
  }
  const Algebra& alg = Algebra::euclid();
  NCPoly lhs = reduce_string("q^4 * Lambda - q^4", Space::euclid3);
  NCPoly rhs = alg.lambda_poly().scaled(qpow(4)) - NCPoly(qpow(4));
  EXPECT_TRUE(lhs == rhs);
}

TEST(Expr, SymbolConjugationMatchesEngine) {
  // oracle: the engine's antilinear anti-automorphism on realizations
  for (Space sp : {Space::euclid3, Space::mink4}) {
    const Algebra& alg =
        sp == Space::euclid3 ? Algebra::euclid() : Algebra::mink();
    std::vector<std::string> syms;
    for (int a = 0; a < alg.dim(); ++a) {
      syms.push_back("X" + space_labels(sp)[size_t(a)]);
      syms.push_back("D" + space_labels(sp)[size_t(a)]);
    }
    if (sp == Space::euclid3)
      for (const char* n : {"P+", "P3", "P-", "L+", "L3", "L-", "W", "tau"})
        syms.push_back(n);
    else
      for (const char* n :
           {"P0", "P+", "P3", "P-", "R+", "R3", "R-", "S+", "S3", "S-", "U",
            "rho", "sigma", "V0+", "V+0", "V+3", "V3-", "V+-", "V33", "V00"})
        syms.push_back(n);
    for (const auto& name : syms) {
      // realizations spread across Laurent offsets under conjugation, so
      // compare on the quotient
      NCPoly direct = alg.conjugate(reduce_string(name, sp));
      NCPoly table = eval_expr(conj_expr(parse_expr(name, sp), sp), sp);
      EXPECT_TRUE(alg.clear_and_equal(direct, table).equal) << name;
    }
    // products reverse
    std::string w = sp == Space::euclid3 ? "X+ * D3" : "X0 * D-";
    NCPoly direct = alg.conjugate(reduce_string(w, sp));
    NCPoly table = eval_expr(conj_expr(parse_expr(w, sp), sp), sp);
    EXPECT_TRUE(alg.clear_and_equal(direct, table).equal);
    // the Laurent generator picks up its fixed factor
    NCPoly lbar = alg.conjugate(alg.l_pow(1));
    NCPoly ltab = eval_expr(conj_expr(parse_expr("l", sp), sp), sp);
    EXPECT_TRUE(lbar == ltab);
  }
}

TEST(Expr, PrintedFormRoundTrips) {
  Rng rng;
  for (Space sp : {Space::euclid3, Space::mink4}) {
    const Algebra& alg =
        sp == Space::euclid3 ? Algebra::euclid() : Algebra::mink();
    for (int trial = 0; trial < 40; ++trial) {
      NCPoly p = sample_poly(alg, rng, 1 + rng.range(4), 2);
      std::string s = poly_to_string(alg, p);
      NCPoly back = reduce_string(s, sp);
      EXPECT_TRUE(back == p) << s;
    }
  }
  // realizations with Laurent tails survive a print cycle too
  for (const char* name : {"dbar3", "W", "L+", "tau"}) {
    NCPoly p = element_catalog(Space::euclid3).realize(name);
    EXPECT_TRUE(reduce_string(poly_to_string(Algebra::euclid(), p),
                              Space::euclid3) == p)
        << name;
  }
}

}  // namespace
}  // namespace qnc
