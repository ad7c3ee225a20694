#pragma once

/**
 * @file spaces.hpp
 * @brief Named constant tensors of the deformed three-space (rotation
 *        case) and four-space (boost case): metrics, epsilon tensors,
 *        projectors, and the exchange matrices built from them.
 *
 * Three-space basis order: (+, 3, -) = indices 0, 1, 2.
 * Four-space basis order: (0, +, 3, -) = indices 0, 1, 2, 3.
 */

#include "qnc/tensor.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qnc {

inline QScalar qpow(int e) { return QScalar::q_power(e); }

/* ------------------------------------------------------------------ */
/* Three-space                                                         */
/* ------------------------------------------------------------------ */

struct EuclidTensors {
  Tensor g;         // metric, two lower slots
  Tensor g_inv;     // inverse metric, two upper slots
  Tensor eps3;      // epsilon with slots (lower, lower, upper)
  Tensor eps_low;   // epsilon with all three slots lower
  Tensor eps_up;    // epsilon with all three slots upper
  Tensor delta;     // identity (up, down)
  Tensor dd;        // double identity (up, up, down, down)
  Tensor P1, P3, P5;        // spin projectors
  Tensor rhat3, rhat3_inv;  // exchange matrix and inverse
};

inline EuclidTensors build_euclid_tensors() {
  constexpr Space sp = Space::euclid3;
  EuclidTensors t;

  t.g = Tensor(sp, {false, false});
  t.g.set({0, 2}, -qpow(1));   // (+,-)
  t.g.set({1, 1}, QScalar(1)); // (3,3)
  t.g.set({2, 0}, -qpow(-1));  // (-,+)

  t.g_inv = Tensor(sp, {true, true});
  t.g_inv.set({0, 2}, -qpow(1));
  t.g_inv.set({1, 1}, QScalar(1));
  t.g_inv.set({2, 0}, -qpow(-1));

  t.eps3 = Tensor(sp, {false, false, true});
  t.eps3.set({0, 2, 1}, qpow(1));               // (+,-)->3
  t.eps3.set({2, 0, 1}, -qpow(1));              // (-,+)->3
  t.eps3.set({1, 1, 1}, QScalar(1) - qpow(2));  // (3,3)->3
  t.eps3.set({0, 1, 0}, QScalar(1));            // (+,3)->+
  t.eps3.set({1, 0, 0}, -qpow(2));              // (3,+)->+
  t.eps3.set({2, 1, 2}, -qpow(2));              // (-,3)->-
  t.eps3.set({1, 2, 2}, QScalar(1));            // (3,-)->-

  // all-lower epsilon: close the upper slot with the metric
  t.eps_low = contract(t.eps3, 2, t.g, 1);  // slots (A, B, C)

  // all-upper epsilon: raise the first two slots of the mixed epsilon
  {
    Tensor t1 = contract(t.g_inv, 1, t.eps3, 0);  // (F, D, B)
    Tensor t2 = contract(t.g_inv, 1, t1, 1);      // (A, F, B)
    t.eps_up = transpose(t2, {1, 0, 2});          // (F, A, B)
  }

  t.delta = delta_tensor(sp);
  t.dd = transpose(outer(t.delta, t.delta), {0, 2, 1, 3});

  // epsilon-squared block, (A,B,C,D) = sum_F eps^{FAB} eps_{FDC}
  Tensor epseps = transpose(contract(t.eps_up, 0, t.eps_low, 0), {0, 1, 3, 2});
  Tensor gg = outer(t.g_inv, t.g);

  QScalar c135 = QScalar(1) + qpow(2) + qpow(4);
  t.P1 = gg.scaled(qpow(2) / c135);
  t.P3 = epseps.scaled(QScalar(1) / (QScalar(1) + qpow(4)));
  t.P5 = t.dd - t.P1 - t.P3;

  t.rhat3 = t.dd - epseps.scaled(qpow(-4)) - gg.scaled(qpow(-4) * (qpow(2) - QScalar(1)));
  t.rhat3_inv = t.P5 - t.P3.scaled(qpow(4)) + t.P1.scaled(qpow(6));
  return t;
}

inline const EuclidTensors& euclid_tensors() {
  static const EuclidTensors t = build_euclid_tensors();
  return t;
}

/* ------------------------------------------------------------------ */
/* Four-space                                                          */
/* ------------------------------------------------------------------ */

struct MinkTensors {
  Tensor eta, eta_inv;  // metric and inverse
  Tensor delta, dd;
  Tensor Pplus, Pminus;     // (anti-)self-dual projectors
  Tensor PT, PS, PA;        // trace, symmetric-traceless, antisymmetric
  Tensor eps4;              // four-space epsilon, (up, up, down, down)
  Tensor RI, RI_inv;        // exchange matrix of the first kind
  Tensor RII, RII_inv;      // exchange matrix of the second kind
};

inline MinkTensors build_mink_tensors() {
  constexpr Space sp = Space::mink4;
  const EuclidTensors& eu = euclid_tensors();
  MinkTensors t;

  t.eta = Tensor(sp, {false, false});
  t.eta.set({0, 0}, -QScalar(1));
  t.eta.set({1, 3}, -qpow(1));
  t.eta.set({2, 2}, QScalar(1));
  t.eta.set({3, 1}, -qpow(-1));
  t.eta_inv = Tensor(sp, {true, true});
  t.eta_inv.set({0, 0}, -QScalar(1));
  t.eta_inv.set({1, 3}, -qpow(1));
  t.eta_inv.set({2, 2}, QScalar(1));
  t.eta_inv.set({3, 1}, -qpow(-1));

  t.delta = delta_tensor(sp);
  t.dd = transpose(outer(t.delta, t.delta), {0, 2, 1, 3});

  // spatial helpers on four-space indices 1..3, values from the three-space
  auto e3 = [&](int a, int b, int c) {  // eps_{ab}^c, spatial
    return eu.eps3.get({static_cast<uint8_t>(a - 1), static_cast<uint8_t>(b - 1),
                        static_cast<uint8_t>(c - 1)});
  };
  auto gup = [&](int a, int b) {
    return eu.g_inv.get({static_cast<uint8_t>(a - 1), static_cast<uint8_t>(b - 1)});
  };
  auto elow = [&](int a, int b, int c) {
    return eu.eps_low.get({static_cast<uint8_t>(a - 1), static_cast<uint8_t>(b - 1),
                           static_cast<uint8_t>(c - 1)});
  };
  // T1(A,B,C) = g^{FA} g^{EB} eps_{FEC}
  auto T1 = [&](int A, int B, int C) {
    QScalar acc;
    for (int F = 1; F <= 3; ++F)
      for (int E = 1; E <= 3; ++E) acc = acc + gup(F, A) * gup(E, B) * elow(F, E, C);
    return acc;
  };
  // T2(A,B,C,D) = eps_{DC}^E T1(A,B,E)
  auto T2 = [&](int A, int B, int C, int D) {
    QScalar acc;
    for (int E = 1; E <= 3; ++E) acc = acc + e3(D, C, E) * T1(A, B, E);
    return acc;
  };

  QScalar f = QScalar(1) / ((QScalar(1) + qpow(2)) * (QScalar(1) + qpow(2)));
  QScalar q2 = qpow(2), q4 = qpow(4);

  t.Pplus = Tensor(sp, {true, true, false, false});
  t.Pminus = Tensor(sp, {true, true, false, false});
  auto su8 = [](int v) { return static_cast<uint8_t>(v); };
  for (int A = 1; A <= 3; ++A)
    for (int C = 1; C <= 3; ++C) {
      QScalar d = (A == C) ? QScalar(1) : QScalar();
      t.Pplus.set({su8(A), 0, su8(C), 0}, q2 * f * d);
      t.Pplus.set({su8(A), 0, 0, su8(C)}, -f * d);
      t.Pplus.set({0, su8(A), su8(C), 0}, -q4 * f * d);
      t.Pplus.set({0, su8(A), 0, su8(C)}, q2 * f * d);
      t.Pminus.set({su8(A), 0, su8(C), 0}, q2 * f * d);
      t.Pminus.set({su8(A), 0, 0, su8(C)}, -q4 * f * d);
      t.Pminus.set({0, su8(A), su8(C), 0}, -f * d);
      t.Pminus.set({0, su8(A), 0, su8(C)}, q2 * f * d);
    }
  for (int A = 1; A <= 3; ++A)
    for (int C = 1; C <= 3; ++C)
      for (int D = 1; D <= 3; ++D) {
        QScalar e = e3(D, C, A);
        t.Pplus.set({su8(A), 0, su8(C), su8(D)}, f * e);
        t.Pplus.set({0, su8(A), su8(C), su8(D)}, -q2 * f * e);
        t.Pminus.set({su8(A), 0, su8(C), su8(D)}, -q2 * f * e);
        t.Pminus.set({0, su8(A), su8(C), su8(D)}, f * e);
        QScalar w = T1(C, D, A);
        t.Pplus.set({su8(C), su8(D), su8(A), 0}, q2 * f * w);
        t.Pplus.set({su8(C), su8(D), 0, su8(A)}, -f * w);
        t.Pminus.set({su8(C), su8(D), su8(A), 0}, -f * w);
        t.Pminus.set({su8(C), su8(D), 0, su8(A)}, q2 * f * w);
      }
  for (int A = 1; A <= 3; ++A)
    for (int B = 1; B <= 3; ++B)
      for (int C = 1; C <= 3; ++C)
        for (int D = 1; D <= 3; ++D) {
          QScalar w = f * T2(A, B, C, D);
          t.Pplus.set({su8(A), su8(B), su8(C), su8(D)}, w);
          t.Pminus.set({su8(A), su8(B), su8(C), su8(D)}, w);
        }

  t.PT = outer(t.eta_inv, t.eta).scaled(q2 * f);
  t.PS = t.dd - t.PT - t.Pplus - t.Pminus;
  t.PA = t.Pplus + t.Pminus;
  t.eps4 = t.Pplus - t.Pminus;

  t.RI = t.PS + t.PT - t.Pplus.scaled(q2) - t.Pminus.scaled(qpow(-2));
  t.RI_inv = t.PS + t.PT - t.Pplus.scaled(qpow(-2)) - t.Pminus.scaled(q2);
  t.RII = t.PS.scaled(qpow(-2)) + t.PT.scaled(q2) - t.Pplus - t.Pminus;
  t.RII_inv = t.PS.scaled(q2) + t.PT.scaled(qpow(-2)) - t.Pplus - t.Pminus;
  return t;
}

inline const MinkTensors& mink_tensors() {
  static const MinkTensors t = build_mink_tensors();
  return t;
}

/* ------------------------------------------------------------------ */
/* Named catalog                                                       */
/* ------------------------------------------------------------------ */

inline const std::vector<std::pair<std::string, Space>>& tensor_catalog() {
  static const std::vector<std::pair<std::string, Space>> names = {
      {"g", Space::euclid3},        {"g_inv", Space::euclid3},
      {"eps3", Space::euclid3},     {"rhat3", Space::euclid3},
      {"rhat3_inv", Space::euclid3},{"P1", Space::euclid3},
      {"P3", Space::euclid3},       {"P5", Space::euclid3},
      {"eta", Space::mink4},        {"eta_inv", Space::mink4},
      {"eps4", Space::mink4},       {"RI", Space::mink4},
      {"RI_inv", Space::mink4},     {"RII", Space::mink4},
      {"RII_inv", Space::mink4},    {"PT", Space::mink4},
      {"PS", Space::mink4},         {"Pplus", Space::mink4},
      {"Pminus", Space::mink4},     {"PA", Space::mink4},
  };
  return names;
}

inline const Tensor& build_tensor(const std::string& name) {
  const EuclidTensors& e = euclid_tensors();
  const MinkTensors& m = mink_tensors();
  if (name == "g") return e.g;
  if (name == "g_inv") return e.g_inv;
  if (name == "eps3") return e.eps3;
  if (name == "rhat3") return e.rhat3;
  if (name == "rhat3_inv") return e.rhat3_inv;
  if (name == "P1") return e.P1;
  if (name == "P3") return e.P3;
  if (name == "P5") return e.P5;
  if (name == "eta") return m.eta;
  if (name == "eta_inv") return m.eta_inv;
  if (name == "eps4") return m.eps4;
  if (name == "RI") return m.RI;
  if (name == "RI_inv") return m.RI_inv;
  if (name == "RII") return m.RII;
  if (name == "RII_inv") return m.RII_inv;
  if (name == "PT") return m.PT;
  if (name == "PS") return m.PS;
  if (name == "Pplus") return m.Pplus;
  if (name == "Pminus") return m.Pminus;
  if (name == "PA") return m.PA;
  throw std::invalid_argument("unknown tensor name: " + name);
}

/// Row/column order of index pairs for matrix exports.  The block order
/// groups pairs the way the appendix-style tables do.
inline std::vector<int> pair_order(Space sp, bool block_order) {
  int d = space_dim(sp);
  std::vector<int> perm;
  if (!block_order) {
    for (int k = 0; k < d * d; ++k) perm.push_back(k);
    return perm;
  }
  if (sp == Space::euclid3) {
    // ++, --, +3, 3+, 3-, -3, +-, 33, -+
    return {0, 8, 1, 3, 5, 7, 2, 4, 6};
  }
  // 00, +0, 30, -0, 0+, 03, 0-, then the spatial block in three-space order
  return {0, 4, 8, 12, 1, 2, 3, 5, 15, 6, 9, 11, 14, 7, 10, 13};
}

}  // namespace qnc
