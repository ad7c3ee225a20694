#pragma once

/**
 * @file verify_euclid.hpp
 * @brief Catalog of the three-space identities, plus helpers shared by
 *        both space catalogs.
 *
 * Included by verify.hpp after the runner scaffolding; include
 * "qnc/verify.hpp" rather than this header.
 */

namespace qnc {
namespace vdetail {

/* -------------------------------------------------------------------- */
/* Shared catalog helpers                                                 */

inline Index ix(std::initializer_list<int> v) {
  Index out;
  out.reserve(v.size());
  for (int x : v) out.push_back(uint8_t(x));
  return out;
}

/// Scalar from a source string that reduces to a multiple of the unit.
inline QScalar qs(const std::string& src) {
  NCPoly p = eval_expr(parse_expr(src, Space::euclid3), Space::euclid3);
  QScalar c;
  for (const auto& [m, v] : p.terms()) {
    if (m.lp != 0 || m.xdeg() != 0 || m.ddeg() != 0)
      throw ExprError("not a scalar: " + src);
    c = v;
  }
  return c;
}

inline int label_pos(Space sp, char c) {
  const auto& lab = space_labels(sp);
  for (size_t k = 0; k < lab.size(); ++k)
    if (lab[k].size() == 1 && lab[k][0] == c) return int(k);
  throw std::invalid_argument(std::string("unknown slot label: ") + c);
}

inline std::string index_str(Space sp, const Index& k) {
  const auto& lab = space_labels(sp);
  std::string out;
  for (size_t j = 0; j < k.size(); ++j) {
    if (j) out += ",";
    out += lab[k[j]];
  }
  return out;
}

/// Sparse tensor from (label string, scalar source) pairs.
inline Tensor tensor_from_entries(
    Space sp, std::vector<bool> up,
    const std::vector<std::pair<std::string, std::string>>& entries) {
  Tensor t(sp, std::move(up));
  for (const auto& [labels, value] : entries) {
    Index k;
    for (char c : labels) k.push_back(uint8_t(label_pos(sp, c)));
    t.set(k, qs(value));
  }
  return t;
}

/// First differing component between two equally shaped tensors.
inline std::optional<std::string> tensor_residue(const Tensor& got,
                                                 const Tensor& want) {
  Tensor d = got - want;
  if (d.is_zero()) return std::nullopt;
  const auto& [k, v] = *d.components().begin();
  return "component (" + index_str(got.space(), k) + "): " + scalar_str(v);
}

/// Residue of an operator difference after sending q -> 1 and dropping
/// the grading unit.  Nonempty when any monomial keeps a nonzero
/// coefficient at the undeformed point, or when a coefficient has a pole
/// there.
inline std::optional<std::string> poly_q1_residue(const Algebra& alg,
                                                  const NCPoly& p) {
  std::map<Monomial, ScalarValue> acc;
  for (const auto& [m, c] : p.terms()) {
    EvalError err;
    auto v = scalar_eval(c, BigRat(1), SBranch::plus, &err);
    if (!v)
      return "coefficient of " + poly_residue(alg, NCPoly::term(m, QScalar(1))) +
             " at the undeformed point: " + err.reason;
    Monomial flat = m;
    flat.lp = 0;
    auto [it, fresh] = acc.emplace(flat, *v);
    if (!fresh) {
      it->second.va = it->second.va + v->va;
      it->second.vb = it->second.vb + v->vb;
    }
  }
  for (const auto& [m, v] : acc)
    if (!v.is_zero())
      return "monomial survives at the undeformed point: " +
             poly_residue(alg, NCPoly::term(m, QScalar(1)));
  return std::nullopt;
}

/* -------------------------------------------------------------------- */
/* Words in the symmetry generators with half-integral dilation grading. */
/* A word carries a power h of the inverse dilation square root on its   */
/* left; moving that power across a generator costs a fixed power of q.  */

struct GradedTerm {
  QScalar c;
  int h = 0;  // power of the inverse dilation root carried on the left
  std::vector<std::string> word;
};
using GradedSum = std::vector<GradedTerm>;

inline int tau_exponent(const std::string& sym) {
  if (sym == "X+" || sym == "L+") return -2;
  if (sym == "X-" || sym == "L-") return 2;
  if (sym == "X3" || sym == "L3" || sym == "W") return 0;
  throw std::invalid_argument("no dilation exchange rule for " + sym);
}

inline GradedSum graded_atom(const std::string& name) {
  if (name == "tau") return {{QScalar(1), -1, {}}};
  if (name == "T+") return {{qpow(2) * QScalar::s_unit(), 1, {"L+"}}};
  if (name == "T-") return {{QScalar() - qpow(3) * QScalar::s_unit(), 1, {"L-"}}};
  if (name == "T3") {
    QScalar c = qpow(1) / (qpow(2) - QScalar(1));
    return {{c, 0, {}}, {QScalar() - c, 2, {}}};
  }
  return {{QScalar(1), 0, {name}}};
}

inline GradedSum graded_scale(GradedSum v, const QScalar& c) {
  for (auto& t : v) t.c = t.c * c;
  return v;
}

inline GradedSum graded_add(GradedSum a, const GradedSum& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline GradedSum graded_mul(const GradedSum& a, const GradedSum& b) {
  GradedSum out;
  for (const auto& t1 : a)
    for (const auto& t2 : b) {
      int e = 0;
      for (const auto& w : t1.word) e += tau_exponent(w);
      GradedTerm t;
      t.c = t1.c * t2.c * qpow(-t2.h * e);
      t.h = t1.h + t2.h;
      t.word = t1.word;
      t.word.insert(t.word.end(), t2.word.begin(), t2.word.end());
      out.push_back(std::move(t));
    }
  return out;
}

/// Clears the grading to the common ceiling H and realizes the sum as an
/// operator: each term is left-multiplied by (inverse root)^(H - h).
inline NCPoly graded_realize(const Algebra& alg, const GradedSum& v, int H) {
  NCPoly tau_op = eval_expr(parse_expr("tau", Space::euclid3), Space::euclid3);
  NCPoly acc;
  for (const auto& t : v) {
    NCPoly cur = alg.one();
    for (int k = t.h; k < H; ++k) cur = alg.mul(cur, tau_op);
    for (const auto& w : t.word)
      cur = alg.mul(cur, eval_expr(parse_expr(w, Space::euclid3), Space::euclid3));
    acc = acc + cur.scaled(t.c);
  }
  return acc;
}

struct GradedRow {
  std::string label;
  GradedSum lhs, rhs;
};

}  // namespace vdetail

/// Family whose rows mix integral and half-integral dilation grades; both
/// sides are cleared to a common grade before comparison.
inline Identity make_graded_family(std::string suite, std::string id,
                                   IdentityKind kind, std::string ref,
                                   std::vector<vdetail::GradedRow> rows) {
  return make_identity(
      std::move(suite), Space::euclid3, std::move(id), kind, std::move(ref),
      [rows = std::move(rows)]() -> std::optional<std::string> {
        const Algebra& alg = Algebra::euclid();
        for (const auto& r : rows) {
          int H = 0;
          for (const auto& t : r.lhs) H = std::max(H, t.h);
          for (const auto& t : r.rhs) H = std::max(H, t.h);
          NCPoly l = vdetail::graded_realize(alg, r.lhs, H);
          NCPoly rr = vdetail::graded_realize(alg, r.rhs, H);
          ClearResult cr = alg.clear_and_equal(l, rr);
          if (!cr.equal)
            return "component " + r.label + ": " +
                   vdetail::poly_residue(alg, cr.residue);
        }
        return std::nullopt;
      });
}

/// Conjugated image of an index family: every row is mapped through the
/// symbol conjugation table on both sides, then must still hold.
inline Identity make_bar_family(std::string suite, Space sp, std::string id,
                                IdentityKind kind, std::string ref,
                                std::vector<FamilyRow> rows) {
  for (auto& r : rows) {
    r.lhs = conj_expr(r.lhs, sp);
    r.rhs = conj_expr(r.rhs, sp);
  }
  return make_family_identity(std::move(suite), sp, std::move(id), kind,
                              std::move(ref), std::move(rows));
}

namespace vdetail {

/// Engine-level conjugation rows: the anti-automorphism applied to a
/// source expression must match the stated image on the quotient.
struct ConjRow {
  std::string label;
  ExprPtr source;
  ExprPtr image;
};

}  // namespace vdetail

inline Identity make_engine_conjugation(std::string suite, Space sp,
                                        std::string id, IdentityKind kind,
                                        std::string ref,
                                        std::vector<vdetail::ConjRow> rows) {
  return make_identity(
      std::move(suite), sp, std::move(id), kind, std::move(ref),
      [sp, rows = std::move(rows)]() -> std::optional<std::string> {
        const Algebra& alg = vdetail::algebra_for(sp);
        for (const auto& r : rows) {
          NCPoly got = alg.conjugate(eval_expr(r.source, sp));
          NCPoly want = eval_expr(r.image, sp);
          ClearResult cr = alg.clear_and_equal(got, want);
          if (!cr.equal)
            return "component " + r.label + ": " +
                   vdetail::poly_residue(alg, cr.residue);
        }
        return std::nullopt;
      });
}

namespace vdetail {

/* -------------------------------------------------------------------- */
/* Three-space tensor layer                                              */

inline void build_euclid_tensor(std::vector<Identity>& out) {
  constexpr Space sp = Space::euclid3;
  const std::string S = "euclid-tensor";
  constexpr IdentityKind req = IdentityKind::required;
  const EuclidTensors& T = euclid_tensors();

  auto g = [&T](int a, int b) { return T.g.get(ix({a, b})); };
  auto gi = [&T](int a, int b) { return T.g_inv.get(ix({a, b})); };
  auto em = [&T](int a, int b, int c) { return T.eps3.get(ix({a, b, c})); };
  auto el = [&T](int a, int b, int c) { return T.eps_low.get(ix({a, b, c})); };
  auto eup = [&T](int a, int b, int c) { return T.eps_up.get(ix({a, b, c})); };
  auto R = [&T](int a, int b, int c, int d) {
    return T.rhat3.get(ix({a, b, c, d}));
  };
  auto Ri = [&T](int a, int b, int c, int d) {
    return T.rhat3_inv.get(ix({a, b, c, d}));
  };
  const Tensor epseps = transpose(contract(T.eps_up, 0, T.eps_low, 0),
                                  {0, 1, 3, 2});
  const Tensor gg = outer(T.g_inv, T.g);

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-table", req,
      "exchange matrix matches its block component table",
      [&T]() {
        Tensor want = tensor_from_entries(
            sp, {true, true, false, false},
            {{"++++", "1"},
             {"----", "1"},
             {"+33+", "q^-2"},
             {"3++3", "q^-2"},
             {"3+3+", "1 - q^-4"},
             {"3--3", "q^-2"},
             {"-33-", "q^-2"},
             {"-3-3", "1 - q^-4"},
             {"+--+", "q^-4"},
             {"3333", "q^-2"},
             {"33-+", "q^-1*(1 - q^-4)"},
             {"-++-", "q^-4"},
             {"-+33", "q^-1*(1 - q^-4)"},
             {"-+-+", "(1 - q^-2)*(1 - q^-4)"}});
        return tensor_residue(T.rhat3, want);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-braid", req,
      "exchange matrix satisfies the braid relation on three slots",
      [&T]() { return braid_equation_residue(T.rhat3); }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-transpose-symmetry", req,
      "exchange matrix equals its pair transpose",
      [&T]() -> std::optional<std::string> {
        SqMat m = mat_from_rank4(T.rhat3);
        SqMat t(m.n);
        for (int i = 0; i < m.n; ++i)
          for (int j = 0; j < m.n; ++j) t.at(i, j) = m.at(j, i);
        return mat_diff(m, t, sp);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.projector-completeness", req,
      "spin projector family resolves the identity map",
      [&T]() { return tensor_residue(T.P1 + T.P3 + T.P5, T.dd); }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.projector-orthogonality", req,
      "spin projectors are orthogonal idempotents",
      [&T]() -> std::optional<std::string> {
        const Tensor* ps[3] = {&T.P1, &T.P3, &T.P5};
        const char* nm[3] = {"singlet", "triplet", "quintet"};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            SqMat prod = mat_mul(mat_from_rank4(*ps[i]), mat_from_rank4(*ps[j]));
            SqMat want = i == j ? mat_from_rank4(*ps[i]) : SqMat(9);
            if (auto r = mat_diff(prod, want, sp))
              return std::string(nm[i]) + "*" + nm[j] + " " + *r;
          }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-spectral-sum", req,
      "exchange matrix equals its weighted projector sums, both forms",
      [&T]() -> std::optional<std::string> {
        Tensor w1 = T.P5 + T.P3.scaled(QScalar() - qpow(-4)) +
                    T.P1.scaled(qpow(-6));
        if (auto r = tensor_residue(T.rhat3, w1)) return "eigenvalue form " + *r;
        Tensor w2 = T.dd - T.P3.scaled(QScalar(1) + qpow(-4)) +
                    T.P1.scaled(qpow(-6) - QScalar(1));
        if (auto r = tensor_residue(T.rhat3, w2)) return "shifted form " + *r;
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-characteristic", req,
      "exchange matrix is annihilated by its cubic minimal polynomial",
      [&T]() -> std::optional<std::string> {
        SqMat m = mat_from_rank4(T.rhat3);
        SqMat p = mat_mul(mat_mul(mat_shift(m, QScalar(-1)), mat_shift(m, qpow(-4))),
                          mat_shift(m, QScalar() - qpow(-6)));
        return mat_diff(p, SqMat(m.n), sp);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.projectors-from-exchange", req,
      "spin projectors reconstructed from the exchange matrix polynomials",
      [&T]() -> std::optional<std::string> {
        SqMat m = mat_from_rank4(T.rhat3);
        SqMat f5 = mat_scale(
            mat_mul(mat_shift(m, qpow(-4)), mat_shift(m, QScalar() - qpow(-6))),
            qs("q^10/((q^4 + 1)*(q^6 - 1))"));
        if (auto r = mat_diff(f5, mat_from_rank4(T.P5), sp))
          return "quintet " + *r;
        SqMat f3 = mat_scale(
            mat_mul(mat_shift(m, QScalar(-1)), mat_shift(m, QScalar() - qpow(-6))),
            qs("q^10/((q^4 + 1)*(q^2 + 1))"));
        if (auto r = mat_diff(f3, mat_from_rank4(T.P3), sp))
          return "triplet " + *r;
        SqMat f1 = mat_scale(
            mat_mul(mat_shift(m, QScalar(-1)), mat_shift(m, qpow(-4))),
            qs("q^12/((q^2 + 1)*(1 - q^6))"));
        if (auto r = mat_diff(f1, mat_from_rank4(T.P1), sp))
          return "singlet " + *r;
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-inverse", req,
      "exchange matrix and its inverse compose to the identity both ways",
      [&T]() -> std::optional<std::string> {
        SqMat m = mat_from_rank4(T.rhat3);
        SqMat mi = mat_from_rank4(T.rhat3_inv);
        if (auto r = mat_diff(mat_mul(m, mi), mat_identity(m.n), sp))
          return "left " + *r;
        if (auto r = mat_diff(mat_mul(mi, m), mat_identity(m.n), sp))
          return "right " + *r;
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.metric-table", req,
      "metric and inverse metric match their component tables",
      [&T]() -> std::optional<std::string> {
        Tensor wl = tensor_from_entries(
            sp, {false, false}, {{"+-", "-q"}, {"33", "1"}, {"-+", "-q^-1"}});
        if (auto r = tensor_residue(T.g, wl)) return "lower " + *r;
        Tensor wu = tensor_from_entries(
            sp, {true, true}, {{"+-", "-q"}, {"33", "1"}, {"-+", "-q^-1"}});
        if (auto r = tensor_residue(T.g_inv, wu)) return "upper " + *r;
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.metric-inverse-pairing", req,
      "metric contracts with its inverse to the unit map in both orders",
      [&T]() -> std::optional<std::string> {
        Tensor low_up = contract(T.g, 1, T.g_inv, 0);
        Tensor want1(sp, {false, true});
        for (int a = 0; a < 3; ++a) want1.set(ix({a, a}), QScalar(1));
        if (auto r = tensor_residue(low_up, want1)) return "lower-upper " + *r;
        Tensor up_low = contract(T.g_inv, 1, T.g, 0);
        if (auto r = tensor_residue(up_low, delta_tensor(sp)))
          return "upper-lower " + *r;
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.metric-conjugation", req,
      "conjugate of each metric component is the inverse metric component",
      [g, gi]() -> std::optional<std::string> {
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            QScalar d = scalar_conjugate(g(a, b)) - gi(a, b);
            if (!d.is_zero())
              return "component (" + index_str(sp, ix({a, b})) +
                     "): " + scalar_str(d);
          }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.singlet-projector-metric-form", req,
      "singlet projector is the normalized metric outer square",
      [&T, gg]() {
        return tensor_residue(T.P1, gg.scaled(qs("q^2/(1 + q^2 + q^4)")));
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.singlet-table", req,
      "metric outer square matches its component table and scales to the "
      "singlet projector",
      [&T, gg]() -> std::optional<std::string> {
        Tensor want = tensor_from_entries(sp, {true, true, false, false},
                                          {{"+-+-", "q^2"},
                                           {"+-33", "-q"},
                                           {"+--+", "1"},
                                           {"33+-", "-q"},
                                           {"3333", "1"},
                                           {"33-+", "-q^-1"},
                                           {"-++-", "1"},
                                           {"-+33", "-q^-1"},
                                           {"-+-+", "q^-2"}});
        if (auto r = tensor_residue(gg, want)) return "outer square " + *r;
        if (auto r = tensor_residue(T.P1.scaled(qs("(1 + q^2 + q^4)/q^2")), want))
          return "scaled projector " + *r;
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-mixed-table", req,
      "mixed antisymmetric tensor matches its component table",
      [&T]() {
        Tensor want = tensor_from_entries(sp, {false, false, true},
                                          {{"+-3", "q"},
                                           {"-+3", "-q"},
                                           {"333", "1 - q^2"},
                                           {"+3+", "1"},
                                           {"3++", "-q^2"},
                                           {"-3-", "-q^2"},
                                           {"3--", "1"}});
        return tensor_residue(T.eps3, want);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-lowered-table", req,
      "fully lowered antisymmetric tensor matches its component table",
      [&T]() {
        Tensor want = tensor_from_entries(sp, {false, false, false},
                                          {{"+-3", "q"},
                                           {"-+3", "-q"},
                                           {"333", "1 - q^2"},
                                           {"+3-", "-q^-1"},
                                           {"3+-", "q"},
                                           {"-3+", "q^3"},
                                           {"3-+", "-q"}});
        return tensor_residue(T.eps_low, want);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-lowering-routes", req,
      "lowering all three slots of the raised antisymmetric tensor agrees "
      "with the stored form for either metric slot order",
      [g, el, eup]() -> std::optional<std::string> {
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s)
            for (int t = 0; t < 3; ++t) {
              QScalar v1, v2;
              for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                  for (int c = 0; c < 3; ++c) {
                    QScalar e = eup(a, b, c);
                    if (e.is_zero()) continue;
                    v1 = v1 + g(r, a) * g(s, b) * g(t, c) * e;
                    v2 = v2 + g(a, r) * g(b, s) * g(c, t) * e;
                  }
              QScalar w = el(r, s, t);
              if (!(v1 - w).is_zero())
                return "route one, component (" + index_str(sp, ix({r, s, t})) +
                       "): " + scalar_str(v1 - w);
              if (!(v2 - w).is_zero())
                return "route two, component (" + index_str(sp, ix({r, s, t})) +
                       "): " + scalar_str(v2 - w);
            }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-slot-rotation", req,
      "mixed and lowered antisymmetric tensors interconvert through the "
      "metric on the last slot",
      [g, gi, em, el]() -> std::optional<std::string> {
        for (int b = 0; b < 3; ++b)
          for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
              QScalar rhs;
              for (int s = 0; s < 3; ++s) rhs = rhs + el(s, b, a) * gi(s, c);
              if (!(em(b, a, c) - rhs).is_zero())
                return "raising, component (" + index_str(sp, ix({b, a, c})) +
                       "): " + scalar_str(em(b, a, c) - rhs);
            }
        for (int r = 0; r < 3; ++r)
          for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a) {
              QScalar rhs;
              for (int c = 0; c < 3; ++c) rhs = rhs + em(b, a, c) * g(c, r);
              if (!(el(r, b, a) - rhs).is_zero())
                return "lowering, component (" + index_str(sp, ix({r, b, a})) +
                       "): " + scalar_str(el(r, b, a) - rhs);
            }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-contraction-symmetric", req,
      "double antisymmetric contraction is the same on first and last slots",
      [el, eup]() -> std::optional<std::string> {
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d) {
                QScalar lhs, rhs;
                for (int f = 0; f < 3; ++f) {
                  lhs = lhs + eup(a, b, f) * el(d, c, f);
                  rhs = rhs + eup(f, a, b) * el(f, d, c);
                }
                if (!(lhs - rhs).is_zero())
                  return "component (" + index_str(sp, ix({a, b, c, d})) +
                         "): " + scalar_str(lhs - rhs);
              }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-contraction-traces", req,
      "double traces of the antisymmetric tensor reduce to the metric and "
      "the unit map",
      [g, gi, em, el, eup]() -> std::optional<std::string> {
        QScalar norm = QScalar(1) + qpow(4);
        for (int r = 0; r < 3; ++r)
          for (int d = 0; d < 3; ++d) {
            QScalar lhs;
            for (int f = 0; f < 3; ++f)
              for (int e = 0; e < 3; ++e)
                for (int b = 0; b < 3; ++b)
                  lhs = lhs + gi(f, b) * em(d, b, e) * el(e, f, r);
            QScalar want = norm * g(r, d);
            if (!(lhs - want).is_zero())
              return "metric trace, component (" + index_str(sp, ix({r, d})) +
                     "): " + scalar_str(lhs - want);
          }
        for (int f = 0; f < 3; ++f)
          for (int a = 0; a < 3; ++a) {
            QScalar lhs;
            for (int b = 0; b < 3; ++b)
              for (int c = 0; c < 3; ++c) lhs = lhs + eup(b, c, f) * el(c, b, a);
            QScalar want = f == a ? norm : QScalar();
            if (!(lhs - want).is_zero())
              return "unit trace, component (" + index_str(sp, ix({f, a})) +
                     "): " + scalar_str(lhs - want);
          }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-square-expansion", req,
      "antisymmetric square expands into metric pairs plus a reordered "
      "antisymmetric square",
      [g, em, el, eup]() -> std::optional<std::string> {
        for (int t = 0; t < 3; ++t)
          for (int s = 0; s < 3; ++s)
            for (int d = 0; d < 3; ++d)
              for (int c = 0; c < 3; ++c) {
                QScalar lhs;
                for (int e = 0; e < 3; ++e) lhs = lhs + el(t, s, e) * em(d, c, e);
                QScalar rhs =
                    qpow(2) * (g(c, t) * g(d, s) - g(s, t) * g(c, d));
                for (int b = 0; b < 3; ++b)
                  for (int r = 0; r < 3; ++r)
                    for (int e = 0; e < 3; ++e)
                      rhs = rhs + g(c, b) * g(r, t) * eup(b, r, e) * el(s, d, e);
                if (!(lhs - rhs).is_zero())
                  return "component (" + index_str(sp, ix({t, s, d, c})) +
                         "): " + scalar_str(lhs - rhs);
              }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.metric-eps-trace-null", req,
      "metric traces of the lowered antisymmetric tensor vanish",
      [gi, el]() -> std::optional<std::string> {
        for (int c = 0; c < 3; ++c) {
          QScalar t1;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) t1 = t1 + gi(b, a) * el(a, b, c);
          if (!t1.is_zero())
            return "first pair, free slot " + space_labels(sp)[size_t(c)] +
                   ": " + scalar_str(t1);
        }
        for (int a = 0; a < 3; ++a) {
          QScalar t2;
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) t2 = t2 + gi(c, b) * el(a, b, c);
          if (!t2.is_zero())
            return "last pair, free slot " + space_labels(sp)[size_t(a)] +
                   ": " + scalar_str(t2);
        }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.eps-conjugation", req,
      "conjugate of the mixed antisymmetric tensor matches both raised "
      "rewritings",
      [g, gi, em, el, eup]() -> std::optional<std::string> {
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            for (int a = 0; a < 3; ++a) {
              QScalar lhs = scalar_conjugate(em(b, c, a));
              QScalar r1, r2;
              for (int d = 0; d < 3; ++d)
                for (int e = 0; e < 3; ++e)
                  r1 = r1 + el(d, e, a) * gi(e, b) * gi(d, c);
              for (int k = 0; k < 3; ++k) r2 = r2 + eup(c, b, k) * g(k, a);
              if (!(lhs - r1).is_zero())
                return "double-raised form, component (" +
                       index_str(sp, ix({b, c, a})) + "): " + scalar_str(lhs - r1);
              if (!(lhs - r2).is_zero())
                return "lowered form, component (" +
                       index_str(sp, ix({b, c, a})) + "): " + scalar_str(lhs - r2);
            }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.triplet-projector-eps-form", req,
      "triplet projector is the normalized antisymmetric square",
      [&T, epseps]() {
        return tensor_residue(T.P3, epseps.scaled(qs("1/(1 + q^4)")));
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.triplet-table", req,
      "scaled triplet projector matches its component table",
      [&T]() {
        Tensor want = tensor_from_entries(sp, {true, true, false, false},
                                          {{"+3+3", "q^4"},
                                           {"+33+", "-q^2"},
                                           {"3++3", "-q^2"},
                                           {"3+3+", "1"},
                                           {"3-3-", "q^4"},
                                           {"3--3", "-q^2"},
                                           {"-33-", "-q^2"},
                                           {"-3-3", "1"},
                                           {"+-+-", "q^2"},
                                           {"+-33", "q*(q^2 - 1)"},
                                           {"+--+", "-q^2"},
                                           {"33+-", "q*(q^2 - 1)"},
                                           {"3333", "(q^2 - 1)^2"},
                                           {"33-+", "-q*(q^2 - 1)"},
                                           {"-++-", "-q^2"},
                                           {"-+33", "-q*(q^2 - 1)"},
                                           {"-+-+", "q^2"}});
        return tensor_residue(T.P3.scaled(QScalar(1) + qpow(4)), want);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.quintet-projector-expansion", req,
      "quintet projector is the unit map minus the other two projectors",
      [&T, gg, epseps]() {
        Tensor want = T.dd - gg.scaled(qs("q^2/(1 + q^2 + q^4)")) -
                      epseps.scaled(qs("1/(1 + q^4)"));
        return tensor_residue(T.P5, want);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-eps-metric-form", req,
      "exchange matrix expands into unit, antisymmetric square and metric "
      "outer square",
      [&T, gg, epseps]() {
        Tensor want = T.dd - epseps.scaled(qpow(-4)) -
                      gg.scaled(qpow(-4) * (qpow(2) - QScalar(1)));
        return tensor_residue(T.rhat3, want);
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-index-raising", req,
      "metric conjugation swaps the exchange matrix with its scaled inverse",
      [g, gi, R, Ri]() -> std::optional<std::string> {
        for (int c = 0; c < 3; ++c)
          for (int a = 0; a < 3; ++a)
            for (int d = 0; d < 3; ++d)
              for (int e = 0; e < 3; ++e) {
                QScalar lhs;
                for (int b = 0; b < 3; ++b)
                  for (int f = 0; f < 3; ++f)
                    lhs = lhs + gi(c, b) * R(a, f, b, d) * g(f, e);
                QScalar want = qpow(-4) * Ri(c, a, d, e);
                if (!(lhs - want).is_zero())
                  return "forward line, component (" +
                         index_str(sp, ix({c, a, d, e})) +
                         "): " + scalar_str(lhs - want);
              }
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d) {
                QScalar lhs;
                for (int f = 0; f < 3; ++f)
                  for (int e = 0; e < 3; ++e)
                    lhs = lhs + gi(a, f) * Ri(b, e, f, c) * g(e, d);
                QScalar want = qpow(4) * R(a, b, c, d);
                if (!(lhs - want).is_zero())
                  return "inverse line, component (" +
                         index_str(sp, ix({a, b, c, d})) +
                         "): " + scalar_str(lhs - want);
              }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.exchange-two-sided-raising", req,
      "raising both pairs and transposing returns the exchange matrix",
      [g, gi, R]() -> std::optional<std::string> {
        for (int G = 0; G < 3; ++G)
          for (int e = 0; e < 3; ++e)
            for (int f = 0; f < 3; ++f)
              for (int k = 0; k < 3; ++k) {
                QScalar lhs;
                for (int c = 0; c < 3; ++c)
                  for (int d = 0; d < 3; ++d)
                    for (int a = 0; a < 3; ++a)
                      for (int b = 0; b < 3; ++b)
                        lhs = lhs +
                              gi(G, c) * gi(e, d) * R(b, a, d, c) * g(a, f) *
                                  g(b, k);
                if (!(lhs - R(G, e, f, k)).is_zero())
                  return "component (" + index_str(sp, ix({G, e, f, k})) +
                         "): " + scalar_str(lhs - R(G, e, f, k));
              }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.tensor.classical-limit-exchange-flip", req,
      "exchange matrix degenerates to the slot flip at the undeformed point",
      [R]() -> std::optional<std::string> {
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d) {
                QScalar want = (a == d && b == c) ? QScalar(1) : QScalar();
                EvalError err;
                auto v = scalar_eval(R(a, b, c, d) - want, BigRat(1),
                                     SBranch::plus, &err);
                if (!v)
                  return "component (" + index_str(sp, ix({a, b, c, d})) +
                         ") has no value at the undeformed point: " + err.reason;
                if (!v->is_zero())
                  return "component (" + index_str(sp, ix({a, b, c, d})) +
                         ") keeps a deformation at the undeformed point";
              }
        return std::nullopt;
      }));
}

/* -------------------------------------------------------------------- */
/* Three-space coordinate-derivative calculus                            */

inline std::vector<FamilyRow> euclid_phase_exchange_rows() {
  constexpr Space sp = Space::euclid3;
  const EuclidTensors& T = euclid_tensors();
  const auto& lab = space_labels(sp);
  auto X = [&lab](int a) { return ex_sym("X" + lab[size_t(a)]); };
  auto P = [&lab](int a) { return ex_sym("P" + lab[size_t(a)]); };
  auto L = [&lab](int a) { return ex_sym("L" + lab[size_t(a)]); };
  std::vector<FamilyRow> rows;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::vector<ExprPtr> lk;
      lk.push_back(ex_prod({P(a), X(b)}));
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e) {
          QScalar r = T.rhat3_inv.get(ix({a, b, c, e}));
          if (!r.is_zero()) lk.push_back(ex_prod({ex_scalar(-r), X(c), P(e)}));
        }
      std::vector<ExprPtr> braces;
      QScalar gw = (QScalar(1) + qpow(-6)) * T.g_inv.get(ix({a, b}));
      if (!gw.is_zero())
        braces.push_back(ex_prod({ex_scalar(gw), ex_sym("W")}));
      for (int k = 0; k < 3; ++k) {
        QScalar c;
        for (int f = 0; f < 3; ++f)
          c = c + T.eps_up.get(ix({a, b, f})) * T.g.get(ix({f, k}));
        c = (QScalar(1) - qpow(-4)) * c;
        if (!c.is_zero()) braces.push_back(ex_prod({ex_scalar(-c), L(k)}));
      }
      ExprPtr rhs = ex_prod({ex_div(ex_neg(ex_sym("i")), ex_int(2)),
                             ex_pow(ex_sym("l"), -1), ex_sum(std::move(braces))});
      rows.push_back({lab[size_t(a)] + ";" + lab[size_t(b)],
                      ex_sum(std::move(lk)), std::move(rhs)});
    }
  return rows;
}

inline void build_euclid_calculus(std::vector<Identity>& out) {
  constexpr Space sp = Space::euclid3;
  const std::string S = "euclid-calculus";
  constexpr IdentityKind req = IdentityKind::required;
  const EuclidTensors& T = euclid_tensors();
  const auto& lab = space_labels(sp);

  auto g = [&T](int a, int b) { return T.g.get(ix({a, b})); };
  auto gi = [&T](int a, int b) { return T.g_inv.get(ix({a, b})); };
  auto em = [&T](int a, int b, int c) { return T.eps3.get(ix({a, b, c})); };
  auto el = [&T](int a, int b, int c) { return T.eps_low.get(ix({a, b, c})); };
  auto eup = [&T](int a, int b, int c) { return T.eps_up.get(ix({a, b, c})); };
  auto R = [&T](int a, int b, int c, int d) {
    return T.rhat3.get(ix({a, b, c, d}));
  };
  auto Ri = [&T](int a, int b, int c, int d) {
    return T.rhat3_inv.get(ix({a, b, c, d}));
  };
  auto X = [&lab](int a) { return ex_sym("X" + lab[size_t(a)]); };
  auto D = [&lab](int a) { return ex_sym("D" + lab[size_t(a)]); };
  auto Db = [&lab](int a) { return ex_sym("dbar" + lab[size_t(a)]); };
  auto P = [&lab](int a) { return ex_sym("P" + lab[size_t(a)]); };
  auto L = [&lab](int a) { return ex_sym("L" + lab[size_t(a)]); };
  auto M = [&lab](int a, int b) {
    return ex_sym("M" + lab[size_t(a)] + lab[size_t(b)]);
  };
  auto slab = [&lab](int a) { return lab[size_t(a)]; };
  auto slab2 = [&lab](int a, int b) {
    return lab[size_t(a)] + ";" + lab[size_t(b)];
  };

  const std::string dotXX = "(X3*X3 - q*X+*X- - q^-1*X-*X+)";
  const std::string dotXD = "(X3*D3 - q*X+*D- - q^-1*X-*D+)";
  const std::string dotDD = "(D3*D3 - q*D+*D- - q^-1*D-*D+)";
  const std::string dotXDb = "(X3*dbar3 - q*X+*dbar- - q^-1*X-*dbar+)";
  const std::string dotLL = "(L3*L3 - q*L+*L- - q^-1*L-*L+)";

  out.push_back(make_family_identity(
      S, sp, "eu.calc.coordinate-exchange", req,
      "coordinate generators satisfy their quadratic exchange relations",
      {{"3;+", parse_expr("X3*X+", sp), parse_expr("q^2*X+*X3", sp)},
       {"3;-", parse_expr("X3*X-", sp), parse_expr("q^-2*X-*X3", sp)},
       {"-;+", parse_expr("X-*X+", sp),
        parse_expr("X+*X- + (q - q^-1)*X3*X3", sp)}}));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          QScalar e = em(b, c, a);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), X(c), X(b)}));
        }
      rows.push_back({slab(a), ex_sum(std::move(kids)), ex_int(0)});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.coordinate-antisym-null", req,
        "antisymmetric contraction of two coordinates vanishes",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {
            QScalar p = T.P3.get(ix({a, b, c, d}));
            if (!p.is_zero()) kids.push_back(ex_prod({ex_scalar(p), X(c), X(d)}));
          }
        rows.push_back({slab2(a, b), ex_sum(std::move(kids)), ex_int(0)});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.coordinate-projector-null", req,
        "triplet projector annihilates the coordinate square", std::move(rows)));
  }

  {
    std::vector<ConjRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int b = 0; b < 3; ++b)
        if (!g(a, b).is_zero())
          kids.push_back(ex_prod({ex_scalar(g(a, b)), X(b)}));
      rows.push_back({slab(a), X(a), ex_sum(std::move(kids))});
    }
    out.push_back(make_engine_conjugation(
        S, sp, "eu.calc.coordinate-conjugation", req,
        "conjugation lowers a coordinate index through the metric",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back({slab(a),
                      parse_expr("X" + slab(a) + "*" + dotXX, sp),
                      parse_expr(dotXX + "*X" + slab(a), sp)});
    out.push_back(make_family_identity(
        S, sp, "eu.calc.coordinate-length-central", req,
        "coordinate length square is central among coordinates",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        if (!gi(a, b).is_zero()) kids.push_back(ex_scalar(gi(a, b)));
        for (int c = 0; c < 3; ++c)
          for (int e = 0; e < 3; ++e) {
            QScalar r = Ri(a, b, c, e);
            if (!r.is_zero()) kids.push_back(ex_prod({ex_scalar(r), X(c), D(e)}));
          }
        rows.push_back({slab2(a, b), ex_prod({D(a), X(b)}),
                        ex_sum(std::move(kids))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.derivative-leibniz", req,
        "derivative moves across a coordinate through the inverse exchange "
        "matrix",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a) {
        std::vector<ExprPtr> lk;
        for (int e = 0; e < 3; ++e)
          if (!g(b, e).is_zero())
            lk.push_back(ex_prod({ex_scalar(g(b, e)), D(e), X(a)}));
        std::vector<ExprPtr> rk;
        if (a == b) rk.push_back(ex_int(1));
        for (int dd = 0; dd < 3; ++dd)
          for (int f = 0; f < 3; ++f) {
            QScalar c;
            for (int cc = 0; cc < 3; ++cc)
              c = c + R(a, cc, b, dd) * g(cc, f);
            c = qpow(4) * c;
            if (!c.is_zero()) rk.push_back(ex_prod({ex_scalar(c), X(dd), D(f)}));
          }
        rows.push_back({slab2(b, a), ex_sum(std::move(lk)),
                        ex_sum(std::move(rk))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.lowered-derivative-leibniz", req,
        "lowered derivative moves across a coordinate through the scaled "
        "exchange matrix",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a) {
        std::vector<ExprPtr> lk;
        for (int e = 0; e < 3; ++e) {
          QScalar c = QScalar() - qpow(6) * g(b, e);
          if (!c.is_zero()) lk.push_back(ex_prod({ex_scalar(c), Db(e), X(a)}));
        }
        std::vector<ExprPtr> rk;
        if (a == b) rk.push_back(ex_int(1));
        for (int dd = 0; dd < 3; ++dd)
          for (int f = 0; f < 3; ++f) {
            QScalar c;
            for (int cc = 0; cc < 3; ++cc)
              c = c + Ri(a, cc, b, dd) * g(cc, f);
            c = QScalar() - qpow(2) * c;
            if (!c.is_zero())
              rk.push_back(ex_prod({ex_scalar(c), X(dd), Db(f)}));
          }
        rows.push_back({slab2(b, a), ex_sum(std::move(lk)),
                        ex_sum(std::move(rk))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.opposite-derivative-leibniz", req,
        "rescaled conjugate derivative obeys the inverse-exchange move "
        "across a coordinate",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {
            QScalar p = T.P3.get(ix({a, b, c, d}));
            if (!p.is_zero()) kids.push_back(ex_prod({ex_scalar(p), D(c), D(d)}));
          }
        rows.push_back({slab2(a, b), ex_sum(std::move(kids)), ex_int(0)});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.derivative-projector-null", req,
        "triplet projector annihilates the derivative square", std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          QScalar e = em(d, c, a);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), D(c), D(d)}));
        }
      rows.push_back({slab(a), ex_sum(std::move(kids)), ex_int(0)});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.derivative-antisym-null", req,
        "antisymmetric contraction of two derivatives vanishes",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        QScalar c0 = QScalar() - qpow(-6) * gi(a, b);
        if (!c0.is_zero()) kids.push_back(ex_scalar(c0));
        for (int c = 0; c < 3; ++c)
          for (int e = 0; e < 3; ++e) {
            QScalar r = R(a, b, c, e);
            if (!r.is_zero())
              kids.push_back(ex_prod({ex_scalar(r), X(c), Db(e)}));
          }
        rows.push_back({slab2(a, b), ex_prod({Db(a), X(b)}),
                        ex_sum(std::move(kids))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.conjugate-derivative-leibniz", req,
        "conjugate derivative moves across a coordinate through the "
        "exchange matrix",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          QScalar e = em(d, c, a);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), Db(c), Db(d)}));
        }
      rows.push_back({slab(a), ex_sum(std::move(kids)), ex_int(0)});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.conjugate-derivative-antisym-null", req,
        "antisymmetric contraction of two conjugate derivatives vanishes",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a) {
        std::vector<ExprPtr> kids;
        for (int c = 0; c < 3; ++c)
          for (int e = 0; e < 3; ++e) {
            QScalar r = qpow(-4) * Ri(b, a, c, e);
            if (!r.is_zero())
              kids.push_back(ex_prod({ex_scalar(r), Db(c), D(e)}));
          }
        rows.push_back({slab2(b, a), ex_prod({D(b), Db(a)}),
                        ex_sum(std::move(kids))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.mixed-derivative-exchange", req,
        "two derivative families exchange through the scaled inverse "
        "exchange matrix",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {
            QScalar p = T.P3.get(ix({a, b, c, d}));
            if (p.is_zero()) continue;
            kids.push_back(ex_prod({ex_scalar(p), D(c), Db(d)}));
            kids.push_back(ex_prod({ex_scalar(p), Db(c), D(d)}));
          }
        rows.push_back({slab2(a, b), ex_sum(std::move(kids)), ex_int(0)});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.mixed-derivative-projector-null", req,
        "triplet projector annihilates the symmetrized mixed derivative "
        "square",
        std::move(rows)));
  }

  out.push_back(make_alg_identity(
      S, sp, "eu.calc.scaling-element-form", req,
      "scaling element expands into unit, dot product and length terms",
      "Lambda",
      "1 + (q^4 - 1)*" + dotXD + " + q^2*(q^2 - 1)^2*" + dotXX + "*" + dotDD));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      rows.push_back({"X" + slab(a),
                      ex_prod({ex_sym("Lambda"), X(a)}),
                      ex_prod({ex_scalar(qpow(4)), X(a), ex_sym("Lambda")})});
      rows.push_back({"D" + slab(a),
                      ex_prod({ex_sym("Lambda"), D(a)}),
                      ex_prod({ex_scalar(qpow(-4)), D(a), ex_sym("Lambda")})});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.scaling-exchange", req,
        "scaling element rescales coordinates and derivatives by inverse "
        "fourth powers",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back(
          {slab(a), ex_sym("dbar" + slab(a)),
           parse_expr("-q^-6*l^-2*(D" + slab(a) + " + q^2*(q^2 - 1)*X" +
                          slab(a) + "*" + dotDD + ")",
                      sp)});
    out.push_back(make_family_identity(
        S, sp, "eu.calc.conjugate-derivative-realization", req,
        "conjugate derivative equals its closed form in the scaling inverse",
        std::move(rows)));
  }

  out.push_back(make_identity(
      S, sp, "eu.calc.scaling-conjugation", req,
      "conjugate of the scaling element is its scaled inverse",
      []() -> std::optional<std::string> {
        const Algebra& alg = Algebra::euclid();
        NCPoly lam = alg.lambda_poly();
        NCPoly prod = alg.mul(alg.conjugate(lam), lam);
        ClearResult cr = alg.clear_and_equal(prod, alg.one().scaled(qpow(-12)));
        if (cr.equal) return std::nullopt;
        return poly_residue(alg, cr.residue);
      }));

  {
    std::vector<FamilyRow> rows;
    for (int c = 0; c < 3; ++c) {
      std::vector<ExprPtr> kids;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          QScalar e = em(b, a, c);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), P(a), P(b)}));
        }
      rows.push_back({slab(c), ex_sum(std::move(kids)), ex_int(0)});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.momentum-antisym-null", req,
        "antisymmetric contraction of two momenta vanishes", std::move(rows)));
  }

  {
    std::vector<ConjRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int b = 0; b < 3; ++b)
        if (!g(a, b).is_zero())
          kids.push_back(ex_prod({ex_scalar(g(a, b)), P(b)}));
      rows.push_back({slab(a), P(a), ex_sum(std::move(kids))});
    }
    out.push_back(make_engine_conjugation(
        S, sp, "eu.calc.momentum-conjugation", req,
        "momentum components conjugate into their metric-lowered partners",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    auto diff = [&](int a) { return ex_sum({D(a), ex_neg(Db(a))}); };
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> lk;
        lk.push_back(ex_prod({diff(a), X(b)}));
        for (int c = 0; c < 3; ++c)
          for (int e = 0; e < 3; ++e) {
            QScalar r = Ri(a, b, c, e);
            if (!r.is_zero())
              lk.push_back(ex_prod({ex_scalar(-r), X(c), diff(e)}));
          }
        std::vector<ExprPtr> rk;
        QScalar c0 = (QScalar(1) + qpow(-6)) * gi(a, b);
        if (!c0.is_zero()) rk.push_back(ex_scalar(c0));
        for (int c = 0; c < 3; ++c)
          for (int e = 0; e < 3; ++e) {
            QScalar r = Ri(a, b, c, e) - R(a, b, c, e);
            if (!r.is_zero()) rk.push_back(ex_prod({ex_scalar(r), X(c), Db(e)}));
          }
        rows.push_back({slab2(a, b), ex_sum(std::move(lk)),
                        ex_sum(std::move(rk))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.derivative-difference-exchange", req,
        "difference of the derivative families has an inhomogeneous "
        "inverse-exchange move",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    ExprPtr xdb = parse_expr(dotXDb, sp);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> lk;
        lk.push_back(ex_prod({P(a), X(b)}));
        for (int c = 0; c < 3; ++c)
          for (int e = 0; e < 3; ++e) {
            QScalar r = Ri(a, b, c, e);
            if (!r.is_zero()) lk.push_back(ex_prod({ex_scalar(-r), X(c), P(e)}));
          }
        std::vector<ExprPtr> rk;
        QScalar c0 = gi(a, b);
        if (!c0.is_zero()) {
          ExprPtr coeff = ex_prod(
              {ex_div(ex_neg(ex_sym("i")), ex_int(2)),
               ex_scalar((QScalar(1) + qpow(-6)) * c0),
               ex_sum({ex_int(1),
                       ex_prod({ex_scalar(qpow(2) * (qpow(2) - QScalar(1))),
                                xdb})})});
          rk.push_back(coeff);
        }
        for (int cc = 0; cc < 3; ++cc)
          for (int dd = 0; dd < 3; ++dd) {
            QScalar c;
            for (int f = 0; f < 3; ++f)
              c = c + eup(a, b, f) * el(dd, cc, f);
            c = (QScalar(1) - qpow(-4)) * c;
            if (c.is_zero()) continue;
            rk.push_back(ex_prod({ex_div(ex_sym("i"), ex_int(2)),
                                  ex_scalar(c), X(cc), Db(dd)}));
          }
        rows.push_back({slab2(a, b), ex_sum(std::move(lk)),
                        ex_sum(std::move(rk))});
      }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.momentum-coordinate-exchange", req,
        "momentum-coordinate move closes on conjugate-derivative terms",
        std::move(rows)));
  }

  out.push_back(make_alg_identity(
      S, sp, "eu.calc.singlet-factor-scaling", req,
      "scaling element converts the conjugate dot factor into the plain one",
      "Lambda*(1 + q^2*(q^2 - 1)*" + dotXDb + ")",
      "1 + q^2*(q^2 - 1)*" + dotXD));

  out.push_back(make_identity(
      S, sp, "eu.calc.singlet-factor-conjugation", req,
      "conjugated dot factor matches the scaled inverse image of the plain "
      "one",
      []() -> std::optional<std::string> {
        const Algebra& alg = Algebra::euclid();
        QScalar k = qpow(2) * (qpow(2) - QScalar(1));
        NCPoly barxd = alg.conjugate(alg.dot_xd());
        NCPoly lhs = alg.mul(alg.lambda_poly(), alg.one() + barxd.scaled(k));
        NCPoly rhs = (alg.one() + alg.dot_xd().scaled(k)).scaled(qpow(-6));
        ClearResult cr = alg.clear_and_equal(lhs, rhs);
        if (cr.equal) return std::nullopt;
        return poly_residue(alg, cr.residue);
      }));

  out.push_back(make_alg_identity(
      S, sp, "eu.calc.scaling-root-factor-form", req,
      "hermitian scale factor equals the inverse root times the dot factor",
      "W", "l^-1*(1 + q^2*(q^2 - 1)*" + dotXD + ")"));

  out.push_back(make_engine_conjugation(
      S, sp, "eu.calc.scaling-root-factor-hermitian", req,
      "hermitian scale factor is fixed by conjugation",
      {{"W", ex_sym("W"), ex_sym("W")}}));

  out.push_back(make_alg_identity(
      S, sp, "eu.calc.singlet-factor-root-split", req,
      "conjugate dot factor splits into inverse root times the hermitian "
      "scale factor",
      "1 + q^2*(q^2 - 1)*" + dotXDb, "l^-1*W"));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          QScalar e = em(d, c, a);
          if (!e.is_zero())
            kids.push_back(ex_prod({ex_scalar(e), X(c), Db(d)}));
        }
      rows.push_back({slab(a), L(a),
                      ex_prod({ex_sym("l"), ex_sum(std::move(kids))})});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.rotation-generator-form", req,
        "rotation generators equal the root-dressed antisymmetric "
        "coordinate-derivative pairing",
        std::move(rows)));
  }

  {
    std::vector<ConjRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      for (int b = 0; b < 3; ++b)
        if (!g(a, b).is_zero())
          kids.push_back(ex_prod({ex_scalar(g(a, b)), L(b)}));
      rows.push_back({slab(a), L(a), ex_sum(std::move(kids))});
    }
    out.push_back(make_engine_conjugation(
        S, sp, "eu.calc.rotation-conjugation", req,
        "rotation generators conjugate into their metric-lowered partners",
        std::move(rows)));
  }

  out.push_back(make_family_identity(
      S, sp, "eu.calc.momentum-exchange-factorized", req,
      "momentum-coordinate move factorizes through the hermitian scale "
      "factor and the rotation generators",
      euclid_phase_exchange_rows()));

  {
    std::vector<FamilyRow> rows;
    for (int c = 0; c < 3; ++c) {
      std::vector<ExprPtr> kids;
      for (int aa = 0; aa < 3; ++aa)
        for (int bb = 0; bb < 3; ++bb) {
          QScalar e = em(bb, aa, c);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), L(aa), L(bb)}));
        }
      rows.push_back({slab(c), ex_sum(std::move(kids)),
                      ex_prod({ex_scalar(-qpow(-2)), ex_sym("W"), L(c)})});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.rotation-closure", req,
        "rotation generators close under the antisymmetric pairing",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back({slab(a), ex_prod({L(a), ex_sym("W")}),
                      ex_prod({ex_sym("W"), L(a)})});
    out.push_back(make_family_identity(
        S, sp, "eu.calc.rotation-scalar-commute", req,
        "hermitian scale factor commutes with the rotation generators",
        std::move(rows)));
  }

  auto w_exchange_rows = [&](auto gen, const char* tag) {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      kids.push_back(ex_prod({ex_scalar(qs("1 + (q - q^-1)^2")), gen(a),
                              ex_sym("W")}));
      for (int b = 0; b < 3; ++b)
        for (int k = 0; k < 3; ++k) {
          QScalar c;
          for (int f = 0; f < 3; ++f)
            for (int cc = 0; cc < 3; ++cc)
              c = c + eup(a, f, cc) * g(cc, b) * g(f, k);
          c = (qpow(2) - QScalar(1)) * (qpow(2) - QScalar(1)) * c;
          if (!c.is_zero()) kids.push_back(ex_prod({ex_scalar(c), gen(b), L(k)}));
        }
      rows.push_back({std::string(tag) + slab(a),
                      ex_prod({ex_sym("W"), gen(a)}), ex_sum(std::move(kids))});
    }
    return rows;
  };

  {
    std::vector<FamilyRow> rows = w_exchange_rows(X, "X");
    auto prows = w_exchange_rows(P, "P");
    rows.insert(rows.end(), prows.begin(), prows.end());
    out.push_back(make_family_identity(
        S, sp, "eu.calc.scalar-vector-exchange", req,
        "hermitian scale factor moves across coordinates and momenta with "
        "a rotation correction",
        std::move(rows)));
  }

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        for (int k = 0; k < 3; ++k) {
          QScalar c;
          for (int f = 0; f < 3; ++f) c = c + eup(a, b, f) * g(f, k);
          if (!c.is_zero()) kids.push_back(ex_prod({ex_scalar(c), L(k)}));
        }
        rows.push_back({"definition " + slab2(a, b), M(a, b),
                        ex_sum(std::move(kids))});
      }
    for (int f = 0; f < 3; ++f) {
      std::vector<ExprPtr> lk;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          QScalar e = el(b, a, f);
          if (!e.is_zero()) lk.push_back(ex_prod({ex_scalar(e), M(a, b)}));
        }
      std::vector<ExprPtr> rk;
      for (int k = 0; k < 3; ++k) {
        QScalar c = (QScalar(1) + qpow(4)) * g(f, k);
        if (!c.is_zero()) rk.push_back(ex_prod({ex_scalar(c), L(k)}));
      }
      rows.push_back({"trace " + slab(f), ex_sum(std::move(lk)),
                      ex_sum(std::move(rk))});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.antisym-generator-form", req,
        "antisymmetric generator matrix is the raised rotation vector and "
        "traces back to it",
        std::move(rows)));
  }

  auto w_exchange_m_rows = [&](auto gen, const char* tag) {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      kids.push_back(ex_prod({ex_scalar(qs("1 + (q - q^-1)^2")), gen(a),
                              ex_sym("W")}));
      for (int dd = 0; dd < 3; ++dd)
        for (int b = 0; b < 3; ++b) {
          QScalar c = (qpow(2) - QScalar(1)) * (qpow(2) - QScalar(1)) *
                      g(dd, b);
          if (!c.is_zero())
            kids.push_back(ex_prod({ex_scalar(c), gen(dd), M(b, a)}));
        }
      rows.push_back({std::string(tag) + slab(a),
                      ex_prod({ex_sym("W"), gen(a)}), ex_sum(std::move(kids))});
    }
    return rows;
  };

  {
    std::vector<FamilyRow> rows = w_exchange_m_rows(X, "X");
    auto prows = w_exchange_m_rows(P, "P");
    rows.insert(rows.end(), prows.begin(), prows.end());
    out.push_back(make_family_identity(
        S, sp, "eu.calc.scalar-vector-exchange-antisym-form", req,
        "scale factor move across vectors rewritten with the antisymmetric "
        "generator matrix",
        std::move(rows)));
  }

  auto rotation_vector_rows = [&](auto gen, const char* tag) {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int f = 0; f < 3; ++f) {
        std::vector<ExprPtr> kids;
        for (int e = 0; e < 3; ++e) {
          QScalar c;
          for (int k = 0; k < 3; ++k) c = c + eup(a, f, k) * g(k, e);
          c = QScalar() - qpow(-4) * c;
          if (!c.is_zero())
            kids.push_back(ex_prod({ex_scalar(c), gen(e), ex_sym("W")}));
        }
        for (int cc = 0; cc < 3; ++cc)
          for (int k = 0; k < 3; ++k) {
            QScalar c;
            for (int b = 0; b < 3; ++b)
              for (int dd = 0; dd < 3; ++dd)
                c = c + em(b, cc, a) * eup(b, f, dd) * g(dd, k);
            c = QScalar() - qpow(-2) * c;
            if (!c.is_zero())
              kids.push_back(ex_prod({ex_scalar(c), gen(cc), L(k)}));
          }
        rows.push_back({std::string(tag) + " " + slab2(a, f),
                        ex_prod({L(a), gen(f)}), ex_sum(std::move(kids))});
      }
    return rows;
  };

  out.push_back(make_family_identity(
      S, sp, "eu.calc.rotation-coordinate-exchange", req,
      "rotation generators move across coordinates with scale and rotation "
      "terms",
      rotation_vector_rows(X, "X")));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int f = 0; f < 3; ++f) {
          std::vector<ExprPtr> kids;
          for (int mi = 0; mi < 3; ++mi)
            for (int li = 0; li < 3; ++li) {
              QScalar c = QScalar() -
                          qpow(-4) * (QScalar(1) + qpow(4)) *
                              T.P3.get(ix({a, b, mi, li}));
              if (c.is_zero()) continue;
              std::vector<ExprPtr> inner;
              if (!gi(li, f).is_zero())
                inner.push_back(
                    ex_prod({ex_scalar(gi(li, f)), ex_sym("W")}));
              inner.push_back(ex_prod({ex_scalar(qpow(2)), M(li, f)}));
              kids.push_back(
                  ex_prod({ex_scalar(c), X(mi), ex_sum(std::move(inner))}));
            }
          if (kids.empty()) kids.push_back(ex_int(0));
          rows.push_back({slab(a) + ";" + slab(b) + ";" + slab(f),
                          ex_prod({M(a, b), X(f)}), ex_sum(std::move(kids))});
        }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.antisym-coordinate-exchange", req,
        "antisymmetric generator matrix moves across coordinates through "
        "the triplet projector",
        std::move(rows)));
  }

  out.push_back(make_family_identity(
      S, sp, "eu.calc.rotation-momentum-exchange", req,
      "rotation generators move across momenta with scale and rotation "
      "terms",
      rotation_vector_rows(P, "P")));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back({"L" + slab(a),
                      parse_expr("L" + slab(a) + "*" + dotLL, sp),
                      parse_expr(dotLL + "*L" + slab(a), sp)});
    rows.push_back({"W", parse_expr("W*" + dotLL, sp),
                    parse_expr(dotLL + "*W", sp)});
    out.push_back(make_family_identity(
        S, sp, "eu.calc.rotation-casimir-central", req,
        "rotation length square commutes with the rotation generators and "
        "the scale factor",
        std::move(rows)));
  }

  {
    const std::string cand =
        "(q^4*(q^2 - 1)^2*" + dotLL + " - W*W + 1)";
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      rows.push_back({"X" + slab(a),
                      parse_expr(cand + "*X" + slab(a), sp),
                      parse_expr("X" + slab(a) + "*" + cand, sp)});
      rows.push_back({"D" + slab(a),
                      parse_expr(cand + "*D" + slab(a), sp),
                      parse_expr("D" + slab(a) + "*" + cand, sp)});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.calc.center-candidate-commutes", req,
        "casimir combination commutes with coordinates and derivatives",
        std::move(rows)));
  }

  out.push_back(make_alg_identity(
      S, sp, "eu.calc.center-candidate-null", req,
      "casimir combination vanishes on the realization",
      "W*W - 1", "q^4*(q^2 - 1)^2*" + dotLL));

  out.push_back(make_identity(
      S, sp, "eu.calc.conjugation-involution", req,
      "conjugation applied twice returns every generator",
      []() -> std::optional<std::string> {
        const Algebra& alg = Algebra::euclid();
        const char* gens[] = {"X+", "X3", "X-", "D+", "D3", "D-", "l"};
        for (const char* s : gens) {
          NCPoly p = eval_expr(parse_expr(s, sp), sp);
          NCPoly twice = alg.conjugate(alg.conjugate(p));
          ClearResult cr = alg.clear_and_equal(twice, p);
          if (!cr.equal)
            return std::string("generator ") + s + ": " +
                   poly_residue(alg, cr.residue);
        }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.calc.classical-limit-coordinates", req,
      "coordinate commutators vanish at the undeformed point",
      []() -> std::optional<std::string> {
        const Algebra& alg = Algebra::euclid();
        const auto& lab = space_labels(Space::euclid3);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            NCPoly d = alg.mul(alg.x_gen(a), alg.x_gen(b)) -
                       alg.mul(alg.x_gen(b), alg.x_gen(a));
            if (auto r = poly_q1_residue(alg, d))
              return "pair (" + lab[size_t(a)] + ";" + lab[size_t(b)] +
                     "): " + *r;
          }
        return std::nullopt;
      }));

  out.push_back(make_identity(
      S, sp, "eu.calc.classical-limit-momenta", req,
      "momentum commutators vanish at the undeformed point",
      []() -> std::optional<std::string> {
        const Algebra& alg = Algebra::euclid();
        const auto& lab = space_labels(Space::euclid3);
        std::vector<NCPoly> mom;
        for (int a = 0; a < 3; ++a)
          mom.push_back(eval_expr(
              parse_expr("P" + lab[size_t(a)], Space::euclid3), Space::euclid3));
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            NCPoly d = alg.mul(mom[size_t(a)], mom[size_t(b)]) -
                       alg.mul(mom[size_t(b)], mom[size_t(a)]);
            if (auto r = poly_q1_residue(alg, d))
              return "pair (" + lab[size_t(a)] + ";" + lab[size_t(b)] +
                     "): " + *r;
          }
        return std::nullopt;
      }));
}

/* -------------------------------------------------------------------- */
/* Three-space phase-space algebra                                       */

inline void build_euclid_phase(std::vector<Identity>& out) {
  constexpr Space sp = Space::euclid3;
  const std::string S = "euclid-phase";
  constexpr IdentityKind req = IdentityKind::required;
  constexpr IdentityKind expl = IdentityKind::exploratory;
  const EuclidTensors& T = euclid_tensors();
  const auto& lab = space_labels(sp);

  auto g = [&T](int a, int b) { return T.g.get(ix({a, b})); };
  auto gi = [&T](int a, int b) { return T.g_inv.get(ix({a, b})); };
  auto em = [&T](int a, int b, int c) { return T.eps3.get(ix({a, b, c})); };
  auto el = [&T](int a, int b, int c) { return T.eps_low.get(ix({a, b, c})); };
  auto eup = [&T](int a, int b, int c) { return T.eps_up.get(ix({a, b, c})); };
  auto X = [&lab](int a) { return ex_sym("X" + lab[size_t(a)]); };
  auto P = [&lab](int a) { return ex_sym("P" + lab[size_t(a)]); };
  auto L = [&lab](int a) { return ex_sym("L" + lab[size_t(a)]); };
  auto slab = [&lab](int a) { return lab[size_t(a)]; };
  auto slab2 = [&lab](int a, int b) {
    return lab[size_t(a)] + ";" + lab[size_t(b)];
  };

  const std::string dotXX = "(X3*X3 - q*X+*X- - q^-1*X-*X+)";
  const std::string dotXP = "(X3*P3 - q*X+*P- - q^-1*X-*P+)";
  const std::string dotPX = "(P3*X3 - q*P+*X- - q^-1*P-*X+)";
  const std::string dotLX = "(L3*X3 - q*L+*X- - q^-1*L-*X+)";
  const std::string dotXL = "(X3*L3 - q*X+*L- - q^-1*X-*L+)";
  const std::string dotLP = "(L3*P3 - q*L+*P- - q^-1*L-*P+)";
  const std::string dotPL = "(P3*L3 - q*P+*L- - q^-1*P-*L+)";
  const std::string dotLL = "(L3*L3 - q*L+*L- - q^-1*L-*L+)";

  auto antisym_rows = [&](auto gen, const char* tag) {
    std::vector<FamilyRow> rows;
    for (int c = 0; c < 3; ++c) {
      std::vector<ExprPtr> kids;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          QScalar e = em(b, a, c);
          if (!e.is_zero())
            kids.push_back(ex_prod({ex_scalar(e), gen(a), gen(b)}));
        }
      rows.push_back({std::string(tag) + " " + slab(c), ex_sum(std::move(kids)),
                      ex_int(0)});
    }
    return rows;
  };

  auto rotation_closure_rows = [&]() {
    std::vector<FamilyRow> rows;
    for (int c = 0; c < 3; ++c) {
      std::vector<ExprPtr> kids;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          QScalar e = em(b, a, c);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), L(a), L(b)}));
        }
      rows.push_back({slab(c), ex_sum(std::move(kids)),
                      ex_prod({ex_scalar(-qpow(-2)), ex_sym("W"), L(c)})});
    }
    return rows;
  };

  auto rotation_action_rows = [&](auto gen, const char* tag) {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<ExprPtr> kids;
        for (int e = 0; e < 3; ++e) {
          QScalar c;
          for (int k = 0; k < 3; ++k) c = c + eup(a, b, k) * g(k, e);
          c = QScalar() - qpow(-4) * c;
          if (!c.is_zero())
            kids.push_back(ex_prod({ex_scalar(c), gen(e), ex_sym("W")}));
        }
        for (int cc = 0; cc < 3; ++cc)
          for (int e = 0; e < 3; ++e) {
            QScalar c;
            for (int k = 0; k < 3; ++k)
              for (int dd = 0; dd < 3; ++dd)
                c = c + em(k, cc, a) * eup(k, b, dd) * g(dd, e);
            c = QScalar() - qpow(-2) * c;
            if (!c.is_zero())
              kids.push_back(ex_prod({ex_scalar(c), gen(cc), L(e)}));
          }
        rows.push_back({std::string(tag) + " " + slab2(a, b),
                        ex_prod({L(a), gen(b)}), ex_sum(std::move(kids))});
      }
    return rows;
  };

  auto rotation_scalar_rows = [&]() {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back({slab(a), ex_prod({L(a), ex_sym("W")}),
                      ex_prod({ex_sym("W"), L(a)})});
    return rows;
  };

  auto scalar_action_rows = [&](auto gen, const char* tag) {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      std::vector<ExprPtr> kids;
      kids.push_back(ex_prod({ex_scalar(qs("1 + (q - q^-1)^2")), gen(a),
                              ex_sym("W")}));
      for (int b = 0; b < 3; ++b)
        for (int e = 0; e < 3; ++e) {
          QScalar c;
          for (int cc = 0; cc < 3; ++cc)
            for (int k = 0; k < 3; ++k)
              c = c + eup(a, cc, k) * g(k, b) * g(cc, e);
          c = (qpow(2) - QScalar(1)) * (qpow(2) - QScalar(1)) * c;
          if (!c.is_zero()) kids.push_back(ex_prod({ex_scalar(c), gen(b), L(e)}));
        }
      rows.push_back({std::string(tag) + " " + slab(a),
                      ex_prod({ex_sym("W"), gen(a)}), ex_sum(std::move(kids))});
    }
    return rows;
  };

  auto root_scaling_rows = [&]() {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back({"X" + slab(a), ex_prod({ex_sym("l"), X(a)}),
                      ex_prod({ex_scalar(qpow(2)), X(a), ex_sym("l")})});
    for (int a = 0; a < 3; ++a)
      rows.push_back({"P" + slab(a), ex_prod({ex_sym("l"), P(a)}),
                      ex_prod({ex_scalar(qpow(-2)), P(a), ex_sym("l")})});
    for (int a = 0; a < 3; ++a)
      rows.push_back({"L" + slab(a), ex_prod({ex_sym("l"), L(a)}),
                      ex_prod({L(a), ex_sym("l")})});
    rows.push_back({"W", ex_prod({ex_sym("l"), ex_sym("W")}),
                    ex_prod({ex_sym("W"), ex_sym("l")})});
    return rows;
  };

  auto casimir_rows = [&]() {
    std::vector<FamilyRow> rows;
    rows.push_back({"casimir",
                    parse_expr("q^4*(q^2 - 1)^2*" + dotLL, sp),
                    parse_expr("W*W - 1", sp)});
    return rows;
  };

  out.push_back(make_family_identity(
      S, sp, "eu.phase.coordinate-antisym-null", req,
      "antisymmetric contraction of two coordinates vanishes",
      antisym_rows(X, "X")));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.momentum-antisym-null", req,
      "antisymmetric contraction of two momenta vanishes",
      antisym_rows(P, "P")));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.rotation-closure", req,
      "rotation generators close under the antisymmetric pairing",
      rotation_closure_rows()));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.rotation-coordinate-action", req,
      "rotation generators act on coordinates with scale and rotation terms",
      rotation_action_rows(X, "X")));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.rotation-momentum-action", req,
      "rotation generators act on momenta with scale and rotation terms",
      rotation_action_rows(P, "P")));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.rotation-scalar-commute", req,
      "hermitian scale factor commutes with the rotation generators",
      rotation_scalar_rows()));

  {
    std::vector<FamilyRow> rows = scalar_action_rows(X, "X");
    auto prows = scalar_action_rows(P, "P");
    rows.insert(rows.end(), prows.begin(), prows.end());
    out.push_back(make_family_identity(
        S, sp, "eu.phase.scalar-vector-action", req,
        "hermitian scale factor moves across coordinates and momenta with a "
        "rotation correction",
        std::move(rows)));
  }

  out.push_back(make_family_identity(
      S, sp, "eu.phase.phase-exchange-factorized", req,
      "momentum-coordinate move factorizes through the hermitian scale "
      "factor and the rotation generators",
      euclid_phase_exchange_rows()));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.root-scaling-exchange", req,
      "scaling root rescales coordinates and momenta and fixes the rotation "
      "sector",
      root_scaling_rows()));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.casimir-constraint", req,
      "rotation length square is a function of the hermitian scale factor",
      casimir_rows()));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a) {
      ExprPtr lhs = ex_prod({ex_scalar(qs("i/2*(1 - q^-4)*(1 + q^4)")),
                             ex_pow(ex_sym("l"), -1), L(a)});
      std::vector<ExprPtr> kids;
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          QScalar e = em(c, b, a);
          if (e.is_zero()) continue;
          kids.push_back(ex_prod({ex_scalar(e), P(b), X(c)}));
          kids.push_back(ex_prod({ex_scalar(qpow(4) * e), X(b), P(c)}));
        }
      rows.push_back({slab(a), std::move(lhs), ex_sum(std::move(kids))});
    }
    out.push_back(make_family_identity(
        S, sp, "eu.phase.rotation-from-phase-ordering", req,
        "rotation generators arise from the antisymmetrized "
        "momentum-coordinate pairing; the overall sign is the one obtained "
        "by contracting the factorized exchange rows with the antisymmetric "
        "tensor",
        std::move(rows)));
  }

  out.push_back(make_alg_identity_ast(
      S, sp, "eu.phase.scalar-from-phase-ordering", req,
      "hermitian scale factor arises from the weighted dot-product "
      "difference",
      ex_prod({ex_scalar(qs("-i/2*q^-8*(1 + q^6)*(1 + q^2 + q^4)")),
               ex_pow(ex_sym("l"), -1), ex_sym("W")}),
      parse_expr(dotPX + " - q^6*" + dotXP, sp)));

  {
    std::vector<ConjRow> rows;
    auto lower = [&](const char* root, int a) {
      std::vector<ExprPtr> kids;
      for (int b = 0; b < 3; ++b)
        if (!g(a, b).is_zero())
          kids.push_back(
              ex_prod({ex_scalar(g(a, b)), ex_sym(root + lab[size_t(b)])}));
      return ex_sum(std::move(kids));
    };
    for (int a = 0; a < 3; ++a)
      rows.push_back({"X" + slab(a), X(a), lower("X", a)});
    for (int a = 0; a < 3; ++a)
      rows.push_back({"P" + slab(a), P(a), lower("P", a)});
    for (int a = 0; a < 3; ++a)
      rows.push_back({"L" + slab(a), L(a), lower("L", a)});
    rows.push_back({"W", ex_sym("W"), ex_sym("W")});
    rows.push_back({"tau", ex_sym("tau"), ex_sym("tau")});
    rows.push_back({"root", ex_sym("l"),
                    ex_prod({ex_scalar(qpow(-6)), ex_pow(ex_sym("l"), -1)})});
    out.push_back(make_engine_conjugation(
        S, sp, "eu.phase.hermiticity", req,
        "phase-space generators conjugate into their metric-lowered "
        "partners and the scale roots invert",
        std::move(rows)));
  }

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.rotation-coordinate-dot", req,
      "rotation-coordinate dot product reverses with a fixed weight",
      dotLX, "-q^-2*(1 + q^4)*" + dotXL));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.rotation-coordinate-null", req,
      "rotation-coordinate dot products vanish",
      {{"forward", parse_expr(dotXL, sp), ex_int(0)},
       {"reversed", parse_expr(dotLX, sp), ex_int(0)}}));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.rotation-momentum-null", req,
      "rotation-momentum dot products vanish",
      {{"forward", parse_expr(dotLP, sp), ex_int(0)},
       {"reversed", parse_expr(dotPL, sp), ex_int(0)}}));

  {
    std::vector<FamilyRow> rows;
    for (int a = 0; a < 3; ++a)
      rows.push_back({slab(a),
                      parse_expr("L" + slab(a) + "*" + dotXX, sp),
                      parse_expr(dotXX + "*L" + slab(a), sp)});
    out.push_back(make_family_identity(
        S, sp, "eu.phase.rotation-length-central", req,
        "coordinate length square commutes with the rotation generators",
        std::move(rows)));
  }

  out.push_back(make_family_identity(
      S, sp, "eu.phase.raising-coordinate-action", req,
      "raising rotation component acts on coordinates through the dilation "
      "root combination",
      {{"+;+", parse_expr("L+*X+", sp), parse_expr("X+*L+", sp)},
       {"+;3", parse_expr("L+*X3", sp),
        parse_expr("X3*L+ + q^-2*X+*(W + q^2*(1 - q^2)*L3)", sp)},
       {"+;-", parse_expr("L+*X-", sp),
        parse_expr("X-*L+ + q^-3*X3*(W + q^2*(1 - q^2)*L3)", sp)}}));

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.dilation-root-form", req,
      "inverse dilation root equals the scale factor shifted by the third "
      "rotation component",
      "tau", "W + q^2*(1 - q^2)*L3"));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.lowering-coordinate-action", req,
      "lowering rotation component acts on coordinates through the "
      "dilation root",
      {{"-;+", parse_expr("L-*X+", sp),
        parse_expr("X+*L- - q^-3*X3*tau", sp)},
       {"-;3", parse_expr("L-*X3", sp),
        parse_expr("X3*L- - q^-4*X-*tau", sp)},
       {"-;-", parse_expr("L-*X-", sp), parse_expr("X-*L-", sp)}}));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.dilation-coordinate-exchange", req,
      "inverse dilation root rescales the coordinates",
      {{"+", parse_expr("tau*X+", sp), parse_expr("q^2*X+*tau", sp)},
       {"3", parse_expr("tau*X3", sp), parse_expr("X3*tau", sp)},
       {"-", parse_expr("tau*X-", sp), parse_expr("q^-2*X-*tau", sp)}}));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.dilation-momentum-exchange", expl,
      "inverse dilation root rescales the momenta",
      {{"+", parse_expr("tau*P+", sp), parse_expr("q^2*P+*tau", sp)},
       {"3", parse_expr("tau*P3", sp), parse_expr("P3*tau", sp)},
       {"-", parse_expr("tau*P-", sp), parse_expr("q^-2*P-*tau", sp)}}));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.invariant-scalar-commutes", expl,
      "ladder components and the dilation root commute with the coordinate "
      "length square",
      {{"L+", parse_expr("L+*" + dotXX, sp), parse_expr(dotXX + "*L+", sp)},
       {"L-", parse_expr("L-*" + dotXX, sp), parse_expr(dotXX + "*L-", sp)},
       {"tau", parse_expr("tau*" + dotXX, sp),
        parse_expr(dotXX + "*tau", sp)}}));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.invariant-mixed-scalar-commutes", expl,
      "ladder components and the dilation root commute with the "
      "coordinate-momentum dot product",
      {{"L+", parse_expr("L+*" + dotXP, sp), parse_expr(dotXP + "*L+", sp)},
       {"L-", parse_expr("L-*" + dotXP, sp), parse_expr(dotXP + "*L-", sp)},
       {"tau", parse_expr("tau*" + dotXP, sp),
        parse_expr(dotXP + "*tau", sp)}}));

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.third-component-closure", req,
      "ladder commutator reproduces the dressed third component",
      "q*L-*L+ - q*L+*L-", "-q^-2*tau*L3"));

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.casimir-component-form", req,
      "weighted ladder anticommutator closes on the scale factor and the "
      "third component",
      "q^4*(1 - q^2)^2*(q*L+*L- + q^-1*L-*L+)",
      "1 - W*W + q^4*(q^2 - 1)^2*L3*L3"));

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.ladder-closure", req,
      "weighted ladder commutator is a function of the dilation root",
      "q*L+*L- - q^-1*L-*L+", "1/(q^4*(1 - q^4))*(tau*tau - 1)"));

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.third-component-resolved", req,
      "third rotation component resolves into the ladder commutator after "
      "clearing the dilation root",
      "tau*L3", "q^3*(L+*L- - L-*L+)"));

  out.push_back(make_alg_identity(
      S, sp, "eu.phase.scalar-resolved", req,
      "scale factor resolves into dilation root and ladder terms after "
      "clearing",
      "tau*W", "tau*tau + q^5*(q^2 - 1)*(L+*L- - L-*L+)"));

  out.push_back(make_family_identity(
      S, sp, "eu.phase.dilation-rotation-exchange", req,
      "inverse dilation root rescales the ladder components and weights "
      "their commutator",
      {{"+", parse_expr("tau*L+", sp), parse_expr("q^2*L+*tau", sp)},
       {"-", parse_expr("tau*L-", sp), parse_expr("q^-2*L-*tau", sp)},
       {"commutator", parse_expr("q*L+*L- - q^-1*L-*L+", sp),
        parse_expr("1/(q^4*(1 - q^4))*(tau*tau - 1)", sp)}}));

  {
    using vdetail::graded_atom;
    using vdetail::graded_add;
    using vdetail::graded_mul;
    using vdetail::graded_scale;
    auto A = [&](const char* s) { return graded_atom(s); };
    std::vector<vdetail::GradedRow> rows;
    rows.push_back(
        {"ladder",
         graded_add(graded_scale(graded_mul(A("T+"), A("T-")), qpow(-1)),
                    graded_scale(graded_mul(A("T-"), A("T+")), -qpow(1))),
         A("T3")});
    rows.push_back(
        {"third-raising",
         graded_add(graded_scale(graded_mul(A("T3"), A("T+")), qpow(2)),
                    graded_scale(graded_mul(A("T+"), A("T3")), -qpow(-2))),
         graded_scale(A("T+"), qpow(1) + qpow(-1))});
    rows.push_back(
        {"third-lowering",
         graded_add(graded_scale(graded_mul(A("T-"), A("T3")), qpow(2)),
                    graded_scale(graded_mul(A("T3"), A("T-")), -qpow(-2))),
         graded_scale(A("T-"), qpow(1) + qpow(-1))});
    out.push_back(make_graded_family(
        S, "eu.phase.symmetry-algebra-closure", req,
        "rescaled symmetry generators close under the deformed bracket",
        std::move(rows)));
  }

  {
    using vdetail::graded_atom;
    using vdetail::graded_add;
    using vdetail::graded_mul;
    using vdetail::graded_scale;
    auto A = [&](const char* s) { return graded_atom(s); };
    QScalar s1 = QScalar::s_unit();
    std::vector<vdetail::GradedRow> rows;
    rows.push_back({"3;3", graded_mul(A("T3"), A("X3")),
                    graded_mul(A("X3"), A("T3"))});
    rows.push_back(
        {"3;+", graded_mul(A("T3"), A("X+")),
         graded_add(graded_scale(graded_mul(A("X+"), A("T3")), qpow(-4)),
                    graded_scale(A("X+"),
                                 qpow(-1) * (QScalar(1) + qpow(-2))))});
    rows.push_back(
        {"3;-", graded_mul(A("T3"), A("X-")),
         graded_add(graded_scale(graded_mul(A("X-"), A("T3")), qpow(4)),
                    graded_scale(A("X-"),
                                 -qpow(1) * (QScalar(1) + qpow(2))))});
    rows.push_back(
        {"+;3", graded_mul(A("T+"), A("X3")),
         graded_add(graded_mul(A("X3"), A("T+")),
                    graded_scale(A("X+"), qpow(-2) * s1))});
    rows.push_back({"+;+", graded_mul(A("T+"), A("X+")),
                    graded_scale(graded_mul(A("X+"), A("T+")), qpow(-2))});
    rows.push_back(
        {"+;-", graded_mul(A("T+"), A("X-")),
         graded_add(graded_scale(graded_mul(A("X-"), A("T+")), qpow(2)),
                    graded_scale(A("X3"), qpow(-1) * s1))});
    rows.push_back(
        {"-;3", graded_mul(A("T-"), A("X3")),
         graded_add(graded_mul(A("X3"), A("T-")),
                    graded_scale(A("X-"), qpow(1) * s1))});
    rows.push_back(
        {"-;+", graded_mul(A("T-"), A("X+")),
         graded_add(graded_scale(graded_mul(A("X+"), A("T-")), qpow(-2)),
                    graded_scale(A("X3"), s1))});
    rows.push_back({"-;-", graded_mul(A("T-"), A("X-")),
                    graded_scale(graded_mul(A("X-"), A("T-")), qpow(2))});
    out.push_back(make_graded_family(
        S, "eu.phase.symmetry-coordinate-action", req,
        "rescaled symmetry generators act on coordinates with root-of-"
        "deformation terms",
        std::move(rows)));
  }

  {
    auto zvec = [&](int c) {
      std::vector<ExprPtr> kids;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          QScalar e = el(a, b, c);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), P(b), X(a)}));
        }
      return ex_sum(std::move(kids));
    };
    auto zvec_swapped = [&](int c) {
      std::vector<ExprPtr> kids;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          QScalar e = el(a, b, c);
          if (!e.is_zero()) kids.push_back(ex_prod({ex_scalar(e), X(b), P(a)}));
        }
      return ex_sum(std::move(kids));
    };
    std::vector<ConjRow> rows;
    for (int c = 0; c < 3; ++c) {
      std::vector<ExprPtr> raised;
      for (int k = 0; k < 3; ++k)
        if (!gi(c, k).is_zero())
          raised.push_back(ex_prod({ex_scalar(gi(c, k)), zvec_swapped(k)}));
      rows.push_back({slab(c), zvec(c), ex_sum(std::move(raised))});
    }
    out.push_back(make_engine_conjugation(
        S, sp, "eu.phase.product-vector-conjugation", expl,
        "vector built from a momentum-coordinate product conjugates into "
        "the raised partner vector with reversed factor order",
        std::move(rows)));
  }

  auto bar = [&](std::vector<FamilyRow> rows, const char* id, const char* ref) {
    out.push_back(make_bar_family(S, sp, id, req, ref, std::move(rows)));
  };

  {
    std::vector<FamilyRow> rows = antisym_rows(X, "X");
    auto pr = antisym_rows(P, "P");
    rows.insert(rows.end(), pr.begin(), pr.end());
    auto lr = rotation_closure_rows();
    rows.insert(rows.end(), lr.begin(), lr.end());
    bar(std::move(rows), "eu.phase.bar.antisym-closure",
        "conjugated antisymmetric relations still hold");
  }

  {
    std::vector<FamilyRow> rows = rotation_action_rows(X, "X");
    auto pr = rotation_action_rows(P, "P");
    rows.insert(rows.end(), pr.begin(), pr.end());
    auto wr = rotation_scalar_rows();
    rows.insert(rows.end(), wr.begin(), wr.end());
    bar(std::move(rows), "eu.phase.bar.rotation-action",
        "conjugated rotation actions still hold");
  }

  {
    std::vector<FamilyRow> rows = scalar_action_rows(X, "X");
    auto pr = scalar_action_rows(P, "P");
    rows.insert(rows.end(), pr.begin(), pr.end());
    bar(std::move(rows), "eu.phase.bar.scalar-action",
        "conjugated scale-factor actions still hold");
  }

  bar(euclid_phase_exchange_rows(), "eu.phase.bar.phase-exchange",
      "conjugated factorized momentum-coordinate move still holds");

  bar(root_scaling_rows(), "eu.phase.bar.root-scaling",
      "conjugated root-scaling relations still hold");

  bar(casimir_rows(), "eu.phase.bar.casimir",
      "conjugated casimir constraint still holds");
}

inline void build_euclid_identities(std::vector<Identity>& out) {
  build_euclid_tensor(out);
  build_euclid_calculus(out);
  build_euclid_phase(out);
}

}  // namespace vdetail
}  // namespace qnc
