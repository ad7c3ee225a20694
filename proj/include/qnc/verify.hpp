#pragma once

/**
 * @file verify.hpp
 * @brief Identity registry and suite runner.
 *
 * Every catalogued identity carries a stable id, a one-line behavioral
 * description and a check that either passes or reports a residue.
 * Identities are grouped into six suites, three per quantum space
 * (tensor layer, coordinate-derivative calculus, phase-space algebra).
 * Required rows drive the pass/fail counts; exploratory rows are
 * reported but never gate a suite.
 */

#include "qnc/expr.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qnc {

enum class IdentityKind { required, exploratory };

struct CheckOutcome {
  bool pass = false;
  std::string residue;  // empty on pass
};

struct Identity {
  std::string id;
  std::string suite;
  Space space;
  IdentityKind kind = IdentityKind::required;
  std::string ref;
  std::function<CheckOutcome()> check;
};

struct IdentityResult {
  std::string id;
  std::string ref;
  IdentityKind kind = IdentityKind::required;
  bool pass = false;
  std::string residue;
  long long ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<IdentityResult> rows;
  int pass = 0, fail = 0;            // required rows
  int expl_pass = 0, expl_fail = 0;  // exploratory rows
  std::vector<std::string> notes;
};

namespace vdetail {

inline const Algebra& algebra_for(Space sp) {
  return sp == Space::euclid3 ? Algebra::euclid() : Algebra::mink();
}

inline std::string truncated(std::string s, size_t limit = 200) {
  if (s.size() <= limit) return s;
  s.resize(limit);
  return s + " ...";
}

inline std::string poly_residue(const Algebra& alg, const NCPoly& p) {
  return truncated(poly_to_string(alg, p));
}

/* ------------------------------------------------------------------ */
/* Dense matrices over the scalar field, for the exchange-matrix layer */

struct SqMat {
  int n = 0;
  std::vector<QScalar> a;

  SqMat() = default;
  explicit SqMat(int nn) : n(nn), a(size_t(nn) * size_t(nn)) {}
  QScalar& at(int i, int j) { return a[size_t(i) * size_t(n) + size_t(j)]; }
  const QScalar& at(int i, int j) const {
    return a[size_t(i) * size_t(n) + size_t(j)];
  }
};

inline SqMat mat_identity(int n) {
  SqMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = QScalar(1);
  return m;
}

inline SqMat mat_mul(const SqMat& x, const SqMat& y) {
  SqMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const QScalar& c = x.at(i, k);
      if (c.is_zero()) continue;
      for (int j = 0; j < x.n; ++j) {
        if (y.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + c * y.at(k, j);
      }
    }
  return r;
}

inline SqMat mat_add(const SqMat& x, const SqMat& y) {
  SqMat r(x.n);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline SqMat mat_scale(const SqMat& x, const QScalar& c) {
  SqMat r(x.n);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] * c;
  return r;
}

inline SqMat mat_shift(const SqMat& x, const QScalar& c) {
  SqMat r = x;
  for (int i = 0; i < x.n; ++i) r.at(i, i) = r.at(i, i) + c;
  return r;
}

/// Pair index (a,b) -> a*d + b for rank-4 tensors read as d^2 maps.
inline SqMat mat_from_rank4(const Tensor& t) {
  int d = t.dim();
  SqMat m(d * d);
  for (const auto& [idx, c] : t.components())
    m.at(idx[0] * d + idx[1], idx[2] * d + idx[3]) = c;
  return m;
}

inline std::string pair_label(Space sp, int p) {
  int d = space_dim(sp);
  return space_labels(sp)[size_t(p / d)] + space_labels(sp)[size_t(p % d)];
}

/// First differing component, as a printable residue.
inline std::optional<std::string> mat_diff(const SqMat& x, const SqMat& y,
                                           Space sp) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      QScalar dd = x.at(i, j) - y.at(i, j);
      if (!dd.is_zero())
        return "component (" + pair_label(sp, i) + ";" + pair_label(sp, j) +
               "): " + scalar_str(dd);
    }
  return std::nullopt;
}

/// Acts with a d^2 map on the first two of three slots.
inline SqMat op_front(const SqMat& m, int d) {
  SqMat r(d * d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          for (int f = 0; f < d; ++f) {
            const QScalar& v = m.at(a * d + b, e * d + f);
            if (v.is_zero()) continue;
            r.at((a * d + b) * d + c, (e * d + f) * d + c) = v;
          }
  return r;
}

/// Acts with a d^2 map on the last two of three slots.
inline SqMat op_back(const SqMat& m, int d) {
  SqMat r(d * d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          for (int f = 0; f < d; ++f) {
            const QScalar& v = m.at(b * d + c, e * d + f);
            if (v.is_zero()) continue;
            r.at((a * d + b) * d + c, (a * d + e) * d + f) = v;
          }
  return r;
}

inline std::optional<std::string> braid_equation_residue(const Tensor& t) {
  int d = t.dim();
  SqMat m = mat_from_rank4(t);
  SqMat f = op_front(m, d), b = op_back(m, d);
  SqMat lhs = mat_mul(mat_mul(f, b), f);
  SqMat rhs = mat_mul(mat_mul(b, f), b);
  for (int i = 0; i < lhs.n; ++i)
    for (int j = 0; j < lhs.n; ++j) {
      QScalar dd = lhs.at(i, j) - rhs.at(i, j);
      if (!dd.is_zero())
        return "triple-slot component (" + std::to_string(i) + ";" +
               std::to_string(j) + "): " + scalar_str(dd);
    }
  return std::nullopt;
}

}  // namespace vdetail

/* -------------------------------------------------------------------- */
/* Identity builders                                                     */

/// Generic identity from a residual callback (empty optional = pass).
inline Identity make_identity(std::string suite, Space sp, std::string id,
                              IdentityKind kind, std::string ref,
                              std::function<std::optional<std::string>()> f) {
  Identity ident;
  ident.id = std::move(id);
  ident.suite = std::move(suite);
  ident.space = sp;
  ident.kind = kind;
  ident.ref = std::move(ref);
  ident.check = [fn = std::move(f)]() {
    CheckOutcome out;
    auto res = fn();
    out.pass = !res.has_value();
    if (res) out.residue = *res;
    return out;
  };
  return ident;
}

/// Identity comparing two expression trees on the operator quotient.
inline Identity make_alg_identity_ast(std::string suite, Space sp,
                                      std::string id, IdentityKind kind,
                                      std::string ref, ExprPtr lhs,
                                      ExprPtr rhs) {
  return make_identity(
      std::move(suite), sp, std::move(id), kind, std::move(ref),
      [sp, lhs, rhs]() -> std::optional<std::string> {
        const Algebra& alg = vdetail::algebra_for(sp);
        NCPoly l = eval_expr(lhs, sp);
        NCPoly r = eval_expr(rhs, sp);
        ClearResult cr = alg.clear_and_equal(l, r);
        if (cr.equal) return std::nullopt;
        return vdetail::poly_residue(alg, cr.residue);
      });
}

/// Identity comparing two source strings on the operator quotient.
inline Identity make_alg_identity(std::string suite, Space sp, std::string id,
                                  IdentityKind kind, std::string ref,
                                  const std::string& lhs,
                                  const std::string& rhs) {
  return make_alg_identity_ast(std::move(suite), sp, std::move(id), kind,
                               std::move(ref), parse_expr(lhs, sp),
                               parse_expr(rhs, sp));
}

/// One component of an index family: printable label plus the two sides.
struct FamilyRow {
  std::string label;
  ExprPtr lhs, rhs;
};

/// Identity ranging over an index family; the first failing component is
/// reported in the residue.
inline Identity make_family_identity(std::string suite, Space sp,
                                     std::string id, IdentityKind kind,
                                     std::string ref,
                                     std::vector<FamilyRow> rows) {
  return make_identity(
      std::move(suite), sp, std::move(id), kind, std::move(ref),
      [sp, rows = std::move(rows)]() -> std::optional<std::string> {
        const Algebra& alg = vdetail::algebra_for(sp);
        for (const auto& row : rows) {
          ClearResult cr = alg.clear_and_equal(eval_expr(row.lhs, sp),
                                               eval_expr(row.rhs, sp));
          if (!cr.equal)
            return "component " + row.label + ": " +
                   vdetail::poly_residue(alg, cr.residue);
        }
        return std::nullopt;
      });
}

/// Conjugated image of a relation: both sides pass through the symbol
/// conjugation table, then the results must still agree.
inline Identity make_bar_closure(std::string suite, Space sp, std::string id,
                                 IdentityKind kind, std::string ref,
                                 const std::string& lhs,
                                 const std::string& rhs) {
  return make_alg_identity_ast(std::move(suite), sp, std::move(id), kind,
                               std::move(ref),
                               conj_expr(parse_expr(lhs, sp), sp),
                               conj_expr(parse_expr(rhs, sp), sp));
}

/* -------------------------------------------------------------------- */
/* Registry                                                              */

namespace vdetail {
inline void build_euclid_identities(std::vector<Identity>& out);
inline void build_mink_identities(std::vector<Identity>& out);
inline std::vector<std::string> suite_notes(const std::string& suite);
}  // namespace vdetail

inline const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> table = [] {
    std::vector<Identity> v;
    vdetail::build_euclid_identities(v);
    vdetail::build_mink_identities(v);
    return v;
  }();
  return table;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "euclid-tensor", "euclid-calculus", "euclid-phase",
      "mink-tensor",   "mink-calculus",   "mink-phase"};
  return names;
}

inline const Identity* find_identity(const std::string& id) {
  for (const auto& ident : all_identities())
    if (ident.id == id) return &ident;
  return nullptr;
}

/// Identities of one suite ("all" for every suite), optionally filtered
/// by an id substring.
inline std::vector<const Identity*> list_identities(
    const std::string& suite = "all", const std::string& filter = "") {
  std::vector<const Identity*> out;
  for (const auto& ident : all_identities()) {
    if (suite != "all" && ident.suite != suite) continue;
    if (!filter.empty() && ident.id.find(filter) == std::string::npos)
      continue;
    out.push_back(&ident);
  }
  return out;
}

inline CheckOutcome check_identity(const std::string& id) {
  const Identity* ident = find_identity(id);
  if (!ident) {
    CheckOutcome out;
    out.pass = false;
    out.residue = "unknown identity id: " + id;
    return out;
  }
  return ident->check();
}

inline SuiteReport run_suite(const std::string& suite) {
  SuiteReport rep;
  rep.suite = suite;
  rep.notes = vdetail::suite_notes(suite);
  for (const Identity* ident : list_identities(suite)) {
    auto t0 = std::chrono::steady_clock::now();
    CheckOutcome out = ident->check();
    auto t1 = std::chrono::steady_clock::now();
    IdentityResult row;
    row.id = ident->id;
    row.ref = ident->ref;
    row.kind = ident->kind;
    row.pass = out.pass;
    row.residue = out.residue;
    row.ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    if (ident->kind == IdentityKind::required)
      (out.pass ? rep.pass : rep.fail) += 1;
    else
      (out.pass ? rep.expl_pass : rep.expl_fail) += 1;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline std::vector<SuiteReport> run_all_suites() {
  std::vector<SuiteReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name));
  return out;
}

}  // namespace qnc

#include "qnc/verify_euclid.hpp"
#include "qnc/verify_mink.hpp"
