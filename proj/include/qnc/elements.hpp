#pragma once

/*
 * Derived operators of the deformed phase space algebras.
 *
 * Every operator in the catalog factors as a sum of pieces
 *
 *     tau^{h/2} * l^{k} * avatar
 *
 * where the avatar is a grade-homogeneous element of the plain X-D
 * algebra, l is the square root of the scaling operator and tau is the
 * group-like element generated by the third angular momentum component.
 * Storing the (h, k, avatar) triples keeps every definition exact; the
 * fractional powers never have to be expanded.
 */

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnc/ncalg.hpp"
#include "qnc/spaces.hpp"

namespace qnc {

struct ElementPart {
  int ell_offset = 0;  // power of l multiplying the avatar from the left
  int tau_halves = 0;  // power of tau^{1/2} multiplying from the left
  NCPoly avatar;
};

struct ElementDef {
  Space space = Space::euclid3;
  std::string name;
  std::vector<ElementPart> parts;
};

// Scaling grade of an element, with a diagnostic for mixed input.
inline int lambda_grade(const Algebra& alg, const NCPoly& p) {
  if (auto g = alg.lambda_grade(p)) return *g;
  std::set<int> seen;
  for (const auto& [m, c] : p.terms()) seen.insert(m.ddeg() - m.xdeg());
  std::ostringstream os;
  os << "element mixes scaling grades:";
  for (int g : seen) os << ' ' << g;
  throw std::domain_error(os.str());
}

class ElementCatalog {
 public:
  explicit ElementCatalog(Space sp)
      : alg_(sp == Space::euclid3 ? &Algebra::euclid() : &Algebra::mink()) {
    if (sp == Space::euclid3)
      build_euclid();
    else
      build_mink();
  }

  const Algebra& algebra() const { return *alg_; }
  Space space() const { return alg_->space(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(defs_.size());
    for (const ElementDef& d : defs_) out.push_back(d.name);
    return out;
  }

  bool has(const std::string& name) const { return index_.count(name) != 0; }

  const ElementDef& def(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::domain_error("unknown element: " + name);
    return defs_[it->second];
  }

  // Sum of l^k * avatar over the parts.  Only elements free of tau
  // factors live in the l-extended algebra itself.
  NCPoly realize(const std::string& name) const {
    const ElementDef& d = def(name);
    NCPoly out;
    for (const ElementPart& p : d.parts) {
      if (p.tau_halves != 0)
        throw std::domain_error("element " + name +
                                " carries a tau power and has no plain realization");
      out = out + (p.ell_offset == 0 ? p.avatar
                                     : alg_->mul(alg_->l_pow(p.ell_offset), p.avatar));
    }
    return out;
  }

 private:
  const Algebra* alg_;
  std::vector<ElementDef> defs_;
  std::map<std::string, size_t> index_;

  void add(const std::string& name, std::vector<ElementPart> parts) {
    for (const ElementPart& p : parts) lambda_grade(*alg_, p.avatar);
    index_[name] = defs_.size();
    defs_.push_back(ElementDef{alg_->space(), name, std::move(parts)});
  }

  void build_euclid() {
    const Algebra& A = *alg_;
    const EuclidTensors& T = euclid_tensors();
    const QScalar one(1), q2 = qpow(2);
    static const char* sym[3] = {"+", "3", "-"};

    add("Lambda", {{0, 0, A.lambda_poly()}});

    // conjugate derivative: dbar^A = l^{-2} Dbar^A
    std::array<NCPoly, 3> Dbar;
    for (int a = 0; a < 3; ++a) {
      Dbar[size_t(a)] =
          (A.d_gen(a) + A.mul(A.x_gen(a), A.dot_dd()).scaled(q2 * (q2 - one)))
              .scaled(QScalar() - qpow(-6));
      add(std::string("dbar") + sym[a], {{-2, 0, Dbar[size_t(a)]}});
    }

    const QScalar ihalf = QScalar::i_unit() * QScalar::rational(BigRat(1, 2));
    for (int a = 0; a < 3; ++a)
      add(std::string("P") + sym[a],
          {{0, 0, A.d_gen(a).scaled(QScalar() - ihalf)},
           {-2, 0, Dbar[size_t(a)].scaled(ihalf)}});

    NCPoly What = A.one() + A.dot_xd().scaled(q2 * (q2 - one));
    add("W", {{-1, 0, What}});

    // L^A sits at offset -1; the q^4 compensates moving X past l^{-2}
    std::array<NCPoly, 3> Lhat;
    for (int a = 0; a < 3; ++a) {
      NCPoly acc;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          QScalar e = T.eps3.get({uint8_t(d), uint8_t(c), uint8_t(a)});
          if (!e.is_zero())
            acc = acc + A.mul(A.x_gen(c), Dbar[size_t(d)]).scaled(qpow(4) * e);
        }
      Lhat[size_t(a)] = acc;
      add(std::string("L") + sym[a], {{-1, 0, acc}});
    }

    // antisymmetric form M^{AB} = eps^{ABF} g_{FC} L^C
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        NCPoly acc;
        for (int f = 0; f < 3; ++f)
          for (int c = 0; c < 3; ++c) {
            QScalar k = T.eps_up.get({uint8_t(a), uint8_t(b), uint8_t(f)}) *
                        T.g.get({uint8_t(f), uint8_t(c)});
            if (!k.is_zero()) acc = acc + Lhat[size_t(c)].scaled(k);
          }
        add(std::string("M") + sym[a] + sym[b], {{-1, 0, acc}});
      }

    // tau is handled through its inverse square root
    add("tau", {{-1, 0, What + Lhat[1].scaled(q2 * (one - q2))}});

    const QScalar s = QScalar::s_unit();
    add("T+", {{-1, 1, Lhat[0].scaled(q2 * s)}});
    add("T-", {{-1, 1, Lhat[2].scaled(QScalar() - qpow(3) * s)}});
    QScalar t3 = qpow(1) / (q2 - one);
    add("T3", {{0, 0, NCPoly(t3)}, {0, 2, NCPoly(QScalar() - t3)}});
  }

  void build_mink() {
    const Algebra& A = *alg_;
    const MinkTensors& T = mink_tensors();
    const QScalar one(1), q2 = qpow(2);
    static const char* sym[4] = {"0", "+", "3", "-"};

    add("Lambda", {{0, 0, A.lambda_poly()}});

    // covariant derivative: dhat^a = l^{-2} Dhat^a
    QScalar c = qpow(-2) * (one - q2) / (one + q2);
    std::array<NCPoly, 4> Dhat;
    for (int a = 0; a < 4; ++a) {
      Dhat[size_t(a)] = A.d_gen(a) + A.mul(A.x_gen(a), A.dot_dd()).scaled(c);
      add(std::string("dhat") + sym[a], {{-2, 0, Dhat[size_t(a)]}});
    }

    const QScalar ihalf = QScalar::i_unit() * QScalar::rational(BigRat(1, 2));
    for (int a = 0; a < 4; ++a)
      add(std::string("P") + sym[a],
          {{0, 0, A.d_gen(a).scaled(QScalar() - ihalf)},
           {-2, 0, Dhat[size_t(a)].scaled((QScalar() - ihalf) * qpow(4))}});

    NCPoly xDhat;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        QScalar k = T.eta.get({uint8_t(a), uint8_t(b)});
        if (!k.is_zero()) xDhat = xDhat + A.mul(A.x_gen(a), Dhat[size_t(b)]).scaled(k);
      }

    // U folds the leading l into the avatar through the scaling element
    NCPoly Uhat = A.lambda_poly() + xDhat.scaled((q2 - one) / (q2 + one));
    add("U", {{-1, 0, Uhat}});

    // V^{ab} at offset -1; the q^{-2} compensates moving X past l^{-2}
    std::array<std::array<NCPoly, 4>, 4> Vhat;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        NCPoly acc;
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            QScalar w = T.PA.get({uint8_t(a), uint8_t(b), uint8_t(k), uint8_t(l)});
            if (!w.is_zero())
              acc = acc + A.mul(A.x_gen(k), Dhat[size_t(l)]).scaled(qpow(-2) * w);
          }
        Vhat[size_t(a)][size_t(b)] = acc;
        add(std::string("V") + sym[a] + sym[b], {{-1, 0, acc}});
      }

    // selfdual and antiselfdual boost components
    std::array<NCPoly, 4> Rhat, Shat;
    for (int a = 1; a < 4; ++a) {
      NCPoly r, s;
      for (int cc = 0; cc < 4; ++cc)
        for (int dd = 0; dd < 4; ++dd) {
          QScalar wp = T.Pplus.get({uint8_t(a), 0, uint8_t(cc), uint8_t(dd)});
          if (!wp.is_zero()) r = r + Vhat[size_t(cc)][size_t(dd)].scaled(wp);
          QScalar wm = T.Pminus.get({uint8_t(a), 0, uint8_t(cc), uint8_t(dd)});
          if (!wm.is_zero())
            s = s + Vhat[size_t(cc)][size_t(dd)].scaled(qpow(-2) * wm);
        }
      Rhat[size_t(a)] = r;
      Shat[size_t(a)] = s;
      add(std::string("R") + sym[a], {{-1, 0, r}});
      add(std::string("S") + sym[a], {{-1, 0, s}});
    }

    add("rho", {{-1, 0, Rhat[2].scaled(qpow(4) - one) + Uhat}});
    add("sigma", {{-1, 0, Shat[2].scaled(qpow(4) - one) - Uhat}});
  }
};

inline const ElementCatalog& euclid_elements() {
  static const ElementCatalog cat(Space::euclid3);
  return cat;
}

inline const ElementCatalog& mink_elements() {
  static const ElementCatalog cat(Space::mink4);
  return cat;
}

inline const ElementCatalog& element_catalog(Space sp) {
  return sp == Space::euclid3 ? euclid_elements() : mink_elements();
}

inline const ElementDef& element(Space sp, const std::string& name) {
  return element_catalog(sp).def(name);
}

}  // namespace qnc
