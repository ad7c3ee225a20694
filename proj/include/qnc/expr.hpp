#pragma once

/**
 * @file expr.hpp
 * @brief Expression trees over the generators and named phase-space
 *        elements, with a parser for the CLI grammar, an evaluator into
 *        normal-ordered polynomials and a canonical printer.
 *
 * Grammar (whitespace insignificant, juxtaposition is not a product):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := factor (('*' | '/') factor)*
 *   factor  := '-' factor | primary ('^' ['-'] integer)?
 *   primary := integer | symbol | '(' expr ')'
 *
 * Symbols are the scalar atoms i, q, s, the generators of the selected
 * space, the Laurent generator l, and every catalogued element name.
 * Division requires a scalar divisor; negative exponents are allowed on
 * l and on scalar-valued subexpressions only.
 */

#include "qnc/elements.hpp"
#include "qnc/ncalg.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qnc {

/// Parse or evaluation failure with a 1-based source position.
struct ExprError {
  std::string message;
  int line = 0;
  int col = 0;

  std::string what() const {
    return "line " + std::to_string(line) + " col " + std::to_string(col) +
           ": " + message;
  }
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { scalar, symbol, sum, product, quotient, power, negate };

  Kind kind;
  QScalar value;               // kind == scalar
  std::string name;            // kind == symbol
  std::vector<ExprPtr> kids;   // operands
  int exponent = 1;            // kind == power
  int line = 0, col = 0;
};

inline ExprPtr ex_scalar(const QScalar& v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::scalar;
  n->value = v;
  return n;
}

inline ExprPtr ex_int(long v) { return ex_scalar(QScalar(v)); }

inline ExprPtr ex_sym(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::symbol;
  n->name = std::move(name);
  return n;
}

inline ExprPtr ex_sum(std::vector<ExprPtr> kids) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::sum;
  n->kids = std::move(kids);
  return n;
}

inline ExprPtr ex_prod(std::vector<ExprPtr> kids) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::product;
  n->kids = std::move(kids);
  return n;
}

inline ExprPtr ex_div(ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::quotient;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

inline ExprPtr ex_pow(ExprPtr base, int e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::power;
  n->kids = {std::move(base)};
  n->exponent = e;
  return n;
}

inline ExprPtr ex_neg(ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::negate;
  n->kids = {std::move(a)};
  return n;
}

// ---------------------------------------------------------------------------
// Symbol classification

enum class SymKind { scalar_atom, coordinate, derivative, ell, element };

struct SymbolInfo {
  SymKind kind;
  int index = -1;  // generator slot for coordinate / derivative
};

/// Looks a name up in the symbol table of `sp`; nullopt when unknown.
inline std::optional<SymbolInfo> classify_symbol(Space sp,
                                                 const std::string& name) {
  if (name == "i" || name == "q" || name == "s")
    return SymbolInfo{SymKind::scalar_atom};
  if (name == "l") return SymbolInfo{SymKind::ell};
  const auto& labels = space_labels(sp);
  if (name.size() >= 2 && (name[0] == 'X' || name[0] == 'D')) {
    for (int a = 0; a < space_dim(sp); ++a)
      if (name.substr(1) == labels[size_t(a)])
        return SymbolInfo{name[0] == 'X' ? SymKind::coordinate
                                         : SymKind::derivative,
                          a};
  }
  if (element_catalog(sp).has(name)) return SymbolInfo{SymKind::element};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

struct Token {
  enum class Type { number, symbol, plus, minus, star, slash, caret, lpar, rpar, end };
  Type type;
  std::string text;
  int line = 0, col = 0;
};

inline bool is_suffix_char(char c) {
  return c == '+' || c == '-' || c == '3' || c == '0';
}

inline std::vector<Token> lex(const std::string& src, Space sp) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Type t, std::string text, int l, int c) {
    out.push_back(Token{t, std::move(text), l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      push(Token::Type::number, src.substr(i, j - i), tl, tc);
      col += int(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             std::isalnum(static_cast<unsigned char>(src[j])))
        ++j;
      std::string base = src.substr(i, j - i);
      // Extend with up to two trailing sign/index characters, longest
      // known name wins ("V+0" beats "V", "X+" beats the unknown "X").
      std::string picked;
      for (int ext = 2; ext >= 0 && picked.empty(); --ext) {
        if (j + size_t(ext) > src.size()) continue;
        bool ok = true;
        for (int k = 0; k < ext; ++k)
          if (!is_suffix_char(src[j + size_t(k)])) ok = false;
        if (!ok) continue;
        std::string cand = base + src.substr(j, size_t(ext));
        if (classify_symbol(sp, cand)) picked = cand;
      }
      if (picked.empty())
        throw ExprError{"unknown symbol '" + base + "'", tl, tc};
      push(Token::Type::symbol, picked, tl, tc);
      col += int(picked.size());
      i += picked.size();
      continue;
    }
    switch (c) {
      case '+': push(Token::Type::plus, "+", tl, tc); break;
      case '-': push(Token::Type::minus, "-", tl, tc); break;
      case '*': push(Token::Type::star, "*", tl, tc); break;
      case '/': push(Token::Type::slash, "/", tl, tc); break;
      case '^': push(Token::Type::caret, "^", tl, tc); break;
      case '(': push(Token::Type::lpar, "(", tl, tc); break;
      case ')': push(Token::Type::rpar, ")", tl, tc); break;
      default:
        throw ExprError{std::string("unexpected character '") + c + "'", tl, tc};
    }
    ++col;
    ++i;
  }
  out.push_back(Token{Token::Type::end, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (cur().type != Token::Type::end)
      throw ExprError{"expected operator or end of input, got '" +
                          cur().text + "'",
                      cur().line, cur().col};
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& eat() { return toks_[pos_++]; }
  bool accept(Token::Type t) {
    if (cur().type != t) return false;
    ++pos_;
    return true;
  }

  ExprPtr expr() {
    ExprPtr acc = term();
    for (;;) {
      if (accept(Token::Type::plus)) {
        acc = ex_sum({acc, term()});
      } else if (accept(Token::Type::minus)) {
        acc = ex_sum({acc, ex_neg(term())});
      } else {
        return acc;
      }
    }
  }

  ExprPtr term() {
    ExprPtr acc = factor();
    for (;;) {
      if (accept(Token::Type::star)) {
        acc = ex_prod({acc, factor()});
      } else if (accept(Token::Type::slash)) {
        acc = ex_div(acc, factor());
      } else {
        return acc;
      }
    }
  }

  ExprPtr factor() {
    if (accept(Token::Type::minus)) return ex_neg(factor());
    ExprPtr p = primary();
    if (accept(Token::Type::caret)) {
      bool neg = accept(Token::Type::minus);
      if (cur().type != Token::Type::number)
        throw ExprError{"expected integer exponent", cur().line, cur().col};
      const Token& t = eat();
      long e = 0;
      try {
        e = std::stol(t.text);
      } catch (...) {
        throw ExprError{"exponent out of range", t.line, t.col};
      }
      if (e > 64)
        throw ExprError{"exponent out of range", t.line, t.col};
      auto n = std::make_shared<ExprNode>(*ex_pow(p, int(neg ? -e : e)));
      n->line = t.line;
      n->col = t.col;
      return n;
    }
    return p;
  }

  ExprPtr primary() {
    const Token& t = cur();
    switch (t.type) {
      case Token::Type::number: {
        eat();
        auto n = std::make_shared<ExprNode>(
            *ex_scalar(QScalar::rational(BigRat(t.text))));
        n->line = t.line;
        n->col = t.col;
        return n;
      }
      case Token::Type::symbol: {
        eat();
        auto n = std::make_shared<ExprNode>(*ex_sym(t.text));
        n->line = t.line;
        n->col = t.col;
        return n;
      }
      case Token::Type::lpar: {
        eat();
        ExprPtr e = expr();
        if (!accept(Token::Type::rpar))
          throw ExprError{"expected ')'", cur().line, cur().col};
        return e;
      }
      default:
        throw ExprError{"expected a value, got '" + t.text + "'", t.line,
                        t.col};
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

/// Parses `src` against the symbol table of `sp`.  Throws ExprError.
inline ExprPtr parse_expr(const std::string& src, Space sp) {
  return detail::Parser(detail::lex(src, sp)).parse();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline bool poly_is_scalar(const NCPoly& p, QScalar* out) {
  if (p.terms().empty()) {
    *out = QScalar();
    return true;
  }
  if (p.terms().size() != 1) return false;
  const auto& [m, c] = *p.terms().begin();
  if (m.lp != 0 || m.xdeg() != 0 || m.ddeg() != 0) return false;
  *out = c;
  return true;
}

/// Single term c * l^k with no other generators.
inline bool poly_is_ell_monomial(const NCPoly& p, QScalar* c, int* k) {
  if (p.terms().size() != 1) return false;
  const auto& [m, coeff] = *p.terms().begin();
  if (m.xdeg() != 0 || m.ddeg() != 0) return false;
  *c = coeff;
  *k = m.lp;
  return true;
}

}  // namespace detail

/// Evaluates an expression tree to a normal-ordered polynomial.
inline NCPoly eval_expr(const ExprPtr& e, Space sp) {
  const Algebra& alg =
      sp == Space::euclid3 ? Algebra::euclid() : Algebra::mink();
  switch (e->kind) {
    case ExprNode::Kind::scalar:
      return NCPoly(e->value);
    case ExprNode::Kind::symbol: {
      auto info = classify_symbol(sp, e->name);
      if (!info) throw ExprError{"unknown symbol '" + e->name + "'", e->line, e->col};
      switch (info->kind) {
        case SymKind::scalar_atom:
          if (e->name == "i") return NCPoly(QScalar::i_unit());
          if (e->name == "s") return NCPoly(QScalar::s_unit());
          return NCPoly(qpow(1));
        case SymKind::coordinate: return alg.x_gen(info->index);
        case SymKind::derivative: return alg.d_gen(info->index);
        case SymKind::ell: return alg.l_pow(1);
        case SymKind::element: return element_catalog(sp).realize(e->name);
      }
      throw ExprError{"unknown symbol '" + e->name + "'", e->line, e->col};
    }
    case ExprNode::Kind::sum: {
      NCPoly acc;
      for (const auto& k : e->kids) acc = acc + eval_expr(k, sp);
      return acc;
    }
    case ExprNode::Kind::product: {
      NCPoly acc = alg.one();
      for (const auto& k : e->kids) acc = alg.mul(acc, eval_expr(k, sp));
      return acc;
    }
    case ExprNode::Kind::quotient: {
      NCPoly num = eval_expr(e->kids[0], sp);
      NCPoly den = eval_expr(e->kids[1], sp);
      QScalar d;
      if (!detail::poly_is_scalar(den, &d) || d.is_zero())
        throw ExprError{"divisor must be a nonzero scalar", e->line, e->col};
      return num.scaled(QScalar(1) / d);
    }
    case ExprNode::Kind::power: {
      NCPoly base = eval_expr(e->kids[0], sp);
      int n = e->exponent;
      if (n >= 0) {
        NCPoly acc = alg.one();
        for (int k = 0; k < n; ++k) acc = alg.mul(acc, base);
        return acc;
      }
      QScalar c;
      int lk = 0;
      if (!detail::poly_is_ell_monomial(base, &c, &lk) || c.is_zero())
        throw ExprError{
            "negative exponent needs a scalar or Laurent-generator base",
            e->line, e->col};
      QScalar cinv = QScalar(1) / c;
      NCPoly acc = alg.one();
      NCPoly inv = alg.l_pow(-lk).scaled(cinv);
      for (int k = 0; k < -n; ++k) acc = alg.mul(acc, inv);
      return acc;
    }
    case ExprNode::Kind::negate:
      return NCPoly() - eval_expr(e->kids[0], sp);
  }
  throw ExprError{"malformed expression", e->line, e->col};
}

/// Parses and evaluates in one step.
inline NCPoly reduce_string(const std::string& src, Space sp) {
  return eval_expr(parse_expr(src, sp), sp);
}

// ---------------------------------------------------------------------------
// Symbol-level conjugation

namespace detail {

/// Conjugate image of a single symbol as an expression tree.
inline ExprPtr conj_symbol(const std::string& name, Space sp) {
  auto scaled_sym = [](const QScalar& c, const std::string& s) {
    return ex_prod({ex_scalar(c), ex_sym(s)});
  };
  if (name == "i") return ex_scalar(QScalar() - QScalar::i_unit());
  if (name == "q" || name == "s") return ex_sym(name);
  if (sp == Space::euclid3) {
    if (name == "l") return ex_prod({ex_scalar(qpow(-6)), ex_pow(ex_sym("l"), -1)});
    if (name == "W" || name == "tau" || name == "X3" || name == "P3" ||
        name == "L3")
      return ex_sym(name);
    auto flip = [&](char hi, const std::string& fam) -> ExprPtr {
      // upper index lowered through the spatial metric
      if (name == fam + "+") return scaled_sym(QScalar() - qpow(1), fam + "-");
      if (name == fam + "-") return scaled_sym(QScalar() - qpow(-1), fam + "+");
      (void)hi;
      return nullptr;
    };
    for (const char* fam : {"X", "P", "L"})
      if (auto r = flip('+', fam)) return r;
    if (name == "D+") return scaled_sym(QScalar() - qpow(1), "dbar-");
    if (name == "D3") return ex_sym("dbar3");
    if (name == "D-") return scaled_sym(QScalar() - qpow(-1), "dbar+");
  } else {
    if (name == "l") return ex_prod({ex_scalar(qpow(4)), ex_pow(ex_sym("l"), -1)});
    // the time slot conjugates without a metric sign
    if (name == "U" || name == "X3" || name == "P3" || name == "X0" ||
        name == "P0")
      return ex_sym(name);
    for (const char* fam : {"X", "P"}) {
      std::string f = fam;
      if (name == f + "+") return scaled_sym(QScalar() - qpow(1), f + "-");
      if (name == f + "-") return scaled_sym(QScalar() - qpow(-1), f + "+");
    }
    if (name == "rho") return ex_neg(ex_sym("sigma"));
    if (name == "sigma") return ex_neg(ex_sym("rho"));
    // the two spatial vectors swap families under conjugation
    if (name == "R+") return scaled_sym(qpow(1), "S-");
    if (name == "R3") return ex_neg(ex_sym("S3"));
    if (name == "R-") return scaled_sym(qpow(-1), "S+");
    if (name == "S+") return scaled_sym(qpow(1), "R-");
    if (name == "S3") return ex_neg(ex_sym("R3"));
    if (name == "S-") return scaled_sym(qpow(-1), "R+");
    if (name == "D0") return scaled_sym(QScalar() - qpow(4), "dhat0");
    if (name == "D+") return scaled_sym(qpow(5), "dhat-");
    if (name == "D3") return scaled_sym(QScalar() - qpow(4), "dhat3");
    if (name == "D-") return scaled_sym(qpow(3), "dhat+");
    if (name.size() == 3 && name[0] == 'V') {
      // both indices lowered through the conjugation metric (spatial
      // block only, the time entry stays at +1) and the pair swapped
      const Tensor& eta = mink_tensors().eta;
      const auto& labels = space_labels(sp);
      auto bmet = [&](uint8_t r, uint8_t c) {
        if (r == 0 || c == 0) return r == c ? QScalar(1) : QScalar();
        return eta.get({r, c});
      };
      auto slot = [&](char ch) {
        for (uint8_t a = 0; a < 4; ++a)
          if (labels[a][0] == ch) return a;
        return uint8_t(0);
      };
      uint8_t a = slot(name[1]), b = slot(name[2]);
      std::vector<ExprPtr> terms;
      for (uint8_t cc = 0; cc < 4; ++cc)
        for (uint8_t dd = 0; dd < 4; ++dd) {
          QScalar w = bmet(a, cc) * bmet(b, dd);
          if (w.is_zero()) continue;
          std::string img = std::string("V") + labels[dd] + labels[cc];
          terms.push_back(ex_prod({ex_scalar(w), ex_sym(img)}));
        }
      return ex_sum(std::move(terms));
    }
  }
  throw ExprError{"no conjugation rule for symbol '" + name + "'", 0, 0};
}

}  // namespace detail

/**
 * Conjugates an expression tree symbolically: scalars through the field
 * involution, products reversed, symbols through the space's conjugation
 * table.  Used to close the catalogued relations under conjugation.
 */
inline ExprPtr conj_expr(const ExprPtr& e, Space sp) {
  switch (e->kind) {
    case ExprNode::Kind::scalar:
      return ex_scalar(scalar_conjugate(e->value));
    case ExprNode::Kind::symbol:
      return detail::conj_symbol(e->name, sp);
    case ExprNode::Kind::sum: {
      std::vector<ExprPtr> kids;
      for (const auto& k : e->kids) kids.push_back(conj_expr(k, sp));
      return ex_sum(std::move(kids));
    }
    case ExprNode::Kind::product: {
      std::vector<ExprPtr> kids;
      for (auto it = e->kids.rbegin(); it != e->kids.rend(); ++it)
        kids.push_back(conj_expr(*it, sp));
      return ex_prod(std::move(kids));
    }
    case ExprNode::Kind::quotient:
      return ex_div(conj_expr(e->kids[0], sp), conj_expr(e->kids[1], sp));
    case ExprNode::Kind::power:
      return ex_pow(conj_expr(e->kids[0], sp), e->exponent);
    case ExprNode::Kind::negate:
      return ex_neg(conj_expr(e->kids[0], sp));
  }
  throw ExprError{"malformed expression", e->line, e->col};
}

// ---------------------------------------------------------------------------
// Printer

namespace detail {

inline int ell_exchange_exponent(Space sp) {
  return sp == Space::euclid3 ? 2 : -1;
}

}  // namespace detail

/**
 * Canonical string form of a normal-ordered polynomial.  Terms are listed
 * with coordinate factors first, then derivatives, then the Laurent
 * generator, which is moved to the right of each term with the matching
 * power of q absorbed into the coefficient.
 */
inline std::string poly_to_string(const Algebra& alg, const NCPoly& p) {
  if (p.terms().empty()) return "0";
  const auto& labels = space_labels(alg.space());
  int e = detail::ell_exchange_exponent(alg.space());
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Monomial& m = it->first;
    int grade = m.ddeg() - m.xdeg();
    QScalar c = it->second * qpow(-e * m.lp * grade);
    std::vector<std::string> factors;
    for (int a = 0; a < alg.dim(); ++a)
      for (int k = 0; k < m.x[size_t(a)]; ++k)
        factors.push_back("X" + labels[size_t(a)]);
    for (int a = 0; a < alg.dim(); ++a)
      for (int k = 0; k < m.d[size_t(a)]; ++k)
        factors.push_back("D" + labels[size_t(a)]);
    if (m.lp == 1)
      factors.push_back("l");
    else if (m.lp != 0)
      factors.push_back("l^" + std::to_string(m.lp));

    std::string cs = scalar_str(c);
    bool neg = false;
    if (!scalar_str_composite(cs) && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    std::string body;
    if (factors.empty()) {
      // a constant term needs parentheses only inside a larger sum
      body = (p.terms().size() > 1 && scalar_str_composite(cs))
                 ? "(" + cs + ")"
                 : cs;
    } else {
      if (cs != "1")
        body = (scalar_str_composite(cs) ? "(" + cs + ")" : cs) + "*";
      for (size_t k = 0; k < factors.size(); ++k) {
        if (k) body += "*";
        body += factors[k];
      }
    }
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

/// Reduce a source string and print the normal form.
inline std::string reduce_to_string(const std::string& src, Space sp) {
  const Algebra& alg =
      sp == Space::euclid3 ? Algebra::euclid() : Algebra::mink();
  return poly_to_string(alg, reduce_string(src, sp));
}

}  // namespace qnc
