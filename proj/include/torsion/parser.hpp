#pragma once

// Line-oriented input language for polynomial systems:
//
//   vars: x y z        (optional; otherwise inferred in order of appearance)
//   field: 12          (level N of the coefficient field Q(zeta_N), default 1)
//   poly: x^2*y - z*x + 3/2
//
// `z` is zeta_N unless declared as a variable; `zeta` always is, `zeta(m)` is zeta_m for m | N.
// `x^(1,-2)` denotes the monomial with the given full exponent vector.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torsion/poly.hpp"

namespace torsion {

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownVariable, BadExponent, LevelMismatch };
  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        kind_(kind), line_(line), column_(column) {}
  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_, column_;
};

struct SystemDocument {
  std::vector<std::string> variables;
  Int level = 1;
  LaurentSystem polynomials;
  std::size_t nvars() const { return variables.size(); }
};

namespace detail {

struct Token {
  enum Type { Number, Name, Symbol, End } type;
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize(const std::string& s, std::size_t line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, s.substr(i, j - i), offset + i + 1});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Name, s.substr(i, j - i), offset + i + 1});
      i = j;
    } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
      out.push_back({Token::Symbol, std::string(1, c), offset + i + 1});
      ++i;
    } else {
      throw ParseError(ParseError::Kind::Syntax, line, offset + i + 1, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", offset + s.size() + 1});
  return out;
}

inline bool isZetaName(const std::string& name, const std::map<std::string, std::size_t>& vars) {
  return name == "zeta" || (name == "z" && !vars.count("z"));
}

class ExpressionParser {
 public:
  ExpressionParser(std::vector<Token> tokens, std::size_t line, const std::map<std::string, std::size_t>& vars,
                   std::size_t nvars, Int level)
      : tokens_(std::move(tokens)), line_(line), vars_(vars), n_(nvars), level_(level) {}

  LaurentPolynomial parse() {
    LaurentPolynomial p = expression();
    if (peek().type != Token::End) fail(ParseError::Kind::Syntax, "unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(const std::string& sym) {
    if (peek().type == Token::Symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& sym) {
    if (!accept(sym)) fail(ParseError::Kind::Syntax, "expected '" + sym + "'");
  }
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const {
    throw ParseError(kind, line_, peek().column, msg);
  }

  LaurentPolynomial expression() {
    LaurentPolynomial acc = term();
    for (;;) {
      if (accept("+")) acc += term();
      else if (accept("-")) acc -= term();
      else return acc;
    }
  }

  LaurentPolynomial term() {
    LaurentPolynomial acc = unary();
    for (;;) {
      if (accept("*")) {
        acc *= unary();
      } else if (peek().type == Token::Symbol && peek().text == "/") {
        std::size_t col = peek().column;
        ++pos_;
        LaurentPolynomial d = unary();
        if (!d.isConstant()) throw ParseError(ParseError::Kind::Syntax, line_, col, "division is only allowed by constants");
        if (d.isZero()) throw ParseError(ParseError::Kind::Syntax, line_, col, "division by zero");
        acc = d.terms().begin()->second.inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  LaurentPolynomial unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return power();
  }

  Int signedInteger() {
    bool neg = false;
    while (peek().type == Token::Symbol && (peek().text == "-" || peek().text == "+")) {
      if (peek().text == "-") neg = !neg;
      ++pos_;
    }
    if (peek().type != Token::Number) fail(ParseError::Kind::BadExponent, "expected an integer exponent");
    Int v;
    try {
      v = std::stoll(peek().text);
    } catch (const std::exception&) {
      fail(ParseError::Kind::BadExponent, "exponent out of range");
    }
    ++pos_;
    return neg ? -v : v;
  }

  LaurentPolynomial power() {
    std::optional<std::string> varName;
    if (peek().type == Token::Name && !isZetaName(peek().text, vars_)) varName = peek().text;
    LaurentPolynomial base = atom();
    if (!accept("^")) return base;
    if (accept("(")) {
      // Either (k) or a full exponent vector (e1, ..., en) after a variable.
      std::vector<Int> exps{signedInteger()};
      while (accept(",")) exps.push_back(signedInteger());
      expect(")");
      if (exps.size() == 1) return raise(base, exps[0]);
      if (!varName) fail(ParseError::Kind::BadExponent, "exponent vectors are only allowed on variables");
      if (exps.size() != n_) fail(ParseError::Kind::BadExponent, "exponent vector length does not match the number of variables");
      return LaurentPolynomial::monomial(n_, exps);
    }
    return raise(base, signedInteger());
  }

  LaurentPolynomial raise(const LaurentPolynomial& base, Int k) {
    if (k >= 0) return base.power(k);
    if (!base.isMonomial()) fail(ParseError::Kind::BadExponent, "negative exponents are only allowed on monomials");
    const auto& [e, c] = *base.terms().begin();
    Exponent inv = e;
    for (auto& x : inv) x = checked::mul(x, k);
    return LaurentPolynomial::monomial(n_, inv, Cyclo(1)) * LaurentPolynomial::constant(n_, c.inverse()).power(-k);
  }

  LaurentPolynomial atom() {
    const Token& t = peek();
    if (t.type == Token::Number) {
      ++pos_;
      return LaurentPolynomial::constant(n_, Cyclo(Rational(BigInt(t.text))));
    }
    if (t.type == Token::Name) {
      std::string name = t.text;
      ++pos_;
      if (isZetaName(name, vars_)) {
        Int m = level_;
        if (name == "zeta" && accept("(")) {
          if (peek().type != Token::Number) fail(ParseError::Kind::Syntax, "expected the order of the root of unity");
          std::size_t col = peek().column;
          m = std::stoll(peek().text);
          ++pos_;
          expect(")");
          if (m < 1 || level_ % m != 0)
            throw ParseError(ParseError::Kind::LevelMismatch, line_, col,
                             "zeta(" + std::to_string(m) + ") does not lie in the declared field of level " + std::to_string(level_));
        }
        return LaurentPolynomial::constant(n_, Cyclo::zeta(m));
      }
      auto it = vars_.find(name);
      if (it == vars_.end()) throw ParseError(ParseError::Kind::UnknownVariable, line_, t.column, "unknown variable '" + name + "'");
      return LaurentPolynomial::variable(n_, it->second);
    }
    if (accept("(")) {
      LaurentPolynomial p = expression();
      expect(")");
      return p;
    }
    fail(ParseError::Kind::Syntax, t.type == Token::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const std::map<std::string, std::size_t>& vars_;
  std::size_t n_;
  Int level_;
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Parse a whole input document.
inline SystemDocument parseSystem(const std::string& text) {
  struct PolyLine {
    std::size_t line, offset;
    std::string body;
  };
  SystemDocument doc;
  std::optional<std::vector<std::string>> declared;
  std::vector<PolyLine> polys;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = raw.substr(0, raw.find('#'));
    if (detail::trim(line).empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(ParseError::Kind::Syntax, lineNo, 1, "expected 'vars:', 'field:' or 'poly:'");
    std::string key = detail::trim(line.substr(0, colon));
    std::string body = line.substr(colon + 1);
    if (key == "vars") {
      std::vector<std::string> names;
      std::string cleaned = body;
      for (auto& c : cleaned)
        if (c == ',') c = ' ';
      std::istringstream ns(cleaned);
      for (std::string name; ns >> name;) {
        bool ok = (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
        for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok || name == "zeta")
          throw ParseError(ParseError::Kind::Syntax, lineNo, colon + 2, "invalid variable name '" + name + "'");
        if (std::find(names.begin(), names.end(), name) != names.end())
          throw ParseError(ParseError::Kind::Syntax, lineNo, colon + 2, "duplicate variable '" + name + "'");
        names.push_back(name);
      }
      declared = names;
    } else if (key == "field") {
      std::string v = detail::trim(body);
      Int level = 0;
      try {
        std::size_t used = 0;
        level = std::stoll(v, &used);
        if (used != v.size()) level = 0;
      } catch (const std::exception&) {
      }
      if (level < 1) throw ParseError(ParseError::Kind::Syntax, lineNo, colon + 2, "field level must be a positive integer");
      doc.level = level;
    } else if (key == "poly") {
      polys.push_back({lineNo, colon + 1, body});
    } else {
      throw ParseError(ParseError::Kind::Syntax, lineNo, 1, "unknown directive '" + key + "'");
    }
  }

  // Variables and the ambient dimension.
  std::map<std::string, std::size_t> vars;
  std::size_t vectorLength = 0;
  if (declared) {
    doc.variables = *declared;
  } else {
    std::map<std::string, std::size_t> none;
    for (const auto& p : polys) {
      auto toks = detail::tokenize(p.body, p.line, p.offset);
      for (std::size_t k = 0; k < toks.size(); ++k) {
        const auto& t = toks[k];
        if (t.type == detail::Token::Name && !detail::isZetaName(t.text, none) &&
            std::find(doc.variables.begin(), doc.variables.end(), t.text) == doc.variables.end())
          doc.variables.push_back(t.text);
        if (t.type == detail::Token::Symbol && t.text == "^" && k + 1 < toks.size() && toks[k + 1].text == "(") {
          std::size_t len = 1;
          for (std::size_t j = k + 2; j < toks.size() && toks[j].text != ")"; ++j)
            if (toks[j].text == ",") ++len;
          if (len > 1) vectorLength = std::max(vectorLength, len);
        }
      }
    }
    for (std::size_t i = doc.variables.size(); i < vectorLength; ++i) {
      std::string name = "x" + std::to_string(i + 1);
      while (std::find(doc.variables.begin(), doc.variables.end(), name) != doc.variables.end()) name += "_";
      doc.variables.push_back(name);
    }
  }
  for (std::size_t i = 0; i < doc.variables.size(); ++i) vars[doc.variables[i]] = i;
  const std::size_t n = doc.variables.size();
  for (const auto& p : polys) {
    detail::ExpressionParser parser(detail::tokenize(p.body, p.line, p.offset), p.line, vars, n, doc.level);
    LaurentPolynomial f = parser.parse();
    for (const auto& [e, c] : f.terms())
      if (doc.level % c.normalized().level() != 0 && canonicalLevel(doc.level) % c.normalized().level() != 0)
        throw ParseError(ParseError::Kind::LevelMismatch, p.line, p.offset + 1, "coefficient outside the declared field");
    doc.polynomials.push_back(std::move(f));
  }
  return doc;
}

/// Parse a single polynomial expression over the given variables and field level.
inline LaurentPolynomial parsePolynomial(const std::string& expr, const std::vector<std::string>& variables, Int level = 1) {
  std::string text = "vars:";
  for (const auto& v : variables) text += " " + v;
  text += "\nfield: " + std::to_string(level) + "\npoly: " + expr + "\n";
  return parseSystem(text).polynomials.at(0);
}

}  // namespace torsion
