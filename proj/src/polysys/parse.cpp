#include <cctype>
#include <map>
#include <set>

#include "core/error.hpp"
#include "polysys/system.hpp"

namespace grc {

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg, int l, int c) const {
    throw Error(ErrCode::Parse,
                msg + " at line " + std::to_string(l) + ", column " + std::to_string(c));
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    for (;;) {
      while (pos < src.size() && std::isspace((unsigned char)src[pos])) advance();
      if (pos < src.size() && src[pos] == '#') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    if (pos >= src.size()) return {Token::End, "", line, col};
    int l = line, c = col;
    char ch = src[pos];
    if (std::isalpha((unsigned char)ch) || ch == '_') {
      std::string s;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_')) {
        s += src[pos];
        advance();
      }
      return {Token::Ident, s, l, c};
    }
    if (std::isdigit((unsigned char)ch)) {
      std::string s;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
        s += src[pos];
        advance();
      }
      return {Token::Number, s, l, c};
    }
    if (std::string("+-*^/();={}|").find(ch) != std::string::npos) {
      advance();
      return {Token::Punct, std::string(1, ch), l, c};
    }
    fail(std::string("unexpected character '") + ch + "'", l, c);
  }
};

// Value of a subexpression: polynomial in the torus variables and t, with
// coefficients at most linear in the parameters.
struct EvCoeff {
  Rat c0;
  std::map<size_t, Rat> lin;
  bool zero() const { return c0 == 0 && lin.empty(); }
};
using EvKey = std::pair<Mono, int>;  // exponent vector, power of t
using EvPoly = std::map<EvKey, EvCoeff>;

struct Parser {
  Lexer lex;
  Token tok;
  std::map<std::string, size_t> params, vars;
  System sys;
  std::set<size_t> used_params;

  explicit Parser(const std::string& s) : lex(s) { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) const { lex.fail(msg, tok.line, tok.col); }

  void eat() { tok = lex.next(); }

  bool is_punct(const char* p) const { return tok.kind == Token::Punct && tok.text == p; }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    eat();
  }

  std::string expect_ident() {
    if (tok.kind != Token::Ident) fail("expected identifier");
    std::string s = tok.text;
    eat();
    return s;
  }

  void declare(std::map<std::string, size_t>& table, std::vector<std::string>& names,
               const std::string& name) {
    if (name == "t") fail("'t' is reserved");
    if (params.count(name) || vars.count(name)) fail("duplicate name '" + name + "'");
    table[name] = names.size();
    names.push_back(name);
  }

  long parse_exponent() {
    bool neg = false;
    if (is_punct("-")) {
      neg = true;
      eat();
    }
    if (tok.kind != Token::Number) fail("expected integer exponent");
    long e = std::stol(tok.text);
    eat();
    return neg ? -e : e;
  }

  EvPoly ev_add(EvPoly a, const EvPoly& b, int sign) {
    for (const auto& [k, c] : b) {
      EvCoeff& dst = a[k];
      dst.c0 += sign * c.c0;
      for (const auto& [p, v] : c.lin) {
        Rat& r = dst.lin[p];
        r += sign * v;
        if (r == 0) dst.lin.erase(p);
      }
      if (dst.zero()) a.erase(k);
    }
    return a;
  }

  EvPoly ev_mul(const EvPoly& a, const EvPoly& b) {
    EvPoly out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        if (!ca.lin.empty() && !cb.lin.empty())
          fail("coefficients must stay linear in the parameters");
        EvKey k{mono_mul(ka.first, kb.first), ka.second + kb.second};
        EvCoeff prod;
        prod.c0 = ca.c0 * cb.c0;
        for (const auto& [p, v] : ca.lin) prod.lin[p] = v * cb.c0;
        for (const auto& [p, v] : cb.lin) {
          Rat& r = prod.lin[p];
          r += v * ca.c0;
          if (r == 0) prod.lin.erase(p);
        }
        if (prod.zero()) continue;
        EvCoeff& dst = out[k];
        dst.c0 += prod.c0;
        for (const auto& [p, v] : prod.lin) {
          Rat& r = dst.lin[p];
          r += v;
          if (r == 0) dst.lin.erase(p);
        }
        if (dst.zero()) out.erase(k);
      }
    return out;
  }

  EvPoly ev_pow(EvPoly base, long e) {
    size_t n = sys.vars.size();
    if (e < 0) {
      // only invertible single terms: constants times a monomial times t^k
      if (base.size() != 1) fail("negative power of a non-monomial");
      auto [key, c] = *base.begin();
      if (!c.lin.empty()) fail("negative power of a parameter");
      Mono m(n, 0);
      for (size_t i = 0; i < n; ++i) m[i] = -key.first[i];
      EvPoly inv;
      inv[{m, -key.second}] = EvCoeff{1 / c.c0, {}};
      return ev_pow(inv, -e);
    }
    EvPoly acc;
    acc[{Mono(n, 0), 0}] = EvCoeff{Rat(1), {}};
    while (e) {
      if (e & 1) acc = ev_mul(acc, base);
      base = ev_mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  EvPoly parse_base() {
    size_t n = sys.vars.size();
    EvPoly out;
    if (tok.kind == Token::Number) {
      std::string num = tok.text;
      eat();
      Rat r;
      if (is_punct("/")) {
        eat();
        if (tok.kind != Token::Number) fail("expected denominator");
        r = rat_from_string(num + "/" + tok.text);
        eat();
      } else {
        r = rat_from_string(num);
      }
      out[{Mono(n, 0), 0}] = EvCoeff{r, {}};
      return out;
    }
    if (is_punct("(")) {
      eat();
      EvPoly e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (tok.kind == Token::Ident) {
      std::string name = tok.text;
      eat();
      if (name == "t") {
        out[{Mono(n, 0), 1}] = EvCoeff{Rat(1), {}};
        return out;
      }
      if (auto it = vars.find(name); it != vars.end()) {
        Mono m(n, 0);
        m[it->second] = 1;
        out[{m, 0}] = EvCoeff{Rat(1), {}};
        return out;
      }
      if (auto it = params.find(name); it != params.end()) {
        used_params.insert(it->second);
        EvCoeff c;
        c.c0 = 0;
        c.lin[it->second] = 1;
        out[{Mono(n, 0), 0}] = c;
        return out;
      }
      fail("unbound symbol '" + name + "'");
    }
    fail("expected a factor");
  }

  EvPoly parse_factor() {
    EvPoly base = parse_base();
    if (is_punct("^")) {
      eat();
      return ev_pow(std::move(base), parse_exponent());
    }
    return base;
  }

  EvPoly parse_term() {
    EvPoly acc = parse_factor();
    while (is_punct("*")) {
      eat();
      acc = ev_mul(acc, parse_factor());
    }
    return acc;
  }

  EvPoly parse_expr() {
    int sign = 1;
    if (is_punct("-")) {
      sign = -1;
      eat();
    } else if (is_punct("+")) {
      eat();
    }
    EvPoly acc = ev_add({}, parse_term(), sign);
    while (is_punct("+") || is_punct("-")) {
      int s = is_punct("+") ? 1 : -1;
      eat();
      acc = ev_add(std::move(acc), parse_term(), s);
    }
    return acc;
  }

  void parse_poly_statement(const std::string& name) {
    if (sys.vars.empty()) fail("polynomial before 'vars' declaration");
    for (const auto& pn : sys.poly_names)
      if (pn == name) fail("duplicate polynomial name '" + name + "'");
    expect_punct("=");
    EvPoly e = parse_expr();
    expect_punct(";");

    // Group by exponent vector; distinct t-powers on one monomial do not fit
    // the single-shift coefficient model.
    ParamPolynomial poly;
    poly.nvars = sys.vars.size();
    std::map<Mono, int> shift_of;
    for (const auto& [key, c] : e) {
      auto it = shift_of.find(key.first);
      if (it != shift_of.end() && it->second != key.second)
        fail("monomial in '" + name + "' mixes different powers of t");
      shift_of.emplace(key.first, key.second);
      ParamLinearForm f;
      f.c0 = c.c0;
      f.lin = c.lin;
      f.t_shift = key.second;
      poly.terms[key.first] = std::move(f);
    }
    if (poly.terms.empty()) fail("polynomial '" + name + "' expands to zero");
    sys.poly_names.push_back(name);
    sys.polys.push_back(std::move(poly));
  }

  void parse_factors_statement() {
    if (!sys.factor_blocks.empty()) fail("duplicate 'factors' declaration");
    expect_punct("{");
    std::set<size_t> seen;
    std::vector<size_t> block;
    for (;;) {
      if (is_punct("|") || is_punct("}")) {
        if (block.empty()) fail("empty factor block");
        sys.factor_blocks.push_back(block);
        block.clear();
        if (is_punct("}")) {
          eat();
          break;
        }
        eat();
        continue;
      }
      std::string name = expect_ident();
      auto it = params.find(name);
      if (it == params.end()) fail("unbound symbol '" + name + "' in factors");
      if (!seen.insert(it->second).second)
        fail("parameter '" + name + "' in two factor blocks");
      block.push_back(it->second);
    }
    expect_punct(";");
    if (seen.size() != sys.params.size()) fail("factor blocks must cover all parameters");
  }

  System run() {
    while (tok.kind != Token::End) {
      std::string head = expect_ident();
      if (head == "params") {
        while (tok.kind == Token::Ident) declare(params, sys.params, expect_ident());
        expect_punct(";");
      } else if (head == "vars") {
        if (!sys.polys.empty()) fail("'vars' after polynomial definitions");
        while (tok.kind == Token::Ident) declare(vars, sys.vars, expect_ident());
        expect_punct(";");
      } else if (head == "factors") {
        parse_factors_statement();
      } else {
        parse_poly_statement(head);
      }
    }
    if (sys.polys.empty()) fail("no polynomials declared");
    for (size_t i = 0; i < sys.params.size(); ++i)
      if (!used_params.count(i))
        throw Error(ErrCode::Validation, "parameter '" + sys.params[i] + "' is never used");
    return std::move(sys);
  }
};

}  // namespace

System parse_system(const std::string& text) { return Parser(text).run(); }

size_t System::param_index(const std::string& name) const {
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i] == name) return i;
  throw Error(ErrCode::Validation, "unknown parameter '" + name + "'");
}

}  // namespace grc
