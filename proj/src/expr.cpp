#include "kforge/expr.hpp"

#include <algorithm>
#include <cctype>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

constexpr int kMaxExponent = 64;

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : s_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const int line = line_, col = col_;
      if (pos_ >= s_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (std::isdigit(c)) {
        out.push_back({Tok::Number, number(), line, col});
      } else if (std::isalpha(c) || c == '_') {
        std::string id;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          id += advance();
        out.push_back({Tok::Ident, id, line, col});
      } else {
        Tok k;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '/': throw SyntaxError("division is not supported", line, col);
        default: throw SyntaxError("unexpected character '" + code_point() + "'", line, col);
        }
        out.push_back({k, std::string(1, advance()), line, col});
      }
    }
  }

private:
  char advance() {
    const char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      advance();
  }

  std::string digits() {
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      d += advance();
    return d;
  }

  // nat or nat/nat with no blanks around the slash.
  std::string number() {
    std::string n = digits();
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      n += advance();
      n += digits();
    }
    return n;
  }

  std::string code_point() const {
    size_t end = pos_ + 1;
    while (end < s_.size() && (static_cast<unsigned char>(s_[end]) & 0xC0) == 0x80)
      ++end;
    return s_.substr(pos_, end - pos_);
  }

  const std::string &s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

Expr leaf(Expr::Kind k) {
  Expr e;
  e.kind = k;
  return e;
}

Expr node(Expr::Kind k, std::vector<Expr> args, int index = 0) {
  Expr e;
  e.kind = k;
  e.args = std::move(args);
  e.index = index;
  return e;
}

bool all_digits(const std::string &s, size_t from) {
  return from < s.size() &&
         std::all_of(s.begin() + static_cast<long>(from), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
public:
  Parser(std::vector<Token> toks, int dim) : t_(std::move(toks)), dim_(dim) {}

  Expr run() {
    Expr e = expr();
    if (peek().kind != Tok::End)
      fail("unexpected '" + peek().text + "'");
    return e;
  }

private:
  const Token &peek() const { return t_[i_]; }
  const Token &take() { return t_[i_++]; }
  [[noreturn]] void fail(const std::string &what) const {
    throw SyntaxError(what, peek().line, peek().col);
  }

  Expr expr() {
    Expr e;
    if (peek().kind == Tok::Minus) {
      take();
      e = node(Expr::Kind::Neg, {term()});
    } else {
      e = term();
    }
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const auto k = take().kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      e = node(k, {std::move(e), term()});
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (peek().kind == Tok::Star) {
      take();
      e = node(Expr::Kind::Mul, {std::move(e), factor()});
    }
    return e;
  }

  Expr factor() {
    Expr base = atom();
    if (peek().kind != Tok::Caret)
      return base;
    take();
    if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos)
      fail("exponent must be a natural number");
    const std::string &txt = peek().text;
    if (txt.size() > 3 || std::stoi(txt) > kMaxExponent)
      fail("exponent larger than " + std::to_string(kMaxExponent));
    const int n = std::stoi(take().text);
    if (peek().kind == Tok::Caret)
      fail("chained exponent");
    return node(Expr::Kind::Pow, {std::move(base)}, n);
  }

  Expr atom() {
    const Token &tok = peek();
    switch (tok.kind) {
    case Tok::Number: {
      Expr e = leaf(Expr::Kind::Number);
      const auto slash = tok.text.find('/');
      if (slash == std::string::npos) {
        e.value = Rational::parse(tok.text);
      } else {
        const Rational den = Rational::parse(tok.text.substr(slash + 1));
        if (den.is_zero())
          fail("zero denominator");
        e.value = Rational::parse(tok.text.substr(0, slash)) / den;
      }
      take();
      return e;
    }
    case Tok::Ident: {
      const std::string &id = tok.text;
      if (id == "i") {
        take();
        return leaf(Expr::Kind::Imag);
      }
      if (id == "a") {
        take();
        return leaf(Expr::Kind::Param);
      }
      if (id == "x")
        fail("expected a coordinate index after 'x'");
      if (id[0] == 'x' && all_digits(id, 1)) {
        if (id.size() > 4 || std::stoi(id.substr(1)) >= dim_)
          throw IndexOutOfRange("'" + id + "' at " + std::to_string(tok.line) + ":" +
                                std::to_string(tok.col) + " needs dimension above " +
                                std::to_string(dim_));
        Expr e = leaf(Expr::Kind::Var);
        e.index = std::stoi(id.substr(1));
        take();
        return e;
      }
      throw UnknownSymbol("'" + id + "' at " + std::to_string(tok.line) + ":" +
                          std::to_string(tok.col));
    }
    case Tok::LParen: {
      take();
      Expr e = expr();
      if (peek().kind != Tok::RParen)
        fail("expected ')'");
      take();
      return e;
    }
    case Tok::End:
      fail("unexpected end of input");
    default:
      fail("unexpected '" + tok.text + "'");
    }
  }

  std::vector<Token> t_;
  size_t i_ = 0;
  int dim_;
};

// Binding levels: 1 sum, 2 term, 3 factor, 4 atom.
int level(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Neg:
  case Expr::Kind::Add:
  case Expr::Kind::Sub:
    return 1;
  case Expr::Kind::Mul:
    return 2;
  case Expr::Kind::Pow:
    return 3;
  default:
    return 4;
  }
}

std::string print_at(const Expr &e, int need) {
  std::string s = print_expr(e);
  return level(e) < need ? "(" + s + ")" : s;
}

} // namespace

Expr parse_poly(const std::string &src, int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw InvalidSpec("dimension must be in 1.." + std::to_string(kMaxDim));
  return Parser(Lexer(src).run(), dim).run();
}

std::string print_expr(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Number:
    return e.value.str();
  case Expr::Kind::Imag:
    return "i";
  case Expr::Kind::Param:
    return "a";
  case Expr::Kind::Var:
    return "x" + std::to_string(e.index);
  case Expr::Kind::Neg:
    return "-" + print_at(e.args[0], 2);
  case Expr::Kind::Add:
    return print_at(e.args[0], 1) + " + " + print_at(e.args[1], 2);
  case Expr::Kind::Sub:
    return print_at(e.args[0], 1) + " - " + print_at(e.args[1], 2);
  case Expr::Kind::Mul:
    return print_at(e.args[0], 2) + "*" + print_at(e.args[1], 3);
  case Expr::Kind::Pow:
    return print_at(e.args[0], 4) + "^" + std::to_string(e.index);
  }
  return "";
}

int expr_degree(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Var:
    return 1;
  case Expr::Kind::Neg:
    return expr_degree(e.args[0]);
  case Expr::Kind::Add:
  case Expr::Kind::Sub:
    return std::max(expr_degree(e.args[0]), expr_degree(e.args[1]));
  case Expr::Kind::Mul:
    return expr_degree(e.args[0]) + expr_degree(e.args[1]);
  case Expr::Kind::Pow:
    return expr_degree(e.args[0]) * e.index;
  default:
    return 0;
  }
}

Poly to_poly(const Expr &e, int dim, int order) {
  switch (e.kind) {
  case Expr::Kind::Number:
    return Poly::constant(dim, Series::constant(order, GaussRat(e.value)));
  case Expr::Kind::Imag:
    return Poly::constant(dim, Series::constant(order, GaussRat::i()));
  case Expr::Kind::Param:
    return Poly::constant(dim, Series::monomial(order, 1));
  case Expr::Kind::Var:
    return Poly::variable(dim, order, e.index);
  case Expr::Kind::Neg:
    return -to_poly(e.args[0], dim, order);
  case Expr::Kind::Add:
    return to_poly(e.args[0], dim, order) + to_poly(e.args[1], dim, order);
  case Expr::Kind::Sub:
    return to_poly(e.args[0], dim, order) - to_poly(e.args[1], dim, order);
  case Expr::Kind::Mul:
    return to_poly(e.args[0], dim, order) * to_poly(e.args[1], dim, order);
  case Expr::Kind::Pow: {
    const Poly base = to_poly(e.args[0], dim, order);
    Poly out = Poly::constant(dim, Series::constant(order, GaussRat(1)));
    for (int k = 0; k < e.index; ++k)
      out = out * base;
    return out;
  }
  }
  return Poly(dim, order);
}

} // namespace kforge
