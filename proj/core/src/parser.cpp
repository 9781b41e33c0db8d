#include "nnicp/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace nnicp {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum class Kind : std::uint8_t { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = col_;
    if (pos_ >= src_.size()) return tok;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      tok.kind = Token::Kind::ident;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      return number(tok);
    }
    if ((c == '<' || c == '>') && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
      tok.kind = Token::Kind::punct;
      tok.text = std::string(src_.substr(pos_, 2));
      advance();
      advance();
      return tok;
    }
    if (std::string_view(";,[]()=+-*<>").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::punct;
      tok.text = std::string(1, c);
      advance();
      return tok;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  Token number(Token tok) {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
        ++n;
      }
      return n;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      digits();
    }
    bool bad = false;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (digits() == 0) bad = true;
    }
    if (pos_ < src_.size() &&
        (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '.')) {
      bad = true;
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (bad || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw ParseError("malformed number '" + std::string(text) + "'", tok.line, tok.column);
    }
    tok.kind = Token::Kind::number;
    tok.text = std::string(text);
    tok.number = value;
    return tok;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_keyword(const std::string& s) {
  return s == "var" || s == "in" || s == "clause" || s == "or" || s == "not" || s == "exp" ||
         s == "sigmoid" || s == "inf";
}

class Parser {
 public:
  Parser(std::string_view text, const SigmoidOptions& opts) : lex_(text), opts_(opts) { shift(); }

  ConstraintSystem run() {
    while (tok_.kind != Token::Kind::end) statement();
    return std::move(sys_);
  }

 private:
  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw ParseError(what, at.line, at.column);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, tok_); }

  void shift() { tok_ = lex_.next(); }

  bool at_punct(std::string_view p) const { return tok_.kind == Token::Kind::punct && tok_.text == p; }
  bool at_word(std::string_view w) const { return tok_.kind == Token::Kind::ident && tok_.text == w; }

  void expect(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'" + found());
    shift();
  }

  std::string found() const {
    if (tok_.kind == Token::Kind::end) return " but reached end of input";
    return " but found '" + tok_.text + "'";
  }

  std::string identifier() {
    if (tok_.kind != Token::Kind::ident || is_keyword(tok_.text)) fail("expected identifier" + found());
    std::string name = tok_.text;
    shift();
    return name;
  }

  VarId declared(const std::string& name, const Token& at) const {
    if (auto v = sys_.find(name)) return *v;
    fail("undeclared variable '" + name + "'", at);
  }

  // ['+'|'-'] (number | inf)
  double signed_constant() {
    double sign = 1.0;
    if (at_punct("-") || at_punct("+")) {
      sign = at_punct("-") ? -1.0 : 1.0;
      shift();
    }
    if (at_word("inf")) {
      shift();
      return sign * kInf;
    }
    if (tok_.kind != Token::Kind::number) fail("expected number" + found());
    const double v = tok_.number;
    shift();
    return sign * v;
  }

  std::optional<Relation> relation() const {
    if (tok_.kind != Token::Kind::punct) return std::nullopt;
    if (tok_.text == "<") return Relation::lt;
    if (tok_.text == "<=") return Relation::le;
    if (tok_.text == ">") return Relation::gt;
    if (tok_.text == ">=") return Relation::ge;
    return std::nullopt;
  }

  void statement() {
    const Token start = tok_;
    if (at_word("var")) {
      shift();
      const Token name_tok = tok_;
      std::string name = identifier();
      if (sys_.find(name)) fail("duplicate declaration of '" + name + "'", name_tok);
      if (!at_word("in")) fail("expected 'in'" + found());
      shift();
      const Interval init = interval();
      expect(";");
      const bool aux = name.starts_with('_');
      sys_.add_variable(std::move(name), init, aux);
      return;
    }
    if (at_word("clause")) {
      shift();
      Clause clause;
      clause.literals.push_back(literal());
      while (at_word("or")) {
        shift();
        clause.literals.push_back(literal());
      }
      expect(";");
      sys_.add_clause(std::move(clause));
      return;
    }
    const std::string name = identifier();
    const VarId v = declared(name, start);
    if (at_punct("=")) {
      shift();
      Expr e = expr();
      expect(";");
      try {
        define_variable(sys_, v, e, opts_);
      } catch (const LoweringError& err) {
        fail(err.what(), start);
      }
      return;
    }
    const auto rel = relation();
    if (!rel) fail("expected '=' or a comparison" + found());
    shift();
    const double c = signed_constant();
    expect(";");
    sys_.add_bound({v, *rel, c});
  }

  Interval interval() {
    bool lo_strict = false;
    if (at_punct("(")) {
      lo_strict = true;
    } else if (!at_punct("[")) {
      fail("expected '[' or '('" + found());
    }
    shift();
    const double lo = signed_constant();
    expect(",");
    const double hi = signed_constant();
    bool hi_strict = false;
    if (at_punct(")")) {
      hi_strict = true;
    } else if (!at_punct("]")) {
      fail("expected ']' or ')'" + found());
    }
    shift();
    return Interval::make(lo, lo_strict, hi, hi_strict);
  }

  Literal literal() {
    if (at_word("not")) {
      shift();
      expect("(");
      Literal inner = literal();
      expect(")");
      inner.positive = !inner.positive;
      return inner;
    }
    const Token at = tok_;
    const VarId v = declared(identifier(), at);
    const auto rel = relation();
    if (!rel) fail("expected comparison" + found());
    shift();
    return {{v, *rel, signed_constant()}, true};
  }

  Expr expr() {
    Expr lhs = term();
    while (at_punct("+") || at_punct("-")) {
      const auto op = at_punct("+") ? Expr::Op::add : Expr::Op::sub;
      shift();
      lhs = Expr::binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (at_punct("*")) {
      shift();
      lhs = Expr::binary(Expr::Op::mul, std::move(lhs), unary());
    }
    return lhs;
  }

  Expr unary() {
    if (at_punct("-")) {
      shift();
      return Expr::unary(Expr::Op::neg, unary());
    }
    if (at_punct("+")) {
      shift();
      return unary();
    }
    return primary();
  }

  Expr primary() {
    if (tok_.kind == Token::Kind::number) {
      const double v = tok_.number;
      shift();
      return Expr::constant(v);
    }
    if (at_punct("(")) {
      shift();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (at_word("exp") || at_word("sigmoid")) {
      const auto op = at_word("exp") ? Expr::Op::exp : Expr::Op::sigmoid;
      shift();
      expect("(");
      Expr arg = expr();
      expect(")");
      return Expr::unary(op, std::move(arg));
    }
    const Token at = tok_;
    std::string name = identifier();
    (void)declared(name, at);
    return Expr::variable(std::move(name));
  }

  Lexer lex_;
  const SigmoidOptions& opts_;
  Token tok_;
  ConstraintSystem sys_;
};

void put_number(std::string& out, double v) {
  if (v == kInf) {
    out += "+inf";
  } else if (v == -kInf) {
    out += "-inf";
  } else {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
  }
}

void put_atom(std::string& out, const ConstraintSystem& sys, const BoundAtom& a) {
  out += sys.var(a.var).name;
  out += ' ';
  out += to_string(a.rel);
  out += ' ';
  put_number(out, a.constant);
}

}  // namespace

ConstraintSystem parse_system(std::string_view text, const SigmoidOptions& opts) {
  opts.validate();
  return Parser(text, opts).run();
}

std::string to_text(const ConstraintSystem& sys) {
  std::string out;
  if (!sys.metadata.origin.empty()) out += "# origin: " + sys.metadata.origin + "\n";
  if (sys.metadata.encoding) out += std::string("# encoding: ") + to_string(*sys.metadata.encoding) + "\n";
  for (const auto& v : sys.variables()) {
    out += "var " + v.name + " in " + to_string(v.initial) + ";\n";
  }
  auto name = [&](VarId v) -> const std::string& { return sys.var(v).name; };
  for (const auto& eq : sys.equations()) {
    out += name(output_of(eq)) + " = ";
    if (const auto* e = std::get_if<SigmoidEq>(&eq)) {
      out += "sigmoid(" + name(e->x) + ")";
    } else if (const auto* e = std::get_if<ExpEq>(&eq)) {
      out += "exp(" + name(e->x) + ")";
    } else if (const auto* e = std::get_if<NegEq>(&eq)) {
      out += "-" + name(e->x);
    } else if (const auto* e = std::get_if<ProductEq>(&eq)) {
      out += name(e->x1) + " * " + name(e->x2);
    } else if (const auto* e = std::get_if<AffineSumEq>(&eq)) {
      for (const auto& t : e->terms) {
        put_number(out, t.coeff);
        out += "*" + name(t.var) + " + ";
      }
      put_number(out, e->constant);
    }
    out += ";\n";
  }
  for (const auto& b : sys.bounds()) {
    put_atom(out, sys, b);
    out += ";\n";
  }
  for (const auto& c : sys.clauses()) {
    out += "clause ";
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
      if (i) out += " or ";
      const Literal& lit = c.literals[i];
      if (!lit.positive) out += "not(";
      put_atom(out, sys, lit.atom);
      if (!lit.positive) out += ")";
    }
    out += ";\n";
  }
  return out;
}

}  // namespace nnicp
