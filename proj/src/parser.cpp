#include <cctype>

#include "hyperplan/error.hpp"
#include "hyperplan/formula.hpp"

namespace hyperplan {
namespace {

enum class Tok { Ident, Int, At, Dot, LParen, RParen, Not, And, Or, Arrow, LBracket, RBracket, Le, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(s.substr(i, len)), i});
    i += len;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      push(Tok::Ident, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      push(Tok::Int, j - i);
    } else if (s.substr(i, 2) == "->") {
      push(Tok::Arrow, 2);
    } else if (s.substr(i, 2) == "<=") {
      push(Tok::Le, 2);
    } else {
      switch (c) {
        case '@': push(Tok::At, 1); break;
        case '.': push(Tok::Dot, 1); break;
        case '(': push(Tok::LParen, 1); break;
        case ')': push(Tok::RParen, 1); break;
        case '!': push(Tok::Not, 1); break;
        case '&': push(Tok::And, 1); break;
        case '|': push(Tok::Or, 1); break;
        case '[': push(Tok::LBracket, 1); break;
        case ']': push(Tok::RBracket, 1); break;
        case '=': push(Tok::Eq, 1); break;
        default: throw SyntaxError(i, {"a token"}, std::string(1, c));
      }
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula run() {
    Formula f;
    while (quantifier_keyword()) {
      const Quant kind = peek().text == "exists" ? Quant::Exists : Quant::ForAll;
      ++pos_;
      std::string var = expect(Tok::Ident, "path variable").text;
      expect(Tok::Dot, "'.'");
      f.prefix.push_back({kind, std::move(var)});
    }
    f.body = implication();
    if (peek().kind != Tok::End) fail({"'&'", "'|'", "'->'", "'U'", "end of input"});
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = pos_ + k;
    return toks_[i < toks_.size() ? i : toks_.size() - 1];
  }

  // an identifier followed by '@' is always an atom, never a keyword
  bool keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw && peek(1).kind != Tok::At;
  }

  bool quantifier_keyword() const { return keyword("exists") || keyword("forall"); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().pos, std::move(expected), peek().text);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail({what});
    return toks_[pos_++];
  }

  int bound_opt() {
    if (peek().kind != Tok::LBracket) return kUnbounded;
    ++pos_;
    expect(Tok::Le, "'<='");
    const Token& n = expect(Tok::Int, "integer bound");
    expect(Tok::RBracket, "']'");
    return std::stoi(n.text);
  }

  ExprPtr implication() {
    ExprPtr lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return implies(lhs, implication());
    }
    return lhs;
  }

  ExprPtr disjunction() {
    ExprPtr lhs = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      lhs = disj(lhs, conjunction());
    }
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = until_expr();
    while (peek().kind == Tok::And) {
      ++pos_;
      lhs = conj(lhs, until_expr());
    }
    return lhs;
  }

  ExprPtr until_expr() {
    ExprPtr lhs = unary();
    if (keyword("U")) {
      ++pos_;
      const int b = bound_opt();
      return until(lhs, until_expr(), b);
    }
    return lhs;
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      ++pos_;
      return neg(unary());
    }
    if (keyword("X")) {
      ++pos_;
      return next(unary());
    }
    if (keyword("F") || keyword("G")) {
      const bool fin = t.text == "F";
      ++pos_;
      const int b = bound_opt();
      ExprPtr arg = unary();
      return fin ? eventually(arg, b) : always(arg, b);
    }
    return primary();
  }

  ExprPtr equality(const char* fn) {
    ++pos_;
    expect(Tok::LParen, "'('");
    std::string p1 = expect(Tok::Ident, "path variable").text;
    expect(Tok::RParen, "')'");
    expect(Tok::Eq, "'='");
    if (!keyword(fn)) fail({std::string("'") + fn + "'"});
    ++pos_;
    expect(Tok::LParen, "'('");
    std::string p2 = expect(Tok::Ident, "path variable").text;
    expect(Tok::RParen, "')'");
    return std::string_view(fn) == "act" ? act_eq(p1, p2) : obs_eq(p1, p2);
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      ExprPtr e = implication();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind != Tok::Ident) fail({"atom", "'('", "'!'", "'X'", "'F'", "'G'", "'true'", "'false'"});
    if (quantifier_keyword())
      throw Error(Errc::QuantifierNotInPrefix, "quantifier at offset " + std::to_string(t.pos));
    if (peek(1).kind == Tok::At) {
      std::string prop = t.text;
      pos_ += 2;
      std::string path = expect(Tok::Ident, "path variable").text;
      return atom(std::move(prop), std::move(path));
    }
    if (t.text == "true") {
      ++pos_;
      return top();
    }
    if (t.text == "false") {
      ++pos_;
      return bottom();
    }
    if ((t.text == "act" || t.text == "obs") && peek(1).kind == Tok::LParen)
      return equality(t.text == "act" ? "act" : "obs");
    ++pos_;
    fail({"'@'"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
  Formula f = Parser(text).run();
  validate(f);
  return f;
}

}  // namespace hyperplan
