#include "skewpbw/exprparse.hpp"

#include <cctype>
#include <climits>

namespace skewpbw {

namespace {

std::string describe(const std::set<std::string>& expected, const std::string& found) {
  std::string msg = "expected ";
  bool first = true;
  for (const auto& e : expected) {
    if (!first) msg += " | ";
    msg += e;
    first = false;
  }
  return msg + ", found " + found;
}

}  // namespace

ParseError::ParseError(std::size_t pos, std::set<std::string> expected, const std::string& found)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + describe(expected, found)),
      pos_(pos),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { End, Plus, Minus, Star, Caret, LBrack, RBrack, Comma, LParen, RParen, Number, Name };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), start});
      ++i;
    };
    switch (c) {
      case '+': single(Tok::Plus); continue;
      case '-': single(Tok::Minus); continue;
      case '*': single(Tok::Star); continue;
      case '^': single(Tok::Caret); continue;
      case '[': single(Tok::LBrack); continue;
      case ']': single(Tok::RBrack); continue;
      case ',': single(Tok::Comma); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i + 1 < s.size() && s[i] == '/' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({Tok::Number, s.substr(start, i - start), start});
      continue;
    }
    if (c == 'q' || c == 'p') {
      out.push_back({Tok::Name, std::string(1, c), start});
      ++i;
      continue;
    }
    if ((c == 'x' || c == 'g' || c == 'f') && i + 1 < s.size() && (s[i + 1] == '1' || s[i + 1] == '2')) {
      i += 2;
      if (c == 'x' && i < s.size() && s[i] == '-') ++i;
      out.push_back({Tok::Name, s.substr(start, i - start), start});
      continue;
    }
    throw ParseError(start, {"expression"}, std::string("'") + c + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprNode parse_all() {
    ExprNode e = expr();
    if (peek().kind != Tok::End) fail({"end of input", "+", "-", "*", "^", "factor"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.pos, std::move(expected), t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail({what});
    ++i_;
  }

  static bool starts_factor(Tok k) {
    return k == Tok::Number || k == Tok::Name || k == Tok::LBrack || k == Tok::LParen;
  }

  ExprNode expr() {
    ExprNode sum;
    sum.kind = ExprNode::Kind::Sum;
    sum.pos = peek().pos;
    bool neg = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) neg = take().kind == Tok::Minus;
    sum.children.push_back(term());
    sum.negated.push_back(neg);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      neg = take().kind == Tok::Minus;
      sum.children.push_back(term());
      sum.negated.push_back(neg);
    }
    if (sum.children.size() == 1 && !neg) return std::move(sum.children.front());
    return sum;
  }

  ExprNode term() {
    ExprNode prod;
    prod.kind = ExprNode::Kind::Product;
    prod.pos = peek().pos;
    prod.children.push_back(factor());
    while (true) {
      if (peek().kind == Tok::Star) {
        take();
        prod.children.push_back(factor());
      } else if (starts_factor(peek().kind)) {
        prod.children.push_back(factor());
      } else {
        break;
      }
    }
    if (prod.children.size() == 1) return std::move(prod.children.front());
    return prod;
  }

  ExprNode factor() {
    ExprNode a = atom();
    if (peek().kind != Tok::Caret) return a;
    take();
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      take();
      neg = true;
    } else if (peek().kind == Tok::Plus) {
      take();
    }
    if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos) fail({"integer exponent"});
    const Token t = take();
    long v = 0;
    try {
      v = std::stol(t.text);
    } catch (const std::out_of_range&) {
      throw ParseError(t.pos, {"integer exponent"}, "'" + t.text + "'");
    }
    if (v > INT_MAX) throw ParseError(t.pos, {"integer exponent"}, "'" + t.text + "'");
    ExprNode p;
    p.kind = ExprNode::Kind::Power;
    p.pos = a.pos;
    p.exponent = static_cast<int>(neg ? -v : v);
    p.children.push_back(std::move(a));
    return p;
  }

  ExprNode atom() {
    const Token& t = peek();
    ExprNode n;
    n.pos = t.pos;
    switch (t.kind) {
      case Tok::Number:
        n.kind = ExprNode::Kind::Scalar;
        n.scalar = LaurentPoly(Rational::parse(take().text));
        return n;
      case Tok::Name: {
        const std::string name = take().text;
        if (name == "q" || name == "p") {
          n.kind = ExprNode::Kind::Scalar;
          n.scalar = name == "q" ? LaurentPoly::q() : LaurentPoly::p();
        } else {
          n.kind = ExprNode::Kind::Generator;
          n.name = name;
        }
        return n;
      }
      case Tok::LBrack:
        take();
        n.kind = ExprNode::Kind::Bracket;
        n.children.push_back(expr());
        expect(Tok::Comma, "','");
        n.children.push_back(expr());
        expect(Tok::RBrack, "']'");
        return n;
      case Tok::LParen: {
        take();
        ExprNode inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail({"number", "q", "p", "generator", "'['", "'('"});
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

Element generator(const std::string& name) {
  if (name == "x1") return Element::letter(Letter::X1);
  if (name == "x2") return Element::letter(Letter::X2);
  if (name == "x1-") return Element::letter(Letter::X1N);
  if (name == "x2-") return Element::letter(Letter::X2N);
  GroupWord e{};
  const int k = (name[0] == 'g' ? 0 : 2) + (name[1] - '1');
  e[k] = 1;
  return Element::group(e);
}

}  // namespace

ExprNode parse_ast(const std::string& text) { return Parser(lex(text)).parse_all(); }

Element evaluate(const ExprNode& node) {
  switch (node.kind) {
    case ExprNode::Kind::Scalar:
      return Element(node.scalar);
    case ExprNode::Kind::Generator:
      return generator(node.name);
    case ExprNode::Kind::Bracket:
      return bracket(evaluate(node.children[0]), evaluate(node.children[1]));
    case ExprNode::Kind::Product: {
      Element r(1);
      for (const auto& c : node.children) r = r * evaluate(c);
      return r;
    }
    case ExprNode::Kind::Sum: {
      Element r;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (node.negated[i]) {
          r -= evaluate(node.children[i]);
        } else {
          r += evaluate(node.children[i]);
        }
      }
      return r;
    }
    case ExprNode::Kind::Power: {
      const Element base = evaluate(node.children[0]);
      if (node.exponent < 0 && !base.is_unit())
        throw EvalError("negative power of a non-invertible element at position " + std::to_string(node.pos));
      return pow(base, node.exponent);
    }
  }
  return {};
}

Element parse(const std::string& text) { return evaluate(parse_ast(text)); }

std::string format_term(const LaurentPoly& c, const std::string& monomial) {
  if (monomial.empty() || monomial == "1") return c.to_string();
  if (c.is_one()) return monomial;
  if (c == LaurentPoly(-1)) return "-" + monomial;
  if (c.is_unit()) return c.to_string() + " " + monomial;
  return "(" + c.to_string() + ") " + monomial;
}

std::string format_term(const CycloFraction& c, const std::string& monomial) {
  if (c.is_polynomial()) return format_term(c.num(), monomial);
  if (monomial.empty() || monomial == "1") return c.to_string();
  return c.to_string() + " " + monomial;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const std::string& t = terms[i];
    if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

std::string format(const Element& a) {
  std::vector<std::string> parts;
  parts.reserve(a.size());
  for (const auto& [m, c] : a.terms()) parts.push_back(format_term(c, to_string(m)));
  return join_terms(parts);
}

std::string mirror_expr(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool gen = c == 'x' && i + 1 < text.size() && (text[i + 1] == '1' || text[i + 1] == '2');
    if (!gen) {
      out += c;
      continue;
    }
    out += text.substr(i, 2);
    ++i;
    if (i + 1 < text.size() && text[i + 1] == '-') {
      ++i;
    } else {
      out += '-';
    }
  }
  return out;
}

}  // namespace skewpbw
