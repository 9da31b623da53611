#pragma once

// Bracket-expression grammar:
//
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor (["*"] factor)*
//   factor := atom ["^" int]
//   atom   := "q" | "p" | rational | generator | "[" expr "," expr "]" | "(" expr ")"
//
// Generators are x1 x2 x1- x2- g1 g2 f1 f2.  "x1-" binds the minus sign only
// when it follows the digit directly; a binary minus needs whitespace or an
// operand that is not a positive generator.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewpbw/skewalg.hpp"

namespace skewpbw {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, std::set<std::string> expected, const std::string& found);
  [[nodiscard]] std::size_t position() const { return pos_; }
  [[nodiscard]] const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t pos_;
  std::set<std::string> expected_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExprNode {
  enum class Kind { Scalar, Generator, Bracket, Product, Sum, Power };
  Kind kind = Kind::Scalar;
  LaurentPoly scalar;            // Scalar
  std::string name;              // Generator
  std::vector<ExprNode> children;  // Bracket (2), Product, Sum, Power (1)
  std::vector<bool> negated;     // Sum: sign per child
  int exponent = 1;              // Power
  std::size_t pos = 0;
};

ExprNode parse_ast(const std::string& text);
Element evaluate(const ExprNode& node);
Element parse(const std::string& text);

/// Canonical string with parse(format(a)) == a.
std::string format(const Element& a);
/// Coefficient-and-monomial rendering shared with the triangular form printer.
std::string format_term(const LaurentPoly& c, const std::string& monomial);
std::string format_term(const CycloFraction& c, const std::string& monomial);
std::string join_terms(const std::vector<std::string>& terms);

/// Rewrites x1 -> x1-, x2 -> x2- (and back) token by token.
std::string mirror_expr(const std::string& text);

}  // namespace skewpbw
