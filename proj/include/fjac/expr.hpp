#ifndef FJAC_EXPR_HPP_
#define FJAC_EXPR_HPP_

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fjac::expr {

class ExprError : public std::runtime_error {
 public:
  ExprError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

enum class NodeKind { kNumber, kVariable, kBinary, kUnaryMinus, kCall };

struct Node {
  NodeKind kind;
  std::size_t offset = 0;      // byte offset in the source, for diagnostics
  double number = 0.0;         // kNumber
  std::string name;            // kVariable / kCall
  char op = 0;                 // kBinary: + - * / ^
  std::vector<NodePtr> args;   // operands / call arguments
};

struct ExprAst {
  NodePtr root;
};

/// Recursive-descent parse of the arithmetic sub-language. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?          -- '^' right-associative
///   unary  := '-' unary | atom
///   atom   := number | var | func '(' args ')' | '(' expr ')'
/// Functions: sin cos exp log sqrt abs gamma (1 arg); pow beta (2 args).
ExprAst parse(const std::string& src, const std::set<std::string>& allowed_vars);

double eval(const ExprAst& ast, const std::map<std::string, double>& bindings);

/// Canonical fully parenthesized rendering; parse(print(ast)) reproduces
/// the same tree.
std::string print(const ExprAst& ast);

bool structurally_equal(const ExprAst& a, const ExprAst& b);

}  // namespace fjac::expr

#endif  // FJAC_EXPR_HPP_
