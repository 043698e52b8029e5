#include "fjac/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "fjac/special.hpp"

namespace fjac::expr {

namespace {

const std::map<std::string, int>& function_table() {
  static const std::map<std::string, int> table = {
      {"sin", 1}, {"cos", 1},  {"exp", 1},  {"log", 1}, {"sqrt", 1},
      {"abs", 1}, {"gamma", 1}, {"pow", 2}, {"beta", 2}};
  return table;
}

class Parser {
 public:
  Parser(const std::string& src, const std::set<std::string>& vars)
      : src_(src), vars_(vars) {}

  ExprAst run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ExprError("empty expression", 0);
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ < src_.size())
      throw ExprError("unexpected trailing input", pos_);
    return ExprAst{std::move(root)};
  }

 private:
  NodePtr parse_expr() {
    NodePtr left = parse_term();
    for (;;) {
      skip_ws();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        const char op = src_[pos_];
        const std::size_t at = pos_++;
        left = make_binary(op, at, std::move(left), parse_term());
      } else {
        return left;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    for (;;) {
      skip_ws();
      if (pos_ < src_.size() && (src_[pos_] == '*' || src_[pos_] == '/')) {
        const char op = src_[pos_];
        const std::size_t at = pos_++;
        left = make_binary(op, at, std::move(left), parse_factor());
      } else {
        return left;
      }
    }
  }

  // '^' binds tighter than a unary minus on its left: "-x^2" is -(x^2).
  NodePtr parse_factor() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '-') {
      const std::size_t at = pos_++;
      auto node = std::make_unique<Node>();
      node->kind = NodeKind::kUnaryMinus;
      node->offset = at;
      node->args.push_back(parse_factor());
      return node;
    }
    NodePtr base = parse_atom();
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') {
      const std::size_t at = pos_++;
      return make_binary('^', at, std::move(base), parse_factor());
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ExprError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    throw ExprError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    const char* begin = src_.c_str() + start;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) throw ExprError("malformed number", start);
    pos_ = start + static_cast<std::size_t>(end - begin);
    auto node = std::make_unique<Node>();
    node->kind = NodeKind::kNumber;
    node->offset = start;
    node->number = value;
    return node;
  }

  NodePtr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const auto it = function_table().find(name);
      if (it == function_table().end())
        throw ExprError("unknown function '" + name + "'", start);
      ++pos_;
      auto node = std::make_unique<Node>();
      node->kind = NodeKind::kCall;
      node->offset = start;
      node->name = name;
      node->args.push_back(parse_expr());
      skip_ws();
      while (pos_ < src_.size() && src_[pos_] == ',') {
        ++pos_;
        node->args.push_back(parse_expr());
        skip_ws();
      }
      expect(')');
      if (static_cast<int>(node->args.size()) != it->second)
        throw ExprError("function '" + name + "' expects " +
                            std::to_string(it->second) + " argument(s)",
                        start);
      return node;
    }
    if (vars_.count(name) == 0) {
      if (function_table().count(name))
        throw ExprError("function '" + name + "' requires arguments", start);
      throw ExprError("unknown identifier '" + name + "'", start);
    }
    auto node = std::make_unique<Node>();
    node->kind = NodeKind::kVariable;
    node->offset = start;
    node->name = name;
    return node;
  }

  NodePtr make_binary(char op, std::size_t at, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_unique<Node>();
    node->kind = NodeKind::kBinary;
    node->offset = at;
    node->op = op;
    node->args.push_back(std::move(lhs));
    node->args.push_back(std::move(rhs));
    return node;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c)
      throw ExprError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  const std::string& src_;
  const std::set<std::string>& vars_;
  std::size_t pos_ = 0;
};

double gamma_checked(double x, std::size_t at) {
  if (x > 0.0) return std::exp(ln_gamma(x));
  if (x == std::floor(x))
    throw ExprError("gamma of a non-positive integer", at);
  // reflection for negative non-integer arguments
  return M_PI / (std::sin(M_PI * x) * std::exp(ln_gamma(1.0 - x)));
}

double eval_node(const Node& node,
                 const std::map<std::string, double>& bindings) {
  switch (node.kind) {
    case NodeKind::kNumber:
      return node.number;
    case NodeKind::kVariable: {
      const auto it = bindings.find(node.name);
      if (it == bindings.end())
        throw ExprError("unbound variable '" + node.name + "'", node.offset);
      return it->second;
    }
    case NodeKind::kUnaryMinus:
      return -eval_node(*node.args[0], bindings);
    case NodeKind::kBinary: {
      const double a = eval_node(*node.args[0], bindings);
      const double b = eval_node(*node.args[1], bindings);
      switch (node.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
      }
      throw ExprError("corrupt binary node", node.offset);
    }
    case NodeKind::kCall: {
      const double a = eval_node(*node.args[0], bindings);
      if (node.name == "sin") return std::sin(a);
      if (node.name == "cos") return std::cos(a);
      if (node.name == "exp") return std::exp(a);
      if (node.name == "sqrt") return std::sqrt(a);
      if (node.name == "abs") return std::abs(a);
      if (node.name == "log") {
        if (!(a > 0.0))
          throw ExprError("log of a non-positive value", node.offset);
        return std::log(a);
      }
      if (node.name == "gamma") return gamma_checked(a, node.offset);
      const double b = eval_node(*node.args[1], bindings);
      if (node.name == "pow") return std::pow(a, b);
      if (node.name == "beta") {
        if (!(a > 0.0) || !(b > 0.0))
          throw ExprError("beta requires positive arguments", node.offset);
        return beta_fn(a, b);
      }
      throw ExprError("unknown function '" + node.name + "'", node.offset);
    }
  }
  throw ExprError("corrupt node", node.offset);
}

void print_node(const Node& node, std::string& out) {
  switch (node.kind) {
    case NodeKind::kNumber: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", node.number);
      out += buf;
      return;
    }
    case NodeKind::kVariable:
      out += node.name;
      return;
    case NodeKind::kUnaryMinus:
      out += "(-";
      print_node(*node.args[0], out);
      out += ')';
      return;
    case NodeKind::kBinary:
      out += '(';
      print_node(*node.args[0], out);
      out += node.op;
      print_node(*node.args[1], out);
      out += ')';
      return;
    case NodeKind::kCall:
      out += node.name;
      out += '(';
      for (std::size_t i = 0; i < node.args.size(); ++i) {
        if (i) out += ',';
        print_node(*node.args[i], out);
      }
      out += ')';
      return;
  }
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == NodeKind::kNumber && a.number != b.number) return false;
  if (a.name != b.name || a.op != b.op) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!nodes_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

}  // namespace

ExprAst parse(const std::string& src,
              const std::set<std::string>& allowed_vars) {
  return Parser(src, allowed_vars).run();
}

double eval(const ExprAst& ast, const std::map<std::string, double>& bindings) {
  const double v = eval_node(*ast.root, bindings);
  return v;
}

std::string print(const ExprAst& ast) {
  std::string out;
  print_node(*ast.root, out);
  return out;
}

bool structurally_equal(const ExprAst& a, const ExprAst& b) {
  return nodes_equal(*a.root, *b.root);
}

}  // namespace fjac::expr
