#include "wmeans/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans::expr {

namespace {

constexpr std::array<std::string_view, 5> kSlotNames = {"x", "y", "t", "p", "c"};

enum Precedence { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int precedence(const Node& node) {
  if (std::holds_alternative<Negate>(node.value)) return kUnary;
  if (const auto* b = std::get_if<Binary>(&node.value)) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return kAdditive;
      case BinaryOp::Mul:
      case BinaryOp::Div: return kMultiplicative;
      case BinaryOp::Pow: return kPower;
    }
  }
  return kAtom;
}

bool nodes_equal(const Node& a, const Node& b);

bool ptrs_equal(const NodePtr& a, const NodePtr& b) {
  return a == b || nodes_equal(*a, *b);
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&b](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, Constant>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return ptrs_equal(lhs.operand, rhs.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return lhs.op == rhs.op && ptrs_equal(lhs.lhs, rhs.lhs) && ptrs_equal(lhs.rhs, rhs.rhs);
        } else {
          if (lhs.fn != rhs.fn || lhs.args.size() != rhs.args.size()) return false;
          for (std::size_t i = 0; i < lhs.args.size(); ++i) {
            if (!ptrs_equal(lhs.args[i], rhs.args[i])) return false;
          }
          return true;
        }
      },
      a.value);
}

void collect_variables(const Node& node, std::set<std::string>& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Variable>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_variables(*n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_variables(*n.lhs, out);
          collect_variables(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& arg : n.args) collect_variables(*arg, out);
        }
      },
      node.value);
}

std::string print_node(const Node& node);

std::string wrap(const Node& node, bool parenthesize) {
  std::string text = print_node(node);
  return parenthesize ? "(" + text + ")" : text;
}

std::string print_node(const Node& node) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return format_double(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "-" + wrap(*n.operand, precedence(*n.operand) < kUnary);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int lp = precedence(*n.lhs);
          const int rp = precedence(*n.rhs);
          switch (n.op) {
            case BinaryOp::Add:
              return wrap(*n.lhs, lp < kAdditive) + " + " + wrap(*n.rhs, rp <= kAdditive);
            case BinaryOp::Sub:
              return wrap(*n.lhs, lp < kAdditive) + " - " + wrap(*n.rhs, rp <= kAdditive);
            case BinaryOp::Mul:
              return wrap(*n.lhs, lp < kMultiplicative) + " * " + wrap(*n.rhs, rp <= kMultiplicative);
            case BinaryOp::Div:
              return wrap(*n.lhs, lp < kMultiplicative) + " / " + wrap(*n.rhs, rp <= kMultiplicative);
            case BinaryOp::Pow:
              return wrap(*n.lhs, lp < kAtom) + "^" + wrap(*n.rhs, rp < kUnary);
          }
          return {};
        } else {
          std::string text(function_name(n.fn));
          text += "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) text += ", ";
            text += print_node(*n.args[i]);
          }
          return text + ")";
        }
      },
      node.value);
}

// Recursive-descent parser over bytes.
class Parser {
 public:
  explicit Parser(std::string_view source) : src_(source) {}

  Expr parse_all() {
    Expr result = parse_additive();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(pos_, message); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, parse_multiplicative());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, parse_multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_additive();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [this] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{} || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(src_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      auto fn = function_from_name(name);
      if (!fn) throw Error(ErrorCode::UnknownFunction, "'" + name + "' at offset " + std::to_string(start));
      ++pos_;
      std::vector<Expr> args;
      if (!accept(')')) {
        do {
          args.push_back(parse_additive());
        } while (accept(','));
        if (!accept(')')) fail("expected ')' or ','");
      }
      if (args.size() != function_arity(*fn)) {
        throw SyntaxError(start, name + " takes " + std::to_string(function_arity(*fn)) +
                                     " argument(s), got " + std::to_string(args.size()));
      }
      return Expr::call(*fn, std::move(args));
    }
    return Expr::variable(std::move(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " produced " + format_double(value));
  }
  return value;
}

double eval_node(const Node& node, const Bindings& bindings);

double eval_call(const Call& call, const Bindings& bindings) {
  const double a = eval_node(*call.args[0], bindings);
  switch (call.fn) {
    case Function::Exp: return checked(std::exp(a), "exp");
    case Function::Log:
      if (!(a > 0.0)) throw Error(ErrorCode::DomainError, "log of " + format_double(a));
      return checked(std::log(a), "log");
    case Function::Cosh: return checked(std::cosh(a), "cosh");
    case Function::Sinh: return checked(std::sinh(a), "sinh");
    case Function::Sqrt:
      if (a < 0.0) throw Error(ErrorCode::DomainError, "sqrt of " + format_double(a));
      return std::sqrt(a);
    case Function::Abs: return std::abs(a);
    case Function::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    case Function::Min: return std::min(a, eval_node(*call.args[1], bindings));
    case Function::Max: return std::max(a, eval_node(*call.args[1], bindings));
  }
  return 0.0;
}

double eval_node(const Node& node, const Bindings& bindings) {
  return std::visit(
      [&bindings](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          std::optional<double> v = n.slot >= 0 ? bindings.slot(n.slot) : bindings.get(n.name);
          if (!v) throw Error(ErrorCode::UnboundVariable, "'" + n.name + "'");
          return *v;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval_node(*n.operand, bindings);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval_node(*n.lhs, bindings);
          const double b = eval_node(*n.rhs, bindings);
          switch (n.op) {
            case BinaryOp::Add: return checked(a + b, "+");
            case BinaryOp::Sub: return checked(a - b, "-");
            case BinaryOp::Mul: return checked(a * b, "*");
            case BinaryOp::Div: return checked(a / b, "/");
            case BinaryOp::Pow:
              if (a < 0.0 && b != std::floor(b)) {
                throw Error(ErrorCode::DomainError,
                            "non-integer power of negative " + format_double(a));
              }
              return checked(std::pow(a, b), "^");
          }
          return 0.0;
        } else {
          return eval_call(n, bindings);
        }
      },
      node.value);
}

}  // namespace

std::string_view function_name(Function fn) noexcept {
  switch (fn) {
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Cosh: return "cosh";
    case Function::Sinh: return "sinh";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
    case Function::Sign: return "sign";
    case Function::Min: return "min";
    case Function::Max: return "max";
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) noexcept {
  for (Function fn : {Function::Exp, Function::Log, Function::Cosh, Function::Sinh, Function::Sqrt,
                      Function::Abs, Function::Sign, Function::Min, Function::Max}) {
    if (function_name(fn) == name) return fn;
  }
  return std::nullopt;
}

std::size_t function_arity(Function fn) noexcept {
  return (fn == Function::Min || fn == Function::Max) ? 2 : 1;
}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "expression constants must be finite");
  }
  if (value < 0.0) return negate(constant(-value));
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  return Expr(std::make_shared<const Node>(Node{Constant{value}}));
}

Expr Expr::variable(std::string name) {
  const int slot = Bindings::slot_of(name);
  return Expr(std::make_shared<const Node>(Node{Variable{std::move(name), slot}}));
}

Expr Expr::negate(const Expr& operand) {
  return Expr(std::make_shared<const Node>(Node{Negate{operand.root_}}));
}

Expr Expr::binary(BinaryOp op, const Expr& lhs, const Expr& rhs) {
  return Expr(std::make_shared<const Node>(Node{Binary{op, lhs.root_, rhs.root_}}));
}

Expr Expr::call(Function fn, std::vector<Expr> args) {
  if (args.size() != function_arity(fn)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(function_name(fn)) + " has arity " + std::to_string(function_arity(fn)));
  }
  std::vector<NodePtr> nodes;
  nodes.reserve(args.size());
  for (auto& a : args) nodes.push_back(a.root_);
  return Expr(std::make_shared<const Node>(Node{Call{fn, std::move(nodes)}}));
}

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> names;
  collect_variables(*root_, names);
  return names;
}

std::string Expr::to_string() const { return print_node(*root_); }

bool operator==(const Expr& a, const Expr& b) { return ptrs_equal(a.root_, b.root_); }

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string print(const Expr& e) { return e.to_string(); }

Bindings::Bindings(std::initializer_list<std::pair<std::string_view, double>> values) {
  for (const auto& [name, value] : values) set(name, value);
}

int Bindings::slot_of(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i) {
    if (kSlotNames[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Bindings& Bindings::set(std::string_view name, double value) {
  if (int s = slot_of(name); s >= 0) {
    set_slot(s, value);
    return *this;
  }
  for (auto& [n, v] : extra_) {
    if (n == name) {
      v = value;
      return *this;
    }
  }
  extra_.emplace_back(std::string(name), value);
  return *this;
}

std::optional<double> Bindings::get(std::string_view name) const {
  if (int s = slot_of(name); s >= 0) return slot(s);
  for (const auto& [n, v] : extra_) {
    if (n == name) return v;
  }
  return std::nullopt;
}

double evaluate(const Expr& e, const Bindings& bindings) { return eval_node(e.root(), bindings); }

}  // namespace wmeans::expr
