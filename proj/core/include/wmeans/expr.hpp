#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wmeans::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Log, Cosh, Sinh, Sqrt, Abs, Sign, Min, Max };

std::string_view function_name(Function fn) noexcept;
std::optional<Function> function_from_name(std::string_view name) noexcept;
std::size_t function_arity(Function fn) noexcept;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant {
  double value;
};
struct Variable {
  std::string name;
  int slot;  // index into the fast binding slots, -1 for other names
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  std::vector<NodePtr> args;
};

struct Node {
  std::variant<Constant, Variable, Negate, Binary, Call> value;
};

/// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  /// Negative constants are stored as negate(constant(|v|)) so that every
  /// tree has a canonical printed form. Non-finite constants are rejected.
  static Expr constant(double value);
  static Expr variable(std::string name);
  static Expr negate(const Expr& operand);
  static Expr binary(BinaryOp op, const Expr& lhs, const Expr& rhs);
  static Expr call(Function fn, std::vector<Expr> args);

  [[nodiscard]] const Node& root() const noexcept { return *root_; }
  [[nodiscard]] const NodePtr& root_ptr() const noexcept { return root_; }
  [[nodiscard]] std::set<std::string> free_variables() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

/// Standard precedence: ^ (right associative) binds tightest, then unary
/// minus, then * and /, then + and -. Whitespace is ignored. Throws
/// wmeans::SyntaxError (with byte offset) or UnknownFunction. Unknown
/// variable names are accepted here and reported by evaluate().
Expr parse(std::string_view source);

/// Canonical text with the minimum parentheses; parse(print(e)) == e.
std::string print(const Expr& e);

/// Variable values. x, y, t, p, c use fixed slots; any other name goes to a
/// small overflow list.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<std::pair<std::string_view, double>> values);

  Bindings& set(std::string_view name, double value);
  [[nodiscard]] std::optional<double> get(std::string_view name) const;
  [[nodiscard]] std::optional<double> slot(int index) const noexcept {
    if ((bound_ >> index) & 1U) return slots_[static_cast<std::size_t>(index)];
    return std::nullopt;
  }
  void set_slot(int index, double value) noexcept {
    slots_[static_cast<std::size_t>(index)] = value;
    bound_ |= 1U << index;
  }

  static int slot_of(std::string_view name) noexcept;

 private:
  std::array<double, 5> slots_{};
  unsigned bound_ = 0;
  std::vector<std::pair<std::string, double>> extra_;
};

/// IEEE evaluation with checks: log/sqrt outside their domain and
/// non-integer powers of negative numbers raise DomainError; any infinite or
/// NaN intermediate raises NonFinite; a missing variable raises
/// UnboundVariable. sign(0) = 0.
double evaluate(const Expr& e, const Bindings& bindings);

}  // namespace wmeans::expr
