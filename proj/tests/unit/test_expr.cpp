#include <cmath>
#include <random>

#include "doctest.h"
#include "wmeans/error.hpp"
#include "wmeans/expr.hpp"

using namespace wmeans;
using namespace wmeans::expr;

namespace {

double eval(std::string_view src, Bindings b = {}) { return evaluate(parse(src), b); }

Expr random_tree(std::mt19937& gen, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 1);
  switch (pick(gen)) {
    case 0:
      return Expr::constant(std::uniform_int_distribution<int>(-9, 9)(gen) * 0.5);
    case 1:
      return Expr::variable(gen() % 2 ? "x" : "y");
    case 2:
      return Expr::negate(random_tree(gen, depth - 1));
    case 3:
      return Expr::call(Function::Exp, {random_tree(gen, depth - 1)});
    case 4:
      return Expr::call(Function::Max, {random_tree(gen, depth - 1), random_tree(gen, depth - 1)});
    default: {
      const auto op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 4)(gen));
      return Expr::binary(op, random_tree(gen, depth - 1), random_tree(gen, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(eval("1 + 2 * 3") == 7.0);
  CHECK(eval("2 ^ 3 ^ 2") == 512.0);
  CHECK(eval("-2 ^ 2") == -4.0);
  CHECK(eval("2 ^ -1") == 0.5);
  CHECK(eval("(1 + 2) * 3") == 9.0);
  CHECK(eval("8 / 4 / 2") == 1.0);
  CHECK(eval("10 - 4 - 3") == 3.0);
  CHECK(eval("1.5e2") == 150.0);
}

TEST_CASE("functions and variables") {
  CHECK(eval("cosh(0)") == 1.0);
  CHECK(eval("max(x, y)", {{"x", 2.0}, {"y", 3.0}}) == 3.0);
  CHECK(eval("sign(x - y)", {{"x", 1.0}, {"y", 1.0}}) == 0.0);
  CHECK(eval("x^p", {{"x", 4.0}, {"p", 0.5}}) == 2.0);
  CHECK(eval("alpha * 2", Bindings{}.set("alpha", 3.0)) == 6.0);
}

TEST_CASE("evaluation errors carry codes") {
  auto code = [](std::string_view src, Bindings b = {}) {
    try {
      eval(src, b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code("log(-1)") == ErrorCode::DomainError);
  CHECK(code("sqrt(-1)") == ErrorCode::DomainError);
  CHECK(code("(-8) ^ 0.5") == ErrorCode::DomainError);
  CHECK(code("1 / 0") == ErrorCode::NonFinite);
  CHECK(code("exp(1000)") == ErrorCode::NonFinite);
  CHECK(code("x + 1") == ErrorCode::UnboundVariable);
  CHECK(eval("(-8) ^ 2") == 64.0);
}

TEST_CASE("syntax errors report offsets") {
  try {
    parse("1 + * 2");
    FAIL("no throw");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("(1 + 2"), SyntaxError);
  CHECK_THROWS_AS(parse("1 2"), SyntaxError);
  try {
    parse("frob(1)");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFunction);
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937 gen(7);
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_tree(gen, 4);
    const std::string text = print(e);
    CAPTURE(text);
    CHECK(parse(text) == e);
    CHECK(print(parse(text)) == text);
  }
}

TEST_CASE("free variables") {
  const auto vars = parse("x * exp(y) + p").free_variables();
  CHECK(vars == std::set<std::string>{"p", "x", "y"});
}
