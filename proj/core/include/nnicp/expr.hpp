#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nnicp {

/// Arithmetic expression tree as written in the constraint language.
struct Expr {
  enum class Op : std::uint8_t { constant, variable, add, sub, mul, neg, exp, sigmoid };

  Op op = Op::constant;
  double value = 0.0;
  std::string name;
  std::vector<Expr> args;

  static Expr constant(double v) { return {Op::constant, v, {}, {}}; }
  static Expr variable(std::string n) { return {Op::variable, 0.0, std::move(n), {}}; }
  static Expr unary(Op op, Expr a) { return {op, 0.0, {}, {std::move(a)}}; }
  static Expr binary(Op op, Expr a, Expr b) { return {op, 0.0, {}, {std::move(a), std::move(b)}}; }
};

}  // namespace nnicp
