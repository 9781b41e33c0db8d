#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nnicp/lowering.hpp"
#include "nnicp/system.hpp"

namespace nnicp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the constraint language:
///
///   var <name> in <interval>;          interval: [a,b] (a,b] [a,b) (a,b), +-inf
///   <name> = <expr>;                    expr over + - * exp() sigmoid()
///   <name> <op> <const>;                op: < <= > >=
///   clause <lit> or <lit> ...;          lit: <name> <op> <const> | not(<lit>)
///   # comment to end of line
///
/// Variables must be declared before use; names starting with '_' mark
/// auxiliary variables, as in systems printed by to_text. Sigmoid applications are
/// lowered according to `opts`.
[[nodiscard]] ConstraintSystem parse_system(std::string_view text, const SigmoidOptions& opts = {});

/// Renders a system in the same language. Numbers are printed in
/// shortest round-trip form, so parse_system(to_text(s)) == s for any
/// system whose equations are in lowered three-address form.
[[nodiscard]] std::string to_text(const ConstraintSystem& sys);

}  // namespace nnicp
