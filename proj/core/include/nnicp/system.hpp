#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nnicp/equation.hpp"

namespace nnicp {

enum class Relation : std::uint8_t { lt, le, gt, ge };

[[nodiscard]] const char* to_string(Relation r);

/// x (<|<=|>|>=) constant.
struct BoundAtom {
  VarId var;
  Relation rel;
  double constant;
  friend bool operator==(const BoundAtom&, const BoundAtom&) = default;
};

/// The set of values satisfying the atom.
[[nodiscard]] Interval atom_region(const BoundAtom& atom);
/// The complementary atom: not(x >= c) is x < c, and so on.
[[nodiscard]] BoundAtom complement(const BoundAtom& atom);

struct Literal {
  BoundAtom atom;
  bool positive = true;
  /// The atom this literal asserts once polarity is applied.
  [[nodiscard]] BoundAtom effective() const { return positive ? atom : complement(atom); }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Disjunction of literals; never empty.
struct Clause {
  std::vector<Literal> literals;
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Variable {
  std::string name;
  Interval initial;
  /// Introduced by lowering or encoding; the initial interval is implied
  /// by its defining equation rather than imposed by the user.
  bool auxiliary = false;
  friend bool operator==(const Variable&, const Variable&) = default;
};

enum class SigmoidEncoding : std::uint8_t { dedicated, compositional, approximating };

[[nodiscard]] const char* to_string(SigmoidEncoding e);

/// Free-form provenance; not part of the logical content.
struct SystemMetadata {
  std::string origin;
  std::optional<SigmoidEncoding> encoding;
};

/// Variables with initial intervals, definitional equations, unit bound
/// constraints and clauses over bound atoms.
class ConstraintSystem {
 public:
  VarId add_variable(std::string name, Interval initial, bool auxiliary = false);
  /// Generated names start with an underscore and never collide with an
  /// existing variable.
  VarId add_fresh(const std::string& stem, Interval initial);
  void add_equation(Equation eq);
  void add_bound(BoundAtom atom);
  void add_clause(Clause clause);

  [[nodiscard]] std::size_t num_vars() const { return vars_.size(); }
  [[nodiscard]] const Variable& var(VarId v) const { return vars_.at(index(v)); }
  Variable& var(VarId v) { return vars_.at(index(v)); }
  [[nodiscard]] const std::vector<Variable>& variables() const { return vars_; }
  [[nodiscard]] const std::vector<Equation>& equations() const { return equations_; }
  std::vector<Equation>& equations() { return equations_; }
  [[nodiscard]] const std::vector<BoundAtom>& bounds() const { return bounds_; }
  [[nodiscard]] const std::vector<Clause>& clauses() const { return clauses_; }
  [[nodiscard]] std::optional<VarId> find(const std::string& name) const;
  [[nodiscard]] VarId lookup(const std::string& name) const;

  /// Box of initial intervals.
  [[nodiscard]] Box initial_box() const;

  SystemMetadata metadata;

  /// Logical equality; metadata is ignored.
  friend bool operator==(const ConstraintSystem& a, const ConstraintSystem& b) {
    return a.vars_ == b.vars_ && a.equations_ == b.equations_ && a.bounds_ == b.bounds_ &&
           a.clauses_ == b.clauses_;
  }

 private:
  void check(VarId v) const;

  std::vector<Variable> vars_;
  std::unordered_map<std::string, VarId> by_name_;
  std::vector<Equation> equations_;
  std::vector<BoundAtom> bounds_;
  std::vector<Clause> clauses_;
  std::size_t fresh_counter_ = 0;
};

/// How the equations determine the variables when read as assignments.
/// Pinned (point) variables are known up front. Repeatedly, an equation
/// with a single unknown that occurs in it once fixes that unknown; when
/// none applies, the lowest-index unknown that no equation has as output
/// is declared free (or, failing that, any unknown, which makes the
/// system non-feedforward). Unknowns left over at the end are free.
struct EvaluationOrder {
  struct Step {
    std::size_t equation;
    VarId unknown;
  };
  std::vector<VarId> free;
  std::vector<Step> steps;
  /// Equations whose variables were all known before they were reached.
  std::vector<std::size_t> checks;
  bool feedforward = true;
};

[[nodiscard]] EvaluationOrder evaluation_order(const ConstraintSystem& sys);

}  // namespace nnicp
