#include "nnicp/system.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace nnicp {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
  }
  return "?";
}

const char* to_string(SigmoidEncoding e) {
  switch (e) {
    case SigmoidEncoding::dedicated: return "dedicated";
    case SigmoidEncoding::compositional: return "compositional";
    case SigmoidEncoding::approximating: return "approx";
  }
  return "?";
}

Interval atom_region(const BoundAtom& atom) {
  const double c = atom.constant;
  switch (atom.rel) {
    case Relation::lt: return Interval::make(-kInf, true, c, true);
    case Relation::le: return Interval::make(-kInf, true, c, false);
    case Relation::gt: return Interval::make(c, true, kInf, true);
    case Relation::ge: return Interval::make(c, false, kInf, true);
  }
  return Interval::empty();
}

BoundAtom complement(const BoundAtom& atom) {
  BoundAtom out = atom;
  switch (atom.rel) {
    case Relation::lt: out.rel = Relation::ge; break;
    case Relation::le: out.rel = Relation::gt; break;
    case Relation::gt: out.rel = Relation::le; break;
    case Relation::ge: out.rel = Relation::lt; break;
  }
  return out;
}

VarId ConstraintSystem::add_variable(std::string name, Interval initial, bool auxiliary) {
  if (by_name_.contains(name)) throw std::invalid_argument("duplicate variable '" + name + "'");
  const VarId id = var_id(vars_.size());
  by_name_.emplace(name, id);
  vars_.push_back({std::move(name), initial, auxiliary});
  return id;
}

VarId ConstraintSystem::add_fresh(const std::string& stem, Interval initial) {
  std::string name;
  do {
    name = "_" + stem + std::to_string(fresh_counter_++);
  } while (by_name_.contains(name));
  return add_variable(std::move(name), initial, true);
}

void ConstraintSystem::check(VarId v) const {
  if (index(v) >= vars_.size()) throw std::out_of_range("undeclared variable id");
}

void ConstraintSystem::add_equation(Equation eq) {
  check(output_of(eq));
  for (VarId v : inputs_of(eq)) check(v);
  if (const auto* sum = std::get_if<AffineSumEq>(&eq)) {
    if (sum->terms.empty()) throw std::invalid_argument("affine sum without terms");
    for (const auto& t : sum->terms) {
      if (!std::isfinite(t.coeff) || t.coeff == 0.0)
        throw std::invalid_argument("affine coefficient must be finite and nonzero");
    }
    if (!std::isfinite(sum->constant)) throw std::invalid_argument("affine constant must be finite");
  }
  equations_.push_back(std::move(eq));
}

void ConstraintSystem::add_bound(BoundAtom atom) {
  check(atom.var);
  if (std::isnan(atom.constant)) throw std::invalid_argument("bound constant is NaN");
  bounds_.push_back(atom);
}

void ConstraintSystem::add_clause(Clause clause) {
  if (clause.literals.empty()) throw std::invalid_argument("empty clause");
  for (const auto& lit : clause.literals) {
    check(lit.atom.var);
    if (std::isnan(lit.atom.constant)) throw std::invalid_argument("clause constant is NaN");
  }
  clauses_.push_back(std::move(clause));
}

std::optional<VarId> ConstraintSystem::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

VarId ConstraintSystem::lookup(const std::string& name) const {
  if (auto v = find(name)) return *v;
  throw std::out_of_range("unknown variable '" + name + "'");
}

Box ConstraintSystem::initial_box() const {
  std::vector<Interval> out;
  out.reserve(vars_.size());
  for (const auto& v : vars_) out.push_back(v.initial);
  return Box(std::move(out));
}

namespace {

std::size_t occurrences(const Equation& eq, VarId v) {
  std::size_t n = output_of(eq) == v ? 1 : 0;
  for (VarId x : inputs_of(eq)) n += x == v ? 1 : 0;
  return n;
}

}  // namespace

EvaluationOrder evaluation_order(const ConstraintSystem& sys) {
  const std::size_t n = sys.num_vars();
  const auto& eqs = sys.equations();
  EvaluationOrder order;

  std::vector<bool> known(n, false);
  std::vector<bool> defined(n, false);
  for (const auto& e : eqs) defined[index(output_of(e))] = true;
  for (std::size_t i = 0; i < n; ++i) known[i] = sys.variables()[i].initial.is_point();
  std::vector<bool> used(eqs.size(), false);

  auto unknowns = [&](const Equation& e) {
    std::vector<VarId> u;
    auto note = [&](VarId v) {
      if (!known[index(v)] && std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    };
    note(output_of(e));
    for (VarId v : inputs_of(e)) note(v);
    return u;
  };

  while (true) {
    bool progress = false;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (used[i]) continue;
      const auto u = unknowns(eqs[i]);
      if (u.empty()) {
        used[i] = true;
        order.checks.push_back(i);
        progress = true;
      } else if (u.size() == 1 && occurrences(eqs[i], u[0]) == 1) {
        used[i] = true;
        known[index(u[0])] = true;
        order.steps.push_back({i, u[0]});
        progress = true;
      }
    }
    if (progress) continue;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) break;
    // Stuck: free the lowest-index undefined unknown of a pending equation,
    // or any unknown if every one of them is defined somewhere.
    std::optional<VarId> pick;
    std::optional<VarId> fallback;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (used[i]) continue;
      for (VarId v : unknowns(eqs[i])) {
        if (!defined[index(v)] && (!pick || index(v) < index(*pick))) pick = v;
        if (!fallback || index(v) < index(*fallback)) fallback = v;
      }
    }
    if (!pick) {
      order.feedforward = false;
      pick = fallback;
    }
    known[index(*pick)] = true;
    order.free.push_back(*pick);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!known[i]) order.free.push_back(var_id(i));
  std::sort(order.free.begin(), order.free.end());
  return order;
}

}  // namespace nnicp
