#include "nnicp/normalize.hpp"

#include <algorithm>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace nnicp {
namespace {

// Rebuilds `sys` with each AffineSum replaced by `rewrite`. Variables,
// bounds and clauses are copied first so that new auxiliaries get ids
// after the originals.
template <class Rewrite>
ConstraintSystem rebuild(const ConstraintSystem& sys, Rewrite rewrite) {
  ConstraintSystem out;
  out.metadata = sys.metadata;
  for (const auto& v : sys.variables()) out.add_variable(v.name, v.initial, v.auxiliary);
  for (const auto& b : sys.bounds()) out.add_bound(b);
  for (const auto& c : sys.clauses()) out.add_clause(c);
  for (const auto& eq : sys.equations()) {
    const auto* sum = std::get_if<AffineSumEq>(&eq);
    if (sum == nullptr || sum->terms.size() <= 2) {
      out.add_equation(eq);
    } else {
      rewrite(out, *sum);
    }
  }
  return out;
}

// Returns the operand standing for terms[lo, hi): the term itself for a
// single leaf, otherwise a fresh partial-sum variable with coefficient 1.
AffineTerm balanced(ConstraintSystem& out, std::span<const AffineTerm> terms) {
  if (terms.size() == 1) return terms[0];
  const std::size_t mid = (terms.size() + 1) / 2;
  const AffineTerm left = balanced(out, terms.first(mid));
  const AffineTerm right = balanced(out, terms.subspan(mid));
  const VarId p = out.add_fresh("b", Interval::entire());
  out.add_equation(AffineSumEq{p, {left, right}, 0.0});
  return {1.0, p};
}

}  // namespace

ConstraintSystem balance_affine_sums(const ConstraintSystem& sys) {
  return rebuild(sys, [](ConstraintSystem& out, const AffineSumEq& sum) {
    const std::span<const AffineTerm> terms(sum.terms);
    const std::size_t mid = (terms.size() + 1) / 2;
    const AffineTerm left = balanced(out, terms.first(mid));
    const AffineTerm right = balanced(out, terms.subspan(mid));
    out.add_equation(AffineSumEq{sum.y, {left, right}, sum.constant});
  });
}

ConstraintSystem chain_affine_sums(const ConstraintSystem& sys) {
  return rebuild(sys, [](ConstraintSystem& out, const AffineSumEq& sum) {
    AffineTerm acc = sum.terms[0];
    for (std::size_t i = 1; i + 1 < sum.terms.size(); ++i) {
      const VarId p = out.add_fresh("c", Interval::entire());
      out.add_equation(AffineSumEq{p, {acc, sum.terms[i]}, 0.0});
      acc = {1.0, p};
    }
    out.add_equation(AffineSumEq{sum.y, {acc, sum.terms.back()}, sum.constant});
  });
}

std::size_t sum_tree_depth(const ConstraintSystem& sys, VarId y) {
  std::unordered_map<std::size_t, const AffineSumEq*> def;
  for (const auto& eq : sys.equations()) {
    if (const auto* s = std::get_if<AffineSumEq>(&eq)) def.emplace(index(s->y), s);
  }
  std::unordered_map<std::size_t, std::size_t> memo;
  std::function<std::size_t(VarId)> depth = [&](VarId v) -> std::size_t {
    auto it = def.find(index(v));
    if (it == def.end()) return 0;
    if (auto m = memo.find(index(v)); m != memo.end()) return m->second;
    memo[index(v)] = 1;  // cycle guard
    std::size_t best = 0;
    for (const auto& t : it->second->terms) {
      if (sys.var(t.var).auxiliary) best = std::max(best, depth(t.var));
    }
    memo[index(v)] = best + 1;
    return best + 1;
  };
  return depth(y);
}

SumForm parse_sum_form(std::string_view s) {
  if (s == "nary") return SumForm::nary;
  if (s == "balanced") return SumForm::balanced;
  if (s == "chain") return SumForm::chain;
  throw std::invalid_argument("unknown sum form '" + std::string(s) + "'");
}

ConstraintSystem apply_sum_form(const ConstraintSystem& sys, SumForm form) {
  switch (form) {
    case SumForm::balanced: return balance_affine_sums(sys);
    case SumForm::chain: return chain_affine_sums(sys);
    case SumForm::nary: break;
  }
  return sys;
}

}  // namespace nnicp
