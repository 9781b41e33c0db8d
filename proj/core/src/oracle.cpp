#include "nnicp/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "nnicp/detail/overloaded.hpp"
#include "nnicp/sigmoid.hpp"

namespace nnicp {

namespace {

using Real = long double;

constexpr std::size_t kMaxFree = 4;

Real margin_for(double c) { return 1e-9L * std::max<Real>(1.0L, std::fabs(static_cast<Real>(c))); }

// Atom on a computed value: must hold with the margin to spare.
bool robust(const BoundAtom& a, Real x) {
  const Real c = a.constant;
  const Real m = margin_for(a.constant);
  switch (a.rel) {
    case Relation::lt:
    case Relation::le: return x <= c - m;
    case Relation::gt:
    case Relation::ge: return x >= c + m;
  }
  return false;
}

bool exact(const BoundAtom& a, Real x) {
  const Real c = a.constant;
  switch (a.rel) {
    case Relation::lt: return x < c;
    case Relation::le: return x <= c;
    case Relation::gt: return x > c;
    case Relation::ge: return x >= c;
  }
  return false;
}

bool robust_in(const Interval& iv, Real x) {
  if (iv.is_empty()) return false;
  if (iv.lo() > -kInf && !(x >= static_cast<Real>(iv.lo()) + margin_for(iv.lo()))) return false;
  if (iv.hi() < kInf && !(x <= static_cast<Real>(iv.hi()) - margin_for(iv.hi()))) return false;
  return true;
}

// Solves `eq` for `u` given the other values; false if no real solution.
bool solve_for(const Equation& eq, VarId u, std::vector<Real>& val) {
  auto at = [&](VarId v) { return val[index(v)]; };
  Real r = 0;
  const bool ok = std::visit(
      detail::overloaded{
          [&](const SigmoidEq& e) {
            if (u == e.y) {
              r = 1.0L / (1.0L + std::exp(-at(e.x)));
              return true;
            }
            const Real y = at(e.y);
            if (!(y > 0 && y < 1)) return false;
            r = std::log(y) - std::log1p(-y);
            return true;
          },
          [&](const ExpEq& e) {
            if (u == e.y) {
              r = std::exp(at(e.x));
              return true;
            }
            const Real y = at(e.y);
            if (!(y > 0)) return false;
            r = std::log(y);
            return true;
          },
          [&](const NegEq& e) {
            r = -(u == e.y ? at(e.x) : at(e.y));
            return true;
          },
          [&](const ProductEq& e) {
            if (u == e.y) {
              r = at(e.x1) * at(e.x2);
              return true;
            }
            const Real other = u == e.x1 ? at(e.x2) : at(e.x1);
            if (other == 0) return false;
            r = at(e.y) / other;
            return true;
          },
          [&](const AffineSumEq& e) {
            Real rest = e.constant;
            Real coeff = 0;
            for (const auto& t : e.terms) {
              if (t.var == u)
                coeff = t.coeff;
              else
                rest += t.coeff * at(t.var);
            }
            if (u == e.y) {
              r = rest;
            } else {
              r = (at(e.y) - rest) / coeff;
            }
            return true;
          },
      },
      eq);
  if (!ok || !std::isfinite(r)) return false;
  val[index(u)] = r;
  return true;
}

Real residual(const Equation& eq, const std::vector<Real>& val) {
  auto at = [&](VarId v) { return val[index(v)]; };
  return std::visit(detail::overloaded{
                        [&](const SigmoidEq& e) { return at(e.y) - 1.0L / (1.0L + std::exp(-at(e.x))); },
                        [&](const ExpEq& e) { return at(e.y) - std::exp(at(e.x)); },
                        [&](const NegEq& e) { return at(e.y) + at(e.x); },
                        [&](const ProductEq& e) { return at(e.y) - at(e.x1) * at(e.x2); },
                        [&](const AffineSumEq& e) {
                          Real s = e.constant;
                          for (const auto& t : e.terms) s += t.coeff * at(t.var);
                          return at(e.y) - s;
                        },
                    },
                    eq);
}

}  // namespace

std::optional<std::vector<double>> brute_force_oracle(const ConstraintSystem& sys, std::size_t points_per_var) {
  if (points_per_var == 0) throw OracleError("need at least one grid point per variable");
  const std::size_t n = sys.num_vars();
  const auto& eqs = sys.equations();

  const EvaluationOrder order = evaluation_order(sys);
  if (!order.feedforward) throw OracleError("equations are not feedforward");
  const std::vector<VarId>& free_vars = order.free;
  const auto& schedule = order.steps;
  const auto& checks = order.checks;
  std::vector<bool> is_free(n, false);
  for (VarId v : free_vars) is_free[index(v)] = true;
  if (free_vars.size() > kMaxFree)
    throw OracleError("too many free variables (" + std::to_string(free_vars.size()) + ")");

  // Grid axes: initial interval narrowed by unit bounds, as a closed range.
  std::vector<std::vector<double>> axes;
  for (VarId v : free_vars) {
    Interval region = sys.var(v).initial;
    for (const auto& b : sys.bounds())
      if (b.var == v) region = intersect(region, atom_region(b));
    if (region.is_empty()) return std::nullopt;
    if (!region.is_bounded()) throw OracleError("free variable '" + sys.var(v).name + "' is unbounded");
    std::vector<double> axis;
    if (points_per_var == 1) {
      axis.push_back(region.lo() + (region.hi() - region.lo()) / 2);
    } else {
      for (std::size_t k = 0; k < points_per_var; ++k)
        axis.push_back(region.lo() + (region.hi() - region.lo()) * (static_cast<double>(k) /
                                                                    static_cast<double>(points_per_var - 1)));
    }
    axes.push_back(std::move(axis));
  }

  std::vector<Real> val(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i)
    if (sys.variables()[i].initial.is_point() && !is_free[i]) val[i] = sys.variables()[i].initial.lo();

  auto holds = [&](const BoundAtom& a) {
    return is_free[index(a.var)] ? exact(a, val[index(a.var)]) : robust(a, val[index(a.var)]);
  };

  auto try_point = [&]() -> bool {
    for (VarId v : free_vars)
      if (!sys.var(v).initial.contains(static_cast<double>(val[index(v)]))) return false;
    for (const auto& s : schedule)
      if (!solve_for(eqs[s.equation], s.unknown, val)) return false;
    for (std::size_t i : checks) {
      const Real r = residual(eqs[i], val);
      if (!(std::fabs(r) <= 1e-12L)) return false;
    }
    for (const auto& s : schedule) {
      const Variable& var = sys.var(s.unknown);
      if (!var.auxiliary && !robust_in(var.initial, val[index(s.unknown)])) return false;
    }
    for (const auto& b : sys.bounds())
      if (!holds(b)) return false;
    for (const auto& c : sys.clauses()) {
      bool any = false;
      for (const auto& lit : c.literals) any = any || holds(lit.effective());
      if (!any) return false;
    }
    return true;
  };

  std::vector<std::size_t> idx(free_vars.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < free_vars.size(); ++k) val[index(free_vars[k])] = axes[k][idx[k]];
    if (try_point()) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(val[i]);
      return out;
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == axes[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return std::nullopt;
}

}  // namespace nnicp
