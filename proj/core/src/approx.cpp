#include "nnicp/approx.hpp"

#include <stdexcept>

#include "nnicp/sigmoid.hpp"

namespace nnicp {
namespace {

Literal lit(VarId v, Relation rel, double c, bool positive = true) {
  return {{v, rel, c}, positive};
}

}  // namespace

std::vector<Clause> sigmoid_box_clauses(double width, double lo, double hi, VarId x, VarId y) {
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("cell width must be positive");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("approximation range must be a finite, nonempty [lo, hi)");
  const double cells = (hi - lo) / width;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::fabs(cells - rounded) > 1e-9 * rounded)
    throw std::invalid_argument("approximation range is not an integral number of cells");
  const auto n = static_cast<std::size_t>(rounded);

  std::vector<Clause> out;
  out.reserve(2 * (n + 2));

  // x < lo  ->  0 <= y < sig(lo)
  out.push_back({{lit(x, Relation::lt, lo, false), lit(y, Relation::ge, 0.0)}});
  out.push_back({{lit(x, Relation::lt, lo, false), lit(y, Relation::lt, sigma_up(lo))}});

  for (std::size_t k = 0; k < n; ++k) {
    const double a = lo + static_cast<double>(k) * width;
    const double b = (k + 1 == n) ? hi : lo + static_cast<double>(k + 1) * width;
    const Literal not_above_a = lit(x, Relation::ge, a, false);
    const Literal not_below_b = lit(x, Relation::lt, b, false);
    out.push_back({{not_above_a, not_below_b, lit(y, Relation::ge, sigma_down(a))}});
    out.push_back({{not_above_a, not_below_b, lit(y, Relation::lt, sigma_up(b))}});
  }

  // x >= hi  ->  sig(hi) <= y <= 1
  out.push_back({{lit(x, Relation::ge, hi, false), lit(y, Relation::ge, sigma_down(hi))}});
  out.push_back({{lit(x, Relation::ge, hi, false), lit(y, Relation::le, 1.0)}});
  return out;
}

}  // namespace nnicp
