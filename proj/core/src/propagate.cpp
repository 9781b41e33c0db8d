#include "nnicp/propagate.hpp"

#include <algorithm>

#include "nnicp/detail/overloaded.hpp"
#include "nnicp/sigmoid.hpp"

namespace nnicp {
namespace {

// Local view over the box that records contractions in order and lets
// later steps of the same equation see earlier ones.
class Scratch {
 public:
  Scratch(const Box& box, Cause cause) : box_(box), cause_(cause) {}

  [[nodiscard]] Interval get(VarId v) const {
    for (auto it = deltas_.rbegin(); it != deltas_.rend(); ++it) {
      if (it->var == v) return it->new_value;
    }
    return box_[v];
  }

  // Returns false once a variable became EMPTY.
  bool narrow(VarId v, const Interval& candidate) {
    const Interval old = get(v);
    const Interval next = intersect(old, candidate);
    if (next == old) return true;
    deltas_.push_back({v, old, next, cause_});
    return !next.is_empty();
  }

  std::vector<PropagationDelta> take() && { return std::move(deltas_); }

 private:
  const Box& box_;
  Cause cause_;
  std::vector<PropagationDelta> deltas_;
};

void run(const SigmoidEq& e, Scratch& s) {
  if (!s.narrow(e.y, sigmoid_image(s.get(e.x)))) return;
  s.narrow(e.x, sigmoid_preimage(s.get(e.y)));
}

void run(const ExpEq& e, Scratch& s) {
  const Interval x = s.get(e.x);
  const Interval image = Interval::make(exp_down(x.lo()), x.lo_strict() || x.lo() == -kInf,
                                        exp_up(x.hi()), x.hi_strict());
  if (!s.narrow(e.y, image)) return;
  const Interval y = s.get(e.y);
  const Interval pre = Interval::make(log_down(y.lo()), y.lo_strict(), log_up(y.hi()), y.hi_strict());
  s.narrow(e.x, pre);
}

void run(const NegEq& e, Scratch& s) {
  if (!s.narrow(e.y, negate(s.get(e.x)))) return;
  s.narrow(e.x, negate(s.get(e.y)));
}

void run(const ProductEq& e, Scratch& s) {
  if (!s.narrow(e.y, multiply(s.get(e.x1), s.get(e.x2)))) return;
  if (!s.narrow(e.x1, divide(s.get(e.y), s.get(e.x2)))) return;
  s.narrow(e.x2, divide(s.get(e.y), s.get(e.x1)));
}

// Sum of term intervals with the infinite contributions counted apart,
// so that the sum over all terms but one can be recovered soundly.
struct SplitSum {
  double lo_finite = 0.0;  // rounded down
  double hi_finite = 0.0;  // rounded up
  std::size_t lo_inf = 0;
  std::size_t hi_inf = 0;
};

void run(const AffineSumEq& e, Scratch& s) {
  const std::size_t n = e.terms.size();
  std::vector<Interval> terms;
  terms.reserve(n);
  SplitSum sum;
  for (const auto& t : e.terms) {
    Interval ti = scale(t.coeff, s.get(t.var));
    if (ti.lo() == -kInf) {
      ++sum.lo_inf;
    } else {
      sum.lo_finite = add_down(sum.lo_finite, ti.lo());
    }
    if (ti.hi() == kInf) {
      ++sum.hi_inf;
    } else {
      sum.hi_finite = add_up(sum.hi_finite, ti.hi());
    }
    terms.push_back(ti);
  }
  const double fwd_lo = sum.lo_inf > 0 ? -kInf : add_down(sum.lo_finite, e.constant);
  const double fwd_hi = sum.hi_inf > 0 ? kInf : add_up(sum.hi_finite, e.constant);
  if (!s.narrow(e.y, Interval::closed(fwd_lo, fwd_hi))) return;

  const Interval y = s.get(e.y);
  const double target_lo = sub_down(y.lo(), e.constant);
  const double target_hi = sub_up(y.hi(), e.constant);
  for (std::size_t j = 0; j < n; ++j) {
    const Interval& tj = terms[j];
    const bool j_lo_inf = tj.lo() == -kInf;
    const bool j_hi_inf = tj.hi() == kInf;
    // Bounds on the sum of all terms except j.
    const double rest_lo = (sum.lo_inf - (j_lo_inf ? 1 : 0)) > 0
                               ? -kInf
                               : sub_down(sum.lo_finite, j_lo_inf ? 0.0 : tj.lo());
    const double rest_hi = (sum.hi_inf - (j_hi_inf ? 1 : 0)) > 0
                               ? kInf
                               : sub_up(sum.hi_finite, j_hi_inf ? 0.0 : tj.hi());
    const double lo = (target_lo == -kInf || rest_hi == kInf) ? -kInf : sub_down(target_lo, rest_hi);
    const double hi = (target_hi == kInf || rest_lo == -kInf) ? kInf : sub_up(target_hi, rest_lo);
    const double c = e.terms[j].coeff;
    const Interval bound = c > 0 ? Interval::closed(div_down(lo, c), div_up(hi, c))
                                 : Interval::closed(div_down(hi, c), div_up(lo, c));
    if (!s.narrow(e.terms[j].var, bound)) return;
  }
}

}  // namespace

std::vector<PropagationDelta> propagate(const Equation& eq, const Box& box, Cause cause) {
  Scratch scratch(box, cause);
  std::visit([&](const auto& e) { run(e, scratch); }, eq);
  return std::move(scratch).take();
}

}  // namespace nnicp
