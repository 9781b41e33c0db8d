#include "nnicp/lowering.hpp"

#include <algorithm>

#include "nnicp/approx.hpp"

namespace nnicp {

void SigmoidOptions::validate() const {
  // sigmoid_box_clauses performs the full check; run it on dummy ids.
  (void)sigmoid_box_clauses(approx_width, approx_lo, approx_hi, var_id(0), var_id(1));
}

void encode_sigmoid(ConstraintSystem& sys, VarId x, VarId z, const SigmoidOptions& opts) {
  switch (opts.encoding) {
    case SigmoidEncoding::dedicated:
      sys.add_equation(SigmoidEq{z, x});
      return;
    case SigmoidEncoding::compositional: {
      // z = 1 / (1 + exp(-x))  as  1 = z * (1 + exp(-x))
      const VarId w = sys.add_fresh("w", Interval::entire());
      const VarId u = sys.add_fresh("u", Interval::make(0.0, true, kInf, true));
      const VarId t = sys.add_fresh("t", Interval::entire());
      const VarId one = sys.add_fresh("k", Interval::point(1.0));
      sys.add_equation(NegEq{w, x});
      sys.add_equation(ExpEq{u, w});
      sys.add_equation(AffineSumEq{t, {{1.0, u}}, 1.0});
      sys.add_equation(ProductEq{one, z, t});
      return;
    }
    case SigmoidEncoding::approximating:
      for (auto& c : sigmoid_box_clauses(opts.approx_width, opts.approx_lo, opts.approx_hi, x, z))
        sys.add_clause(std::move(c));
      return;
  }
}

namespace {

struct LinearForm {
  std::vector<AffineTerm> terms;
  double constant = 0.0;

  void add_term(double c, VarId v) {
    auto it = std::find_if(terms.begin(), terms.end(), [v](const AffineTerm& t) { return t.var == v; });
    if (it == terms.end()) {
      terms.push_back({c, v});
    } else {
      it->coeff += c;
    }
  }
  void add(const LinearForm& other, double sign) {
    for (const auto& t : other.terms) add_term(sign * t.coeff, t.var);
    constant += sign * other.constant;
  }
  void scale_by(double c) {
    for (auto& t : terms) t.coeff *= c;
    constant *= c;
  }
  void drop_zeros() {
    std::erase_if(terms, [](const AffineTerm& t) { return t.coeff == 0.0; });
  }
  [[nodiscard]] bool is_constant() const { return terms.empty(); }
};

class Lowerer {
 public:
  Lowerer(ConstraintSystem& sys, const SigmoidOptions& opts) : sys_(sys), opts_(opts) {}

  LinearForm lower(const Expr& e) {
    switch (e.op) {
      case Expr::Op::constant: {
        LinearForm f;
        f.constant = e.value;
        return f;
      }
      case Expr::Op::variable: {
        LinearForm f;
        f.add_term(1.0, resolve(e.name));
        return f;
      }
      case Expr::Op::add:
      case Expr::Op::sub: {
        LinearForm f = lower(e.args.at(0));
        f.add(lower(e.args.at(1)), e.op == Expr::Op::add ? 1.0 : -1.0);
        f.drop_zeros();
        return f;
      }
      case Expr::Op::neg: {
        LinearForm f = lower(e.args.at(0));
        f.scale_by(-1.0);
        return f;
      }
      case Expr::Op::mul: {
        LinearForm a = lower(e.args.at(0));
        LinearForm b = lower(e.args.at(1));
        if (a.is_constant()) {
          b.scale_by(a.constant);
          b.drop_zeros();
          return b;
        }
        if (b.is_constant()) {
          a.scale_by(b.constant);
          a.drop_zeros();
          return a;
        }
        const VarId p = sys_.add_fresh("p", Interval::entire());
        sys_.add_equation(ProductEq{p, materialize(a), materialize(b)});
        return single(p);
      }
      case Expr::Op::exp: {
        const VarId x = materialize(lower(e.args.at(0)));
        const VarId y = sys_.add_fresh("e", Interval::make(0.0, true, kInf, true));
        sys_.add_equation(ExpEq{y, x});
        return single(y);
      }
      case Expr::Op::sigmoid: {
        const VarId x = materialize(lower(e.args.at(0)));
        const VarId z = sys_.add_fresh("s", sigmoid_range());
        encode_sigmoid(sys_, x, z, opts_);
        return single(z);
      }
    }
    throw LoweringError("unsupported operator");
  }

  VarId materialize(const LinearForm& f) {
    if (f.is_constant()) return sys_.add_fresh("k", Interval::point(f.constant));
    if (f.terms.size() == 1 && f.constant == 0.0) {
      if (f.terms[0].coeff == 1.0) return f.terms[0].var;
      if (f.terms[0].coeff == -1.0) {
        const VarId w = sys_.add_fresh("n", Interval::entire());
        sys_.add_equation(NegEq{w, f.terms[0].var});
        return w;
      }
    }
    const VarId s = sys_.add_fresh("a", Interval::entire());
    sys_.add_equation(AffineSumEq{s, f.terms, f.constant});
    return s;
  }

  void define(VarId y, const Expr& e) {
    LinearForm f;
    switch (e.op) {
      case Expr::Op::neg:
        if (e.args.at(0).op == Expr::Op::variable) {
          sys_.add_equation(NegEq{y, resolve(e.args[0].name)});
          return;
        }
        f = lower(e);
        break;
      case Expr::Op::exp:
        sys_.add_equation(ExpEq{y, materialize(lower(e.args.at(0)))});
        return;
      case Expr::Op::sigmoid:
        encode_sigmoid(sys_, materialize(lower(e.args.at(0))), y, opts_);
        return;
      case Expr::Op::mul: {
        LinearForm a = lower(e.args.at(0));
        LinearForm b = lower(e.args.at(1));
        if (!a.is_constant() && !b.is_constant()) {
          sys_.add_equation(ProductEq{y, materialize(a), materialize(b)});
          return;
        }
        if (a.is_constant()) {
          b.scale_by(a.constant);
          f = std::move(b);
        } else {
          a.scale_by(b.constant);
          f = std::move(a);
        }
        break;
      }
      default:
        f = lower(e);
        break;
    }
    f.drop_zeros();
    if (f.is_constant()) {
      const VarId k = sys_.add_fresh("k", Interval::point(f.constant));
      sys_.add_equation(AffineSumEq{y, {{1.0, k}}, 0.0});
      return;
    }
    sys_.add_equation(AffineSumEq{y, f.terms, f.constant});
  }

 private:
  VarId resolve(const std::string& name) const {
    if (auto v = sys_.find(name)) return *v;
    throw LoweringError("undeclared variable '" + name + "'");
  }

  static LinearForm single(VarId v) {
    LinearForm f;
    f.add_term(1.0, v);
    return f;
  }

  [[nodiscard]] Interval sigmoid_range() const {
    if (opts_.encoding == SigmoidEncoding::approximating) return Interval::closed(0.0, 1.0);
    return Interval::make(0.0, true, 1.0, true);
  }

  ConstraintSystem& sys_;
  const SigmoidOptions& opts_;
};

}  // namespace

VarId lower_expression(ConstraintSystem& sys, const Expr& expr, const SigmoidOptions& opts) {
  Lowerer lowerer(sys, opts);
  return lowerer.materialize(lowerer.lower(expr));
}

void define_variable(ConstraintSystem& sys, VarId y, const Expr& expr, const SigmoidOptions& opts) {
  Lowerer(sys, opts).define(y, expr);
}

}  // namespace nnicp
