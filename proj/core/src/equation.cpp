#include "nnicp/equation.hpp"

#include "nnicp/detail/overloaded.hpp"

namespace nnicp {

using detail::overloaded;

VarId output_of(const Equation& eq) {
  return std::visit([](const auto& e) { return e.y; }, eq);
}

std::vector<VarId> inputs_of(const Equation& eq) {
  return std::visit(overloaded{
                        [](const SigmoidEq& e) { return std::vector<VarId>{e.x}; },
                        [](const ExpEq& e) { return std::vector<VarId>{e.x}; },
                        [](const NegEq& e) { return std::vector<VarId>{e.x}; },
                        [](const ProductEq& e) { return std::vector<VarId>{e.x1, e.x2}; },
                        [](const AffineSumEq& e) {
                          std::vector<VarId> out;
                          out.reserve(e.terms.size());
                          for (const auto& t : e.terms) out.push_back(t.var);
                          return out;
                        },
                    },
                    eq);
}

const char* kind_name(const Equation& eq) {
  return std::visit(overloaded{
                        [](const SigmoidEq&) { return "sigmoid"; },
                        [](const ExpEq&) { return "exp"; },
                        [](const NegEq&) { return "neg"; },
                        [](const ProductEq&) { return "product"; },
                        [](const AffineSumEq&) { return "affine"; },
                    },
                    eq);
}

}  // namespace nnicp
