#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unram/errors.hpp"
#include "unram/quadforms.hpp"
#include "unram/symbols.hpp"

namespace unram {

/// dim N(Y, a, m) = m dim Y + m - 1.
inline std::int64_t norm_dimension(std::int64_t dim_y, std::int64_t m) { return m * dim_y + m - 1; }

/// The split model of the norm equation N = a: for a split etale algebra of
/// rank m the norm is a product of coordinates, so the model is z_1...z_m - a.
struct NormEquation {
    std::uint32_t multiplicity = 1;          // m, also the degree of the split model
    std::vector<std::int64_t> parameter_exps;  // the monomial a
    std::uint32_t num_vars = 0;
    // construction notes carried through serialization
    std::string base_space = "configuration space of m distinct points on the base variety";
    std::string quotient_note =
        "split cover: dominant degree-m morphism from (Y^m minus diagonals) x E_a, "
        "diagonal symmetric-group action";

    // "z1*z2*z3 - t1^2"
    std::string split_model_string(const std::string& letter = "t", std::int64_t scale = 1) const {
        std::string out;
        for (std::uint32_t i = 1; i <= multiplicity; ++i) {
            if (i > 1) out += "*";
            out += "z" + std::to_string(i);
        }
        SignedMonomial a{1, parameter_exps};
        out += " - " + a.to_string(letter, scale);
        return out;
    }
};

inline NormEquation split_model_equation(const std::vector<std::int64_t>& parameter,
                                         std::uint32_t multiplicity, std::uint32_t num_vars) {
    if (multiplicity < 1) throw input_error("split_model_equation: multiplicity must be >= 1");
    if (parameter.size() != num_vars) throw input_error("split_model_equation: parameter arity mismatch");
    NormEquation eq;
    eq.multiplicity = multiplicity;
    eq.parameter_exps = parameter;
    eq.num_vars = num_vars;
    return eq;
}

struct RostPlanNode {
    std::uint32_t prefix_len = 2;  // length of the symbol prefix this node realizes
    std::string kind;              // "severi_brauer" for the base, "norm" above it
    std::optional<NormEquation> norm;  // present on norm nodes
    std::int64_t dim = 0;
};

/// Recursive construction record for the splitting variety of a symbol:
/// the cyclic-algebra Severi-Brauer variety for the first two slots, then one
/// norm-equation layer N(., a_j, ell) per further slot. Dimensions follow
/// dim_{j+1} = ell dim_j + ell - 1, so the full plan has dim ell^{n-1} - 1.
struct RostPlan {
    MonomialSymbol symbol;
    std::uint32_t ell = 3;
    std::vector<RostPlanNode> nodes;  // root (prefix 2) first
    std::vector<std::string> open_flags;

    std::int64_t dimension() const { return nodes.empty() ? 0 : nodes.back().dim; }
};

inline RostPlan rost_plan(const MonomialSymbol& symbol, std::uint32_t ell) {
    if (symbol.n_slots < 2) throw input_error("rost_plan: symbol length must be >= 2");
    if (!is_prime(ell)) throw input_error("rost_plan: ell is not prime");
    RostPlan plan;
    plan.symbol = symbol;
    plan.ell = ell;

    RostPlanNode base;
    base.prefix_len = 2;
    base.kind = "severi_brauer";
    base.dim = static_cast<std::int64_t>(ell) - 1;
    plan.nodes.push_back(base);

    for (std::uint32_t j = 3; j <= symbol.n_slots; ++j) {
        RostPlanNode node;
        node.prefix_len = j;
        node.kind = "norm";
        node.norm = split_model_equation(symbol.exponents[j - 1], ell, symbol.num_vars);
        node.dim = norm_dimension(plan.nodes.back().dim, ell);
        plan.nodes.push_back(std::move(node));
    }

    plan.open_flags.push_back(
        "finer rationality properties (e.g. retract rationality) of the plan's varieties "
        "are not established by the construction");
    return plan;
}

/// Evaluate the dimension recurrence over the plan nodes and cross-check the
/// closed form ell^{n-1} - 1.
inline std::int64_t plan_dimension(const RostPlan& plan) {
    std::int64_t dim = static_cast<std::int64_t>(plan.ell) - 1;
    for (std::size_t i = 1; i < plan.nodes.size(); ++i) dim = norm_dimension(dim, plan.ell);
    std::int64_t closed = 1;
    for (std::uint32_t i = 0; i + 1 < plan.symbol.n_slots; ++i) closed *= plan.ell;
    closed -= 1;
    if (dim != closed) throw input_error("plan_dimension: recurrence disagrees with closed form");
    return dim;
}

}  // namespace unram
