#include "gep/milp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace gep::milp {

int Model::add_variable(const std::string& name, VarKind kind, double lower, double upper) {
    if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
    if (!name_set_.insert(name).second)
        throw std::invalid_argument("duplicate variable name: " + name);
    if (!(lower <= upper)) throw std::invalid_argument("variable " + name + ": lower > upper");
    if (kind == VarKind::Binary && (lower < 0.0 || upper > 1.0))
        throw std::invalid_argument("binary variable " + name + ": bounds outside [0,1]");
    Variable v;
    v.id = static_cast<int>(variables_.size());
    v.name = name;
    v.kind = kind;
    v.lower = lower;
    v.upper = upper;
    variables_.push_back(std::move(v));
    objective_.push_back(0.0);
    return variables_.back().id;
}

int Model::add_constraint(const std::string& name, std::vector<std::pair<int, double>> terms,
                          Sense sense, double rhs) {
    std::unordered_set<int> seen;
    for (const auto& [id, coeff] : terms) {
        if (id < 0 || id >= static_cast<int>(variables_.size()))
            throw std::invalid_argument("constraint " + name + ": unknown variable id " +
                                        std::to_string(id));
        if (!seen.insert(id).second)
            throw std::invalid_argument("constraint " + name + ": repeated variable id " +
                                        std::to_string(id));
        if (!std::isfinite(coeff))
            throw std::invalid_argument("constraint " + name + ": non-finite coefficient");
    }
    Constraint c;
    c.name = name;
    c.terms = std::move(terms);
    c.sense = sense;
    c.rhs = rhs;
    constraints_.push_back(std::move(c));
    return static_cast<int>(constraints_.size()) - 1;
}

void Model::add_objective_term(int var, double coeff) {
    if (var < 0 || var >= static_cast<int>(variables_.size()))
        throw std::invalid_argument("objective term references unknown variable");
    objective_[var] += coeff;
}

void Model::set_bounds(int var, double lower, double upper) {
    if (!(lower <= upper)) throw std::invalid_argument("set_bounds: lower > upper");
    variables_[var].lower = lower;
    variables_[var].upper = upper;
}

std::size_t Model::num_binaries() const {
    std::size_t n = 0;
    for (const auto& v : variables_)
        if (v.kind == VarKind::Binary) ++n;
    return n;
}

Evaluation Model::evaluate(const std::vector<double>& values) const {
    if (values.size() != variables_.size())
        throw std::invalid_argument("evaluate: values must cover every variable");
    Evaluation ev;
    ev.objective = objective_constant_;
    for (std::size_t j = 0; j < variables_.size(); ++j)
        ev.objective += objective_[j] * values[j];
    for (const auto& v : variables_) {
        if (values[v.id] < v.lower) ev.max_violation = std::max(ev.max_violation, v.lower - values[v.id]);
        if (values[v.id] > v.upper) ev.max_violation = std::max(ev.max_violation, values[v.id] - v.upper);
    }
    for (const auto& c : constraints_) {
        double lhs = 0.0;
        for (const auto& [id, coeff] : c.terms) lhs += coeff * values[id];
        double viol = 0.0;
        switch (c.sense) {
            case Sense::LessEqual: viol = lhs - c.rhs; break;
            case Sense::GreaterEqual: viol = c.rhs - lhs; break;
            case Sense::Equal: viol = std::abs(lhs - c.rhs); break;
        }
        ev.max_violation = std::max(ev.max_violation, viol);
    }
    return ev;
}

}  // namespace gep::milp
