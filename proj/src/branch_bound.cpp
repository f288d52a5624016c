#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gep/solver.hpp"

namespace gep::solver {

namespace {

using milp::Model;
using milp::Solution;
using milp::SolveStatus;
using milp::VarKind;

std::vector<int> free_binaries(const Model& model) {
    std::vector<int> ids;
    for (const auto& v : model.variables())
        if (v.kind == VarKind::Binary && v.lower < v.upper) ids.push_back(v.id);
    return ids;
}

struct Node {
    double bound;
    long id;
    std::vector<std::pair<int, int>> fixes;  // (variable id, 0/1)
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.id > b.id;
    }
};

}  // namespace

Solution solve_milp(const Model& model, const SolveOptions& options) {
    const auto binaries = free_binaries(model);
    if (model.num_binaries() == 0) return solve_lp(model, options);

    Model relaxed = model;
    for (const auto& v : model.variables())
        if (v.kind == VarKind::Binary) relaxed.set_kind(v.id, VarKind::Continuous);

    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        if (!options.time_limit_seconds) return false;
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
        return el.count() > *options.time_limit_seconds;
    };

    Solution incumbent;
    incumbent.status = SolveStatus::Infeasible;
    double incumbent_obj = milp::kInf;
    bool have_incumbent = false;
    bool saw_limit = false;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{-milp::kInf, 0, {}});
    long next_id = 1;
    long solved_nodes = 0;

    while (!open.empty()) {
        Node node = open.top();
        open.pop();

        const double gap_abs = options.mip_gap * std::max(1.0, std::abs(incumbent_obj));
        if (have_incumbent && node.bound >= incumbent_obj - gap_abs) continue;
        if ((options.node_limit && solved_nodes >= *options.node_limit) || out_of_time()) {
            saw_limit = true;
            break;
        }

        for (const auto& [id, val] : node.fixes) relaxed.set_bounds(id, val, val);
        Solution lp = solve_lp(relaxed, options);
        for (const auto& [id, val] : node.fixes)
            relaxed.set_bounds(id, model.variables()[id].lower, model.variables()[id].upper);
        ++solved_nodes;

        if (lp.status == SolveStatus::Infeasible) continue;
        if (lp.status == SolveStatus::Unbounded) {
            // relaxation unbounded at the root: pass the verdict through
            Solution sol;
            sol.status = SolveStatus::Unbounded;
            return sol;
        }
        if (lp.status != SolveStatus::Optimal) {
            Solution sol;
            sol.status = lp.status;
            return sol;
        }
        if (have_incumbent && lp.objective >= incumbent_obj - gap_abs) continue;

        // most fractional binary, lowest id on ties
        int branch_var = -1;
        double most_frac = options.integrality_tol;
        for (int id : binaries) {
            const double frac = std::abs(lp.values[id] - std::round(lp.values[id]));
            if (frac > most_frac + 1e-12) {
                most_frac = frac;
                branch_var = id;
            }
        }
        if (branch_var < 0) {
            // integral within tolerance
            if (!have_incumbent || lp.objective < incumbent_obj) {
                incumbent = lp;
                incumbent.has_duals = false;
                incumbent.duals.clear();
                for (int id : binaries) incumbent.values[id] = std::round(incumbent.values[id]);
                incumbent_obj = lp.objective;
                have_incumbent = true;
            }
            continue;
        }
        for (int val : {0, 1}) {
            Node child;
            child.bound = lp.objective;
            child.id = next_id++;
            child.fixes = node.fixes;
            child.fixes.emplace_back(branch_var, val);
            open.push(std::move(child));
        }
    }

    if (saw_limit) {
        incumbent.status = SolveStatus::LimitReached;
        incumbent.has_incumbent = have_incumbent;
        if (have_incumbent) incumbent.objective = incumbent_obj;
        return incumbent;
    }
    if (have_incumbent) {
        incumbent.status = SolveStatus::Optimal;
        incumbent.objective = incumbent_obj;
        incumbent.has_incumbent = true;
    }
    return incumbent;
}

Solution enumerate_oracle(const Model& model, const SolveOptions& options) {
    const auto binaries = free_binaries(model);
    if (binaries.size() > 20)
        throw std::invalid_argument("enumerate_oracle: more than 20 free binaries");

    Model relaxed = model;
    for (const auto& v : model.variables())
        if (v.kind == VarKind::Binary) relaxed.set_kind(v.id, VarKind::Continuous);

    Solution best;
    best.status = SolveStatus::Infeasible;
    double best_obj = milp::kInf;
    bool have_best = false;
    bool saw_unbounded = false;
    bool saw_failure = false;

    const unsigned long count = 1ul << binaries.size();
    for (unsigned long mask = 0; mask < count; ++mask) {
        // lexicographic over ascending variable id: lowest id most significant
        for (std::size_t k = 0; k < binaries.size(); ++k) {
            const int val = (mask >> (binaries.size() - 1 - k)) & 1ul;
            relaxed.set_bounds(binaries[k], val, val);
        }
        Solution lp = solve_lp(relaxed, options);
        if (lp.status == SolveStatus::Optimal) {
            if (!have_best || lp.objective < best_obj - 1e-12) {
                best = lp;
                best.has_duals = false;
                best.duals.clear();
                best_obj = lp.objective;
                have_best = true;
            }
        } else if (lp.status == SolveStatus::Unbounded) {
            saw_unbounded = true;
        } else if (lp.status != SolveStatus::Infeasible) {
            saw_failure = true;
        }
    }
    for (int id : binaries)
        relaxed.set_bounds(id, model.variables()[id].lower, model.variables()[id].upper);

    if (have_best) {
        best.status = SolveStatus::Optimal;
        best.has_incumbent = true;
        return best;
    }
    Solution sol;
    if (saw_unbounded) sol.status = SolveStatus::Unbounded;
    else if (saw_failure) sol.status = SolveStatus::NumericalFailure;
    else sol.status = SolveStatus::Infeasible;
    return sol;
}

}  // namespace gep::solver
