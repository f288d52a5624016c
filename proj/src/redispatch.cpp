#include "gep/redispatch.hpp"

#include <cmath>
#include <stdexcept>

namespace gep::redispatch {

using expansion::Role;

void fix_binaries(milp::Model& model, const milp::Solution& reference, double integrality_tol) {
    if (reference.values.size() != model.num_variables())
        throw std::invalid_argument("fix_binaries: solution does not cover the model");
    for (const auto& v : model.variables()) {
        if (v.kind != milp::VarKind::Binary) continue;
        const double x = reference.values[v.id];
        const double r = std::round(x);
        if (std::abs(x - r) > integrality_tol || (r != 0.0 && r != 1.0))
            throw std::invalid_argument("fix_binaries: " + v.name + " = " + std::to_string(x) +
                                        " is not integral");
        model.set_bounds(v.id, r, r);
        model.set_kind(v.id, milp::VarKind::Continuous);
    }
}

void add_water_incentive(milp::Model& model, const expansion::VariableRegistry& registry,
                         const domain::PowerSystem& system, const timegrid::TimeGrid& grid,
                         double epsilon) {
    if (epsilon == 0.0) return;
    auto reward = [&](const domain::StorageUnit& u) {
        if (!domain::is_hydro(u.kind)) return;
        for (int t = 0; t < grid.simulated_hours; ++t)
            model.add_objective_term(registry.at(Role::Level, u.id, t), -epsilon);
    };
    for (const auto& u : system.storage_units) reward(u);
    for (const auto& c : system.candidates)
        if (c.kind == domain::CandidateKind::Storage) reward(c.storage);
}

PricingRun price_redispatch(const milp::Model& model,
                            const expansion::VariableRegistry& registry,
                            const domain::PowerSystem& system,
                            const domain::ScenarioConfig& config,
                            const timegrid::TimeGrid& grid, const milp::Solution& reference,
                            const solver::SolveOptions& options) {
    milp::Model fixed = model;
    fix_binaries(fixed, reference, options.integrality_tol);
    add_water_incentive(fixed, registry, system, grid, config.water_incentive);

    PricingRun run;
    run.lp = solver::solve_lp(fixed, options);
    if (run.lp.status != milp::SolveStatus::Optimal || !run.lp.has_duals) return run;

    for (const auto& b : system.buses) {
        domain::Series prices(grid.simulated_hours);
        for (int t = 0; t < grid.simulated_hours; ++t)
            prices[t] = run.lp.duals[registry.balance_row(b.id, t)] / grid.cost_scale;
        run.nodal_prices.emplace(b.id, std::move(prices));
    }
    return run;
}

}  // namespace gep::redispatch
