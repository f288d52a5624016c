#ifndef GEP_REDISPATCH_HPP
#define GEP_REDISPATCH_HPP

#include <unordered_map>

#include "gep/expansion.hpp"
#include "gep/solver.hpp"

namespace gep::redispatch {

// Pins every binary to its value in `reference` (bounds [v,v], kind switched
// to continuous so the follow-up solve is a pure LP). Throws if any binary
// sits further than `integrality_tol` from 0/1.
void fix_binaries(milp::Model& model, const milp::Solution& reference,
                  double integrality_tol = 1e-6);

// Tiny reward on hydro reservoir levels so the LP does not dump water that
// the commitment stage left unused. epsilon must stay far below the real
// costs; validate_system enforces that for the configured value.
void add_water_incentive(milp::Model& model, const expansion::VariableRegistry& registry,
                         const domain::PowerSystem& system, const timegrid::TimeGrid& grid,
                         double epsilon);

struct PricingRun {
    milp::Solution lp;  // re-dispatch LP solution (with duals when optimal)
    // per bus: price per simulated hour, currency/MWh in physical-year terms
    std::unordered_map<std::string, domain::Series> nodal_prices;
};

// Fix-and-redispatch pricing: copy the investment/commitment model, freeze
// its binaries at the MILP optimum, add the water incentive, re-solve as an
// LP and read nodal prices off the balance-row duals (divided by the time
// grid's cost scale so compressed runs still price single physical hours).
PricingRun price_redispatch(const milp::Model& model,
                            const expansion::VariableRegistry& registry,
                            const domain::PowerSystem& system,
                            const domain::ScenarioConfig& config,
                            const timegrid::TimeGrid& grid, const milp::Solution& reference,
                            const solver::SolveOptions& options = {});

}  // namespace gep::redispatch

#endif
