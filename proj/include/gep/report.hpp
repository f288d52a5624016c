#ifndef GEP_REPORT_HPP
#define GEP_REPORT_HPP

#include <array>
#include <string>
#include <vector>

#include "gep/io.hpp"
#include "gep/redispatch.hpp"

namespace gep::report {

// 0-based calendar month of a physical hour (8760-hour year).
int month_of_physical_hour(int hour);

// Full pipeline for one scenario: build the time grid, assemble the model,
// solve the MILP, then fix-and-redispatch for nodal prices.
struct ScenarioRun {
    timegrid::TimeGrid grid;
    expansion::Assembled assembled;
    milp::Solution mip;
    redispatch::PricingRun pricing;
};

ScenarioRun run_scenario(const io::Scenario& scenario, const solver::SolveOptions& options = {});

// Monthly energy per (zone, technology class), MWh attributed to the
// calendar month of each simulated hour and weighted by the grid's cost
// scale so a compressed run still reports year-scale energies. Storage rows
// carry net injection (discharge - charge); "load_shed" counts unserved
// energy.
struct MonthlyRow {
    std::string zone;
    std::string technology;
    std::array<double, 12> mwh{};
};
std::vector<MonthlyRow> aggregate_monthly(const domain::PowerSystem& system,
                                          const timegrid::TimeGrid& grid,
                                          const expansion::VariableRegistry& registry,
                                          const std::vector<double>& values);

// Reservoir level at the last simulated hour of each month, rescaled back to
// physical bounds (daily pumped storages run at doubled amplitude on the
// compressed grid).
struct StorageLevelRow {
    std::string unit;
    std::array<double, 12> end_level_mwh{};
};
std::vector<StorageLevelRow> storage_trajectory(const domain::PowerSystem& system,
                                                const timegrid::TimeGrid& grid,
                                                const expansion::VariableRegistry& registry,
                                                const std::vector<double>& values);

// Net monthly energy crossing each zone border, positive from the
// lexicographically smaller zone to the larger one.
struct ExchangeRow {
    std::string from_zone;
    std::string to_zone;
    std::array<double, 12> mwh{};
};
std::vector<ExchangeRow> exchange_by_border(const domain::PowerSystem& system,
                                            const timegrid::TimeGrid& grid,
                                            const expansion::VariableRegistry& registry,
                                            const std::vector<double>& values);

struct PriceRow {
    std::string bus;
    double load_weighted = 0.0;  // currency/MWh
    double simple = 0.0;
};
std::vector<PriceRow> price_summary(const domain::PowerSystem& system,
                                    const timegrid::TimeGrid& grid,
                                    const redispatch::PricingRun& pricing);

// Writes investments.csv, monthly_energy.csv, storage_levels.csv,
// nodal_prices.csv, exchange.csv and summary.json into `dir`. Deterministic:
// two runs of the same scenario produce byte-identical files.
void save_results(const std::string& dir, const io::Scenario& scenario, const ScenarioRun& run);

}  // namespace gep::report

#endif
