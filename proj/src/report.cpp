#include "gep/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"

namespace gep::report {

using expansion::Role;
using io::format_number;

namespace {

constexpr int kMonthDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

const char* status_str(milp::SolveStatus s) {
    switch (s) {
        case milp::SolveStatus::Optimal: return "optimal";
        case milp::SolveStatus::Infeasible: return "infeasible";
        case milp::SolveStatus::Unbounded: return "unbounded";
        case milp::SolveStatus::LimitReached: return "limit_reached";
        case milp::SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

// per simulated hour: 0-based calendar month of the physical hour it stands for
std::vector<int> month_map(const timegrid::TimeGrid& grid) {
    std::vector<int> out(grid.simulated_hours);
    for (int t = 0; t < grid.simulated_hours; ++t)
        out[t] = month_of_physical_hour(grid.physical_hour(t));
    return out;
}

std::string zone_of(const domain::PowerSystem& system, const std::string& bus) {
    const auto* b = system.find_bus(bus);
    return b ? b->zone : std::string("?");
}

template <typename Unit, typename Fn>
void for_each_unit(const domain::PowerSystem& system,
                   const std::vector<Unit> domain::PowerSystem::* member,
                   domain::CandidateKind kind, Unit domain::CandidateUnit::* payload, Fn&& fn) {
    for (const auto& u : system.*member) fn(u);
    for (const auto& c : system.candidates)
        if (c.kind == kind) fn(c.*payload);
}

}  // namespace

int month_of_physical_hour(int hour) {
    int day = hour / 24;
    for (int m = 0; m < 12; ++m) {
        if (day < kMonthDays[m]) return m;
        day -= kMonthDays[m];
    }
    return 11;
}

ScenarioRun run_scenario(const io::Scenario& scenario, const solver::SolveOptions& options) {
    ScenarioRun run;
    run.grid = timegrid::build_time_grid(scenario.config.compression);
    run.assembled = expansion::assemble(scenario.system, scenario.config, run.grid);
    run.mip = solver::solve_milp(run.assembled.model, options);
    const bool usable = run.mip.status == milp::SolveStatus::Optimal ||
                        (run.mip.status == milp::SolveStatus::LimitReached &&
                         run.mip.has_incumbent);
    if (usable)
        run.pricing = redispatch::price_redispatch(run.assembled.model, run.assembled.registry,
                                                   scenario.system, scenario.config, run.grid,
                                                   run.mip, options);
    return run;
}

std::vector<MonthlyRow> aggregate_monthly(const domain::PowerSystem& system,
                                          const timegrid::TimeGrid& grid,
                                          const expansion::VariableRegistry& registry,
                                          const std::vector<double>& values) {
    const auto months = month_map(grid);
    const double cs = grid.cost_scale;
    std::map<std::pair<std::string, std::string>, std::array<double, 12>> acc;
    auto add = [&](const std::string& zone, const std::string& tech, int month, double mwh) {
        acc[{zone, tech}][month] += mwh;
    };

    for_each_unit(system, &domain::PowerSystem::thermal_units, domain::CandidateKind::Thermal,
                  &domain::CandidateUnit::thermal, [&](const domain::ThermalUnit& u) {
                      const auto zone = zone_of(system, u.bus);
                      for (int t = 0; t < grid.simulated_hours; ++t) {
                          const double p = u.p_min * values[registry.at(Role::On, u.id, t)] +
                                           values[registry.at(Role::AboveMin, u.id, t)];
                          add(zone, u.technology, months[t], cs * p);
                      }
                  });
    for_each_unit(system, &domain::PowerSystem::storage_units, domain::CandidateKind::Storage,
                  &domain::CandidateUnit::storage, [&](const domain::StorageUnit& u) {
                      const auto zone = zone_of(system, u.bus);
                      const auto tech = domain::to_string(u.kind);
                      for (int t = 0; t < grid.simulated_hours; ++t) {
                          const double p = values[registry.at(Role::Discharge, u.id, t)] -
                                           values[registry.at(Role::Charge, u.id, t)];
                          add(zone, tech, months[t], cs * p);
                      }
                  });
    for_each_unit(system, &domain::PowerSystem::res_units, domain::CandidateKind::Res,
                  &domain::CandidateUnit::res, [&](const domain::ResUnit& u) {
                      const auto zone = zone_of(system, u.bus);
                      const auto tech = domain::to_string(u.technology);
                      for (int t = 0; t < grid.simulated_hours; ++t)
                          add(zone, tech, months[t],
                              cs * values[registry.at(Role::ResProd, u.id, t)]);
                  });
    for (const auto& b : system.buses)
        for (int t = 0; t < grid.simulated_hours; ++t)
            add(b.zone, "load_shed", months[t],
                cs * values[registry.at(Role::LoadShed, b.id, t)]);

    std::vector<MonthlyRow> rows;
    for (const auto& [key, mwh] : acc) rows.push_back({key.first, key.second, mwh});
    return rows;
}

std::vector<StorageLevelRow> storage_trajectory(const domain::PowerSystem& system,
                                                const timegrid::TimeGrid& grid,
                                                const expansion::VariableRegistry& registry,
                                                const std::vector<double>& values) {
    const auto months = month_map(grid);
    std::vector<StorageLevelRow> rows;
    auto trace = [&](const domain::StorageUnit& u) {
        const double bs = timegrid::storage_scaling(grid, u).bound_scale;
        StorageLevelRow row;
        row.unit = u.id;
        row.end_level_mwh.fill(u.e_initial);
        for (int t = 0; t < grid.simulated_hours; ++t)
            row.end_level_mwh[months[t]] = values[registry.at(Role::Level, u.id, t)] / bs;
        rows.push_back(std::move(row));
    };
    for_each_unit(system, &domain::PowerSystem::storage_units, domain::CandidateKind::Storage,
                  &domain::CandidateUnit::storage, trace);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.unit < b.unit; });
    return rows;
}

std::vector<ExchangeRow> exchange_by_border(const domain::PowerSystem& system,
                                            const timegrid::TimeGrid& grid,
                                            const expansion::VariableRegistry& registry,
                                            const std::vector<double>& values) {
    const auto months = month_map(grid);
    const double cs = grid.cost_scale;
    std::map<std::pair<std::string, std::string>, std::array<double, 12>> acc;
    for (const auto& l : system.lines) {
        const auto zf = zone_of(system, l.from_bus);
        const auto zt = zone_of(system, l.to_bus);
        if (zf == zt) continue;
        const double sign = zf < zt ? 1.0 : -1.0;
        auto& slot = acc[{std::min(zf, zt), std::max(zf, zt)}];
        for (int t = 0; t < grid.simulated_hours; ++t)
            slot[months[t]] += sign * cs * values[registry.at(Role::Flow, l.id, t)];
    }
    std::vector<ExchangeRow> rows;
    for (const auto& [key, mwh] : acc) rows.push_back({key.first, key.second, mwh});
    return rows;
}

std::vector<PriceRow> price_summary(const domain::PowerSystem& system,
                                    const timegrid::TimeGrid& grid,
                                    const redispatch::PricingRun& pricing) {
    std::vector<PriceRow> rows;
    for (const auto& b : system.buses) {
        auto it = pricing.nodal_prices.find(b.id);
        if (it == pricing.nodal_prices.end()) continue;
        const auto& prices = it->second;
        const auto demand = timegrid::compress_series(grid, b.demand);
        PriceRow row;
        row.bus = b.id;
        double wsum = 0.0, psum = 0.0, load = 0.0;
        for (int t = 0; t < grid.simulated_hours; ++t) {
            psum += prices[t];
            wsum += prices[t] * demand[t];
            load += demand[t];
        }
        row.simple = psum / grid.simulated_hours;
        row.load_weighted = load > 0.0 ? wsum / load : row.simple;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.bus < b.bus; });
    return rows;
}

void save_results(const std::string& dir, const io::Scenario& scenario, const ScenarioRun& run) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const auto& system = scenario.system;
    const auto& registry = run.assembled.registry;

    // prefer the re-dispatched operating point: it is the one the prices match
    const std::vector<double>& values =
        run.pricing.lp.status == milp::SolveStatus::Optimal ? run.pricing.lp.values
                                                            : run.mip.values;
    const bool solved = !values.empty();

    auto month_header = [](std::ofstream& out) {
        for (int m = 1; m <= 12; ++m) out << ",m" << m;
        out << '\n';
    };

    {
        std::ofstream out(fs::path(dir) / "investments.csv");
        out << "id,kind,built\n";
        std::vector<const domain::CandidateUnit*> cands;
        for (const auto& c : system.candidates) cands.push_back(&c);
        std::sort(cands.begin(), cands.end(),
                  [](const auto* a, const auto* b) { return a->id < b->id; });
        for (const auto* c : cands) {
            const double v =
                solved ? values[registry.at(Role::Invest, c->id, -1)] : 0.0;
            out << c->id << ',' << domain::to_string(c->kind) << ',' << format_number(v) << '\n';
        }
    }

    double total_shed = 0.0;
    {
        std::ofstream out(fs::path(dir) / "monthly_energy.csv");
        out << "zone,technology";
        month_header(out);
        if (solved)
            for (const auto& row : aggregate_monthly(system, run.grid, registry, values)) {
                out << row.zone << ',' << row.technology;
                for (double v : row.mwh) out << ',' << format_number(v);
                out << '\n';
                if (row.technology == "load_shed")
                    for (double v : row.mwh) total_shed += v;
            }
    }
    {
        std::ofstream out(fs::path(dir) / "storage_levels.csv");
        out << "unit";
        month_header(out);
        if (solved)
            for (const auto& row : storage_trajectory(system, run.grid, registry, values)) {
                out << row.unit;
                for (double v : row.end_level_mwh) out << ',' << format_number(v);
                out << '\n';
            }
    }
    {
        std::ofstream out(fs::path(dir) / "exchange.csv");
        out << "from_zone,to_zone";
        month_header(out);
        if (solved)
            for (const auto& row : exchange_by_border(system, run.grid, registry, values)) {
                out << row.from_zone << ',' << row.to_zone;
                for (double v : row.mwh) out << ',' << format_number(v);
                out << '\n';
            }
    }
    {
        std::ofstream out(fs::path(dir) / "nodal_prices.csv");
        out << "bus,hour,physical_hour,price\n";
        std::vector<std::string> bus_ids;
        for (const auto& b : system.buses) bus_ids.push_back(b.id);
        std::sort(bus_ids.begin(), bus_ids.end());
        for (const auto& id : bus_ids) {
            auto it = run.pricing.nodal_prices.find(id);
            if (it == run.pricing.nodal_prices.end()) continue;
            for (int t = 0; t < run.grid.simulated_hours; ++t)
                out << id << ',' << t << ',' << run.grid.physical_hour(t) << ','
                    << format_number(it->second[t]) << '\n';
        }
    }
    {
        nlohmann::json j;
        j["name"] = scenario.name;
        j["simulated_hours"] = run.grid.simulated_hours;
        j["cost_scale"] = run.grid.cost_scale;
        j["mip_status"] = status_str(run.mip.status);
        j["mip_objective"] = run.mip.objective;
        j["redispatch_status"] = status_str(run.pricing.lp.status);
        j["redispatch_objective"] = run.pricing.lp.objective;
        j["total_load_shed_mwh"] = total_shed;
        if (scenario.config.res_target_energy)
            j["res_target_energy_mwh"] = *scenario.config.res_target_energy;
        auto prices = nlohmann::json::array();
        for (const auto& row : price_summary(system, run.grid, run.pricing))
            prices.push_back({{"bus", row.bus},
                              {"load_weighted", row.load_weighted},
                              {"simple", row.simple}});
        j["average_prices"] = prices;
        std::ofstream out(fs::path(dir) / "summary.json");
        out << j.dump(2) << '\n';
    }
}

}  // namespace gep::report
