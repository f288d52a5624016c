#include "gep/domain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace gep::domain {

const std::string& CandidateUnit::bus() const {
    switch (kind) {
        case CandidateKind::Thermal: return thermal.bus;
        case CandidateKind::Storage: return storage.bus;
        case CandidateKind::Res: return res.bus;
    }
    return thermal.bus;
}

const Bus* PowerSystem::find_bus(const std::string& id) const {
    for (const auto& b : buses)
        if (b.id == id) return &b;
    return nullptr;
}

bool is_hydro(StorageKind kind) { return kind != StorageKind::Battery; }

std::string to_string(StorageKind kind) {
    switch (kind) {
        case StorageKind::Battery: return "battery";
        case StorageKind::PumpDaily: return "pump_daily";
        case StorageKind::PumpSeasonal: return "pump_seasonal";
        case StorageKind::Dam: return "dam";
    }
    return "?";
}

std::string to_string(ResTechnology tech) {
    switch (tech) {
        case ResTechnology::Pv: return "pv";
        case ResTechnology::Wind: return "wind";
        case ResTechnology::RunOfRiver: return "run_of_river";
        case ResTechnology::BiomassProfile: return "biomass";
    }
    return "?";
}

std::string to_string(CandidateKind kind) {
    switch (kind) {
        case CandidateKind::Thermal: return "thermal";
        case CandidateKind::Storage: return "storage";
        case CandidateKind::Res: return "res";
    }
    return "?";
}

StorageKind storage_kind_from_string(const std::string& s) {
    if (s == "battery") return StorageKind::Battery;
    if (s == "pump_daily") return StorageKind::PumpDaily;
    if (s == "pump_seasonal") return StorageKind::PumpSeasonal;
    if (s == "dam") return StorageKind::Dam;
    throw std::invalid_argument("unknown storage kind: " + s);
}

ResTechnology res_technology_from_string(const std::string& s) {
    if (s == "pv") return ResTechnology::Pv;
    if (s == "wind") return ResTechnology::Wind;
    if (s == "run_of_river") return ResTechnology::RunOfRiver;
    if (s == "biomass") return ResTechnology::BiomassProfile;
    throw std::invalid_argument("unknown RES technology: " + s);
}

CandidateKind candidate_kind_from_string(const std::string& s) {
    if (s == "thermal") return CandidateKind::Thermal;
    if (s == "storage") return CandidateKind::Storage;
    if (s == "res") return CandidateKind::Res;
    throw std::invalid_argument("unknown candidate kind: " + s);
}

namespace {

void check_series_length(std::vector<Violation>& out, const std::string& entity,
                         const std::string& field, const Series& s, bool allow_empty = false) {
    if (allow_empty && s.empty()) return;
    if (s.size() != static_cast<std::size_t>(kHoursPerYear))
        out.push_back({entity, field + " has length " + std::to_string(s.size()) +
                                   ", expected " + std::to_string(kHoursPerYear)});
}

void check_thermal(std::vector<Violation>& out, const ThermalUnit& u) {
    if (!(0.0 <= u.p_min)) out.push_back({u.id, "p_min must be >= 0"});
    if (!(u.p_min <= u.startup_cap)) out.push_back({u.id, "startup_cap must be >= p_min"});
    if (!(u.startup_cap <= u.p_max)) out.push_back({u.id, "startup_cap must be <= p_max"});
    if (!(u.p_min <= u.shutdown_cap && u.shutdown_cap <= u.p_max))
        out.push_back({u.id, "shutdown_cap must lie in [p_min, p_max]"});
    if (u.min_up < 1) out.push_back({u.id, "min_up must be >= 1"});
    if (u.min_down < 1) out.push_back({u.id, "min_down must be >= 1"});
    if (!(u.ramp_up > 0.0)) out.push_back({u.id, "ramp_up must be > 0"});
    if (!(u.ramp_down > 0.0)) out.push_back({u.id, "ramp_down must be > 0"});
    check_series_length(out, u.id, "availability", u.availability, true);
    for (std::size_t t = 0; t < u.availability.size(); ++t)
        if (u.availability[t] != 0.0 && u.availability[t] != 1.0) {
            out.push_back({u.id, "availability must be 0/1, hour " + std::to_string(t)});
            break;
        }
}

void check_storage(std::vector<Violation>& out, const StorageUnit& u) {
    if (!(u.eta_ch > 0.0 && u.eta_ch <= 1.0)) out.push_back({u.id, "eta_ch must be in (0,1]"});
    if (!(u.eta_dis > 0.0 && u.eta_dis <= 1.0)) out.push_back({u.id, "eta_dis must be in (0,1]"});
    if (!(u.e_min <= u.e_initial && u.e_initial <= u.e_max))
        out.push_back({u.id, "e_initial must lie in [e_min, e_max]"});
    if (u.kind == StorageKind::Dam && u.p_max_ch != 0.0)
        out.push_back({u.id, "dam must have p_max_ch = 0"});
    if (u.kind == StorageKind::Battery && u.tcr_eligible)
        out.push_back({u.id, "battery TCR must be zero"});
    if (u.kind == StorageKind::Battery)
        for (std::size_t t = 0; t < u.inflow.size(); ++t)
            if (u.inflow[t] != 0.0) {
                out.push_back({u.id, "battery inflow must be identically zero, hour " +
                                         std::to_string(t)});
                break;
            }
    check_series_length(out, u.id, "inflow", u.inflow, true);
    if (u.p_max_dis < 0.0) out.push_back({u.id, "p_max_dis must be >= 0"});
    if (u.p_max_ch < 0.0) out.push_back({u.id, "p_max_ch must be >= 0"});
}

void check_res(std::vector<Violation>& out, const ResUnit& u) {
    if (u.p_max < 0.0) out.push_back({u.id, "p_max must be >= 0"});
    check_series_length(out, u.id, "capacity_factor", u.capacity_factor);
    for (std::size_t t = 0; t < u.capacity_factor.size(); ++t)
        if (u.capacity_factor[t] < 0.0 || u.capacity_factor[t] > 1.0) {
            out.push_back({u.id, "capacity factor " + std::to_string(u.capacity_factor[t]) +
                                     " outside [0,1] at hour " + std::to_string(t)});
            break;
        }
}

}  // namespace

ValidationReport validate_system(const PowerSystem& system, const ScenarioConfig& config) {
    ValidationReport report;
    auto& out = report.violations;

    std::unordered_set<std::string> ids;
    auto check_unique = [&](const std::string& id, const char* what) {
        if (id.empty()) out.push_back({id, std::string(what) + " id must be nonempty"});
        if (!ids.insert(id).second)
            out.push_back({id, std::string("duplicate id across the system (") + what + ")"});
    };

    std::unordered_set<std::string> bus_ids;
    for (const auto& b : system.buses) {
        check_unique(b.id, "bus");
        bus_ids.insert(b.id);
        check_series_length(out, b.id, "demand", b.demand);
        check_series_length(out, b.id, "fixed_injection", b.fixed_injection, true);
        for (std::size_t t = 0; t < b.demand.size(); ++t)
            if (b.demand[t] < 0.0) {
                out.push_back({b.id, "demand must be >= 0, hour " + std::to_string(t)});
                break;
            }
    }
    auto check_bus_ref = [&](const std::string& entity, const std::string& bus) {
        if (!bus_ids.count(bus)) out.push_back({entity, "references unknown bus " + bus});
    };

    for (const auto& l : system.lines) {
        check_unique(l.id, "line");
        if (!(l.limit > 0.0)) out.push_back({l.id, "limit must be > 0"});
        if (l.from_bus == l.to_bus) out.push_back({l.id, "from_bus equals to_bus"});
        check_bus_ref(l.id, l.from_bus);
        check_bus_ref(l.id, l.to_bus);
    }
    double max_prod_cost = 0.0;
    double min_nonzero_cost = std::numeric_limits<double>::infinity();
    for (const auto& u : system.thermal_units) {
        check_unique(u.id, "thermal unit");
        check_bus_ref(u.id, u.bus);
        check_thermal(out, u);
        max_prod_cost = std::max(max_prod_cost, u.cost_prod);
        if (u.cost_prod > 0.0) min_nonzero_cost = std::min(min_nonzero_cost, u.cost_prod);
    }
    for (const auto& u : system.storage_units) {
        check_unique(u.id, "storage unit");
        check_bus_ref(u.id, u.bus);
        check_storage(out, u);
        max_prod_cost = std::max(max_prod_cost, u.cost_charge);
        if (u.cost_charge > 0.0) min_nonzero_cost = std::min(min_nonzero_cost, u.cost_charge);
    }
    for (const auto& u : system.res_units) {
        check_unique(u.id, "res unit");
        check_bus_ref(u.id, u.bus);
        check_res(out, u);
        max_prod_cost = std::max(max_prod_cost, u.cost_prod);
        if (u.cost_prod > 0.0) min_nonzero_cost = std::min(min_nonzero_cost, u.cost_prod);
    }
    for (const auto& c : system.candidates) {
        check_unique(c.id, "candidate");
        switch (c.kind) {
            case CandidateKind::Thermal:
                check_bus_ref(c.id, c.thermal.bus);
                check_thermal(out, c.thermal);
                max_prod_cost = std::max(max_prod_cost, c.thermal.cost_prod);
                break;
            case CandidateKind::Storage:
                check_bus_ref(c.id, c.storage.bus);
                check_storage(out, c.storage);
                max_prod_cost = std::max(max_prod_cost, c.storage.cost_charge);
                break;
            case CandidateKind::Res:
                check_bus_ref(c.id, c.res.bus);
                check_res(out, c.res);
                if (!(c.invest_cap_max > 0.0))
                    out.push_back({c.id, "res candidate needs invest_cap_max > 0"});
                max_prod_cost = std::max(max_prod_cost, c.res.cost_prod);
                break;
        }
    }

    const auto& rp = system.reserves;
    for (const auto* s : {&rp.scr_up, &rp.scr_down, &rp.tcr_up, &rp.tcr_down}) {
        check_series_length(out, "reserves", "requirement series", *s, true);
        for (double v : *s)
            if (v < 0.0) {
                out.push_back({"reserves", "requirement series must be >= 0"});
                break;
            }
    }
    for (double a : {rp.a_wind_up, rp.a_wind_down, rp.a_pv_up, rp.a_pv_down})
        if (a < 0.0) {
            out.push_back({"reserves", "RES reserve coefficients must be >= 0"});
            break;
        }

    if (!system.buses.empty() && !bus_ids.count(config.slack_bus))
        out.push_back({"config", "slack_bus " + config.slack_bus + " does not exist"});
    if (!(config.load_shed_cost > max_prod_cost))
        out.push_back({"config", "load_shed_cost must exceed every production cost"});
    if (config.water_incentive < 0.0)
        out.push_back({"config", "water_incentive must be >= 0"});
    else if (std::isfinite(min_nonzero_cost) &&
             config.water_incentive > 1e-3 * min_nonzero_cost)
        out.push_back({"config",
                       "water_incentive must be at least three orders of magnitude below the "
                       "smallest nonzero production cost"});
    return report;
}

}  // namespace gep::domain
