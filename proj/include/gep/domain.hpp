#ifndef GEP_DOMAIN_HPP
#define GEP_DOMAIN_HPP

#include <optional>
#include <string>
#include <vector>

namespace gep::domain {

constexpr int kHoursPerYear = 8760;
constexpr int kDaysPerYear = 365;

using Series = std::vector<double>;  // hourly, length 8760 in physical time

struct Bus {
    std::string id;
    std::string zone;              // e.g. CH, DE, FR, IT, AT
    Series demand;                 // MW, >= 0
    Series fixed_injection;        // MW, net fixed exchange with unmodeled zones
};

struct Line {
    std::string id;
    std::string from_bus;
    std::string to_bus;
    double susceptance = 0.0;      // per unit on the system base
    double limit = 0.0;            // MW; market-based for tie lines
    bool is_tie_line = false;
};

struct ThermalUnit {
    std::string id;
    std::string bus;
    std::string technology = "thermal";  // reporting class (nuclear, biomass, ...)
    double p_min = 0.0;            // MW
    double p_max = 0.0;
    double startup_cap = 0.0;      // MW reachable in the start-up hour
    double shutdown_cap = 0.0;
    double ramp_up = 0.0;          // MW/h
    double ramp_down = 0.0;
    int min_up = 1;                // hours
    int min_down = 1;
    double cost_prod = 0.0;        // currency/MWh
    double cost_startup = 0.0;     // currency/start
    Series availability;           // 0/1 maintenance schedule; empty = always on
    bool scr_eligible = false;
    bool tcr_eligible = false;
    bool initial_on = false;
};

enum class StorageKind { Battery, PumpDaily, PumpSeasonal, Dam };

struct StorageUnit {
    std::string id;
    std::string bus;
    StorageKind kind = StorageKind::Battery;
    double p_max_dis = 0.0;        // MW
    double p_max_ch = 0.0;
    double e_min = 0.0;            // MWh
    double e_max = 0.0;
    double e_initial = 0.0;
    double eta_ch = 1.0;
    double eta_dis = 1.0;
    Series inflow;                 // MWh per hour; empty = zero
    double cost_charge = 0.0;      // currency/MWh purchased while pumping
    bool scr_eligible = false;
    bool tcr_eligible = false;
};

enum class ResTechnology { Pv, Wind, RunOfRiver, BiomassProfile };

struct ResUnit {
    std::string id;
    std::string bus;
    double p_max = 0.0;            // MW
    Series capacity_factor;        // in [0,1]
    double cost_prod = 0.0;
    ResTechnology technology = ResTechnology::Pv;
};

enum class CandidateKind { Thermal, Storage, Res };

struct CandidateUnit {
    std::string id;
    CandidateKind kind = CandidateKind::Thermal;
    ThermalUnit thermal;           // payload for kind == Thermal
    StorageUnit storage;           // payload for kind == Storage
    ResUnit res;                   // payload for kind == Res
    double invest_cost_annualized = 0.0;  // currency/yr, or currency/MW/yr for res
    double invest_cap_max = 0.0;          // MW, res only
    bool counts_toward_res_target = false;

    const std::string& bus() const;
};

struct ReservePolicy {
    Series scr_up, scr_down;       // MW system requirement per hour
    Series tcr_up, tcr_down;
    double a_wind_up = 0.0;        // MW extra TCR per MW of wind investment
    double a_wind_down = 0.0;
    double a_pv_up = 0.0;
    double a_pv_down = 0.0;
};

enum class Compression { FullYear, EveryOtherDay };

enum class StorageCostSide { Charge, Discharge };

struct ScenarioConfig {
    double load_shed_cost = 3000.0;           // currency/MWh
    std::optional<double> res_target_energy;  // MWh/yr
    double water_incentive = 1e-4;            // currency/MWh, re-dispatch stage
    std::string slack_bus;
    Compression compression = Compression::FullYear;
    StorageCostSide storage_cost_side = StorageCostSide::Charge;
    double system_base_mva = 100.0;
};

struct PowerSystem {
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::vector<ThermalUnit> thermal_units;
    std::vector<StorageUnit> storage_units;
    std::vector<ResUnit> res_units;
    std::vector<CandidateUnit> candidates;
    ReservePolicy reserves;

    const Bus* find_bus(const std::string& id) const;
};

struct Violation {
    std::string entity;   // unit/bus/line id, or "config"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Collects every invariant violation with unit/field identification. An
// empty report means the system is ready for model building.
ValidationReport validate_system(const PowerSystem& system, const ScenarioConfig& config);

bool is_hydro(StorageKind kind);

std::string to_string(StorageKind kind);
std::string to_string(ResTechnology tech);
std::string to_string(CandidateKind kind);
StorageKind storage_kind_from_string(const std::string& s);
ResTechnology res_technology_from_string(const std::string& s);
CandidateKind candidate_kind_from_string(const std::string& s);

}  // namespace gep::domain

#endif
