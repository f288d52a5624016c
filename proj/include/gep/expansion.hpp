#ifndef GEP_EXPANSION_HPP
#define GEP_EXPANSION_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gep/domain.hpp"
#include "gep/milp.hpp"
#include "gep/timegrid.hpp"

namespace gep::expansion {

// One role per decision symbol of the formulation.
enum class Role {
    On,         // u    thermal commitment
    Start,      // v
    Stop,       // w
    AboveMin,   // p^min output above minimum
    Discharge,  // p^dis
    Charge,     // p^ch
    Level,      // e
    ScrUp,      // r^SCR up
    ScrDown,
    TcrUp,      // r^TCR up
    TcrDown,
    ResProd,    // p_r
    LoadShed,   // ls
    Angle,      // delta
    Flow,       // p_l
    Invest,     // u^inv (hour index ignored)
};

const char* role_tag(Role role);

// (owner id, hour, role) -> variable id, plus the named constraint rows the
// later stages need (nodal balance rows for pricing).
class VariableRegistry {
public:
    void add(Role role, const std::string& owner, int hour, int var);
    std::optional<int> find(Role role, const std::string& owner, int hour) const;
    int at(Role role, const std::string& owner, int hour) const;

    void add_balance_row(const std::string& bus, int hour, int row);
    int balance_row(const std::string& bus, int hour) const;

    const std::unordered_map<std::string, int>& entries() const { return vars_; }

private:
    std::unordered_map<std::string, int> vars_;
    std::unordered_map<std::string, int> rows_;
};

struct Assembled {
    milp::Model model;
    VariableRegistry registry;
};

// Emits the full co-optimized investment + unit commitment + reserves +
// DC-network model for one scenario. Orchestrates the per-family builders
// below; ordering is deterministic (unit id, then hour, then role).
Assembled assemble(const domain::PowerSystem& system, const domain::ScenarioConfig& config,
                   const timegrid::TimeGrid& grid);

// Per-family builders, exposed so the row-level unit tests can drive them
// directly. `invest_var` < 0 means the unit already exists; otherwise the
// builder is in candidate mode and couples capacities to that variable.
class ModelBuilder {
public:
    ModelBuilder(const domain::PowerSystem& system, const domain::ScenarioConfig& config,
                 const timegrid::TimeGrid& grid);

    void add_thermal_uc(const domain::ThermalUnit& unit, int invest_var = -1);
    void add_storage(const domain::StorageUnit& unit, int invest_var = -1);
    void add_res(const domain::ResUnit& unit, int invest_var = -1);
    void add_candidate(const domain::CandidateUnit& candidate);
    void add_reserve_requirements();
    void add_network();
    void add_res_target();
    void build_objective();

    Assembled finish();

    milp::Model& model() { return model_; }
    VariableRegistry& registry() { return registry_; }

private:
    const domain::PowerSystem& system_;
    const domain::ScenarioConfig& config_;
    const timegrid::TimeGrid& grid_;
    milp::Model model_;
    VariableRegistry registry_;
    int horizon_;

    struct InjectionTerm {
        int var;
        double coeff;
    };
    // per bus, per hour: generation/charge terms of the nodal balance
    std::unordered_map<std::string, std::vector<std::vector<InjectionTerm>>> injections_;

    struct ReserveProvider {
        std::string owner;
        bool scr = false;
        bool tcr = false;
    };
    std::vector<ReserveProvider> reserve_providers_;

    struct ResAdder {
        int invest_var;
        double coeff_up, coeff_down;
    };
    std::vector<ResAdder> tcr_adders_;

    struct TargetTerm {
        int var;
        double coeff;
    };
    std::vector<TargetTerm> target_terms_;

    std::vector<InjectionTerm>& injection(const std::string& bus, int hour);
    int new_var(Role role, const std::string& owner, int hour, milp::VarKind kind, double lo,
                double up);
    domain::Series compressed(const domain::Series& s, double fallback) const;
};

}  // namespace gep::expansion

#endif
