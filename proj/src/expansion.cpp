#include "gep/expansion.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace gep::expansion {

using domain::CandidateKind;
using domain::ResTechnology;
using domain::StorageKind;
using milp::Sense;
using milp::VarKind;

const char* role_tag(Role role) {
    switch (role) {
        case Role::On: return "on";
        case Role::Start: return "start";
        case Role::Stop: return "stop";
        case Role::AboveMin: return "pmin";
        case Role::Discharge: return "dis";
        case Role::Charge: return "ch";
        case Role::Level: return "lvl";
        case Role::ScrUp: return "rsu";
        case Role::ScrDown: return "rsd";
        case Role::TcrUp: return "rtu";
        case Role::TcrDown: return "rtd";
        case Role::ResProd: return "pres";
        case Role::LoadShed: return "shed";
        case Role::Angle: return "ang";
        case Role::Flow: return "pl";
        case Role::Invest: return "inv";
    }
    return "?";
}

namespace {

std::string var_key(Role role, const std::string& owner, int hour) {
    return std::string(role_tag(role)) + "|" + owner + "|" + std::to_string(hour);
}

std::string var_name(Role role, const std::string& owner, int hour) {
    if (role == Role::Invest) return std::string("inv(") + owner + ")";
    return std::string(role_tag(role)) + "(" + owner + "," + std::to_string(hour) + ")";
}

std::string row_name(const char* tag, const std::string& owner, int hour) {
    return std::string(tag) + "(" + owner + "," + std::to_string(hour) + ")";
}

}  // namespace

void VariableRegistry::add(Role role, const std::string& owner, int hour, int var) {
    if (!vars_.emplace(var_key(role, owner, hour), var).second)
        throw std::invalid_argument("registry: duplicate entry " + var_key(role, owner, hour));
}

std::optional<int> VariableRegistry::find(Role role, const std::string& owner, int hour) const {
    auto it = vars_.find(var_key(role, owner, hour));
    if (it == vars_.end()) return std::nullopt;
    return it->second;
}

int VariableRegistry::at(Role role, const std::string& owner, int hour) const {
    auto v = find(role, owner, hour);
    if (!v) throw std::out_of_range("registry: missing " + var_key(role, owner, hour));
    return *v;
}

void VariableRegistry::add_balance_row(const std::string& bus, int hour, int row) {
    rows_.emplace("bal|" + bus + "|" + std::to_string(hour), row);
}

int VariableRegistry::balance_row(const std::string& bus, int hour) const {
    auto it = rows_.find("bal|" + bus + "|" + std::to_string(hour));
    if (it == rows_.end()) throw std::out_of_range("registry: missing balance row for " + bus);
    return it->second;
}

ModelBuilder::ModelBuilder(const domain::PowerSystem& system, const domain::ScenarioConfig& config,
                           const timegrid::TimeGrid& grid)
    : system_(system), config_(config), grid_(grid), horizon_(grid.simulated_hours) {}

std::vector<ModelBuilder::InjectionTerm>& ModelBuilder::injection(const std::string& bus, int hour) {
    auto& slots = injections_[bus];
    if (slots.empty()) slots.resize(horizon_);
    return slots[hour];
}

int ModelBuilder::new_var(Role role, const std::string& owner, int hour, VarKind kind, double lo,
                          double up) {
    const int id = model_.add_variable(var_name(role, owner, hour), kind, lo, up);
    registry_.add(role, owner, hour, id);
    return id;
}

domain::Series ModelBuilder::compressed(const domain::Series& s, double fallback) const {
    if (s.empty()) return domain::Series(horizon_, fallback);
    return timegrid::compress_series(grid_, s);
}

void ModelBuilder::add_thermal_uc(const domain::ThermalUnit& unit, int invest_var) {
    const int T = horizon_;
    const auto avail = compressed(unit.availability, 1.0);
    const double span = unit.p_max - unit.p_min;

    std::vector<int> on(T), start(T), stop(T), pmin(T);
    std::vector<int> rsu, rsd, rtu, rtd;
    if (unit.scr_eligible) { rsu.resize(T); rsd.resize(T); }
    if (unit.tcr_eligible) { rtu.resize(T); rtd.resize(T); }
    for (int t = 0; t < T; ++t) {
        on[t] = new_var(Role::On, unit.id, t, VarKind::Binary, 0.0, 1.0);
        start[t] = new_var(Role::Start, unit.id, t, VarKind::Continuous, 0.0, 1.0);
        stop[t] = new_var(Role::Stop, unit.id, t, VarKind::Continuous, 0.0, 1.0);
        pmin[t] = new_var(Role::AboveMin, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
        if (unit.scr_eligible) {
            rsu[t] = new_var(Role::ScrUp, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
            rsd[t] = new_var(Role::ScrDown, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
        }
        if (unit.tcr_eligible) {
            rtu[t] = new_var(Role::TcrUp, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
            rtd[t] = new_var(Role::TcrDown, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
        }
    }

    for (int t = 0; t < T; ++t) {
        // downward headroom above minimum output
        {
            std::vector<std::pair<int, double>> terms{{pmin[t], 1.0}};
            if (unit.scr_eligible) terms.emplace_back(rsd[t], -1.0);
            if (unit.tcr_eligible) terms.emplace_back(rtd[t], -1.0);
            model_.add_constraint(row_name("dn", unit.id, t), std::move(terms),
                                  Sense::GreaterEqual, 0.0);
        }
        // upward capacity, tightened around start-up / shut-down hours
        auto up_terms = [&] {
            std::vector<std::pair<int, double>> terms{{pmin[t], 1.0}, {on[t], -span}};
            if (unit.scr_eligible) terms.emplace_back(rsu[t], 1.0);
            if (unit.tcr_eligible) terms.emplace_back(rtu[t], 1.0);
            return terms;
        };
        if (unit.min_up >= 2) {
            auto terms = up_terms();
            terms.emplace_back(start[t], unit.p_max - unit.startup_cap);
            if (t + 1 < T) terms.emplace_back(stop[t + 1], unit.p_max - unit.shutdown_cap);
            model_.add_constraint(row_name("up", unit.id, t), std::move(terms), Sense::LessEqual,
                                  0.0);
        } else {
            auto terms = up_terms();
            terms.emplace_back(start[t], unit.p_max - unit.startup_cap);
            model_.add_constraint(row_name("upv", unit.id, t), std::move(terms), Sense::LessEqual,
                                  0.0);
            auto terms2 = up_terms();
            if (t + 1 < T) terms2.emplace_back(stop[t + 1], unit.p_max - unit.shutdown_cap);
            model_.add_constraint(row_name("upw", unit.id, t), std::move(terms2), Sense::LessEqual,
                                  0.0);
        }
        // status logic u_{t-1} - u_t + v_t - w_t = 0
        {
            std::vector<std::pair<int, double>> terms{{on[t], -1.0}, {start[t], 1.0},
                                                      {stop[t], -1.0}};
            double rhs = 0.0;
            if (t > 0) terms.emplace_back(on[t - 1], 1.0);
            else rhs = -(unit.initial_on ? 1.0 : 0.0);
            model_.add_constraint(row_name("logic", unit.id, t), std::move(terms), Sense::Equal,
                                  rhs);
        }
        // planned maintenance
        model_.add_constraint(row_name("avail", unit.id, t), {{on[t], 1.0}}, Sense::LessEqual,
                              avail[t]);
        // ramping of the above-minimum output; no inherited history at t=0
        {
            std::vector<std::pair<int, double>> terms{{pmin[t], 1.0}};
            if (t > 0) terms.emplace_back(pmin[t - 1], -1.0);
            model_.add_constraint(row_name("rampup", unit.id, t), std::move(terms),
                                  Sense::LessEqual, unit.ramp_up);
            std::vector<std::pair<int, double>> terms2{{pmin[t], -1.0}};
            if (t > 0) terms2.emplace_back(pmin[t - 1], 1.0);
            model_.add_constraint(row_name("rampdn", unit.id, t), std::move(terms2),
                                  Sense::LessEqual, unit.ramp_down);
        }
        // minimum up/down times over the trailing windows
        {
            std::vector<std::pair<int, double>> terms;
            for (int i = std::max(0, t - unit.min_up + 1); i <= t; ++i)
                terms.emplace_back(start[i], 1.0);
            terms.emplace_back(on[t], -1.0);
            model_.add_constraint(row_name("minup", unit.id, t), std::move(terms),
                                  Sense::LessEqual, 0.0);
            std::vector<std::pair<int, double>> terms2;
            for (int i = std::max(0, t - unit.min_down + 1); i <= t; ++i)
                terms2.emplace_back(stop[i], 1.0);
            terms2.emplace_back(on[t], 1.0);
            model_.add_constraint(row_name("mindn", unit.id, t), std::move(terms2),
                                  Sense::LessEqual, 1.0);
        }
        // candidate units only run once built
        if (invest_var >= 0)
            model_.add_constraint(row_name("link", unit.id, t), {{on[t], 1.0}, {invest_var, -1.0}},
                                  Sense::LessEqual, 0.0);
        // total production P^min u + p^min feeds the nodal balance
        auto& inj = injection(unit.bus, t);
        if (unit.p_min != 0.0) inj.push_back({on[t], unit.p_min});
        inj.push_back({pmin[t], 1.0});
    }
    if (unit.scr_eligible || unit.tcr_eligible)
        reserve_providers_.push_back({unit.id, unit.scr_eligible, unit.tcr_eligible});
}

void ModelBuilder::add_storage(const domain::StorageUnit& unit, int invest_var) {
    const int T = horizon_;
    const auto scaling = timegrid::storage_scaling(grid_, unit);
    const double bs = scaling.bound_scale;
    const auto inflow = compressed(unit.inflow, 0.0);
    const bool is_dam = unit.kind == StorageKind::Dam;
    const bool is_battery = unit.kind == StorageKind::Battery;
    const bool candidate = invest_var >= 0;

    const double e_lo = candidate ? 0.0 : std::max(0.0, unit.e_min * bs);
    const double e_hi = unit.e_max * bs;

    std::vector<int> dis(T), ch(T), lvl(T);
    std::vector<int> rsu, rsd, rtu, rtd;
    const bool has_scr = unit.scr_eligible;
    const bool has_tcr = unit.tcr_eligible;
    if (has_scr) { rsu.resize(T); rsd.resize(T); }
    if (has_tcr) { rtu.resize(T); rtd.resize(T); }
    for (int t = 0; t < T; ++t) {
        dis[t] = new_var(Role::Discharge, unit.id, t, VarKind::Continuous, 0.0, unit.p_max_dis);
        ch[t] = new_var(Role::Charge, unit.id, t, VarKind::Continuous, 0.0,
                        is_dam ? 0.0 : unit.p_max_ch);
        lvl[t] = new_var(Role::Level, unit.id, t, VarKind::Continuous, e_lo, e_hi);
        if (has_scr) {
            rsu[t] = new_var(Role::ScrUp, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
            rsd[t] = new_var(Role::ScrDown, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
        }
        if (has_tcr) {
            // batteries may not provide tertiary reserve
            const double cap = is_battery ? 0.0 : milp::kInf;
            rtu[t] = new_var(Role::TcrUp, unit.id, t, VarKind::Continuous, 0.0, cap);
            rtd[t] = new_var(Role::TcrDown, unit.id, t, VarKind::Continuous, 0.0, cap);
        }
    }

    for (int t = 0; t < T; ++t) {
        // energy balance e_t = e_{t-1} + cc*eta_ch*ch - dc*dis/eta_dis + ic*xi
        {
            std::vector<std::pair<int, double>> terms{
                {lvl[t], 1.0},
                {ch[t], -scaling.charge_coeff * unit.eta_ch},
                {dis[t], scaling.discharge_coeff / unit.eta_dis}};
            double rhs = scaling.inflow_coeff * inflow[t];
            if (t > 0) {
                terms.emplace_back(lvl[t - 1], -1.0);
            } else if (candidate) {
                terms.emplace_back(invest_var, -unit.e_initial * bs);
            } else {
                rhs += unit.e_initial * bs;
            }
            if (candidate) {
                // unbuilt storages see no inflow either
                auto& inv_term = terms.back();
                if (inv_term.first == invest_var)
                    inv_term.second -= scaling.inflow_coeff * inflow[t];
                else if (scaling.inflow_coeff * inflow[t] != 0.0)
                    terms.emplace_back(invest_var, -scaling.inflow_coeff * inflow[t]);
                rhs = 0.0;
            }
            model_.add_constraint(row_name("lvl", unit.id, t), std::move(terms), Sense::Equal, rhs);
        }
        // reserve capability, all storages can back up-reserve with idle capacity
        {
            std::vector<std::pair<int, double>> terms{{dis[t], 1.0}, {ch[t], -1.0}};
            if (has_scr) terms.emplace_back(rsu[t], 1.0);
            if (has_tcr) terms.emplace_back(rtu[t], 1.0);
            double rhs = unit.p_max_dis;
            if (candidate) {
                terms.emplace_back(invest_var, -unit.p_max_dis);
                rhs = 0.0;
            }
            model_.add_constraint(row_name("rescapup", unit.id, t), std::move(terms),
                                  Sense::LessEqual, rhs);
        }
        if (!is_dam) {
            std::vector<std::pair<int, double>> terms{{ch[t], 1.0}, {dis[t], -1.0}};
            if (has_scr) terms.emplace_back(rsd[t], 1.0);
            if (has_tcr) terms.emplace_back(rtd[t], 1.0);
            double rhs = unit.p_max_ch;
            if (candidate) {
                terms.emplace_back(invest_var, -unit.p_max_ch);
                rhs = 0.0;
            }
            model_.add_constraint(row_name("rescapdn", unit.id, t), std::move(terms),
                                  Sense::LessEqual, rhs);
        } else {
            // dams only provide downward reserve while producing
            std::vector<std::pair<int, double>> terms{{dis[t], 1.0}};
            if (has_scr) terms.emplace_back(rsd[t], -1.0);
            if (has_tcr) terms.emplace_back(rtd[t], -1.0);
            auto terms2 = terms;
            model_.add_constraint(row_name("damdn", unit.id, t), std::move(terms),
                                  Sense::GreaterEqual, 0.0);
            double rhs = unit.p_max_dis;
            if (candidate) {
                terms2.emplace_back(invest_var, -unit.p_max_dis);
                rhs = 0.0;
            }
            model_.add_constraint(row_name("damcap", unit.id, t), std::move(terms2),
                                  Sense::LessEqual, rhs);
        }
        if (candidate) {
            model_.add_constraint(row_name("discap", unit.id, t),
                                  {{dis[t], 1.0}, {invest_var, -unit.p_max_dis}},
                                  Sense::LessEqual, 0.0);
            if (!is_dam)
                model_.add_constraint(row_name("chcap", unit.id, t),
                                      {{ch[t], 1.0}, {invest_var, -unit.p_max_ch}},
                                      Sense::LessEqual, 0.0);
            model_.add_constraint(row_name("lvlmax", unit.id, t),
                                  {{lvl[t], 1.0}, {invest_var, -unit.e_max * bs}},
                                  Sense::LessEqual, 0.0);
            if (unit.e_min > 0.0)
                model_.add_constraint(row_name("lvlmin", unit.id, t),
                                      {{lvl[t], 1.0}, {invest_var, -unit.e_min * bs}},
                                      Sense::GreaterEqual, 0.0);
        }
        auto& inj = injection(unit.bus, t);
        inj.push_back({dis[t], 1.0});
        if (!is_dam) inj.push_back({ch[t], -1.0});
    }
    // the year closes where it started
    {
        std::vector<std::pair<int, double>> terms{{lvl[T - 1], 1.0}};
        double rhs = unit.e_initial * bs;
        if (candidate) {
            terms.emplace_back(invest_var, -unit.e_initial * bs);
            rhs = 0.0;
        }
        model_.add_constraint("term(" + unit.id + ")", std::move(terms), Sense::Equal, rhs);
    }
    if (has_scr || has_tcr) reserve_providers_.push_back({unit.id, has_scr, has_tcr});
}

void ModelBuilder::add_res(const domain::ResUnit& unit, int invest_var) {
    const int T = horizon_;
    const auto cf = compressed(unit.capacity_factor, 0.0);
    for (int t = 0; t < T; ++t) {
        int p;
        if (invest_var < 0) {
            p = new_var(Role::ResProd, unit.id, t, VarKind::Continuous, 0.0, cf[t] * unit.p_max);
        } else {
            p = new_var(Role::ResProd, unit.id, t, VarKind::Continuous, 0.0, milp::kInf);
            // production is capped by the built capacity times the profile
            model_.add_constraint(row_name("prodcap", unit.id, t),
                                  {{p, 1.0}, {invest_var, -cf[t]}}, Sense::LessEqual, 0.0);
        }
        injection(unit.bus, t).push_back({p, 1.0});
    }
    if (invest_var < 0 && unit.technology != ResTechnology::RunOfRiver)
        for (int t = 0; t < T; ++t)
            target_terms_.push_back({registry_.at(Role::ResProd, unit.id, t), 1.0});
}

void ModelBuilder::add_candidate(const domain::CandidateUnit& candidate) {
    int inv;
    switch (candidate.kind) {
        case CandidateKind::Thermal:
            inv = new_var(Role::Invest, candidate.id, -1, VarKind::Binary, 0.0, 1.0);
            add_thermal_uc(candidate.thermal, inv);
            if (candidate.counts_toward_res_target)
                for (int t = 0; t < horizon_; ++t) {
                    if (candidate.thermal.p_min != 0.0)
                        target_terms_.push_back(
                            {registry_.at(Role::On, candidate.thermal.id, t), candidate.thermal.p_min});
                    target_terms_.push_back(
                        {registry_.at(Role::AboveMin, candidate.thermal.id, t), 1.0});
                }
            break;
        case CandidateKind::Storage:
            inv = new_var(Role::Invest, candidate.id, -1, VarKind::Binary, 0.0, 1.0);
            add_storage(candidate.storage, inv);
            break;
        case CandidateKind::Res: {
            inv = new_var(Role::Invest, candidate.id, -1, VarKind::Continuous, 0.0,
                          candidate.invest_cap_max);
            add_res(candidate.res, inv);
            if (candidate.counts_toward_res_target)
                for (int t = 0; t < horizon_; ++t)
                    target_terms_.push_back({registry_.at(Role::ResProd, candidate.res.id, t), 1.0});
            if (candidate.res.technology == ResTechnology::Wind)
                tcr_adders_.push_back({inv, system_.reserves.a_wind_up, system_.reserves.a_wind_down});
            else if (candidate.res.technology == ResTechnology::Pv)
                tcr_adders_.push_back({inv, system_.reserves.a_pv_up, system_.reserves.a_pv_down});
            break;
        }
    }
}

void ModelBuilder::add_reserve_requirements() {
    if (reserve_providers_.empty() && tcr_adders_.empty() && system_.reserves.scr_up.empty() &&
        system_.reserves.scr_down.empty() && system_.reserves.tcr_up.empty() &&
        system_.reserves.tcr_down.empty())
        return;
    const auto scr_up = compressed(system_.reserves.scr_up, 0.0);
    const auto scr_dn = compressed(system_.reserves.scr_down, 0.0);
    const auto tcr_up = compressed(system_.reserves.tcr_up, 0.0);
    const auto tcr_dn = compressed(system_.reserves.tcr_down, 0.0);
    for (int t = 0; t < horizon_; ++t) {
        std::vector<std::pair<int, double>> su, sd, tu, td;
        for (const auto& p : reserve_providers_) {
            if (p.scr) {
                su.emplace_back(registry_.at(Role::ScrUp, p.owner, t), 1.0);
                sd.emplace_back(registry_.at(Role::ScrDown, p.owner, t), 1.0);
            }
            if (p.tcr) {
                tu.emplace_back(registry_.at(Role::TcrUp, p.owner, t), 1.0);
                td.emplace_back(registry_.at(Role::TcrDown, p.owner, t), 1.0);
            }
        }
        // investments in intermittent RES raise the tertiary requirement
        for (const auto& a : tcr_adders_) {
            if (a.coeff_up != 0.0) tu.emplace_back(a.invest_var, -a.coeff_up);
            if (a.coeff_down != 0.0) td.emplace_back(a.invest_var, -a.coeff_down);
        }
        model_.add_constraint(row_name("scr_up", "sys", t), std::move(su), Sense::GreaterEqual,
                              scr_up[t]);
        model_.add_constraint(row_name("scr_dn", "sys", t), std::move(sd), Sense::GreaterEqual,
                              scr_dn[t]);
        model_.add_constraint(row_name("tcr_up", "sys", t), std::move(tu), Sense::GreaterEqual,
                              tcr_up[t]);
        model_.add_constraint(row_name("tcr_dn", "sys", t), std::move(td), Sense::GreaterEqual,
                              tcr_dn[t]);
    }
}

void ModelBuilder::add_network() {
    std::vector<const domain::Bus*> buses;
    for (const auto& b : system_.buses) buses.push_back(&b);
    std::sort(buses.begin(), buses.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
    std::vector<const domain::Line*> lines;
    for (const auto& l : system_.lines) lines.push_back(&l);
    std::sort(lines.begin(), lines.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });

    if (buses.empty()) return;
    if (!system_.find_bus(config_.slack_bus))
        throw std::invalid_argument("network: slack bus " + config_.slack_bus + " does not exist");

    // every bus must reach the slack for the angles to be anchored
    {
        std::unordered_map<std::string, std::vector<std::string>> adj;
        for (const auto* l : lines) {
            adj[l->from_bus].push_back(l->to_bus);
            adj[l->to_bus].push_back(l->from_bus);
        }
        std::unordered_set<std::string> seen{config_.slack_bus};
        std::queue<std::string> q;
        q.push(config_.slack_bus);
        while (!q.empty()) {
            auto b = q.front();
            q.pop();
            for (const auto& nb : adj[b])
                if (seen.insert(nb).second) q.push(nb);
        }
        for (const auto* b : buses)
            if (!seen.count(b->id))
                throw std::invalid_argument("network: bus " + b->id +
                                            " is disconnected from the slack bus");
    }

    for (const auto* b : buses) {
        const auto demand = compressed(b->demand, 0.0);
        const bool slack = b->id == config_.slack_bus;
        for (int t = 0; t < horizon_; ++t) {
            const int shed = new_var(Role::LoadShed, b->id, t, VarKind::Continuous, 0.0, demand[t]);
            new_var(Role::Angle, b->id, t, VarKind::Continuous, slack ? 0.0 : -milp::kInf,
                    slack ? 0.0 : milp::kInf);
            injection(b->id, t).push_back({shed, 1.0});
        }
    }
    for (const auto* l : lines) {
        for (int t = 0; t < horizon_; ++t) {
            const int pl = new_var(Role::Flow, l->id, t, VarKind::Continuous, -l->limit, l->limit);
            const int af = registry_.at(Role::Angle, l->from_bus, t);
            const int at = registry_.at(Role::Angle, l->to_bus, t);
            const double b = config_.system_base_mva * l->susceptance;
            model_.add_constraint(row_name("flow", l->id, t),
                                  {{pl, 1.0}, {af, -b}, {at, b}}, Sense::Equal, 0.0);
        }
    }
    for (const auto* b : buses) {
        const auto demand = compressed(b->demand, 0.0);
        const auto fixed = compressed(b->fixed_injection, 0.0);
        for (int t = 0; t < horizon_; ++t) {
            std::vector<std::pair<int, double>> terms;
            for (const auto* l : lines) {
                if (l->from_bus == b->id)
                    terms.emplace_back(registry_.at(Role::Flow, l->id, t), 1.0);
                else if (l->to_bus == b->id)
                    terms.emplace_back(registry_.at(Role::Flow, l->id, t), -1.0);
            }
            auto it = injections_.find(b->id);
            if (it != injections_.end())
                for (const auto& term : it->second[t]) terms.emplace_back(term.var, term.coeff);
            const int row = model_.add_constraint(row_name("bal", b->id, t), std::move(terms),
                                                  Sense::Equal, demand[t] - fixed[t]);
            registry_.add_balance_row(b->id, t, row);
        }
    }
}

void ModelBuilder::add_res_target() {
    if (!config_.res_target_energy) return;
    std::vector<std::pair<int, double>> terms;
    terms.reserve(target_terms_.size());
    // the compressed horizon stands for the full year via the cost scale
    for (const auto& term : target_terms_)
        terms.emplace_back(term.var, grid_.cost_scale * term.coeff);
    model_.add_constraint("restarget", std::move(terms), Sense::GreaterEqual,
                          *config_.res_target_energy);
}

void ModelBuilder::build_objective() {
    const double cs = grid_.cost_scale;
    auto thermal_cost = [&](const domain::ThermalUnit& u) {
        for (int t = 0; t < horizon_; ++t) {
            if (u.cost_prod != 0.0) {
                if (u.p_min != 0.0)
                    model_.add_objective_term(registry_.at(Role::On, u.id, t),
                                              cs * u.cost_prod * u.p_min);
                model_.add_objective_term(registry_.at(Role::AboveMin, u.id, t), cs * u.cost_prod);
            }
            if (u.cost_startup != 0.0)
                model_.add_objective_term(registry_.at(Role::Start, u.id, t), cs * u.cost_startup);
        }
    };
    auto storage_cost = [&](const domain::StorageUnit& u) {
        if (u.cost_charge == 0.0) return;
        const Role side =
            config_.storage_cost_side == domain::StorageCostSide::Charge ? Role::Charge
                                                                         : Role::Discharge;
        for (int t = 0; t < horizon_; ++t)
            model_.add_objective_term(registry_.at(side, u.id, t), cs * u.cost_charge);
    };
    auto res_cost = [&](const domain::ResUnit& u) {
        if (u.cost_prod == 0.0) return;
        for (int t = 0; t < horizon_; ++t)
            model_.add_objective_term(registry_.at(Role::ResProd, u.id, t), cs * u.cost_prod);
    };

    for (const auto& u : system_.thermal_units) thermal_cost(u);
    for (const auto& u : system_.storage_units) storage_cost(u);
    for (const auto& u : system_.res_units) res_cost(u);
    for (const auto& c : system_.candidates) {
        switch (c.kind) {
            case CandidateKind::Thermal: thermal_cost(c.thermal); break;
            case CandidateKind::Storage: storage_cost(c.storage); break;
            case CandidateKind::Res: res_cost(c.res); break;
        }
        // investment costs span the whole year and are never doubled
        if (c.invest_cost_annualized != 0.0)
            model_.add_objective_term(registry_.at(Role::Invest, c.id, -1),
                                      c.invest_cost_annualized);
    }
    for (const auto& b : system_.buses)
        for (int t = 0; t < horizon_; ++t)
            model_.add_objective_term(registry_.at(Role::LoadShed, b.id, t),
                                      cs * config_.load_shed_cost);
}

Assembled ModelBuilder::finish() {
    Assembled out;
    out.model = std::move(model_);
    out.registry = std::move(registry_);
    return out;
}

Assembled assemble(const domain::PowerSystem& system, const domain::ScenarioConfig& config,
                   const timegrid::TimeGrid& grid) {
    const auto report = domain::validate_system(system, config);
    if (!report.ok())
        throw std::invalid_argument("assemble: invalid system: " + report.violations[0].entity +
                                    ": " + report.violations[0].detail);

    ModelBuilder builder(system, config, grid);

    auto sorted_ids = [](const auto& units) {
        std::vector<int> order(units.size());
        for (std::size_t i = 0; i < units.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return units[a].id < units[b].id; });
        return order;
    };

    for (int i : sorted_ids(system.thermal_units)) builder.add_thermal_uc(system.thermal_units[i]);
    for (int i : sorted_ids(system.storage_units)) builder.add_storage(system.storage_units[i]);
    for (int i : sorted_ids(system.res_units)) builder.add_res(system.res_units[i]);
    for (int i : sorted_ids(system.candidates)) builder.add_candidate(system.candidates[i]);
    builder.add_network();
    builder.add_reserve_requirements();
    builder.add_res_target();
    builder.build_objective();
    return builder.finish();
}

}  // namespace gep::expansion
