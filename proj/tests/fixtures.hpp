// Shared test helpers: small systems, random model generators, LP
// optimality certificates.
#ifndef GEP_TESTS_FIXTURES_HPP
#define GEP_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gep/domain.hpp"
#include "gep/io.hpp"
#include "gep/solver.hpp"
#include "gep/timegrid.hpp"

namespace fixtures {

using gep::domain::Series;

inline Series flat(double v) { return Series(gep::domain::kHoursPerYear, v); }

// Simple day-periodic profile in [lo, hi]; every day is identical.
inline Series daily(double lo, double hi) {
    Series s(gep::domain::kHoursPerYear);
    for (int h = 0; h < gep::domain::kHoursPerYear; ++h) {
        const double x = std::sin(2.0 * 3.141592653589793 * (h % 24) / 24.0);
        s[h] = lo + (hi - lo) * 0.5 * (1.0 + x);
    }
    return s;
}

inline gep::domain::Bus make_bus(const std::string& id, double demand,
                                 const std::string& zone = "Z1") {
    gep::domain::Bus b;
    b.id = id;
    b.zone = zone;
    b.demand = flat(demand);
    return b;
}

inline gep::domain::ThermalUnit make_thermal(const std::string& id, const std::string& bus,
                                             double p_min, double p_max, double cost) {
    gep::domain::ThermalUnit u;
    u.id = id;
    u.bus = bus;
    u.p_min = p_min;
    u.p_max = p_max;
    u.startup_cap = p_max;
    u.shutdown_cap = p_max;
    u.ramp_up = p_max;
    u.ramp_down = p_max;
    u.cost_prod = cost;
    return u;
}

inline gep::domain::StorageUnit make_storage(const std::string& id, const std::string& bus,
                                             gep::domain::StorageKind kind, double p_dis,
                                             double p_ch, double e_max) {
    gep::domain::StorageUnit u;
    u.id = id;
    u.bus = bus;
    u.kind = kind;
    u.p_max_dis = p_dis;
    u.p_max_ch = kind == gep::domain::StorageKind::Dam ? 0.0 : p_ch;
    u.e_max = e_max;
    u.e_initial = e_max / 2.0;
    u.eta_ch = 0.9;
    u.eta_dis = 0.9;
    return u;
}

inline gep::domain::ResUnit make_res(const std::string& id, const std::string& bus, double p_max,
                                     const Series& cf,
                                     gep::domain::ResTechnology tech = gep::domain::ResTechnology::Pv) {
    gep::domain::ResUnit u;
    u.id = id;
    u.bus = bus;
    u.p_max = p_max;
    u.capacity_factor = cf;
    u.technology = tech;
    return u;
}

// Grid spanning the first `hours` hours of day 1; keeps expansion fixtures
// small without touching the physical 8760-hour data contract.
inline gep::timegrid::TimeGrid short_grid(int hours, double cost_scale = 1.0) {
    gep::timegrid::TimeGrid g;
    g.simulated_hours = hours;
    g.day_map.assign((hours + 23) / 24, 0);
    for (std::size_t d = 0; d < g.day_map.size(); ++d) g.day_map[d] = static_cast<int>(d) + 1;
    g.cost_scale = cost_scale;
    return g;
}

// Randomized mini system: <= 3 buses, <= 2 thermal, 1 storage, <= 2
// candidates, few enough commitment binaries for exhaustive enumeration.
inline gep::io::Scenario mini_system(std::mt19937& rng) {
    using namespace gep::domain;
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    gep::io::Scenario sc;
    sc.name = "mini";
    const int nbus = pick(1, 3);
    for (int i = 0; i < nbus; ++i) {
        auto b = make_bus("b" + std::to_string(i), 0.0, "Z" + std::to_string(i));
        b.demand = daily(uni(10.0, 30.0), uni(40.0, 80.0));
        sc.system.buses.push_back(std::move(b));
    }
    for (int i = 1; i < nbus; ++i) {
        Line l;
        l.id = "l" + std::to_string(i);
        l.from_bus = "b0";
        l.to_bus = "b" + std::to_string(i);
        l.susceptance = uni(1.0, 10.0);
        l.limit = uni(40.0, 120.0);
        l.is_tie_line = i == 2;
        sc.system.lines.push_back(std::move(l));
    }
    const int nth = pick(1, 2);
    for (int i = 0; i < nth; ++i) {
        auto u = make_thermal("g" + std::to_string(i), "b" + std::to_string(pick(0, nbus - 1)),
                              uni(5.0, 20.0), uni(60.0, 150.0), uni(20.0, 60.0));
        u.startup_cap = u.p_min + uni(0.0, 1.0) * (u.p_max - u.p_min);
        u.shutdown_cap = u.p_min + uni(0.0, 1.0) * (u.p_max - u.p_min);
        u.ramp_up = uni(20.0, 120.0);
        u.ramp_down = uni(20.0, 120.0);
        u.min_up = pick(1, 3);
        u.min_down = pick(1, 2);
        u.cost_startup = uni(0.0, 200.0);
        u.scr_eligible = pick(0, 1) == 1;
        u.tcr_eligible = pick(0, 1) == 1;
        u.initial_on = pick(0, 1) == 1;
        sc.system.thermal_units.push_back(std::move(u));
    }
    {
        const StorageKind kinds[] = {StorageKind::Battery, StorageKind::PumpDaily,
                                     StorageKind::PumpSeasonal, StorageKind::Dam};
        auto s = make_storage("s0", "b" + std::to_string(pick(0, nbus - 1)),
                              kinds[pick(0, 3)], uni(10.0, 40.0), uni(10.0, 40.0),
                              uni(50.0, 200.0));
        s.scr_eligible = pick(0, 1) == 1;
        s.tcr_eligible = s.kind != StorageKind::Battery && pick(0, 1) == 1;
        s.cost_charge = uni(1.0, 10.0);  // >= 1 so the default water incentive stays valid
        if (s.kind == StorageKind::Dam) s.inflow = flat(uni(0.0, 5.0));
        sc.system.storage_units.push_back(std::move(s));
    }
    if (pick(0, 1) == 1)
        sc.system.res_units.push_back(make_res(
            "r0", "b0", uni(10.0, 50.0), daily(0.0, uni(0.3, 1.0)),
            pick(0, 1) ? gep::domain::ResTechnology::Pv : gep::domain::ResTechnology::Wind));
    const int ncand = pick(0, 2);
    for (int i = 0; i < ncand; ++i) {
        CandidateUnit c;
        c.id = "c" + std::to_string(i);
        if (pick(0, 1) == 0) {
            c.kind = CandidateKind::Storage;
            c.storage = make_storage(c.id, "b0", StorageKind::Battery, uni(5.0, 20.0),
                                     uni(5.0, 20.0), uni(20.0, 80.0));
            c.storage.scr_eligible = pick(0, 1) == 1;
        } else {
            c.kind = CandidateKind::Res;
            c.res = make_res(c.id, "b" + std::to_string(nbus - 1), 0.0, daily(0.0, 0.8));
            c.invest_cap_max = uni(20.0, 100.0);
            c.counts_toward_res_target = true;
        }
        c.invest_cost_annualized = uni(10.0, 2000.0);
        sc.system.candidates.push_back(std::move(c));
    }
    // small requirements so eligible units can usually cover them
    if (pick(0, 1) == 1) {
        sc.system.reserves.scr_up = flat(uni(0.0, 3.0));
        sc.system.reserves.scr_down = flat(uni(0.0, 3.0));
    }
    sc.config.slack_bus = "b0";
    sc.config.load_shed_cost = 3000.0;
    return sc;
}

// Random bounded LP/MILP with a guaranteed feasible point: constraints are
// generated around a random interior point so most instances are feasible
// and bounded.
inline gep::milp::Model random_model(std::mt19937& rng, int max_binaries) {
    std::uniform_int_distribution<int> nvars(2, 8), nrows(1, 6), coef(-4, 4);
    std::uniform_real_distribution<double> cost(-10.0, 10.0), width(0.5, 10.0);
    gep::milp::Model m;
    const int n = nvars(rng);
    std::uniform_int_distribution<int> nbin(0, std::min(max_binaries, n));
    const int nb = nbin(rng);
    std::vector<double> point(n);
    for (int j = 0; j < n; ++j) {
        if (j < nb) {
            m.add_variable("b" + std::to_string(j), gep::milp::VarKind::Binary, 0.0, 1.0);
            point[j] = std::uniform_int_distribution<int>(0, 1)(rng);
        } else {
            const double lo = cost(rng);
            m.add_variable("x" + std::to_string(j), gep::milp::VarKind::Continuous, lo,
                           lo + width(rng));
            point[j] = lo + width(rng) / 3.0;
        }
        m.add_objective_term(j, cost(rng));
    }
    const int r = nrows(rng);
    for (int i = 0; i < r; ++i) {
        std::vector<std::pair<int, double>> terms;
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) {
            const int c = coef(rng);
            if (c == 0) continue;
            terms.emplace_back(j, static_cast<double>(c));
            lhs += c * point[j];
        }
        if (terms.empty()) continue;
        const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
        if (kind == 0)
            m.add_constraint("r" + std::to_string(i), std::move(terms),
                             gep::milp::Sense::LessEqual, lhs + width(rng));
        else if (kind == 1)
            m.add_constraint("r" + std::to_string(i), std::move(terms),
                             gep::milp::Sense::GreaterEqual, lhs - width(rng));
        else
            m.add_constraint("r" + std::to_string(i), std::move(terms), gep::milp::Sense::Equal,
                             lhs);
    }
    return m;
}

// Full optimality certificate for an LP solution with duals: primal
// feasibility, dual sign feasibility, complementary slackness and the
// duality gap. Returns the worst violation.
inline double lp_certificate(const gep::milp::Model& m, const gep::milp::Solution& s) {
    double worst = m.evaluate(s.values).max_violation;
    const auto& vars = m.variables();
    const int n = static_cast<int>(vars.size());
    std::vector<double> reduced(m.objective());
    for (std::size_t i = 0; i < m.constraints().size(); ++i) {
        const auto& c = m.constraints()[i];
        const double y = s.duals[i];
        if (c.sense == gep::milp::Sense::LessEqual) worst = std::max(worst, y);
        if (c.sense == gep::milp::Sense::GreaterEqual) worst = std::max(worst, -y);
        double act = 0.0;
        for (const auto& [j, a] : c.terms) {
            reduced[j] -= y * a;
            act += a * s.values[j];
        }
        // complementary slackness: inactive row -> zero dual
        if (c.sense != gep::milp::Sense::Equal)
            worst = std::max(worst, std::abs(y) * std::abs(act - c.rhs) /
                                        (1.0 + std::abs(c.rhs)));
    }
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < m.constraints().size(); ++i)
        dual_obj += s.duals[i] * m.constraints()[i].rhs;
    for (int j = 0; j < n; ++j) {
        const double d = reduced[j];
        // reduced costs must be absorbable by a bound
        if (d > 1e-7 && !std::isfinite(vars[j].lower)) worst = std::max(worst, d);
        if (d < -1e-7 && !std::isfinite(vars[j].upper)) worst = std::max(worst, -d);
        if (d > 0.0 && std::isfinite(vars[j].lower)) {
            dual_obj += d * vars[j].lower;
            worst = std::max(worst, d * (s.values[j] - vars[j].lower) /
                                        (1.0 + std::abs(vars[j].lower)));
        } else if (d < 0.0 && std::isfinite(vars[j].upper)) {
            dual_obj += d * vars[j].upper;
            worst = std::max(worst, -d * (vars[j].upper - s.values[j]) /
                                        (1.0 + std::abs(vars[j].upper)));
        }
    }
    dual_obj += m.objective_constant();
    worst = std::max(worst, std::abs(dual_obj - s.objective) / (1.0 + std::abs(s.objective)));
    return worst;
}

}  // namespace fixtures

#endif
