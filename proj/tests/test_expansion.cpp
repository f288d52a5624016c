#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "gep/expansion.hpp"
#include "gep/solver.hpp"

using namespace gep;
using namespace fixtures;
using expansion::Role;

namespace {

const milp::Constraint* find_row(const milp::Model& m, const std::string& name) {
    for (const auto& c : m.constraints())
        if (c.name == name) return &c;
    return nullptr;
}

double coeff(const milp::Constraint& c, int var) {
    for (const auto& [j, a] : c.terms)
        if (j == var) return a;
    return 0.0;
}

double obj_coeff(const milp::Model& m, int var) { return m.objective()[var]; }

}  // namespace

TEST_SUITE("expansion") {

TEST_CASE("empty system assembles to an empty model") {
    domain::PowerSystem sys;
    domain::ScenarioConfig cfg;
    const auto grid = timegrid::build_time_grid(domain::Compression::FullYear);
    const auto a = expansion::assemble(sys, cfg, grid);
    CHECK(a.model.num_variables() == 0);
    CHECK(a.model.num_constraints() == 0);
}

TEST_CASE("variable inventory for one thermal unit over two hours") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 50.0));
    auto g = make_thermal("g1", "b1", 10.0, 100.0, 30.0);
    g.scr_eligible = g.tcr_eligible = true;
    sys.thermal_units.push_back(g);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    // per hour: u,v,w,p^min + 4 reserve roles; per bus-hour: shed + angle
    CHECK(a.model.num_variables() == 2 * 8 + 2 * 2);
    CHECK(a.model.num_binaries() == 2);
    for (auto role : {Role::On, Role::Start, Role::Stop, Role::AboveMin, Role::ScrUp,
                      Role::ScrDown, Role::TcrUp, Role::TcrDown})
        for (int t = 0; t < 2; ++t) CHECK(a.registry.find(role, "g1", t).has_value());
    CHECK(a.registry.find(Role::LoadShed, "b1", 0).has_value());
    CHECK(a.registry.find(Role::Angle, "b1", 1).has_value());
}

TEST_CASE("start-up capability tightens the upward bound: worked 50 MW example") {
    // P^min=100, P^max=300, SU=150, min_up=2: in a start hour with the unit
    // on and no shut-down next hour, p^min + r_up <= (300-100) - (300-150) = 50
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 200.0));
    auto g = make_thermal("g1", "b1", 100.0, 300.0, 30.0);
    g.startup_cap = 150.0;
    g.shutdown_cap = 180.0;
    g.min_up = 2;
    g.scr_eligible = true;
    sys.thermal_units.push_back(g);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(3));
    const auto* row = find_row(a.model, "up(g1,1)");
    REQUIRE(row != nullptr);
    CHECK(row->sense == milp::Sense::LessEqual);
    CHECK(row->rhs == 0.0);
    CHECK(coeff(*row, a.registry.at(Role::AboveMin, "g1", 1)) == 1.0);
    CHECK(coeff(*row, a.registry.at(Role::ScrUp, "g1", 1)) == 1.0);
    CHECK(coeff(*row, a.registry.at(Role::On, "g1", 1)) == -200.0);
    CHECK(coeff(*row, a.registry.at(Role::Start, "g1", 1)) == 150.0);
    CHECK(coeff(*row, a.registry.at(Role::Stop, "g1", 2)) == 120.0);
    // substituting u=1, v=1, w_{t+1}=0 leaves 200 - 150 = 50 MW of headroom
    CHECK(200.0 - 150.0 == 50.0);
}

TEST_CASE("single-hour units get the separate start/stop bounds") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 50.0));
    sys.thermal_units.push_back(make_thermal("g1", "b1", 10.0, 100.0, 30.0));  // min_up = 1
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    CHECK(find_row(a.model, "upv(g1,0)") != nullptr);
    CHECK(find_row(a.model, "upw(g1,0)") != nullptr);
    CHECK(find_row(a.model, "up(g1,0)") == nullptr);
}

TEST_CASE("maintenance hours force the unit off") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 0.0));
    auto g = make_thermal("g1", "b1", 10.0, 100.0, 30.0);
    g.availability = flat(1.0);
    g.availability[1] = 0.0;
    sys.thermal_units.push_back(g);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    const auto* row = find_row(a.model, "avail(g1,1)");
    REQUIRE(row != nullptr);
    CHECK(row->rhs == 0.0);
    CHECK(coeff(*row, a.registry.at(Role::On, "g1", 1)) == 1.0);
    CHECK(find_row(a.model, "avail(g1,0)")->rhs == 1.0);
}

TEST_CASE("an off unit can neither produce nor carry reserve") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 0.0));
    auto g = make_thermal("g1", "b1", 10.0, 100.0, 30.0);
    g.availability = flat(0.0);  // never allowed on
    g.scr_eligible = true;
    sys.thermal_units.push_back(g);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    auto m = a.model;
    // reward everything the unit could offer; all must still be zero
    for (auto role : {Role::AboveMin, Role::ScrUp, Role::ScrDown})
        for (int t = 0; t < 2; ++t) m.add_objective_term(a.registry.at(role, "g1", t), -1.0);
    const auto s = solver::solve_milp(m);
    REQUIRE(s.status == milp::SolveStatus::Optimal);
    for (auto role : {Role::On, Role::AboveMin, Role::ScrUp, Role::ScrDown})
        for (int t = 0; t < 2; ++t)
            CHECK(s.values[a.registry.at(role, "g1", t)] == doctest::Approx(0.0));
}

TEST_CASE("storage energy balance: battery charge example") {
    // eta_ch=0.9, e_{t-1}=10, p^ch=2 for one hour -> e_t = 11.8
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    auto s = make_storage("s1", "b1", domain::StorageKind::Battery, 10.0, 10.0, 40.0);
    s.e_initial = 10.0;
    sys.storage_units.push_back(s);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    const auto* row = find_row(a.model, "lvl(s1,1)");
    REQUIRE(row != nullptr);
    CHECK(coeff(*row, a.registry.at(Role::Level, "s1", 1)) == 1.0);
    CHECK(coeff(*row, a.registry.at(Role::Level, "s1", 0)) == -1.0);
    CHECK(coeff(*row, a.registry.at(Role::Charge, "s1", 1)) == doctest::Approx(-0.9));
    CHECK(coeff(*row, a.registry.at(Role::Discharge, "s1", 1)) == doctest::Approx(1.0 / 0.9));
    // first hour starts from E_0 on the right-hand side
    const auto* first = find_row(a.model, "lvl(s1,0)");
    REQUIRE(first != nullptr);
    CHECK(first->rhs == 10.0);
    // e_t = 10 + 0.9*2 = 11.8 when charging 2 MW from idle
    CHECK(10.0 + 0.9 * 2.0 == doctest::Approx(11.8));
}

TEST_CASE("idle pumped storage can back up-reserve with full discharge capacity") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    auto s = make_storage("s1", "b1", domain::StorageKind::PumpSeasonal, 25.0, 20.0, 100.0);
    s.scr_eligible = true;
    sys.storage_units.push_back(s);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(1));
    const auto* row = find_row(a.model, "rescapup(s1,0)");
    REQUIRE(row != nullptr);
    CHECK(row->sense == milp::Sense::LessEqual);
    CHECK(row->rhs == 25.0);  // with p^dis = p^ch = 0 the reserve may use all of it
    CHECK(coeff(*row, a.registry.at(Role::Discharge, "s1", 0)) == 1.0);
    CHECK(coeff(*row, a.registry.at(Role::Charge, "s1", 0)) == -1.0);
    CHECK(coeff(*row, a.registry.at(Role::ScrUp, "s1", 0)) == 1.0);
}

TEST_CASE("dams provide downward reserve only while producing") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    auto s = make_storage("s1", "b1", domain::StorageKind::Dam, 30.0, 0.0, 500.0);
    s.scr_eligible = true;
    s.tcr_eligible = true;
    s.inflow = flat(1.0);
    sys.storage_units.push_back(s);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(1));
    const auto* row = find_row(a.model, "damdn(s1,0)");
    REQUIRE(row != nullptr);
    CHECK(row->sense == milp::Sense::GreaterEqual);
    CHECK(row->rhs == 0.0);
    CHECK(coeff(*row, a.registry.at(Role::Discharge, "s1", 0)) == 1.0);
    CHECK(coeff(*row, a.registry.at(Role::ScrDown, "s1", 0)) == -1.0);
    CHECK(coeff(*row, a.registry.at(Role::TcrDown, "s1", 0)) == -1.0);
    // idle (p^dis = 0) forces r_down <= 0, hence 0
    CHECK(find_row(a.model, "rescapdn(s1,0)") == nullptr);
    CHECK(find_row(a.model, "damcap(s1,0)") != nullptr);
}

TEST_CASE("res production is bounded by the profile and free to curtail") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    auto cf = flat(0.5);
    cf[1] = 0.0;
    sys.res_units.push_back(make_res("r1", "b1", 100.0, cf));
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    const auto& v0 = a.model.variables()[a.registry.at(Role::ResProd, "r1", 0)];
    CHECK(v0.lower == 0.0);
    CHECK(v0.upper == 50.0);  // CF 0.5 x 100 MW
    const auto& v1 = a.model.variables()[a.registry.at(Role::ResProd, "r1", 1)];
    CHECK(v1.upper == 0.0);   // CF 0 pins production
    CHECK(obj_coeff(a.model, v0.id) == 0.0);  // curtailment is free
}

TEST_CASE("thermal candidate only runs once built") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 50.0));
    sys.thermal_units.push_back(make_thermal("g0", "b1", 0.0, 100.0, 30.0));
    domain::CandidateUnit c;
    c.id = "c1";
    c.kind = domain::CandidateKind::Thermal;
    c.thermal = make_thermal("c1", "b1", 10.0, 80.0, 10.0);
    c.invest_cost_annualized = 1e9;  // never worth it
    sys.candidates.push_back(c);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(3));
    const int inv = a.registry.at(Role::Invest, "c1", -1);
    const auto* link = find_row(a.model, "link(c1,0)");
    REQUIRE(link != nullptr);
    CHECK(coeff(*link, a.registry.at(Role::On, "c1", 0)) == 1.0);
    CHECK(coeff(*link, inv) == -1.0);
    const auto s = solver::solve_milp(a.model);
    REQUIRE(s.status == milp::SolveStatus::Optimal);
    CHECK(s.values[inv] == doctest::Approx(0.0));
    for (int t = 0; t < 3; ++t) {
        CHECK(s.values[a.registry.at(Role::On, "c1", t)] == doctest::Approx(0.0));
        CHECK(s.values[a.registry.at(Role::AboveMin, "c1", t)] == doctest::Approx(0.0));
    }
}

TEST_CASE("res candidate capacity links production: 120 MW at CF 0.25 allows 30 MW") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 30.0));
    domain::CandidateUnit c;
    c.id = "c1";
    c.kind = domain::CandidateKind::Res;
    c.res = make_res("c1", "b1", 0.0, flat(0.25));
    c.invest_cap_max = 200.0;
    c.invest_cost_annualized = 100.0;
    sys.candidates.push_back(c);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(1));
    const int inv = a.registry.at(Role::Invest, "c1", -1);
    CHECK(a.model.variables()[inv].kind == milp::VarKind::Continuous);
    CHECK(a.model.variables()[inv].upper == 200.0);
    const auto* cap = find_row(a.model, "prodcap(c1,0)");
    REQUIRE(cap != nullptr);
    CHECK(coeff(*cap, a.registry.at(Role::ResProd, "c1", 0)) == 1.0);
    CHECK(coeff(*cap, inv) == -0.25);  // u^inv = 120 -> bound 30 MW
}

TEST_CASE("unbuilt storage candidate has no capability at all") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    sys.thermal_units.push_back(make_thermal("g0", "b1", 0.0, 50.0, 20.0));
    domain::CandidateUnit c;
    c.id = "c1";
    c.kind = domain::CandidateKind::Storage;
    c.storage = make_storage("c1", "b1", domain::StorageKind::Battery, 10.0, 10.0, 40.0);
    c.storage.scr_eligible = true;
    c.invest_cost_annualized = 1e9;
    sys.candidates.push_back(c);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(2));
    auto m = a.model;
    for (auto role : {Role::ScrUp, Role::ScrDown, Role::Discharge})
        for (int t = 0; t < 2; ++t) m.add_objective_term(a.registry.at(role, "c1", t), -1.0);
    const auto s = solver::solve_milp(m);
    REQUIRE(s.status == milp::SolveStatus::Optimal);
    CHECK(s.values[a.registry.at(Role::Invest, "c1", -1)] == doctest::Approx(0.0));
    for (auto role : {Role::Discharge, Role::Charge, Role::Level, Role::ScrUp, Role::ScrDown})
        for (int t = 0; t < 2; ++t)
            CHECK(s.values[a.registry.at(role, "c1", t)] == doctest::Approx(0.0));
}

TEST_CASE("pv investment raises the tertiary requirement") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    auto g = make_thermal("g0", "b1", 0.0, 5000.0, 20.0);
    g.tcr_eligible = true;
    sys.thermal_units.push_back(g);
    domain::CandidateUnit c;
    c.id = "pv";
    c.kind = domain::CandidateKind::Res;
    c.res = make_res("pv", "b1", 0.0, flat(0.2));
    c.invest_cap_max = 4000.0;
    c.invest_cost_annualized = 1.0;
    sys.candidates.push_back(c);
    sys.reserves.tcr_up = flat(10.0);
    sys.reserves.a_pv_up = 26.0 / 3254.0;
    sys.reserves.a_pv_down = 28.0 / 3254.0;
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(1));
    const int inv = a.registry.at(Role::Invest, "pv", -1);
    const auto* row = find_row(a.model, "tcr_up(sys,0)");
    REQUIRE(row != nullptr);
    CHECK(row->sense == milp::Sense::GreaterEqual);
    CHECK(row->rhs == 10.0);
    CHECK(coeff(*row, inv) == doctest::Approx(-26.0 / 3254.0));
    // building 3254 MW adds exactly 26 MW to the requirement
    CHECK(3254.0 * (26.0 / 3254.0) == doctest::Approx(26.0));
    const auto* down = find_row(a.model, "tcr_dn(sys,0)");
    CHECK(coeff(*down, inv) == doctest::Approx(-28.0 / 3254.0));
    // without the adder the requirement is just the input series
    CHECK(coeff(*row, a.registry.at(Role::TcrUp, "g0", 0)) == 1.0);
}

TEST_CASE("dc power flow: 2-bus line with B = 10 pu") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 100.0));
    sys.buses.push_back(make_bus("b2", 0.0));
    sys.thermal_units.push_back(make_thermal("g0", "b1", 0.0, 300.0, 20.0));
    domain::Line l;
    l.id = "l1";
    l.from_bus = "b1";
    l.to_bus = "b2";
    l.susceptance = 10.0;
    l.limit = 500.0;
    sys.lines.push_back(l);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    const auto a = expansion::assemble(sys, cfg, short_grid(1));
    const auto* row = find_row(a.model, "flow(l1,0)");
    REQUIRE(row != nullptr);
    const double b = 100.0 * 10.0;  // system base x susceptance
    CHECK(coeff(*row, a.registry.at(Role::Flow, "l1", 0)) == 1.0);
    CHECK(coeff(*row, a.registry.at(Role::Angle, "b1", 0)) == -b);
    CHECK(coeff(*row, a.registry.at(Role::Angle, "b2", 0)) == b);
    // delta = (0.1, 0) -> flow 100 MW = 1.0 pu toward bus 2
    CHECK(b * 0.1 == doctest::Approx(100.0));
    // the slack angle is pinned to zero
    const auto& slack = a.model.variables()[a.registry.at(Role::Angle, "b1", 0)];
    CHECK(slack.lower == 0.0);
    CHECK(slack.upper == 0.0);
    // load shedding is capped by that hour's demand
    CHECK(a.model.variables()[a.registry.at(Role::LoadShed, "b1", 0)].upper == 100.0);
    CHECK(a.model.variables()[a.registry.at(Role::LoadShed, "b2", 0)].upper == 0.0);
}

TEST_CASE("disconnected bus is rejected") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 10.0));
    sys.buses.push_back(make_bus("b2", 10.0));
    sys.thermal_units.push_back(make_thermal("g0", "b1", 0.0, 50.0, 20.0));
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    CHECK_THROWS_WITH_AS(expansion::assemble(sys, cfg, short_grid(1)),
                         doctest::Contains("disconnected"), std::invalid_argument);
}

TEST_CASE("objective scaling under compression") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 50.0));
    auto g = make_thermal("g1", "b1", 10.0, 100.0, 50.0);
    g.cost_startup = 7.0;
    sys.thermal_units.push_back(g);
    domain::CandidateUnit c;
    c.id = "c1";
    c.kind = domain::CandidateKind::Res;
    c.res = make_res("c1", "b1", 0.0, flat(0.5));
    c.invest_cap_max = 10.0;
    c.invest_cost_annualized = 1e6;
    sys.candidates.push_back(c);
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";
    cfg.load_shed_cost = 3000.0;
    const auto a = expansion::assemble(sys, cfg, short_grid(1, 2.0));
    // operating terms are doubled: C^prod 50 -> 100 on p^min, 500 on u
    CHECK(obj_coeff(a.model, a.registry.at(Role::AboveMin, "g1", 0)) == 100.0);
    CHECK(obj_coeff(a.model, a.registry.at(Role::On, "g1", 0)) == 2.0 * 50.0 * 10.0);
    CHECK(obj_coeff(a.model, a.registry.at(Role::Start, "g1", 0)) == 14.0);
    CHECK(obj_coeff(a.model, a.registry.at(Role::LoadShed, "b1", 0)) == 6000.0);
    // investment costs are annual already and must not be doubled
    CHECK(obj_coeff(a.model, a.registry.at(Role::Invest, "c1", -1)) == 1e6);
}

TEST_CASE("res target accounting") {
    domain::PowerSystem sys;
    sys.buses.push_back(make_bus("b1", 50.0));
    sys.thermal_units.push_back(make_thermal("g1", "b1", 0.0, 200.0, 30.0));
    sys.res_units.push_back(make_res("pv1", "b1", 10.0, flat(0.5)));
    sys.res_units.push_back(
        make_res("ror1", "b1", 10.0, flat(0.5), domain::ResTechnology::RunOfRiver));
    domain::ScenarioConfig cfg;
    cfg.slack_bus = "b1";

    SUBCASE("no target, no row") {
        const auto a = expansion::assemble(sys, cfg, short_grid(2, 2.0));
        CHECK(find_row(a.model, "restarget") == nullptr);
    }
    SUBCASE("target row with cost-scale credit, run-of-river excluded") {
        cfg.res_target_energy = 9e6;  // 9 TWh
        const auto a = expansion::assemble(sys, cfg, short_grid(2, 2.0));
        const auto* row = find_row(a.model, "restarget");
        REQUIRE(row != nullptr);
        CHECK(row->sense == milp::Sense::GreaterEqual);
        CHECK(row->rhs == 9e6);
        // 5 MWh in every simulated hour earns 2 x 5 per hour
        CHECK(coeff(*row, a.registry.at(Role::ResProd, "pv1", 0)) == 2.0);
        CHECK(coeff(*row, a.registry.at(Role::ResProd, "ror1", 0)) == 0.0);
    }
}

TEST_CASE("assembly is deterministic") {
    std::mt19937 rng(41);
    const auto sc = mini_system(rng);
    const auto grid = short_grid(4);
    const auto a = expansion::assemble(sc.system, sc.config, grid);
    const auto b = expansion::assemble(sc.system, sc.config, grid);
    std::ostringstream sa, sb;
    milp::write_mps(a.model, sa);
    milp::write_mps(b.model, sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("solved mini systems satisfy the structural invariants") {
    std::mt19937 rng(97);
    int solved = 0;
    for (int i = 0; i < 12; ++i) {
        const auto sc = mini_system(rng);
        const auto grid = short_grid(4);
        const auto a = expansion::assemble(sc.system, sc.config, grid);
        const auto s = solver::solve_milp(a.model);
        if (s.status != milp::SolveStatus::Optimal) continue;
        ++solved;
        CHECK(a.model.evaluate(s.values).max_violation <= 1e-6);
        // storage periodicity: final level equals the scaled start level
        for (const auto& u : sc.system.storage_units) {
            const double bs = timegrid::storage_scaling(grid, u).bound_scale;
            CHECK(s.values[a.registry.at(Role::Level, u.id, 3)] ==
                  doctest::Approx(u.e_initial * bs).epsilon(1e-6));
        }
        // nodal conservation including flows, per bus
        for (const auto& b : sc.system.buses)
            for (int t = 0; t < 4; ++t) {
                double net = s.values[a.registry.at(Role::LoadShed, b.id, t)];
                for (const auto& l : sc.system.lines) {
                    if (l.from_bus == b.id) net += s.values[a.registry.at(Role::Flow, l.id, t)];
                    if (l.to_bus == b.id) net -= s.values[a.registry.at(Role::Flow, l.id, t)];
                }
                for (const auto& u : sc.system.thermal_units)
                    if (u.bus == b.id)
                        net += u.p_min * s.values[a.registry.at(Role::On, u.id, t)] +
                               s.values[a.registry.at(Role::AboveMin, u.id, t)];
                for (const auto& u : sc.system.storage_units)
                    if (u.bus == b.id)
                        net += s.values[a.registry.at(Role::Discharge, u.id, t)] -
                               s.values[a.registry.at(Role::Charge, u.id, t)];
                for (const auto& u : sc.system.res_units)
                    if (u.bus == b.id) net += s.values[a.registry.at(Role::ResProd, u.id, t)];
                for (const auto& c : sc.system.candidates) {
                    if (c.kind == domain::CandidateKind::Storage && c.storage.bus == b.id)
                        net += s.values[a.registry.at(Role::Discharge, c.id, t)] -
                               s.values[a.registry.at(Role::Charge, c.id, t)];
                    if (c.kind == domain::CandidateKind::Res && c.res.bus == b.id)
                        net += s.values[a.registry.at(Role::ResProd, c.id, t)];
                }
                const double demand = b.demand[grid.physical_hour(t)];
                CHECK(net == doctest::Approx(demand).epsilon(1e-6));
            }
    }
    CHECK(solved >= 6);
}

}  // TEST_SUITE
