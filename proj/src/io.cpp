#include "gep/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gep::io {

std::string format_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::runtime_error(where + ": " + what);
}

double parse_double(const std::string& where, const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(where, "expected a number, got '" + s + "'");
    return v;
}

int parse_int(const std::string& where, const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(where, "expected an integer, got '" + s + "'");
    return v;
}

bool parse_bool(const std::string& where, const std::string& s) {
    if (s == "0" || s == "false") return false;
    if (s == "1" || s == "true") return true;
    fail(where, "expected 0/1, got '" + s + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Header-addressed CSV table; every cell access knows its file and line.
class Table {
public:
    Table(const fs::path& path) : path_(path.string()) {
        std::ifstream in(path);
        if (!in) fail(path_, "cannot open");
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line == "\r") continue;
            if (header_.empty()) {
                header_ = split_csv(line);
                for (std::size_t i = 0; i < header_.size(); ++i) col_[header_[i]] = i;
            } else {
                auto cells = split_csv(line);
                if (cells.size() != header_.size())
                    fail(path_ + ":" + std::to_string(line_no),
                         "expected " + std::to_string(header_.size()) + " cells, got " +
                             std::to_string(cells.size()));
                rows_.push_back(std::move(cells));
                lines_.push_back(line_no);
            }
        }
        if (header_.empty()) fail(path_, "missing header line");
    }

    std::size_t size() const { return rows_.size(); }

    std::string where(std::size_t row) const {
        return path_ + ":" + std::to_string(lines_[row]);
    }

    const std::string& cell(std::size_t row, const std::string& col) const {
        auto it = col_.find(col);
        if (it == col_.end()) fail(path_, "missing column '" + col + "'");
        return rows_[row][it->second];
    }

    double num(std::size_t row, const std::string& col) const {
        return parse_double(where(row) + " (" + col + ")", cell(row, col));
    }
    int integer(std::size_t row, const std::string& col) const {
        return parse_int(where(row) + " (" + col + ")", cell(row, col));
    }
    bool flag(std::size_t row, const std::string& col) const {
        return parse_bool(where(row) + " (" + col + ")", cell(row, col));
    }

private:
    std::string path_;
    std::vector<std::string> header_;
    std::unordered_map<std::string, std::size_t> col_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<int> lines_;
};

domain::Series load_series(const fs::path& path, bool required) {
    if (!fs::exists(path)) {
        if (required) fail(path.string(), "required series file is missing");
        return {};
    }
    std::ifstream in(path);
    if (!in) fail(path.string(), "cannot open");
    domain::Series out;
    out.reserve(domain::kHoursPerYear);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_double(path.string() + ":" + std::to_string(line_no), line));
    }
    if (out.size() != static_cast<std::size_t>(domain::kHoursPerYear))
        fail(path.string(), "expected " + std::to_string(domain::kHoursPerYear) +
                                " values, got " + std::to_string(out.size()));
    return out;
}

void save_series(const fs::path& path, const domain::Series& s) {
    if (s.empty()) return;  // defaults are not materialized
    std::ofstream out(path);
    if (!out) fail(path.string(), "cannot open for writing");
    for (double v : s) out << format_number(v) << '\n';
}

domain::ThermalUnit read_thermal(const Table& t, std::size_t r, const std::string& id) {
    domain::ThermalUnit u;
    u.id = id;
    u.bus = t.cell(r, "bus");
    u.technology = t.cell(r, "technology");
    u.p_min = t.num(r, "p_min");
    u.p_max = t.num(r, "p_max");
    u.startup_cap = t.num(r, "startup_cap");
    u.shutdown_cap = t.num(r, "shutdown_cap");
    u.ramp_up = t.num(r, "ramp_up");
    u.ramp_down = t.num(r, "ramp_down");
    u.min_up = t.integer(r, "min_up");
    u.min_down = t.integer(r, "min_down");
    u.cost_prod = t.num(r, "cost_prod");
    u.cost_startup = t.num(r, "cost_startup");
    u.scr_eligible = t.flag(r, "scr_eligible");
    u.tcr_eligible = t.flag(r, "tcr_eligible");
    u.initial_on = t.flag(r, "initial_on");
    return u;
}

domain::StorageUnit read_storage(const Table& t, std::size_t r, const std::string& id,
                                 const std::string& kind_col) {
    domain::StorageUnit u;
    u.id = id;
    u.bus = t.cell(r, "bus");
    u.kind = domain::storage_kind_from_string(t.cell(r, kind_col));
    u.p_max_dis = t.num(r, "p_max_dis");
    u.p_max_ch = t.num(r, "p_max_ch");
    u.e_min = t.num(r, "e_min");
    u.e_max = t.num(r, "e_max");
    u.e_initial = t.num(r, "e_initial");
    u.eta_ch = t.num(r, "eta_ch");
    u.eta_dis = t.num(r, "eta_dis");
    u.cost_charge = t.num(r, "cost_charge");
    u.scr_eligible = t.flag(r, "scr_eligible");
    u.tcr_eligible = t.flag(r, "tcr_eligible");
    return u;
}

domain::ResUnit read_res(const Table& t, std::size_t r, const std::string& id) {
    domain::ResUnit u;
    u.id = id;
    u.bus = t.cell(r, "bus");
    u.technology = domain::res_technology_from_string(t.cell(r, "technology"));
    u.p_max = t.num(r, "p_max");
    u.cost_prod = t.num(r, "cost_prod");
    return u;
}

std::string bool_str(bool b) { return b ? "1" : "0"; }

}  // namespace

Scenario load_scenario(const std::string& dir) {
    const fs::path root(dir);
    if (!fs::is_directory(root)) fail(dir, "not a scenario directory");

    Scenario sc;
    {
        const fs::path mf = root / "manifest.json";
        std::ifstream in(mf);
        if (!in) fail(mf.string(), "cannot open");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            fail(mf.string(), e.what());
        }
        sc.name = j.at("name").get<std::string>();
        auto& cfg = sc.config;
        cfg.load_shed_cost = j.at("load_shed_cost").get<double>();
        if (j.contains("res_target_energy_mwh") && !j["res_target_energy_mwh"].is_null())
            cfg.res_target_energy = j["res_target_energy_mwh"].get<double>();
        cfg.water_incentive = j.at("water_incentive").get<double>();
        cfg.slack_bus = j.at("slack_bus").get<std::string>();
        const auto comp = j.at("compression").get<std::string>();
        if (comp == "full_year") cfg.compression = domain::Compression::FullYear;
        else if (comp == "every_other_day") cfg.compression = domain::Compression::EveryOtherDay;
        else fail(mf.string(), "unknown compression '" + comp + "'");
        const auto side = j.value("storage_cost_side", std::string("charge"));
        if (side == "charge") cfg.storage_cost_side = domain::StorageCostSide::Charge;
        else if (side == "discharge") cfg.storage_cost_side = domain::StorageCostSide::Discharge;
        else fail(mf.string(), "unknown storage_cost_side '" + side + "'");
        cfg.system_base_mva = j.value("system_base_mva", 100.0);
        if (j.contains("reserves")) {
            const auto& r = j["reserves"];
            sc.system.reserves.a_wind_up = r.value("a_wind_up", 0.0);
            sc.system.reserves.a_wind_down = r.value("a_wind_down", 0.0);
            sc.system.reserves.a_pv_up = r.value("a_pv_up", 0.0);
            sc.system.reserves.a_pv_down = r.value("a_pv_down", 0.0);
        }
    }

    auto& sys = sc.system;
    const fs::path sd = root / "series";

    {
        Table t(root / "buses.csv");
        for (std::size_t r = 0; r < t.size(); ++r) {
            domain::Bus b;
            b.id = t.cell(r, "id");
            b.zone = t.cell(r, "zone");
            b.demand = load_series(sd / ("demand_" + b.id + ".csv"), true);
            b.fixed_injection = load_series(sd / ("fixed_injection_" + b.id + ".csv"), false);
            sys.buses.push_back(std::move(b));
        }
    }
    if (fs::exists(root / "lines.csv")) {
        Table t(root / "lines.csv");
        for (std::size_t r = 0; r < t.size(); ++r) {
            domain::Line l;
            l.id = t.cell(r, "id");
            l.from_bus = t.cell(r, "from_bus");
            l.to_bus = t.cell(r, "to_bus");
            l.susceptance = t.num(r, "susceptance");
            l.limit = t.num(r, "limit");
            l.is_tie_line = t.flag(r, "is_tie_line");
            sys.lines.push_back(std::move(l));
        }
    }
    if (fs::exists(root / "thermal_units.csv")) {
        Table t(root / "thermal_units.csv");
        for (std::size_t r = 0; r < t.size(); ++r) {
            auto u = read_thermal(t, r, t.cell(r, "id"));
            u.availability = load_series(sd / ("availability_" + u.id + ".csv"), false);
            sys.thermal_units.push_back(std::move(u));
        }
    }
    if (fs::exists(root / "storage_units.csv")) {
        Table t(root / "storage_units.csv");
        for (std::size_t r = 0; r < t.size(); ++r) {
            auto u = read_storage(t, r, t.cell(r, "id"), "kind");
            u.inflow = load_series(sd / ("inflow_" + u.id + ".csv"), false);
            sys.storage_units.push_back(std::move(u));
        }
    }
    if (fs::exists(root / "res_units.csv")) {
        Table t(root / "res_units.csv");
        for (std::size_t r = 0; r < t.size(); ++r) {
            auto u = read_res(t, r, t.cell(r, "id"));
            u.capacity_factor = load_series(sd / ("cf_" + u.id + ".csv"), true);
            sys.res_units.push_back(std::move(u));
        }
    }
    if (fs::exists(root / "candidates.csv")) {
        Table t(root / "candidates.csv");
        for (std::size_t r = 0; r < t.size(); ++r) {
            domain::CandidateUnit c;
            c.id = t.cell(r, "id");
            c.kind = domain::candidate_kind_from_string(t.cell(r, "kind"));
            c.invest_cost_annualized = t.num(r, "invest_cost_annualized");
            c.counts_toward_res_target = t.flag(r, "counts_toward_res_target");
            switch (c.kind) {
                case domain::CandidateKind::Thermal:
                    c.thermal = read_thermal(t, r, c.id);
                    c.thermal.availability =
                        load_series(sd / ("availability_" + c.id + ".csv"), false);
                    break;
                case domain::CandidateKind::Storage:
                    c.storage = read_storage(t, r, c.id, "storage_kind");
                    c.storage.inflow = load_series(sd / ("inflow_" + c.id + ".csv"), false);
                    break;
                case domain::CandidateKind::Res:
                    c.res = read_res(t, r, c.id);
                    c.res.capacity_factor = load_series(sd / ("cf_" + c.id + ".csv"), true);
                    c.invest_cap_max = t.num(r, "invest_cap_max");
                    break;
            }
            sys.candidates.push_back(std::move(c));
        }
    }

    sys.reserves.scr_up = load_series(sd / "scr_up.csv", false);
    sys.reserves.scr_down = load_series(sd / "scr_down.csv", false);
    sys.reserves.tcr_up = load_series(sd / "tcr_up.csv", false);
    sys.reserves.tcr_down = load_series(sd / "tcr_down.csv", false);
    return sc;
}

void save_scenario(const Scenario& sc, const std::string& dir) {
    const fs::path root(dir);
    fs::create_directories(root / "series");
    const auto& sys = sc.system;
    const auto& cfg = sc.config;

    {
        json j;
        j["name"] = sc.name;
        j["load_shed_cost"] = cfg.load_shed_cost;
        if (cfg.res_target_energy) j["res_target_energy_mwh"] = *cfg.res_target_energy;
        else j["res_target_energy_mwh"] = nullptr;
        j["water_incentive"] = cfg.water_incentive;
        j["slack_bus"] = cfg.slack_bus;
        j["compression"] = cfg.compression == domain::Compression::FullYear ? "full_year"
                                                                            : "every_other_day";
        j["storage_cost_side"] =
            cfg.storage_cost_side == domain::StorageCostSide::Charge ? "charge" : "discharge";
        j["system_base_mva"] = cfg.system_base_mva;
        j["reserves"] = {{"a_wind_up", sys.reserves.a_wind_up},
                         {"a_wind_down", sys.reserves.a_wind_down},
                         {"a_pv_up", sys.reserves.a_pv_up},
                         {"a_pv_down", sys.reserves.a_pv_down}};
        std::ofstream out(root / "manifest.json");
        out << j.dump(2) << '\n';
    }

    auto open_csv = [&](const char* name, const char* header) {
        std::ofstream out(root / name);
        out << header << '\n';
        return out;
    };

    {
        auto out = open_csv("buses.csv", "id,zone");
        for (const auto& b : sys.buses) {
            out << b.id << ',' << b.zone << '\n';
            save_series(root / "series" / ("demand_" + b.id + ".csv"), b.demand);
            save_series(root / "series" / ("fixed_injection_" + b.id + ".csv"),
                        b.fixed_injection);
        }
    }
    if (!sys.lines.empty()) {
        auto out = open_csv("lines.csv", "id,from_bus,to_bus,susceptance,limit,is_tie_line");
        for (const auto& l : sys.lines)
            out << l.id << ',' << l.from_bus << ',' << l.to_bus << ','
                << format_number(l.susceptance) << ',' << format_number(l.limit) << ','
                << bool_str(l.is_tie_line) << '\n';
    }

    auto thermal_cells = [&](std::ostream& out, const domain::ThermalUnit& u) {
        out << u.bus << ',' << u.technology << ',' << format_number(u.p_min) << ','
            << format_number(u.p_max) << ',' << format_number(u.startup_cap) << ','
            << format_number(u.shutdown_cap) << ',' << format_number(u.ramp_up) << ','
            << format_number(u.ramp_down) << ',' << u.min_up << ',' << u.min_down << ','
            << format_number(u.cost_prod) << ',' << format_number(u.cost_startup) << ','
            << bool_str(u.scr_eligible) << ',' << bool_str(u.tcr_eligible) << ','
            << bool_str(u.initial_on);
    };
    // bus is shared with the thermal columns; kind comes first so the same
    // cell block serves both storage_units.csv and candidates.csv
    auto storage_cells = [&](std::ostream& out, const domain::StorageUnit& u) {
        out << domain::to_string(u.kind) << ',' << format_number(u.p_max_dis)
            << ',' << format_number(u.p_max_ch) << ',' << format_number(u.e_min) << ','
            << format_number(u.e_max) << ',' << format_number(u.e_initial) << ','
            << format_number(u.eta_ch) << ',' << format_number(u.eta_dis) << ','
            << format_number(u.cost_charge) << ',' << bool_str(u.scr_eligible) << ','
            << bool_str(u.tcr_eligible);
    };
    auto res_cells = [&](std::ostream& out, const domain::ResUnit& u) {
        out << u.bus << ',' << domain::to_string(u.technology) << ',' << format_number(u.p_max)
            << ',' << format_number(u.cost_prod);
    };

    static const char* kThermalHeader =
        "bus,technology,p_min,p_max,startup_cap,shutdown_cap,ramp_up,ramp_down,min_up,min_down,"
        "cost_prod,cost_startup,scr_eligible,tcr_eligible,initial_on";
    static const char* kStorageHeader =
        "p_max_dis,p_max_ch,e_min,e_max,e_initial,eta_ch,eta_dis,cost_charge,scr_eligible,"
        "tcr_eligible";

    if (!sys.thermal_units.empty()) {
        auto out = open_csv("thermal_units.csv", ("id," + std::string(kThermalHeader)).c_str());
        for (const auto& u : sys.thermal_units) {
            out << u.id << ',';
            thermal_cells(out, u);
            out << '\n';
            save_series(root / "series" / ("availability_" + u.id + ".csv"), u.availability);
        }
    }
    if (!sys.storage_units.empty()) {
        auto out = open_csv("storage_units.csv",
                            ("id,bus,kind," + std::string(kStorageHeader)).c_str());
        for (const auto& u : sys.storage_units) {
            out << u.id << ',' << u.bus << ',';
            storage_cells(out, u);
            out << '\n';
            save_series(root / "series" / ("inflow_" + u.id + ".csv"), u.inflow);
        }
    }
    if (!sys.res_units.empty()) {
        auto out = open_csv("res_units.csv", "id,bus,technology,p_max,cost_prod");
        for (const auto& u : sys.res_units) {
            out << u.id << ',';
            res_cells(out, u);
            out << '\n';
            save_series(root / "series" / ("cf_" + u.id + ".csv"), u.capacity_factor);
        }
    }
    if (!sys.candidates.empty()) {
        // one wide table: the candidate kind selects which columns are live;
        // the rest hold the payload struct defaults so the file stays square
        auto out = open_csv(
            "candidates.csv",
            ("id,kind," + std::string(kThermalHeader) + ",storage_kind," +
             std::string(kStorageHeader) +
             ",invest_cost_annualized,invest_cap_max,counts_toward_res_target")
                .c_str());
        for (const auto& c : sys.candidates) {
            out << c.id << ',' << domain::to_string(c.kind) << ',';
            domain::ThermalUnit th = c.thermal;
            domain::StorageUnit st = c.storage;
            domain::ResUnit re = c.res;
            // payload bus/technology share the thermal columns
            if (c.kind == domain::CandidateKind::Storage) th.bus = st.bus;
            if (c.kind == domain::CandidateKind::Res) {
                th.bus = re.bus;
                th.technology = domain::to_string(re.technology);
                th.p_max = re.p_max;
                th.cost_prod = re.cost_prod;
            }
            thermal_cells(out, th);
            out << ',';
            storage_cells(out, st);
            out << ',' << format_number(c.invest_cost_annualized) << ','
                << format_number(c.invest_cap_max) << ','
                << bool_str(c.counts_toward_res_target) << '\n';
            switch (c.kind) {
                case domain::CandidateKind::Thermal:
                    save_series(root / "series" / ("availability_" + c.id + ".csv"),
                                c.thermal.availability);
                    break;
                case domain::CandidateKind::Storage:
                    save_series(root / "series" / ("inflow_" + c.id + ".csv"),
                                c.storage.inflow);
                    break;
                case domain::CandidateKind::Res:
                    save_series(root / "series" / ("cf_" + c.id + ".csv"),
                                c.res.capacity_factor);
                    break;
            }
        }
    }

    save_series(root / "series" / "scr_up.csv", sys.reserves.scr_up);
    save_series(root / "series" / "scr_down.csv", sys.reserves.scr_down);
    save_series(root / "series" / "tcr_up.csv", sys.reserves.tcr_up);
    save_series(root / "series" / "tcr_down.csv", sys.reserves.tcr_down);
}

}  // namespace gep::io
