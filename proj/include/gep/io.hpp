#ifndef GEP_IO_HPP
#define GEP_IO_HPP

#include <string>

#include "gep/domain.hpp"

namespace gep::io {

struct Scenario {
    std::string name;
    domain::PowerSystem system;
    domain::ScenarioConfig config;
};

// Scenario directory layout:
//   manifest.json                 run configuration + reserve coefficients
//   buses.csv lines.csv thermal_units.csv storage_units.csv res_units.csv
//   candidates.csv                one wide table, `kind` selects the columns
//   series/demand_<bus>.csv       8760 values, one per line (required)
//   series/fixed_injection_<bus>.csv, availability_<unit>.csv,
//   series/inflow_<unit>.csv      optional, defaulted when absent
//   series/cf_<unit>.csv          required for every RES unit/candidate
//   series/scr_up.csv scr_down.csv tcr_up.csv tcr_down.csv   optional
// Every parse error names the file and line it came from.
Scenario load_scenario(const std::string& dir);

// Inverse of load_scenario; deterministic, so save(load(dir)) round-trips
// byte-identically. Creates the directory if needed.
void save_scenario(const Scenario& scenario, const std::string& dir);

// Shortest decimal representation that round-trips the double exactly.
std::string format_number(double v);

}  // namespace gep::io

#endif
