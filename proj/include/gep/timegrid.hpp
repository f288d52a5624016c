#ifndef GEP_TIMEGRID_HPP
#define GEP_TIMEGRID_HPP

#include <vector>

#include "gep/domain.hpp"

namespace gep::timegrid {

// Mapping between the physical year and the simulated horizon. The
// every-other-day grid samples the odd calendar days 1,3,...,365 (183 days,
// 4392 hours) and scales operating costs and hydro storage dynamics by two.
struct TimeGrid {
    int physical_hours = domain::kHoursPerYear;
    int simulated_hours = domain::kHoursPerYear;
    std::vector<int> day_map;   // 1-based physical day index per simulated day
    double cost_scale = 1.0;
    double storage_scale = 1.0;

    int simulated_days() const { return static_cast<int>(day_map.size()); }
    // physical hour (0-based) of a simulated hour (0-based)
    int physical_hour(int sim_hour) const {
        return (day_map[sim_hour / 24] - 1) * 24 + sim_hour % 24;
    }
};

struct StorageScaling {
    double charge_coeff = 1.0;
    double discharge_coeff = 1.0;
    double inflow_coeff = 1.0;
    double bound_scale = 1.0;   // reservoir min/max/initial multiplier
};

TimeGrid build_time_grid(domain::Compression mode);

// Concatenates the 24-hour blocks of the sampled days, order preserved.
domain::Series compress_series(const TimeGrid& grid, const domain::Series& hourly);

StorageScaling storage_scaling(const TimeGrid& grid, const domain::StorageUnit& unit);

}  // namespace gep::timegrid

#endif
