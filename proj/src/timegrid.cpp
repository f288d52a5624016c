#include "gep/timegrid.hpp"

#include <stdexcept>

namespace gep::timegrid {

TimeGrid build_time_grid(domain::Compression mode) {
    TimeGrid grid;
    if (mode == domain::Compression::FullYear) {
        grid.day_map.resize(domain::kDaysPerYear);
        for (int d = 0; d < domain::kDaysPerYear; ++d) grid.day_map[d] = d + 1;
        return grid;
    }
    // odd days 1,3,...,365
    for (int d = 1; d <= domain::kDaysPerYear; d += 2) grid.day_map.push_back(d);
    grid.simulated_hours = static_cast<int>(grid.day_map.size()) * 24;
    grid.cost_scale = 2.0;
    grid.storage_scale = 2.0;
    return grid;
}

domain::Series compress_series(const TimeGrid& grid, const domain::Series& hourly) {
    if (hourly.size() != static_cast<std::size_t>(grid.physical_hours))
        throw std::invalid_argument("compress_series: expected a series of length " +
                                    std::to_string(grid.physical_hours) + ", got " +
                                    std::to_string(hourly.size()));
    if (grid.simulated_hours == grid.physical_hours) return hourly;
    domain::Series out(grid.simulated_hours);
    for (int h = 0; h < grid.simulated_hours; ++h) out[h] = hourly[grid.physical_hour(h)];
    return out;
}

StorageScaling storage_scaling(const TimeGrid& grid, const domain::StorageUnit& unit) {
    StorageScaling s;
    if (grid.storage_scale == 1.0) return s;
    if (!domain::is_hydro(unit.kind)) return s;  // batteries cycle within a day
    s.charge_coeff = s.discharge_coeff = s.inflow_coeff = grid.storage_scale;
    // only daily pumped storages see doubled level amplitudes
    if (unit.kind == domain::StorageKind::PumpDaily) s.bound_scale = grid.storage_scale;
    return s;
}

}  // namespace gep::timegrid
