#include "oulevy/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "oulevy/errors.hpp"

namespace oulevy {

TimeGrid::TimeGrid(double T, int base_steps, const std::vector<double>& jump_times)
    : T_(T), base_steps_(base_steps) {
    if (!(T > 0.0)) throw InputError("time grid: T must be > 0");
    if (base_steps < 1) throw InputError("time grid: base_steps must be >= 1");
    times_.reserve(base_steps + 1 + jump_times.size());
    for (int k = 0; k <= base_steps; ++k)
        times_.push_back(T * static_cast<double>(k) / base_steps);
    times_.back() = T;  // pin the endpoint exactly
    for (double s : jump_times) {
        if (!(s > 0.0 && s <= T)) throw InputError("time grid: jump time outside (0, T]");
        times_.push_back(s);
    }
    std::sort(times_.begin(), times_.end());
    times_.erase(std::unique(times_.begin(), times_.end()), times_.end());
}

int TimeGrid::index_of(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end() || *it != t)
        throw InputError("time grid: time not on the grid");
    return static_cast<int>(it - times_.begin());
}

bool TimeGrid::contains(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    return it != times_.end() && *it == t;
}

std::vector<int> TimeGrid::jump_indices(const MarkedPointSet& points) const {
    std::vector<int> idx;
    idx.reserve(points.count());
    for (double s : points.times) idx.push_back(index_of(s));
    return idx;
}

}  // namespace oulevy
