#pragma once

#include <vector>

#include "oulevy/levy.hpp"

namespace oulevy {

// Hybrid grid: the uniform base grid on [0, T] with every jump time of the
// driving point set inserted exactly.  Paths are evaluated where they are
// least smooth, and jump matching is exact.
class TimeGrid {
  public:
    TimeGrid(double T, int base_steps, const std::vector<double>& jump_times);
    TimeGrid(double T, int base_steps) : TimeGrid(T, base_steps, {}) {}

    double T() const { return T_; }
    int base_steps() const { return base_steps_; }
    const std::vector<double>& times() const { return times_; }
    int size() const { return static_cast<int>(times_.size()); }
    int steps() const { return size() - 1; }

    // Grid index of a time known to be on the grid (jump alignment).
    int index_of(double t) const;
    bool contains(double t) const;
    // Grid indices of the driving jump times, in order.
    std::vector<int> jump_indices(const MarkedPointSet& points) const;

  private:
    double T_;
    int base_steps_;
    std::vector<double> times_;
};

}  // namespace oulevy
