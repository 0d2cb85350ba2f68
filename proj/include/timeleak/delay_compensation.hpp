#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace timeleak {

/// Histogram of pairwise time differences (b - a) between two timetag lists.
struct Correlogram {
    double lag_start_ps = 0.0;
    double lag_step_ps = 0.0;
    std::vector<std::uint64_t> counts;

    double lag_center_ps(std::size_t k) const {
        return lag_start_ps + (static_cast<double>(k) + 0.5) * lag_step_ps;
    }
};

/// counts[k] = number of pairs (a, b) with b - a inside the k-th lag cell of
/// [-lag_window, +lag_window], found with a two-pointer sliding window over
/// the sorted inputs (no all-pairs scan). Throws std::invalid_argument on
/// unsorted or empty input.
Correlogram build_correlogram(std::span<const double> times_a, std::span<const double> times_b,
                              double lag_window_ps, double lag_step_ps);

/// Relative delay between the coincidence peaks of two correlograms.
struct OffsetEstimate {
    double delta_ps = 0.0;
    double confidence_width_ps = 0.0;  // half-width of the peak-location uncertainty
};

/// delta = peak centroid of corr_plus minus peak centroid of corr_minus, each
/// centroid taken over the contiguous cells at or above half of the peak
/// count. Per-peak uncertainty is the region's rms width / sqrt(counts);
/// the two are combined in quadrature. Throws std::runtime_error when a
/// correlogram has no detectable peak (max count < 10).
OffsetEstimate estimate_offset(const Correlogram& corr_plus, const Correlogram& corr_minus);

/// Every timestamp shifted by -delta; order preserved.
std::vector<double> compensate(std::span<const double> times, double delta_ps);

}  // namespace timeleak
