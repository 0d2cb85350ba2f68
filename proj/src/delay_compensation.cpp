#include "timeleak/delay_compensation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace timeleak {

namespace {

void require_sorted(std::span<const double> times, const char* name) {
    if (times.empty()) throw std::invalid_argument(std::string(name) + " is empty");
    if (!std::is_sorted(times.begin(), times.end()))
        throw std::invalid_argument(std::string(name) + " is not sorted by time");
}

struct PeakCentroid {
    double center_ps;
    double uncertainty_ps;
};

PeakCentroid peak_centroid(const Correlogram& corr) {
    const auto it = std::max_element(corr.counts.begin(), corr.counts.end());
    if (it == corr.counts.end() || *it < 10)
        throw std::runtime_error("correlogram has no detectable peak (max count " +
                                 std::to_string(it == corr.counts.end() ? 0 : *it) + " < 10)");
    const std::uint64_t peak = *it;
    const std::size_t imax = static_cast<std::size_t>(it - corr.counts.begin());

    // contiguous region at or above half max around the peak cell
    std::size_t lo = imax, hi = imax;
    while (lo > 0 && 2 * corr.counts[lo - 1] >= peak) --lo;
    while (hi + 1 < corr.counts.size() && 2 * corr.counts[hi + 1] >= peak) ++hi;

    double total = 0.0, first = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double c = static_cast<double>(corr.counts[k]);
        total += c;
        first += c * corr.lag_center_ps(k);
    }
    const double centroid = first / total;
    double second = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double d = corr.lag_center_ps(k) - centroid;
        second += static_cast<double>(corr.counts[k]) * d * d;
    }
    const double rms = std::sqrt(second / total);
    return {centroid, rms / std::sqrt(total)};
}

}  // namespace

Correlogram build_correlogram(std::span<const double> times_a, std::span<const double> times_b,
                              double lag_window_ps, double lag_step_ps) {
    require_sorted(times_a, "times_a");
    require_sorted(times_b, "times_b");
    if (!(lag_step_ps > 0.0)) throw std::invalid_argument("lag_step_ps must be > 0");
    if (!(lag_window_ps >= lag_step_ps))
        throw std::invalid_argument("lag_window_ps must be at least one lag step");

    Correlogram corr;
    corr.lag_start_ps = -lag_window_ps;
    corr.lag_step_ps = lag_step_ps;
    const auto n_cells = static_cast<std::size_t>(
        std::ceil(2.0 * lag_window_ps / lag_step_ps * (1.0 - 1e-12)));
    corr.counts.assign(n_cells, 0);

    std::size_t j_lo = 0;
    for (const double a : times_a) {
        while (j_lo < times_b.size() && times_b[j_lo] < a - lag_window_ps) ++j_lo;
        for (std::size_t j = j_lo; j < times_b.size() && times_b[j] - a <= lag_window_ps; ++j) {
            const double lag = times_b[j] - a;
            auto k = static_cast<std::size_t>(
                std::max(0.0, std::floor((lag - corr.lag_start_ps) / lag_step_ps)));
            ++corr.counts[std::min(k, n_cells - 1)];
        }
    }
    return corr;
}

OffsetEstimate estimate_offset(const Correlogram& corr_plus, const Correlogram& corr_minus) {
    const PeakCentroid p = peak_centroid(corr_plus);
    const PeakCentroid m = peak_centroid(corr_minus);
    return {p.center_ps - m.center_ps, std::hypot(p.uncertainty_ps, m.uncertainty_ps)};
}

std::vector<double> compensate(std::span<const double> times, double delta_ps) {
    std::vector<double> out(times.begin(), times.end());
    for (double& t : out) t -= delta_ps;
    return out;
}

}  // namespace timeleak
