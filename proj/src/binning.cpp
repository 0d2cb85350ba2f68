#include "timeleak/binning.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace timeleak {

BinningScheme::BinningScheme(double width_ps, double phase_ps, double t_start_ps, double t_end_ps)
    : width_(width_ps), phase_(phase_ps), t_start_(t_start_ps), t_end_(t_end_ps) {
    if (!(width_ > 0.0) || !std::isfinite(width_))
        throw std::invalid_argument("bin width must be > 0, got " + std::to_string(width_ps));
    if (!(t_end_ > t_start_) || !std::isfinite(t_start_) || !std::isfinite(t_end_))
        throw std::invalid_argument("binning domain is empty or non-finite");
    if (!std::isfinite(phase_)) throw std::invalid_argument("phase must be finite");

    // wrap phase into [0, width); exact when phase is already in range
    if (phase_ < 0.0 || phase_ >= width_) {
        phase_ -= width_ * std::floor(phase_ / width_);
        if (phase_ >= width_) phase_ = 0.0;  // rounding at the seam
    }

    // Interior edges sit at t_start + phase + k*width, strictly inside the
    // domain. k below ends as the largest integer with phase + k*width < span
    // (-1 when even the phase edge falls outside); the floor seed is corrected
    // by the two loops so float rounding near an exact edge cannot drop or
    // duplicate a bin.
    const double span = t_end_ - t_start_;
    long k = std::max<long>(0, static_cast<long>(std::floor((span - phase_) / width_)));
    while (k >= 0 && phase_ + static_cast<double>(k) * width_ >= span) --k;
    while (phase_ + static_cast<double>(k + 1) * width_ < span) ++k;
    // phase > 0: edges k = 0..k plus the leading partial cell; phase == 0:
    // edges k = 1..k (the k = 0 edge is t_start itself)
    count_ = static_cast<std::size_t>(phase_ > 0.0 ? k + 2 : k + 1);
}

std::size_t BinningScheme::index_of(double t_ps) const {
    if (!(t_ps >= t_start_) || !(t_ps <= t_end_))
        throw std::out_of_range("time " + std::to_string(t_ps) + " outside binning domain [" +
                                std::to_string(t_start_) + ", " + std::to_string(t_end_) + "]");
    const double rel = t_ps - t_start_ - phase_;
    long k;
    if (phase_ > 0.0)
        k = rel < 0.0 ? 0 : static_cast<long>(std::floor(rel / width_)) + 1;
    else
        k = std::max<long>(0, static_cast<long>(std::floor(rel / width_)));
    return std::min(static_cast<std::size_t>(k), count_ - 1);
}

double BinningScheme::left_edge_ps(std::size_t k) const {
    if (k >= count_) throw std::out_of_range("bin index out of range");
    if (k == 0) return t_start_;
    const double offset = phase_ > 0.0 ? phase_ + static_cast<double>(k - 1) * width_
                                       : static_cast<double>(k) * width_;
    return t_start_ + offset;
}

double BinningScheme::right_edge_ps(std::size_t k) const {
    if (k >= count_) throw std::out_of_range("bin index out of range");
    if (k + 1 == count_) return t_end_;
    return left_edge_ps(k + 1);
}

BinProbabilities bin_density(const SampledDensity& density, const BinningScheme& scheme) {
    if (density.values.empty()) throw std::invalid_argument("empty density");
    if (scheme.width_ps() < density.dt_ps)
        throw std::invalid_argument("bin width " + std::to_string(scheme.width_ps()) +
                                    " is finer than the sampling grid step " +
                                    std::to_string(density.dt_ps));
    const double slack = density.dt_ps;  // grid may overhang t_end by < one cell
    if (density.t_start_ps < scheme.t_start_ps() - 1e-9 * scheme.width_ps() ||
        density.t_end_ps() > scheme.t_end_ps() + slack)
        throw std::invalid_argument("binning domain does not cover the density support");

    BinProbabilities out{scheme, std::vector<double>(scheme.bin_count(), 0.0)};
    const std::size_t last = scheme.bin_count() - 1;
    for (std::size_t i = 0; i < density.values.size(); ++i) {
        const double c = density.center_ps(i);
        const std::size_t k = c > scheme.t_end_ps() ? last : scheme.index_of(c);
        out.probs[k] += density.values[i] * density.dt_ps;
    }
    return out;
}

}  // namespace timeleak
