#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace timeleak {

/// Detector timing-response parameters. All times in picoseconds.

struct EmgParams {
    double tau_e_ps = 0.0;  // exponential tail constant, > 0
    double tau_g_ps = 0.0;  // Gaussian width constant (sigma), > 0
    double t0_ps = 0.0;     // location of the peak density
};

struct GaussianParams {
    double mu_ps = 0.0;    // mean = peak location
    double fwhm_ps = 0.0;  // full width at half maximum, > 0
};

/// sigma = fwhm / (2*sqrt(2*ln 2))
double fwhm_to_sigma(double fwhm_ps);
double sigma_to_fwhm(double sigma_ps);

/// Detector timing response: probability density of the delay between photon
/// arrival and the electronic detection signal. Immutable after construction.
///
/// The EMG kind is the exponentially modified Gaussian (Gaussian of width
/// tau_g convolved with a one-sided exponential of decay tau_e), translated
/// so that its mode sits at t0.
class ResponseModel {
public:
    enum class Kind { Emg, Gaussian };

    /// Throws std::invalid_argument on non-positive tau / fwhm.
    static ResponseModel emg(const EmgParams& p);
    static ResponseModel emg(double tau_e_ps, double tau_g_ps, double t0_ps);
    static ResponseModel gaussian(const GaussianParams& p);
    static ResponseModel gaussian(double mu_ps, double fwhm_ps);

    Kind kind() const { return kind_; }

    /// d(t), in 1/ps. Non-negative and finite for every real t.
    double density(double t_ps) const;

    /// Same shape translated by delta: shifted.density(t) == density(t - delta).
    ResponseModel shifted(double delta_ps) const;

    /// Location of the maximum density (t0 for EMG, mu for Gaussian).
    double peak_time_ps() const;

    /// Analysis domain containing all but < 1e-9 of the probability mass.
    /// EMG: [t0 - 10(tau_e+tau_g), t0 + 20(tau_e+tau_g)] (long right tail);
    /// Gaussian: [mu - 8 sigma, mu + 8 sigma].
    std::pair<double, double> analysis_domain() const;

    const EmgParams& emg_params() const;            // throws if kind != Emg
    const GaussianParams& gaussian_params() const;  // throws if kind != Gaussian

private:
    ResponseModel() = default;

    Kind kind_ = Kind::Gaussian;
    EmgParams emg_{};
    GaussianParams gauss_{};
    // mode of the canonical EMG with Gaussian mean 0; density() evaluates the
    // canonical form at (t - t0 + mode_offset_) so the peak lands on t0
    double mode_offset_ps_ = 0.0;
    double sigma_ps_ = 0.0;  // Gaussian kind only
};

/// Union of the two models' analysis domains.
std::pair<double, double> pair_domain(const ResponseModel& a, const ResponseModel& b);

/// Probability density sampled on a uniform grid. values[i] is the density at
/// the cell center t_start + (i + 0.5) * dt; sum(values) * dt == 1.
struct SampledDensity {
    double t_start_ps = 0.0;
    double dt_ps = 0.0;
    std::vector<double> values;

    double t_end_ps() const { return t_start_ps + dt_ps * static_cast<double>(values.size()); }
    double center_ps(std::size_t i) const { return t_start_ps + (static_cast<double>(i) + 0.5) * dt_ps; }
};

/// Samples `density` at cell centers over [t_start, t_end] and renormalizes so
/// sum(values)*dt == 1. Throws std::runtime_error if the raw quadrature mass
/// over the domain falls below 1 - 1e-6 (truncated domain), and
/// std::invalid_argument on a degenerate domain or step.
SampledDensity discretize(const std::function<double(double)>& density,
                          double t_start_ps, double t_end_ps, double dt_ps);
SampledDensity discretize(const ResponseModel& model,
                          double t_start_ps, double t_end_ps, double dt_ps);

/// Width between the two points where the density crosses half of its peak,
/// each located by bisection to better than 1e-3 ps.
double measure_fwhm(const ResponseModel& model);

/// Same measurement on a sampled density (linear interpolation between grid
/// cells). Throws std::runtime_error if more than one contiguous region sits
/// above half max (ambiguous / multi-modal input).
double measure_fwhm(const SampledDensity& density);

}  // namespace timeleak
