#include "timeleak/response_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace timeleak {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
// 2*sqrt(2*ln 2)
constexpr double kFwhmPerSigma = 2.3548200450309493;

// Scaled complementary error function exp(z^2) * erfc(z) for z >= 0.
// Direct evaluation is stable up to z ~ 25; beyond that erfc underflows and
// the asymptotic series takes over.
double erfcx_pos(double z) {
    if (z <= 25.0) return std::exp(z * z) * std::erfc(z);
    const double iz2 = 1.0 / (2.0 * z * z);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 6; ++k) {
        term *= -(2.0 * k - 1.0) * iz2;
        sum += term;
    }
    return sum / (z * 1.772453850905516);  // z * sqrt(pi)
}

// Canonical EMG with Gaussian mean 0: N(0, sigma^2) convolved with
// Exp(1/tau_e) supported on [0, inf). Split into two branches so neither the
// erfc underflow (far left) nor the exp overflow (far right) produces NaN.
double emg_canonical(double x, double tau_e, double sigma) {
    const double u = x / sigma;
    const double a = sigma / tau_e;
    const double z = (a - u) / kSqrt2;
    if (z >= 0.0) return 0.5 / tau_e * std::exp(-0.5 * u * u) * erfcx_pos(z);
    // erfcx(z) = 2 exp(z^2) - erfcx(-z); z^2 - u^2/2 = a^2/2 - a*u
    return std::exp(0.5 * a * a - a * u) / tau_e -
           0.5 / tau_e * std::exp(-0.5 * u * u) * erfcx_pos(-z);
}

// Ternary search for the maximum of a strictly unimodal function.
double unimodal_argmax(const std::function<double(double)>& f, double lo, double hi) {
    while (hi - lo > 1e-9) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double fwhm_to_sigma(double fwhm_ps) { return fwhm_ps / kFwhmPerSigma; }
double sigma_to_fwhm(double sigma_ps) { return sigma_ps * kFwhmPerSigma; }

ResponseModel ResponseModel::emg(const EmgParams& p) {
    if (!(p.tau_e_ps > 0.0) || !std::isfinite(p.tau_e_ps))
        throw std::invalid_argument("tau_e_ps must be > 0, got " + std::to_string(p.tau_e_ps));
    if (!(p.tau_g_ps > 0.0) || !std::isfinite(p.tau_g_ps))
        throw std::invalid_argument("tau_g_ps must be > 0, got " + std::to_string(p.tau_g_ps));
    if (!std::isfinite(p.t0_ps)) throw std::invalid_argument("t0_ps must be finite");
    ResponseModel m;
    m.kind_ = Kind::Emg;
    m.emg_ = p;
    // the mode of the canonical EMG lies between the Gaussian mean and the
    // mean + tau_e of the exponential component
    m.mode_offset_ps_ = unimodal_argmax(
        [&](double x) { return emg_canonical(x, p.tau_e_ps, p.tau_g_ps); },
        -2.0 * p.tau_g_ps, p.tau_e_ps + 2.0 * p.tau_g_ps);
    return m;
}

ResponseModel ResponseModel::emg(double tau_e_ps, double tau_g_ps, double t0_ps) {
    return emg(EmgParams{tau_e_ps, tau_g_ps, t0_ps});
}

ResponseModel ResponseModel::gaussian(const GaussianParams& p) {
    if (!(p.fwhm_ps > 0.0) || !std::isfinite(p.fwhm_ps))
        throw std::invalid_argument("fwhm_ps must be > 0, got " + std::to_string(p.fwhm_ps));
    if (!std::isfinite(p.mu_ps)) throw std::invalid_argument("mu_ps must be finite");
    ResponseModel m;
    m.kind_ = Kind::Gaussian;
    m.gauss_ = p;
    m.sigma_ps_ = fwhm_to_sigma(p.fwhm_ps);
    return m;
}

ResponseModel ResponseModel::gaussian(double mu_ps, double fwhm_ps) {
    return gaussian(GaussianParams{mu_ps, fwhm_ps});
}

double ResponseModel::density(double t_ps) const {
    if (kind_ == Kind::Emg)
        return emg_canonical(t_ps - emg_.t0_ps + mode_offset_ps_, emg_.tau_e_ps, emg_.tau_g_ps);
    const double u = (t_ps - gauss_.mu_ps) / sigma_ps_;
    return kInvSqrt2Pi / sigma_ps_ * std::exp(-0.5 * u * u);
}

ResponseModel ResponseModel::shifted(double delta_ps) const {
    ResponseModel m = *this;
    if (kind_ == Kind::Emg)
        m.emg_.t0_ps += delta_ps;
    else
        m.gauss_.mu_ps += delta_ps;
    return m;
}

double ResponseModel::peak_time_ps() const {
    return kind_ == Kind::Emg ? emg_.t0_ps : gauss_.mu_ps;
}

std::pair<double, double> ResponseModel::analysis_domain() const {
    if (kind_ == Kind::Emg) {
        const double s = emg_.tau_e_ps + emg_.tau_g_ps;
        return {emg_.t0_ps - 10.0 * s, emg_.t0_ps + 20.0 * s};
    }
    return {gauss_.mu_ps - 8.0 * sigma_ps_, gauss_.mu_ps + 8.0 * sigma_ps_};
}

const EmgParams& ResponseModel::emg_params() const {
    if (kind_ != Kind::Emg) throw std::logic_error("model is not EMG");
    return emg_;
}

const GaussianParams& ResponseModel::gaussian_params() const {
    if (kind_ != Kind::Gaussian) throw std::logic_error("model is not Gaussian");
    return gauss_;
}

std::pair<double, double> pair_domain(const ResponseModel& a, const ResponseModel& b) {
    const auto da = a.analysis_domain();
    const auto db = b.analysis_domain();
    return {std::min(da.first, db.first), std::max(da.second, db.second)};
}

SampledDensity discretize(const std::function<double(double)>& density,
                          double t_start_ps, double t_end_ps, double dt_ps) {
    if (!(dt_ps > 0.0) || !std::isfinite(dt_ps))
        throw std::invalid_argument("dt_ps must be > 0");
    if (!(t_end_ps > t_start_ps))
        throw std::invalid_argument("t_end_ps must exceed t_start_ps");
    const double span = t_end_ps - t_start_ps;
    const auto n = static_cast<std::size_t>(std::ceil(span / dt_ps * (1.0 - 1e-12)));
    if (n == 0) throw std::invalid_argument("domain shorter than one grid step");

    SampledDensity out;
    out.t_start_ps = t_start_ps;
    out.dt_ps = dt_ps;
    out.values.resize(n);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = density(out.center_ps(i));
        if (!(v >= 0.0))
            throw std::runtime_error("density is negative or NaN at t = " +
                                     std::to_string(out.center_ps(i)));
        out.values[i] = v;
        mass += v * dt_ps;
    }
    if (mass < 1.0 - 1e-6)
        throw std::runtime_error("domain covers only " + std::to_string(mass) +
                                 " of the probability mass (truncated)");
    for (double& v : out.values) v /= mass;
    return out;
}

SampledDensity discretize(const ResponseModel& model,
                          double t_start_ps, double t_end_ps, double dt_ps) {
    return discretize([&](double t) { return model.density(t); }, t_start_ps, t_end_ps, dt_ps);
}

namespace {

// Walk outward from `from` in direction `dir` until the density drops below
// `level`, then bisect the crossing.
double half_crossing(const ResponseModel& m, double from, double dir, double step, double level) {
    double above = from;
    double probe = from + dir * step;
    for (int i = 0; i < 200 && m.density(probe) >= level; ++i) {
        above = probe;
        step *= 2.0;
        probe = from + dir * step;
    }
    if (m.density(probe) >= level)
        throw std::runtime_error("half-max crossing not found");
    double below = probe;
    while (std::abs(below - above) > 1e-6) {
        const double mid = 0.5 * (above + below);
        (m.density(mid) >= level ? above : below) = mid;
    }
    return 0.5 * (above + below);
}

}  // namespace

double measure_fwhm(const ResponseModel& model) {
    const double peak_t = model.peak_time_ps();
    const double half = 0.5 * model.density(peak_t);
    const double scale = model.kind() == ResponseModel::Kind::Emg
                             ? model.emg_params().tau_e_ps + model.emg_params().tau_g_ps
                             : fwhm_to_sigma(model.gaussian_params().fwhm_ps);
    const double right = half_crossing(model, peak_t, +1.0, scale, half);
    const double left = half_crossing(model, peak_t, -1.0, scale, half);
    return right - left;
}

double measure_fwhm(const SampledDensity& density) {
    const auto& v = density.values;
    if (v.size() < 3) throw std::invalid_argument("too few samples to measure a width");
    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(v.begin(), v.end()) - v.begin());
    const double half = 0.5 * v[imax];

    // count contiguous regions at or above half max; more than one is ambiguous
    int regions = 0;
    bool in_region = false;
    for (double x : v) {
        const bool above = x >= half;
        if (above && !in_region) ++regions;
        in_region = above;
    }
    if (regions != 1)
        throw std::runtime_error("density has " + std::to_string(regions) +
                                 " regions above half max; width is ambiguous");

    auto interp = [&](std::size_t lo, std::size_t hi) {
        // linear interpolation of the crossing between cells lo (below) and hi (above)
        const double f = (half - v[lo]) / (v[hi] - v[lo]);
        const double a = density.center_ps(lo), b = density.center_ps(hi);
        return a + f * (b - a);
    };
    std::size_t i = imax;
    while (i > 0 && v[i] >= half) --i;
    if (v[i] >= half) throw std::runtime_error("left half-max crossing outside the grid");
    const double left = interp(i, i + 1);
    std::size_t j = imax;
    while (j + 1 < v.size() && v[j] >= half) ++j;
    if (v[j] >= half) throw std::runtime_error("right half-max crossing outside the grid");
    const double right = interp(j, j - 1);
    return right - left;
}

}  // namespace timeleak
