#include "timeleak/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace timeleak {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

void check_shared_partition(const ChannelSpec& spec) {
    if (!(spec.cond0.scheme == spec.cond1.scheme) ||
        spec.cond0.probs.size() != spec.cond1.probs.size())
        throw std::invalid_argument("conditional distributions do not share a partition");
}

}  // namespace

void validate(const BitPrior& prior) {
    if (!(prior.p0 >= 0.0) || !(prior.p1 >= 0.0) || std::abs(prior.p0 + prior.p1 - 1.0) > 1e-9)
        throw std::invalid_argument("bit prior (" + std::to_string(prior.p0) + ", " +
                                    std::to_string(prior.p1) + ") is not a distribution");
}

double entropy_bits(const BitPrior& prior) {
    validate(prior);
    return -xlog2x(prior.p0) - xlog2x(prior.p1);
}

BinProbabilities mixture(const ChannelSpec& spec) {
    validate(spec.prior);
    check_shared_partition(spec);
    BinProbabilities out{spec.cond0.scheme, std::vector<double>(spec.cond0.probs.size())};
    for (std::size_t k = 0; k < out.probs.size(); ++k)
        out.probs[k] = spec.prior.p0 * spec.cond0.probs[k] + spec.prior.p1 * spec.cond1.probs[k];
    return out;
}

double detail::mi_bits_from_masses(const BitPrior& prior, const std::vector<double>& q0,
                                   const std::vector<double>& q1) {
    double cond_term = 0.0, mix_term = 0.0;
    for (std::size_t k = 0; k < q0.size(); ++k) {
        cond_term += prior.p0 * xlog2x(q0[k]) + prior.p1 * xlog2x(q1[k]);
        mix_term += xlog2x(prior.p0 * q0[k] + prior.p1 * q1[k]);
    }
    return std::max(0.0, cond_term - mix_term);
}

double mutual_information_binned(const ChannelSpec& spec) {
    validate(spec.prior);
    check_shared_partition(spec);
    return detail::mi_bits_from_masses(spec.prior, spec.cond0.probs, spec.cond1.probs);
}

double mutual_information_continuous(const BitPrior& prior, const ResponseModel& m0,
                                     const ResponseModel& m1, double dt_ps) {
    validate(prior);
    if (!(dt_ps > 0.0)) throw std::invalid_argument("dt_ps must be > 0");
    const double min_fwhm = std::min(measure_fwhm(m0), measure_fwhm(m1));
    if (dt_ps > min_fwhm / 20.0)
        throw std::invalid_argument("dt_ps = " + std::to_string(dt_ps) +
                                    " too coarse for FWHM " + std::to_string(min_fwhm) +
                                    " (need dt <= FWHM/20)");
    const auto [lo, hi] = pair_domain(m0, m1);
    const SampledDensity d0 = discretize(m0, lo, hi, dt_ps);
    const SampledDensity d1 = discretize(m1, lo, hi, dt_ps);
    std::vector<double> q0(d0.values.size()), q1(d1.values.size());
    for (std::size_t i = 0; i < q0.size(); ++i) q0[i] = d0.values[i] * dt_ps;
    for (std::size_t i = 0; i < q1.size(); ++i) q1[i] = d1.values[i] * dt_ps;
    return detail::mi_bits_from_masses(prior, q0, q1);
}

}  // namespace timeleak
