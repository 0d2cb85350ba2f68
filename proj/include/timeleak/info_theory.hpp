#pragma once

#include "timeleak/binning.hpp"
#include "timeleak/response_model.hpp"

namespace timeleak {

/// Prior over the raw key bit. p0 + p1 must be 1 (within 1e-9).
struct BitPrior {
    double p0 = 0.5;
    double p1 = 0.5;
};

/// Throws std::invalid_argument if the prior is not a distribution.
void validate(const BitPrior& prior);

/// H(X) = -p0 log2 p0 - p1 log2 p1, in bits.
double entropy_bits(const BitPrior& prior);

/// The two per-bit conditional distributions over one shared partition.
struct ChannelSpec {
    BitPrior prior;
    BinProbabilities cond0;
    BinProbabilities cond1;
};

/// Ensemble distribution p0*cond0 + p1*cond1 on the shared partition.
/// Throws std::invalid_argument if the two conditionals do not share a
/// partition.
BinProbabilities mixture(const ChannelSpec& spec);

/// I(X;T) in bits for the binned channel:
///   sum_x p(x) sum_k c_x[k] log2 c_x[k]  -  sum_k m[k] log2 m[k]
/// with 0 log 0 == 0. Result clamped to >= 0 (rounding can otherwise produce
/// a tiny negative for identical conditionals).
double mutual_information_binned(const ChannelSpec& spec);

/// No-binning reference: I(X;T) between the bit and the continuous detection
/// time, evaluated by fine-grid quadrature over the pair analysis domain.
/// The grid cells form the finest partition, so every binned MI of the same
/// models is bounded by this value. `dt_ps` must not exceed 1/20 of the
/// smaller model FWHM.
double mutual_information_continuous(const BitPrior& prior, const ResponseModel& m0,
                                     const ResponseModel& m1, double dt_ps);

namespace detail {
/// Plug-in MI over two mass vectors on a common index set (used by both the
/// binned and the continuous paths; the log2(dt) terms of the differential
/// entropies cancel between the conditional and mixture sums).
double mi_bits_from_masses(const BitPrior& prior, const std::vector<double>& q0,
                           const std::vector<double>& q1);
}  // namespace detail

}  // namespace timeleak
