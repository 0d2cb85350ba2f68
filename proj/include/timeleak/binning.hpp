#pragma once

#include <cstddef>
#include <vector>

#include "timeleak/response_model.hpp"

namespace timeleak {

/// Uniform partition of the analysis domain [t_start, t_end) into bins of the
/// given width, with the first interior edge offset by `phase` from t_start.
/// Partial cells at the two domain ends are kept as real bins, so the
/// partition conserves mass exactly and is literally periodic in the phase
/// (phase is wrapped into [0, width) on construction).
///
/// Half-open convention: a point exactly on an edge belongs to the bin on its
/// right.
class BinningScheme {
public:
    /// Throws std::invalid_argument on width <= 0 or t_end <= t_start.
    BinningScheme(double width_ps, double phase_ps, double t_start_ps, double t_end_ps);

    double width_ps() const { return width_; }
    double phase_ps() const { return phase_; }
    double t_start_ps() const { return t_start_; }
    double t_end_ps() const { return t_end_; }

    std::size_t bin_count() const { return count_; }

    /// Bin index of a time inside [t_start, t_end]; t == t_end maps to the
    /// last bin. Throws std::out_of_range outside the domain.
    std::size_t index_of(double t_ps) const;

    /// Left edge of bin k (left_edge(0) == t_start).
    double left_edge_ps(std::size_t k) const;
    /// Right edge of bin k, clipped to t_end.
    double right_edge_ps(std::size_t k) const;

    bool operator==(const BinningScheme& other) const = default;

private:
    double width_, phase_, t_start_, t_end_;
    std::size_t count_;
};

/// Per-bin probabilities over a scheme's partition. Entries are >= 0 and sum
/// to the mass of the underlying density (1 within rounding).
struct BinProbabilities {
    BinningScheme scheme;
    std::vector<double> probs;
};

/// Accumulates the fine-grid mass values[i]*dt of every cell into the bin
/// containing the cell center. The scheme's domain must cover the density's
/// grid (a sub-cell overhang of the grid past t_end is folded into the last
/// bin). Throws std::invalid_argument if width < dt or on a coverage gap.
BinProbabilities bin_density(const SampledDensity& density, const BinningScheme& scheme);

}  // namespace timeleak
