#pragma once

#include <optional>
#include <string>
#include <vector>

#include "timeleak/info_theory.hpp"

namespace timeleak {

enum class SweepParam { BinWidth, Phase, Fwhm, DeltaT0 };

const char* to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& name);

struct SweepAxis {
    SweepParam param;
    std::vector<double> values;  // strictly increasing
};

/// One- or two-parameter scan of the binned mutual information. The bit-0
/// detector is `base_model`; the bit-1 detector is the same model shifted by
/// delta_t0. Fixed values below apply to every parameter that is not swept.
struct SweepSpec {
    ResponseModel base_model;
    BitPrior prior{};
    double delta_t0_ps = 0.0;
    double bin_width_ps = 0.0;
    double phase_ps = 0.0;
    double grid_dt_ps = 1.0;  // fine-grid step for discretization
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
};

struct SweepRow {
    double axis1_value;
    std::optional<double> axis2_value;
    double mi_bits;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // axis2-major, axis1 fastest
};

/// Evaluates every grid point: build the shifted model pair, discretize on
/// the pair analysis domain, bin, and take the binned MI. Rows are
/// independent pure computations evaluated in spec order; identical specs
/// give bit-identical results. Any underlying error aborts the sweep with
/// the offending row named.
SweepResult run_sweep(const SweepSpec& spec);

enum class ExtremumKind { Min, Max };

struct Extremum {
    double axis_value;
    double mi_bits;
    ExtremumKind kind;
};

/// Interior rows strictly smaller (or larger) than both neighbours. Requires
/// a single-axis result with at least 3 rows.
std::vector<Extremum> find_extrema(const SweepResult& result);

}  // namespace timeleak
