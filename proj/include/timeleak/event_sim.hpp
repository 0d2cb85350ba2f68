#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "timeleak/binning.hpp"
#include "timeleak/info_theory.hpp"

namespace timeleak {

/// One simulated coincidence detection. `timestamp_ps` is the continuous
/// detection time drawn from the detector response of the true bit; `bin` is
/// the publicly shared quantized index under the stream's scheme.
struct EventRecord {
    int true_bit;
    double timestamp_ps;
    std::size_t bin;
};

struct SimConfig {
    ResponseModel model0;  // detector response for bit 0
    ResponseModel model1;  // detector response for bit 1
    BitPrior prior{};
    BinningScheme scheme;
    std::size_t n_events = 0;
    std::uint64_t seed = 0;
    double grid_dt_ps = 1.0;  // inverse-CDF sampling grid
};

/// Deterministic Monte Carlo stream: bit ~ prior, timestamp by inverse-CDF
/// sampling of the bit's model on the fine grid (uniform within a grid cell),
/// bin by the scheme. The stream is generated in fixed-size chunks, each
/// seeded from (seed, chunk index), so identical configs give bit-identical
/// streams.
std::vector<EventRecord> simulate_stream(const SimConfig& cfg);

/// MAP guess of the bit from an observed bin: argmax_x p(x) * cond_x[bin],
/// ties to bit 0.
int map_guess(std::size_t bin, const ChannelSpec& spec);

/// Plug-in MI (bits) of the empirical joint (bit, bin) table. Needs >= 2
/// events.
double empirical_mi_bits(std::span<const EventRecord> events);

/// Standard error of the plug-in MI via bootstrap resampling of the joint
/// table (multinomial resamples of the same size).
double bootstrap_mi_stderr(std::span<const EventRecord> events, int resamples,
                           std::uint64_t seed);

/// Fraction of events where the MAP guess from the public bin matches the
/// true bit.
double guessing_success(std::span<const EventRecord> events, const ChannelSpec& spec);

/// Expected success of the MAP rule under the analytic joint:
/// sum_k max_x p(x) * cond_x[k].
double bayes_success(const ChannelSpec& spec);

/// Coincidence timetags reconstructed from an event stream: pair i is emitted
/// at i * pair_spacing; Alice's detection is the emission tick, Bob's is the
/// tick plus the event's detector delay. Events are split by bit into the
/// "+" (bit 1) and "-" (bit 0) detector classes.
struct CoincidenceStreams {
    std::vector<double> alice_plus, bob_plus;
    std::vector<double> alice_minus, bob_minus;
};

CoincidenceStreams to_coincidence_streams(std::span<const EventRecord> events,
                                          double pair_spacing_ps);

}  // namespace timeleak
