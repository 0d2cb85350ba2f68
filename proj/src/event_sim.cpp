#include "timeleak/event_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timeleak {

namespace {

constexpr std::size_t kChunkSize = 1u << 16;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro-free, dependency-free generator: 64-bit splitmix state walk.
// Adequate statistical quality for sampling and fully portable bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() { return splitmix64(state_++); }
    // uniform in [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Inverse-CDF sampler over a sampled density: pick the grid cell by its
// cumulative mass, then place the point uniformly within the cell.
class GridSampler {
public:
    explicit GridSampler(const SampledDensity& d) : t_start_(d.t_start_ps), dt_(d.dt_ps) {
        cum_.reserve(d.values.size());
        double acc = 0.0;
        for (double v : d.values) {
            acc += v * dt_;
            cum_.push_back(acc);
        }
        if (!cum_.empty()) cum_.back() = 1.0;  // guard against rounding at the top
    }

    double sample(double u) const {
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        const std::size_t i = std::min<std::size_t>(it - cum_.begin(), cum_.size() - 1);
        const double lo = i == 0 ? 0.0 : cum_[i - 1];
        const double frac = cum_[i] > lo ? (u - lo) / (cum_[i] - lo) : 0.5;
        return t_start_ + (static_cast<double>(i) + frac) * dt_;
    }

private:
    double t_start_, dt_;
    std::vector<double> cum_;
};

struct JointTable {
    std::vector<std::uint64_t> counts0, counts1;  // per bin
    std::uint64_t n = 0;
};

JointTable joint_table(std::span<const EventRecord> events) {
    JointTable t;
    std::size_t max_bin = 0;
    for (const auto& e : events) max_bin = std::max(max_bin, e.bin);
    t.counts0.assign(max_bin + 1, 0);
    t.counts1.assign(max_bin + 1, 0);
    for (const auto& e : events) {
        (e.true_bit == 0 ? t.counts0 : t.counts1)[e.bin]++;
        ++t.n;
    }
    return t;
}

double plugin_mi_bits(const JointTable& t) {
    const double n = static_cast<double>(t.n);
    double n0 = 0.0;
    for (auto c : t.counts0) n0 += static_cast<double>(c);
    const double px0 = n0 / n, px1 = 1.0 - px0;
    double mi = 0.0;
    for (std::size_t k = 0; k < t.counts0.size(); ++k) {
        const double j0 = static_cast<double>(t.counts0[k]) / n;
        const double j1 = static_cast<double>(t.counts1[k]) / n;
        const double pt = j0 + j1;
        if (j0 > 0.0) mi += j0 * std::log2(j0 / (px0 * pt));
        if (j1 > 0.0) mi += j1 * std::log2(j1 / (px1 * pt));
    }
    return std::max(0.0, mi);
}

}  // namespace

std::vector<EventRecord> simulate_stream(const SimConfig& cfg) {
    validate(cfg.prior);
    if (cfg.n_events == 0) throw std::invalid_argument("n_events must be >= 1");

    const double lo = cfg.scheme.t_start_ps(), hi = cfg.scheme.t_end_ps();
    const GridSampler s0(discretize(cfg.model0, lo, hi, cfg.grid_dt_ps));
    const GridSampler s1(discretize(cfg.model1, lo, hi, cfg.grid_dt_ps));

    std::vector<EventRecord> events;
    events.reserve(cfg.n_events);
    const std::size_t n_chunks = (cfg.n_events + kChunkSize - 1) / kChunkSize;
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {
        Rng rng(splitmix64(cfg.seed) ^ splitmix64(chunk * 0x9e3779b97f4a7c15ULL + 1));
        const std::size_t count = std::min(kChunkSize, cfg.n_events - chunk * kChunkSize);
        for (std::size_t i = 0; i < count; ++i) {
            const int bit = rng.next_unit() < cfg.prior.p0 ? 0 : 1;
            double t = (bit == 0 ? s0 : s1).sample(rng.next_unit());
            t = std::min(t, hi);  // sampling grid may overhang t_end by < one cell
            events.push_back(EventRecord{bit, t, cfg.scheme.index_of(t)});
        }
    }
    return events;
}

int map_guess(std::size_t bin, const ChannelSpec& spec) {
    if (bin >= spec.cond0.probs.size()) throw std::out_of_range("bin outside the partition");
    const double w0 = spec.prior.p0 * spec.cond0.probs[bin];
    const double w1 = spec.prior.p1 * spec.cond1.probs[bin];
    return w1 > w0 ? 1 : 0;
}

double empirical_mi_bits(std::span<const EventRecord> events) {
    if (events.size() < 2) throw std::invalid_argument("need at least 2 events");
    return plugin_mi_bits(joint_table(events));
}

double bootstrap_mi_stderr(std::span<const EventRecord> events, int resamples,
                           std::uint64_t seed) {
    if (events.size() < 2) throw std::invalid_argument("need at least 2 events");
    if (resamples < 2) throw std::invalid_argument("need at least 2 resamples");
    const JointTable t = joint_table(events);

    // flatten cell probabilities, then draw multinomial resamples via the
    // conditional-binomial chain (exact, O(cells) per replicate)
    std::vector<double> p;
    p.reserve(2 * t.counts0.size());
    for (auto c : t.counts0) p.push_back(static_cast<double>(c) / static_cast<double>(t.n));
    for (auto c : t.counts1) p.push_back(static_cast<double>(c) / static_cast<double>(t.n));

    Rng rng(splitmix64(seed ^ 0x626f6f74ULL));
    auto binomial = [&rng](std::uint64_t n, double prob) -> std::uint64_t {
        if (prob <= 0.0 || n == 0) return 0;
        if (prob >= 1.0) return n;
        const bool flip = prob > 0.5;  // run the inversion on the rarer side
        const double p = flip ? 1.0 - prob : prob;
        const double nd = static_cast<double>(n);
        std::uint64_t k;
        if (nd * p <= 64.0) {
            // multiplicative CDF inversion; O(mean) iterations
            double f = std::exp(nd * std::log1p(-p));
            const double odds = p / (1.0 - p);
            double cum = f;
            const double u = rng.next_unit();
            k = 0;
            while (u > cum && k < n && f > 0.0) {
                f *= odds * (nd - static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
                ++k;
                cum += f;
            }
        } else {
            // mean and n-mean both >= 64: normal approximation is far inside
            // the Monte Carlo noise of the bootstrap itself
            const double mean = nd * p;
            const double sd = std::sqrt(mean * (1.0 - p));
            const double u1 = std::max(rng.next_unit(), 1e-300), u2 = rng.next_unit();
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            k = static_cast<std::uint64_t>(std::clamp(std::round(mean + sd * z), 0.0, nd));
        }
        return flip ? n - k : k;
    };

    std::vector<double> mis(static_cast<std::size_t>(resamples));
    const std::size_t nbins = t.counts0.size();
    JointTable rt;
    for (auto& mi : mis) {
        rt.counts0.assign(nbins, 0);
        rt.counts1.assign(nbins, 0);
        rt.n = t.n;
        std::uint64_t remaining = t.n;
        double p_rem = 1.0;
        for (std::size_t j = 0; j < p.size() && remaining > 0; ++j) {
            const double q = p_rem > 0.0 ? std::min(1.0, p[j] / p_rem) : 1.0;
            const std::uint64_t c =
                j + 1 == p.size() ? remaining : binomial(remaining, q);
            (j < nbins ? rt.counts0[j] : rt.counts1[j - nbins]) = c;
            remaining -= c;
            p_rem -= p[j];
        }
        mi = plugin_mi_bits(rt);
    }
    double mean = 0.0;
    for (double m : mis) mean += m;
    mean /= static_cast<double>(mis.size());
    double var = 0.0;
    for (double m : mis) var += (m - mean) * (m - mean);
    var /= static_cast<double>(mis.size() - 1);
    return std::sqrt(var);
}

double guessing_success(std::span<const EventRecord> events, const ChannelSpec& spec) {
    if (events.empty()) throw std::invalid_argument("need at least 1 event");
    std::size_t hits = 0;
    for (const auto& e : events) hits += map_guess(e.bin, spec) == e.true_bit ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(events.size());
}

double bayes_success(const ChannelSpec& spec) {
    validate(spec.prior);
    double s = 0.0;
    for (std::size_t k = 0; k < spec.cond0.probs.size(); ++k)
        s += std::max(spec.prior.p0 * spec.cond0.probs[k], spec.prior.p1 * spec.cond1.probs[k]);
    return s;
}

CoincidenceStreams to_coincidence_streams(std::span<const EventRecord> events,
                                          double pair_spacing_ps) {
    if (!(pair_spacing_ps > 0.0)) throw std::invalid_argument("pair_spacing_ps must be > 0");
    CoincidenceStreams out;
    double tick = 0.0;
    for (const auto& e : events) {
        if (e.true_bit == 1) {
            out.alice_plus.push_back(tick);
            out.bob_plus.push_back(tick + e.timestamp_ps);
        } else {
            out.alice_minus.push_back(tick);
            out.bob_minus.push_back(tick + e.timestamp_ps);
        }
        tick += pair_spacing_ps;
    }
    return out;
}

}  // namespace timeleak
