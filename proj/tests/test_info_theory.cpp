#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "testutil.hpp"
#include "timeleak/info_theory.hpp"

using namespace timeleak;

namespace {

const BinningScheme kToyScheme(1.0, 0.0, 0.0, 2.0);

ChannelSpec toy_spec(double p0, std::vector<double> c0, std::vector<double> c1) {
    return ChannelSpec{BitPrior{p0, 1.0 - p0},
                       BinProbabilities{kToyScheme, std::move(c0)},
                       BinProbabilities{kToyScheme, std::move(c1)}};
}

std::vector<double> random_probs(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    double s = 0.0;
    for (double& x : v) {
        x = -std::log(std::max(1e-300, test::uniform(rng, 0.0, 1.0)));
        s += x;
    }
    for (double& x : v) x /= s;
    return v;
}

}  // namespace

TEST_CASE("entropy of the bit prior") {
    CHECK(entropy_bits(BitPrior{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy_bits(BitPrior{1.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(entropy_bits(BitPrior{0.8, 0.2}) == doctest::Approx(0.7219280949).epsilon(1e-9));
    CHECK_THROWS_AS(entropy_bits(BitPrior{0.7, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_bits(BitPrior{-0.1, 1.1}), std::invalid_argument);
}

TEST_CASE("mixture") {
    SUBCASE("identical conditionals pass through") {
        const auto spec = toy_spec(0.5, {0.3, 0.7}, {0.3, 0.7});
        const auto m = mixture(spec);
        CHECK(m.probs[0] == doctest::Approx(0.3));
        CHECK(m.probs[1] == doctest::Approx(0.7));
    }
    SUBCASE("degenerate prior selects cond0") {
        const auto spec = toy_spec(1.0, {0.9, 0.1}, {0.2, 0.8});
        const auto m = mixture(spec);
        CHECK(m.probs[0] == 0.9);
        CHECK(m.probs[1] == doctest::Approx(0.1));
    }
    SUBCASE("orthogonal conditionals blend to uniform") {
        const auto m = mixture(toy_spec(0.5, {1.0, 0.0}, {0.0, 1.0}));
        CHECK(m.probs[0] == doctest::Approx(0.5));
        CHECK(m.probs[1] == doctest::Approx(0.5));
    }
    SUBCASE("mismatched partitions are rejected") {
        auto spec = toy_spec(0.5, {0.3, 0.7}, {0.3, 0.7});
        spec.cond1.scheme = BinningScheme(1.0, 0.5, 0.0, 2.0);
        CHECK_THROWS_AS(mixture(spec), std::invalid_argument);
    }
}

TEST_CASE("binned mutual information") {
    CHECK(mutual_information_binned(toy_spec(0.5, {0.4, 0.6}, {0.4, 0.6})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutual_information_binned(toy_spec(0.5, {1.0, 0.0}, {0.0, 1.0})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // hand computation from the joint table: 1 - H_b(0.8) = 0.2780719
    CHECK(mutual_information_binned(toy_spec(0.5, {0.8, 0.2}, {0.2, 0.8})) ==
          doctest::Approx(0.2780719051).epsilon(1e-9));
}

TEST_CASE("continuous mutual information") {
    SUBCASE("identical models carry nothing") {
        const auto m = ResponseModel::gaussian(0.0, 1000.0);
        CHECK(mutual_information_continuous(BitPrior{}, m, m, 1.0) ==
              doctest::Approx(0.0).epsilon(1e-9));
        const auto e = ResponseModel::emg(400.0, 290.0, 1000.0);
        CHECK(mutual_information_continuous(BitPrior{}, e, e, 1.0) ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("far-separated gaussians give one full bit") {
        const auto m0 = ResponseModel::gaussian(0.0, 100.0);
        const auto m1 = m0.shifted(100.0 * 100.0);  // 100 FWHMs apart
        const double mi = mutual_information_continuous(BitPrior{}, m0, m1, 1.0);
        CHECK(mi == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(mi <= 1.0 + 1e-12);
    }
    SUBCASE("coarse dt is rejected") {
        const auto m = ResponseModel::gaussian(0.0, 20.0);
        CHECK_THROWS_AS(mutual_information_continuous(BitPrior{}, m, m, 2.0),
                        std::invalid_argument);
    }
    SUBCASE("quadrature agrees with a Monte Carlo estimate") {
        // frozen quadrature value for FWHM = 1000 ps, delta = 350 ps, dt = 1 ps
        const auto m0 = ResponseModel::gaussian(0.0, 1000.0);
        const auto m1 = m0.shifted(350.0);
        const double mi = mutual_information_continuous(BitPrior{}, m0, m1, 1.0);
        CHECK(mi == doctest::Approx(0.1130868).epsilon(2e-3));

        // independent oracle: sample (bit, t) directly with library normals and
        // average the log-likelihood ratio; no shared code with the quadrature
        const double sigma = 1000.0 / 2.3548200450309493;
        std::mt19937_64 rng(9001);
        std::normal_distribution<double> n0(0.0, sigma), n1(350.0, sigma);
        std::bernoulli_distribution coin(0.5);
        auto pdf = [sigma](double t, double mu) {
            const double u = (t - mu) / sigma;
            return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * M_PI));
        };
        const std::size_t n = 10'000'000;
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool one = coin(rng);
            const double t = one ? n1(rng) : n0(rng);
            const double own = pdf(t, one ? 350.0 : 0.0);
            const double mix = 0.5 * pdf(t, 0.0) + 0.5 * pdf(t, 350.0);
            const double r = std::log2(own / mix);
            sum += r;
            sum2 += r * r;
        }
        const double mc = sum / static_cast<double>(n);
        const double se = std::sqrt((sum2 / static_cast<double>(n) - mc * mc) /
                                    static_cast<double>(n));
        CHECK(std::abs(mi - mc) <= 3.0 * se);
    }
}

TEST_CASE("property: MI is bounded by 0 and the prior entropy") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t nbins = 2 + rng() % 30;
        const double p0 = test::uniform(rng, 0.0, 1.0);
        const BinningScheme scheme(1.0, 0.0, 0.0, static_cast<double>(nbins));
        const ChannelSpec spec{BitPrior{p0, 1.0 - p0},
                               BinProbabilities{scheme, random_probs(rng, nbins)},
                               BinProbabilities{scheme, random_probs(rng, nbins)}};
        const double mi = mutual_information_binned(spec);
        CHECK(mi >= 0.0);
        CHECK(mi <= entropy_bits(spec.prior) + 1e-12);
    }
}

TEST_CASE("property: binning never beats the continuous reference") {
    std::mt19937_64 rng(666);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m0 = test::random_model(rng);
        const auto m1 = m0.shifted(test::uniform(rng, -800.0, 800.0));
        const double mi_cont = mutual_information_continuous(BitPrior{}, m0, m1, 1.0);

        const auto [lo, hi] = pair_domain(m0, m1);
        const auto d0 = discretize(m0, lo, hi, 1.0);
        const auto d1 = discretize(m1, lo, hi, 1.0);
        const double width = test::uniform(rng, 2.0, (hi - lo) / 3.0);
        const double phase = test::uniform(rng, 0.0, width);
        const BinningScheme scheme(width, phase, d0.t_start_ps, d0.t_end_ps());
        const ChannelSpec spec{BitPrior{}, bin_density(d0, scheme), bin_density(d1, scheme)};
        CHECK(mutual_information_binned(spec) <= mi_cont + 1e-9);
    }
}

TEST_CASE("property: refining every bin never decreases MI") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m0 = test::random_model(rng);
        const auto m1 = m0.shifted(test::uniform(rng, 0.0, 500.0));
        const auto [lo, hi] = pair_domain(m0, m1);
        const auto d0 = discretize(m0, lo, hi, 1.0);
        const auto d1 = discretize(m1, lo, hi, 1.0);
        const double width = test::uniform(rng, 8.0, 2000.0);
        const double phase = test::uniform(rng, 0.0, width);
        const BinningScheme coarse(width, phase, d0.t_start_ps, d0.t_end_ps());
        const BinningScheme fine(width / 2.0, phase, d0.t_start_ps, d0.t_end_ps());
        const double mi_coarse = mutual_information_binned(
            {BitPrior{}, bin_density(d0, coarse), bin_density(d1, coarse)});
        const double mi_fine = mutual_information_binned(
            {BitPrior{}, bin_density(d0, fine), bin_density(d1, fine)});
        CHECK(mi_fine >= mi_coarse - 1e-12);
    }
}

TEST_CASE("property: continuous MI is symmetric in the delay sign") {
    for (const bool emg : {false, true}) {
        const auto m0 = emg ? ResponseModel::emg(400.0, 290.0, 1000.0)
                            : ResponseModel::gaussian(0.0, 700.0);
        for (double delta : {120.0, 350.0, 775.0}) {
            const double plus =
                mutual_information_continuous(BitPrior{}, m0, m0.shifted(delta), 1.0);
            const double minus =
                mutual_information_continuous(BitPrior{}, m0, m0.shifted(-delta), 1.0);
            CHECK(plus == doctest::Approx(minus).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("property: swapping labels together with the prior changes nothing") {
    std::mt19937_64 rng(888);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t nbins = 2 + rng() % 12;
        const double p0 = test::uniform(rng, 0.0, 1.0);
        const BinningScheme scheme(1.0, 0.0, 0.0, static_cast<double>(nbins));
        const auto c0 = random_probs(rng, nbins);
        const auto c1 = random_probs(rng, nbins);
        const double a = mutual_information_binned({BitPrior{p0, 1.0 - p0},
                                                    BinProbabilities{scheme, c0},
                                                    BinProbabilities{scheme, c1}});
        const double b = mutual_information_binned({BitPrior{1.0 - p0, p0},
                                                    BinProbabilities{scheme, c1},
                                                    BinProbabilities{scheme, c0}});
        CHECK(a == b);
    }
}
