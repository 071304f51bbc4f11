#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dimfibre/netsim.hpp"
#include "dimfibre/toeplitz.hpp"

using namespace dimfibre;

namespace {

// Random physical Gaussian state: thermal occupations, per-mode squeezing,
// and a passive rotation, plus a random displacement.
GaussianState random_state(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    GaussianState s = vacuum_state(n);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const double nu = 0.7 * unif(rng);
        const double r = 0.5 * (unif(rng) - 0.5);
        cov(2 * k, 2 * k) = (2.0 * nu + 1.0) * std::exp(2.0 * r);
        cov(2 * k + 1, 2 * k + 1) = (2.0 * nu + 1.0) * std::exp(-2.0 * r);
    }
    Eigen::MatrixXd gauss(n, n);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) gauss(i, k) = normal(rng);
    }
    const Eigen::MatrixXd o = Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();
    s.covariance = cov;
    for (Eigen::Index i = 0; i < s.mean.size(); ++i) s.mean(i) = 2.0 * (unif(rng) - 0.5);
    return apply_passive(s, o);
}

}  // namespace

TEST_CASE("single-segment coefficients match the closed form") {
    const double lambda = 0.35, mu = 0.55;
    const int n = 7;
    const FiniteMCoefficients c = finite_m_coefficients(1, n, lambda, mu);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            double want = 0.0;
            if (i == k) {
                want = std::sqrt(lambda);
            } else if (i > k) {
                want = -(1.0 - lambda) * std::sqrt(mu) *
                       std::pow(mu * lambda, (i - k - 1) / 2.0);
            }
            CHECK(c.a_matrix(i, k) == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("memoryless chain collapses to sqrt(lambda) identity") {
    for (const int m : {1, 4, 37}) {
        const FiniteMCoefficients c = finite_m_coefficients(m, 3, 0.3, 0.0);
        CHECK((c.a_matrix - std::sqrt(0.3) * Eigen::MatrixXd::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("a_matrix is lower triangular") {
    const FiniteMCoefficients c = finite_m_coefficients(9, 6, 0.4, 0.3);
    for (int i = 0; i < 6; ++i) {
        for (int k = i + 1; k < 6; ++k) CHECK(c.a_matrix(i, k) == 0.0);
    }
}

TEST_CASE("large-M subdiagonal approaches the closed form") {
    // A_{2,1} -> sqrt(lambda) sqrt(mu) ln(lambda)
    const FiniteMCoefficients c = finite_m_coefficients(10000, 2, 0.3, 0.2);
    const double want = std::sqrt(0.3) * std::sqrt(0.2) * std::log(0.3);
    CHECK(std::abs(c.a_matrix(1, 0) - want) < 1e-3);
}

TEST_CASE("environment tracking satisfies the commutation identity") {
    for (const auto& [m, n] : {std::pair{1, 5}, {6, 4}, {20, 3}, {100, 2}}) {
        const FiniteMCoefficients c = finite_m_coefficients(m, n, 0.35, 0.45, true);
        REQUIRE(c.gram_residual.has_value());
        CHECK(*c.gram_residual < 1e-10);
    }
}

TEST_CASE("environment memory guard") {
    CHECK_THROWS_AS(finite_m_coefficients(3000, 2, 0.5, 0.5, true), std::invalid_argument);
    CHECK_THROWS_AS(finite_m_coefficients(0, 2, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(finite_m_coefficients(2, 2, 1.1, 0.5), std::invalid_argument);
}

TEST_CASE("full interferometer is orthogonal and matches the recurrence") {
    for (const auto& [m, n] : {std::pair{1, 1}, {3, 2}, {5, 4}, {8, 5}}) {
        const Eigen::MatrixXd o = full_interferometer(m, n, 0.3, 0.2);
        const int dim = n + n * m;
        CHECK((o * o.transpose() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() <
              1e-12);
        const FiniteMCoefficients c = finite_m_coefficients(m, n, 0.3, 0.2);
        CHECK((o.topLeftCorner(n, n) - c.a_matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("single beam splitter rotation") {
    const double lambda = 0.62;
    const Eigen::MatrixXd o = full_interferometer(1, 1, lambda, 0.9);
    CHECK(o(0, 0) == doctest::Approx(std::sqrt(lambda)).epsilon(1e-15));
    CHECK(o(0, 1) == doctest::Approx(std::sqrt(1.0 - lambda)).epsilon(1e-15));
    CHECK(o(1, 0) == doctest::Approx(-std::sqrt(1.0 - lambda)).epsilon(1e-15));
    CHECK(o(1, 1) == doctest::Approx(std::sqrt(lambda)).epsilon(1e-15));
}

TEST_CASE("interferometer size guard") {
    CHECK_THROWS_AS(full_interferometer(100, 5, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("convergence study decreases and hits the trivial limits") {
    const auto errs = convergence_study(8, 0.3, 0.2, {10, 100, 1000});
    REQUIRE(errs.size() == 3);
    CHECK(errs[0].max_abs_error > errs[1].max_abs_error);
    CHECK(errs[1].max_abs_error > errs[2].max_abs_error);
    for (const auto& point : errs) CHECK(point.max_abs_error > 0.0);

    for (const auto& point : convergence_study(8, 0.3, 0.0, {1, 10, 100})) {
        CHECK(point.max_abs_error < 1e-14);
    }
    for (const auto& point : convergence_study(4, 1.0, 0.5, {1, 7, 50})) {
        CHECK(point.max_abs_error < 1e-14);
    }
    CHECK_THROWS_AS(convergence_study(4, 0.5, 0.3, {}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(4, 0.5, 0.3, {10, 10}), std::invalid_argument);
}

TEST_CASE("attenuator action on simple states") {
    const GaussianState vac = vacuum_state(1);
    const GaussianState same = apply_attenuator(vac, 1.0, 3.0);
    CHECK((same.covariance - vac.covariance).cwiseAbs().maxCoeff() == 0.0);

    const GaussianState swapped = apply_attenuator(vac, 0.0, 1.5);
    CHECK((swapped.covariance - 4.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() ==
          0.0);

    // thermal nu' in, lambda mixing: (lambda (2nu'+1) + (1-lambda)(2nu+1)) I
    const GaussianState thermal_in = thermal_state(1, 0.8);
    const GaussianState out = apply_attenuator(thermal_in, 0.3, 0.2);
    const double want = 0.3 * 2.6 + 0.7 * 1.4;
    CHECK((out.covariance - want * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);

    CHECK_THROWS_AS(apply_attenuator(vacuum_state(2), 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("attenuators compose") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const GaussianState s = random_state(1, rng);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double l1 = unif(rng), l2 = unif(rng), nu = unif(rng);
        const GaussianState two_step = apply_attenuator(apply_attenuator(s, l2, nu), l1, nu);
        const GaussianState one_step = apply_attenuator(s, l1 * l2, nu);
        CHECK((two_step.mean - one_step.mean).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((two_step.covariance - one_step.covariance).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("single-mode propagation equals the attenuator") {
    const ChannelParams params{0.5, 0.0, 1.0, 1.0};
    const GaussianState out = propagate_gaussian(vacuum_state(1), 1, params);
    // lambda gamma + (1 - lambda gamma)(2nu+1) = 0.5 + 0.5 * 3 = 2
    CHECK((out.covariance - 2.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);
}

TEST_CASE("zero transmissivity thermalises any input") {
    std::mt19937 rng(17);
    const ChannelParams params{0.0, 0.6, 0.9, 1.0};
    for (int trial = 0; trial < 5; ++trial) {
        const GaussianState in = random_state(4, rng);
        const GaussianState out = propagate_gaussian(in, 4, params);
        CHECK(out.mean.cwiseAbs().maxCoeff() < 1e-12);
        CHECK((out.covariance - 2.8 * Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("propagation composes in lambda") {
    std::mt19937 rng(29);
    const double mu = 0.35, nu = 0.4;
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const GaussianState in = random_state(n, rng);
        std::uniform_real_distribution<double> unif(0.1, 0.9);
        const double l1 = unif(rng), l2 = unif(rng);
        const GaussianState two = propagate_gaussian(
            propagate_gaussian(in, n, {l2, mu, nu, 1.0}), n, {l1, mu, nu, 1.0});
        const GaussianState one = propagate_gaussian(in, n, {l1 * l2, mu, nu, 1.0});
        CHECK((two.mean - one.mean).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((two.covariance - one.covariance).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("propagation preserves the uncertainty relation") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const GaussianState in = random_state(n, rng);
        in.validate();
        std::uniform_real_distribution<double> unif(0.0, 0.9);
        const ChannelParams params{unif(rng), unif(rng), unif(rng), 0.5 + unif(rng) / 2.0};
        const GaussianState out = propagate_gaussian(in, n, params);
        out.validate();  // throws on violation
    }
    CHECK(true);
}

TEST_CASE("propagation matches the decomposition route") {
    std::mt19937 rng(37);
    const ChannelParams params{0.5, 0.3, 0.2, 1.0};
    const int n = 3;
    const ChannelDecomposition dec = decompose(n, params);
    for (int trial = 0; trial < 5; ++trial) {
        const GaussianState in = random_state(n, rng);
        const GaussianState direct = propagate_gaussian(in, n, params);

        GaussianState routed = apply_passive(in, dec.o1);
        for (int i = 0; i < n; ++i) {
            // lift mode i into a single-mode state, attenuate, put back
            GaussianState mode{1, routed.mean.segment(2 * i, 2),
                               routed.covariance.block(2 * i, 2 * i, 2, 2)};
            const GaussianState done =
                apply_attenuator(mode, dec.spectrum.values[static_cast<size_t>(i)], params.nu);
            routed.mean.segment(2 * i, 2) = done.mean;
            routed.covariance.block(2 * i, 2 * i, 2, 2) = done.covariance;
        }
        // cross-mode covariance blocks scale by sqrt(eta_i eta_k)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                if (i == k) continue;
                routed.covariance.block(2 * i, 2 * k, 2, 2) *=
                    std::sqrt(dec.spectrum.values[static_cast<size_t>(i)] *
                              dec.spectrum.values[static_cast<size_t>(k)]);
            }
        }
        const GaussianState out = apply_passive(routed, dec.o2.transpose());
        CHECK((out.mean - direct.mean).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((out.covariance - direct.covariance).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("gaussian state json round trip") {
    std::mt19937 rng(41);
    const GaussianState in = random_state(3, rng);
    const GaussianState back = gaussian_state_from_json(to_json(in));
    CHECK(back.n == in.n);
    CHECK((back.mean - in.mean).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.covariance - in.covariance).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(gaussian_state_from_json("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_state_from_json("{\"n\": 1}"), std::invalid_argument);
    // valid JSON but unphysical covariance
    CHECK_THROWS_AS(
        gaussian_state_from_json(
            "{\"n\":1,\"mean\":[0,0],\"covariance\":[[0.1,0],[0,0.1]]}"),
        std::invalid_argument);
}

TEST_CASE("propagate dimension mismatch") {
    CHECK_THROWS_AS(propagate_gaussian(vacuum_state(2), 3, {0.5, 0.0, 0.0, 1.0}),
                    std::invalid_argument);
}
