#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wva/errors.hpp"
#include "wva/infotheory.hpp"

using namespace wva;
constexpr double pi = std::numbers::pi;

namespace {

struct Point {
    PpsAngles angles;
    double mean;
    double chi;
};

// Random points from the acceptance grid, filtered to p_f >= 1e-6.
std::vector<Point> random_points(unsigned seed, int count) {
    oracle::Rng rng(seed);
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < count) {
        Point p{{rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi)},
                rng.uniform(1, 32), rng.uniform(1e-4, 0.2)};
        const CoherentProbe probe(p.mean);
        if (postselection_probability(p.angles, probe, CouplingConfig(p.chi), working_cutoff(probe)) >= 1e-6) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("conventional QFI") {
    CHECK(qfi_conventional(CoherentProbe(0.0)) == 0.0);
    CHECK(qfi_conventional(CoherentProbe(8.0)) == 9760.0);
    for (int n = 1; n <= 64; ++n) {
        const CoherentProbe probe(n);
        const int cut = working_cutoff(probe);
        const long double m2 = oracle::poisson_moment(n, 2, cut);
        const long double m4 = oracle::poisson_moment(n, 4, cut);
        const double variance_route = static_cast<double>(4 * (m4 - m2 * m2));
        CAPTURE(n);
        CHECK(oracle::rel_err(qfi_conventional(probe), variance_route) < 1e-10);
        CHECK(oracle::rel_err(qfi_conventional_series(probe, 2, cut), qfi_conventional(probe)) < 1e-10);
    }
}

TEST_CASE("outcome distribution") {
    SUBCASE("theta_i = 0 gives the Poisson pmf") {
        const CoherentProbe probe(6.5);
        const int cut = working_cutoff(probe);
        const auto d = outcome_distribution({0.0, 1.0, 0.3}, probe, CouplingConfig(0.15), cut);
        const auto pmf = oracle::poisson_pmf(6.5L, cut);
        for (int n = 0; n <= cut; ++n) CHECK(std::abs(d.probs[n] - static_cast<double>(pmf[n])) < 1e-15);
    }
    SUBCASE("matches |<n|Phi_f>|^2 from the state vector") {
        const PpsAngles aav{pi / 2, pi / 2, pi};
        const CoherentProbe probe(8.0);
        const CouplingConfig c(0.1);
        const int cut = working_cutoff(probe);
        const auto d = outcome_distribution(aav, probe, c, cut);
        const auto phi = postselected_state(aav, probe, c, cut).normalized();
        for (int n = 0; n <= cut; ++n) CHECK(std::abs(d.probs[n] - std::norm(phi.amplitudes[n])) < 1e-12);
    }
    SUBCASE("normalization and nonnegativity on random points") {
        for (const auto& p : random_points(3, 200)) {
            const CoherentProbe probe(p.mean);
            const auto d = outcome_distribution(p.angles, probe, CouplingConfig(p.chi), working_cutoff(probe));
            double sum = 0;
            for (double x : d.probs) {
                CHECK(x >= -kNormTolerance);
                sum += x;
            }
            CHECK(std::abs(sum - 1.0) < 1e-10);
        }
    }
    CHECK_THROWS_AS(outcome_distribution({pi / 2, pi / 2, pi}, CoherentProbe(8), CouplingConfig(0), 40),
                    DegeneratePostselection);
}

TEST_CASE("classical Fisher information: analytic vs finite differences") {
    const CoherentProbe probe(8.0);
    const int cut = working_cutoff(probe);
    CHECK(classical_fisher({0.0, 1.2, 0.4}, probe, CouplingConfig(0.05), cut) == 0.0);
    CHECK(std::abs(classical_fisher_fd({0.0, 1.2, 0.4}, probe, CouplingConfig(0.05), cut)) < 1e-10);

    for (const auto& p : random_points(17, 150)) {
        const CoherentProbe pr(p.mean);
        const CouplingConfig c(p.chi);
        const int n_max = working_cutoff(pr);
        const double analytic = classical_fisher(p.angles, pr, c, n_max);
        const double fd = classical_fisher_fd(p.angles, pr, c, n_max);
        CHECK(oracle::rel_err(analytic, fd) < 1e-6);
    }
}

TEST_CASE("finite-difference error falls off quadratically with the step") {
    const PpsAngles a{1.1, 2.3, 0.7};
    const CoherentProbe probe(6.0);
    const CouplingConfig c(0.05);
    const int cut = working_cutoff(probe);
    const double exact = classical_fisher(a, probe, c, cut);
    const double e1 = std::abs(classical_fisher_fd(a, probe, c, cut, 2e-4) - exact);
    const double e2 = std::abs(classical_fisher_fd(a, probe, c, cut, 1e-4) - exact);
    const double ratio = e1 / e2;
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("QFI: derivative path equals the closed form") {
    for (const auto& p : random_points(99, 200)) {
        const CoherentProbe pr(p.mean);
        const CouplingConfig c(p.chi);
        const int n_max = working_cutoff(pr);
        const double state_path = qfi_derivative_path(p.angles, pr, c, n_max);
        const double closed = qfi_closed_form(p.angles, pr, c, n_max);
        CHECK(oracle::rel_err(state_path, closed) < 1e-8);
        CHECK(classical_fisher(p.angles, pr, c, n_max) <= state_path * (1 + 1e-8));
    }
}

TEST_CASE("theta_i = 0 reductions") {
    oracle::Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        const double tf = rng.uniform(0, 2 * pi);
        if (std::pow(std::cos(tf / 2), 2) < 1e-6) continue;
        const CoherentProbe probe(rng.uniform(1, 32));
        const CouplingConfig c(rng.uniform(1e-4, 0.2));
        const PpsAngles a{0.0, tf, rng.uniform(0, 2 * pi)};
        const int n_max = working_cutoff(probe);
        const double qcm = qfi_conventional(probe);
        CHECK(oracle::rel_err(qfi_derivative_path(a, probe, c, n_max), qcm) < 1e-10);
        const double p_f = postselection_probability(a, probe, c, n_max);
        CHECK(oracle::rel_err(p_f * qfi_closed_form(a, probe, c, n_max), std::pow(std::cos(tf / 2), 2) * qcm) < 1e-10);
        CHECK(classical_fisher(a, probe, c, n_max) == 0.0);
    }
}

TEST_CASE("Fig. 1(d) exceedance at chi = 0.1") {
    const CoherentProbe probe(8.0);
    const CouplingConfig c(0.1);
    const int cut = working_cutoff(probe);
    double best_fi = 0, best_qfi = 0;
    for (int i = 0; i <= 200; ++i) {
        const PpsAngles a{pi / 2, 2 * pi * i / 200.0, pi};
        const double p_f = postselection_probability(a, probe, c, cut);
        best_fi = std::max(best_fi, p_f * classical_fisher(a, probe, c, cut));
        best_qfi = std::max(best_qfi, p_f * qfi_derivative_path(a, probe, c, cut));
    }
    CHECK(best_fi > 9760.0);
    CHECK(best_qfi > 9760.0);
    const PpsAngles aav{pi / 2, pi / 2, pi};
    CHECK(postselection_probability(aav, probe, c, cut) * qfi_derivative_path(aav, probe, c, cut) > 9760.0);
}

TEST_CASE("CRB") {
    CHECK(crb_bound(1.0, 4.0) == 0.5);
    CHECK(crb_bound(0.5, 9760.0 * 2) == doctest::Approx(1.0 / std::sqrt(9760.0)).epsilon(1e-15));
    CHECK_THROWS_AS(crb_bound(0.0, 1.0), NonpositiveInformation);
    CHECK_THROWS_AS(crb_bound(0.5, -1.0), NonpositiveInformation);

    const auto r = fisher_report({pi / 2, pi / 2, pi}, CoherentProbe(64.0), CouplingConfig(0.01));
    CHECK(r.crb == doctest::Approx(1.0 / std::sqrt(r.wva_fi)).epsilon(1e-12));
}

TEST_CASE("fisher report") {
    SUBCASE("no postselection") {
        const auto r = fisher_report({0.0, 0.0, 0.0}, CoherentProbe(8.0), CouplingConfig(0.3));
        CHECK(r.p_f == 1.0);
        CHECK(r.q_conventional == 9760.0);
        CHECK(oracle::rel_err(r.q_quantum, 9760.0) < 1e-10);
        CHECK(r.f_classical == 0.0);
        CHECK(std::isinf(r.crb));
    }
    SUBCASE("Fig. 2 chi sweep: FI bounded by QFI") {
        for (int i = 0; i < 60; ++i) {
            const double chi = 1e-4 * std::pow(2000.0, i / 59.0);
            const auto r = fisher_report({pi / 2, pi / 2, pi}, CoherentProbe(8.0), CouplingConfig(chi));
            CHECK(r.wva_fi <= r.wva_qfi * (1 + 1e-8));
        }
    }
    SUBCASE("definitional identities on random points") {
        for (const auto& p : random_points(1234, 60)) {
            const auto r = fisher_report(p.angles, CoherentProbe(p.mean), CouplingConfig(p.chi));
            CHECK(r.wva_fi == r.p_f * r.f_classical);
            CHECK(r.wva_qfi == r.p_f * r.q_quantum);
            if (r.wva_fi > 0) CHECK(std::abs(r.crb * std::sqrt(r.wva_fi) - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(fisher_report({pi / 2, pi / 2, pi}, CoherentProbe(8.0), CouplingConfig(0.0)),
                    DegeneratePostselection);
}

TEST_CASE("higher coupling orders stay consistent across paths") {
    const CoherentProbe probe(4.0);
    const int cut = working_cutoff(probe);
    for (int order : {1, 3}) {
        const CouplingConfig c(0.002, order);
        const PpsAngles a{1.0, 2.0, 2.5};
        CHECK(oracle::rel_err(qfi_derivative_path(a, probe, c, cut), qfi_closed_form(a, probe, c, cut)) < 1e-8);
        CHECK(oracle::rel_err(classical_fisher(a, probe, c, cut), classical_fisher_fd(a, probe, c, cut)) < 1e-6);
    }
    // order 1: Q_cm = 4 Var(n) = 4N
    CHECK(oracle::rel_err(qfi_conventional_series(probe, 1, cut), 16.0) < 1e-12);
}
