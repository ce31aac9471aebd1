#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "oracles.hpp"
#include "wva/errors.hpp"
#include "wva/figures.hpp"
#include "wva/scaling.hpp"

using namespace wva;
constexpr double pi = std::numbers::pi;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool identical(const SweepRow& x, const SweepRow& y) {
    const auto& a = x.report;
    const auto& b = y.report;
    return same_bits(x.axis_value, y.axis_value) && x.flag == y.flag &&
           same_bits(a.p_f, b.p_f) && same_bits(a.f_classical, b.f_classical) &&
           same_bits(a.q_quantum, b.q_quantum) && same_bits(a.wva_fi, b.wva_fi) &&
           same_bits(a.wva_qfi, b.wva_qfi) && same_bits(a.q_conventional, b.q_conventional) &&
           same_bits(a.crb, b.crb) && a.n_max == b.n_max;
}

}  // namespace

TEST_CASE("power-law fit recovers exact exponents") {
    const std::vector<double> xs{10, 20, 40, 80};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(x * x * x);
    const auto fit = fit_power_law(xs, ys);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.residual_max < 1e-12);

    oracle::Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const double k = rng.uniform(-5, 5);
        const double c = rng.uniform(0.1, 10);
        std::vector<double> x, y;
        for (int j = 0; j < 9; ++j) {
            x.push_back(rng.uniform(0.5, 200));
            y.push_back(c * std::pow(x.back(), k));
        }
        const auto f = fit_power_law(x, y);
        CHECK(std::abs(f.slope - k) < 1e-12);
        CHECK(std::abs(f.intercept - std::log(c)) < 1e-11);
    }
}

TEST_CASE("power-law fit errors") {
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS(fit_power_law(two, two), InsufficientPoints);
    const std::vector<double> x{1, 2, 3}, bad{1, 0, 3};
    CHECK_THROWS_AS(fit_power_law(x, bad), NonpositiveData);
    CHECK_THROWS_AS(fit_power_law(bad, x), NonpositiveData);
    const std::vector<double> flat{2, 2, 2};
    CHECK_THROWS_AS(fit_power_law(flat, x), InsufficientPoints);
}

TEST_CASE("fit residuals and r^2 on noisy data") {
    const std::vector<double> x{1, 2, 4, 8, 16};
    const std::vector<double> y{1.1, 3.9, 16.5, 63, 260};
    const auto f = fit_power_law(x, y);
    CHECK(f.r_squared > 0.99);
    CHECK(f.r_squared <= 1.0);
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(std::log(y[i]) - f.intercept - f.slope * std::log(x[i])));
    }
    CHECK(f.residual_max == doctest::Approx(worst));
}

TEST_CASE("sweep spec validation and grids") {
    SweepSpec s;
    s.points = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.points = 3;
    s.start = 1;
    s.stop = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.start = 0;
    s.stop = 4;
    s.log_spaced = true;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.log_spaced = false;
    CHECK(s.grid() == std::vector<double>{0, 2, 4});
    s.start = 1;
    s.stop = 100;
    s.log_spaced = true;
    const auto g = s.grid();
    CHECK(g.front() == 1.0);
    CHECK(g[1] == doctest::Approx(10.0));
    CHECK(g.back() == 100.0);
    CHECK(parse_axis("chi") == SweepAxis::Chi);
    CHECK_THROWS_AS(parse_axis("theta_x"), std::invalid_argument);
}

TEST_CASE("parallel sweep equals the serial reference bit for bit") {
    for (auto id : {FigureId::Fig1c, FigureId::Fig2}) {
        auto spec = figure_sweeps(id).front();
        spec.points = 41;
        const auto serial = run_sweep_serial(spec);
        for (int threads : {1, 2, 3, 8}) {
            const auto parallel = run_sweep(spec, threads);
            REQUIRE(parallel.size() == serial.size());
            for (std::size_t i = 0; i < serial.size(); ++i) CHECK(identical(parallel[i], serial[i]));
        }
    }
}

TEST_CASE("single point sweep row equals fisher_report") {
    auto spec = figure_sweeps(FigureId::Fig2).front();
    const auto row = evaluate_row(spec, 0.05);
    const auto direct = fisher_report(spec.angles, CoherentProbe(8.0), CouplingConfig(0.05));
    SweepRow expected{0.05, direct, RowFlag::Ok};
    CHECK(identical(row, expected));
}

TEST_CASE("degenerate rows are flagged, not dropped") {
    SweepSpec s;
    s.axis = SweepAxis::Chi;
    s.start = 0.0;
    s.stop = 0.1;
    s.points = 5;
    s.angles = {pi / 2, pi / 2, pi};
    s.mean_photons = 8.0;
    const auto rows = run_sweep(s, 2);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].degenerate());
    CHECK(std::abs(rows[0].report.p_f) < 1e-15);
    CHECK(std::isnan(rows[0].report.wva_fi));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK_FALSE(rows[i].degenerate());
}

TEST_CASE("Fig. 1 curves are 2 pi periodic in theta_f") {
    auto spec = figure_sweeps(FigureId::Fig1d).front();
    spec.points = 21;
    const auto base = run_sweep(spec);
    spec.start += 2 * pi;
    spec.stop += 2 * pi;
    const auto shifted = run_sweep(spec);
    // relative to the curve's scale: at theta_f = 0 the FI is exactly 0 on one
    // side and O(1e-30) on the other
    double scale = 0;
    for (const auto& r : base) scale = std::max(scale, r.report.wva_qfi);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(std::abs(base[i].report.wva_fi - shifted[i].report.wva_fi) < 1e-12 * scale);
        CHECK(std::abs(base[i].report.wva_qfi - shifted[i].report.wva_qfi) < 1e-12 * scale);
        CHECK(std::abs(base[i].report.p_f - shifted[i].report.p_f) < 1e-12);
    }
}

TEST_CASE("Fig. 1 sweeps: exceedance only for the stronger couplings") {
    auto max_fi = [](FigureId id) {
        double m = 0;
        for (const auto& r : run_sweep(figure_sweeps(id).front())) m = std::max(m, r.report.wva_fi);
        return m;
    };
    CHECK(max_fi(FigureId::Fig1a) < 9760.0);
    CHECK(max_fi(FigureId::Fig1d) > 9760.0);
}

TEST_CASE("Fig. 4 scaling exponents") {
    const auto result = fig4_scaling(figure_sweeps(FigureId::Fig4).front());
    CHECK(std::abs(result.wva_fi_fit.slope - 4.0) <= 0.3);
    CHECK(std::abs(result.q_cm_fit.slope - 3.0) <= 0.1);
    CHECK(result.q_cm_fit.r_squared > 0.999);
}

TEST_CASE("rows where the QFI paths disagree are flagged") {
    // N = 1, chi = 1e-5 at the AAV point: p_f ~ 1.5e-9 and the closed form's
    // bracket cancels from O(10) to O(1e-14).
    SweepSpec s;
    s.axis = SweepAxis::Chi;
    s.start = 1e-5;
    s.stop = 1e-3;
    s.angles = {pi / 2, pi / 2, pi};
    s.mean_photons = 1.0;
    const auto row = evaluate_row(s, 1e-5);
    CHECK(row.flag == RowFlag::PathMismatch);
    CHECK(row.report.p_f == doctest::Approx(1.5e-9).epsilon(1e-3));
    CHECK(std::isnan(row.report.wva_qfi));
    CHECK(row.report.q_conventional == qfi_conventional(CoherentProbe(1.0)));
    CHECK_THROWS_AS(fisher_report(s.angles, CoherentProbe(1.0), CouplingConfig(1e-5)), PathMismatch);
}
