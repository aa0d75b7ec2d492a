#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bousslab/presets.hpp"
#include "bousslab/time_norms.hpp"
#include "test_helpers.hpp"

using namespace bousslab;
using namespace bousslab::test;

TEST_CASE("source function presets") {
    const SourceFunction presets[] = {SourceFunction::linear(),
                                      SourceFunction::cubic(),
                                      SourceFunction::sine()};
    for (const SourceFunction& F : presets) {
        CHECK(F.value(1, 0.0) == 0.0);
        CHECK(F.value(2, 0.0) == 0.0);
        // derivatives against central differences
        const double h = 1e-5;
        for (int which : {1, 2})
            for (int order = 1; order <= 5; ++order)
                for (double x : {-0.9, -0.3, 0.2, 0.8}) {
                    const double fd = (F.derivative(which, order - 1, x + h) -
                                       F.derivative(which, order - 1, x - h)) /
                                      (2.0 * h);
                    const double exact = F.derivative(which, order, x);
                    CHECK(std::abs(fd - exact) <
                          1e-6 * std::max(1.0, std::abs(exact)));
                }
    }
    CHECK(SourceFunction::linear().derivative(2, 1, 0.4) == 1.0);
    CHECK_THROWS_AS(SourceFunction::polynomial({1.0, 0.0}, {}),
                    std::invalid_argument);
    const SourceFunction poly =
        SourceFunction::polynomial({0.0, 0.0, 0.5}, {0.0, 1.0});
    CHECK(rel_err(poly.value(1, 2.0), 2.0) < 1e-14);
    CHECK(poly.derivative(1, 2, 1.0) == 1.0);
}

TEST_CASE("evaluate_source examples") {
    const Grid grid(64);
    const SpectralField sy = SpectralField::from_function(
        grid, [](double, double y) { return std::sin(y); });

    // F = (0, theta), theta = sin y: source = d/dx theta = 0
    const SpectralField s1 = evaluate_source(sy, SourceFunction::linear());
    CHECK(s1.max_abs_coeff() < 1e-13);

    // F = (theta, 0), theta = sin y: source = -d/dy theta = -cos y
    const SourceFunction f_first =
        SourceFunction::polynomial({0.0, 1.0}, {});
    const SpectralField s2 = evaluate_source(sy, f_first);
    const std::vector<double> vals = s2.to_physical();
    for (int iy = 0; iy < grid.n(); iy += 9)
        CHECK(rel_err(vals[static_cast<std::size_t>(iy) * grid.n()],
                      -std::cos(grid.y(iy))) < 1e-10);

    // F = (0, theta^3/6): matches a 4th-order finite-difference oracle.
    // theta is kept at low wavenumbers so the stencil resolves theta^3.
    const Grid fine(256);
    const SourceFunction cubic_only =
        SourceFunction::polynomial({}, {0.0, 0.0, 0.0, 1.0 / 6.0});
    const SpectralField theta = band_limit(smooth_random(fine, 5, 1.0), 2.0);
    const SpectralField src = evaluate_source(theta, cubic_only);
    const std::vector<double> tv = theta.to_physical();
    std::vector<double> f2(tv.size());
    for (std::size_t m = 0; m < tv.size(); ++m)
        f2[m] = tv[m] * tv[m] * tv[m] / 6.0;
    const int n = fine.n();
    const double h = fine.dx();
    std::vector<double> fd(tv.size());
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            auto at = [&](int i) {
                return f2[static_cast<std::size_t>(iy) * n + ((i + n) % n)];
            };
            fd[static_cast<std::size_t>(iy) * n + ix] =
                (-at(ix + 2) + 8.0 * at(ix + 1) - 8.0 * at(ix - 1) +
                 at(ix - 2)) /
                (12.0 * h);
        }
    const std::vector<double> got = src.to_physical();
    double worst = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < got.size(); ++m) {
        worst = std::max(worst, std::abs(got[m] - fd[m]));
        scale = std::max(scale, std::abs(got[m]));
    }
    CHECK(worst / scale < 1e-4);
}

TEST_CASE("transport-diffusion: exact decay at zero velocity") {
    const Grid grid(64);
    SpectralField theta0 = SpectralField::from_function(
        grid, [](double x, double) { return std::sin(3.0 * x); });
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 1.0;
    const double alpha = 1.5;
    const Trajectory traj = solve_transport_diffusion(
        theta0, zero_velocity(grid), nullptr, FractionalOrder(alpha), cfg);
    const SpectralField& final_theta = traj.snapshots.back().theta;
    // sin(3x) has coefficient -i/2 at k = (3, 0); decay must be per-mode exact
    const Complex expected =
        Complex(0.0, -0.5) * std::exp(-std::pow(3.0, alpha) * 1.0);
    CHECK(std::abs(final_theta.at(3, 0) - expected) < 1e-12);
    CHECK(traj.snapshots.back().t == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transport-diffusion: mean conserved, reality preserved") {
    const Grid grid(64);
    SpectralField theta0 = smooth_random(grid, 6);
    theta0.set_mean(0.7);
    IntegratorConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 0.3;
    const Trajectory traj = solve_transport_diffusion(
        theta0, shear_velocity(grid), nullptr, FractionalOrder(1.2), cfg);
    for (double mean : traj.scalars.theta_mean)
        CHECK(rel_err(mean, 0.7) < 1e-10);
    CHECK(traj.snapshots.back().theta.hermitian_defect() < 1e-11);
}

TEST_CASE("transport-diffusion: Richardson self-convergence order 4") {
    const Grid grid(64);
    const SpectralField theta0 = smooth_random(grid, 7, 3.0);
    auto run_with_dt = [&](double dt) {
        IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        return solve_transport_diffusion(theta0, shear_velocity(grid), nullptr,
                                         FractionalOrder(1.5), cfg)
            .snapshots.back()
            .theta;
    };
    const SpectralField c = run_with_dt(0.02);
    const SpectralField m = run_with_dt(0.01);
    const SpectralField f = run_with_dt(0.005);
    const double e1 = parseval_l2(c - m);
    const double e2 = parseval_l2(m - f);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.7);
    CHECK(order < 4.3);
}

TEST_CASE("transport-diffusion: maximum principle and dissipation identity") {
    const Grid grid(128);
    // the dissipation series is only quadrature-resolved when the fastest
    // energetic mode satisfies 2 k_max^alpha dt << 1
    SpectralField theta0 = band_limit(preset_random(grid, 8, 2.0), 6.0);
    theta0 *= 1.0 / lp_norm(theta0, kInfinity);
    IntegratorConfig cfg;
    cfg.dt = 0.0025;
    cfg.t_end = 0.25;
    const Trajectory traj = solve_transport_diffusion(
        theta0, random_streamfunction_velocity(grid, 9), nullptr,
        FractionalOrder(1.5), cfg);

    const double theta0_linf = traj.scalars.theta_linf.front();
    double prev_l2 = kInfinity;
    for (std::size_t i = 0; i < traj.scalars.times.size(); ++i) {
        CHECK(traj.scalars.theta_linf[i] <= theta0_linf * 1.005);
        CHECK(traj.scalars.theta_l2[i] <= prev_l2 * (1.0 + 1e-12));
        prev_l2 = traj.scalars.theta_l2[i];
    }
    const double drop = integrate_simpson(traj.scalars.times,
                                          traj.scalars.dissipation);
    const double l2_0 = traj.scalars.theta_l2.front();
    const double l2_t = traj.scalars.theta_l2.back();
    const double residual = std::abs(l2_t * l2_t + drop - l2_0 * l2_0) /
                            (l2_0 * l2_0);
    CHECK(residual < 1e-6);
}

TEST_CASE("transport-diffusion: lp bound with forcing") {
    const Grid grid(64);
    const SpectralField theta0 = preset_random(grid, 10, 2.0);
    SpectralField fbase = preset_single_block(grid, 2, 11);
    ForcingProvider forcing = [f = fbase](double t) {
        SpectralField out = f;
        out *= std::cos(t);
        return out;
    };
    IntegratorConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 0.5;
    const Trajectory traj = solve_transport_diffusion(
        theta0, shear_velocity(grid), forcing, FractionalOrder(1.0), cfg);
    for (double p : {2.0, kInfinity}) {
        const auto& fl = traj.scalars.forcing_lp.at(p);
        const double budget =
            integrate_trapezoid(traj.scalars.times, fl);
        const double start = p == 2.0 ? traj.scalars.theta_l2.front()
                                      : traj.scalars.theta_linf.front();
        const double end = p == 2.0 ? traj.scalars.theta_l2.back()
                                    : traj.scalars.theta_linf.back();
        CHECK(end <= start + budget * (1.0 + 1e-6) + 1e-12);
    }
}

TEST_CASE("boussinesq: eigenfunction steady state") {
    const Grid grid(64);
    const SpectralField omega0 = preset_euler_eigen(grid);
    IntegratorConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 1.0;
    const Trajectory traj =
        solve_boussinesq(omega0, SpectralField::zero(grid),
                         SourceFunction::linear(), FractionalOrder(1.5), cfg);

    const SpectralField& omega_t = *traj.snapshots.back().omega;
    SpectralField diff = omega_t - omega0;
    std::vector<double> dv = diff.to_physical();
    double linf = 0.0;
    for (double v : dv)
        linf = std::max(linf, std::abs(v));
    CHECK(linf < 1e-6);

    const auto& energy = traj.scalars.energy;
    for (double e : energy)
        CHECK(rel_err(e, energy.front()) < 1e-6);
    for (double p : {2.0, kInfinity}) {
        const auto& series = traj.scalars.omega_lp.at(p);
        for (double v : series)
            CHECK(rel_err(v, series.front()) < 1e-6);
    }
}

TEST_CASE("boussinesq: energy conserved on a generic Euler run") {
    const Grid grid(64);
    SpectralField omega0 = preset_random(grid, 12, 3.0);
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    const Trajectory traj =
        solve_boussinesq(omega0, SpectralField::zero(grid),
                         SourceFunction::linear(), FractionalOrder(1.5), cfg);
    for (double e : traj.scalars.energy)
        CHECK(rel_err(e, traj.scalars.energy.front()) < 1e-6);
}

TEST_CASE("boussinesq: coupled run stays within the maximum principle") {
    const Grid grid(64);
    IntegratorConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 1.0;
    const Trajectory traj = solve_boussinesq(
        preset_euler_eigen(grid), preset_gaussian_bump(grid),
        SourceFunction::linear(), FractionalOrder(1.5), cfg);
    const double theta0_linf = traj.scalars.theta_linf.front();
    for (double v : traj.scalars.theta_linf)
        CHECK(v <= theta0_linf * 1.005);
    // accumulators are monotone
    for (std::size_t i = 1; i < traj.scalars.times.size(); ++i) {
        CHECK(traj.scalars.v_accum[i] >= traj.scalars.v_accum[i - 1]);
        CHECK(traj.scalars.lip_theta_accum[i] >=
              traj.scalars.lip_theta_accum[i - 1]);
    }
}

TEST_CASE("twin runs: identical data gives zero difference") {
    const Grid grid(64);
    const TwinRunInit init{preset_euler_eigen(grid), preset_gaussian_bump(grid)};
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 0.2;
    const TwinRunReport rep = twin_run_stability(
        init, init, SourceFunction::linear(), FractionalOrder(1.5), cfg);
    CHECK(rep.delta0 == 0.0);
    for (double v : rep.v_diff_lp)
        CHECK(v < 1e-13);
}

TEST_CASE("twin runs: linear response and envelope") {
    const Grid grid(64);
    const SpectralField omega0 = preset_euler_eigen(grid);
    const SpectralField theta0 = preset_gaussian_bump(grid);
    const SpectralField bump_o = preset_random(grid, 500, 2.0);
    const SpectralField bump_t = preset_random(grid, 501, 2.0);
    auto perturbed = [&](double eps) {
        TwinRunInit init{omega0, theta0};
        init.omega += eps * bump_o;
        init.theta += eps * bump_t;
        return init;
    };
    IntegratorConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 0.5;
    const TwinRunInit base{omega0, theta0};
    const TwinRunReport full = twin_run_stability(
        base, perturbed(1e-4), SourceFunction::linear(), FractionalOrder(1.5),
        cfg);
    const TwinRunReport half = twin_run_stability(
        base, perturbed(5e-5), SourceFunction::linear(), FractionalOrder(1.5),
        cfg);
    const double r_full = interp_at(full.times, full.v_diff_lp, 0.25);
    const double r_half = interp_at(half.times, half.v_diff_lp, 0.25);
    CHECK(r_full / r_half > 1.8);
    CHECK(r_full / r_half < 2.2);
    CHECK(full.fitted_c > 0.0);
    for (std::size_t i = 0; i < full.times.size(); ++i)
        CHECK(full.v_diff_lp[i] <= full.envelope[i] * (1.0 + 1e-12));
}

TEST_CASE("trajectory binary round trip and version guard") {
    const Grid grid(32);
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 0.2;
    const Trajectory traj = solve_boussinesq(
        preset_euler_eigen(grid), preset_gaussian_bump(grid),
        SourceFunction::linear(), FractionalOrder(1.0), cfg);
    std::stringstream buffer;
    write_trajectory(buffer, traj);
    const Trajectory back = read_trajectory(buffer);
    CHECK(back.grid.n() == grid.n());
    CHECK(back.snapshots.size() == traj.snapshots.size());
    CHECK(spectral_rel_diff(back.snapshots.back().theta,
                            traj.snapshots.back().theta) == 0.0);

    std::stringstream bad;
    bad << "XXXX";
    CHECK_THROWS_AS(read_trajectory(bad), std::runtime_error);

    // unknown version rejected
    std::string bytes = buffer.str();
    bytes[4] = 99;
    std::stringstream vbad(bytes);
    CHECK_THROWS_AS(read_trajectory(vbad), std::runtime_error);
}

TEST_CASE("CFL abort on exploding velocity") {
    const Grid grid(32);
    auto blowup = [grid](double t) {
        SpectralField u1 = SpectralField::zero(grid);
        u1.set_mean(t < 0.05 ? 1.0 : 1e14);
        return VectorField{std::move(u1), SpectralField::zero(grid), true};
    };
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(solve_transport_diffusion(preset_gaussian_bump(grid),
                                              blowup, nullptr,
                                              FractionalOrder(1.0), cfg),
                    NumericalAbort);
}

TEST_CASE("grid 32 is rejected only below 16") {
    CHECK_NOTHROW(Grid(32));
}
