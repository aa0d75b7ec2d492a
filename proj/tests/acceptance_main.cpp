// Acceptance harness: one pass/fail line per criterion, exit 0 iff all pass.
// Runs at the desk scale (grid 256^2, horizons t <= 2).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "bousslab/checks.hpp"
#include "bousslab/presets.hpp"
#include "commands.hpp"
#include "test_helpers.hpp"

using namespace bousslab;
using namespace bousslab::test;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<std::string> failures;

void report(int id, const char* label, const Outcome& outcome) {
    std::printf("%s criterion %2d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                id, label, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass)
        failures.push_back(label);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

const Grid& desk_grid() {
    static const Grid grid(256);
    return grid;
}

// 1. partition of unity on the retained ball
Outcome criterion_partition() {
    const DyadicPartition part(desk_grid());
    const double defect = part.partition_defect();
    return {defect <= 1e-12, fmt("max defect %.3e", defect)};
}

// 2. almost orthogonality over 16 random fields
Outcome criterion_almost_orthogonality() {
    const Grid& grid = desk_grid();
    const DyadicPartition part(grid);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        const SpectralField f = smooth_random(grid, 200 + i);
        double f_mass = 0.0;
        for (const Complex& cc : f.coeffs())
            f_mass += std::norm(cc);
        f_mass = std::sqrt(f_mass);
        std::vector<SpectralField> blocks = part.decompose(f);
        for (int p = -1; p <= part.q_max(); ++p)
            for (int q = p + 2; q <= part.q_max(); ++q) {
                const SpectralField pq =
                    part.block(blocks[static_cast<std::size_t>(q) + 1], p);
                double mass = 0.0;
                for (const Complex& cc : pq.coeffs())
                    mass += std::norm(cc);
                worst = std::max(worst, std::sqrt(mass) / f_mass);
            }
    }
    return {worst <= 1e-12, fmt("max relative mass %.3e", worst)};
}

// 3. Bernstein sandwich constants
Outcome criterion_bernstein_sandwich() {
    CheckSpec spec;
    spec.count = 32;
    spec.seed = 300;
    spec.alpha = 1.5;
    spec.q_lo = 2;
    spec.q_hi = 6;
    spec.tolerance = 10.0;
    const VerificationReport rep = check_bernstein_sandwich(desk_grid(), spec);
    return {rep.status == CheckStatus::Pass,
            fmt("C = %.3f (< 10)", rep.fitted.at("C"))};
}

// 4. generalized Bernstein floors
Outcome criterion_generalized_bernstein() {
    bool pass = true;
    std::string detail;
    for (double alpha : {1.1, 1.5, 2.0}) {
        for (double p : {2.0, 1.5, 3.0}) {
            CheckSpec spec;
            spec.count = 64;
            spec.seed = 400;
            spec.alpha = alpha;
            spec.p = p;
            spec.q_lo = 2;
            spec.q_hi = 6;
            spec.tolerance = p == 2.0 ? std::pow(0.75, alpha) - 1e-9 : 0.05;
            const VerificationReport rep =
                check_generalized_bernstein(desk_grid(), spec);
            pass = pass && rep.status == CheckStatus::Pass;
            if (p == 2.0 && alpha == 1.5)
                detail = fmt("p=2,a=1.5 floor %.4f >= %.4f", rep.min,
                             spec.tolerance);
        }
    }
    return {pass, detail};
}

// 5. positivity corollary margins
Outcome criterion_positivity() {
    double worst = kInfinity;
    bool pass = true;
    for (double p : {1.5, 2.0, 3.0})
        for (double alpha : {0.5, 1.0}) {
            CheckSpec spec;
            spec.count = 64;
            spec.seed = 500;
            spec.p = p;
            spec.alpha = alpha;
            spec.tolerance = -1e-8;
            const VerificationReport rep =
                check_positivity_corollary(desk_grid(), spec);
            pass = pass && rep.status == CheckStatus::Pass;
            worst = std::min(worst, rep.min);
        }
    return {pass, fmt("min margin %.3e >= -1e-8", worst)};
}

// 6. semigroup decay rates
Outcome criterion_semigroup() {
    const double alpha = 1.5;
    bool pass = true;
    std::string detail;
    for (double p : {2.0, 4.0, kInfinity}) {
        CheckSpec spec;
        spec.count = 16;
        spec.seed = 600;
        spec.alpha = alpha;
        spec.p = p;
        spec.q_lo = 2;
        spec.q_hi = 5;
        if (p == 2.0) {
            spec.c_min = std::pow(0.75, alpha) * 0.9;
            spec.c_max = std::pow(8.0 / 3.0, alpha) * 1.1;
        }
        const VerificationReport rep = check_semigroup_decay(desk_grid(), spec);
        pass = pass && rep.status != CheckStatus::Fail;
        if (p == 2.0)
            detail = fmt("p=2 rate/2^{ja} in [%.3f, %.3f]", rep.min, rep.max);
    }
    return {pass, detail};
}

// 7. maximum principle + dissipation identity on 10 driven runs
Outcome criterion_max_principle() {
    const Grid& grid = desk_grid();
    struct RunSpec {
        double alpha;
        double kmax;
        int velocity; // 0 zero, 1 shear, 2 eigen, 3 random, 4 pulsating
    };
    const RunSpec runs[] = {{1.1, 6.0, 1}, {1.5, 6.0, 2}, {2.0, 4.0, 3},
                            {1.5, 6.0, 4}, {1.1, 6.0, 3}, {2.0, 4.0, 1},
                            {1.5, 4.0, 0}, {1.1, 4.0, 2}, {2.0, 4.0, 4},
                            {1.5, 6.0, 3}};
    double worst_ratio = 0.0, worst_resid = 0.0;
    bool monotone = true;
    int index = 0;
    for (const RunSpec& rs : runs) {
        SpectralField theta0 =
            band_limit(preset_random(grid, 700 + index, 2.0), rs.kmax);
        theta0 *= 1.0 / lp_norm(theta0, kInfinity);
        VelocityProvider velocity =
            rs.velocity == 0   ? zero_velocity(grid)
            : rs.velocity == 1 ? shear_velocity(grid)
            : rs.velocity == 2 ? eigenfunction_velocity(grid)
            : rs.velocity == 3
                ? random_streamfunction_velocity(grid, 7000 + index)
                : pulsating_shear_velocity(grid);
        IntegratorConfig cfg;
        cfg.t_end = 0.25;
        // snap dt to divide t_end: the dissipation series is Simpson-integrated
        // and needs a uniform time grid
        const double dt_raw = 0.035 / std::pow(rs.kmax, rs.alpha);
        cfg.dt = cfg.t_end / std::ceil(cfg.t_end / dt_raw);
        const Trajectory traj = solve_transport_diffusion(
            theta0, velocity, nullptr, FractionalOrder(rs.alpha), cfg);

        const double theta0_linf = traj.scalars.theta_linf.front();
        for (double v : traj.scalars.theta_linf)
            worst_ratio = std::max(worst_ratio, v / theta0_linf);
        for (std::size_t i = 1; i < traj.scalars.theta_l2.size(); ++i)
            monotone = monotone && traj.scalars.theta_l2[i] <=
                                       traj.scalars.theta_l2[i - 1] * (1 + 1e-12);
        const double drop = integrate_simpson(traj.scalars.times,
                                              traj.scalars.dissipation);
        const double l2_0 = traj.scalars.theta_l2.front();
        const double l2_t = traj.scalars.theta_l2.back();
        worst_resid =
            std::max(worst_resid,
                     std::abs(l2_t * l2_t + drop - l2_0 * l2_0) / (l2_0 * l2_0));
        ++index;
    }
    const bool pass = worst_ratio <= 1.005 && monotone && worst_resid <= 1e-6;
    return {pass, fmt("sup ratio %.6f, L2 identity residual %.2e",
                      worst_ratio, worst_resid)};
}

Trajectory standard_driven_run(const VelocityProvider& velocity) {
    const Grid& grid = desk_grid();
    IntegratorConfig cfg;
    cfg.dt = 0.005;
    cfg.t_end = 1.0;
    cfg.block_stride = 2;
    cfg.omega_norm_ps = {2.0, 4.0, kInfinity};
    cfg.block_tracks = {{TrackedField::Theta, 2.0},
                        {TrackedField::Theta, 4.0},
                        {TrackedField::Theta, kInfinity}};
    return solve_transport_diffusion(preset_random(grid, 800, 2.0), velocity,
                                     nullptr, FractionalOrder(1.5), cfg);
}

// 8. dyadic L^rho_t L^r smoothing on the shear-driven run
Outcome criterion_smoothing_lr(const Trajectory& shear) {
    double worst = 0.0;
    bool pass = true;
    for (double rho : {1.0, 2.0, kInfinity})
        for (double r : {2.0, 4.0}) {
            CheckSpec spec;
            spec.rho = rho;
            spec.r = r;
            spec.tolerance = 20.0;
            const VerificationReport rep = check_smoothing_lr(shear, spec);
            pass = pass && rep.status == CheckStatus::Pass;
            worst = std::max(worst, rep.fitted.at("max_ratio"));
        }
    return {pass, fmt("max ratio %.3f (<= 20)", worst)};
}

// 9. sup-norm smoothing on two driven runs
Outcome criterion_smoothing_linf(const Trajectory& shear,
                                 const Trajectory& eigen) {
    bool pass = true;
    double worst_ratio = 0.0, worst_slope = -kInfinity;
    for (const Trajectory* run : {&shear, &eigen}) {
        CheckSpec spec;
        spec.tolerance = 20.0;
        spec.slope_max = 0.1;
        const VerificationReport rep = check_smoothing_linf(*run, spec);
        pass = pass && rep.status == CheckStatus::Pass;
        worst_ratio = std::max(worst_ratio, rep.fitted.at("max_ratio"));
        worst_slope = std::max(worst_slope, rep.fitted.at("ratio_slope_q"));
    }
    return {pass, fmt("max ratio %.3f, slope in q %.4f (<= 0.1)", worst_ratio,
                      worst_slope)};
}

// 10. Euler reductions on the eigenfunction steady state
Outcome criterion_euler() {
    const Grid& grid = desk_grid();
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    cfg.field_stride = 25;
    const Trajectory traj =
        solve_boussinesq(preset_euler_eigen(grid), SpectralField::zero(grid),
                         SourceFunction::linear(), FractionalOrder(1.5), cfg);
    double worst = 0.0;
    for (double p : {2.0, kInfinity}) {
        const auto& series = traj.scalars.omega_lp.at(p);
        for (double v : series)
            worst = std::max(worst, std::abs(v - series.front()) /
                                        series.front());
    }
    const auto& energy = traj.scalars.energy;
    for (double e : energy)
        worst = std::max(worst, std::abs(e - energy.front()) / energy.front());

    double steadiness = 0.0;
    const SpectralField omega0 = *traj.snapshots.front().omega;
    for (const FieldSnapshot& snap : traj.snapshots) {
        const std::vector<double> diff = (*snap.omega - omega0).to_physical();
        for (double v : diff)
            steadiness = std::max(steadiness, std::abs(v));
    }
    const bool pass = worst <= 1e-6 && steadiness <= 1e-6;
    return {pass,
            fmt("norm drift %.2e, pointwise steadiness %.2e", worst, steadiness)};
}

// 11. a priori cascade on the standard coupled run
Outcome criterion_apriori() {
    const Grid& grid = desk_grid();
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 2.0;
    cfg.block_stride = 4;
    cfg.block_tracks = {{TrackedField::Theta, kInfinity},
                        {TrackedField::Omega, kInfinity},
                        {TrackedField::Velocity, 2.0}};
    const Trajectory traj =
        solve_boussinesq(preset_euler_eigen(grid), preset_gaussian_bump(grid),
                         SourceFunction::linear(), FractionalOrder(1.5), cfg);
    CheckSpec spec;
    spec.tolerance = 50.0;
    const VerificationReport rep = track_apriori_cascade(traj, spec);
    return {rep.status == CheckStatus::Pass,
            fmt("C0 = %.3f (<= 50), grad v log-margin %.3f (<= 0)",
                rep.fitted.at("C0"),
                rep.fitted.at("gradv_double_exp_log_margin"))};
}

// 12. twin-run stability
Outcome criterion_twin_runs() {
    const Grid& grid = desk_grid();
    const SpectralField omega0 = preset_euler_eigen(grid);
    const SpectralField theta0 = preset_gaussian_bump(grid);
    const SpectralField bump_o = preset_random(grid, 1200, 2.0);
    const SpectralField bump_t = preset_random(grid, 1201, 2.0);
    auto perturbed = [&](double eps) {
        TwinRunInit init{omega0, theta0};
        init.omega += eps * bump_o;
        init.theta += eps * bump_t;
        return init;
    };
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    const TwinRunInit base{omega0, theta0};
    const TwinRunReport full = twin_run_stability(
        base, perturbed(1e-4), SourceFunction::linear(), FractionalOrder(1.5),
        cfg);
    const TwinRunReport half = twin_run_stability(
        base, perturbed(5e-5), SourceFunction::linear(), FractionalOrder(1.5),
        cfg);
    CheckSpec spec;
    spec.c_min = 1.8;
    spec.c_max = 2.2;
    spec.t_probe = 0.25;
    spec.envelope_slack = 1.5;
    const VerificationReport rep = check_twin_run(full, half, spec);
    return {rep.status == CheckStatus::Pass,
            fmt("response ratio %.3f in [1.8, 2.2], A=%.3g B=%.3g",
                rep.fitted.at("response_ratio"), rep.fitted.at("fit_A"),
                rep.fitted.at("fit_B"))};
}

// 13. integrator order: Richardson triplet + exact linear decay
Outcome criterion_order() {
    const Grid& grid = desk_grid();
    const SpectralField theta0 = band_limit(smooth_random(grid, 1300, 3.0), 20.0);
    auto run_with_dt = [&](double dt) {
        IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        return solve_transport_diffusion(theta0, shear_velocity(grid), nullptr,
                                         FractionalOrder(1.5), cfg)
            .snapshots.back()
            .theta;
    };
    // all three dt sit below the CFL clamp (0.5 dx at unit velocity), so the
    // runs really use the requested steps
    const SpectralField c = run_with_dt(0.01);
    const SpectralField m = run_with_dt(0.005);
    const SpectralField f = run_with_dt(0.0025);
    const double order = std::log2(parseval_l2(c - m) / parseval_l2(m - f));

    // exact per-mode decay at v = 0
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    const Trajectory still = solve_transport_diffusion(
        theta0, zero_velocity(grid), nullptr, FractionalOrder(1.5), cfg);
    const SpectralField& end = still.snapshots.back().theta;
    double decay_err = 0.0;
    const double scale = theta0.max_abs_coeff();
    for (int mm = 1; mm < grid.size(); ++mm) {
        const Complex c0 = theta0.coeffs()[mm];
        if (std::abs(c0) < 1e-6 * scale)
            continue;
        const Complex want =
            c0 * std::exp(-0.5 * std::pow(grid.k_mag(mm), 1.5));
        decay_err =
            std::max(decay_err, std::abs(end.coeffs()[mm] - want) / std::abs(c0));
    }
    const bool pass = order > 3.7 && order < 4.3 && decay_err < 1e-11;
    return {pass, fmt("order %.3f (4.0 +- 0.3), v=0 decay error %.2e", order,
                      decay_err)};
}

// 14. byte-identical outputs for identical config + seed
Outcome criterion_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bousslab_acceptance";
    fs::remove_all(dir);
    const bousslab::cli::RunConfig cfg = bousslab::cli::RunConfig::from_string(R"(
grid_n = 128
alpha = 1.5
mode = "boussinesq"
initial_omega = "euler_eigen"
initial_theta = "random"
seed = 7
dt = 0.02
t_end = 0.2
ensemble_count = 4
)");
    auto read_file = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream buf;
        buf << is.rdbuf();
        return buf.str();
    };
    bousslab::cli::CommonFlags fa, fb;
    fa.out_dir = (dir / "a").string();
    fb.out_dir = (dir / "b").string();
    if (bousslab::cli::cmd_simulate(cfg, fa) != 0 ||
        bousslab::cli::cmd_simulate(cfg, fb) != 0)
        return {false, "simulate failed"};
    const bool sim_ok =
        read_file(dir / "a" / "summary.csv") ==
            read_file(dir / "b" / "summary.csv") &&
        read_file(dir / "a" / "trajectory.bin") ==
            read_file(dir / "b" / "trajectory.bin");

    bousslab::cli::RunConfig vcfg = cfg;
    vcfg.grid_n = 64;
    bousslab::cli::CommonFlags va, vb;
    va.out_dir = (dir / "va").string();
    vb.out_dir = (dir / "vb").string();
    if (bousslab::cli::cmd_verify("semigroup", vcfg, va) != 0 ||
        bousslab::cli::cmd_verify("semigroup", vcfg, vb) != 0)
        return {false, "verify failed"};
    const bool verify_ok = read_file(dir / "va" / "report_semigroup.json") ==
                           read_file(dir / "vb" / "report_semigroup.json");
    return {sim_ok && verify_ok,
            sim_ok && verify_ok ? "CSV, binary and JSON byte-identical"
                                : "outputs differ"};
}

} // namespace

int main() {
    report(1, "partition of unity", criterion_partition());
    report(2, "almost orthogonality", criterion_almost_orthogonality());
    report(3, "Bernstein sandwich", criterion_bernstein_sandwich());
    report(4, "generalized Bernstein floor", criterion_generalized_bernstein());
    report(5, "positivity corollary margin", criterion_positivity());
    report(6, "semigroup decay rates", criterion_semigroup());
    report(7, "maximum principle + L2 dissipation", criterion_max_principle());

    const Trajectory shear = standard_driven_run(shear_velocity(desk_grid()));
    const Trajectory eigen =
        standard_driven_run(eigenfunction_velocity(desk_grid()));
    report(8, "dyadic L^rho_t L^r smoothing", criterion_smoothing_lr(shear));
    report(9, "sup-norm smoothing", criterion_smoothing_linf(shear, eigen));

    report(10, "Euler reductions", criterion_euler());
    report(11, "a priori cascade", criterion_apriori());
    report(12, "twin-run stability", criterion_twin_runs());
    report(13, "integrator order", criterion_order());
    report(14, "deterministic outputs", criterion_determinism());

    if (failures.empty()) {
        std::printf("acceptance: all 14 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %zu criterion(s) failed\n", failures.size());
    return 1;
}
