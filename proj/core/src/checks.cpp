#include "bousslab/checks.hpp"

#include <algorithm>
#include <cmath>

#include "bousslab/dyadic_partition.hpp"
#include "bousslab/random_fields.hpp"

namespace bousslab {

namespace {

/// sign(x) |x|^{p-1} as |x|^{p-2} x, with value 0 at x = 0 (p > 1).
double signed_power(double x, double p) {
    if (x == 0.0)
        return 0.0;
    return std::pow(std::abs(x), p - 2.0) * x;
}

double quadrature_inner(std::span<const double> a, std::span<const double> b,
                        const Grid& grid) {
    double sum = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        sum += a[m] * b[m];
    return sum * grid.cell_area();
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0)
        return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

VerificationReport make_report(const std::string& name, const CheckSpec& spec,
                               int grid_n) {
    VerificationReport rep;
    rep.name = spec.name.empty() ? name : spec.name;
    rep.params["alpha"] = spec.alpha;
    rep.params["p"] = spec.p;
    rep.params["r"] = spec.r;
    rep.params["rho"] = spec.rho;
    rep.params["s"] = spec.s;
    rep.params["q_lo"] = spec.q_lo;
    rep.params["q_hi"] = spec.q_hi;
    rep.params["count"] = spec.count;
    rep.params["tolerance"] = spec.tolerance;
    rep.seed = spec.seed;
    rep.grid_n = grid_n;
    rep.alpha = spec.alpha;
    return rep;
}

void require_q_range(const DyadicPartition& partition, const CheckSpec& spec) {
    if (spec.q_lo < 0 || spec.q_hi > partition.q_max() || spec.q_lo > spec.q_hi)
        throw std::invalid_argument("check: q range outside grid limits");
    if (spec.count < 1)
        throw std::invalid_argument("check: ensemble count must be >= 1");
}

double spectral_halfderiv_norm2(const SpectralField& f, double alpha) {
    const Grid& g = f.grid();
    const auto c = f.coeffs();
    double sum = 0.0;
    for (int m = 1; m < g.size(); ++m)
        sum += std::pow(g.k_mag(m), alpha) * std::norm(c[m]);
    return sum * g.box_length() * g.box_length();
}

} // namespace

VerificationReport check_generalized_bernstein(const Grid& grid,
                                               const CheckSpec& spec) {
    if (spec.p <= 1.0)
        throw std::invalid_argument("check_generalized_bernstein: p must be > 1");
    const FractionalOrder alpha(spec.alpha);
    const DyadicPartition partition(grid);
    require_q_range(partition, spec);

    VerificationReport rep = make_report("generalized_bernstein", spec, grid.n());
    if (spec.alpha > 1.0)
        rep.notes.push_back("alpha above the proved range (0,1]; measured anyway");
    if (spec.p == 2.0)
        rep.fitted["analytic_floor_p2"] = std::pow(0.75, spec.alpha);

    RandomFieldSpec rf;
    rf.slope = spec.slope;
    for (int i = 0; i < spec.count; ++i) {
        rf.seed = spec.seed + static_cast<std::uint64_t>(i);
        const SpectralField G = random_field(grid, rf);
        for (int j = spec.q_lo; j <= spec.q_hi; ++j) {
            const SpectralField Gj = partition.block(G, j);
            const std::vector<double> phys = Gj.to_physical();
            const double norm_p = lp_norm_physical(phys, grid, spec.p);
            if (norm_p == 0.0)
                continue;
            const std::vector<double> lap =
                fractional_laplacian(Gj, alpha).to_physical();
            std::vector<double> weight(phys.size());
            for (std::size_t m = 0; m < phys.size(); ++m)
                weight[m] = signed_power(phys[m], spec.p);
            const double numerator = quadrature_inner(lap, weight, grid);
            const double denominator =
                std::pow(2.0, j * spec.alpha) * std::pow(norm_p, spec.p);
            rep.samples.push_back({i, j, numerator / denominator});
        }
    }
    rep.finalize_aggregates();
    rep.status = rep.min >= spec.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport check_positivity_corollary(const Grid& grid,
                                              const CheckSpec& spec) {
    if (spec.p <= 1.0)
        throw std::invalid_argument("check_positivity_corollary: p must be > 1");
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        throw std::invalid_argument(
            "check_positivity_corollary: alpha must be in (0, 1]");
    const FractionalOrder alpha(spec.alpha);
    VerificationReport rep = make_report("positivity_corollary", spec, grid.n());

    RandomFieldSpec rf;
    rf.slope = spec.slope;
    for (int i = 0; i < spec.count; ++i) {
        rf.seed = spec.seed + static_cast<std::uint64_t>(i);
        const SpectralField G = random_field(grid, rf);
        const std::vector<double> phys = G.to_physical();
        const std::vector<double> lap =
            fractional_laplacian(G, alpha).to_physical();
        std::vector<double> weight(phys.size()), halfpow(phys.size());
        for (std::size_t m = 0; m < phys.size(); ++m) {
            weight[m] = signed_power(phys[m], spec.p);
            halfpow[m] = std::pow(std::abs(phys[m]), spec.p / 2.0);
        }
        const double rhs = quadrature_inner(lap, weight, grid);
        const SpectralField H = SpectralField::from_physical(grid, halfpow);
        const double lhs = 4.0 * (spec.p - 1.0) / (spec.p * spec.p) *
                           spectral_halfderiv_norm2(H, spec.alpha);
        rep.samples.push_back({i, std::nullopt, rhs - lhs});
    }
    rep.finalize_aggregates();
    rep.status = rep.min >= spec.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport check_bernstein_sandwich(const Grid& grid,
                                            const CheckSpec& spec) {
    const DyadicPartition partition(grid);
    require_q_range(partition, spec);
    VerificationReport rep = make_report("bernstein_sandwich", spec, grid.n());

    const double as[] = {2.0, kInfinity};
    double worst_c = 0.0;
    RandomFieldSpec rf;
    rf.slope = spec.slope;
    for (int i = 0; i < spec.count; ++i) {
        rf.seed = spec.seed + static_cast<std::uint64_t>(i);
        const SpectralField u = random_field(grid, rf);
        for (int q = spec.q_lo; q <= spec.q_hi; ++q) {
            const SpectralField uq = partition.block(u, q);
            const SpectralField dx = derivative(uq, 0);
            const SpectralField dy = derivative(uq, 1);
            const SpectralField dxx = derivative(dx, 0);
            const SpectralField dxy = derivative(dx, 1);
            const SpectralField dyy = derivative(dy, 1);
            const SpectralField frac =
                fractional_laplacian(uq, FractionalOrder(spec.alpha));
            for (double a : as) {
                const double base = lp_norm(uq, a);
                if (base == 0.0)
                    continue;
                const double sup1 = std::max(lp_norm(dx, a), lp_norm(dy, a));
                const double sup2 = std::max(
                    {lp_norm(dxx, a), lp_norm(dxy, a), lp_norm(dyy, a)});
                const double r1 = sup1 / (std::pow(2.0, q) * base);
                const double r2 = sup2 / (std::pow(2.0, 2.0 * q) * base);
                const double rf_ratio = lp_norm(frac, a) /
                                        (std::pow(2.0, q * spec.alpha) * base);
                for (double r : {r1, r2, rf_ratio}) {
                    rep.samples.push_back({i, q, r});
                    worst_c = std::max({worst_c, r, 1.0 / r});
                }
            }
        }
    }
    rep.finalize_aggregates();
    rep.fitted["C"] = worst_c;
    rep.status =
        worst_c < spec.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport check_semigroup_decay(const Grid& grid,
                                         const CheckSpec& spec) {
    const FractionalOrder alpha(spec.alpha);
    const DyadicPartition partition(grid);
    require_q_range(partition, spec);
    VerificationReport rep = make_report("semigroup_decay", spec, grid.n());

    constexpr int kTimes = 9;
    double worst_prefactor = 0.0;
    double worst_residual = 0.0;
    bool rate_ok = true;
    bool any_inconclusive = false;

    RandomFieldSpec rf;
    rf.slope = spec.slope;
    for (int i = 0; i < spec.count; ++i) {
        rf.seed = spec.seed + static_cast<std::uint64_t>(i);
        const SpectralField u = random_field(grid, rf);
        for (int j = spec.q_lo; j <= spec.q_hi; ++j) {
            const SpectralField uj = partition.block(u, j);
            const double n0 = lp_norm(uj, spec.p);
            if (n0 == 0.0)
                continue;
            const double t_span = 2.0 * std::pow(2.0, -j * spec.alpha);
            std::vector<double> ts(kTimes), ys(kTimes);
            for (int m = 0; m < kTimes; ++m) {
                ts[m] = t_span * m / (kTimes - 1);
                ys[m] = std::log(lp_norm(semigroup_apply(uj, alpha, ts[m]),
                                         spec.p));
            }
            const LineFit fit = fit_line(ts, ys);
            const double rate_ratio = -fit.slope / std::pow(2.0, j * spec.alpha);
            const double prefactor = std::exp(fit.intercept) / n0;
            rep.samples.push_back({i, j, rate_ratio});
            worst_prefactor = std::max(worst_prefactor, prefactor);
            worst_residual = std::max(worst_residual, fit.residual_rms);
            if (fit.residual_rms > spec.fit_residual_max) {
                any_inconclusive = true;
                continue; // poorly resolved fit: not counted as failure
            }
            if (rate_ratio < spec.c_min || rate_ratio > spec.c_max ||
                prefactor > spec.big_c_max)
                rate_ok = false;
        }
    }
    rep.finalize_aggregates();
    rep.fitted["max_prefactor"] = worst_prefactor;
    rep.fitted["max_fit_residual"] = worst_residual;
    rep.status = !rate_ok          ? CheckStatus::Fail
                 : any_inconclusive ? CheckStatus::Inconclusive
                                    : CheckStatus::Pass;
    return rep;
}

VerificationReport check_smoothing_lr(const Trajectory& traj,
                                      const CheckSpec& spec) {
    if (!traj.diffusion_enabled)
        throw std::invalid_argument("check_smoothing_lr: dissipation disabled");
    const TimeSeriesNorm& theta = traj.series(TrackedField::Theta, spec.r);
    const auto omega_it = traj.scalars.omega_lp.find(spec.r);
    if (omega_it == traj.scalars.omega_lp.end())
        throw std::invalid_argument("check_smoothing_lr: missing omega L^r series");

    VerificationReport rep = make_report("smoothing_lr", spec, traj.grid.n());
    rep.params["alpha"] = traj.alpha;
    rep.alpha = traj.alpha;

    const DyadicPartition partition(traj.grid);
    const std::vector<double> theta0_blocks =
        block_lp_norms(partition, traj.theta0, spec.r);
    const double theta0_linf = lp_norm(traj.theta0, kInfinity);
    const double omega_l1 =
        integrate_trapezoid(traj.scalars.times, omega_it->second);
    double forcing_l1 = 0.0;
    if (const auto f_it = traj.scalars.forcing_lp.find(spec.r);
        f_it != traj.scalars.forcing_lp.end())
        forcing_l1 = integrate_trapezoid(traj.scalars.times, f_it->second);

    const double shared_rhs = theta0_linf * omega_l1 + forcing_l1;
    double worst = 0.0;
    for (int q = 0; q < static_cast<int>(theta.values.size()) - 1; ++q) {
        const double lhs =
            std::pow(2.0, q * traj.alpha / spec.rho) *
            time_lr_norm(theta.times, theta.values[static_cast<std::size_t>(q) + 1],
                         spec.rho);
        const double rhs = theta0_blocks[static_cast<std::size_t>(q) + 1] + shared_rhs;
        if (rhs == 0.0) {
            if (lhs > 1e-13)
                rep.rhs_zero_violation = true;
            continue;
        }
        const double ratio = lhs / rhs;
        rep.samples.push_back({0, q, ratio});
        worst = std::max(worst, ratio);
    }

    // q = -1 carries the t^{1/rho} weight instead of the dyadic gain.
    {
        const double T = theta.times.back();
        const double tpow =
            spec.rho == kInfinity ? 1.0 : std::pow(T, 1.0 / spec.rho);
        const double lhs = time_lr_norm(theta.times, theta.values[0], spec.rho);
        const double rhs = tpow * (theta0_blocks[0] + shared_rhs);
        if (rhs == 0.0) {
            if (lhs > 1e-13)
                rep.rhs_zero_violation = true;
        } else {
            const double ratio = lhs / rhs;
            rep.fitted["ratio_q_minus1"] = ratio;
            rep.samples.push_back({0, -1, ratio});
            worst = std::max(worst, ratio);
        }
    }
    rep.finalize_aggregates();
    rep.fitted["max_ratio"] = worst;
    rep.status = (worst <= spec.tolerance && !rep.rhs_zero_violation)
                     ? CheckStatus::Pass
                     : CheckStatus::Fail;
    return rep;
}

VerificationReport check_smoothing_linf(const Trajectory& traj,
                                        const CheckSpec& spec) {
    if (!traj.scalars.forcing_lp.empty())
        throw std::invalid_argument("check_smoothing_linf: forcing present");
    if (!traj.diffusion_enabled)
        throw std::invalid_argument("check_smoothing_linf: dissipation disabled");
    const TimeSeriesNorm& theta = traj.series(TrackedField::Theta, kInfinity);
    const auto omega_it = traj.scalars.omega_lp.find(kInfinity);
    if (omega_it == traj.scalars.omega_lp.end())
        throw std::invalid_argument(
            "check_smoothing_linf: missing omega sup-norm series");

    VerificationReport rep = make_report("smoothing_linf", spec, traj.grid.n());
    rep.params["alpha"] = traj.alpha;
    rep.alpha = traj.alpha;

    const double T = theta.times.back();
    const double theta0_linf = lp_norm(traj.theta0, kInfinity);
    const double omega_l1 =
        integrate_trapezoid(traj.scalars.times, omega_it->second);
    const double lowblock_l1 = integrate_trapezoid(
        traj.scalars.times, traj.scalars.grad_lowblock_v_linf);
    const double v_l1 = traj.scalars.v_accum.back();

    double worst = 0.0;
    std::vector<double> qs, ratios;
    for (int q = -1; q < static_cast<int>(theta.values.size()) - 1; ++q) {
        const double lhs =
            std::pow(2.0, q * traj.alpha) *
            integrate_trapezoid(theta.times,
                                theta.values[static_cast<std::size_t>(q) + 1]);
        const double rhs =
            theta0_linf *
            (1.0 + T + (q + 2.0) * omega_l1 + lowblock_l1);
        if (rhs == 0.0) {
            if (lhs > 1e-13)
                rep.rhs_zero_violation = true;
            continue;
        }
        const double ratio = lhs / rhs;
        rep.samples.push_back({0, q, ratio});
        worst = std::max(worst, ratio);
        if (q >= 0) {
            qs.push_back(static_cast<double>(q));
            ratios.push_back(ratio);
        }
    }
    const LineFit slope_fit = fit_line(qs, ratios);
    rep.fitted["ratio_slope_q"] = slope_fit.slope;
    rep.fitted["max_ratio"] = worst;

    // Lipschitz-velocity variant: the (q+2) weight is replaced by the full
    // ||grad v||_{L1_t Linf}, uniformly over the time exponent.
    double worst_remark = 0.0;
    const double remark_rhs = theta0_linf * (1.0 + T + v_l1);
    for (double rho : {1.0, 2.0, kInfinity}) {
        double local = 0.0;
        for (int q = -1; q < static_cast<int>(theta.values.size()) - 1; ++q) {
            const double lhs =
                std::pow(2.0, q * traj.alpha / rho) *
                time_lr_norm(theta.times,
                             theta.values[static_cast<std::size_t>(q) + 1], rho);
            if (remark_rhs > 0.0)
                local = std::max(local, lhs / remark_rhs);
        }
        rep.fitted[rho == kInfinity ? "remark_ratio_rho_inf"
                   : rho == 1.0     ? "remark_ratio_rho_1"
                                    : "remark_ratio_rho_2"] = local;
        worst_remark = std::max(worst_remark, local);
    }

    rep.finalize_aggregates();
    const bool ok = worst <= spec.tolerance &&
                    slope_fit.slope <= spec.slope_max &&
                    worst_remark <= spec.tolerance && !rep.rhs_zero_violation;
    rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport check_besov_smoothing(const Trajectory& traj,
                                         const CheckSpec& spec) {
    if (spec.s <= -1.0)
        throw std::invalid_argument("check_besov_smoothing: s must be > -1");
    if (!traj.diffusion_enabled)
        throw std::invalid_argument("check_besov_smoothing: dissipation disabled");
    const TimeSeriesNorm& theta = traj.series(TrackedField::Theta, spec.p);

    VerificationReport rep = make_report("besov_smoothing", spec, traj.grid.n());
    rep.params["alpha"] = traj.alpha;
    rep.alpha = traj.alpha;

    const DyadicPartition partition(traj.grid);
    const BesovIndex idx{spec.s, spec.p, 1.0};
    const BesovIndex idx_gain{spec.s + traj.alpha, spec.p, 1.0};

    const double lhs = chemin_lerner_norm(theta, idx, kInfinity) +
                       mixed_time_norm(theta, idx_gain, 1.0);

    const double T = theta.times.back();
    const double V = traj.scalars.v_accum.back();
    double rhs = besov_norm(traj.theta0, idx, partition) * (1.0 + T);
    if (traj.block_series.count({TrackedField::Forcing, spec.p}) != 0)
        rhs += mixed_time_norm(traj.series(TrackedField::Forcing, spec.p), idx,
                               1.0);
    if (spec.s >= 1.0) {
        // Gamma term: int ||grad theta||_inf ||v||_{B^s_{p,1}}
        const TimeSeriesNorm& vel = traj.series(TrackedField::Velocity, spec.p);
        std::vector<double> integrand(vel.times.size());
        std::vector<double> weighted(vel.values.size());
        for (std::size_t i = 0; i < vel.times.size(); ++i) {
            for (std::size_t b = 0; b < vel.values.size(); ++b) {
                const int q = static_cast<int>(b) - 1;
                weighted[b] = std::pow(2.0, q * spec.s) * vel.values[b][i];
            }
            const double vnorm = ell_r(weighted, 1.0);
            const double gtheta =
                interp_at(traj.scalars.times, traj.scalars.grad_theta_linf,
                          vel.times[i]);
            integrand[i] = gtheta * vnorm;
        }
        rhs += integrate_trapezoid(vel.times, integrand);
    }
    rhs *= std::exp(V);

    if (rhs == 0.0) {
        rep.rhs_zero_violation = lhs > 1e-13;
        rep.status =
            rep.rhs_zero_violation ? CheckStatus::Fail : CheckStatus::Pass;
        return rep;
    }
    const double ratio = lhs / rhs;
    rep.samples.push_back({0, std::nullopt, ratio});
    rep.finalize_aggregates();
    rep.fitted["ratio"] = ratio;
    rep.fitted["lhs"] = lhs;
    rep.fitted["rhs"] = rhs;
    rep.status = ratio <= spec.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport track_apriori_cascade(const Trajectory& traj,
                                         const CheckSpec& spec) {
    if (!traj.omega0.has_value())
        throw std::invalid_argument("track_apriori_cascade: not a coupled run");
    if (traj.scalars.times.size() < 10)
        throw std::invalid_argument("track_apriori_cascade: trajectory too short");

    VerificationReport rep = make_report("apriori_cascade", spec, traj.grid.n());
    rep.params["alpha"] = traj.alpha;
    rep.alpha = traj.alpha;

    const ScalarSeries& sc = traj.scalars;
    const double p = traj.lp_exponent;
    const auto& omega_inf = sc.omega_lp.at(kInfinity);
    const auto& omega_p = sc.omega_lp.at(p);

    // group 1: ||omega||_{Linf cap Lp} + ||grad theta||_{L1_t Linf}
    std::vector<double> group1(sc.times.size());
    for (std::size_t i = 0; i < sc.times.size(); ++i)
        group1[i] =
            std::max(omega_inf[i], omega_p[i]) + sc.lip_theta_accum[i];

    // minimal C0 with C0 e^{C0 t} >= group1 everywhere (monotone in C0)
    auto dominates = [&](double c) {
        for (std::size_t i = 0; i < sc.times.size(); ++i)
            if (c * std::exp(c * sc.times[i]) < group1[i])
                return false;
        return true;
    };
    double hi = 1.0;
    while (!dominates(hi) && hi < 1e9)
        hi *= 2.0;
    double lo = 0.0;
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (dominates(mid) ? hi : lo) = mid;
    }
    const double c0 = hi;
    rep.fitted["C0"] = c0;

    for (std::size_t i = 0; i < sc.times.size(); ++i)
        rep.samples.push_back(
            {static_cast<int>(i), std::nullopt,
             group1[i] / (c0 * std::exp(c0 * sc.times[i]))});

    // two-parameter growth fit of group 1 (exponent ~ 0 for pure transport)
    {
        std::vector<double> logs(group1.size());
        bool positive = true;
        for (std::size_t i = 0; i < group1.size(); ++i) {
            if (group1[i] <= 0.0) {
                positive = false;
                break;
            }
            logs[i] = std::log(group1[i]);
        }
        if (positive) {
            const LineFit fit = fit_line(sc.times, logs);
            rep.fitted["fit_A"] = std::exp(fit.intercept);
            rep.fitted["fit_B"] = fit.slope;
        }
    }

    // maximum principle for theta
    const double theta0_linf = lp_norm(traj.theta0, kInfinity);
    double max_theta_ratio = 0.0;
    for (double v : sc.theta_linf)
        max_theta_ratio = std::max(max_theta_ratio, v);
    max_theta_ratio = theta0_linf > 0.0 ? max_theta_ratio / theta0_linf : 0.0;
    rep.fitted["max_theta_linf_ratio"] = max_theta_ratio;

    // grad v under the double exponential, in log space (the envelope itself
    // overflows a double long before the data does)
    double worst_gradv_margin = -kInfinity;
    for (std::size_t i = 0; i < sc.times.size(); ++i) {
        if (sc.grad_v_linf[i] <= 0.0)
            continue;
        const double margin = std::log(sc.grad_v_linf[i]) -
                              (std::log(c0) + std::exp(c0 * sc.times[i]));
        worst_gradv_margin = std::max(worst_gradv_margin, margin);
    }
    rep.fitted["gradv_double_exp_log_margin"] = worst_gradv_margin;

    // group 2: ||omega||_{L~inf_t B^0_{inf,1}} + ||grad v||_inf
    double worst_g2_margin = -kInfinity;
    if (traj.block_series.count({TrackedField::Omega, kInfinity}) != 0) {
        const TimeSeriesNorm& wseries = traj.series(TrackedField::Omega, kInfinity);
        std::vector<double> running_max(wseries.values.size(), 0.0);
        for (std::size_t i = 0; i < wseries.times.size(); ++i) {
            double sum = 0.0;
            for (std::size_t b = 0; b < wseries.values.size(); ++b) {
                running_max[b] = std::max(running_max[b], wseries.values[b][i]);
                sum += running_max[b];
            }
            const double gv =
                interp_at(sc.times, sc.grad_v_linf, wseries.times[i]);
            const double g2 = sum + gv;
            if (g2 <= 0.0)
                continue;
            const double margin = std::log(g2) - (std::log(c0) +
                                                  std::exp(c0 * wseries.times[i]));
            worst_g2_margin = std::max(worst_g2_margin, margin);
        }
        rep.fitted["group2_double_exp_log_margin"] = worst_g2_margin;
    }

    // group 3: ||theta||_{L1_t B^1_{inf,1}} + ||v||_{B^{1+2/p}_{p,1}} under
    // the triple exponential
    double worst_g3_margin = -kInfinity;
    if (traj.block_series.count({TrackedField::Theta, kInfinity}) != 0 &&
        traj.block_series.count({TrackedField::Velocity, p}) != 0) {
        const TimeSeriesNorm& tseries = traj.series(TrackedField::Theta, kInfinity);
        const TimeSeriesNorm& vseries = traj.series(TrackedField::Velocity, p);
        const double s_v = 1.0 + 2.0 / p;
        std::vector<double> theta_b1(tseries.times.size());
        std::vector<double> weighted(tseries.values.size());
        for (std::size_t i = 0; i < tseries.times.size(); ++i) {
            for (std::size_t b = 0; b < tseries.values.size(); ++b) {
                const int q = static_cast<int>(b) - 1;
                weighted[b] = std::pow(2.0, q) * tseries.values[b][i];
            }
            theta_b1[i] = ell_r(weighted, 1.0);
        }
        double prefix = 0.0;
        std::vector<double> vweighted(vseries.values.size());
        for (std::size_t i = 0; i < tseries.times.size(); ++i) {
            if (i > 0)
                prefix += 0.5 * (theta_b1[i] + theta_b1[i - 1]) *
                          (tseries.times[i] - tseries.times[i - 1]);
            for (std::size_t b = 0; b < vseries.values.size(); ++b) {
                const int q = static_cast<int>(b) - 1;
                vweighted[b] = std::pow(2.0, q * s_v) * vseries.values[b][i];
            }
            const double g3 = prefix + ell_r(vweighted, 1.0);
            if (g3 <= 0.0)
                continue;
            const double t = tseries.times[i];
            const double inner = std::exp(std::min(700.0, c0 * t));
            const double margin =
                std::log(g3) - (std::log(c0) + std::exp(std::min(700.0, inner)));
            worst_g3_margin = std::max(worst_g3_margin, margin);
        }
        rep.fitted["group3_triple_exp_log_margin"] = worst_g3_margin;
    }

    rep.finalize_aggregates();
    const bool ok = c0 <= spec.tolerance && max_theta_ratio <= 1.005 &&
                    worst_gradv_margin <= 0.0 &&
                    (worst_g2_margin == -kInfinity || worst_g2_margin <= 0.0) &&
                    (worst_g3_margin == -kInfinity || worst_g3_margin <= 0.0);
    rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport check_transport_besov(const Trajectory& traj,
                                         const CheckSpec& spec) {
    VerificationReport rep = make_report("transport_besov", spec, traj.grid.n());
    rep.params["alpha"] = traj.alpha;
    rep.alpha = traj.alpha;

    const DyadicPartition partition(traj.grid);
    double worst = 0.0;

    if (!traj.diffusion_enabled) {
        const TimeSeriesNorm& theta = traj.series(TrackedField::Theta, spec.p);
        const BesovIndex idx{0.0, spec.p, spec.r};
        const double lhs = chemin_lerner_norm(theta, idx, kInfinity);
        double data = besov_norm(traj.theta0, idx, partition);
        if (traj.block_series.count({TrackedField::Forcing, spec.p}) != 0)
            data += chemin_lerner_norm(traj.series(TrackedField::Forcing, spec.p),
                                       idx, 1.0);
        const double rhs = data * (1.0 + traj.scalars.v_accum.back());
        if (rhs == 0.0) {
            rep.rhs_zero_violation = lhs > 1e-13;
        } else {
            const double ratio = lhs / rhs;
            rep.fitted["transport_ratio"] = ratio;
            rep.samples.push_back({0, std::nullopt, ratio});
            worst = std::max(worst, ratio);
        }
    }

    if (traj.omega0.has_value() &&
        traj.block_series.count({TrackedField::Velocity, spec.p}) != 0) {
        const TimeSeriesNorm& vel = traj.series(TrackedField::Velocity, spec.p);
        const BesovIndex idx{spec.s, spec.p, spec.r};
        std::vector<double> weighted(vel.values.size());
        double v0_norm = 0.0;
        double local = 0.0;
        for (std::size_t i = 0; i < vel.times.size(); ++i) {
            for (std::size_t b = 0; b < vel.values.size(); ++b) {
                const int q = static_cast<int>(b) - 1;
                weighted[b] = std::pow(2.0, q * spec.s) * vel.values[b][i];
            }
            const double norm = ell_r(weighted, spec.r);
            if (i == 0) {
                v0_norm = norm;
                continue;
            }
            if (v0_norm == 0.0) {
                rep.rhs_zero_violation = norm > 1e-13;
                break;
            }
            const double V =
                interp_at(traj.scalars.times, traj.scalars.v_accum, vel.times[i]);
            local = std::max(local, norm / (std::exp(V) * v0_norm));
        }
        rep.fitted["persistence_ratio"] = local;
        rep.samples.push_back({0, std::nullopt, local});
        worst = std::max(worst, local);
    }

    rep.finalize_aggregates();
    rep.status = (worst <= spec.tolerance && !rep.rhs_zero_violation)
                     ? CheckStatus::Pass
                     : CheckStatus::Fail;
    return rep;
}

VerificationReport check_composition_bound(const Grid& grid,
                                           const SourceFunction& F,
                                           const CheckSpec& spec) {
    if (spec.s <= 0.0)
        throw std::invalid_argument("check_composition_bound: s must be > 0");
    VerificationReport rep = make_report("composition_bound", spec, grid.n());
    rep.notes.push_back("F bound taken over derivative orders 1..[s]+2");
    const DyadicPartition partition(grid);
    const BesovIndex idx{spec.s, spec.p, 1.0};
    const int order = static_cast<int>(std::floor(spec.s)) + 2;

    RandomFieldSpec rf;
    rf.slope = spec.slope;
    rf.normalize = RandomFieldSpec::Normalize::LinfOne;
    double worst = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        rf.seed = spec.seed + static_cast<std::uint64_t>(i);
        const SpectralField theta = random_field(grid, rf);
        const std::vector<double> phys = theta.to_physical();
        const double radius = lp_norm_physical(phys, grid, kInfinity);
        const double bound = F.derivative_bound(radius, order);
        const double theta_besov = besov_norm(theta, idx, partition);
        if (bound == 0.0 || theta_besov == 0.0)
            continue;
        for (int which = 1; which <= 2; ++which) {
            std::vector<double> mapped(phys.size());
            for (std::size_t m = 0; m < phys.size(); ++m)
                mapped[m] = F.value(which, phys[m]);
            const SpectralField Ftheta =
                SpectralField::from_physical(grid, mapped);
            const double ratio =
                besov_norm(Ftheta, idx, partition) / (bound * theta_besov);
            rep.samples.push_back({i, std::nullopt, ratio});
            worst = std::max(worst, ratio);
        }
    }
    rep.finalize_aggregates();
    rep.fitted["C"] = worst;
    rep.status = worst <= spec.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

VerificationReport check_twin_run(const TwinRunReport& full,
                                  const TwinRunReport& half,
                                  const CheckSpec& spec) {
    VerificationReport rep = make_report("twin_run_stability", spec, 0);
    const double full_at =
        interp_at(full.times, full.v_diff_lp, spec.t_probe);
    const double half_at =
        interp_at(half.times, half.v_diff_lp, spec.t_probe);
    const double response =
        half_at > 0.0 ? full_at / half_at : 0.0;
    rep.fitted["response_ratio"] = response;
    rep.fitted["gronwall_c_full"] = full.fitted_c;
    rep.fitted["gronwall_c_half"] = half.fitted_c;
    rep.fitted["fit_A"] = full.fitted_a;
    rep.fitted["fit_B"] = full.fitted_b;

    bool envelopes_ok = true;
    for (const TwinRunReport* r : {&full, &half}) {
        if (r->delta0 == 0.0)
            continue;
        for (std::size_t i = 0; i < r->times.size(); ++i) {
            const double model =
                r->fitted_a * r->delta0 * std::exp(r->fitted_b * r->times[i]);
            if (model > 0.0 && r->v_diff_lp[i] > spec.envelope_slack * model) {
                envelopes_ok = false;
                break;
            }
            rep.samples.push_back({static_cast<int>(i), std::nullopt,
                                   model > 0.0 ? r->v_diff_lp[i] / model : 0.0});
        }
    }
    rep.finalize_aggregates();
    const bool ok = envelopes_ok && response >= spec.c_min &&
                    response <= spec.c_max;
    rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

} // namespace bousslab
