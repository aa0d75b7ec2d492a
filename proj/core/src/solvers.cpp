#include "bousslab/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "bousslab/dyadic_partition.hpp"

namespace bousslab {

void IntegratorConfig::validate() const {
    if (!(dt > 0.0))
        throw std::invalid_argument("IntegratorConfig: dt must be positive");
    if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
        throw std::invalid_argument("IntegratorConfig: cfl_safety in (0, 1]");
    if (!(t_end > 0.0))
        throw std::invalid_argument("IntegratorConfig: t_end must be positive");
    if (snapshot_stride < 1 || block_stride < 1 || field_stride < 0)
        throw std::invalid_argument("IntegratorConfig: bad stride");
    if (lp_exponent < 1.0)
        throw std::invalid_argument("IntegratorConfig: lp_exponent must be >= 1");
}

SpectralField evaluate_source(const SpectralField& theta,
                              const SourceFunction& F) {
    const Grid& g = theta.grid();
    const std::vector<double> phys = theta.to_physical();
    std::vector<double> f1(phys.size()), f2(phys.size());
    for (std::size_t m = 0; m < phys.size(); ++m) {
        f1[m] = F.value(1, phys[m]);
        f2[m] = F.value(2, phys[m]);
        if (!std::isfinite(f1[m]) || !std::isfinite(f2[m]))
            throw NumericalAbort("evaluate_source: source overflow");
    }
    const SpectralField F1 = SpectralField::from_physical(g, f1);
    const SpectralField F2 = SpectralField::from_physical(g, f2);
    SpectralField out = derivative(F2, 0) - derivative(F1, 1);
    dealias_in_place(out);
    return out;
}

namespace {

/// Per-mode factors e^{-tau |k|^alpha} for tau = dt/2; the identity when
/// dissipation is off. full() applies the half factor twice, so the dt step
/// is exactly the square of the half step.
class DiagonalSemigroup {
  public:
    DiagonalSemigroup(const Grid& grid, std::optional<FractionalOrder> alpha)
        : grid_(grid), alpha_(alpha) {}

    void prepare(double dt) {
        if (!alpha_ || dt == dt_)
            return;
        dt_ = dt;
        half_.resize(static_cast<std::size_t>(grid_.size()));
        const double a = alpha_->value();
        half_[0] = 1.0;
        for (int m = 1; m < grid_.size(); ++m)
            half_[static_cast<std::size_t>(m)] =
                std::exp(-0.5 * dt * std::pow(grid_.k_mag(m), a));
    }

    void half(SpectralField& f) const {
        if (!alpha_)
            return;
        auto c = f.coeffs();
        for (std::size_t m = 0; m < half_.size(); ++m)
            c[m] *= half_[m];
    }

    void full(SpectralField& f) const {
        if (!alpha_)
            return;
        auto c = f.coeffs();
        for (std::size_t m = 0; m < half_.size(); ++m)
            c[m] *= half_[m] * half_[m];
    }

  private:
    Grid grid_;
    std::optional<FractionalOrder> alpha_;
    double dt_ = -1.0;
    std::vector<double> half_;
};

double dissipation_rate(const SpectralField& theta, double alpha) {
    const Grid& g = theta.grid();
    const auto c = theta.coeffs();
    double sum = 0.0;
    for (int m = 1; m < g.size(); ++m)
        sum += std::pow(g.k_mag(m), alpha) * std::norm(c[m]);
    const double area = g.box_length() * g.box_length();
    return 2.0 * sum * area;
}

double vector_energy(const VectorField& v) {
    const double e1 = parseval_l2(v.u1);
    const double e2 = parseval_l2(v.u2);
    return std::sqrt(e1 * e1 + e2 * e2);
}

std::vector<double> merged_norm_ps(const IntegratorConfig& cfg) {
    std::vector<double> ps = cfg.omega_norm_ps;
    ps.push_back(cfg.lp_exponent);
    ps.push_back(2.0);
    ps.push_back(kInfinity);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

/// Streams per-step diagnostics into a Trajectory: running integrals every
/// step, scalar/block/field rows on their strides.
class Recorder {
  public:
    Recorder(Trajectory& traj, const DyadicPartition& partition,
             const IntegratorConfig& cfg)
        : traj_(traj), partition_(partition), cfg_(cfg),
          norm_ps_(merged_norm_ps(cfg)) {}

    void update(double t, long step, bool final_step,
                const SpectralField& theta, const SpectralField& omega,
                const VectorField& v, const SpectralField* forcing) {
        const double gv = grad_sup_norm(v);
        const double gtheta = grad_sup_norm(theta);
        if (has_prev_) {
            v_accum_ += 0.5 * (gv + prev_gv_) * (t - prev_t_);
            lip_accum_ += 0.5 * (gtheta + prev_gtheta_) * (t - prev_t_);
        }
        prev_t_ = t;
        prev_gv_ = gv;
        prev_gtheta_ = gtheta;
        has_prev_ = true;

        if (step % cfg_.snapshot_stride == 0 || final_step)
            record_scalars(t, theta, omega, v, forcing, gv, gtheta);
        if (step % cfg_.block_stride == 0 || final_step)
            record_blocks(t, theta, omega, v, forcing);
        const bool field_due =
            cfg_.field_stride > 0 ? step % cfg_.field_stride == 0 : step == 0;
        if (field_due || final_step)
            record_fields(t, theta, omega);
    }

  private:
    void record_scalars(double t, const SpectralField& theta,
                        const SpectralField& omega, const VectorField& v,
                        const SpectralField* forcing, double gv,
                        double gtheta) {
        ScalarSeries& s = traj_.scalars;
        if (!s.times.empty() && s.times.back() == t)
            return;
        s.times.push_back(t);
        s.theta_linf.push_back(lp_norm(theta, kInfinity));
        s.theta_l2.push_back(parseval_l2(theta));
        s.theta_mean.push_back(theta.mean());
        s.dissipation.push_back(
            traj_.diffusion_enabled ? dissipation_rate(theta, traj_.alpha) : 0.0);
        s.energy.push_back(vector_energy(v));
        s.grad_theta_linf.push_back(gtheta);
        s.grad_v_linf.push_back(gv);
        const VectorField low{partition_.block(v.u1, -1),
                              partition_.block(v.u2, -1), v.divergence_free};
        s.grad_lowblock_v_linf.push_back(grad_sup_norm(low));
        s.v_accum.push_back(v_accum_);
        s.lip_theta_accum.push_back(lip_accum_);

        const std::vector<double> omega_phys = omega.to_physical();
        for (double p : norm_ps_)
            s.omega_lp[p].push_back(lp_norm_physical(omega_phys, traj_.grid, p));
        if (forcing) {
            const std::vector<double> f_phys = forcing->to_physical();
            for (double p : norm_ps_)
                s.forcing_lp[p].push_back(
                    lp_norm_physical(f_phys, traj_.grid, p));
        }
    }

    void record_blocks(double t, const SpectralField& theta,
                       const SpectralField& omega, const VectorField& v,
                       const SpectralField* forcing) {
        std::map<TrackedField, std::vector<double>> ps_by_field;
        for (const BlockTrack& track : cfg_.block_tracks)
            ps_by_field[track.field].push_back(track.p);
        for (auto& [field, ps] : ps_by_field) {
            if (field == TrackedField::Forcing && !forcing)
                continue;
            if (field == TrackedField::Velocity) {
                for (double p : ps)
                    append_series({field, p}, t,
                                  block_lp_norms(partition_, v, p));
                continue;
            }
            const SpectralField& src = field == TrackedField::Theta ? theta
                                       : field == TrackedField::Omega
                                           ? omega
                                           : *forcing;
            const auto rows = block_lp_norms(partition_, src, ps);
            for (std::size_t i = 0; i < ps.size(); ++i)
                append_series({field, ps[i]}, t, rows[i]);
        }
    }

    void append_series(const BlockTrack& key, double t,
                       const std::vector<double>& per_q) {
        TimeSeriesNorm& series = traj_.block_series[key];
        if (series.values.empty()) {
            series.values.resize(per_q.size());
            series.p = key.p;
        }
        if (!series.times.empty() && series.times.back() == t)
            return;
        series.times.push_back(t);
        for (std::size_t q = 0; q < per_q.size(); ++q)
            series.values[q].push_back(per_q[q]);
    }

    void record_fields(double t, const SpectralField& theta,
                       const SpectralField& omega) {
        if (!traj_.snapshots.empty() && traj_.snapshots.back().t == t)
            return;
        FieldSnapshot snap{t, std::nullopt, theta};
        if (traj_.omega0.has_value())
            snap.omega = omega;
        traj_.snapshots.push_back(std::move(snap));
    }

    Trajectory& traj_;
    const DyadicPartition& partition_;
    const IntegratorConfig& cfg_;
    std::vector<double> norm_ps_;
    bool has_prev_ = false;
    double prev_t_ = 0.0, prev_gv_ = 0.0, prev_gtheta_ = 0.0;
    double v_accum_ = 0.0, lip_accum_ = 0.0;
};

void check_finite(const SpectralField& f, const char* what) {
    for (const Complex& c : f.coeffs())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NumericalAbort(std::string(what) + ": NaN/Inf detected");
}

double clamp_step(const IntegratorConfig& cfg, const Grid& grid, double vmax,
                  double t) {
    if (!std::isfinite(vmax))
        throw NumericalAbort("step size: velocity max is not finite");
    double h = std::min(cfg.dt,
                        cfg.cfl_safety * grid.dx() / std::max(1.0, vmax));
    h = std::min(h, cfg.t_end - t);
    if (h <= cfg.dt * 1e-10)
        throw NumericalAbort("step size: CFL clamp collapsed dt");
    return h;
}

struct BqState {
    SpectralField omega;
    SpectralField theta;
};

/// One integrating-factor RK4 step of the coupled system; the semigroup acts
/// on theta only (the vorticity has no dissipation).
void boussinesq_step(BqState& s, const SourceFunction& F,
                     const DiagonalSemigroup& sg, double h) {
    auto rhs = [&F](const BqState& state) -> BqState {
        const VectorField v = biot_savart(state.omega);
        SpectralField domega = evaluate_source(state.theta, F);
        domega -= advect(v, state.omega);
        SpectralField dtheta = advect(v, state.theta);
        dtheta *= -1.0;
        return BqState{std::move(domega), std::move(dtheta)};
    };

    const BqState n1 = rhs(s);

    BqState stage{s.omega + (h / 2.0) * n1.omega,
                  s.theta + (h / 2.0) * n1.theta};
    sg.half(stage.theta);
    const BqState n2 = rhs(stage);

    SpectralField e_theta = s.theta;
    sg.half(e_theta);
    stage = BqState{s.omega + (h / 2.0) * n2.omega,
                    e_theta + (h / 2.0) * n2.theta};
    const BqState n3 = rhs(stage);

    SpectralField e2_theta = s.theta;
    sg.full(e2_theta);
    SpectralField en3 = n3.theta;
    sg.half(en3);
    stage = BqState{s.omega + h * n3.omega, e2_theta + h * en3};
    const BqState n4 = rhs(stage);

    s.omega += (h / 6.0) * (n1.omega + 2.0 * (n2.omega + n3.omega) + n4.omega);

    SpectralField acc = n1.theta;
    sg.full(acc);
    SpectralField mid = n2.theta + n3.theta;
    sg.half(mid);
    acc += 2.0 * mid;
    acc += n4.theta;
    acc *= h / 6.0;
    s.theta = e2_theta + acc;
}

} // namespace

Trajectory solve_transport_diffusion(const SpectralField& theta0,
                                     const VelocityProvider& velocity,
                                     const ForcingProvider& forcing,
                                     std::optional<FractionalOrder> alpha,
                                     const IntegratorConfig& cfg) {
    cfg.validate();
    const Grid grid = theta0.grid();
    SpectralField theta = dealias(theta0);
    theta.enforce_hermitian();

    Trajectory traj;
    traj.grid = grid;
    traj.alpha = alpha ? alpha->value() : 0.0;
    traj.diffusion_enabled = alpha.has_value();
    traj.lp_exponent = cfg.lp_exponent;
    traj.theta0 = theta;

    const DyadicPartition partition(grid);
    Recorder recorder(traj, partition, cfg);
    DiagonalSemigroup sg(grid, alpha);

    VectorField v_now = velocity(0.0);
    if (v_now.divergence_defect() > 1e-8)
        throw std::invalid_argument(
            "solve_transport_diffusion: velocity is not divergence-free");

    auto rhs = [&](const SpectralField& th, const VectorField& v,
                   double time) {
        SpectralField out = advect(v, th);
        out *= -1.0;
        if (forcing) {
            SpectralField f = dealias(forcing(time));
            out += f;
        }
        return out;
    };

    double t = 0.0;
    long step = 0;
    {
        const SpectralField f0 = forcing ? dealias(forcing(0.0))
                                         : SpectralField::zero(grid);
        recorder.update(t, step, false, theta, curl(v_now), v_now,
                        forcing ? &f0 : nullptr);
    }

    while (t < cfg.t_end * (1.0 - 1e-12)) {
        const double vmax = lp_norm(v_now, kInfinity);
        const double h = clamp_step(cfg, grid, vmax, t);
        sg.prepare(h);

        const VectorField v_half = velocity(t + h / 2.0);
        const VectorField v_end = velocity(t + h);

        const SpectralField n1 = rhs(theta, v_now, t);
        SpectralField stage = theta + (h / 2.0) * n1;
        sg.half(stage);
        const SpectralField n2 = rhs(stage, v_half, t + h / 2.0);

        SpectralField e_theta = theta;
        sg.half(e_theta);
        stage = e_theta + (h / 2.0) * n2;
        const SpectralField n3 = rhs(stage, v_half, t + h / 2.0);

        SpectralField e2_theta = theta;
        sg.full(e2_theta);
        SpectralField en3 = n3;
        sg.half(en3);
        stage = e2_theta + h * en3;
        const SpectralField n4 = rhs(stage, v_end, t + h);

        SpectralField acc = n1;
        sg.full(acc);
        SpectralField mid = n2 + n3;
        sg.half(mid);
        acc += 2.0 * mid;
        acc += n4;
        acc *= h / 6.0;
        theta = e2_theta + acc;

        t += h;
        ++step;
        check_finite(theta, "solve_transport_diffusion");
        v_now = v_end;

        const bool final_step = t >= cfg.t_end * (1.0 - 1e-12);
        const SpectralField f_now = forcing ? dealias(forcing(t))
                                            : SpectralField::zero(grid);
        recorder.update(t, step, final_step, theta, curl(v_now), v_now,
                        forcing ? &f_now : nullptr);
    }
    return traj;
}

Trajectory solve_boussinesq(const SpectralField& omega0,
                            const SpectralField& theta0,
                            const SourceFunction& F, FractionalOrder alpha,
                            const IntegratorConfig& cfg) {
    cfg.validate();
    const Grid grid = omega0.grid();
    if (!(grid == theta0.grid()))
        throw std::invalid_argument("solve_boussinesq: grid mismatch");

    BqState s{dealias(omega0), dealias(theta0)};
    s.omega.set_mean(0.0); // no stream function for a mean part on the torus
    s.omega.enforce_hermitian();
    s.theta.enforce_hermitian();

    Trajectory traj;
    traj.grid = grid;
    traj.alpha = alpha.value();
    traj.diffusion_enabled = true;
    traj.lp_exponent = cfg.lp_exponent;
    traj.theta0 = s.theta;
    traj.omega0 = s.omega;

    const DyadicPartition partition(grid);
    Recorder recorder(traj, partition, cfg);
    DiagonalSemigroup sg(grid, alpha);

    double t = 0.0;
    long step = 0;
    recorder.update(t, step, false, s.theta, s.omega, biot_savart(s.omega),
                    nullptr);

    while (t < cfg.t_end * (1.0 - 1e-12)) {
        const VectorField v = biot_savart(s.omega);
        const double vmax = lp_norm(v, kInfinity);
        const double h = clamp_step(cfg, grid, vmax, t);
        sg.prepare(h);
        boussinesq_step(s, F, sg, h);
        t += h;
        ++step;
        check_finite(s.theta, "solve_boussinesq theta");
        check_finite(s.omega, "solve_boussinesq omega");
        const bool final_step = t >= cfg.t_end * (1.0 - 1e-12);
        recorder.update(t, step, final_step, s.theta, s.omega,
                        biot_savart(s.omega), nullptr);
    }
    return traj;
}

TwinRunReport twin_run_stability(const TwinRunInit& run1,
                                 const TwinRunInit& run2,
                                 const SourceFunction& F, FractionalOrder alpha,
                                 const IntegratorConfig& cfg) {
    cfg.validate();
    const Grid grid = run1.omega.grid();
    if (!(grid == run2.omega.grid()) || !(grid == run1.theta.grid()) ||
        !(grid == run2.theta.grid()))
        throw std::invalid_argument("twin_run_stability: grid mismatch");

    BqState s1{dealias(run1.omega), dealias(run1.theta)};
    BqState s2{dealias(run2.omega), dealias(run2.theta)};
    for (BqState* s : {&s1, &s2}) {
        s->omega.set_mean(0.0);
        s->omega.enforce_hermitian();
        s->theta.enforce_hermitian();
    }

    TwinRunReport report;
    report.p = cfg.lp_exponent;
    const SpectralField theta_diff0 = s2.theta - s1.theta;
    report.delta0 = lp_norm(biot_savart(s2.omega - s1.omega), report.p) +
                    lp_norm(theta_diff0, report.p) +
                    lp_norm(theta_diff0, kInfinity);

    DiagonalSemigroup sg(grid, alpha);
    double t = 0.0;
    double v1_accum = 0.0, v2_accum = 0.0, lip1_accum = 0.0;
    double prev_g1 = 0.0, prev_g2 = 0.0, prev_lip = 0.0, prev_t = 0.0;
    std::vector<double> shape;

    auto record = [&](bool first) {
        const VectorField v1 = biot_savart(s1.omega);
        const VectorField v2 = biot_savart(s2.omega);
        const double g1 = grad_sup_norm(v1);
        const double g2 = grad_sup_norm(v2);
        const double lip = grad_sup_norm(s1.theta);
        if (!first) {
            v1_accum += 0.5 * (g1 + prev_g1) * (t - prev_t);
            v2_accum += 0.5 * (g2 + prev_g2) * (t - prev_t);
            lip1_accum += 0.5 * (lip + prev_lip) * (t - prev_t);
        }
        prev_g1 = g1;
        prev_g2 = g2;
        prev_lip = lip;
        prev_t = t;
        report.times.push_back(t);
        report.v_diff_lp.push_back(
            lp_norm(biot_savart(s2.omega - s1.omega), report.p));
        report.theta_diff_lp.push_back(lp_norm(s2.theta - s1.theta, report.p));
        shape.push_back(std::exp(v1_accum + v2_accum + t * lip1_accum));
    };

    record(true);
    while (t < cfg.t_end * (1.0 - 1e-12)) {
        const double vmax =
            std::max(lp_norm(biot_savart(s1.omega), kInfinity),
                     lp_norm(biot_savart(s2.omega), kInfinity));
        const double h = clamp_step(cfg, grid, vmax, t);
        sg.prepare(h);
        boussinesq_step(s1, F, sg, h);
        boussinesq_step(s2, F, sg, h);
        t += h;
        check_finite(s1.theta, "twin_run_stability");
        check_finite(s2.theta, "twin_run_stability");
        record(false);
    }

    report.theta_diff_l1t_lp =
        integrate_trapezoid(report.times, report.theta_diff_lp);

    if (report.delta0 > 0.0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < report.times.size(); ++i)
            worst = std::max(worst,
                             report.v_diff_lp[i] / (shape[i] * report.delta0));
        report.fitted_c = worst;

        // log-linear fit v_diff / delta0 ~ A e^{B t}
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int count = 0;
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            if (report.v_diff_lp[i] <= 0.0)
                continue;
            const double x = report.times[i];
            const double y = std::log(report.v_diff_lp[i] / report.delta0);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        if (count >= 2 && sxx * count - sx * sx > 0.0) {
            report.fitted_b = (count * sxy - sx * sy) / (count * sxx - sx * sx);
            report.fitted_a = std::exp((sy - report.fitted_b * sx) / count);
        }
    }
    report.envelope.resize(report.times.size());
    for (std::size_t i = 0; i < report.times.size(); ++i)
        report.envelope[i] = report.fitted_c * shape[i] * report.delta0;
    return report;
}

double interp_at(std::span<const double> times, std::span<const double> values,
                 double t) {
    if (times.empty())
        throw std::invalid_argument("interp_at: empty series");
    if (t <= times.front())
        return values.front();
    if (t >= times.back())
        return values.back();
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (t <= times[i]) {
            const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
            return (1.0 - w) * values[i - 1] + w * values[i];
        }
    }
    return values.back();
}

} // namespace bousslab
