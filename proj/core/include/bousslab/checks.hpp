#pragma once

#include "bousslab/report.hpp"
#include "bousslab/solvers.hpp"

namespace bousslab {

/// Ratio floor for |D|^alpha paired against the L^p gradient-trade:
///   R(j) = int (|D|^alpha G_j) |G_j|^{p-2} G_j dx / (2^{j alpha} ||G_j||_p^p)
/// over a random ensemble and j in [q_lo, q_hi]. For p = 2 the floor is
/// (3/4)^alpha exactly by Parseval and the annulus support. Rejects p <= 1.
VerificationReport check_generalized_bernstein(const Grid& grid,
                                               const CheckSpec& spec);

/// Margin of
///   4 (p-1)/p^2 || |D|^{alpha/2} |G|^{p/2} ||_2^2
///     <= int (|D|^alpha G) |G|^{p-1} sign G dx
/// over the ensemble; pass iff min margin >= spec.tolerance (a small
/// negative quadrature allowance). Requires p > 1 and alpha in (0, 1].
VerificationReport check_positivity_corollary(const Grid& grid,
                                              const CheckSpec& spec);

/// Two-sided norm equivalences on dyadic blocks:
///   C^{-1} 2^{qk} ||u_q||_a <= sup_{|b|=k} ||d^b u_q||_a <= C 2^{qk} ||u_q||_a
/// for k in {1,2}, a in {2, inf}, plus the |D|^alpha variant. Reports the
/// single constant covering all cases; pass iff C < spec.tolerance.
VerificationReport check_bernstein_sandwich(const Grid& grid,
                                            const CheckSpec& spec);

/// Fits log ||e^{-t|D|^alpha} u_j||_p against t per block j; the rate divided
/// by 2^{j alpha} must land in [c_min, c_max] and the prefactor below
/// big_c_max. Large fit residuals mark the report inconclusive, not failed.
VerificationReport check_semigroup_decay(const Grid& grid,
                                         const CheckSpec& spec);

/// Dyadic L^rho_t L^r gain of alpha/rho derivatives for q >= 0:
///   2^{q alpha/rho} ||Delta_q theta||_{L^rho_t L^r}
///     <= C (||Delta_q theta0||_r + ||theta0||_inf ||omega||_{L1_t L^r}
///           + ||f||_{L1_t L^r}),
/// plus the t^{1/rho}-weighted q = -1 bound. Needs theta block series at
/// p = r and the omega L^r series.
VerificationReport check_smoothing_lr(const Trajectory& traj,
                                      const CheckSpec& spec);

/// Unforced L^infty smoothing:
///   2^{q alpha} int_0^t ||Delta_q theta||_inf
///     <= C ||theta0||_inf (1 + t + (q+2)||omega||_{L1_t Linf}
///                          + ||grad Delta_{-1} v||_{L1_t Linf}),
/// its ratio slope in q (flags (q+2)-breaking growth), and the Lipschitz
/// variant with ||grad v||_{L1_t Linf} for rho in {1, 2, inf}.
VerificationReport check_smoothing_linf(const Trajectory& traj,
                                        const CheckSpec& spec);

/// Besov-scale smoothing:
///   ||theta||_{L~inf_t B^s_{p,1}} + ||theta||_{L1_t B^{s+alpha}_{p,1}}
///     <= C e^{C V(t)} (||theta0||_{B^s_{p,1}} (1+t) + ||f||_{L1_t B^s_{p,1}}
///                       + int Gamma_s),
/// Gamma_s included only for s >= 1. Rejects s <= -1.
VerificationReport check_besov_smoothing(const Trajectory& traj,
                                         const CheckSpec& spec);

/// The growth cascade on a coupled run: fits the minimal C0 with
/// ||omega||_{Linf cap Lp} + ||grad theta||_{L1_t Linf} <= C0 e^{C0 t},
/// then verifies the double- and triple-exponential envelopes with the same
/// C0 and the sup-norm maximum principle for theta. Needs >= 10 samples.
VerificationReport track_apriori_cascade(const Trajectory& traj,
                                         const CheckSpec& spec);

/// Transport estimate in B^0_{p,r} (dissipation disabled) and, when the run
/// carries a vorticity, velocity persistence ||v(t)||_{B^s_{p,r}} against
/// e^{V(t)} ||v0||_{B^s_{p,r}}.
VerificationReport check_transport_besov(const Trajectory& traj,
                                         const CheckSpec& spec);

/// Besov boundedness of theta -> F(theta) against the C^{[s]+2}-ball bound
/// of F on |x| <= ||theta||_inf (measured constant only).
VerificationReport check_composition_bound(const Grid& grid,
                                           const SourceFunction& F,
                                           const CheckSpec& spec);

/// Linear-response and envelope verdict from a delta0 and a delta0/2
/// perturbation pair.
VerificationReport check_twin_run(const TwinRunReport& full,
                                  const TwinRunReport& half,
                                  const CheckSpec& spec);

} // namespace bousslab
