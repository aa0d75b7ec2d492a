#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bousslab/dyadic_partition.hpp"
#include "test_helpers.hpp"

using namespace bousslab;
using namespace bousslab::test;

TEST_CASE("grid rejects bad sizes") {
    CHECK_THROWS_AS(Grid(15), std::invalid_argument);
    CHECK_THROWS_AS(Grid(48), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8), std::invalid_argument);
    CHECK_NOTHROW(Grid(64));
}

TEST_CASE("round trip physical -> spectral -> physical") {
    const Grid grid(64);
    const SpectralField f = smooth_random(grid, 11);
    const std::vector<double> phys = f.to_physical();
    const SpectralField g = SpectralField::from_physical(grid, phys);
    CHECK(spectral_rel_diff(f, g) < 1e-10);
    CHECK(g.hermitian_defect() < 1e-12);
}

TEST_CASE("fractional laplacian on a single mode") {
    const Grid grid(64);
    // f = e^{i(3x+4y)} + conjugate, |k| = 5
    SpectralField f = SpectralField::zero(grid);
    f.at(3, 4) = Complex(0.5, 0.0);
    f.at(-3, -4) = Complex(0.5, 0.0);
    const SpectralField out = fractional_laplacian(f, FractionalOrder(1.0));
    CHECK(rel_err(out.at(3, 4).real(), 2.5) < 1e-14);

    SpectralField c = SpectralField::zero(grid);
    c.set_mean(7.0);
    const SpectralField zc = fractional_laplacian(c, FractionalOrder(0.7));
    CHECK(zc.max_abs_coeff() == 0.0);
}

TEST_CASE("fractional laplacian Parseval oracle") {
    const Grid grid(64);
    const SpectralField f = smooth_random(grid, 3);
    const double alpha = 1.3;
    // oracle: direct spectral sum of |k|^alpha |f_hat|^2 * L^2
    double spectral_sum = 0.0;
    for (int m = 1; m < grid.size(); ++m)
        spectral_sum += std::pow(grid.k_mag(m), alpha) * std::norm(f.coeffs()[m]);
    spectral_sum *= grid.box_length() * grid.box_length();

    const std::vector<double> a = f.to_physical();
    const std::vector<double> b =
        fractional_laplacian(f, FractionalOrder(alpha)).to_physical();
    double quad = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        quad += a[m] * b[m];
    quad *= grid.cell_area();
    CHECK(rel_err(quad, spectral_sum) < 1e-8);
}

TEST_CASE("semigroup decay examples") {
    const Grid grid(64);
    SpectralField f = SpectralField::zero(grid);
    f.at(2, 0) = Complex(0.5, 0.0);
    f.at(-2, 0) = Complex(0.5, 0.0);
    const SpectralField out =
        semigroup_apply(f, FractionalOrder(1.0), std::log(2.0));
    CHECK(rel_err(out.at(2, 0).real(), 0.5 / 4.0) < 1e-14);

    const SpectralField g = smooth_random(grid, 5);
    const SpectralField same = semigroup_apply(g, FractionalOrder(1.5), 0.0);
    CHECK(spectral_rel_diff(g, same) == 0.0);

    CHECK_THROWS_AS(semigroup_apply(g, FractionalOrder(1.0), -0.1),
                    std::invalid_argument);

    // contraction in L2 for a range of times
    double prev = parseval_l2(g);
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
        const double now = parseval_l2(semigroup_apply(g, FractionalOrder(0.8), t));
        CHECK(now <= prev * (1.0 + 1e-14));
        prev = now;
    }
}

TEST_CASE("diagonal multipliers commute") {
    const Grid grid(64);
    const SpectralField f = smooth_random(grid, 9);
    const FractionalOrder alpha(1.2);
    const SpectralField a =
        fractional_laplacian(semigroup_apply(f, alpha, 0.3), alpha);
    const SpectralField b =
        semigroup_apply(fractional_laplacian(f, alpha), alpha, 0.3);
    CHECK(spectral_rel_diff(a, b) < 1e-14);
}

TEST_CASE("FractionalOrder rejects out-of-range exponents") {
    CHECK_THROWS_AS(FractionalOrder(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(2.5), std::invalid_argument);
    CHECK_NOTHROW(FractionalOrder(2.0));
}

TEST_CASE("biot-savart single mode") {
    const Grid grid(64);
    const SpectralField omega = SpectralField::from_function(
        grid, [](double x, double) { return std::sin(x); });
    const VectorField v = biot_savart(omega);
    // omega = sin x -> v = (0, -cos x)
    const std::vector<double> v1 = v.u1.to_physical();
    const std::vector<double> v2 = v.u2.to_physical();
    for (int ix = 0; ix < grid.n(); ix += 7) {
        CHECK(std::abs(v1[static_cast<std::size_t>(ix)]) < 1e-12);
        CHECK(rel_err(v2[static_cast<std::size_t>(ix)],
                      -std::cos(grid.x(ix))) < 1e-10);
    }
    CHECK(v.divergence_defect() < 1e-10);
    CHECK(spectral_rel_diff(curl(v), omega) < 1e-10);
}

TEST_CASE("biot-savart of zero and of nonzero mean") {
    const Grid grid(64);
    const VectorField v = biot_savart(SpectralField::zero(grid));
    CHECK(v.u1.max_abs_coeff() == 0.0);
    CHECK(v.u2.max_abs_coeff() == 0.0);

    SpectralField bad = smooth_random(grid, 2);
    bad.set_mean(1.0);
    CHECK_THROWS_AS(biot_savart(bad), std::invalid_argument);
}

TEST_CASE("biot-savart dyadic norm equivalence") {
    const Grid grid(128);
    const DyadicPartition partition(grid);
    const SpectralField omega = smooth_random(grid, 21);
    const VectorField v = biot_savart(omega);
    for (int q = 2; q <= std::min(4, partition.q_max()); ++q) {
        for (double p : {2.0, 4.0, kInfinity}) {
            const VectorField vq{partition.block(v.u1, q),
                                 partition.block(v.u2, q), true};
            const double num = lp_norm(vq, p);
            const double den =
                std::pow(2.0, -q) * lp_norm(partition.block(omega, q), p);
            const double ratio = num / den;
            CHECK(ratio > 1.0 / 8.0);
            CHECK(ratio < 8.0);
        }
    }
}

TEST_CASE("derivative multipliers") {
    const Grid grid(64);
    const SpectralField f = SpectralField::from_function(
        grid, [](double x, double) { return std::sin(x); });
    const VectorField g = gradient(f);
    const std::vector<double> gx = g.u1.to_physical();
    for (int ix = 0; ix < grid.n(); ix += 5)
        CHECK(rel_err(gx[static_cast<std::size_t>(ix)], std::cos(grid.x(ix))) <
              1e-10);
    CHECK(g.u2.max_abs_coeff() < 1e-14);

    const SpectralField r = smooth_random(grid, 4);
    CHECK(divergence(perp_gradient(r)).max_abs_coeff() < 1e-12);
    CHECK(divergence(biot_savart(r)).max_abs_coeff() < 1e-12 * r.max_abs_coeff());

    // gradient then divergence equals the spectral Laplacian
    const SpectralField lap = divergence(gradient(r));
    SpectralField oracle = r;
    auto c = oracle.coeffs();
    for (int m = 0; m < grid.size(); ++m)
        c[m] *= -grid.k_mag(m) * grid.k_mag(m);
    CHECK(spectral_rel_diff(lap, oracle) < 1e-12);
}

TEST_CASE("lp norms") {
    const Grid grid(64);
    SpectralField c = SpectralField::zero(grid);
    c.set_mean(3.0);
    CHECK(rel_err(lp_norm(c, 2.0), 3.0 * 2.0 * kPi) < 1e-12);
    CHECK(rel_err(lp_norm(c, kInfinity), 3.0) < 1e-12);

    const SpectralField s = SpectralField::from_function(
        grid, [](double x, double) { return std::sin(x); });
    CHECK(rel_err(std::pow(lp_norm(s, 2.0), 2.0), 2.0 * kPi * kPi) < 1e-12);

    const SpectralField f = smooth_random(grid, 8);
    CHECK(rel_err(lp_norm(f, 2.0), parseval_l2(f)) < 1e-10);
    CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
}

TEST_CASE("dealias") {
    const Grid grid(64);
    SpectralField f = SpectralField::zero(grid);
    f.at(grid.n() / 2 - 1, 0) = Complex(1.0, 0.0);
    f.at(-(grid.n() / 2 - 1), 0) = Complex(1.0, 0.0);
    f.at(1, 1) = Complex(2.0, 0.0);
    f.at(-1, -1) = Complex(2.0, 0.0);
    const SpectralField g = dealias(f);
    CHECK(g.at(grid.n() / 2 - 1, 0) == Complex(0.0, 0.0));
    CHECK(g.at(1, 1) == Complex(2.0, 0.0));

    const SpectralField r = smooth_random(grid, 13);
    CHECK(spectral_rel_diff(dealias(r), dealias(dealias(r))) == 0.0);
}

TEST_CASE("leray projector") {
    const Grid grid(64);
    const SpectralField f = smooth_random(grid, 31);

    // pure gradients are annihilated
    const VectorField g = gradient(f);
    const VectorField pg = leray_project(g);
    CHECK(pg.u1.max_abs_coeff() < 1e-12 * g.u1.max_abs_coeff());
    CHECK(pg.u2.max_abs_coeff() < 1e-12 * g.u1.max_abs_coeff());

    // divergence-free fields are fixed
    const VectorField v = perp_gradient(f);
    const VectorField pv = leray_project(v);
    CHECK(spectral_rel_diff(pv.u1, v.u1) < 1e-12);
    CHECK(spectral_rel_diff(pv.u2, v.u2) < 1e-12);

    // Helmholtz split reconstructs the input
    const VectorField u{smooth_random(grid, 32), smooth_random(grid, 33), false};
    const VectorField pu = leray_project(u);
    SpectralField res1 = u.u1 - pu.u1;
    SpectralField res2 = u.u2 - pu.u2;
    // residual is k (k.u)/|k|^2, a gradient: check it is curl-free
    const SpectralField rot = curl(VectorField{res1, res2, false});
    CHECK(rot.max_abs_coeff() < 1e-10 * u.u1.max_abs_coeff());
    CHECK(pu.divergence_defect() < 1e-12);
}

TEST_CASE("hermitian symmetry is preserved by the pipeline") {
    const Grid grid(64);
    SpectralField f = smooth_random(grid, 40);
    f = dealias(fractional_laplacian(f, FractionalOrder(1.7)));
    f = semigroup_apply(f, FractionalOrder(0.4), 0.2);
    CHECK(f.hermitian_defect() < 1e-12);
}
