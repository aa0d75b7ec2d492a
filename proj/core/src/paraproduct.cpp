#include "bousslab/paraproduct.hpp"

#include <stdexcept>

namespace bousslab {

BonyDecomposition bony_decompose(const DyadicPartition& partition,
                                 const SpectralField& u,
                                 const SpectralField& v) {
    if (!(u.grid() == v.grid()))
        throw std::invalid_argument("bony_decompose: grid mismatch");
    const Grid& g = u.grid();
    const int q_max = partition.q_max();
    const std::size_t count = static_cast<std::size_t>(g.size());

    // Physical-space blocks, one inverse transform each.
    std::vector<std::vector<double>> bu, bv;
    bu.reserve(static_cast<std::size_t>(q_max) + 2);
    bv.reserve(static_cast<std::size_t>(q_max) + 2);
    for (int q = -1; q <= q_max; ++q) {
        bu.push_back(partition.block(u, q).to_physical());
        bv.push_back(partition.block(v, q).to_physical());
    }

    std::vector<double> remainder(count, 0.0);
    for (int q = -1; q <= q_max; ++q) {
        const auto& uq = bu[static_cast<std::size_t>(q + 1)];
        for (int qp = std::max(-1, q - 1); qp <= std::min(q_max, q + 1); ++qp) {
            const auto& vp = bv[static_cast<std::size_t>(qp + 1)];
            for (std::size_t m = 0; m < count; ++m)
                remainder[m] += uq[m] * vp[m];
        }
    }

    // Paraproducts: S_{q-1} = sum_{p <= q-2} Delta_p, accumulated as the
    // running sum; the q = -1, 0 terms vanish (empty low-pass).
    std::vector<double> su(count, 0.0), sv(count, 0.0);
    std::vector<double> low_high(count, 0.0), high_low(count, 0.0);
    for (int q = 1; q <= q_max; ++q) {
        const auto& u_enter = bu[static_cast<std::size_t>(q - 1)]; // Delta_{q-2}
        const auto& v_enter = bv[static_cast<std::size_t>(q - 1)];
        const auto& uq = bu[static_cast<std::size_t>(q + 1)];
        const auto& vq = bv[static_cast<std::size_t>(q + 1)];
        for (std::size_t m = 0; m < count; ++m) {
            su[m] += u_enter[m];
            sv[m] += v_enter[m];
            low_high[m] += su[m] * vq[m];
            high_low[m] += sv[m] * uq[m];
        }
    }

    auto finish = [&](const std::vector<double>& phys) {
        SpectralField out = SpectralField::from_physical(g, phys);
        dealias_in_place(out);
        return out;
    };
    return BonyDecomposition{finish(low_high), finish(high_low),
                             finish(remainder)};
}

SpectralField advection_commutator(const DyadicPartition& partition, int q,
                                   const VectorField& v, const SpectralField& u,
                                   double div_tol) {
    if (v.divergence_defect() > div_tol)
        throw std::invalid_argument(
            "advection_commutator: velocity is not divergence-free");
    SpectralField inside = partition.block(advect(v, u), q);
    SpectralField outside = advect(v, partition.block(u, q));
    return inside - outside;
}

} // namespace bousslab
