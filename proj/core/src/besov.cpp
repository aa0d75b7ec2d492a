#include "bousslab/besov.hpp"

#include <cmath>
#include <ostream>

namespace bousslab {

double ell_r(std::span<const double> values, double r) {
    if (r == kInfinity) {
        double best = 0.0;
        for (double v : values)
            best = std::max(best, v);
        return best;
    }
    double sum = 0.0;
    for (double v : values)
        sum += r == 1.0 ? v : std::pow(v, r);
    return r == 1.0 ? sum : std::pow(sum, 1.0 / r);
}

std::vector<double> block_lp_norms(const DyadicPartition& partition,
                                   const SpectralField& f, double p) {
    const double ps[] = {p};
    return block_lp_norms(partition, f, ps).front();
}

std::vector<std::vector<double>> block_lp_norms(
    const DyadicPartition& partition, const SpectralField& f,
    std::span<const double> ps) {
    std::vector<std::vector<double>> norms(ps.size());
    for (auto& row : norms)
        row.reserve(static_cast<std::size_t>(partition.q_max()) + 2);
    for (int q = -1; q <= partition.q_max(); ++q) {
        const std::vector<double> phys = partition.block(f, q).to_physical();
        for (std::size_t i = 0; i < ps.size(); ++i)
            norms[i].push_back(lp_norm_physical(phys, f.grid(), ps[i]));
    }
    return norms;
}

std::vector<double> block_lp_norms(const DyadicPartition& partition,
                                   const VectorField& v, double p) {
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(partition.q_max()) + 2);
    for (int q = -1; q <= partition.q_max(); ++q) {
        const VectorField blk{partition.block(v.u1, q), partition.block(v.u2, q),
                              v.divergence_free};
        norms.push_back(lp_norm(blk, p));
    }
    return norms;
}

namespace {

double weighted_ell_r(std::span<const double> block_norms, double s, double r) {
    std::vector<double> weighted(block_norms.size());
    for (std::size_t i = 0; i < block_norms.size(); ++i) {
        const int q = static_cast<int>(i) - 1;
        weighted[i] = std::pow(2.0, q * s) * block_norms[i];
    }
    return ell_r(weighted, r);
}

} // namespace

double besov_norm(const SpectralField& f, const BesovIndex& idx,
                  const DyadicPartition& partition) {
    return weighted_ell_r(block_lp_norms(partition, f, idx.p), idx.s, idx.r);
}

double besov_norm(const VectorField& v, const BesovIndex& idx,
                  const DyadicPartition& partition) {
    return weighted_ell_r(block_lp_norms(partition, v, idx.p), idx.s, idx.r);
}

void write_block_norms_csv(std::ostream& os, const DyadicPartition& partition,
                           const SpectralField& f, const BesovIndex& idx) {
    const std::vector<double> norms = block_lp_norms(partition, f, idx.p);
    os << "q,weighted_block_norm\n";
    char buf[64];
    for (std::size_t i = 0; i < norms.size(); ++i) {
        const int q = static_cast<int>(i) - 1;
        std::snprintf(buf, sizeof(buf), "%d,%.15g\n", q,
                      std::pow(2.0, q * idx.s) * norms[i]);
        os << buf;
    }
}

} // namespace bousslab
