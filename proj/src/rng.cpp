#include "fradeco/rng.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/QR>

namespace fradeco {

int Rng::uniform_int(int n) {
    // rejection-free modulo bias is irrelevant at these ranges, but stay exact
    const std::uint64_t bound = ~std::uint64_t(0) - (~std::uint64_t(0) % static_cast<std::uint64_t>(n));
    std::uint64_t x = next_u64();
    while (x >= bound) x = next_u64();
    return static_cast<int>(x % static_cast<std::uint64_t>(n));
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    cached_ = rad * std::sin(ang);
    has_cached_ = true;
    return rad * std::cos(ang);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::spawn(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

Eigen::VectorXd random_unit_vector(int n, Rng& rng) {
    Eigen::VectorXd v(n);
    double nrm = 0.0;
    do {
        for (int i = 0; i < n; ++i) v[i] = rng.normal();
        nrm = v.norm();
    } while (nrm < 1e-8);
    return v / nrm;
}

Eigen::MatrixXd random_rotation(int n, Rng& rng) {
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (R(j, j) < 0) Q.col(j) *= -1.0;
    if (Q.determinant() < 0) Q.col(n - 1) *= -1.0;
    return Q;
}

}  // namespace fradeco
