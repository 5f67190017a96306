#include "fradeco/power_method.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fradeco/binary_frames.hpp"
#include "fradeco/errors.hpp"
#include "fradeco/rng.hpp"

namespace fradeco {

namespace {

void canonicalize_sign(Eigen::VectorXd& x) {
    for (int i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) > 1e-14) {
            if (x[i] < 0) x = -x;
            return;
        }
    }
}

double sign_insensitive_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::min((a - b).norm(), (a + b).norm());
}

}  // namespace

IterResult power_iterate(const SymTensor& T, Eigen::VectorXd x0, const PowerOptions& opts) {
    IterResult out;
    const double n0 = x0.norm();
    if (n0 == 0.0) throw ShapeMismatchError("power_iterate: zero start vector");
    Eigen::VectorXd x = x0 / n0;
    canonicalize_sign(x);
    for (int it = 0; it < opts.maxit; ++it) {
        Eigen::VectorXd g = gradient(T, x);
        const double ng = g.norm();
        if (ng < 1e-280) {
            out.status = IterStatus::ZeroGradient;
            out.x = x;
            out.iterations = it;
            return out;
        }
        Eigen::VectorXd xn = g / ng;
        canonicalize_sign(xn);
        if (sign_insensitive_dist(xn, x) < opts.tol) {
            out.status = IterStatus::Converged;
            out.x = xn;
            out.iterations = it + 1;
            return out;
        }
        x = xn;
    }
    out.status = IterStatus::NonConvergence;
    out.x = x;
    out.iterations = opts.maxit;
    return out;
}

namespace {

/// Spectral radius of the finite-difference Jacobian of the sign-aligned
/// normalized gradient map restricted to the tangent space at a fixed point.
double projected_spectral_radius(const SymTensor& T, const Eigen::VectorXd& xstar) {
    const int n = T.n();
    const double h = 1e-6;
    // tangent basis: right singular vectors of x^T beyond the first
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(xstar.transpose(), Eigen::ComputeFullV);
    Eigen::MatrixXd Q = svd.matrixV().rightCols(n - 1);
    auto phi = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd g = gradient(T, y);
        const double ng = g.norm();
        if (ng == 0.0) return Eigen::VectorXd(Eigen::VectorXd::Zero(n));
        g /= ng;
        if (g.dot(xstar) < 0) g = -g;  // align the projective representative
        return g;
    };
    Eigen::MatrixXd J(n - 1, n - 1);
    for (int k = 0; k < n - 1; ++k) {
        const Eigen::VectorXd fp = phi(xstar + h * Q.col(k));
        const Eigen::VectorXd fm = phi(xstar - h * Q.col(k));
        J.col(k) = Q.transpose() * (fp - fm) / (2.0 * h);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
    double rad = 0.0;
    for (int i = 0; i < n - 1; ++i) rad = std::max(rad, std::abs(es.eigenvalues()[i]));
    return rad;
}

}  // namespace

std::vector<EigenPoint> robust_eigenvectors(const SymTensor& T, int trials, std::uint64_t seed,
                                            double cluster_tol, const PowerOptions& opts) {
    const int n = T.n();
    Rng rng(seed);
    std::vector<EigenPoint> clusters;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::VectorXd x0 = random_unit_vector(n, rng);
        IterResult res;
        try {
            res = power_iterate(T, x0, opts);
        } catch (const Error&) {
            continue;
        }
        if (res.status != IterStatus::Converged) continue;
        bool placed = false;
        for (auto& c : clusters) {
            if (sign_insensitive_dist(res.x, c.x) < cluster_tol) {
                ++c.basin_count;
                placed = true;
                break;
            }
        }
        if (!placed) {
            EigenPoint p;
            p.x = res.x;
            p.eigenvalue_proxy = evaluate(T, res.x);
            p.basin_count = 1;
            clusters.push_back(std::move(p));
        }
    }
    for (auto& c : clusters) {
        c.spectral_radius = projected_spectral_radius(T, c.x);
        c.attracting = c.spectral_radius < 1.0;
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const EigenPoint& a, const EigenPoint& b) { return a.basin_count > b.basin_count; });
    return clusters;
}

EigenDiscriminant eigen_discriminant_binary(const SymTensor& T) {
    if (T.n() != 2) throw ShapeMismatchError("eigen_discriminant_binary: n must be 2");
    const int d = T.d();
    const Eigen::VectorXd t = binary_coords(T);
    // polynomial coefficients c_k of x^k y^(d-k)
    Eigen::VectorXd c(d + 1);
    for (int k = 0; k <= d; ++k) {
        Exponent a{k, d - k};
        c[k] = static_cast<double>(multinomial(d, a)) * t[k];
    }
    // y dT/dx - x dT/dy
    Eigen::VectorXd E = Eigen::VectorXd::Zero(d + 1);
    for (int k = 0; k <= d; ++k) {
        if (k >= 1) E[k - 1] += k * c[k];
        if (k + 1 <= d) E[k + 1] -= (d - k) * c[k];
    }
    EigenDiscriminant out;
    out.coeffs = E;
    if (E.cwiseAbs().maxCoeff() == 0.0) return out;

    const auto roots = binary_form_roots(E);
    // keep real points; multiplicities by clustering. Roots of multiplicity m
    // are only computed to O(eps^(1/m)), hence the loose tolerance here.
    const double mult_tol = 1e-3;
    std::vector<Eigen::Vector2d> reals;
    for (const auto& pt : roots) {
        const int big = std::abs(pt[0]) >= std::abs(pt[1]) ? 0 : 1;
        const Eigen::Vector2cd q = pt * (std::conj(pt[big]) / std::abs(pt[big]));
        if (std::max(std::abs(q[0].imag()), std::abs(q[1].imag())) > mult_tol) continue;
        Eigen::VectorXd v(2);
        v << q[0].real(), q[1].real();
        v.normalize();
        canonicalize_sign(v);
        reals.emplace_back(v);
    }
    for (const auto& v : reals) {
        bool placed = false;
        for (auto& rr : out.real_roots) {
            if (std::min((rr.point - v).norm(), (rr.point + v).norm()) < mult_tol) {
                ++rr.multiplicity;
                placed = true;
                break;
            }
        }
        if (!placed) out.real_roots.push_back({v, 1});
    }
    return out;
}

}  // namespace fradeco
