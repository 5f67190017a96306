#include "fradeco/sampling.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "fradeco/errors.hpp"

namespace fradeco {

namespace {
constexpr double kTargetResidual = 1e-10;
}

PQSystem multilinear_PQ(const std::vector<Eigen::Vector2d>& columns) {
    using cd = std::complex<double>;
    // numerator of P - iQ with a symbolic r-th column:
    //   N = A (v_1r + i v_2r) + B (v_1r - i v_2r),
    //   A = sum_j conj(z_j) prod_{k != j} z_k,  B = prod_k z_k,  z = v_1 + i v_2
    cd A(0, 0), B(1, 0);
    for (const auto& c : columns) {
        if (c[0] == 0.0 && c[1] == 0.0) throw ZeroColumnError("multilinear_PQ: zero column");
    }
    for (size_t j = 0; j < columns.size(); ++j) {
        cd p(columns[j][0], -columns[j][1]);
        for (size_t k = 0; k < columns.size(); ++k) {
            if (k != j) p *= cd(columns[k][0], columns[k][1]);
        }
        A += p;
    }
    for (const auto& c : columns) B *= cd(c[0], c[1]);
    PQSystem M;
    M.m11 = A.real() + B.real();
    M.m12 = B.imag() - A.imag();
    M.m21 = A.imag() + B.imag();
    M.m22 = A.real() - B.real();
    return M;
}

Frame sample_planar(int r, std::uint64_t seed, const SamplerOptions& opts) {
    Rng rng(seed);
    return sample_planar(r, rng, opts);
}

Frame sample_planar(int r, Rng& rng, const SamplerOptions& opts) {
    if (r < 3) throw ShapeMismatchError("sample_planar: r >= 3");
    for (int attempt = 0; attempt < opts.retry_budget; ++attempt) {
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(static_cast<size_t>(r));
        for (int j = 0; j < r - 2; ++j) {
            const double a = rng.uniform(0.0, 2.0 * M_PI);
            pts.emplace_back(std::cos(a), std::sin(a));
        }
        // m_ij is linear in the (r-1)-th point: evaluate the system at the
        // basis points (1,0) and (0,1) to get the eliminant's quadratic form
        auto with = [&](double x, double y) {
            auto tmp = pts;
            tmp.emplace_back(x, y);
            return multilinear_PQ(tmp);
        };
        const PQSystem Ma = with(1.0, 0.0);
        const PQSystem Mb = with(0.0, 1.0);
        const double cxx = Ma.m11 * Ma.m22 - Ma.m12 * Ma.m21;
        const double cxy = Ma.m11 * Mb.m22 + Mb.m11 * Ma.m22 - Ma.m12 * Mb.m21 - Mb.m12 * Ma.m21;
        const double cyy = Mb.m11 * Mb.m22 - Mb.m12 * Mb.m21;
        const double scale = std::max({std::abs(cxx), std::abs(cxy), std::abs(cyy)});
        if (scale == 0.0) continue;
        std::vector<Eigen::Vector2d> sols;
        if (std::abs(cxx) > 1e-13 * scale) {
            const double disc = cxy * cxy - 4.0 * cxx * cyy;
            if (disc < 0.0) continue;  // no real root: resample
            const double sq = std::sqrt(disc);
            for (double sgn : {1.0, -1.0}) {
                const double ratio = (-cxy + sgn * sq) / (2.0 * cxx);  // x / y
                const double nrm = std::sqrt(ratio * ratio + 1.0);
                sols.emplace_back(ratio / nrm, 1.0 / nrm);
            }
        } else {
            sols.emplace_back(1.0, 0.0);  // y = 0 branch
            if (std::abs(cxy) > 1e-13 * scale) {
                const double ratio = -cyy / cxy;
                const double nrm = std::sqrt(ratio * ratio + 1.0);
                sols.emplace_back(ratio / nrm, 1.0 / nrm);
            }
        }
        pts.push_back(sols[static_cast<size_t>(rng.uniform_int(static_cast<int>(sols.size())))]);
        const PQSystem M = multilinear_PQ(pts);
        Eigen::Vector2d last(M.m12, -M.m11);
        if (last.norm() < 1e-12) {
            last = Eigen::Vector2d(M.m22, -M.m21);
            if (last.norm() < 1e-12) continue;
        }
        last.normalize();
        pts.push_back(last);
        Eigen::MatrixXd V(2, r);
        for (int j = 0; j < r; ++j) V.col(j) = pts[static_cast<size_t>(j)];
        Frame F = make_frame(std::move(V));
        if (F.residual < kTargetResidual) return F;
    }
    throw SamplingFailedError("sample_planar: retry budget exhausted");
}

Frame sample_general(int r, int n, std::uint64_t seed, const SamplerOptions& opts) {
    Rng rng(seed);
    return sample_general(r, n, rng, opts);
}

Frame sample_general(int r, int n, Rng& rng, const SamplerOptions& opts) {
    if (!(r > n && n >= 2)) throw ShapeMismatchError("sample_general: need r > n >= 2");
    const double ratio = static_cast<double>(r) / n;
    for (int attempt = 0; attempt < opts.retry_budget; ++attempt) {
        Eigen::MatrixXd W(n, r - n);
        for (int j = 0; j < r - n; ++j) W.col(j) = random_unit_vector(n, rng);
        Eigen::MatrixXd S = ratio * Eigen::MatrixXd::Identity(n, n) - W * W.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        if (es.eigenvalues().minCoeff() < 1e-8) continue;  // S must stay positive definite
        Eigen::MatrixXd Sinv = es.operatorInverseSqrt() * es.operatorInverseSqrt();
        Eigen::MatrixXd Q = Sinv - Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, n);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            // accumulated bilinear constraints u^T Sinv u_i = 0, i < j
            Eigen::MatrixXd N;
            if (j == 0) {
                N = Eigen::MatrixXd::Identity(n, n);
            } else {
                Eigen::MatrixXd A = (Sinv * U.leftCols(j)).transpose();  // j x n
                Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
                N = svd.matrixV().rightCols(n - j);
            }
            const int m = static_cast<int>(N.cols());
            bool solved = false;
            for (int inner = 0; inner < 40 && !solved; ++inner) {
                if (m == 1) {
                    // no freedom left: the quadric must hold automatically
                    Eigen::VectorXd u = N.col(0);
                    if (std::abs(u.dot(Q * u)) < 1e-8 * std::max(1.0, std::abs(u.dot(Sinv * u)))) {
                        U.col(j) = u;
                        solved = true;
                    }
                    break;
                }
                Eigen::VectorXd c(m - 1);
                for (int k = 0; k < m - 1; ++k) c[k] = rng.uniform(-1.0, 1.0);
                const Eigen::VectorXd w = N.leftCols(m - 1) * c;
                const Eigen::VectorXd b = N.col(m - 1);
                // free parameters uniform in [-1,1]; the last coefficient is
                // solved from u^T (Sinv - I) u = 0
                const double aa = b.dot(Q * b);
                const double bb = 2.0 * b.dot(Q * w);
                const double cc = w.dot(Q * w);
                double x;
                if (std::abs(aa) < 1e-14) {
                    if (std::abs(bb) < 1e-14) continue;
                    x = -cc / bb;
                } else {
                    const double disc = bb * bb - 4.0 * aa * cc;
                    if (disc < 0.0) continue;  // resample the free parameters
                    x = (-bb + (rng.uniform() < 0.5 ? 1.0 : -1.0) * std::sqrt(disc)) / (2.0 * aa);
                }
                Eigen::VectorXd u = w + x * b;
                if (u.norm() < 1e-8) continue;  // would give a nonpositive D entry
                U.col(j) = u;
                solved = true;
            }
            ok = solved;
        }
        if (!ok) continue;
        Eigen::MatrixXd V(n, r);
        for (int j = 0; j < n; ++j) V.col(j) = U.col(j).normalized();
        V.rightCols(r - n) = W;
        Frame F = make_frame(std::move(V));
        if (F.residual < kTargetResidual) return F;
    }
    throw SamplingFailedError("sample_general: retry budget exhausted");
}

Frame sample_frame(int r, int n, std::uint64_t seed, const SamplerOptions& opts) {
    Rng rng(seed);
    return sample_frame(r, n, rng, opts);
}

Frame sample_frame(int r, int n, Rng& rng, const SamplerOptions& opts) {
    return n == 2 ? sample_planar(r, rng, opts) : sample_general(r, n, rng, opts);
}

}  // namespace fradeco
