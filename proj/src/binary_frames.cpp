#include "fradeco/binary_frames.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fradeco/errors.hpp"

namespace fradeco {

namespace {

// First columns of M_3..M_9. Every other column is this one with all
// indices shifted; the shift rule is authoritative for the full matrix.
const TemplateMr kTemplates[] = {
    {3, {{{{1, 0}, {-3, 2}}}, {{{3, 1}, {-1, 3}}}}},
    {4, {{{{1, 0}, {1, 4}}}, {{{1, 1}, {-1, 3}}}, {{{1, 2}}}}},
    {5, {{{{1, 0}, {5, 2}}}, {{{1, 1}, {-3, 3}}}, {{{3, 2}, {-1, 4}}}, {{{5, 3}, {1, 5}}}}},
    {6,
     {{{{1, 0}, {3, 2}}},
      {{{1, 1}, {1, 5}}},
      {{{1, 2}, {-1, 4}}},
      {{{1, 3}}},
      {{{3, 4}, {1, 6}}}}},
    {7,
     {{{{3, 0}, {7, 2}}},
      {{{1, 1}, {5, 3}}},
      {{{1, 2}, {-3, 4}}},
      {{{3, 3}, {-1, 5}}},
      {{{5, 4}, {1, 6}}},
      {{{7, 5}, {3, 7}}}}},
    {8,
     {{{{1, 0}, {2, 2}}},
      {{{1, 1}, {3, 3}}},
      {{{1, 4}}},
      {{{1, 3}, {-1, 5}}},
      {{{1, 2}, {1, 6}}},
      {{{3, 5}, {1, 7}}},
      {{{2, 6}, {1, 8}}}}},
    {9,
     {{{{5, 0}, {9, 2}}},
      {{{3, 1}, {7, 3}}},
      {{{1, 2}, {5, 4}}},
      {{{1, 3}, {-3, 5}}},
      {{{3, 4}, {-1, 6}}},
      {{{5, 5}, {1, 7}}},
      {{{7, 6}, {3, 8}}},
      {{{9, 7}, {5, 9}}}}},
};

}  // namespace

const TemplateMr& template_Mr(int r) {
    if (r < 3 || r > 9) throw UnsupportedRankError("M_r templates exist for r = 3..9");
    return kTemplates[r - 3];
}

Eigen::MatrixXd build_Mr(const Eigen::VectorXd& t, int r) {
    const TemplateMr& tpl = template_Mr(r);
    const int d = static_cast<int>(t.size()) - 1;
    if (d < 2 * r - 2) throw OrderTooSmallError("build_Mr: need d >= 2r-2");
    const int rows = r - 1;
    const int cols = d - r + 1;
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            double v = 0.0;
            for (const auto& [c, k] : tpl.first_column[static_cast<size_t>(i)].terms)
                v += c * t[k + j];
            M(i, j) = v;
        }
    }
    return M;
}

FradecoRankResult fradeco_rank(const Eigen::VectorXd& t, const RankPolicy& policy) {
    const int d = static_cast<int>(t.size()) - 1;
    if (d < 4) throw OrderTooSmallError("fradeco_rank: need d >= 4");
    FradecoRankResult out;
    for (int r = 3; r <= 9 && d >= 2 * r - 2; ++r) {
        const Eigen::MatrixXd M = build_Mr(t, r);
        const RankDecision dec = decide_rank(M, policy);
        RankReport rep;
        rep.r = r;
        rep.numerical_rank = dec.rank;
        rep.singular_values = dec.singular_values;
        rep.deficient = dec.rank <= r - 2;
        rep.gap_ratio = dec.gap_ratio;
        rep.indeterminate = dec.indeterminate;
        out.reports.push_back(rep);
        if (!out.first_deficient) {
            if (rep.indeterminate) {
                // cannot tell whether this r is the answer
                out.indeterminate = true;
                return out;
            }
            if (rep.deficient) out.first_deficient = r;
        }
    }
    return out;
}

std::vector<Eigen::Vector2cd> binary_form_roots(const Eigen::VectorXd& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    const double scale = coeffs.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw ShapeMismatchError("binary_form_roots: zero form");
    const double cut = 1e-10 * scale;
    int hi = deg;  // highest surviving power of x
    while (hi > 0 && std::abs(coeffs[hi]) < cut) --hi;
    int lo = 0;  // lowest surviving power of x
    while (lo < hi && std::abs(coeffs[lo]) < cut) ++lo;

    std::vector<Eigen::Vector2cd> roots;
    for (int k = hi; k < deg; ++k) roots.emplace_back(1.0, 0.0);  // y | f
    for (int k = 0; k < lo; ++k) roots.emplace_back(0.0, 1.0);    // x | f

    const int m = hi - lo;  // degree of the remaining polynomial in x
    if (m > 0) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
        for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < m; ++i) comp(i, m - 1) = -coeffs[lo + i] / coeffs[hi];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        for (int i = 0; i < m; ++i) {
            const std::complex<double> x = es.eigenvalues()[i];
            Eigen::Vector2cd pt(x, 1.0);
            pt /= std::sqrt(std::norm(pt[0]) + std::norm(pt[1]));
            roots.push_back(pt);
        }
    }
    return roots;
}

double projective_distance(const Eigen::Vector2cd& u, const Eigen::Vector2cd& v) {
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 1.0;
    // Hermitian pairing: identifies u with lambda*u for any complex lambda
    const double c = std::abs(u.dot(v)) / (nu * nv);
    return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, c) * std::min(1.0, c)));
}

BinaryDecomposition decompose_binary(const SymTensor& T, int r, double tol,
                                     const RankPolicy& policy) {
    if (T.n() != 2) throw ShapeMismatchError("decompose_binary: n must be 2");
    const Eigen::VectorXd t = binary_coords(T);
    const int d = T.d();
    const Eigen::MatrixXd M = build_Mr(t, r);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);
    const RankDecision rd = decide_rank(svd.singularValues(), policy);
    if (rd.indeterminate)
        throw IndeterminateError("decompose_binary: singular-value gap failure on M_r");
    if (rd.rank >= r - 1)
        throw NotRankDeficientError("M_" + std::to_string(r) + " has full rank: no funtf of rank " +
                                    std::to_string(r));
    if (rd.rank <= r - 3)
        throw SingularPointError("decompose_binary: kernel of M_" + std::to_string(r) +
                                 " has dimension >= 2 (singular point)");

    // unique left kernel vector
    const Eigen::VectorXd w = svd.matrixU().col(r - 2);

    // f(x,y) = sum_i w_i g_i with g_i the i-th stencil under t_k -> x^k y^(r-k)
    const TemplateMr& tpl = template_Mr(r);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(r + 1);
    for (int i = 0; i < r - 1; ++i)
        for (const auto& [c, k] : tpl.first_column[static_cast<size_t>(i)].terms) f[k] += w[i] * c;

    const auto roots = binary_form_roots(f);
    if (static_cast<int>(roots.size()) != r)
        throw SingularPointError("decompose_binary: kernel form is degenerate");
    for (size_t a = 0; a < roots.size(); ++a)
        for (size_t b = a + 1; b < roots.size(); ++b)
            if (projective_distance(roots[a], roots[b]) < 1e-7)
                throw RepeatedRootsError("decompose_binary: f has a repeated root");

    bool complex_roots = false;
    for (const auto& pt : roots) {
        // a projective point is real iff it has a real representative
        const int big = std::abs(pt[0]) >= std::abs(pt[1]) ? 0 : 1;
        const Eigen::Vector2cd q = pt * (std::conj(pt[big]) / std::abs(pt[big]));
        if (std::max(std::abs(q[0].imag()), std::abs(q[1].imag())) > 1e-7) {
            complex_roots = true;
            break;
        }
    }

    BinaryDecomposition out;
    out.complex_roots = complex_roots;
    if (complex_roots) {
        Eigen::Matrix2Xcd V(2, r);
        for (int j = 0; j < r; ++j) V.col(j) = roots[static_cast<size_t>(j)];
        Eigen::MatrixXcd A(d + 1, r);
        for (int k = 0; k <= d; ++k)
            for (int j = 0; j < r; ++j)
                A(k, j) = std::pow(V(0, j), k) * std::pow(V(1, j), d - k);
        Eigen::BDCSVD<Eigen::MatrixXcd> ls(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXcd lam = ls.solve(t.cast<std::complex<double>>());
        out.V_complex = V;
        out.weights_complex = lam;
        out.fit_residual = (A * lam - t.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
        out.weight_condition = ls.singularValues()[0] / ls.singularValues()[ls.singularValues().size() - 1];
        return out;
    }

    Eigen::MatrixXd V(2, r);
    for (int j = 0; j < r; ++j) {
        const auto& pt = roots[static_cast<size_t>(j)];
        const int big = std::abs(pt[0]) >= std::abs(pt[1]) ? 0 : 1;
        const Eigen::Vector2cd q = pt * (std::conj(pt[big]) / std::abs(pt[big]));
        V.col(j) = Eigen::Vector2d(q[0].real(), q[1].real()).normalized();
    }
    // weights from the over-determined system t_k = sum_j lambda_j v1^k v2^(d-k)
    Eigen::MatrixXd A(d + 1, r);
    for (int k = 0; k <= d; ++k)
        for (int j = 0; j < r; ++j) {
            double p = 1.0;
            for (int e = 0; e < k; ++e) p *= V(0, j);
            for (int e = 0; e < d - k; ++e) p *= V(1, j);
            A(k, j) = p;
        }
    Eigen::BDCSVD<Eigen::MatrixXd> ls(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd lam = ls.solve(t);
    out.dec.frame = make_frame(V);
    out.dec.weights = lam;
    out.dec.fit_residual = (A * lam - t).cwiseAbs().maxCoeff();
    out.fit_residual = out.dec.fit_residual;
    out.weight_condition = ls.singularValues()[0] / ls.singularValues()[ls.singularValues().size() - 1];
    (void)tol;
    return out;
}

}  // namespace fradeco
