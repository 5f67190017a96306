#include "fradeco/frame.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "fradeco/errors.hpp"
#include "fradeco/multi_index.hpp"

namespace fradeco {

double funtf_residual(const Eigen::MatrixXd& V) {
    const int n = static_cast<int>(V.rows());
    const int r = static_cast<int>(V.cols());
    const double ratio = static_cast<double>(r) / n;
    Eigen::MatrixXd G = V * V.transpose();
    double res = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            res = std::max(res, std::abs(G(k, l) - (k == l ? ratio : 0.0)));
    for (int j = 0; j < r; ++j)
        res = std::max(res, std::abs(V.col(j).squaredNorm() - 1.0));
    return res;
}

Frame make_frame(Eigen::MatrixXd V) {
    Frame F;
    F.residual = funtf_residual(V);
    F.V = std::move(V);
    return F;
}

namespace {
void subsets_rec(int r, int n, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < r; ++i) {
        cur.push_back(i);
        subsets_rec(r, n, i + 1, cur, out);
        cur.pop_back();
    }
}
}  // namespace

PlueckerVector pluecker(const Eigen::MatrixXd& V) {
    const int n = static_cast<int>(V.rows());
    const int r = static_cast<int>(V.cols());
    if (r < n) throw ShapeMismatchError("pluecker: need r >= n");
    PlueckerVector out;
    out.r = r;
    out.n = n;
    std::vector<int> cur;
    subsets_rec(r, n, 0, cur, out.subsets);
    out.p.resize(static_cast<Eigen::Index>(out.subsets.size()));
    Eigen::MatrixXd M(n, n);
    for (size_t s = 0; s < out.subsets.size(); ++s) {
        for (int j = 0; j < n; ++j) M.col(j) = V.col(out.subsets[s][j]);
        out.p[static_cast<Eigen::Index>(s)] = M.determinant();
    }
    return out;
}

Frame simplex_frame(int n) {
    if (n < 2) throw ShapeMismatchError("simplex_frame: n >= 2");
    const int m = n + 1;
    // vertices e_j - center in the hyperplane sum x = 0 of R^(n+1), rescaled
    Eigen::MatrixXd U(m, m);
    const double c = 1.0 / m;
    const double scale = std::sqrt(static_cast<double>(m) / n);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) U(i, j) = scale * ((i == j ? 1.0 : 0.0) - c);
    // Householder mapping (1,...,1)/sqrt(m) onto e_m collapses the last row
    Eigen::VectorXd v = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    v[m - 1] -= 1.0;
    const double vn2 = v.squaredNorm();
    Eigen::MatrixXd HU = U - v * ((2.0 / vn2) * (v.transpose() * U));
    return make_frame(HU.topRows(n));
}

Frame so3_orbit_frame(const Eigen::Vector4d& q, const std::array<int, 4>& nu) {
    if (std::abs(q.norm() - 1.0) > 1e-9)
        throw NotUnitQuaternionError("so3_orbit_frame: quaternion must have unit norm");
    for (int s : nu)
        if (s != 1 && s != -1) throw ShapeMismatchError("so3_orbit_frame: nu entries must be +-1");
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Eigen::Matrix3d rho;
    rho << 1 - 2 * y * y - 2 * z * z, 2 * x * y - 2 * z * w, 2 * x * z + 2 * y * w,
        2 * x * y + 2 * z * w, 1 - 2 * x * x - 2 * z * z, 2 * y * z - 2 * x * w,
        2 * x * z - 2 * y * w, 2 * y * z + 2 * x * w, 1 - 2 * x * x - 2 * y * y;
    Eigen::Matrix<double, 3, 4> B;
    B << 3, 1, 1, -5,
         3, 1, -5, 1,
         3, -5, 1, 1;
    Eigen::Matrix<double, 3, 4> V = rho * B / (3.0 * std::sqrt(3.0));
    for (int j = 0; j < 4; ++j) V.col(j) *= nu[static_cast<size_t>(j)];
    return make_frame(V);
}

void write_frame(std::ostream& os, const Frame& F) {
    os << "frame n=" << F.n() << " r=" << F.r() << "\n";
    os << std::setprecision(17);
    for (int i = 0; i < F.n(); ++i) {
        for (int j = 0; j < F.r(); ++j) {
            if (j) os << ' ';
            os << F.V(i, j);
        }
        os << "\n";
    }
}

Frame read_frame(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("frame: empty input");
    int n = 0, r = 0;
    if (std::sscanf(header.c_str(), "frame n=%d r=%d", &n, &r) != 2 || n < 1 || r < 1)
        throw ParseError("frame: bad header '" + header + "'");
    Eigen::MatrixXd V(n, r);
    for (int i = 0; i < n; ++i) {
        std::string line;
        if (!std::getline(is, line)) throw ParseError("frame: truncated matrix");
        std::istringstream ls(line);
        for (int j = 0; j < r; ++j) {
            if (!(ls >> V(i, j))) throw ParseError("frame: bad row '" + line + "'");
        }
    }
    return make_frame(std::move(V));
}

Frame read_frame_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    return read_frame(f);
}

void write_frame_file(const std::string& path, const Frame& F) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    write_frame(f, F);
}

VerifyReport verify_decomposition(const SymTensor& T, const Decomposition& dec, double tol) {
    if (dec.frame.n() != T.n() || dec.weights.size() != dec.frame.r())
        throw ShapeMismatchError("verify_decomposition: shape mismatch");
    const SymTensor S = synthesize(dec.frame.V, dec.weights, T.d());
    VerifyReport rep;
    rep.coord_residual = (S.coords() - T.coords()).cwiseAbs().maxCoeff();
    rep.frame_residual = funtf_residual(dec.frame.V);
    rep.pass = rep.coord_residual <= tol;
    return rep;
}

}  // namespace fradeco
