#include "fradeco/sym_tensor.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "fradeco/errors.hpp"

namespace fradeco {

SymTensor::SymTensor(int n, int d)
    : n_(n), d_(d), coords_(Eigen::VectorXd::Zero(index_count(n, d))), basis_(index_basis(n, d)) {}

SymTensor::SymTensor(int n, int d, Eigen::VectorXd coords)
    : n_(n), d_(d), coords_(std::move(coords)), basis_(index_basis(n, d)) {
    if (coords_.size() != static_cast<Eigen::Index>(basis_.size()))
        throw ShapeMismatchError("SymTensor: coords length must be binom(n+d-1,d)");
}

double SymTensor::coord(const Exponent& a) const { return coords_[index_position(n_, d_, a)]; }

SymTensor synthesize(const Eigen::MatrixXd& V, const Eigen::VectorXd& lambda, int d) {
    const int n = static_cast<int>(V.rows());
    const int r = static_cast<int>(V.cols());
    if (lambda.size() != r) throw ShapeMismatchError("synthesize: lambda length must equal cols(V)");
    if (d < 1) throw ShapeMismatchError("synthesize: d >= 1");
    const auto basis = index_basis(n, d);
    Eigen::VectorXd t(static_cast<Eigen::Index>(basis.size()));
    for (size_t ai = 0; ai < basis.size(); ++ai) {
        const Exponent& a = basis[ai];
        double s = 0.0;
        for (int j = 0; j < r; ++j) {
            double p = lambda[j];
            for (int i = 0; i < n; ++i) {
                for (int e = 0; e < a[i]; ++e) p *= V(i, j);
            }
            s += p;
        }
        t[static_cast<Eigen::Index>(ai)] = s;
    }
    return SymTensor(n, d, std::move(t));
}

namespace {
double int_pow(double x, int e) {
    double p = 1.0;
    for (int i = 0; i < e; ++i) p *= x;
    return p;
}
}  // namespace

double evaluate(const SymTensor& T, const Eigen::VectorXd& x) {
    if (x.size() != T.n()) throw ShapeMismatchError("evaluate: x length must equal n");
    double out = 0.0;
    const auto& basis = T.basis();
    for (size_t ai = 0; ai < basis.size(); ++ai) {
        const Exponent& a = basis[ai];
        double p = static_cast<double>(multinomial(T.d(), a)) * T.coords()[static_cast<Eigen::Index>(ai)];
        for (int i = 0; i < T.n(); ++i) p *= int_pow(x[i], a[i]);
        out += p;
    }
    return out;
}

Eigen::VectorXd gradient(const SymTensor& T, const Eigen::VectorXd& x) {
    if (x.size() != T.n()) throw ShapeMismatchError("gradient: x length must equal n");
    const int n = T.n();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    const auto& basis = T.basis();
    for (size_t ai = 0; ai < basis.size(); ++ai) {
        const Exponent& a = basis[ai];
        const double m = static_cast<double>(multinomial(T.d(), a)) * T.coords()[static_cast<Eigen::Index>(ai)];
        if (m == 0.0) continue;
        for (int k = 0; k < n; ++k) {
            if (a[k] == 0) continue;
            double p = m * a[k];
            for (int i = 0; i < n; ++i) {
                p *= int_pow(x[i], i == k ? a[i] - 1 : a[i]);
            }
            g[k] += p;
        }
    }
    return g;
}

Eigen::MatrixXd catalecticant(const SymTensor& T, int k) {
    if (k < 1 || k > T.d() - 1) throw ShapeMismatchError("catalecticant: need 1 <= k <= d-1");
    const int n = T.n();
    const auto rows = index_basis(n, k);
    const auto cols = index_basis(n, T.d() - k);
    Eigen::MatrixXd C(rows.size(), cols.size());
    Exponent a(n);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < cols.size(); ++j) {
            for (int v = 0; v < n; ++v) a[v] = rows[i][v] + cols[j][v];
            C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                T.coords()[index_position(n, T.d(), a)];
        }
    }
    return C;
}

Eigen::VectorXd binary_coords(const SymTensor& T) {
    if (T.n() != 2) throw ShapeMismatchError("binary_coords: n must be 2");
    const int d = T.d();
    Eigen::VectorXd t(d + 1);
    // basis for n=2 is (d,0), (d-1,1), ..., (0,d); t_i corresponds to (i, d-i)
    for (int i = 0; i <= d; ++i) t[i] = T.coords()[d - i];
    return t;
}

SymTensor tensor_from_binary(const Eigen::VectorXd& t) {
    const int d = static_cast<int>(t.size()) - 1;
    if (d < 1) throw ShapeMismatchError("tensor_from_binary: need at least 2 coordinates");
    Eigen::VectorXd c(d + 1);
    for (int i = 0; i <= d; ++i) c[d - i] = t[i];
    return SymTensor(2, d, std::move(c));
}

void write_symtensor(std::ostream& os, const SymTensor& T) {
    os << "symtensor n=" << T.n() << " d=" << T.d() << "\n";
    os << std::setprecision(17);
    const auto& basis = T.basis();
    for (size_t ai = 0; ai < basis.size(); ++ai) {
        const double v = T.coords()[static_cast<Eigen::Index>(ai)];
        if (v == 0.0) continue;
        for (int i = 0; i < T.n(); ++i) os << basis[ai][i] << ' ';
        os << v << "\n";
    }
}

SymTensor read_symtensor(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("symtensor: empty input");
    int n = 0, d = 0;
    if (std::sscanf(header.c_str(), "symtensor n=%d d=%d", &n, &d) != 2 || n < 1 || d < 1)
        throw ParseError("symtensor: bad header '" + header + "'");
    Eigen::VectorXd coords = Eigen::VectorXd::Zero(index_count(n, d));
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Exponent a(n);
        for (int i = 0; i < n; ++i) {
            if (!(ls >> a[i])) throw ParseError("symtensor: bad exponent line '" + line + "'");
        }
        double v;
        if (!(ls >> v)) throw ParseError("symtensor: missing value in '" + line + "'");
        coords[index_position(n, d, a)] = v;
    }
    return SymTensor(n, d, std::move(coords));
}

SymTensor read_symtensor_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    return read_symtensor(f);
}

void write_symtensor_file(const std::string& path, const SymTensor& T) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    write_symtensor(f, T);
}

}  // namespace fradeco
