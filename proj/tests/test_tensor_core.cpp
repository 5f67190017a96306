#include <doctest.h>

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "fradeco/errors.hpp"
#include "fradeco/frame.hpp"
#include "fradeco/rng.hpp"
#include "fradeco/sym_tensor.hpp"

using namespace fradeco;

namespace {

Eigen::MatrixXd eq14_frame() {
    Eigen::MatrixXd B(3, 4);
    B << -5, 1, 1, 3,
          1, -5, 1, 3,
          1, 1, -5, 3;
    return B / (3.0 * std::sqrt(3.0));
}

SymTensor eq13_tensor() {
    return synthesize(eq14_frame(), Eigen::VectorXd::Constant(4, 729.0 / 12.0), 4);
}

Eigen::MatrixXd random_matrix(int n, int r, Rng& rng) {
    Eigen::MatrixXd V(n, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) V(i, j) = rng.uniform(-1.0, 1.0);
    return V;
}

}  // namespace

TEST_CASE("index_basis enumerations") {
    const auto b22 = index_basis(2, 2);
    REQUIRE(b22.size() == 3);
    CHECK(b22[0] == Exponent{2, 0});
    CHECK(b22[1] == Exponent{1, 1});
    CHECK(b22[2] == Exponent{0, 2});

    const auto b31 = index_basis(3, 1);
    REQUIRE(b31.size() == 3);
    CHECK(b31[0] == Exponent{1, 0, 0});
    CHECK(b31[1] == Exponent{0, 1, 0});
    CHECK(b31[2] == Exponent{0, 0, 1});

    CHECK(index_basis(3, 4).size() == 15);

    // index_position agrees with the enumeration everywhere
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{2, 5}, {3, 4}, {4, 3}, {5, 2}}) {
        const auto basis = index_basis(n, d);
        for (size_t i = 0; i < basis.size(); ++i)
            CHECK(index_position(n, d, basis[i]) == static_cast<int>(i));
    }
}

TEST_CASE("synthesize reproduces the simplex-frame quartic") {
    const SymTensor T = eq13_tensor();
    CHECK(T.coord({4, 0, 0}) == doctest::Approx(59.0).epsilon(1e-13));
    CHECK(T.coord({3, 1, 0}) == doctest::Approx(-4.0).epsilon(1e-13));
    CHECK(T.coord({2, 2, 0}) == doctest::Approx(11.0).epsilon(1e-13));
    CHECK(T.coord({2, 1, 1}) == doctest::Approx(8.0).epsilon(1e-13));
    CHECK(T.coord({0, 4, 0}) == doctest::Approx(59.0).epsilon(1e-13));
    CHECK(T.coord({0, 0, 4}) == doctest::Approx(59.0).epsilon(1e-13));
    CHECK(T.coord({1, 1, 2}) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("synthesize edge cases") {
    Rng rng(11);
    const Eigen::MatrixXd V = random_matrix(3, 5, rng);
    const SymTensor Z = synthesize(V, Eigen::VectorXd::Zero(5), 4);
    CHECK(Z.coords().cwiseAbs().maxCoeff() == 0.0);

    const SymTensor M = synthesize(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Ones(2), 3);
    CHECK(M.coord({3, 0}) == 1.0);
    CHECK(M.coord({0, 3}) == 1.0);
    CHECK(M.coord({2, 1}) == 0.0);
    CHECK(M.coord({1, 2}) == 0.0);
}

TEST_CASE("synthesize roundtrip and scaling invariants") {
    Rng rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + rng.uniform_int(3);
        const int r = n + 1 + rng.uniform_int(3);
        const int d = 3 + rng.uniform_int(4);
        const Eigen::MatrixXd V = random_matrix(n, r, rng);
        Eigen::VectorXd lam(r);
        for (int j = 0; j < r; ++j) lam[j] = rng.uniform(-2.0, 2.0);
        const SymTensor T = synthesize(V, lam, d);

        // entry formula against a direct power-sum at a random coordinate
        const auto& basis = T.basis();
        const auto& a = basis[static_cast<size_t>(rng.uniform_int(static_cast<int>(basis.size())))];
        double want = 0.0;
        for (int j = 0; j < r; ++j) {
            double p = lam[j];
            for (int i = 0; i < n; ++i) p *= std::pow(V(i, j), a[i]);
            want += p;
        }
        CHECK(T.coord(a) == doctest::Approx(want).epsilon(1e-12));

        // permuting columns together with weights only reorders the sums
        Eigen::MatrixXd Vp(n, r);
        Eigen::VectorXd lp(r);
        for (int j = 0; j < r; ++j) {
            Vp.col(j) = V.col((j + 1) % r);
            lp[j] = lam[(j + 1) % r];
        }
        const SymTensor Tp = synthesize(Vp, lp, d);
        const double scale = std::max(1.0, T.coord_scale());
        CHECK((Tp.coords() - T.coords()).cwiseAbs().maxCoeff() / scale < 1e-12);

        // exact scaling by powers of two
        const SymTensor T4 = synthesize(V, (4.0 * lam).eval(), d);
        CHECK((T4.coords() - 4.0 * T.coords()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("evaluate") {
    const SymTensor T = eq13_tensor();
    Eigen::Vector3d ones(1, 1, 1);
    // 59*3 - 16*6 + 66*3 + 96*3 from the monomial expansion
    CHECK(evaluate(T, ones) == doctest::Approx(567.0).epsilon(1e-12));

    const SymTensor Z(3, 4);
    CHECK(evaluate(Z, ones) == 0.0);

    Eigen::VectorXd c = Eigen::VectorXd::Zero(index_count(3, 5));
    c[index_position(3, 5, {5, 0, 0})] = 1.0;
    const SymTensor Mono(3, 5, c);
    CHECK(evaluate(Mono, Eigen::Vector3d(1, 0, 0)) == 1.0);
}

TEST_CASE("gradient: calculus, finite differences, Euler identity") {
    // x^3 + y^3 at (1,2) -> (3, 12)
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
    c[index_position(2, 3, {3, 0})] = 1.0;
    c[index_position(2, 3, {0, 3})] = 1.0;
    const SymTensor C(2, 3, c);
    const Eigen::VectorXd g = gradient(C, Eigen::Vector2d(1, 2));
    CHECK(g[0] == doctest::Approx(3.0));
    CHECK(g[1] == doctest::Approx(12.0));

    Rng rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + rng.uniform_int(3);
        const int d = 2 + rng.uniform_int(4);
        Eigen::VectorXd coords(index_count(n, d));
        for (Eigen::Index i = 0; i < coords.size(); ++i) coords[i] = rng.uniform(-1.0, 1.0);
        const SymTensor T(n, d, coords);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);

        const Eigen::VectorXd gx = gradient(T, x);
        // central finite differences as the independent oracle
        const double h = 1e-6;
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXd xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const double fd = (evaluate(T, xp) - evaluate(T, xm)) / (2.0 * h);
            const double ref = std::max(1.0, std::abs(gx[k]));
            CHECK(std::abs(gx[k] - fd) / ref < 1e-6);
        }
        // Euler identity for homogeneous polynomials
        CHECK(x.dot(gx) == doctest::Approx(d * evaluate(T, x)).epsilon(1e-10));
    }
}

TEST_CASE("middle catalecticant of a rank-5 ternary quartic") {
    Eigen::MatrixXd Vw(3, 5);
    const double s3 = std::sqrt(3.0);
    Vw << -1, 2, 2, 1 + 2 * s3, -1 + 2 * s3,
           2, 2, -1, -2 + s3, 2 + s3,
           0, 1, -2, 5, -5;
    const SymTensor T = synthesize(Vw, Eigen::VectorXd::Ones(5), 4);
    const Eigen::MatrixXd C = catalecticant(T, 2);
    Eigen::MatrixXd want(6, 6);
    want << 467, 38, 362, 110, -124, 670,
            38, 110, -124, 134, -166, 196,
            362, -124, 670, -166, 196, 236,
            110, 134, -166, 227, -250, 358,
            -124, -166, 196, -250, 358, -490,
            670, 196, 236, 358, -490, 1267;
    CHECK((C - want).cwiseAbs().maxCoeff() < 1e-9);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
    const auto& sv = svd.singularValues();
    CHECK(sv[4] / sv[0] > 1e-8);
    CHECK(sv[5] / sv[0] < 1e-10);  // numerical rank 5
}

TEST_CASE("catalecticant edges and invariants") {
    const SymTensor Z(3, 4);
    CHECK(catalecticant(Z, 2).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(catalecticant(Z, 0), ShapeMismatchError);
    CHECK_THROWS_AS(catalecticant(Z, 4), ShapeMismatchError);

    Rng rng(31);
    // rank-1 synthesis gives a rank-1 catalecticant
    Eigen::MatrixXd v = random_matrix(3, 1, rng);
    const SymTensor R1 = synthesize(v, Eigen::VectorXd::Ones(1), 4);
    for (int k = 1; k <= 3; ++k) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(catalecticant(R1, k));
        CHECK(svd.singularValues()[1] / svd.singularValues()[0] < 1e-12);
    }

    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + rng.uniform_int(2);
        const int d = 4 + rng.uniform_int(3);
        const int r = 1 + rng.uniform_int(4);
        const Eigen::MatrixXd V = random_matrix(n, r, rng);
        Eigen::VectorXd lam(r);
        for (int j = 0; j < r; ++j) lam[j] = rng.uniform(-1.0, 1.0);
        const SymTensor T = synthesize(V, lam, d);
        for (int k = 1; k < d; ++k) {
            const Eigen::MatrixXd A = catalecticant(T, k);
            const Eigen::MatrixXd B = catalecticant(T, d - k);
            CHECK((A - B.transpose()).cwiseAbs().maxCoeff() == 0.0);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
            const auto& sv = svd.singularValues();
            const long long bound = std::min<long long>(r, index_count(n, k));
            if (bound < sv.size())
                CHECK(sv[bound] / sv[0] < 1e-8);
        }
    }
}

TEST_CASE("symtensor v1 file format round-trips") {
    Rng rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + rng.uniform_int(3);
        const int d = 2 + rng.uniform_int(4);
        Eigen::VectorXd coords(index_count(n, d));
        for (Eigen::Index i = 0; i < coords.size(); ++i)
            coords[i] = rng.uniform() < 0.3 ? 0.0 : rng.uniform(-5.0, 5.0);
        const SymTensor T(n, d, coords);
        std::stringstream ss;
        write_symtensor(ss, T);
        const SymTensor U = read_symtensor(ss);
        REQUIRE(U.n() == n);
        REQUIRE(U.d() == d);
        CHECK((U.coords() - T.coords()).cwiseAbs().maxCoeff() == 0.0);
    }
    std::stringstream bad("symtensor n=x d=2\n");
    CHECK_THROWS_AS(read_symtensor(bad), ParseError);
}
