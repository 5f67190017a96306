// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fradeco/binary_frames.hpp"
#include "fradeco/errors.hpp"
#include "fradeco/power_method.hpp"
#include "fradeco/rng.hpp"
#include "fradeco/sampling.hpp"
#include "fradeco/sym_tensor.hpp"
#include "fradeco/variety_lab.hpp"

using namespace fradeco;

namespace {

struct Checker {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

Eigen::MatrixXd eq14_frame() {
    Eigen::MatrixXd B(3, 4);
    B << -5, 1, 1, 3,
          1, -5, 1, 3,
          1, 1, -5, 3;
    return B / (3.0 * std::sqrt(3.0));
}

double angular_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::min((a - b).norm(), (a + b).norm());
}

// --- criterion 1: simplex quartic roundtrip -------------------------------

void criterion1(Checker& c) {
    // exact arithmetic: with integer columns B and lambda = 729/12 the
    // coordinates are (sum_j prod_i B_ij^a_i) / 12, an integer for every a
    const long long B[3][4] = {{-5, 1, 1, 3}, {1, -5, 1, 3}, {1, 1, -5, 3}};
    const auto basis = index_basis(3, 4);
    const long long want[] = {59, -4, 11, 8};  // by exponent multiset {4},{3,1},{2,2},{2,1,1}
    for (const auto& a : basis) {
        long long num = 0;
        for (int j = 0; j < 4; ++j) {
            long long p = 1;
            for (int i = 0; i < 3; ++i)
                for (int e = 0; e < a[i]; ++e) p *= B[i][j];
            num += p;
        }
        c.require(num % 12 == 0, "integer synthesis not divisible by 12");
        const long long val = num / 12;
        int kind;
        const int mx = std::max({a[0], a[1], a[2]});
        if (mx == 4) kind = 0;
        else if (mx == 3) kind = 1;
        else if (a[0] == 2 && a[1] == 2) kind = 2;
        else if ((a[0] == 2 && a[2] == 2) || (a[1] == 2 && a[2] == 2)) kind = 2;
        else kind = 3;
        c.require(val == want[kind], "exact coordinate mismatch");
    }

    const SymTensor T = synthesize(eq14_frame(), Eigen::VectorXd::Constant(4, 729.0 / 12.0), 4);
    for (size_t ai = 0; ai < basis.size(); ++ai) {
        long long num = 0;
        for (int j = 0; j < 4; ++j) {
            long long p = 1;
            for (int i = 0; i < 3; ++i)
                for (int e = 0; e < basis[ai][i]; ++e) p *= B[i][j];
            num += p;
        }
        c.require(std::abs(T.coords()[static_cast<Eigen::Index>(ai)] - num / 12.0) < 1e-12,
                  "float synthesis departs from the exact value");
    }

    Decomposition dec;
    dec.frame = make_frame(eq14_frame());
    dec.weights = Eigen::VectorXd::Constant(4, 729.0 / 12.0);
    c.require(verify_decomposition(T, dec, 1e-12).pass, "verify_decomposition failed");
}

// --- criterion 2: two-odeco example ranks ----------------------------------

void criterion2(Checker& c) {
    Eigen::VectorXd t(9);
    t << 3, 0, 2, 0, 2, 0, 2, 0, 3;
    const RankDecision r4 = decide_rank(build_Mr(t, 4));
    c.require(r4.rank == 2, "M_4 rank != 2");
    c.require(r4.gap_ratio >= 1e3, "M_4 gap below 1e3");
    const RankDecision r5 = decide_rank(build_Mr(t, 5));
    c.require(r5.rank == 4, "M_5 not full rank");
    const FradecoRankResult fr = fradeco_rank(t);
    c.require(fr.first_deficient && *fr.first_deficient == 4, "first deficient r != 4");
    c.require(!fr.indeterminate, "fradeco_rank indeterminate");
}

// --- criterion 3: binary octic decomposition -------------------------------

void criterion3(Checker& c) {
    const double s3 = std::sqrt(3.0);
    const double alpha = s3 - 2.0;
    Eigen::MatrixXd U(2, 5);
    U << 1, 0, 1, alpha, 1,
         0, 1, 1, 1, alpha;
    Eigen::VectorXd lam(5);
    lam << 1, 1, 1, 1552 + 896 * s3, 1;
    Eigen::MatrixXd Vn = U;
    Eigen::VectorXd lam_n = lam;
    for (int j = 0; j < 5; ++j) {
        const double nrm = U.col(j).norm();
        Vn.col(j) /= nrm;
        lam_n[j] *= std::pow(nrm, 8);
    }
    const SymTensor T = synthesize(Vn, lam_n, 8);
    const BinaryDecomposition bd = decompose_binary(T, 5);
    c.require(!bd.complex_roots, "unexpected complex roots");
    int match_alpha = -1;
    for (int j = 0; j < 5; ++j) {
        int match = -1;
        for (int m = 0; m < 5; ++m)
            if (angular_dist(Vn.col(j), bd.dec.frame.V.col(m)) < 1e-6) match = m;
        c.require(match >= 0, "a frame column was not recovered within 1e-6");
        if (j == 3) match_alpha = match;
    }
    const double want4 = (1552 + 896 * s3) * std::pow(8 - 4 * s3, 4);
    c.require(match_alpha >= 0 &&
                  std::abs(bd.dec.weights[match_alpha] - want4) <= 1e-6 * want4,
              "weight on the (alpha,1) direction off by more than 1e-6 relative");
}

// --- criterion 4: dimension table -------------------------------------------

void criterion4(Checker& c) {
    c.require(tangent_dim(4, 3, 4, 11).dim == 6, "dim T(4,3,4) != 6");
    c.require(tangent_dim(5, 3, 4, 12).dim == 9, "dim T(5,3,4) != 9");
    c.require(tangent_dim(6, 3, 4, 13).dim == 12, "dim T(6,3,4) != 12");
    c.require(tangent_dim(5, 4, 3, 14).dim == 10, "dim T(5,4,3) != 10");
    c.require(tangent_dim(3, 2, 5, 15).dim == std::min(2 * 3 - 3, 5), "dim T(3,2,5) mismatch");
    c.require(tangent_dim(4, 2, 8, 16).dim == std::min(2 * 4 - 3, 8), "dim T(4,2,8) mismatch");
    c.require(tangent_dim(5, 2, 9, 17).dim == std::min(2 * 5 - 3, 9), "dim T(5,2,9) mismatch");
}

// --- criterion 5: Hilbert function table ------------------------------------

void criterion5(Checker& c) {
    const auto check = [&](int r, int n, int d, int e, int want, std::uint64_t seed) {
        const HilbertReport rep = hilbert_value(r, n, d, e, 0, seed);
        c.require(!rep.indeterminate, "hilbert gap below 1e3");
        c.require(rep.gap_ratio >= 1e3, "hilbert gap below 1e3");
        c.require(rep.kernel_dim == want,
                  "dim I_" + std::to_string(e) + " for (" + std::to_string(r) + "," +
                      std::to_string(n) + "," + std::to_string(d) + ") = " +
                      std::to_string(rep.kernel_dim) + ", wanted " + std::to_string(want));
    };
    check(4, 3, 4, 2, 6, 21);
    check(5, 3, 4, 3, 1, 22);
    check(5, 2, 9, 3, 0, 23);
    check(5, 2, 9, 4, 5, 24);
    check(4, 3, 3, 3, 3, 25);
}

// --- criterion 6: explicit equations ----------------------------------------

void criterion6(Checker& c) {
    const auto vanish = [&](const char* name, int r, int n, int d, int deg, std::uint64_t seed) {
        for (int k = 0; k < 200; ++k) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
            const Frame F = sample_frame(r, n, rng);
            Eigen::VectorXd lam(r);
            do {
                for (int j = 0; j < r; ++j) lam[j] = rng.uniform(-1.0, 1.0);
            } while (lam.norm() < 0.1);
            const SymTensor T = synthesize(F.V, lam, d);
            double denom = 1.0;
            for (int i = 0; i < deg; ++i) denom *= T.coord_scale();
            if (std::abs(eval_known_equation(name, T)) >= 1e-8 * denom) {
                c.require(false, std::string(name) + " does not vanish on its variety");
                return;
            }
        }
    };
    vanish("cubic_433", 4, 3, 3, 3, 61);
    vanish("quadric_434", 4, 3, 4, 2, 62);
    vanish("cubic_534", 5, 3, 4, 3, 63);

    const auto generic = [&](const char* name, int n, int d, int deg, std::uint64_t seed) {
        for (int k = 0; k < 200; ++k) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
            Eigen::VectorXd coords(index_count(n, d));
            for (Eigen::Index i = 0; i < coords.size(); ++i) coords[i] = rng.uniform(-1.0, 1.0);
            const SymTensor T(n, d, coords);
            double denom = 1.0;
            for (int i = 0; i < deg; ++i) denom *= T.coord_scale();
            if (std::abs(eval_known_equation(name, T)) <= 1e-3 * denom) {
                c.require(false, std::string(name) + " vanished on a generic tensor");
                return;
            }
        }
    };
    generic("cubic_433", 3, 3, 3, 64);
    generic("quadric_434", 3, 4, 2, 65);
    generic("cubic_534", 3, 4, 3, 66);
}

// --- criterion 7: Waring-enhanced pipeline ----------------------------------

void criterion7(Checker& c) {
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
    Eigen::MatrixXd rounded = C.array().round();
    c.require((C - rounded).cwiseAbs().maxCoeff() < 1e-9, "catalecticant is not integral");
    c.require((rounded - want).cwiseAbs().maxCoeff() == 0.0, "catalecticant != expected integer matrix");
    c.require(decide_rank(C).rank == 5, "catalecticant rank != 5");

    const Eigen::VectorXd q = kernel_conic(T);
    Eigen::VectorXd qwant(6);
    qwant << 14, -1, -2, -4, -11, -10;
    qwant /= qwant.norm();
    c.require((q - qwant).cwiseAbs().maxCoeff() < 1e-8, "kernel conic != expected conic");

    const WaringSearchResult res = waring_frame_search(T, 200, 4242);
    c.require(res.combined_residual < 1e-7, "waring search residual >= 1e-7");
}

// --- criterion 8: power method ----------------------------------------------

void criterion8(Checker& c) {
    const Eigen::MatrixXd B = eq14_frame();
    const SymTensor T = synthesize(B, Eigen::VectorXd::Ones(4), 5);
    const auto clusters = robust_eigenvectors(T, 500, 2024);
    c.require(clusters.size() == 4, "cluster count != 4");
    for (const auto& cl : clusters) {
        double best = 1e9;
        for (int j = 0; j < 4; ++j) best = std::min(best, angular_dist(cl.x, B.col(j)));
        c.require(best < 1e-6, "a cluster is not a frame column");
        c.require(cl.attracting, "a frame column is not attracting");
    }

    Eigen::MatrixXd V51(2, 4);
    V51 << 1, 0, 1, 1,
           0, 1, 1, -1;
    Eigen::VectorXd lam(4);
    lam << 7, 1, 1, 1;
    const EigenDiscriminant ed = eigen_discriminant_binary(synthesize(V51, lam, 5));
    c.require(ed.real_roots.size() == 1, "alpha=7 quintic: real root count != 1");
    if (!ed.real_roots.empty())
        c.require(angular_dist(ed.real_roots[0].point, Eigen::Vector2d(1, 0)) < 1e-9,
                  "alpha=7 quintic: real root is not (1:0)");
}

// --- criterion 9: property suite ---------------------------------------------

void criterion9(Checker& c) {
    int count = 0;
    for (int n = 2; n <= 4 && c.ok; ++n) {
        for (int r = std::max(3, n + 1); r <= 7 && c.ok; ++r) {
            for (int k = 0; k < 84; ++k) {
                Rng rng(mix_seed(900 + 10 * r + n, static_cast<std::uint64_t>(k)));
                const Frame F = sample_frame(r, n, rng);
                ++count;
                if (F.residual >= 1e-10) {
                    c.require(false, "funtf residual >= 1e-10");
                    break;
                }
                const PlueckerVector pv = pluecker(F.V);
                if (std::abs(pv.p.squaredNorm() - std::pow(static_cast<double>(r) / n, n)) >= 1e-8) {
                    c.require(false, "Cauchy-Binet sum violated");
                    break;
                }
                bool ok213 = true;
                for (int i = 0; i < r; ++i) {
                    double s = 0.0;
                    for (size_t t = 0; t < pv.subsets.size(); ++t)
                        for (int m : pv.subsets[t])
                            if (m == i) s += pv.p[static_cast<Eigen::Index>(t)] *
                                             pv.p[static_cast<Eigen::Index>(t)];
                    if (std::abs(s - std::pow(static_cast<double>(r) / n, n - 1)) >= 1e-8)
                        ok213 = false;
                }
                if (!ok213) {
                    c.require(false, "per-column Pluecker identity violated");
                    break;
                }
                if (n == 2) {
                    std::vector<Eigen::Vector2d> cols;
                    for (int j = 0; j + 1 < r; ++j) cols.emplace_back(F.V.col(j));
                    const PQSystem M = multilinear_PQ(cols);
                    const double P = M.ptilde(F.V(0, r - 1), F.V(1, r - 1));
                    const double Q = M.qtilde(F.V(0, r - 1), F.V(1, r - 1));
                    if (std::abs(P) >= 1e-9 || std::abs(Q) >= 1e-9) {
                        c.require(false, "P~ or Q~ does not vanish");
                        break;
                    }
                }
            }
        }
    }
    c.require(count >= 1000, "fewer than 1000 samples were drawn");
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void(Checker&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {"1 simplex quartic roundtrip", criterion1},
        {"2 two-odeco example ranks", criterion2},
        {"3 binary octic decomposition", criterion3},
        {"4 dimension table", criterion4},
        {"5 Hilbert function table", criterion5},
        {"6 explicit equations", criterion6},
        {"7 Waring-enhanced pipeline", criterion7},
        {"8 power method", criterion8},
        {"9 funtf property suite", criterion9},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        Checker c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.ok) {
            std::printf("PASS criterion %s (%.2fs)\n", cr.label, secs);
        } else {
            std::printf("FAIL criterion %s (%.2fs): %s\n", cr.label, secs, c.why.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}
