#include "fradeco/variety_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Dense>

#include "fradeco/errors.hpp"
#include "fradeco/rng.hpp"
#include "fradeco/sampling.hpp"

namespace fradeco {

int expected_dim(int r, int n, int d) {
    if (!(r > n && n >= 2)) throw ShapeMismatchError("expected_dim: need r > n >= 2");
    if (n == 2) {
        if (d < 2) throw ShapeMismatchError("expected_dim: need d >= 2 for n = 2");
        return std::min(2 * r - 3, d);
    }
    if (d < 3) throw ShapeMismatchError("expected_dim: need d >= 3");
    const long long para = static_cast<long long>(n - 1) * (r - n) +
                           static_cast<long long>(n - 1) * (n - 2) / 2 + r - 1;
    const long long ambient = index_count(n, d) - 1;
    return static_cast<int>(std::min(para, ambient));
}

namespace {

/// Analytic Jacobian of the n^2 + r funtf equations wrt vec(V) (column-major).
Eigen::MatrixXd funtf_jacobian(const Eigen::MatrixXd& V) {
    const int n = static_cast<int>(V.rows());
    const int r = static_cast<int>(V.cols());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n * n + r, n * r);
    int row = 0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            for (int j = 0; j < r; ++j) {
                J(row, j * n + k) += V(l, j);
                J(row, j * n + l) += V(k, j);
            }
            ++row;
        }
    }
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < n; ++i) J(row, j * n + i) = 2.0 * V(i, j);
        ++row;
    }
    return J;
}

/// Jacobian of synthesize at (V, lambda): N x (nr + r), frame directions
/// first (column-major), then the weight directions.
Eigen::MatrixXd synth_jacobian(const Eigen::MatrixXd& V, const Eigen::VectorXd& lam, int d) {
    const int n = static_cast<int>(V.rows());
    const int r = static_cast<int>(V.cols());
    const auto basis = index_basis(n, d);
    const int N = static_cast<int>(basis.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, n * r + r);
    for (int ai = 0; ai < N; ++ai) {
        const Exponent& a = basis[static_cast<size_t>(ai)];
        for (int j = 0; j < r; ++j) {
            double mono = 1.0;
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < a[i]; ++e) mono *= V(i, j);
            J(ai, n * r + j) = mono;
            for (int i = 0; i < n; ++i) {
                if (a[i] == 0) continue;
                double p = lam[j] * a[i];
                for (int i2 = 0; i2 < n; ++i2) {
                    const int e = i2 == i ? a[i2] - 1 : a[i2];
                    for (int q = 0; q < e; ++q) p *= V(i2, j);
                }
                J(ai, j * n + i) = p;
            }
        }
    }
    return J;
}

Eigen::VectorXd draw_lambda(int r, Rng& rng) {
    Eigen::VectorXd lam(r);
    do {
        for (int j = 0; j < r; ++j) lam[j] = rng.uniform(-1.0, 1.0);
    } while (lam.norm() < 0.1);
    return lam;
}

}  // namespace

TangentResult tangent_dim(int r, int n, int d, std::uint64_t seed, int samples,
                          const RankPolicy& policy) {
    if (r <= n) throw ShapeMismatchError("tangent_dim: need r > n");
    TangentResult best;
    bool any_confident = false;
    for (int s = 0; s < samples; ++s) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        const Frame F = sample_frame(r, n, rng);
        const Eigen::VectorXd lam = draw_lambda(r, rng);
        const Eigen::MatrixXd TV = nullspace(funtf_jacobian(F.V), policy);
        const Eigen::MatrixXd Js = synth_jacobian(F.V, lam, d);
        Eigen::MatrixXd M(Js.rows(), TV.cols() + r);
        M.leftCols(TV.cols()) = Js.leftCols(n * r) * TV;
        M.rightCols(r) = Js.rightCols(r);
        const RankDecision dec = decide_rank(M, policy);
        if (dec.indeterminate) continue;
        any_confident = true;
        if (dec.rank > best.affine_rank) {
            best.affine_rank = dec.rank;
            best.dim = dec.rank - 1;
            best.gap_ratio = dec.gap_ratio;
        }
    }
    if (!any_confident)
        throw IndeterminateError("tangent_dim: singular-value gap failure on every sample");
    return best;
}

HilbertReport hilbert_value(int r, int n, int d, int e, int nsamples, std::uint64_t seed,
                            const HilbertOptions& opts) {
    HilbertReport rep;
    rep.r = r;
    rep.n = n;
    rep.d = d;
    rep.e = e;
    const int N = static_cast<int>(index_count(n, d));
    rep.ambient_dim = binomial(N + e - 1, e);
    if (rep.ambient_dim > opts.column_budget)
        throw BudgetExceededError("hilbert_value: " + std::to_string(rep.ambient_dim) +
                                  " monomial columns exceed the budget");
    const auto monomials = index_basis(N, e);
    const int ambient = static_cast<int>(monomials.size());
    if (nsamples <= 0) nsamples = static_cast<int>(std::min<long long>(2LL * ambient, 30000));
    rep.samples = nsamples;

    Eigen::MatrixXd rows(nsamples, ambient);
    parallel_for(nsamples, std::max(1, opts.threads), [&](int s) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        const Frame F = sample_frame(r, n, rng);
        const Eigen::VectorXd lam = draw_lambda(r, rng);
        SymTensor T = synthesize(F.V, lam, d);
        Eigen::VectorXd t = T.coords() / T.coords().norm();
        // powers t_v^k for k <= e
        Eigen::MatrixXd pw(N, e + 1);
        for (int v = 0; v < N; ++v) {
            pw(v, 0) = 1.0;
            for (int k = 1; k <= e; ++k) pw(v, k) = pw(v, k - 1) * t[v];
        }
        for (int mi = 0; mi < ambient; ++mi) {
            double p = 1.0;
            const Exponent& m = monomials[static_cast<size_t>(mi)];
            for (int v = 0; v < N; ++v)
                if (m[v]) p *= pw(v, m[v]);
            rows(s, mi) = p;
        }
    });

    // unit column norms: vastly better singular-value gaps, same kernel
    for (int c = 0; c < ambient; ++c) {
        const double nc = rows.col(c).norm();
        if (nc > 0.0) rows.col(c) /= nc;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(rows);
    const RankDecision dec = decide_rank(svd.singularValues());
    rep.singular_values = dec.singular_values;
    rep.kernel_dim = ambient - dec.rank;
    rep.gap_ratio = dec.gap_ratio;
    rep.indeterminate = dec.indeterminate;
    return rep;
}

// ---------------------------------------------------------------------------
// Known equations
// ---------------------------------------------------------------------------

namespace {

using Monomials = std::vector<std::pair<long long, std::vector<Exponent>>>;

Exponent ex(int i, int j, int k) { return Exponent{i, j, k}; }

/// Expands coeff * det of the 3x3 submatrix of `C` (3x6 symbol matrix) with
/// the given 1-based columns into signed monomials.
void add_det3(Monomials& out, long long coeff, const std::vector<std::vector<Exponent>>& C, int c1,
              int c2, int c3) {
    const int cols[3] = {c1 - 1, c2 - 1, c3 - 1};
    const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
    const int sign[6] = {1, 1, 1, -1, -1, -1};
    for (int p = 0; p < 6; ++p) {
        std::vector<Exponent> factors = {C[0][static_cast<size_t>(cols[perm[p][0]])],
                                         C[1][static_cast<size_t>(cols[perm[p][1]])],
                                         C[2][static_cast<size_t>(cols[perm[p][2]])]};
        out.emplace_back(coeff * sign[p], std::move(factors));
    }
}

KnownEquation make_cubic_433() {
    KnownEquation eq;
    eq.name = "cubic_433";
    eq.n = 3;
    eq.d = 3;
    eq.degree = 3;
    const std::vector<std::vector<Exponent>> C = {
        {ex(3, 0, 0), ex(2, 1, 0), ex(1, 2, 0), ex(2, 0, 1), ex(1, 1, 1), ex(1, 0, 2)},
        {ex(2, 1, 0), ex(1, 2, 0), ex(0, 3, 0), ex(1, 1, 1), ex(0, 2, 1), ex(0, 1, 2)},
        {ex(2, 0, 1), ex(1, 1, 1), ex(0, 2, 1), ex(1, 0, 2), ex(0, 1, 2), ex(0, 0, 3)}};
    add_det3(eq.monomials, 1, C, 1, 2, 3);
    add_det3(eq.monomials, 2, C, 1, 4, 5);
    add_det3(eq.monomials, 2, C, 3, 4, 5);
    add_det3(eq.monomials, -1, C, 1, 2, 6);
    add_det3(eq.monomials, -1, C, 2, 3, 6);
    add_det3(eq.monomials, -4, C, 4, 5, 6);
    return eq;
}

void add_mono(Monomials& out, long long c, Exponent a, Exponent b) {
    out.emplace_back(c, std::vector<Exponent>{std::move(a), std::move(b)});
}

KnownEquation make_quadric_434() {
    KnownEquation eq;
    eq.name = "quadric_434";
    eq.n = 3;
    eq.d = 4;
    eq.degree = 2;
    Monomials& m = eq.monomials;
    // 8(t013^2 - t004 t022) + 8(t031^2 - t022 t040) + 8(t211^2 - t202 t220)
    add_mono(m, 8, ex(0, 1, 3), ex(0, 1, 3));
    add_mono(m, -8, ex(0, 0, 4), ex(0, 2, 2));
    add_mono(m, 8, ex(0, 3, 1), ex(0, 3, 1));
    add_mono(m, -8, ex(0, 2, 2), ex(0, 4, 0));
    add_mono(m, 8, ex(2, 1, 1), ex(2, 1, 1));
    add_mono(m, -8, ex(2, 0, 2), ex(2, 2, 0));
    // 18(t112^2 - t103 t121) + 18(t121^2 - t112 t130)
    add_mono(m, 18, ex(1, 1, 2), ex(1, 1, 2));
    add_mono(m, -18, ex(1, 0, 3), ex(1, 2, 1));
    add_mono(m, 18, ex(1, 2, 1), ex(1, 2, 1));
    add_mono(m, -18, ex(1, 1, 2), ex(1, 3, 0));
    // (t004 t040 + 19 t022^2 - 20 t013 t031)
    add_mono(m, 1, ex(0, 0, 4), ex(0, 4, 0));
    add_mono(m, 19, ex(0, 2, 2), ex(0, 2, 2));
    add_mono(m, -20, ex(0, 1, 3), ex(0, 3, 1));
    // (t004 t220 + t022 t202 - 2 t013 t211)
    add_mono(m, 1, ex(0, 0, 4), ex(2, 2, 0));
    add_mono(m, 1, ex(0, 2, 2), ex(2, 0, 2));
    add_mono(m, -2, ex(0, 1, 3), ex(2, 1, 1));
    // (t040 t202 + t022 t220 - 2 t031 t211)
    add_mono(m, 1, ex(0, 4, 0), ex(2, 0, 2));
    add_mono(m, 1, ex(0, 2, 2), ex(2, 2, 0));
    add_mono(m, -2, ex(0, 3, 1), ex(2, 1, 1));
    return eq;
}

KnownEquation make_quadric_435_shift() {
    KnownEquation eq = make_quadric_434();
    eq.name = "quadric_435_shift";
    eq.d = 5;
    for (auto& [c, factors] : eq.monomials)
        for (auto& f : factors) f[2] += 1;  // t_{ijk} -> t_{i,j,k+1}
    return eq;
}

struct BracketTerm {
    long long coeff;
    std::array<Exponent, 3> factors;
    int orbit_size;
};

/// Expands [m]_k: the sum over the orbit of the monomial under simultaneous
/// S3 permutation of the three exponent positions; the orbit size must equal
/// the declared subscript.
void add_bracket(Monomials& out, const BracketTerm& term) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::set<std::vector<Exponent>> orbit;
    for (const auto& p : perms) {
        std::vector<Exponent> elem;
        for (const auto& f : term.factors) elem.push_back(Exponent{f[p[0]], f[p[1]], f[p[2]]});
        std::sort(elem.begin(), elem.end());
        orbit.insert(std::move(elem));
    }
    if (static_cast<int>(orbit.size()) != term.orbit_size)
        throw Error("S3 bracket orbit size mismatch");
    for (const auto& elem : orbit) out.emplace_back(term.coeff, elem);
}

KnownEquation make_cubic_534() {
    KnownEquation eq;
    eq.name = "cubic_534";
    eq.n = 3;
    eq.d = 4;
    eq.degree = 3;
    const std::vector<BracketTerm> terms = {
        {46, {ex(0, 2, 2), ex(2, 0, 2), ex(2, 2, 0)}, 1},
        {73, {ex(1, 1, 2), ex(1, 2, 1), ex(2, 1, 1)}, 1},
        {-4, {ex(0, 0, 4), ex(0, 4, 0), ex(4, 0, 0)}, 1},
        {19, {ex(0, 1, 3), ex(1, 3, 0), ex(3, 0, 1)}, 2},
        {-50, {ex(0, 0, 4), ex(1, 1, 2), ex(1, 1, 2)}, 3},
        {-22, {ex(0, 0, 4), ex(2, 2, 0), ex(2, 2, 0)}, 3},
        {-18, {ex(0, 2, 2), ex(2, 1, 1), ex(2, 1, 1)}, 3},
        {50, {ex(0, 0, 4), ex(0, 2, 2), ex(2, 0, 2)}, 3},
        {26, {ex(0, 0, 4), ex(1, 3, 0), ex(3, 1, 0)}, 3},
        {100, {ex(0, 1, 3), ex(1, 0, 3), ex(1, 1, 2)}, 3},
        {-53, {ex(0, 1, 3), ex(1, 2, 1), ex(3, 1, 0)}, 3},
        {5, {ex(0, 0, 4), ex(0, 2, 2), ex(4, 0, 0)}, 6},
        {-50, {ex(0, 1, 3), ex(0, 1, 3), ex(2, 0, 2)}, 6},
        {-5, {ex(0, 1, 3), ex(0, 1, 3), ex(2, 2, 0)}, 6},
        {45, {ex(0, 0, 4), ex(0, 3, 1), ex(2, 1, 1)}, 6},
        {-40, {ex(0, 2, 2), ex(2, 0, 2), ex(2, 0, 2)}, 6},
        {5, {ex(0, 0, 4), ex(0, 2, 2), ex(2, 2, 0)}, 6},
        {40, {ex(0, 2, 2), ex(1, 1, 2), ex(1, 1, 2)}, 6},
        {-5, {ex(0, 0, 4), ex(1, 3, 0), ex(1, 3, 0)}, 6},
        {-45, {ex(0, 0, 4), ex(1, 2, 1), ex(1, 2, 1)}, 6},
        {-10, {ex(0, 0, 4), ex(1, 1, 2), ex(1, 3, 0)}, 6},
        {-45, {ex(0, 1, 3), ex(0, 2, 2), ex(2, 1, 1)}, 6},
        {35, {ex(0, 1, 3), ex(0, 3, 1), ex(2, 0, 2)}, 6},
        {10, {ex(0, 1, 3), ex(1, 0, 3), ex(1, 3, 0)}, 6},
        {10, {ex(0, 1, 3), ex(1, 1, 2), ex(1, 2, 1)}, 6},
        {-80, {ex(0, 1, 3), ex(1, 1, 2), ex(3, 0, 1)}, 6},
        {80, {ex(0, 1, 3), ex(2, 0, 2), ex(2, 1, 1)}, 6},
        {8, {ex(0, 1, 3), ex(2, 1, 1), ex(2, 2, 0)}, 6},
    };
    for (const auto& term : terms) add_bracket(eq.monomials, term);
    if (eq.monomials.size() != 128) throw Error("cubic_534 must have 128 terms");
    return eq;
}

KnownEquation make_catalecticant_det_534() {
    KnownEquation eq;
    eq.name = "catalecticant_det_534";
    eq.n = 3;
    eq.d = 4;
    eq.degree = 6;
    eq.is_catalecticant_det = true;
    return eq;
}

const std::map<std::string, KnownEquation>& equation_registry() {
    static const std::map<std::string, KnownEquation> reg = [] {
        std::map<std::string, KnownEquation> m;
        for (KnownEquation eq : {make_cubic_433(), make_quadric_434(), make_quadric_435_shift(),
                                 make_cubic_534(), make_catalecticant_det_534()})
            m.emplace(eq.name, std::move(eq));
        return m;
    }();
    return reg;
}

/// Fraction-free (Bareiss) integer determinant.
__int128 bareiss_det(std::vector<std::vector<__int128>> a) {
    const int n = static_cast<int>(a.size());
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int p = k + 1;
            while (p < n && a[static_cast<size_t>(p)][static_cast<size_t>(k)] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(p)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                         a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                         a[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
                    prev;
            }
            a[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
        }
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

}  // namespace

double KnownEquation::operator()(const SymTensor& T) const {
    if (T.n() != n || T.d() != d)
        throw ShapeMismatchError(name + ": expects (n,d) = (" + std::to_string(n) + "," +
                                 std::to_string(d) + ")");
    if (is_catalecticant_det) return catalecticant(T, 2).determinant();
    double out = 0.0;
    for (const auto& [c, factors] : monomials) {
        double p = static_cast<double>(c);
        for (const auto& f : factors) p *= T.coords()[index_position(n, d, f)];
        out += p;
    }
    return out;
}

long long KnownEquation::evaluate_exact(const std::vector<long long>& coords) const {
    if (static_cast<long long>(coords.size()) != index_count(n, d))
        throw ShapeMismatchError(name + ": wrong coordinate count");
    __int128 out = 0;
    if (is_catalecticant_det) {
        const auto rows = index_basis(n, 2);
        const auto cols = index_basis(n, d - 2);
        std::vector<std::vector<__int128>> M(rows.size(), std::vector<__int128>(cols.size()));
        Exponent a(static_cast<size_t>(n));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) {
                for (int v = 0; v < n; ++v) a[static_cast<size_t>(v)] = rows[i][static_cast<size_t>(v)] + cols[j][static_cast<size_t>(v)];
                M[i][j] = coords[static_cast<size_t>(index_position(n, d, a))];
            }
        out = bareiss_det(std::move(M));
    } else {
        for (const auto& [c, factors] : monomials) {
            __int128 p = c;
            for (const auto& f : factors) p *= coords[static_cast<size_t>(index_position(n, d, f))];
            out += p;
        }
    }
    constexpr __int128 lo = -__int128(0x7fffffffffffffffLL) - 1;
    constexpr __int128 hi = __int128(0x7fffffffffffffffLL);
    if (out < lo || out > hi) throw Error(name + ": exact value overflows 64 bits");
    return static_cast<long long>(out);
}

const KnownEquation& known_equation(const std::string& name) {
    const auto& reg = equation_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) throw UnknownEquationError("unknown equation '" + name + "'");
    return it->second;
}

std::vector<std::string> known_equation_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : equation_registry()) out.push_back(k);
    return out;
}

double eval_known_equation(const std::string& name, const SymTensor& T) {
    return known_equation(name)(T);
}

// ---------------------------------------------------------------------------
// Kernel conic and the Waring-enhanced search
// ---------------------------------------------------------------------------

Eigen::VectorXd kernel_conic(const SymTensor& T, const RankPolicy& policy) {
    if (T.n() != 3 || T.d() != 4) throw ShapeMismatchError("kernel_conic: expects a ternary quartic");
    const Eigen::MatrixXd C = catalecticant(T, 2);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const RankDecision dec = decide_rank(svd.singularValues(), policy);
    if (dec.indeterminate) throw IndeterminateError("kernel_conic: gap failure on the catalecticant");
    if (dec.rank == 6) throw FullRankError("kernel_conic: catalecticant has rank 6");
    if (dec.rank <= 4)
        throw RankTooLowError("kernel_conic: catalecticant rank " + std::to_string(dec.rank) +
                              " <= 4");
    Eigen::VectorXd q = svd.matrixV().col(5);
    int big = 0;
    for (int i = 1; i < 6; ++i)
        if (std::abs(q[i]) > std::abs(q[big])) big = i;
    if (q[big] < 0) q = -q;
    return q;
}

namespace {

Eigen::Matrix3d conic_matrix(const Eigen::VectorXd& q) {
    Eigen::Matrix3d Q;
    Q << q[0], q[1] / 2, q[2] / 2,
         q[1] / 2, q[3], q[4] / 2,
         q[2] / 2, q[4] / 2, q[5];
    return Q;
}

struct ConicChart {
    Eigen::Matrix3d Q;
    Eigen::Vector3d p0;  // base point on the conic
    Eigen::Vector3d t1, t2;
};

ConicChart conic_chart(const Eigen::VectorXd& qcoef, Rng& rng) {
    ConicChart ch;
    ch.Q = conic_matrix(qcoef);
    const double qscale = ch.Q.cwiseAbs().maxCoeff();
    for (int attempt = 0; attempt < 400; ++attempt) {
        Eigen::Vector3d a = random_unit_vector(3, rng);
        Eigen::Vector3d b = random_unit_vector(3, rng);
        const double qa = a.dot(ch.Q * a);
        const double qab = a.dot(ch.Q * b);
        const double qb = b.dot(ch.Q * b);
        if (std::abs(qb) < 1e-12 * qscale) continue;
        const double disc = qab * qab - qa * qb;
        if (disc < 0.0) continue;
        Eigen::Vector3d p = a + ((-qab + std::sqrt(disc)) / qb) * b;
        const double nrm = p.norm();
        if (nrm < 1e-10) continue;
        p /= nrm;
        if (std::abs(p.dot(ch.Q * p)) > 1e-9 * qscale) continue;
        ch.p0 = p;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.transpose(), Eigen::ComputeFullV);
        ch.t1 = svd.matrixV().col(1);
        ch.t2 = svd.matrixV().col(2);
        return ch;
    }
    throw NotFoundError("waring_frame_search: no real point found on the kernel conic");
}

/// Second intersection of the line through p0 in direction angle s.
Eigen::Vector3d conic_point(const ConicChart& ch, double s) {
    const Eigen::Vector3d w = std::cos(s) * ch.t1 + std::sin(s) * ch.t2;
    const double qpw = ch.p0.dot(ch.Q * w);
    const double qw = w.dot(ch.Q * w);
    if (std::abs(qw) < 1e-14) return ch.p0;
    Eigen::Vector3d pt = ch.p0 - (2.0 * qpw / qw) * w;
    const double nrm = pt.norm();
    return nrm > 0 ? Eigen::Vector3d(pt / nrm) : ch.p0;
}

struct SearchEval {
    Eigen::VectorXd resid;  // 14 funtf residuals + 15 scaled fit residuals
    Eigen::MatrixXd V;
    Eigen::VectorXd lam;
    double fit_abs = 0.0;
};

SearchEval search_eval(const ConicChart& ch, const Eigen::VectorXd& svec,
                       const std::vector<Exponent>& basis, const Eigen::VectorXd& target,
                       double scale) {
    const int r = 5, n = 3;
    SearchEval ev;
    ev.V.resize(n, r);
    for (int j = 0; j < r; ++j) ev.V.col(j) = conic_point(ch, svec[j]);
    Eigen::MatrixXd A(basis.size(), r);
    for (size_t ai = 0; ai < basis.size(); ++ai)
        for (int j = 0; j < r; ++j) {
            double p = 1.0;
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < basis[ai][static_cast<size_t>(i)]; ++e) p *= ev.V(i, j);
            A(static_cast<Eigen::Index>(ai), j) = p;
        }
    ev.lam = A.colPivHouseholderQr().solve(target);
    const Eigen::VectorXd fit = A * ev.lam - target;
    ev.fit_abs = fit.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd G = ev.V * ev.V.transpose() - (5.0 / 3.0) * Eigen::MatrixXd::Identity(3, 3);
    ev.resid.resize(n * n + r + static_cast<int>(basis.size()));
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ev.resid[k++] = G(i, j);
    for (int j = 0; j < r; ++j) ev.resid[k++] = ev.V.col(j).squaredNorm() - 1.0;
    for (Eigen::Index i = 0; i < fit.size(); ++i) ev.resid[k++] = fit[i] / scale;
    return ev;
}

}  // namespace

WaringSearchResult waring_frame_search(const SymTensor& T, int restarts, std::uint64_t seed,
                                       const RankPolicy& policy) {
    const Eigen::VectorXd qcoef = kernel_conic(T, policy);  // FullRank / RankTooLow propagate
    Rng rng(seed);
    const ConicChart ch = conic_chart(qcoef, rng);
    const auto basis = index_basis(3, 4);
    const Eigen::VectorXd target = T.coords();
    const double scale = std::max(T.coord_scale(), 1e-300);

    const double accept = 1e-8;
    for (int rs = 0; rs < restarts; ++rs) {
        Eigen::VectorXd svec(5);
        for (int j = 0; j < 5; ++j) svec[j] = rng.uniform(0.0, 2.0 * M_PI);
        SearchEval ev = search_eval(ch, svec, basis, target, scale);
        double cost = ev.resid.squaredNorm();
        double mu = 1e-3;
        for (int it = 0; it < 80 && cost > 1e-22; ++it) {
            const double h = 1e-7;
            Eigen::MatrixXd J(ev.resid.size(), 5);
            for (int k = 0; k < 5; ++k) {
                Eigen::VectorXd sp = svec;
                sp[k] += h;
                J.col(k) = (search_eval(ch, sp, basis, target, scale).resid - ev.resid) / h;
            }
            bool stepped = false;
            for (int damp = 0; damp < 12 && !stepped; ++damp) {
                const Eigen::MatrixXd H = J.transpose() * J + mu * Eigen::MatrixXd::Identity(5, 5);
                const Eigen::VectorXd g = J.transpose() * ev.resid;
                const Eigen::VectorXd step = H.ldlt().solve(-g);
                SearchEval trial = search_eval(ch, svec + step, basis, target, scale);
                const double tc = trial.resid.squaredNorm();
                if (tc < cost) {
                    svec += step;
                    ev = std::move(trial);
                    cost = tc;
                    mu = std::max(mu * 0.3, 1e-12);
                    stepped = true;
                } else {
                    mu *= 10.0;
                }
            }
            if (!stepped) break;
        }
        const double funtf_res = funtf_residual(ev.V);
        const double rel_fit = ev.fit_abs / scale;
        const double combined = std::sqrt(funtf_res * funtf_res + rel_fit * rel_fit);
        if (combined < accept) {
            WaringSearchResult out;
            out.dec.frame = make_frame(ev.V);
            out.dec.weights = ev.lam;
            out.dec.fit_residual = ev.fit_abs;
            out.combined_residual = combined;
            out.restarts_used = rs + 1;
            return out;
        }
    }
    throw NotFoundError("waring_frame_search: restart budget exhausted");
}

}  // namespace fradeco
