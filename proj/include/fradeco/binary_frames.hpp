#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "fradeco/frame.hpp"
#include "fradeco/numerics.hpp"
#include "fradeco/sym_tensor.hpp"

namespace fradeco {

/// One linear form sum_k coeff * t_{index} in the binary coordinates.
struct LinearStencil {
    std::vector<std::pair<int, int>> terms;  // (coefficient, index in 0..r)
};

/**
 * The integer stencil defining the determinantal matrix M_r: column j of the
 * matrix is the stored first column with all indices shifted by j-1.
 * Available for r = 3..9; the matrix at order d is (r-1) x (d-r+1) and
 * requires d >= 2r-2.
 */
struct TemplateMr {
    int r = 0;
    std::vector<LinearStencil> first_column;  // r-1 stencils
};

/// The stored template for r in 3..9. Throws UnsupportedRank otherwise.
const TemplateMr& template_Mr(int r);

/// Evaluates the shifted stencils at the binary coordinates t (length d+1).
Eigen::MatrixXd build_Mr(const Eigen::VectorXd& t, int r);

struct RankReport {
    int r = 0;
    int numerical_rank = 0;
    std::vector<double> singular_values;  // descending
    bool deficient = false;               // numerical_rank <= r-2
    double gap_ratio = 0.0;
    bool indeterminate = false;
};

struct FradecoRankResult {
    std::vector<RankReport> reports;
    std::optional<int> first_deficient;
    bool indeterminate = false;  // gap test failed at the decisive r
};

/// Iterates r = 3,4,... while d >= 2r-2 (and r <= 9), reporting per-r ranks
/// and the first r with numerically deficient M_r.
FradecoRankResult fradeco_rank(const Eigen::VectorXd& t, const RankPolicy& policy = {});

/**
 * Frame decomposition of a binary form by the catalecticant-style method:
 * left kernel of M_r -> degree-r binary form f -> its projective roots are
 * the frame columns -> weights by least squares over all d+1 coordinates.
 *
 * Throws NotRankDeficient (rank r-1), SingularPoint (rank <= r-3, kernel
 * dimension >= 2), RepeatedRoots (a root of f has multiplicity >= 2), and
 * Indeterminate on a gap failure. Non-real roots beyond tolerance are not an
 * error: the result is returned over complex numbers with `complex_roots`
 * set and the real Decomposition left empty.
 */
struct BinaryDecomposition {
    Decomposition dec;           // valid when !complex_roots
    bool complex_roots = false;
    Eigen::Matrix2Xcd V_complex;  // set when complex_roots
    Eigen::VectorXcd weights_complex;
    double fit_residual = 0.0;       // max-norm on coords
    double weight_condition = 0.0;   // condition number of the weight solve
};

BinaryDecomposition decompose_binary(const SymTensor& T, int r, double tol = 1e-8,
                                     const RankPolicy& policy = {});

/**
 * Projective roots of a binary form sum_k coeffs[k] x^k y^(deg-k), as unit
 * vectors in C^2. Roots at (1:0) / (0:1) come from leading / trailing
 * coefficients below 1e-10 * scale; the rest via the companion matrix of the
 * dehomogenized polynomial.
 */
std::vector<Eigen::Vector2cd> binary_form_roots(const Eigen::VectorXd& coeffs);

/// sin of the projective angle between two complex projective points.
double projective_distance(const Eigen::Vector2cd& u, const Eigen::Vector2cd& v);

}  // namespace fradeco
