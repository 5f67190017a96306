#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fradeco/frame.hpp"
#include "fradeco/numerics.hpp"
#include "fradeco/sym_tensor.hpp"

namespace fradeco {

/// Expected projective dimension of the fradeco variety:
/// min{(n-1)(r-n) + (n-1)(n-2)/2 + r - 1, binom(n+d-1,d) - 1}, and
/// min(2r-3, d) for n = 2.
int expected_dim(int r, int n, int d);

struct TangentResult {
    int dim = 0;          // projective dimension (affine rank - 1)
    int affine_rank = 0;
    double gap_ratio = 0.0;
};

/**
 * Numerical tangent dimension at random points: null space of the funtf
 * Jacobian at V, extended by the r weight directions, pushed through the
 * Jacobian of synthesize; the max numerical rank over `samples` points,
 * minus one. Throws Indeterminate when no sample yields a confident rank.
 */
TangentResult tangent_dim(int r, int n, int d, std::uint64_t seed, int samples = 3,
                          const RankPolicy& policy = {});

struct HilbertReport {
    int r = 0, n = 0, d = 0, e = 0;
    long long ambient_dim = 0;  // binom(binom(n+d-1,d)+e-1, e)
    int samples = 0;
    std::vector<double> singular_values;
    int kernel_dim = 0;
    double gap_ratio = 0.0;
    bool indeterminate = false;
};

struct HilbertOptions {
    int nsamples = 0;            // 0 = 2 * ambient_dim, capped at 30000
    long long column_budget = 10000;
    int threads = 1;
};

/**
 * Numerical Hilbert function value dim I_e for the fradeco variety: rows are
 * the degree-e monomials of unit-normalized sample tensors; kernel dimension
 * of the assembled matrix. Columns are equilibrated to unit norm before the
 * SVD (the kernel dimension is invariant under column scaling).
 * Throws BudgetExceeded when the monomial count exceeds the column budget.
 */
HilbertReport hilbert_value(int r, int n, int d, int e, int nsamples, std::uint64_t seed,
                            const HilbertOptions& opts = {});

/// A named polynomial in the t-coordinates that vanishes on one fradeco
/// variety, stored as a monomial list (or a determinantal recipe).
class KnownEquation {
  public:
    std::string name;
    int n = 0, d = 0;
    int degree = 0;
    // sum of coeff * prod_f t_f over the factor exponent lists
    std::vector<std::pair<long long, std::vector<Exponent>>> monomials;
    bool is_catalecticant_det = false;

    double operator()(const SymTensor& T) const;
    /// Exact evaluation for integer coordinates (order follows index_basis).
    long long evaluate_exact(const std::vector<long long>& coords) const;
};

/// Names: cubic_433, quadric_434, quadric_435_shift, cubic_534,
/// catalecticant_det_534. Throws UnknownEquation otherwise.
const KnownEquation& known_equation(const std::string& name);
std::vector<std::string> known_equation_names();

double eval_known_equation(const std::string& name, const SymTensor& T);

/// Kernel vector of the 6x6 middle catalecticant of a ternary quartic,
/// as conic coefficients in the basis (u^2, uv, uw, v^2, vw, w^2), unit
/// norm, largest-magnitude coefficient positive. Throws FullRank (rank 6),
/// RankTooLow (rank <= 4), Indeterminate (gap failure).
Eigen::VectorXd kernel_conic(const SymTensor& T, const RankPolicy& policy = {});

struct WaringSearchResult {
    Decomposition dec;
    double combined_residual = 0.0;  // sqrt(funtf^2 + relative-fit^2)
    int restarts_used = 0;
};

/**
 * Rank-5 frame decomposition of a ternary quartic through the kernel conic:
 * rationally parametrized conic points, random-restart Levenberg-Marquardt
 * over the five parameters with the weights solved linearly at each step.
 * Returns the first solution with combined residual below 1e-8; throws
 * NotFound after the restart budget.
 */
WaringSearchResult waring_frame_search(const SymTensor& T, int restarts, std::uint64_t seed,
                                       const RankPolicy& policy = {});

}  // namespace fradeco
