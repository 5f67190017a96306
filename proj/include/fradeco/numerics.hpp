#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace fradeco {

/// Shared numerical-rank policy: singular values below rel_tol * sigma_max
/// count as zero, and a gap ratio >= min_gap between the last kept and the
/// first dropped singular value is required for a confident verdict.
struct RankPolicy {
    double rel_tol = 1e-8;
    double min_gap = 1e3;
};

struct RankDecision {
    int rank = 0;
    /// sigma[rank-1] / sigma[rank]; +inf when nothing was dropped or the
    /// first dropped value is exactly zero.
    double gap_ratio = 0.0;
    bool indeterminate = false;
    std::vector<double> singular_values;
};

/// Rank decision from a descending singular-value list.
RankDecision decide_rank(const Eigen::VectorXd& singular_values, const RankPolicy& policy = {});

/// SVD-based rank decision for a dense matrix.
RankDecision decide_rank(const Eigen::MatrixXd& A, const RankPolicy& policy = {});

/// Orthonormal basis of the right null space of A (n x k, k = cols - rank).
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& A, const RankPolicy& policy = {});

/// Deterministic parallel map: fn(i) for i in [0, count). Results must be
/// written to per-index slots by the callable; the schedule never affects
/// values. threads <= 1 runs inline.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

/// Thread-count default: FRADECO_THREADS env var, else 1.
int default_thread_count();

}  // namespace fradeco
