#include "fradeco/numerics.hpp"

#include <cstdlib>
#include <limits>
#include <thread>

#include <Eigen/SVD>

namespace fradeco {

RankDecision decide_rank(const Eigen::VectorXd& sv, const RankPolicy& policy) {
    RankDecision out;
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    if (sv.size() == 0) {
        out.gap_ratio = std::numeric_limits<double>::infinity();
        return out;
    }
    const double smax = sv[0];
    if (smax <= 0.0) {
        out.rank = 0;
        out.gap_ratio = std::numeric_limits<double>::infinity();
        return out;
    }
    const double tol = policy.rel_tol * smax;
    int rank = 0;
    while (rank < sv.size() && sv[rank] >= tol) ++rank;
    out.rank = rank;
    if (rank == sv.size()) {
        out.gap_ratio = std::numeric_limits<double>::infinity();
    } else if (sv[rank] <= 0.0) {
        out.gap_ratio = std::numeric_limits<double>::infinity();
    } else {
        out.gap_ratio = (rank == 0 ? smax : sv[rank - 1]) / sv[rank];
        out.indeterminate = out.gap_ratio < policy.min_gap;
    }
    return out;
}

RankDecision decide_rank(const Eigen::MatrixXd& A, const RankPolicy& policy) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    return decide_rank(svd.singularValues(), policy);
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& A, const RankPolicy& policy) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const RankDecision dec = decide_rank(svd.singularValues(), policy);
    const int k = static_cast<int>(A.cols()) - dec.rank;
    return svd.matrixV().rightCols(k);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int nthreads = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

int default_thread_count() {
    if (const char* env = std::getenv("FRADECO_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace fradeco
