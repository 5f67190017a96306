#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fradeco/frame.hpp"
#include "fradeco/rng.hpp"

namespace fradeco {

/**
 * The 2x2 system expressing the planar multilinear forms P~ and Q~ as linear
 * functions of a symbolic last column: (P~, Q~) = M (v_{1r}, v_{2r}).
 * M entries are multilinear in the given r-1 points.
 */
struct PQSystem {
    double m11 = 0, m12 = 0, m21 = 0, m22 = 0;

    double ptilde(double v1r, double v2r) const { return m11 * v1r + m12 * v2r; }
    double qtilde(double v1r, double v2r) const { return m21 * v1r + m22 * v2r; }
    double eliminant() const { return m11 * m22 - m12 * m21; }
};

/// Builds the PQ system from the first r-1 planar columns. Throws ZeroColumn
/// if a point is (0,0).
PQSystem multilinear_PQ(const std::vector<Eigen::Vector2d>& columns);

struct SamplerOptions {
    int retry_budget = 100;
};

/// Planar funtf sampler via the eliminant m11 m22 = m12 m21: draws r-2
/// circle points, solves the degree-2 eliminant for the (r-1)-th, recovers
/// the r-th column as (m12, -m11) normalized. Result residual < 1e-10.
Frame sample_planar(int r, std::uint64_t seed, const SamplerOptions& opts = {});
Frame sample_planar(int r, Rng& rng, const SamplerOptions& opts = {});

/// General funtf sampler: W = r-n random unit columns,
/// S = (r/n) Id - W W^T, then the bilinear system D = U^T S^{-1} U is solved
/// column by column (one quadratic per accumulated constraint) and
/// V = (U D^{-1/2}, W). Result residual < 1e-10.
Frame sample_general(int r, int n, std::uint64_t seed, const SamplerOptions& opts = {});
Frame sample_general(int r, int n, Rng& rng, const SamplerOptions& opts = {});

/// Dispatch: planar sampler for n = 2, general sampler otherwise.
Frame sample_frame(int r, int n, std::uint64_t seed, const SamplerOptions& opts = {});
Frame sample_frame(int r, int n, Rng& rng, const SamplerOptions& opts = {});

}  // namespace fradeco
