#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fradeco/sym_tensor.hpp"

namespace fradeco {

/// A fixed point of the normalized gradient map x -> grad T(x)/|grad T(x)|.
struct EigenPoint {
    Eigen::VectorXd x;            // unit vector, first nonzero coordinate >= 0
    double eigenvalue_proxy = 0;  // evaluate(T, x)
    bool attracting = false;
    int basin_count = 0;
    double spectral_radius = 0;   // of the projected Jacobian at x
};

enum class IterStatus { Converged, ZeroGradient, NonConvergence };

struct IterResult {
    IterStatus status = IterStatus::NonConvergence;
    Eigen::VectorXd x;
    int iterations = 0;
};

struct PowerOptions {
    int maxit = 10000;
    double tol = 1e-12;
};

/// Iterates x <- grad T(x)/|grad T(x)| on the projective representative with
/// first nonzero coordinate positive; converged when
/// min(|x+ - x|, |x+ + x|) < tol.
IterResult power_iterate(const SymTensor& T, Eigen::VectorXd x0, const PowerOptions& opts = {});

/// Runs `trials` random starts, clusters limits at `cluster_tol` angular
/// distance up to sign, and classifies each cluster as attracting via the
/// spectral radius of the finite-difference Jacobian of the normalized map
/// restricted to the sphere tangent space. Sorted by descending basin count.
std::vector<EigenPoint> robust_eigenvectors(const SymTensor& T, int trials, std::uint64_t seed,
                                            double cluster_tol = 1e-6,
                                            const PowerOptions& opts = {});

/// A real projective root with multiplicity.
struct ProjectiveRootR {
    Eigen::Vector2d point;  // unit, first nonzero coordinate positive
    int multiplicity = 1;
};

/// The binary eigenvector form y dT/dx - x dT/dy (degree d, d+1 coefficients
/// of x^k y^(d-k)) and its real projective roots.
struct EigenDiscriminant {
    Eigen::VectorXd coeffs;
    std::vector<ProjectiveRootR> real_roots;
};

EigenDiscriminant eigen_discriminant_binary(const SymTensor& T);

}  // namespace fradeco
