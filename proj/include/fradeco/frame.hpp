#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "fradeco/sym_tensor.hpp"

namespace fradeco {

/**
 * An n x r configuration of frame vectors (columns, unit-norm convention)
 * together with the largest violation of the funtf equations
 * V V^T = (r/n) Id and ||v_j|| = 1.
 */
struct Frame {
    Eigen::MatrixXd V;
    double residual = 0.0;

    int n() const { return static_cast<int>(V.rows()); }
    int r() const { return static_cast<int>(V.cols()); }
};

/// Max over the n^2 + r equation residuals |(V V^T - (r/n) Id)_{kl}| and
/// | ||v_j||^2 - 1 |.
double funtf_residual(const Eigen::MatrixXd& V);

/// Wraps a matrix with its computed residual.
Frame make_frame(Eigen::MatrixXd V);

/// All n x n minors of V in lexicographic order of the column subsets.
struct PlueckerVector {
    int r = 0, n = 0;
    Eigen::VectorXd p;                      // length binom(r, n)
    std::vector<std::vector<int>> subsets;  // matching column index sets
};

PlueckerVector pluecker(const Eigen::MatrixXd& V);

/// n x (n+1) frame of unit vectors toward the vertices of a regular simplex
/// centered at the origin; pairwise inner products are -1/n.
Frame simplex_frame(int n);

/// V = rho(q) * B * diag(nu) / (3 sqrt 3), with rho the unit-quaternion
/// rotation (q = (w,x,y,z), scalar first) and B the integer frame with
/// columns (3,3,3), (1,1,-5), (1,-5,1), (-5,1,1).
Frame so3_orbit_frame(const Eigen::Vector4d& q, const std::array<int, 4>& nu);

// "frame v1" text format.
void write_frame(std::ostream& os, const Frame& F);
Frame read_frame(std::istream& is);
Frame read_frame_file(const std::string& path);
void write_frame_file(const std::string& path, const Frame& F);

/// A frame plus weights realizing T = sum_j lambda_j v_j^{(x) d}.
struct Decomposition {
    Frame frame;
    Eigen::VectorXd weights;
    double fit_residual = 0.0;  // max-norm on coords
};

struct VerifyReport {
    double coord_residual = 0.0;  // max-norm of synthesize(dec) - T
    double frame_residual = 0.0;
    bool pass = false;
};

VerifyReport verify_decomposition(const SymTensor& T, const Decomposition& dec, double tol);

}  // namespace fradeco
