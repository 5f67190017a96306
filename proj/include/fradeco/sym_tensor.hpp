#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "fradeco/multi_index.hpp"

namespace fradeco {

/**
 * A real symmetric order-d tensor on n variables, stored by its distinct
 * entries t_a indexed by exponent vectors a with |a| = d, in the ordering of
 * index_basis. The associated polynomial is
 *
 *     T(x) = sum_a multinomial(d; a) * t_a * x^a,
 *
 * so tensor entries and polynomial coefficients interconvert exactly.
 * Immutable after construction.
 */
class SymTensor {
  public:
    SymTensor(int n, int d);  // zero tensor
    SymTensor(int n, int d, Eigen::VectorXd coords);

    int n() const { return n_; }
    int d() const { return d_; }
    const Eigen::VectorXd& coords() const { return coords_; }
    const std::vector<Exponent>& basis() const { return basis_; }

    double coord(const Exponent& a) const;

    /// Largest coordinate magnitude.
    double coord_scale() const { return coords_.size() ? coords_.cwiseAbs().maxCoeff() : 0.0; }

  private:
    int n_, d_;
    Eigen::VectorXd coords_;
    std::vector<Exponent> basis_;
};

/// t_a = sum_j lambda_j * prod_i V(i,j)^a_i. Columns need not be unit.
SymTensor synthesize(const Eigen::MatrixXd& V, const Eigen::VectorXd& lambda, int d);

/// Polynomial evaluation sum_a multinomial(d;a) t_a x^a.
double evaluate(const SymTensor& T, const Eigen::VectorXd& x);

/// Exact partial derivatives of the polynomial of `evaluate`.
Eigen::VectorXd gradient(const SymTensor& T, const Eigen::VectorXd& x);

/// Catalecticant: rows indexed by degree-k exponents b, columns by degree
/// (d-k) exponents c, entry t_{b+c}. Requires 1 <= k <= d-1.
Eigen::MatrixXd catalecticant(const SymTensor& T, int k);

/// Binary (n=2) coordinates t_i = t_{(i, d-i)}, i = 0..d.
Eigen::VectorXd binary_coords(const SymTensor& T);
SymTensor tensor_from_binary(const Eigen::VectorXd& t);

// "symtensor v1" text format.
void write_symtensor(std::ostream& os, const SymTensor& T);
SymTensor read_symtensor(std::istream& is);
SymTensor read_symtensor_file(const std::string& path);
void write_symtensor_file(const std::string& path, const SymTensor& T);

}  // namespace fradeco
