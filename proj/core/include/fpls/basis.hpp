#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fpls/dataset.hpp"

namespace fpls {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending; exact for polynomials of
/// degree 2n-1.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadRule gauss_legendre(int n);

/// Cubic-by-default B-spline basis on equidistant knots with clamped
/// boundaries, together with the two matrices the pipelines need: the Gram
/// matrix of basis inner products and the difference penalty.
class BasisSystem {
public:
    /// Builds the basis on [t_min, t_max] with `interior_knots` equidistant
    /// interior knots. Boundary knots have multiplicity degree+1, so the basis
    /// dimension is p = interior_knots + degree + 1. The Gram matrix is
    /// integrated exactly with a per-span Gauss-Legendre rule; the penalty is
    /// (D^d)'D^d on coefficients.
    static BasisSystem build(int degree, int interior_knots, double t_min, double t_max,
                             int penalty_order = 2);

    int degree() const { return degree_; }
    int interior_knots() const { return interior_knots_; }
    int penalty_order() const { return penalty_order_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    int dimension() const { return dimension_; }
    const std::vector<double>& knots() const { return knots_; }

    const Eigen::MatrixXd& gram() const { return gram_; }
    const Eigen::MatrixXd& penalty() const { return penalty_; }

    /// Values of all p basis functions at t. Throws ParameterError when t is
    /// outside [t_min, t_max].
    Eigen::VectorXd evaluate(double t) const;

    /// |grid| x p matrix with entry (i, j) = phi_j(t_i). Each row has at most
    /// degree+1 nonzeros and sums to one.
    Eigen::MatrixXd design_matrix(std::span<const double> grid) const;

    /// Lower-triangular L with L L' = gram + lambda * penalty.
    /// Throws NumericalError if the factorization fails.
    Eigen::MatrixXd factor_metric(double lambda) const;

private:
    int degree_ = 0;
    int interior_knots_ = 0;
    int penalty_order_ = 0;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
    int dimension_ = 0;
    std::vector<double> knots_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd penalty_;

    // Nonzero basis values at t: fills out[0..degree] for functions
    // first..first+degree.
    void nonzero_values(double t, int& first, std::span<double> out) const;
};

/// Least-squares basis coefficients for every curve of the dataset
/// (regression splines). Rows follow the dataset's subject-major order. Each
/// curve needs at least p distinct observation points inside the domain and a
/// full-rank design; violations raise DataError naming the curve.
CoefficientMatrix fit_regression_splines(const BasisSystem& basis, const CurveDataset& data);

}  // namespace fpls
