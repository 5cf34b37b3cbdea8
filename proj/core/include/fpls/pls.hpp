#pragma once

#include <Eigen/Dense>
#include <string>

#include "fpls/basis.hpp"

namespace fpls {

/// Pipeline flavor. `multivariate` works on raw grid samples; the functional
/// variants work on basis coefficients mapped through a metric factor.
enum class Variant { multivariate, functional, penalized };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// Right-multiplication that converts coefficient rows into the feature space
/// the PLS operates in. With L L' = gram + lambda*penalty:
///   functional (lambda = 0): map = L        (rows a -> a'L, metric square root)
///   penalized  (lambda > 0): map = gram L'^-1 (rows a -> a' gram L'^-1)
///   multivariate:            map = identity (rows used as-is)
/// The penalized map is computed with triangular solves, never an inverse.
struct FeatureTransform {
    Variant variant = Variant::multivariate;
    double lambda = 0.0;
    Eigen::MatrixXd factor;  // the lower-triangular L (identity for multivariate)
    Eigen::MatrixXd map;     // p x p right-multiplier

    Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

FeatureTransform make_transform(const BasisSystem& basis, Variant variant, double lambda);
FeatureTransform identity_transform(int dimension);

/// Two-block PLS fitted by iterated dominant singular pairs of the
/// cross-covariance with rank-one deflation of both blocks. Columns of X and
/// Y are mean-centered internally; the means are stored for projection.
class PlsModel {
public:
    /// Extracts up to q_max components; stops early when the deflated
    /// cross-covariance vanishes (Frobenius norm < 1e-12). Throws
    /// ParameterError for q_max outside [1, min(p, N-1)] or mismatched row
    /// counts, NumericalError when the first cross-covariance is already zero.
    ///
    /// With standardize = true the X columns are also divided by their sample
    /// standard deviations before extraction (the default of the classic PLS
    /// implementations). The scaling is folded back into the stored weights
    /// and loadings, so projection still consumes unscaled rows; weight
    /// columns then have unit norm in the standardized space rather than the
    /// raw one.
    static PlsModel fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, int q_max,
                        bool standardize = false);

    int attained_components() const { return static_cast<int>(weights_.cols()); }
    const Eigen::MatrixXd& weights() const { return weights_; }       // p x q, unit columns
    const Eigen::MatrixXd& scores() const { return scores_; }         // N x q, orthogonal columns
    const Eigen::MatrixXd& x_loadings() const { return x_loadings_; } // p x q
    const Eigen::MatrixXd& y_loadings() const { return y_loadings_; } // (K-1) x q
    const Eigen::RowVectorXd& x_means() const { return x_means_; }
    const Eigen::RowVectorXd& y_means() const { return y_means_; }

    /// W_q (P_q' W_q)^-1: maps centered rows to scores; reproduces the stored
    /// training scores exactly.
    Eigen::MatrixXd projection_matrix(int q) const;

    /// Scores of new rows for the leading q components.
    Eigen::MatrixXd project(const Eigen::MatrixXd& rows, int q) const;

    /// Direct member access used by serialization.
    static PlsModel from_parts(Eigen::MatrixXd weights, Eigen::MatrixXd scores,
                               Eigen::MatrixXd x_loadings, Eigen::MatrixXd y_loadings,
                               Eigen::RowVectorXd x_means, Eigen::RowVectorXd y_means);

private:
    Eigen::MatrixXd weights_, scores_, x_loadings_, y_loadings_;
    Eigen::RowVectorXd x_means_, y_means_;
};

}  // namespace fpls
