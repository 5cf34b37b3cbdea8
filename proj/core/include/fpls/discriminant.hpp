#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fpls/dataset.hpp"
#include "fpls/pls.hpp"

namespace fpls {

/// Fisher discriminant directions in score space.
struct LdaResult {
    Eigen::MatrixXd directions;  // q x d, d = min(q, K-1), unit S_W-norm columns
    Eigen::VectorXd intercepts;  // d, -(grand mean score) . direction
    Eigen::MatrixXd centroids;   // K x d, projected class mean scores
    Eigen::VectorXd eigenvalues; // d, generalized eigenvalues (separation strength)
};

/// Solves S_B v = lambda S_W v on the score matrix. Every class needs at
/// least 2 rows; an ill-conditioned S_W (condition number > 1e12) gets a
/// ridge of 1e-10 * trace(S_W)/q before factorization.
LdaResult fit_lda(const Eigen::MatrixXd& scores, const std::vector<int>& labels,
                  int n_classes);

/// K x K confusion matrix (rows = actual, columns = predicted) plus the
/// correct classification rate. Throws ParameterError on empty or mismatched
/// input.
std::pair<Eigen::MatrixXi, double> confusion_and_ccr(const std::vector<int>& predicted,
                                                     const std::vector<int>& actual,
                                                     int n_classes);

/// Complete fitted classifier: feature transform -> PLS scores -> Fisher
/// directions -> nearest centroid. Classification expects within-subject
/// centered coefficient rows (or centers a complete subject itself).
class DiscriminantModel {
public:
    /// Fits on within-subject-centered training rows. `within` is N x p in
    /// coefficient (or raw-value) space; the transform maps it to the PLS
    /// feature space.
    static DiscriminantModel fit(const Eigen::MatrixXd& within, const Eigen::MatrixXd& dummy,
                                 const std::vector<int>& labels,
                                 std::vector<std::string> class_labels,
                                 const FeatureTransform& transform, int q,
                                 bool standardize = false);

    /// Labels (1..K) for rows that are already within-subject centered.
    std::vector<int> classify_centered(const Eigen::MatrixXd& rows) const;

    /// Centers the K rows of one complete unseen subject, then classifies.
    std::vector<int> classify_subject(const Eigen::MatrixXd& k_rows) const;

    /// Discriminant coordinates of centered rows (m x d).
    Eigen::MatrixXd discriminant_coordinates(const Eigen::MatrixXd& rows) const;

    Variant variant() const { return transform_.variant; }
    double lambda() const { return transform_.lambda; }
    int components() const { return q_; }
    bool standardized() const { return standardize_; }
    int discriminant_count() const { return static_cast<int>(beta_pls_.cols()); }
    const FeatureTransform& transform() const { return transform_; }
    const PlsModel& pls() const { return pls_; }
    const Eigen::MatrixXd& beta_pls() const { return beta_pls_; }      // q x d
    const Eigen::VectorXd& intercepts() const { return alpha_; }       // d
    const Eigen::MatrixXd& beta_basis() const { return beta_basis_; }  // p x d
    const Eigen::MatrixXd& centroids() const { return centroids_; }    // K x d
    const std::vector<std::string>& class_labels() const { return class_labels_; }

    static DiscriminantModel from_parts(FeatureTransform transform, PlsModel pls, int q,
                                        Eigen::MatrixXd beta_pls, Eigen::VectorXd alpha,
                                        Eigen::MatrixXd beta_basis, Eigen::MatrixXd centroids,
                                        std::vector<std::string> class_labels,
                                        bool standardize = false);

private:
    FeatureTransform transform_;
    PlsModel pls_;
    int q_ = 0;
    bool standardize_ = false;
    Eigen::MatrixXd beta_pls_;
    Eigen::VectorXd alpha_;
    Eigen::MatrixXd beta_basis_;
    Eigen::MatrixXd centroids_;
    std::vector<std::string> class_labels_;
};

/// Basis coefficients of the discriminant functions:
/// beta_basis = L'^-1 R_q beta_pls with R_q the PLS projection matrix and L
/// the metric factor (identity for the multivariate variant).
Eigen::MatrixXd recover_beta(const Eigen::MatrixXd& beta_pls, const PlsModel& pls, int q,
                             const FeatureTransform& transform);

/// Discriminant functions sampled on an equidistant grid over the basis
/// domain: column 0 holds t, column i holds the values of the i-th function.
/// Throws ParameterError for multivariate models (no functional form) or
/// resolution < 2.
Eigen::MatrixXd discriminant_function_values(const DiscriminantModel& model,
                                             const BasisSystem& basis, int resolution);

}  // namespace fpls
