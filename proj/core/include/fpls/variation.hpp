#pragma once

#include <Eigen/Dense>

namespace fpls {

/// Exact decomposition of a repeated-measures matrix into offset,
/// between-subject and within-subject parts: offset + between + within
/// reconstructs the input, within rows sum to zero inside each subject block,
/// and between rows are constant per block.
struct SplitVariation {
    Eigen::MatrixXd offset;         // N x p, every row = grand mean
    Eigen::MatrixXd between;        // N x p, subject mean - grand mean, replicated
    Eigen::MatrixXd within;         // N x p, row - subject mean
    Eigen::MatrixXd subject_means;  // n x p
    Eigen::RowVectorXd grand_mean;  // 1 x p
};

/// Splits X (rows grouped into n contiguous subject blocks of k rows each).
/// Throws ParameterError if the row count is not n*k.
SplitVariation split_variation(const Eigen::MatrixXd& x, int n_subjects, int k_conditions);

/// Centers the K rows of one unseen subject by their own mean row; output
/// columns sum to zero. Throws ParameterError when expected_rows > 0 and the
/// row count differs (incomplete condition set).
Eigen::MatrixXd center_new_subject(const Eigen::MatrixXd& rows, int expected_rows = 0);

}  // namespace fpls
