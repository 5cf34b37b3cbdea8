#include "fpls/variation.hpp"

#include "fpls/errors.hpp"

namespace fpls {

SplitVariation split_variation(const Eigen::MatrixXd& x, int n_subjects, int k_conditions) {
    if (n_subjects < 1 || k_conditions < 1)
        throw ParameterError("need at least one subject and one condition");
    if (x.rows() != static_cast<Eigen::Index>(n_subjects) * k_conditions)
        throw ParameterError("row count " + std::to_string(x.rows()) + " is not subjects (" +
                             std::to_string(n_subjects) + ") x conditions (" +
                             std::to_string(k_conditions) + ")");

    SplitVariation s;
    s.grand_mean = x.colwise().mean();
    s.subject_means.resize(n_subjects, x.cols());
    s.offset.resize(x.rows(), x.cols());
    s.between.resize(x.rows(), x.cols());
    s.within.resize(x.rows(), x.cols());
    for (int i = 0; i < n_subjects; ++i) {
        const auto block = x.middleRows(static_cast<Eigen::Index>(i) * k_conditions, k_conditions);
        s.subject_means.row(i) = block.colwise().mean();
        for (int k = 0; k < k_conditions; ++k) {
            const Eigen::Index r = static_cast<Eigen::Index>(i) * k_conditions + k;
            s.offset.row(r) = s.grand_mean;
            s.between.row(r) = s.subject_means.row(i) - s.grand_mean;
            s.within.row(r) = x.row(r) - s.subject_means.row(i);
        }
    }
    return s;
}

Eigen::MatrixXd center_new_subject(const Eigen::MatrixXd& rows, int expected_rows) {
    if (rows.rows() < 1) throw ParameterError("no rows to center");
    if (expected_rows > 0 && rows.rows() != expected_rows)
        throw ParameterError("subject has " + std::to_string(rows.rows()) + " curves, expected " +
                             std::to_string(expected_rows) + " (one per condition)");
    return rows.rowwise() - rows.colwise().mean();
}

}  // namespace fpls
