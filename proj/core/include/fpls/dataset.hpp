#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace fpls {

/// One observed curve: samples of a function at discrete points.
struct Curve {
    std::string subject;
    std::string condition;
    std::vector<double> t;
    std::vector<double> value;
};

/// Repeated-measures curve collection: every subject contributes exactly one
/// curve per condition. Curves are stored subject-major, conditions in
/// first-appearance order within each subject block.
class CurveDataset {
public:
    /// Validates completeness (one curve per subject x condition) and builds
    /// the canonical subject-major ordering. Throws DataError on duplicates,
    /// missing cells, or empty input.
    static CurveDataset from_curves(std::vector<Curve> curves);

    const std::vector<std::string>& subjects() const { return subjects_; }
    const std::vector<std::string>& conditions() const { return conditions_; }
    int subject_count() const { return static_cast<int>(subjects_.size()); }
    int condition_count() const { return static_cast<int>(conditions_.size()); }
    int curve_count() const { return static_cast<int>(curves_.size()); }

    /// Curve for (subject index, condition index), subject-major layout.
    const Curve& curve(int subject, int condition) const;
    const Curve& curve_at(int row) const { return curves_[static_cast<std::size_t>(row)]; }

    /// True when every curve is sampled on the identical grid.
    bool grid_shared() const { return grid_shared_; }
    /// The shared grid; only valid when grid_shared().
    const std::vector<double>& shared_grid() const;

    /// Subset of whole subjects by index, preserving condition order.
    CurveDataset subset(const std::vector<int>& subject_indices) const;

private:
    std::vector<std::string> subjects_;
    std::vector<std::string> conditions_;
    std::vector<Curve> curves_;  // subject-major, then condition
    bool grid_shared_ = false;
};

/// Reads the long-format curve CSV: header `subject,condition,t,value`.
CurveDataset read_curve_csv(const std::string& path);
CurveDataset read_curve_csv(std::istream& in, const std::string& name);

/// Writes the long-format curve CSV with full double round-trip precision.
void write_curve_csv(const CurveDataset& data, const std::string& path);
void write_curve_csv(const CurveDataset& data, std::ostream& out);

/// Feature matrix with the categorical response attached. Rows are curves in
/// subject-major order; `values` holds basis coefficients (functional
/// variants) or raw grid samples (multivariate variant).
struct CoefficientMatrix {
    Eigen::MatrixXd values;               // N x p
    std::vector<int> labels;              // 1..K per row, K = conditions.size()
    Eigen::MatrixXd dummy;                // N x (K-1), reference coding drops class K
    std::vector<std::string> subjects;    // n
    std::vector<std::string> conditions;  // K, label order

    int row_count() const { return static_cast<int>(values.rows()); }
    int feature_count() const { return static_cast<int>(values.cols()); }
    int subject_count() const { return static_cast<int>(subjects.size()); }
    int condition_count() const { return static_cast<int>(conditions.size()); }
};

/// Reference-coded dummy matrix: row with label k<K has a single 1 in column
/// k-1; label K rows are all zero.
Eigen::MatrixXd make_dummy(const std::vector<int>& labels, int n_conditions);

/// Raw-value feature matrix for the multivariate pipeline. Requires a shared
/// observation grid; throws DataError otherwise.
CoefficientMatrix raw_value_matrix(const CurveDataset& data);

/// Reorders every subject block (and relabels) so the conditions follow
/// `target_order`. Throws DataError when the condition sets differ.
CoefficientMatrix reorder_conditions(const CoefficientMatrix& m,
                                     const std::vector<std::string>& target_order);

/// Builds the subject-major label/dummy frame for `data` with `values` left
/// empty; used by fitting routines that fill in the feature block.
CoefficientMatrix make_frame(const CurveDataset& data);

}  // namespace fpls
