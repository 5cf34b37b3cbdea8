#pragma once

#include <Eigen/Dense>

#include "fpls/rng.hpp"

namespace test_helpers {

inline Eigen::MatrixXd random_matrix(fpls::Rng& rng, int rows, int cols, double lo = -1.0,
                                     double hi = 1.0) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
    return m;
}

inline Eigen::VectorXd random_vector(fpls::Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
    return v;
}

inline Eigen::MatrixXd random_gaussian(fpls::Rng& rng, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
    return m;
}

/// |cos angle| between two vectors.
inline double abs_cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace test_helpers
