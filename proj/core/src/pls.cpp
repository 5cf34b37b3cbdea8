#include "fpls/pls.hpp"

#include <cmath>

#include "fpls/errors.hpp"

namespace fpls {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::multivariate: return "mpls";
        case Variant::functional: return "fpls";
        case Variant::penalized: return "penfpls";
    }
    throw ParameterError("unknown variant");
}

Variant variant_from_name(const std::string& name) {
    if (name == "mpls") return Variant::multivariate;
    if (name == "fpls") return Variant::functional;
    if (name == "penfpls") return Variant::penalized;
    throw ParameterError("unknown variant '" + name + "' (expected mpls, fpls or penfpls)");
}

Eigen::MatrixXd FeatureTransform::apply(const Eigen::MatrixXd& rows) const {
    if (variant == Variant::multivariate) return rows;
    if (rows.cols() != map.rows())
        throw ParameterError("feature row length " + std::to_string(rows.cols()) +
                             " does not match transform dimension " + std::to_string(map.rows()));
    return rows * map;
}

FeatureTransform make_transform(const BasisSystem& basis, Variant variant, double lambda) {
    FeatureTransform t;
    t.variant = variant;
    if (variant == Variant::multivariate) {
        t.lambda = 0.0;
        return t;
    }
    if (variant == Variant::functional && lambda != 0.0)
        throw ParameterError("the non-penalized variant requires lambda = 0");
    if (lambda < 0.0) throw ParameterError("lambda must be nonnegative");
    t.lambda = lambda;
    t.factor = basis.factor_metric(lambda);
    if (lambda == 0.0) {
        // gram * L'^-1 == L when L L' = gram, so the cheap form is exact
        t.map = t.factor;
    } else {
        // map = gram * L'^-1, computed as (L^-1 gram)' by a triangular solve
        t.map = t.factor.triangularView<Eigen::Lower>().solve(basis.gram()).transpose();
    }
    return t;
}

FeatureTransform identity_transform(int dimension) {
    FeatureTransform t;
    t.variant = Variant::multivariate;
    t.lambda = 0.0;
    t.factor = Eigen::MatrixXd::Identity(dimension, dimension);
    t.map = Eigen::MatrixXd::Identity(dimension, dimension);
    return t;
}

PlsModel PlsModel::fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, int q_max,
                       bool standardize) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (y.rows() != n) throw ParameterError("X and Y row counts differ");
    if (n < 2) throw ParameterError("need at least 2 rows");
    const int q_limit = static_cast<int>(std::min<Eigen::Index>(p, n - 1));
    if (q_max < 1 || q_max > q_limit)
        throw ParameterError("q_max must be in [1, min(p, N-1)] = [1, " +
                             std::to_string(q_limit) + "]");

    PlsModel m;
    m.x_means_ = x.colwise().mean();
    m.y_means_ = y.colwise().mean();
    Eigen::MatrixXd xd = x.rowwise() - m.x_means_;
    Eigen::MatrixXd yd = y.rowwise() - m.y_means_;

    Eigen::RowVectorXd scale = Eigen::RowVectorXd::Ones(p);
    if (standardize) {
        scale = (xd.array().square().colwise().sum() / static_cast<double>(n - 1))
                    .sqrt()
                    .matrix();
        for (Eigen::Index j = 0; j < p; ++j)
            if (scale(j) < 1e-12) scale(j) = 1.0;  // constant columns stay as-is
        xd.array().rowwise() /= scale.array();
    }

    m.weights_.resize(p, q_max);
    m.scores_.resize(n, q_max);
    m.x_loadings_.resize(p, q_max);
    m.y_loadings_.resize(y.cols(), q_max);

    int attained = 0;
    for (int h = 0; h < q_max; ++h) {
        const Eigen::MatrixXd cross = xd.transpose() * yd;  // p x (K-1)
        if (cross.norm() < 1e-12) {
            if (h == 0) throw NumericalError("zero cross-covariance between X and Y");
            break;
        }
        // dominant left singular vector; K-1 is small so a dense SVD is cheap
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeThinU);
        Eigen::VectorXd w = svd.matrixU().col(0);
        // sign convention: the entry of largest magnitude is positive
        Eigen::Index imax = 0;
        w.cwiseAbs().maxCoeff(&imax);
        if (w(imax) < 0.0) w = -w;

        const Eigen::VectorXd t = xd * w;
        const double tt = t.squaredNorm();
        if (tt < 1e-300) {
            if (h == 0) throw NumericalError("degenerate first component (zero score norm)");
            break;
        }
        const Eigen::VectorXd p_load = xd.transpose() * t / tt;
        const Eigen::VectorXd c_load = yd.transpose() * t / tt;
        xd.noalias() -= t * p_load.transpose();
        yd.noalias() -= t * c_load.transpose();

        m.weights_.col(h) = w;
        m.scores_.col(h) = t;
        m.x_loadings_.col(h) = p_load;
        m.y_loadings_.col(h) = c_load;
        ++attained;
    }
    m.weights_.conservativeResize(Eigen::NoChange, attained);
    m.scores_.conservativeResize(Eigen::NoChange, attained);
    m.x_loadings_.conservativeResize(Eigen::NoChange, attained);
    m.y_loadings_.conservativeResize(Eigen::NoChange, attained);
    if (standardize) {
        // fold the scaling back so projection consumes unscaled rows:
        // t = (x/s) w_s = x (w_s/s); x-loadings move the other way
        m.weights_.array().colwise() /= scale.transpose().array();
        m.x_loadings_.array().colwise() *= scale.transpose().array();
    }
    return m;
}

Eigen::MatrixXd PlsModel::projection_matrix(int q) const {
    if (q < 1 || q > attained_components())
        throw ParameterError("component count q must be in [1, " +
                             std::to_string(attained_components()) + "]");
    const auto wq = weights_.leftCols(q);
    const auto pq = x_loadings_.leftCols(q);
    // P'W is lower triangular with unit diagonal, so the solve is exact
    const Eigen::MatrixXd pw = pq.transpose() * wq;
    return pw.transpose()
        .partialPivLu()
        .solve(wq.transpose())
        .transpose();
}

Eigen::MatrixXd PlsModel::project(const Eigen::MatrixXd& rows, int q) const {
    if (rows.cols() != weights_.rows())
        throw ParameterError("row length " + std::to_string(rows.cols()) +
                             " does not match feature dimension " +
                             std::to_string(weights_.rows()));
    return (rows.rowwise() - x_means_) * projection_matrix(q);
}

PlsModel PlsModel::from_parts(Eigen::MatrixXd weights, Eigen::MatrixXd scores,
                              Eigen::MatrixXd x_loadings, Eigen::MatrixXd y_loadings,
                              Eigen::RowVectorXd x_means, Eigen::RowVectorXd y_means) {
    PlsModel m;
    m.weights_ = std::move(weights);
    m.scores_ = std::move(scores);
    m.x_loadings_ = std::move(x_loadings);
    m.y_loadings_ = std::move(y_loadings);
    m.x_means_ = std::move(x_means);
    m.y_means_ = std::move(y_means);
    return m;
}

}  // namespace fpls
