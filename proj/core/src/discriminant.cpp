#include "fpls/discriminant.hpp"

#include <cmath>

#include "fpls/errors.hpp"
#include "fpls/variation.hpp"

namespace fpls {

LdaResult fit_lda(const Eigen::MatrixXd& scores, const std::vector<int>& labels, int n_classes) {
    const Eigen::Index n = scores.rows();
    const Eigen::Index q = scores.cols();
    if (n_classes < 2) throw ParameterError("need at least 2 classes");
    if (q < 1) throw ParameterError("need at least one score column");
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw ParameterError("label count does not match score rows");

    std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
    for (int y : labels) {
        if (y < 1 || y > n_classes) throw ParameterError("label out of range 1..K");
        ++counts[static_cast<std::size_t>(y - 1)];
    }
    for (int k = 0; k < n_classes; ++k)
        if (counts[static_cast<std::size_t>(k)] < 2)
            throw ParameterError("class " + std::to_string(k + 1) + " has fewer than 2 rows");

    const Eigen::RowVectorXd grand = scores.colwise().mean();
    Eigen::MatrixXd class_means(n_classes, q);
    Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(q, q);
    Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(q, q);
    for (int k = 0; k < n_classes; ++k) {
        Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(q);
        for (Eigen::Index i = 0; i < n; ++i)
            if (labels[static_cast<std::size_t>(i)] == k + 1) mean += scores.row(i);
        mean /= counts[static_cast<std::size_t>(k)];
        class_means.row(k) = mean;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (labels[static_cast<std::size_t>(i)] != k + 1) continue;
            const Eigen::RowVectorXd d = scores.row(i) - mean;
            sw.noalias() += d.transpose() * d;
        }
        const Eigen::RowVectorXd b = mean - grand;
        sb.noalias() += counts[static_cast<std::size_t>(k)] * b.transpose() * b;
    }

    // ridge only when ill-conditioned; CV folds can degenerate
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sw);
        const double emax = es.eigenvalues().maxCoeff();
        const double emin = es.eigenvalues().minCoeff();
        if (!(emin > 0.0) || emax / emin > 1e12)
            sw += (1e-10 * sw.trace() / static_cast<double>(q)) *
                  Eigen::MatrixXd::Identity(q, q);
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(sb, sw);
    if (ges.info() != Eigen::Success)
        throw NumericalError("within-class scatter is singular after regularization");

    const int d = static_cast<int>(std::min<Eigen::Index>(q, n_classes - 1));
    LdaResult r;
    r.directions.resize(q, d);
    r.eigenvalues.resize(d);
    // eigenvalues come out ascending; take the top d in descending order
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd v = ges.eigenvectors().col(q - 1 - j);
        const double swn = std::sqrt(v.dot(sw * v));
        if (swn > 0.0) v /= swn;
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        r.directions.col(j) = v;
        r.eigenvalues(j) = ges.eigenvalues()(q - 1 - j);
    }
    r.centroids = class_means * r.directions;
    r.intercepts = -(r.directions.transpose() * grand.transpose());
    return r;
}

std::pair<Eigen::MatrixXi, double> confusion_and_ccr(const std::vector<int>& predicted,
                                                     const std::vector<int>& actual,
                                                     int n_classes) {
    if (predicted.empty() || predicted.size() != actual.size())
        throw ParameterError("predicted/actual must be nonempty and equal length");
    Eigen::MatrixXi confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const int a = actual[i], p = predicted[i];
        if (a < 1 || a > n_classes || p < 1 || p > n_classes)
            throw ParameterError("label out of range 1..K");
        ++confusion(a - 1, p - 1);
    }
    const double ccr = static_cast<double>(confusion.trace()) /
                       static_cast<double>(predicted.size());
    return {confusion, ccr};
}

Eigen::MatrixXd recover_beta(const Eigen::MatrixXd& beta_pls, const PlsModel& pls, int q,
                             const FeatureTransform& transform) {
    if (beta_pls.rows() != q) throw ParameterError("beta_pls row count must equal q");
    const Eigen::MatrixXd in_feature = pls.projection_matrix(q) * beta_pls;  // p x d
    if (transform.variant == Variant::multivariate) return in_feature;
    // beta = L'^-1 * (R beta_pls), triangular solve against L'
    return transform.factor.transpose()
        .triangularView<Eigen::Upper>()
        .solve(in_feature);
}

DiscriminantModel DiscriminantModel::fit(const Eigen::MatrixXd& within,
                                         const Eigen::MatrixXd& dummy,
                                         const std::vector<int>& labels,
                                         std::vector<std::string> class_labels,
                                         const FeatureTransform& transform, int q,
                                         bool standardize) {
    DiscriminantModel m;
    m.transform_ = transform;
    m.standardize_ = standardize;
    m.class_labels_ = std::move(class_labels);
    const Eigen::MatrixXd features = transform.apply(within);
    m.pls_ = PlsModel::fit(features, dummy, q, standardize);
    m.q_ = m.pls_.attained_components();

    const Eigen::MatrixXd scores = m.pls_.scores().leftCols(m.q_);
    const LdaResult lda = fit_lda(scores, labels, static_cast<int>(m.class_labels_.size()));
    m.beta_pls_ = lda.directions;
    m.alpha_ = lda.intercepts;
    m.centroids_ = lda.centroids;
    m.beta_basis_ = recover_beta(m.beta_pls_, m.pls_, m.q_, m.transform_);
    return m;
}

Eigen::MatrixXd DiscriminantModel::discriminant_coordinates(const Eigen::MatrixXd& rows) const {
    const Eigen::MatrixXd features = transform_.apply(rows);
    return pls_.project(features, q_) * beta_pls_;
}

std::vector<int> DiscriminantModel::classify_centered(const Eigen::MatrixXd& rows) const {
    const Eigen::MatrixXd z = discriminant_coordinates(rows);
    std::vector<int> out(static_cast<std::size_t>(rows.rows()));
    const int k_count = static_cast<int>(centroids_.rows());
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        int best = 1;
        double best_d = (z.row(i) - centroids_.row(0)).squaredNorm();
        for (int k = 1; k < k_count; ++k) {
            const double d = (z.row(i) - centroids_.row(k)).squaredNorm();
            if (d < best_d) {  // ties keep the lowest class index
                best_d = d;
                best = k + 1;
            }
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

std::vector<int> DiscriminantModel::classify_subject(const Eigen::MatrixXd& k_rows) const {
    return classify_centered(
        center_new_subject(k_rows, static_cast<int>(class_labels_.size())));
}

Eigen::MatrixXd discriminant_function_values(const DiscriminantModel& model,
                                             const BasisSystem& basis, int resolution) {
    if (model.variant() == Variant::multivariate)
        throw ParameterError("multivariate models have no functional discriminants to sample");
    if (resolution < 2) throw ParameterError("resolution must be >= 2");
    if (model.beta_basis().rows() != basis.dimension())
        throw ParameterError("basis dimension does not match the model");
    const int d = model.discriminant_count();
    Eigen::MatrixXd out(resolution, d + 1);
    for (int i = 0; i < resolution; ++i) {
        const double t = basis.t_min() +
                         (basis.t_max() - basis.t_min()) * i / (resolution - 1);
        out(i, 0) = t;
        const Eigen::VectorXd phi = basis.evaluate(t);
        for (int j = 0; j < d; ++j) out(i, j + 1) = phi.dot(model.beta_basis().col(j));
    }
    return out;
}

DiscriminantModel DiscriminantModel::from_parts(FeatureTransform transform, PlsModel pls, int q,
                                                Eigen::MatrixXd beta_pls, Eigen::VectorXd alpha,
                                                Eigen::MatrixXd beta_basis,
                                                Eigen::MatrixXd centroids,
                                                std::vector<std::string> class_labels,
                                                bool standardize) {
    DiscriminantModel m;
    m.transform_ = std::move(transform);
    m.standardize_ = standardize;
    m.pls_ = std::move(pls);
    m.q_ = q;
    m.beta_pls_ = std::move(beta_pls);
    m.alpha_ = std::move(alpha);
    m.beta_basis_ = std::move(beta_basis);
    m.centroids_ = std::move(centroids);
    m.class_labels_ = std::move(class_labels);
    return m;
}

}  // namespace fpls
