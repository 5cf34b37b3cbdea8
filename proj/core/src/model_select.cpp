#include "fpls/model_select.hpp"

#include <algorithm>

#include "fpls/errors.hpp"
#include "fpls/parallel.hpp"
#include "fpls/variation.hpp"

namespace fpls {

namespace {

std::vector<double> effective_lambdas(Variant variant, const CvGrid& grid) {
    if (variant != Variant::penalized) return {0.0};
    if (grid.lambdas.empty()) throw ParameterError("penalized variant needs a lambda grid");
    for (double l : grid.lambdas)
        if (l < 0.0) throw ParameterError("lambda grid entries must be nonnegative");
    return grid.lambdas;
}

FeatureTransform transform_for(const BasisSystem* basis, Variant variant, double lambda,
                               int feature_dim) {
    if (variant == Variant::multivariate) return identity_transform(feature_dim);
    if (basis == nullptr) throw ParameterError("functional variants need a basis");
    return make_transform(*basis, variant, lambda);
}

/// Per-fold prediction kernel shared by both fold schemes: PLS is fitted
/// once per lambda at the largest q, then each q reuses its leading columns.
void predict_fold(const Eigen::MatrixXd& train_within, const Eigen::MatrixXd& train_dummy,
                  const std::vector<int>& train_labels, int n_classes,
                  const std::vector<FeatureTransform>& transforms,
                  const std::vector<int>& q_values, const Eigen::MatrixXd& held_centered,
                  const std::vector<int>& held_labels, bool standardize,
                  std::vector<long>& correct_cells) {
    const int n_l = static_cast<int>(transforms.size());
    const int n_q = static_cast<int>(q_values.size());
    const int q_max = *std::max_element(q_values.begin(), q_values.end());
    for (int li = 0; li < n_l; ++li) {
        const Eigen::MatrixXd features = transforms[static_cast<std::size_t>(li)].apply(train_within);
        const int q_cap = static_cast<int>(
            std::min<Eigen::Index>(features.cols(), features.rows() - 1));
        const PlsModel pls =
            PlsModel::fit(features, train_dummy, std::min(q_max, q_cap), standardize);
        const Eigen::MatrixXd held_features =
            transforms[static_cast<std::size_t>(li)].apply(held_centered);
        for (int qi = 0; qi < n_q; ++qi) {
            const int qe = std::min(q_values[static_cast<std::size_t>(qi)],
                                    pls.attained_components());
            const LdaResult lda = fit_lda(pls.scores().leftCols(qe), train_labels, n_classes);
            const Eigen::MatrixXd z = pls.project(held_features, qe) * lda.directions;
            long correct = 0;
            for (Eigen::Index r = 0; r < z.rows(); ++r) {
                int best = 1;
                double best_d = (z.row(r) - lda.centroids.row(0)).squaredNorm();
                for (int k = 1; k < n_classes; ++k) {
                    const double d = (z.row(r) - lda.centroids.row(k)).squaredNorm();
                    if (d < best_d) {
                        best_d = d;
                        best = k + 1;
                    }
                }
                if (best == held_labels[static_cast<std::size_t>(r)]) ++correct;
            }
            correct_cells[static_cast<std::size_t>(li * n_q + qi)] += correct;
        }
    }
}

}  // namespace

CvResult cross_validate(const CoefficientMatrix& data, const BasisSystem* basis,
                        Variant variant, const CvGrid& grid, FoldScheme scheme, int threads,
                        bool standardize) {
    const int n = data.subject_count();
    const int k = data.condition_count();
    const int p = data.feature_count();
    const Eigen::Index big_n = data.values.rows();
    if (n < 3) throw ParameterError("cross-validation needs at least 3 subjects");
    if (big_n != static_cast<Eigen::Index>(n) * k)
        throw ParameterError("feature rows must be subjects x conditions");
    if (grid.q_values.empty()) throw ParameterError("empty q grid");
    const int train_rows = scheme == FoldScheme::subject ? (n - 1) * k : static_cast<int>(big_n) - 1;
    const int q_limit = std::min(p, train_rows - 1);
    for (int q : grid.q_values)
        if (q < 1 || q > q_limit)
            throw ParameterError("q grid entries must be in [1, min(p, N_train-1)] = [1, " +
                                 std::to_string(q_limit) + "]");

    const std::vector<double> lambdas = effective_lambdas(variant, grid);
    std::vector<FeatureTransform> transforms;
    transforms.reserve(lambdas.size());
    for (double l : lambdas) transforms.push_back(transform_for(basis, variant, l, p));

    const int n_l = static_cast<int>(lambdas.size());
    const int n_q = static_cast<int>(grid.q_values.size());
    const int n_folds = scheme == FoldScheme::subject ? n : static_cast<int>(big_n);
    std::vector<std::vector<long>> fold_correct(
        static_cast<std::size_t>(n_folds),
        std::vector<long>(static_cast<std::size_t>(n_l) * n_q, 0));

    if (scheme == FoldScheme::score) {
        // components fixed on all rows; only the LDA is cross-validated
        const SplitVariation sv = split_variation(data.values, n, k);
        const int q_max = *std::max_element(grid.q_values.begin(), grid.q_values.end());
        std::vector<Eigen::MatrixXd> score_mats;
        score_mats.reserve(lambdas.size());
        for (const auto& tr : transforms) {
            const Eigen::MatrixXd features = tr.apply(sv.within);
            const int q_cap =
                static_cast<int>(std::min<Eigen::Index>(features.cols(), features.rows() - 1));
            const PlsModel pls =
                PlsModel::fit(features, data.dummy, std::min(q_max, q_cap), standardize);
            score_mats.push_back(pls.scores());
        }
        parallel_for(n_folds, threads, [&](int fold) {
            auto& correct_cells = fold_correct[static_cast<std::size_t>(fold)];
            std::vector<int> labels;
            labels.reserve(static_cast<std::size_t>(big_n - 1));
            for (Eigen::Index src = 0; src < big_n; ++src)
                if (src != fold) labels.push_back(data.labels[static_cast<std::size_t>(src)]);
            for (int li = 0; li < n_l; ++li) {
                const Eigen::MatrixXd& all_scores = score_mats[static_cast<std::size_t>(li)];
                Eigen::MatrixXd train(big_n - 1, all_scores.cols());
                Eigen::Index r = 0;
                for (Eigen::Index src = 0; src < big_n; ++src) {
                    if (src == fold) continue;
                    train.row(r++) = all_scores.row(src);
                }
                for (int qi = 0; qi < n_q; ++qi) {
                    const int qe = std::min(grid.q_values[static_cast<std::size_t>(qi)],
                                            static_cast<int>(all_scores.cols()));
                    const LdaResult lda = fit_lda(train.leftCols(qe), labels, k);
                    const Eigen::RowVectorXd z =
                        all_scores.row(fold).head(qe) * lda.directions;
                    int best = 1;
                    double best_d = (z - lda.centroids.row(0)).squaredNorm();
                    for (int kk = 1; kk < k; ++kk) {
                        const double d = (z - lda.centroids.row(kk)).squaredNorm();
                        if (d < best_d) {
                            best_d = d;
                            best = kk + 1;
                        }
                    }
                    if (best == data.labels[static_cast<std::size_t>(fold)])
                        correct_cells[static_cast<std::size_t>(li * n_q + qi)] += 1;
                }
            }
        });
    } else if (scheme == FoldScheme::subject) {
        parallel_for(n_folds, threads, [&](int fold) {
            Eigen::MatrixXd train(big_n - k, p);
            Eigen::MatrixXd dummy(big_n - k, data.dummy.cols());
            std::vector<int> labels;
            labels.reserve(static_cast<std::size_t>(big_n - k));
            Eigen::Index r = 0;
            for (int s = 0; s < n; ++s) {
                if (s == fold) continue;
                for (int c = 0; c < k; ++c) {
                    const Eigen::Index src = static_cast<Eigen::Index>(s) * k + c;
                    train.row(r) = data.values.row(src);
                    dummy.row(r) = data.dummy.row(src);
                    labels.push_back(data.labels[static_cast<std::size_t>(src)]);
                    ++r;
                }
            }
            const SplitVariation sv = split_variation(train, n - 1, k);
            const Eigen::MatrixXd held = center_new_subject(
                data.values.middleRows(static_cast<Eigen::Index>(fold) * k, k), k);
            std::vector<int> held_labels(
                data.labels.begin() + static_cast<std::ptrdiff_t>(fold) * k,
                data.labels.begin() + static_cast<std::ptrdiff_t>(fold + 1) * k);
            predict_fold(sv.within, dummy, labels, k, transforms, grid.q_values, held,
                         held_labels, standardize,
                         fold_correct[static_cast<std::size_t>(fold)]);
        });
    } else {
        // within-subject centering computed once on the full matrix
        const SplitVariation sv = split_variation(data.values, n, k);
        parallel_for(n_folds, threads, [&](int fold) {
            Eigen::MatrixXd train(big_n - 1, p);
            Eigen::MatrixXd dummy(big_n - 1, data.dummy.cols());
            std::vector<int> labels;
            labels.reserve(static_cast<std::size_t>(big_n - 1));
            Eigen::Index r = 0;
            for (Eigen::Index src = 0; src < big_n; ++src) {
                if (src == fold) continue;
                train.row(r) = sv.within.row(src);
                dummy.row(r) = data.dummy.row(src);
                labels.push_back(data.labels[static_cast<std::size_t>(src)]);
                ++r;
            }
            const Eigen::MatrixXd held = sv.within.row(fold);
            const std::vector<int> held_labels{data.labels[static_cast<std::size_t>(fold)]};
            predict_fold(train, dummy, labels, k, transforms, grid.q_values, held, held_labels,
                         standardize, fold_correct[static_cast<std::size_t>(fold)]);
        });
    }

    CvResult result;
    result.cells.reserve(static_cast<std::size_t>(n_l) * n_q);
    const long total = static_cast<long>(big_n);
    long best_correct = -1;
    for (int li = 0; li < n_l; ++li) {
        for (int qi = 0; qi < n_q; ++qi) {
            long correct = 0;
            for (const auto& fc : fold_correct)
                correct += fc[static_cast<std::size_t>(li * n_q + qi)];
            CvCell cell;
            cell.lambda = lambdas[static_cast<std::size_t>(li)];
            cell.q = grid.q_values[static_cast<std::size_t>(qi)];
            cell.correct = correct;
            cell.total = total;
            cell.ccr = static_cast<double>(correct) / static_cast<double>(total);
            result.cells.push_back(cell);
            // ties prefer the smaller q, then the larger lambda
            const bool better =
                correct > best_correct ||
                (correct == best_correct &&
                 (cell.q < result.best_q ||
                  (cell.q == result.best_q && cell.lambda > result.best_lambda)));
            if (better) {
                best_correct = correct;
                result.best_lambda = cell.lambda;
                result.best_q = cell.q;
                result.best_ccr = cell.ccr;
            }
        }
    }
    return result;
}

DiscriminantModel fit_classifier(const CoefficientMatrix& data, const BasisSystem* basis,
                                 Variant variant, double lambda, int q, bool standardize) {
    const int n = data.subject_count();
    const int k = data.condition_count();
    if (data.values.rows() != static_cast<Eigen::Index>(n) * k)
        throw ParameterError("feature rows must be subjects x conditions");
    const FeatureTransform transform =
        transform_for(basis, variant, variant == Variant::penalized ? lambda : 0.0,
                      data.feature_count());
    const SplitVariation sv = split_variation(data.values, n, k);
    return DiscriminantModel::fit(sv.within, data.dummy, data.labels, data.conditions,
                                  transform, q, standardize);
}

HoldoutResult holdout_evaluate(const CoefficientMatrix& train, const CoefficientMatrix& test,
                               const BasisSystem* basis, Variant variant, double lambda, int q,
                               bool standardize) {
    if (train.conditions != test.conditions)
        throw DataError("train and test condition labels differ");
    if (test.values.rows() !=
        static_cast<Eigen::Index>(test.subject_count()) * test.condition_count())
        throw DataError("test subjects are incomplete");

    HoldoutResult r{.ccr = 0.0, .confusion = {}, .predicted = {},
                    .model = fit_classifier(train, basis, variant, lambda, q, standardize)};
    const int k = test.condition_count();
    r.predicted.reserve(static_cast<std::size_t>(test.values.rows()));
    for (int s = 0; s < test.subject_count(); ++s) {
        const auto preds = r.model.classify_subject(
            test.values.middleRows(static_cast<Eigen::Index>(s) * k, k));
        r.predicted.insert(r.predicted.end(), preds.begin(), preds.end());
    }
    auto [confusion, ccr] = confusion_and_ccr(r.predicted, test.labels, k);
    r.confusion = std::move(confusion);
    r.ccr = ccr;
    return r;
}

}  // namespace fpls
