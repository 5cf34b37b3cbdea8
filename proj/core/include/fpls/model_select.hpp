#pragma once

#include <optional>
#include <vector>

#include "fpls/basis.hpp"
#include "fpls/dataset.hpp"
#include "fpls/discriminant.hpp"

namespace fpls {

/// Search grid over the smoothing parameter and component count. The lambda
/// list is consulted only by the penalized variant; the other variants run a
/// single lambda = 0 column.
struct CvGrid {
    std::vector<double> lambdas;
    std::vector<int> q_values;
};

struct CvCell {
    double lambda = 0.0;
    int q = 0;
    double ccr = 0.0;
    long correct = 0;
    long total = 0;
};

struct CvResult {
    std::vector<CvCell> cells;  // lambda-major over the full grid
    double best_lambda = 0.0;
    int best_q = 0;
    double best_ccr = 0.0;
};

/// How folds are formed.
///   subject: leave one subject out; all K of its curves are held out
///            together and the fold is trained without any of them, so the
///            held-out subject cannot influence centering, PLS or LDA.
///   curve:   classic curve-level leave-one-out on rows that were
///            within-subject centered once up front. The held-out curve
///            shapes its siblings' centered rows, which rewards models that
///            reproduce the training geometry; kept because the published
///            protocol for this family of methods selects this way.
///   score:   the components are extracted once per lambda on all rows and
///            only the LDA step is cross-validated curve-by-curve on the
///            score matrix. The classical "cross-validate the classifier on
///            the components" shortcut.
enum class FoldScheme { subject, curve, score };

/// Grid search by cross-validation. Requires >= 3 subjects, a nonempty q
/// grid with max q <= min(p, N_train - 1), and for the penalized variant a
/// nonempty lambda grid. Ties on CCR prefer smaller q, then larger lambda.
/// `basis` may be null for the multivariate variant.
CvResult cross_validate(const CoefficientMatrix& data, const BasisSystem* basis,
                        Variant variant, const CvGrid& grid,
                        FoldScheme scheme = FoldScheme::subject, int threads = 1,
                        bool standardize = false);

/// Final fit at fixed (lambda, q): within-subject split, transform, PLS, LDA.
DiscriminantModel fit_classifier(const CoefficientMatrix& data, const BasisSystem* basis,
                                 Variant variant, double lambda, int q,
                                 bool standardize = false);

struct HoldoutResult {
    double ccr = 0.0;
    Eigen::MatrixXi confusion;
    std::vector<int> predicted;
    DiscriminantModel model;
};

/// Fits on the full training frame and classifies every test subject after
/// centering its rows by their own mean. Train and test must agree on the
/// condition labels (same set, same order).
HoldoutResult holdout_evaluate(const CoefficientMatrix& train, const CoefficientMatrix& test,
                               const BasisSystem* basis, Variant variant, double lambda, int q,
                               bool standardize = false);

}  // namespace fpls
