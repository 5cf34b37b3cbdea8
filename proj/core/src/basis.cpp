#include "fpls/basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fpls/errors.hpp"

namespace fpls {

QuadRule gauss_legendre(int n) {
    if (n < 1) throw ParameterError("quadrature order must be >= 1");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n with the classical Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

BasisSystem BasisSystem::build(int degree, int interior_knots, double t_min, double t_max,
                               int penalty_order) {
    if (degree < 1 || degree > 30) throw ParameterError("degree must be in [1, 30]");
    if (interior_knots < 0) throw ParameterError("interior knot count must be >= 0");
    if (!(t_min < t_max)) throw ParameterError("degenerate domain: t_min must be < t_max");
    const int p = interior_knots + degree + 1;
    if (penalty_order < 1 || penalty_order >= p)
        throw ParameterError("penalty order must be in [1, p)");

    BasisSystem b;
    b.degree_ = degree;
    b.interior_knots_ = interior_knots;
    b.penalty_order_ = penalty_order;
    b.t_min_ = t_min;
    b.t_max_ = t_max;
    b.dimension_ = p;

    // clamped knot vector: boundary knots repeated degree+1 times
    b.knots_.reserve(static_cast<std::size_t>(interior_knots + 2 * (degree + 1)));
    for (int i = 0; i <= degree; ++i) b.knots_.push_back(t_min);
    for (int i = 1; i <= interior_knots; ++i)
        b.knots_.push_back(t_min + (t_max - t_min) * i / (interior_knots + 1));
    for (int i = 0; i <= degree; ++i) b.knots_.push_back(t_max);

    // Gram by Gauss-Legendre per span; the integrand is piecewise polynomial
    // of degree 2*degree, so degree+2 nodes are exact with margin.
    b.gram_ = Eigen::MatrixXd::Zero(p, p);
    const QuadRule rule = gauss_legendre(degree + 2);
    std::vector<double> vals(static_cast<std::size_t>(degree + 1));
    for (int span = 0; span <= interior_knots; ++span) {
        const double lo = t_min + (t_max - t_min) * span / (interior_knots + 1);
        const double hi = t_min + (t_max - t_min) * (span + 1) / (interior_knots + 1);
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
            const double t = mid + half * rule.nodes[g];
            const double w = half * rule.weights[g];
            int first = 0;
            b.nonzero_values(t, first, vals);
            for (int r = 0; r <= degree; ++r)
                for (int c = 0; c <= degree; ++c)
                    b.gram_(first + r, first + c) +=
                        w * vals[static_cast<std::size_t>(r)] * vals[static_cast<std::size_t>(c)];
        }
    }

    // difference penalty (D^d)'D^d
    Eigen::MatrixXd diff = Eigen::MatrixXd::Identity(p, p);
    for (int d = 0; d < penalty_order; ++d) {
        Eigen::MatrixXd next(diff.rows() - 1, diff.cols());
        for (Eigen::Index r = 0; r + 1 < diff.rows(); ++r)
            next.row(r) = diff.row(r + 1) - diff.row(r);
        diff = std::move(next);
    }
    b.penalty_ = diff.transpose() * diff;
    return b;
}

void BasisSystem::nonzero_values(double t, int& first, std::span<double> out) const {
    // Cox-de Boor on the clamped knot vector; `span` indexes the knot
    // interval [knots[span], knots[span+1]) with t_max folded into the last one.
    const int p = dimension_;
    int span;
    if (t >= knots_[static_cast<std::size_t>(p)]) {
        span = p - 1;  // last nonempty interval
    } else {
        span = degree_;
        while (t >= knots_[static_cast<std::size_t>(span + 1)]) ++span;
    }
    first = span - degree_;

    std::array<double, 32> left{}, right{};
    out[0] = 1.0;
    for (int j = 1; j <= degree_; ++j) {
        left[static_cast<std::size_t>(j)] = t - knots_[static_cast<std::size_t>(span + 1 - j)];
        right[static_cast<std::size_t>(j)] = knots_[static_cast<std::size_t>(span + j)] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double den = right[static_cast<std::size_t>(r + 1)] +
                               left[static_cast<std::size_t>(j - r)];
            const double tmp = out[static_cast<std::size_t>(r)] / den;
            out[static_cast<std::size_t>(r)] =
                saved + right[static_cast<std::size_t>(r + 1)] * tmp;
            saved = left[static_cast<std::size_t>(j - r)] * tmp;
        }
        out[static_cast<std::size_t>(j)] = saved;
    }
}

Eigen::VectorXd BasisSystem::evaluate(double t) const {
    if (t < t_min_ || t > t_max_)
        throw ParameterError("evaluation point outside basis domain");
    Eigen::VectorXd row = Eigen::VectorXd::Zero(dimension_);
    std::array<double, 32> vals{};
    int first = 0;
    nonzero_values(t, first, std::span<double>(vals.data(), static_cast<std::size_t>(degree_ + 1)));
    for (int j = 0; j <= degree_; ++j) row(first + j) = vals[static_cast<std::size_t>(j)];
    return row;
}

Eigen::MatrixXd BasisSystem::design_matrix(std::span<const double> grid) const {
    Eigen::MatrixXd design =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid.size()), dimension_);
    std::array<double, 32> vals{};
    const std::span<double> v(vals.data(), static_cast<std::size_t>(degree_ + 1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (t < t_min_ || t > t_max_)
            throw ParameterError("evaluation point outside basis domain");
        int first = 0;
        nonzero_values(t, first, v);
        for (int j = 0; j <= degree_; ++j)
            design(static_cast<Eigen::Index>(i), first + j) = vals[static_cast<std::size_t>(j)];
    }
    return design;
}

Eigen::MatrixXd BasisSystem::factor_metric(double lambda) const {
    if (lambda < 0.0) throw ParameterError("lambda must be nonnegative");
    Eigen::MatrixXd m = gram_;
    if (lambda > 0.0) m += lambda * penalty_;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericalError("metric matrix gram + lambda*penalty is not positive definite");
    return llt.matrixL();
}

CoefficientMatrix fit_regression_splines(const BasisSystem& basis, const CurveDataset& data) {
    const int p = basis.dimension();
    CoefficientMatrix m = make_frame(data);
    m.values.resize(data.curve_count(), p);

    for (int r = 0; r < data.curve_count(); ++r) {
        const Curve& c = data.curve_at(r);
        std::vector<double> distinct = c.t;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (static_cast<int>(distinct.size()) < p)
            throw DataError("curve (" + c.subject + ", " + c.condition + ") has " +
                            std::to_string(distinct.size()) + " distinct points, needs >= " +
                            std::to_string(p));
    }

    const auto design_for = [&](const Curve& c) {
        try {
            return basis.design_matrix(c.t);
        } catch (const ParameterError&) {
            throw DataError("curve (" + c.subject + ", " + c.condition +
                            ") has observations outside the basis domain");
        }
    };
    const auto factorize = [&](const Eigen::MatrixXd& design, const Curve& c) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
        qr.setThreshold(1e-10);
        if (qr.rank() < p)
            throw DataError("rank-deficient design for curve (" + c.subject + ", " +
                            c.condition + ")");
        return qr;
    };
    const auto rhs = [](const Curve& c) {
        return Eigen::Map<const Eigen::VectorXd>(c.value.data(),
                                                 static_cast<Eigen::Index>(c.value.size()));
    };

    if (data.grid_shared()) {
        const Curve& c0 = data.curve_at(0);
        const auto qr = factorize(design_for(c0), c0);
        for (int r = 0; r < data.curve_count(); ++r)
            m.values.row(r) = qr.solve(rhs(data.curve_at(r))).transpose();
    } else {
        for (int r = 0; r < data.curve_count(); ++r) {
            const Curve& c = data.curve_at(r);
            m.values.row(r) = factorize(design_for(c), c).solve(rhs(c)).transpose();
        }
    }
    return m;
}

}  // namespace fpls
