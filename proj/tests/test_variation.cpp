#include <doctest.h>

#include "fpls/errors.hpp"
#include "fpls/rng.hpp"
#include "fpls/variation.hpp"
#include "helpers.hpp"

using fpls::split_variation;

TEST_CASE("split matches hand-computed means") {
    Eigen::MatrixXd x(4, 1);
    x << 1, 3, 5, 7;
    const auto s = split_variation(x, 2, 2);
    CHECK(s.grand_mean(0) == 4.0);
    CHECK(s.subject_means(0, 0) == 2.0);
    CHECK(s.subject_means(1, 0) == 6.0);
    Eigen::MatrixXd between(4, 1), within(4, 1);
    between << -2, -2, 2, 2;
    within << -1, 1, -1, 1;
    CHECK((s.between - between).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.within - within).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.offset.array() - 4.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("identical rows put everything into the offset") {
    Eigen::MatrixXd x(6, 3);
    for (int r = 0; r < 6; ++r) x.row(r) << 1.5, -2.0, 0.25;
    const auto s = split_variation(x, 2, 3);
    CHECK(s.between.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.within.cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.offset - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("split reconstructs the input and has the block structure") {
    fpls::Rng rng(5);
    const Eigen::MatrixXd x = test_helpers::random_matrix(rng, 12, 5, -10.0, 10.0);
    const auto s = split_variation(x, 4, 3);
    CHECK((s.offset + s.between + s.within - x).cwiseAbs().maxCoeff() <
          1e-14 * x.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        const auto block = s.within.middleRows(3 * i, 3);
        CHECK(block.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
        const auto bblock = s.between.middleRows(3 * i, 3);
        CHECK((bblock.row(0) - bblock.row(2)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("split is idempotent on the within part and parts are orthogonal") {
    fpls::Rng rng(6);
    const Eigen::MatrixXd x = test_helpers::random_matrix(rng, 15, 4);
    const auto s = split_variation(x, 5, 3);
    const auto s2 = split_variation(s.within, 5, 3);
    CHECK(s2.offset.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s2.between.cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s2.within - s.within).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs((s.between.transpose() * s.within).trace()) < 1e-10);
}

TEST_CASE("split validates the block structure") {
    Eigen::MatrixXd x(5, 2);
    x.setZero();
    CHECK_THROWS_AS(split_variation(x, 2, 3), fpls::ParameterError);
    CHECK_THROWS_AS(split_variation(x, 0, 5), fpls::ParameterError);
}

TEST_CASE("center_new_subject") {
    SUBCASE("identical rows vanish") {
        Eigen::MatrixXd rows(3, 2);
        for (int r = 0; r < 3; ++r) rows.row(r) << 2.0, -1.0;
        CHECK(fpls::center_new_subject(rows, 3).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("simple ramp") {
        Eigen::MatrixXd rows(3, 1);
        rows << 1, 2, 3;
        Eigen::MatrixXd expected(3, 1);
        expected << -1, 0, 1;
        CHECK((fpls::center_new_subject(rows, 3) - expected).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("incomplete subjects rejected") {
        Eigen::MatrixXd rows(2, 1);
        rows << 1, 2;
        CHECK_THROWS_AS(static_cast<void>(fpls::center_new_subject(rows, 3)),
                        fpls::ParameterError);
    }
    SUBCASE("matches the split on a training block") {
        fpls::Rng rng(8);
        const Eigen::MatrixXd x = test_helpers::random_matrix(rng, 9, 4);
        const auto s = split_variation(x, 3, 3);
        const auto centered = fpls::center_new_subject(x.middleRows(3, 3), 3);
        CHECK((centered - s.within.middleRows(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    }
}
