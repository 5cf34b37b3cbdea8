#include <doctest.h>

#include <sstream>

#include "fpls/dataset.hpp"
#include "fpls/errors.hpp"
#include "fpls/rng.hpp"

using fpls::Curve;
using fpls::CurveDataset;

namespace {

Curve make_curve(const std::string& subject, const std::string& condition,
                 std::initializer_list<double> ts, std::initializer_list<double> vs) {
    Curve c;
    c.subject = subject;
    c.condition = condition;
    c.t = ts;
    c.value = vs;
    return c;
}

}  // namespace

TEST_CASE("dataset enforces repeated-measures completeness") {
    std::vector<Curve> ok{make_curve("a", "w", {0, 1}, {1, 2}),
                          make_curve("a", "r", {0, 1}, {3, 4}),
                          make_curve("b", "w", {0, 1}, {5, 6}),
                          make_curve("b", "r", {0, 1}, {7, 8})};
    const CurveDataset ds = CurveDataset::from_curves(ok);
    CHECK(ds.subject_count() == 2);
    CHECK(ds.condition_count() == 2);
    CHECK(ds.grid_shared());

    SUBCASE("missing cell rejected") {
        std::vector<Curve> missing{ok[0], ok[1], ok[2]};
        CHECK_THROWS_AS(CurveDataset::from_curves(missing), fpls::DataError);
    }
    SUBCASE("duplicate cell rejected") {
        std::vector<Curve> dup = ok;
        dup.push_back(ok[0]);
        CHECK_THROWS_AS(CurveDataset::from_curves(dup), fpls::DataError);
    }
    SUBCASE("empty input rejected") {
        CHECK_THROWS_AS(CurveDataset::from_curves({}), fpls::DataError);
    }
}

TEST_CASE("condition order is first appearance, rows subject-major") {
    std::vector<Curve> curves{make_curve("s2", "up", {0}, {1}),
                              make_curve("s2", "down", {0}, {2}),
                              make_curve("s1", "up", {0}, {3}),
                              make_curve("s1", "down", {0}, {4})};
    // a curve with 1 point is fine at dataset level; spline fit would reject it
    const CurveDataset ds = CurveDataset::from_curves(curves);
    CHECK(ds.subjects() == std::vector<std::string>{"s2", "s1"});
    CHECK(ds.conditions() == std::vector<std::string>{"up", "down"});
    CHECK(ds.curve(0, 0).value[0] == 1);
    CHECK(ds.curve(1, 1).value[0] == 4);

    const fpls::CoefficientMatrix frame = fpls::make_frame(ds);
    CHECK(frame.labels == std::vector<int>{1, 2, 1, 2});
    CHECK(frame.dummy.rows() == 4);
    CHECK(frame.dummy.cols() == 1);
    CHECK(frame.dummy(0, 0) == 1.0);  // first condition -> indicator 1
    CHECK(frame.dummy(1, 0) == 0.0);  // reference class K -> all zeros
}

TEST_CASE("reference dummy coding") {
    const Eigen::MatrixXd d = fpls::make_dummy({1, 2, 3, 3, 2}, 3);
    CHECK(d.rows() == 5);
    CHECK(d.cols() == 2);
    for (Eigen::Index r = 0; r < d.rows(); ++r) CHECK(d.row(r).sum() <= 1.0);
    CHECK(d(0, 0) == 1.0);
    CHECK(d(1, 1) == 1.0);
    CHECK(d.row(2).sum() == 0.0);
    CHECK(d.row(3).sum() == 0.0);
    CHECK_THROWS_AS(fpls::make_dummy({4}, 3), fpls::ParameterError);
}

TEST_CASE("curve csv round-trips doubles exactly") {
    fpls::Rng rng(3);
    std::vector<Curve> curves;
    for (const char* s : {"alpha", "beta"}) {
        for (const char* c : {"walk", "carry"}) {
            Curve cv;
            cv.subject = s;
            cv.condition = c;
            for (int j = 0; j < 17; ++j) {
                cv.t.push_back(rng.uniform(0.0, 1.0));
                cv.value.push_back(rng.normal() * 1e3);
            }
            curves.push_back(std::move(cv));
        }
    }
    const CurveDataset ds = CurveDataset::from_curves(curves);
    std::ostringstream out;
    fpls::write_curve_csv(ds, out);
    std::istringstream in(out.str());
    const CurveDataset back = fpls::read_curve_csv(in, "mem");
    REQUIRE(back.curve_count() == ds.curve_count());
    for (int r = 0; r < ds.curve_count(); ++r) {
        CHECK(back.curve_at(r).subject == ds.curve_at(r).subject);
        CHECK(back.curve_at(r).t == ds.curve_at(r).t);        // bitwise
        CHECK(back.curve_at(r).value == ds.curve_at(r).value);  // bitwise
    }
}

TEST_CASE("curve csv validates structure") {
    SUBCASE("bad header") {
        std::istringstream in("subject;condition;t;value\n");
        CHECK_THROWS_AS(fpls::read_curve_csv(in, "mem"), fpls::DataError);
    }
    SUBCASE("bad number reports the line") {
        std::istringstream in("subject,condition,t,value\na,w,0.0,1.0\na,w,zero,1\n");
        CHECK_THROWS_WITH_AS(static_cast<void>(fpls::read_curve_csv(in, "mem")),
                             doctest::Contains("line 3"), fpls::DataError);
    }
    SUBCASE("wrong field count") {
        std::istringstream in("subject,condition,t,value\na,w,0.0\n");
        CHECK_THROWS_AS(fpls::read_curve_csv(in, "mem"), fpls::DataError);
    }
    SUBCASE("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(fpls::read_curve_csv(in, "mem"), fpls::DataError);
    }
}

TEST_CASE("raw value matrix requires a shared grid") {
    std::vector<Curve> curves{make_curve("a", "w", {0, 0.5, 1}, {1, 2, 3}),
                              make_curve("a", "r", {0, 0.6, 1}, {4, 5, 6})};
    const CurveDataset ds = CurveDataset::from_curves(curves);
    CHECK_FALSE(ds.grid_shared());
    CHECK_THROWS_AS(static_cast<void>(fpls::raw_value_matrix(ds)), fpls::DataError);

    std::vector<Curve> shared{make_curve("a", "w", {0, 0.5, 1}, {1, 2, 3}),
                              make_curve("a", "r", {0, 0.5, 1}, {4, 5, 6})};
    const auto m = fpls::raw_value_matrix(CurveDataset::from_curves(shared));
    CHECK(m.values.rows() == 2);
    CHECK(m.values.cols() == 3);
    CHECK(m.values(1, 2) == 6.0);
}

TEST_CASE("subset keeps whole subjects in order") {
    std::vector<Curve> curves;
    for (const char* s : {"s1", "s2", "s3"})
        for (const char* c : {"w", "r"}) curves.push_back(make_curve(s, c, {0.0}, {1.0}));
    const CurveDataset ds = CurveDataset::from_curves(curves);
    const CurveDataset sub = ds.subset({2, 0});
    CHECK(sub.subjects() == std::vector<std::string>{"s3", "s1"});
    CHECK(sub.condition_count() == 2);
    CHECK_THROWS_AS(ds.subset({5}), fpls::ParameterError);
}

TEST_CASE("reorder_conditions permutes blocks and relabels") {
    std::vector<Curve> curves{make_curve("a", "w", {0, 1, 2}, {1, 2, 3}),
                              make_curve("a", "r", {0, 1, 2}, {4, 5, 6}),
                              make_curve("b", "w", {0, 1, 2}, {7, 8, 9}),
                              make_curve("b", "r", {0, 1, 2}, {10, 11, 12})};
    const auto m = fpls::raw_value_matrix(CurveDataset::from_curves(curves));
    const auto r = fpls::reorder_conditions(m, {"r", "w"});
    CHECK(r.conditions == std::vector<std::string>{"r", "w"});
    CHECK(r.values(0, 0) == 4.0);  // subject a condition r first now
    CHECK(r.values(1, 0) == 1.0);
    CHECK(r.labels == std::vector<int>{1, 2, 1, 2});
    CHECK_THROWS_AS(static_cast<void>(fpls::reorder_conditions(m, {"w", "x"})),
                    fpls::DataError);
}
