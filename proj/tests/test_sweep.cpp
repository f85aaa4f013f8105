#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle_helpers.hpp"
#include "prevplot/sweep.hpp"

using namespace prevplot;
using Catch::Matchers::WithinAbs;

TEST_CASE("linear grid covers the range endpoint to endpoint") {
    PrevalenceGrid grid(0.0, 1.0, 101);
    REQUIRE(grid.points().size() == 101);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK_THAT(grid.points()[50], WithinAbs(0.5, 1e-15));
    for (std::size_t i = 1; i < grid.points().size(); ++i) {
        CHECK(grid.points()[i - 1] < grid.points()[i]);
    }

    PrevalenceGrid narrow(0.01, 0.11, 3);
    REQUIRE(narrow.points().size() == 3);
    CHECK(narrow.front() == 0.01);
    CHECK_THAT(narrow.points()[1], WithinAbs(0.06, 1e-15));
    CHECK(narrow.back() == 0.11);
}

TEST_CASE("grid construction rejects bad shapes") {
    CHECK_THROWS_AS(PrevalenceGrid(0.0, 1.0, 1), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid(0.5, 0.5, 10), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid(0.9, 0.1, 10), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid(-0.1, 1.0, 10), InvalidProbability);
}

TEST_CASE("explicit grids take hand-picked points") {
    auto grid = PrevalenceGrid::from_points({0.0001, 0.001, 0.01, 0.1});
    CHECK(grid.points().size() == 4);
    CHECK(grid.front() == 0.0001);
    CHECK(grid.back() == 0.1);

    CHECK_THROWS_AS(PrevalenceGrid::from_points({0.5}), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid::from_points({0.5, 0.5}), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid::from_points({0.5, 0.2}), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid::from_points({-0.1, 0.2}), InvalidGrid);
    CHECK_THROWS_AS(PrevalenceGrid::from_points({0.2, 1.5}), InvalidGrid);
}

TEST_CASE("default grid is 101 points across the unit interval") {
    auto grid = default_grid();
    CHECK(grid.points().size() == kDefaultGridSteps);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
}

TEST_CASE("sweep evaluates every grid point in order") {
    TestCharacteristics chars(0.97, 0.92);
    auto curve = sweep(chars, default_grid(), Probability(0.06));
    REQUIRE(curve.points.size() == kDefaultGridSteps);
    REQUIRE(curve.marker_prevalence);
    CHECK(*curve.marker_prevalence == 0.06);
    CHECK_FALSE(curve.cost_weights);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i - 1].prevalence < curve.points[i].prevalence);
    }
    // Interior of the curve: false alarms fall, missed cases rise.
    for (std::size_t i = 2; i + 1 < curve.points.size(); ++i) {
        REQUIRE(curve.points[i].false_alarm_rate);
        REQUIRE(curve.points[i].missed_case_rate);
        CHECK(*curve.points[i - 1].false_alarm_rate > *curve.points[i].false_alarm_rate);
        CHECK(*curve.points[i - 1].missed_case_rate < *curve.points[i].missed_case_rate);
    }
}

TEST_CASE("sweep is deterministic") {
    TestCharacteristics chars(0.8, 0.7);
    auto a = sweep(chars, default_grid(), Probability(0.2), CostWeights{1.0, 5.0});
    auto b = sweep(chars, default_grid(), Probability(0.2), CostWeights{1.0, 5.0});
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].prevalence == b.points[i].prevalence);
        CHECK(a.points[i].ppv == b.points[i].ppv);
        CHECK(a.points[i].expected_cost == b.points[i].expected_cost);
    }
}

TEST_CASE("sweep rejects a marker outside the grid") {
    TestCharacteristics chars(0.9, 0.9);
    PrevalenceGrid grid(0.1, 0.5, 5);
    CHECK_THROWS_AS(sweep(chars, grid, Probability(0.05)), InvalidGrid);
    CHECK_THROWS_AS(sweep(chars, grid, Probability(0.6)), InvalidGrid);
    CHECK_NOTHROW(sweep(chars, grid, Probability(0.1)));
    CHECK_NOTHROW(sweep(chars, grid, Probability(0.5)));
}

TEST_CASE("expected cost per person") {
    // Symmetric unit costs with sens == spec: cost is flat across prevalence.
    TestCharacteristics balanced(0.9, 0.9);
    CostWeights unit{1.0, 1.0};
    for (double p : {0.0, 0.5, 1.0}) {
        CHECK_THAT(expected_cost_per_person(balanced, p, unit), WithinAbs(0.10, 1e-12));
    }

    // Asymmetric errors make the line slope.
    TestCharacteristics sharp(0.9, 0.99);
    CHECK_THAT(expected_cost_per_person(sharp, 0.0, unit), WithinAbs(0.01, 1e-12));
    CHECK_THAT(expected_cost_per_person(sharp, 0.5, unit), WithinAbs(0.055, 1e-12));
    CHECK_THAT(expected_cost_per_person(sharp, 1.0, unit), WithinAbs(0.10, 1e-12));

    TestCharacteristics screen(0.97, 0.92);
    CHECK_THAT(expected_cost_per_person(screen, 0.06, CostWeights{10.0, 1000.0}),
               WithinAbs(2.552, 1e-12));

    CHECK_THROWS_AS(expected_cost_per_person(balanced, 0.5, CostWeights{-1.0, 1.0}),
                    InvalidCostWeights);
}

TEST_CASE("expected cost is affine in prevalence") {
    // Midpoint value equals the chord average for any pair of prevalences.
    TestCharacteristics chars(0.85, 0.65);
    CostWeights costs{3.0, 40.0};
    std::mt19937 rng(29);
    for (int i = 0; i < 50; ++i) {
        double a = oracle::uniform01(rng);
        double b = oracle::uniform01(rng);
        double mid = (a + b) / 2.0;
        CAPTURE(a, b);
        CHECK_THAT(expected_cost_per_person(chars, mid, costs),
                   WithinAbs((expected_cost_per_person(chars, a, costs) +
                              expected_cost_per_person(chars, b, costs)) /
                                 2.0,
                             1e-12));
    }
}

TEST_CASE("cost curve tabulates the cost line over the grid") {
    TestCharacteristics chars(0.9, 0.99);
    auto pairs = cost_curve(chars, PrevalenceGrid(0.0, 1.0, 3), CostWeights{1.0, 1.0});
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].first == 0.0);
    CHECK_THAT(pairs[0].second, WithinAbs(0.01, 1e-12));
    CHECK_THAT(pairs[1].second, WithinAbs(0.055, 1e-12));
    CHECK_THAT(pairs[2].second, WithinAbs(0.10, 1e-12));
}

TEST_CASE("curve table mirrors the sweep, undefined cells left empty") {
    TestCharacteristics chars(0.97, 1.0);  // perfect specificity: no positives at prev 0
    auto curve = sweep(chars, default_grid());
    auto table = curve_to_table(curve);
    REQUIRE(table.columns.size() == 8);
    CHECK(table.columns[0] == "prevalence");
    CHECK(table.columns[3] == "false_alarm_rate");
    CHECK(table.columns[5] == "tests_per_detected_case");
    REQUIRE(table.rows.size() == curve.points.size());

    // Row 0 is prevalence 0: PPV has no value, tests-per-case is infinite.
    CHECK_FALSE(table.rows[0][1]);
    CHECK_FALSE(table.rows[0][3]);
    REQUIRE(table.rows[0][5]);
    CHECK(std::isinf(*table.rows[0][5]));

    // An interior row carries the same numbers as the curve point.
    REQUIRE(table.rows[50][1]);
    CHECK(*table.rows[50][1] == *curve.points[50].ppv);
    CHECK(*table.rows[50][0] == curve.points[50].prevalence);
}

TEST_CASE("curve table grows a cost column when weights are present") {
    TestCharacteristics chars(0.9, 0.9);
    auto curve = sweep(chars, default_grid(), {}, CostWeights{2.0, 8.0});
    auto table = curve_to_table(curve);
    REQUIRE(table.columns.size() == 9);
    CHECK(table.columns.back() == "expected_cost");
    REQUIRE(table.rows[10].back());
    CHECK_THAT(*table.rows[10].back(),
               WithinAbs(expected_cost_per_person(chars, curve.points[10].prevalence,
                                                  CostWeights{2.0, 8.0}),
                         1e-12));
}
