// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/surface.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "tagasl/error.hpp"
#include "tagasl/kernels.hpp"

namespace tagasl {
namespace {

constexpr double kTol = kExactTolerance;

TEST(Axis, InclusiveLattice) {
    const Axis a{"x", 0.02, 1.0, 51};
    EXPECT_EQ(a.point(0), 0.02);
    EXPECT_EQ(a.point(50), 1.0);
    EXPECT_NEAR(a.point(25), 0.51, kTol);
}

TEST(GridSpec, Validation) {
    EXPECT_THROW((GridSpec{{"p", 0.5, 0.5, 3}, {"tau", 0, 1, 3}}.validate()), Error);
    EXPECT_THROW((GridSpec{{"p", 0.1, 1, 1}, {"tau", 0, 1, 3}}.validate()), Error);
    EXPECT_THROW(break_even_surface(0.5, {{"p", 0.0, 1.0, 5}, {"tau", 0, 1, 5}}), Error);
    EXPECT_THROW(break_even_surface(0.5, {{"p", 0.1, 1.2, 5}, {"tau", 0, 1, 5}}), Error);
}

TEST(BreakEvenSurface, ContainsWorkedPoint) {
    const GridSpec spec{{"p", 0.1, 1.0, 10}, {"tau", 0.0, 1.0, 3}};
    const auto grid = break_even_surface(0.5, spec);
    ASSERT_EQ(grid.cells.size(), 30u);
    EXPECT_NEAR(spec.axis1.point(5), 0.6, kTol);
    const Cell& c = grid.at(5, 1);
    ASSERT_TRUE(c.numeric());
    EXPECT_NEAR(c.value, 7.0 / 12.0, kTol);
    EXPECT_EQ(grid.metadata.at("t"), 0.5);
}

TEST(BreakEvenSurface, FullTauColumnIsOne) {
    const auto grid = break_even_surface(0.1, default_break_even_spec());
    for (int i = 0; i < grid.spec.axis1.steps; ++i) {
        const Cell& c = grid.at(i, grid.spec.axis2.steps - 1);
        ASSERT_TRUE(c.numeric());
        EXPECT_EQ(c.value, 1.0);
    }
}

TEST(BreakEvenSurface, CellsAreRootsAndLowerTDominates) {
    const auto spec = default_break_even_spec();
    const auto low = break_even_surface(0.1, spec);
    const auto high = break_even_surface(0.5, spec);
    int compared = 0;
    for (int i = 0; i < spec.axis1.steps; ++i) {
        for (int j = 0; j < spec.axis2.steps; ++j) {
            const double p = spec.axis1.point(i), tau = spec.axis2.point(j);
            const Cell& a = low.at(i, j);
            const Cell& b = high.at(i, j);
            if (a.numeric()) {
                EXPECT_NEAR(tif({0.1, p}, {tau, a.value}), 0.0, kTol);
            }
            if (a.numeric() && b.numeric()) {
                EXPECT_GE(a.value, b.value);
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 1000);
}

TEST(BreakEvenSurface, MarkersAppear) {
    const auto grid = break_even_surface(0.5, default_break_even_spec());
    // p = 0.02, tau = 0 gives t(1 - tau) = 0.5 > p.
    EXPECT_EQ(grid.at(0, 0).kind, BreakEvenKind::AlwaysBeneficial);
    std::ostringstream csv;
    write_csv(csv, grid);
    EXPECT_NE(csv.str().find(",always\n"), std::string::npos);
    const auto j = to_json(grid);
    EXPECT_EQ(j["values"][0][0]["kind"], "always");
}

TEST(AslMesh, WorkedValues) {
    const GridSpec spec{{"tau", 0.0, 1.0, 7}, {"pi", 0.0, 1.0, 7}};
    const auto mesh = asl_mesh({10, 0.0}, {0.5, 0.6}, spec);
    EXPECT_NEAR(mesh.untagged_plane, 5.0, kTol);
    EXPECT_NEAR(mesh.tagged.at(3, 4).value, 4.75, kTol);
    EXPECT_EQ(mesh.tagged.at(6, 6).value, mesh.untagged_plane);
}

TEST(AslMesh, ImprovementRegionSmallerForLowT) {
    const auto spec = default_mesh_spec();
    const auto low = asl_mesh({10, 0.0}, {0.1, 0.6}, spec);
    const auto high = asl_mesh({10, 0.0}, {0.5, 0.6}, spec);
    const auto n_low = improvement_cell_count(low);
    const auto n_high = improvement_cell_count(high);
    EXPECT_LT(n_low, n_high);
    EXPECT_GT(n_low, 0u);
    // The low-t region sits at high pi: every improving cell has pi > 5/6.
    for (int i = 0; i < spec.axis1.steps; ++i) {
        for (int j = 0; j < spec.axis2.steps; ++j) {
            if (low.tagged.at(i, j).value < low.untagged_plane) {
                EXPECT_GT(spec.axis2.point(j), 5.0 / 6.0);
            }
        }
    }
}

TEST(Surface, DeterministicAcrossBackends) {
    const auto spec = default_break_even_spec();
    std::ostringstream first, second;
    write_csv(first, break_even_surface(0.1, spec));
    const auto original = kernels::active_backend();
    kernels::force_backend(kernels::Backend::Scalar);
    write_csv(second, break_even_surface(0.1, spec));
    kernels::force_backend(original);
    EXPECT_EQ(first.str(), second.str());
}

TEST(Csv, HeaderAndRowOrder) {
    const GridSpec spec{{"p", 0.5, 1.0, 2}, {"tau", 0.0, 1.0, 3}};
    std::ostringstream os;
    write_csv(os, break_even_surface(0.5, spec));
    EXPECT_EQ(os.str(),
              "axis1,axis2,value\n"
              "0.5,0,0\n"
              "0.5,0.5,0.5\n"
              "0.5,1,1\n"
              "1,0,0.5\n"
              "1,0.5,0.75\n"
              "1,1,1\n");
}

TEST(Csv, TwelveSignificantDigits) {
    EXPECT_EQ(format_real(7.0 / 12.0), "0.583333333333");
    EXPECT_EQ(format_real(2.0 / 3.0, 4), "0.6667");
    EXPECT_EQ(format_real(5.0), "5");
}

TEST(Json, ShapeMatchesSpec) {
    const GridSpec spec{{"tau", 0.0, 1.0, 3}, {"pi", 0.0, 1.0, 4}};
    const auto mesh = asl_mesh({10, 0.0}, {0.5, 0.6}, spec);
    const auto j = to_json(mesh.tagged);
    EXPECT_EQ(j["spec"]["axis1"]["name"], "tau");
    EXPECT_EQ(j["spec"]["axis2"]["steps"], 4);
    EXPECT_EQ(j["values"].size(), 3u);
    EXPECT_EQ(j["values"][0].size(), 4u);
    EXPECT_EQ(j["metadata"]["N"], 10.0);
}

}  // namespace
}  // namespace tagasl
