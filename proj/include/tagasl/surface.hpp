// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

// Parameter lattices behind the break-even and ASL-mesh plots, serialized as
// CSV or JSON for external plotting tools.

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tagasl/format.hpp"
#include "tagasl/model.hpp"

namespace tagasl {

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int steps = 51;

    /// Inclusive linear lattice; point(steps - 1) is exactly max.
    double point(int i) const;
};

struct GridSpec {
    Axis axis1;
    Axis axis2;

    void validate() const;
    std::size_t cell_count() const;
};

inline constexpr int kDefaultSteps = 51;
inline constexpr double kDefaultMinP = 0.02;

GridSpec default_break_even_spec(int steps = kDefaultSteps);
GridSpec default_mesh_spec(int steps = kDefaultSteps);

/// One lattice value; `kind` distinguishes numeric cells from the
/// break-even markers.
struct Cell {
    BreakEvenKind kind = BreakEvenKind::Numeric;
    double value = 0.0;

    bool numeric() const { return kind == BreakEvenKind::Numeric; }
};

struct SurfaceGrid {
    GridSpec spec;
    std::vector<Cell> cells;  // row-major: axis1 outer, axis2 inner
    std::map<std::string, double> metadata;

    const Cell& at(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * spec.axis2.steps + j];
    }
};

/// Cells over (p, tau); axis1 is p, axis2 is tau. The p axis must start above 0.
SurfaceGrid break_even_surface(double t, const GridSpec& spec);

struct AslMesh {
    SurfaceGrid tagged;  // axis1 tau, axis2 pi
    double untagged_plane = 0.0;
};

AslMesh asl_mesh(const CollectionParams& coll, const TermParams& term, const GridSpec& spec);

/// Number of mesh cells whose tagged ASL is strictly below the untagged plane.
std::size_t improvement_cell_count(const AslMesh& mesh);

/// Header `axis1,axis2,value`; non-numeric cells as "always" / "undef".
void write_csv(std::ostream& os, const SurfaceGrid& grid);
/// Header `tau,pi,asl_tagged,asl_untagged`.
void write_mesh_csv(std::ostream& os, const AslMesh& mesh);

nlohmann::json to_json(const SurfaceGrid& grid);

}  // namespace tagasl
