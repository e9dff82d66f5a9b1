// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/surface.hpp"

#include <cstdint>

#include "tagasl/error.hpp"
#include "tagasl/kernels.hpp"

namespace tagasl {

namespace {

void validate_axis(const Axis& a) {
    if (a.steps < 2) {
        throw Error(ErrorCode::InvalidArgument, "axis '" + a.name + "' needs at least 2 steps");
    }
    if (!(a.min < a.max)) {
        throw Error(ErrorCode::InvalidArgument, "axis '" + a.name + "' needs min < max");
    }
}

void validate_unit_axis(const Axis& a) {
    if (a.min < 0.0 || a.max > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "axis '" + a.name + "' must lie within [0, 1]");
    }
}

// Flattened coordinates for every lattice point, row-major.
void lattice(const GridSpec& spec, std::vector<double>& first, std::vector<double>& second) {
    first.resize(spec.cell_count());
    second.resize(spec.cell_count());
    std::size_t k = 0;
    for (int i = 0; i < spec.axis1.steps; ++i) {
        const double a = spec.axis1.point(i);
        for (int j = 0; j < spec.axis2.steps; ++j, ++k) {
            first[k] = a;
            second[k] = spec.axis2.point(j);
        }
    }
}

nlohmann::json axis_json(const Axis& a) {
    return {{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}};
}

}  // namespace

double Axis::point(int i) const {
    if (i == steps - 1) {
        return max;
    }
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void GridSpec::validate() const {
    validate_axis(axis1);
    validate_axis(axis2);
}

std::size_t GridSpec::cell_count() const {
    return static_cast<std::size_t>(axis1.steps) * static_cast<std::size_t>(axis2.steps);
}

GridSpec default_break_even_spec(int steps) {
    return {{"p", kDefaultMinP, 1.0, steps}, {"tau", 0.0, 1.0, steps}};
}

GridSpec default_mesh_spec(int steps) {
    return {{"tau", 0.0, 1.0, steps}, {"pi", 0.0, 1.0, steps}};
}

SurfaceGrid break_even_surface(double t, const GridSpec& spec) {
    TermParams{t, 0.0}.validate();
    spec.validate();
    validate_unit_axis(spec.axis1);
    validate_unit_axis(spec.axis2);
    if (!(spec.axis1.min > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "p axis lower bound must be > 0");
    }

    std::vector<double> p;
    std::vector<double> tau;
    lattice(spec, p, tau);
    std::vector<double> roots(p.size());
    std::vector<std::uint8_t> kinds(p.size());
    kernels::break_even_pi(t, p, tau, roots, kinds);

    SurfaceGrid grid{spec, {}, {{"t", t}}};
    grid.cells.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        grid.cells.push_back({static_cast<BreakEvenKind>(kinds[k]), roots[k]});
    }
    return grid;
}

AslMesh asl_mesh(const CollectionParams& coll, const TermParams& term, const GridSpec& spec) {
    coll.validate();
    term.validate();
    spec.validate();
    validate_unit_axis(spec.axis1);
    validate_unit_axis(spec.axis2);

    std::vector<double> tau;
    std::vector<double> pi;
    lattice(spec, tau, pi);
    std::vector<double> out(tau.size());
    kernels::asl_tagged(static_cast<double>(coll.n_docs) / 2.0, term.t, term.p, tau, pi, out);

    AslMesh mesh;
    mesh.untagged_plane = asl_untagged(coll, term).asl;
    mesh.tagged.spec = spec;
    mesh.tagged.metadata = {{"N", static_cast<double>(coll.n_docs)},
                            {"t", term.t},
                            {"p", term.p},
                            {"asl_untagged", mesh.untagged_plane}};
    mesh.tagged.cells.reserve(out.size());
    for (double v : out) {
        mesh.tagged.cells.push_back({BreakEvenKind::Numeric, v});
    }
    return mesh;
}

std::size_t improvement_cell_count(const AslMesh& mesh) {
    std::size_t n = 0;
    for (const auto& c : mesh.tagged.cells) {
        if (c.value < mesh.untagged_plane) {
            ++n;
        }
    }
    return n;
}

namespace {
std::string cell_text(const Cell& c) {
    return c.numeric() ? format_real(c.value) : to_string(c.kind);
}
}  // namespace

void write_csv(std::ostream& os, const SurfaceGrid& grid) {
    os << "axis1,axis2,value\n";
    std::size_t k = 0;
    for (int i = 0; i < grid.spec.axis1.steps; ++i) {
        const std::string a = format_real(grid.spec.axis1.point(i));
        for (int j = 0; j < grid.spec.axis2.steps; ++j, ++k) {
            os << a << ',' << format_real(grid.spec.axis2.point(j)) << ','
               << cell_text(grid.cells[k]) << '\n';
        }
    }
}

void write_mesh_csv(std::ostream& os, const AslMesh& mesh) {
    const auto& spec = mesh.tagged.spec;
    const std::string plane = format_real(mesh.untagged_plane);
    os << "tau,pi,asl_tagged,asl_untagged\n";
    std::size_t k = 0;
    for (int i = 0; i < spec.axis1.steps; ++i) {
        const std::string a = format_real(spec.axis1.point(i));
        for (int j = 0; j < spec.axis2.steps; ++j, ++k) {
            os << a << ',' << format_real(spec.axis2.point(j)) << ','
               << format_real(mesh.tagged.cells[k].value) << ',' << plane << '\n';
        }
    }
}

nlohmann::json to_json(const SurfaceGrid& grid) {
    nlohmann::json values = nlohmann::json::array();
    for (int i = 0; i < grid.spec.axis1.steps; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < grid.spec.axis2.steps; ++j) {
            const Cell& c = grid.at(i, j);
            if (c.numeric()) {
                row.push_back(c.value);
            } else {
                row.push_back({{"kind", to_string(c.kind)}});
            }
        }
        values.push_back(std::move(row));
    }
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : grid.metadata) {
        meta[k] = v;
    }
    return {{"spec", {{"axis1", axis_json(grid.spec.axis1)}, {"axis2", axis_json(grid.spec.axis2)}}},
            {"metadata", meta},
            {"values", values}};
}

}  // namespace tagasl
