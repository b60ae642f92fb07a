// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "murearr/grid.hpp"
#include "murearr/rearrange1d.hpp"
#include "murearr/report.hpp"

namespace murearr {

// Density specs:
//   {"kind":"gauss","c":1,"n":2}                      radial e^{c|x|^2} (n = 1: Density1D)
//   {"kind":"tabulated","samples":[[t,psi],...],"tail":"flat"|"linear"}
//   {"kind":"singular-radial","n":2,"a":{"kind":"affine","coeffs":[0,1]}}
//   {"kind":"product","n":2,"psi":{...1-D spec...},"rho":{"kind":"constant","value":1}}
Json density1d_to_json(const Density1D& d);
Density1D density1d_from_json(const Json& j);
Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);

/// Shortest round-trip text form of a double.
std::string format_double(double v);

// MUGRID v1 container. Header "MUGRID v1 n N L density-id" for sets,
// "MUGRID v1 FN n N L density-id" for functions, then N^{n-1} rows of N
// values along x₁. CSV files carry the same header and comma-separated rows.
enum class GridFileFormat { kText, kCsv };

void write_grid_set(std::ostream& os, const GridSet& s, GridFileFormat fmt = GridFileFormat::kText);
void write_grid_function(std::ostream& os, const GridFunction& u,
                         GridFileFormat fmt = GridFileFormat::kText);
GridSet read_grid_set(std::istream& is);
GridFunction read_grid_function(std::istream& is);

/// Either kind from a file; `is_function` tells which was found.
struct GridFile {
  bool is_function = false;
  LatticePtr lattice;
  std::vector<double> values;
};
GridFile read_grid_file(std::istream& is);
GridFile read_grid_path(const std::string& path);
void write_grid_path(const std::string& path, const GridFile& f);

Json interval_set_to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const Json& j);

}  // namespace murearr
