// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#include "murearr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace murearr {

namespace {

Tail tail_from_string(const std::string& s) {
  if (s == "flat") return Tail::kFlat;
  if (s == "linear") return Tail::kLinear;
  throw ParameterError("density.tail: expected \"flat\" or \"linear\", got \"" + s + "\"");
}

Json samples_json(const Density1D& d) {
  Json arr = Json::array();
  const auto psi = d.sample_psi();
  for (std::size_t k = 0; k < psi.size(); ++k) arr.push_back(Json::array({d.sample_t()[k], psi[k]}));
  return arr;
}

Json profile_to_json(const ConvexProfile& a) {
  Json j;
  switch (a.kind) {
    case ConvexProfile::Kind::kAffine:
      j["kind"] = "affine";
      j["coeffs"] = a.coeffs;
      break;
    case ConvexProfile::Kind::kQuadratic:
      j["kind"] = "quadratic";
      j["coeffs"] = a.coeffs;
      break;
    case ConvexProfile::Kind::kTabulated:
      j["kind"] = "tabulated";
      j["t"] = a.t;
      j["a"] = a.a;
      break;
  }
  return j;
}

ConvexProfile profile_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "affine") {
    const auto c = j.at("coeffs").get<std::vector<double>>();
    if (c.size() != 2) throw ParameterError("density.a.coeffs: affine profile needs 2 values");
    return ConvexProfile::affine(c[0], c[1]);
  }
  if (kind == "quadratic") {
    const auto c = j.at("coeffs").get<std::vector<double>>();
    if (c.size() != 3) throw ParameterError("density.a.coeffs: quadratic profile needs 3 values");
    return ConvexProfile::quadratic(c[0], c[1], c[2]);
  }
  if (kind == "tabulated") {
    return ConvexProfile::tabulated(j.at("t").get<std::vector<double>>(),
                                    j.at("a").get<std::vector<double>>());
  }
  throw ParameterError("density.a.kind: unknown profile kind \"" + kind + "\"");
}

Json transverse_to_json(const TransverseWeight& w) {
  Json j;
  switch (w.kind) {
    case TransverseWeight::Kind::kConstant:
      j["kind"] = "constant";
      j["value"] = w.value;
      break;
    case TransverseWeight::Kind::kGaussian:
      j["kind"] = "gauss";
      j["c"] = w.value;
      break;
    case TransverseWeight::Kind::kTabulated:
      j = density1d_to_json(*w.radial);
      break;
  }
  return j;
}

TransverseWeight transverse_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return TransverseWeight::constant(j.value("value", 1.0));
  if (kind == "gauss") return TransverseWeight::gaussian(j.at("c").get<double>());
  if (kind == "tabulated") return TransverseWeight::tabulated(density1d_from_json(j));
  throw ParameterError("density.rho.kind: unknown transverse weight \"" + kind + "\"");
}

}  // namespace

Json density1d_to_json(const Density1D& d) {
  Json j;
  if (d.is_gaussian()) {
    j["kind"] = "gauss";
    j["c"] = d.c();
  } else {
    j["kind"] = "tabulated";
    j["samples"] = samples_json(d);
    j["tail"] = d.tail() == Tail::kFlat ? "flat" : "linear";
  }
  return j;
}

Density1D density1d_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "gauss") {
    const double c = j.value("c", 0.0);
    if (c < 0.0) throw ParameterError("density.c: must be >= 0");
    return Density1D::gaussian(c);
  }
  if (kind == "tabulated") {
    std::vector<double> t;
    std::vector<double> psi;
    for (const auto& row : j.at("samples")) {
      t.push_back(row.at(0).get<double>());
      psi.push_back(row.at(1).get<double>());
    }
    return Density1D::tabulated(std::move(t), std::move(psi),
                                tail_from_string(j.value("tail", std::string("flat"))));
  }
  throw ParameterError("density.kind: expected \"gauss\" or \"tabulated\" for a 1-D density, got \"" +
                       kind + "\"");
}

Json weight_to_json(const Weight& w) {
  return std::visit(
      [](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        Json j;
        if constexpr (std::is_same_v<T, RadialDensity>) {
          j["kind"] = "gauss";
          j["c"] = d.c();
          j["n"] = d.n();
        } else if constexpr (std::is_same_v<T, ProductDensity>) {
          j["kind"] = "product";
          j["n"] = d.n();
          j["psi"] = density1d_to_json(d.psi());
          j["rho"] = transverse_to_json(d.rho());
        } else {
          j["kind"] = "singular-radial";
          j["n"] = d.n();
          j["a"] = profile_to_json(d.profile_fn());
        }
        return j;
      },
      w);
}

Weight weight_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const int n = j.value("n", 2);
  if (kind == "gauss") {
    const double c = j.value("c", 0.0);
    if (c < 0.0) throw ParameterError("density.c: must be >= 0");
    return RadialDensity(n, c);
  }
  if (kind == "product") {
    return ProductDensity(n, density1d_from_json(j.at("psi")),
                          transverse_from_json(j.value("rho", Json{{"kind", "constant"}, {"value", 1.0}})));
  }
  if (kind == "singular-radial") return SingularRadialDensity(n, profile_from_json(j.at("a")));
  throw ParameterError("density.kind: unknown kind \"" + kind + "\"");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_grid(std::ostream& os, const Lattice& lat, const std::vector<double>& values,
                bool function, GridFileFormat fmt) {
  const auto& spec = lat.spec();
  os << "MUGRID v1 " << (function ? "FN " : "") << spec.n << ' ' << spec.N << ' '
     << format_double(spec.L) << ' ' << lat.density_json().dump() << '\n';
  const char sep = fmt == GridFileFormat::kCsv ? ',' : ' ';
  const auto N = static_cast<std::size_t>(spec.N);
  for (std::size_t row = 0; row < values.size() / N; ++row) {
    for (std::size_t i = 0; i < N; ++i) {
      if (i) os << sep;
      os << format_double(values[row * N + i]);
    }
    os << '\n';
  }
}

}  // namespace

void write_grid_set(std::ostream& os, const GridSet& s, GridFileFormat fmt) {
  write_grid(os, *s.lattice, s.occ, false, fmt);
}

void write_grid_function(std::ostream& os, const GridFunction& u, GridFileFormat fmt) {
  write_grid(os, *u.lattice, u.values, true, fmt);
}

GridFile read_grid_file(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParameterError("grid file: empty input");
  std::istringstream hs(header);
  std::string magic;
  std::string version;
  hs >> magic >> version;
  if (magic != "MUGRID" || version != "v1") throw ParameterError("grid file: expected header \"MUGRID v1 ...\"");
  GridFile f;
  std::string tok;
  hs >> tok;
  if (tok == "FN") {
    f.is_function = true;
    hs >> tok;
  }
  GridSpec spec;
  try {
    spec.n = std::stoi(tok);
  } catch (const std::exception&) {
    throw ParameterError("grid file: bad dimension field \"" + tok + "\"");
  }
  if (!(hs >> spec.N >> spec.L)) throw ParameterError("grid file: header needs n N L density-id");
  std::string rest;
  std::getline(hs, rest);
  Json dj;
  try {
    dj = Json::parse(rest);
  } catch (const std::exception& e) {
    throw ParameterError(std::string("grid file: density-id is not valid JSON: ") + e.what());
  }
  f.lattice = make_lattice(spec, weight_from_json(dj));
  f.values.reserve(spec.cells());
  std::string line;
  while (std::getline(is, line)) {
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream ls(line);
    std::string num;
    while (ls >> num) {
      try {
        f.values.push_back(std::stod(num));
      } catch (const std::exception&) {
        throw ParameterError("grid file: bad value \"" + num + "\"");
      }
    }
  }
  if (f.values.size() != spec.cells()) {
    throw ParameterError("grid file: expected " + std::to_string(spec.cells()) + " values, found " +
                         std::to_string(f.values.size()));
  }
  return f;
}

GridSet read_grid_set(std::istream& is) {
  auto f = read_grid_file(is);
  if (f.is_function) throw ParameterError("grid file holds a function (FN), expected a set");
  return GridSet(f.lattice, std::move(f.values));
}

GridFunction read_grid_function(std::istream& is) {
  auto f = read_grid_file(is);
  if (!f.is_function) throw ParameterError("grid file holds a set, expected a function (FN)");
  return GridFunction(f.lattice, std::move(f.values));
}

GridFile read_grid_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open grid file " + path);
  return read_grid_file(in);
}

void write_grid_path(const std::string& path, const GridFile& f) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write grid file " + path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  write_grid(out, *f.lattice, f.values, f.is_function, csv ? GridFileFormat::kCsv : GridFileFormat::kText);
}

Json interval_set_to_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const auto& [a, b] : s.intervals()) arr.push_back(Json::array({a, b}));
  return arr;
}

IntervalSet interval_set_from_json(const Json& j) {
  if (!j.is_array()) throw ParameterError("interval set: expected a JSON array of [a, b] pairs");
  std::vector<IntervalSet::Interval> iv;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParameterError("interval set: each entry must be [a, b]");
    iv.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return IntervalSet(std::move(iv));
}

}  // namespace murearr
