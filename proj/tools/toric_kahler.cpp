#include "toric/cohomology.hpp"
#include "toric/errors.hpp"
#include "toric/fixtures.hpp"
#include "toric/geometry.hpp"
#include "toric/io.hpp"
#include "toric/potential.hpp"
#include "toric/spectrum.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace toric;

namespace {

struct Options {
  std::string command;
  std::string polytope_path;
  std::string fixture;
  std::string correction;
  std::string points_path;
  std::string format = "json";
  std::string out;
  int k = 3;
  int degree = 6;
  std::string method = "auto";
  int cells = 512;
  bool history = false;
  double tol_extremal = kDefaultExtremalTolerance;
  SamplingConfig sampling;
  std::string fixture_name;
  std::string out_dir;
};

DelzantPolytope input_polytope(const Options& o) {
  if (!o.polytope_path.empty() && !o.fixture.empty()) {
    throw ToricError(ErrorKind::InvalidArgument, "give either --polytope or --fixture, not both");
  }
  if (!o.fixture.empty()) return fixtures::by_name(o.fixture);
  if (o.polytope_path.empty()) throw ToricError(ErrorKind::InvalidArgument, "--polytope or --fixture is required");
  return load_polytope(o.polytope_path);
}

SymplecticPotential input_potential(const Options& o, const DelzantPolytope& p) {
  SymplecticPotential g = canonical_potential(p);
  if (!o.correction.empty()) g = add_correction(g, load_correction(o.correction, p.dim()));
  return g;
}

std::vector<Eigen::VectorXd> input_points(const Options& o, const DelzantPolytope& p) {
  if (!o.points_path.empty()) return load_points(o.points_path, p.dim());
  return interior_samples(p, o.sampling);
}

std::string csv_row(const std::vector<double>& v) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str() + "\n";
}

std::string coord_header(std::size_t n) {
  std::string h;
  for (std::size_t i = 0; i < n; ++i) h += "x" + std::to_string(i + 1) + ",";
  return h;
}

struct Output {
  Json json;
  std::optional<std::string> csv;  // tabular CSV when the command has one
  int status = 0;
};

Output run_validate(const Options& o) {
  Output out;
  try {
    const DelzantPolytope p = input_polytope(o);
    Json body = combinatorics_json(p);
    body["polytope"] = polytope_json(p);
    if (!o.correction.empty()) {
      const SymplecticPotential g = input_potential(o, p);
      body["correction"] = correction_json(g.corrections().empty() ? CorrectionTerm::zero() : g.corrections().front());
      const ValidityReport v = validate_potential(g, o.sampling);
      body["potential"] = validity_json(v);
      if (!v.valid) out.status = 2;
    }
    out.json = report("validate", body);
  } catch (const ToricError& e) {
    if (!is_validation_error(e.kind()) || e.kind() == ErrorKind::ParseError) throw;
    out.json = report("validate", Json{{"delzant", false}, {"error", error_json(e)}});
    out.status = 2;
  }
  return out;
}

Output run_describe(const Options& o) {
  const DelzantPolytope p = input_polytope(o);
  const SymplecticPotential g = input_potential(o, p);
  Json body = combinatorics_json(p);
  body["polytope"] = polytope_json(p);
  Json corrections = Json::array();
  for (const auto& c : g.corrections()) corrections.push_back(correction_json(c));
  body["corrections"] = corrections;
  const Eigen::VectorXd c = p.centroid();
  const MetricSample m = metric_sample(g, c);
  body["centroid"] = vector_json(c);
  body["at_centroid"] = {{"G", matrix_json(m.G)},
                         {"Ginv", matrix_json(m.Ginv)},
                         {"detG", m.detG},
                         {"scalar_curvature", scalar_curvature(g, c)},
                         {"legendre_value", legendre_value(g, c)},
                         {"moment_map", vector_json(moment_map(g, c))}};
  body["cohomology"] = cohomology_json(p);
  return {report("describe", body), std::nullopt, 0};
}

Output run_curvature(const Options& o) {
  const DelzantPolytope p = input_polytope(o);
  const SymplecticPotential g = input_potential(o, p);
  const auto pts = input_points(o, p);
  Json rows = Json::array();
  std::string csv = coord_header(p.dim()) + "S,S_alt\n";
  for (const auto& x : pts) {
    const double s = scalar_curvature(g, x), alt = scalar_curvature_alt(g, x);
    rows.push_back({{"point", vector_json(x)}, {"S", s}, {"S_alt", alt}});
    std::vector<double> r(x.data(), x.data() + x.size());
    r.push_back(s);
    r.push_back(alt);
    csv += csv_row(r);
  }
  return {report("curvature", Json{{"samples", pts.size()}, {"values", rows}}), csv, 0};
}

Output run_extremal(const Options& o) {
  const DelzantPolytope p = input_polytope(o);
  const SymplecticPotential g = input_potential(o, p);
  const auto pts = input_points(o, p);
  const ExtremalityReport r = extremality_test(g, pts, o.tol_extremal);
  std::string csv = coord_header(p.dim()) + "S,fit,residual\n";
  for (const auto& x : pts) {
    const double s = scalar_curvature(g, x), fit = r.constant + r.gradient.dot(x);
    std::vector<double> row(x.data(), x.data() + x.size());
    row.insert(row.end(), {s, fit, s - fit});
    csv += csv_row(row);
  }
  return {report("extremal-check", extremality_json(r)), csv, 0};
}

Output run_spectrum(const Options& o) {
  const DelzantPolytope p = input_polytope(o);
  const SymplecticPotential g = input_potential(o, p);
  std::string method = o.method;
  if (method == "auto") method = p.dim() == 1 ? "fem" : "ritz";
  SpectrumResult r;
  if (method == "fem") {
    r = invariant_spectrum(g, o.k, Fem1DConfig{o.cells});
  } else {
    r = invariant_spectrum(g, o.k, RitzConfig{o.degree, std::nullopt, 1e12});
  }
  Json body = spectrum_json(r);
  std::string csv = "j,eigenvalue,converged\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    std::ostringstream s;
    s.precision(17);
    s << i + 1 << "," << r.eigenvalues[i] << "," << (r.converged[i] ? "true" : "false") << "\n";
    csv += s.str();
  }
  if (o.history) {
    std::vector<int> degrees;
    for (int d = 1; d <= o.degree; ++d) degrees.push_back(d);
    const auto hist = ritz_history(g, o.k, degrees);
    Json h = Json::array();
    csv = "degree";
    for (int j = 1; j <= o.k; ++j) csv += ",lambda_" + std::to_string(j);
    csv += "\n";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      h.push_back({{"degree", degrees[i]}, {"eigenvalues", hist[i]}});
      std::vector<double> row{static_cast<double>(degrees[i])};
      row.insert(row.end(), hist[i].begin(), hist[i].end());
      // low degrees can have fewer than k nonconstant modes; pad with empty cells
      std::string line = csv_row(row);
      line.pop_back();
      for (std::size_t j = hist[i].size(); j < static_cast<std::size_t>(o.k); ++j) line += ",";
      csv += line + "\n";
    }
    body["history"] = h;
  }
  Json bounds = Json::array();
  for (const auto& b : bessel_bounds(o.k)) bounds.push_back({{"j", b.j}, {"xi", b.xi}, {"bound", b.bound}});
  body["bessel_bounds"] = bounds;
  return {report("spectrum", body), csv, 0};
}

Output run_cohomology(const Options& o) {
  const DelzantPolytope p = input_polytope(o);
  Json body = cohomology_json(p);
  if (!o.points_path.empty()) {
    const SymplecticPotential g = input_potential(o, p);
    Json evals = Json::array();
    for (const auto& x : load_points(o.points_path, p.dim())) {
      Json forms = Json::array();
      for (std::size_t r = 0; r < p.num_facets(); ++r) forms.push_back(matrix_json(generator_form(p, r, x).C));
      evals.push_back({{"point", vector_json(x)},
                       {"alpha", forms},
                       {"ddbar_legendre", matrix_json(ddbar_coefficients(g, legendre_field(g), x).C)}});
    }
    body["pointwise"] = evals;
  }
  return {report("cohomology", body), std::nullopt, 0};
}

Output run_fixtures(const Options& o) {
  Json body;
  if (!o.fixture_name.empty()) {
    body["fixtures"] = {{o.fixture_name, polytope_json(fixtures::by_name(o.fixture_name))}};
  } else {
    Json all;
    for (const auto& n : fixtures::names()) all[n] = polytope_json(fixtures::by_name(n));
    body["fixtures"] = all;
  }
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    for (const auto& [name, poly] : body["fixtures"].items()) {
      std::ofstream f(std::filesystem::path(o.out_dir) / (name + ".json"));
      if (!f) throw ToricError(ErrorKind::InvalidArgument, "cannot write into " + o.out_dir);
      f << poly.dump(2) << "\n";
    }
  }
  return {report("fixtures", body), std::nullopt, 0};
}

void emit(const Options& o, const Output& out) {
  std::string text;
  if (o.format == "csv") {
    text = out.csv ? *out.csv : flatten_csv(out.json);
  } else {
    text = out.json.dump(2) + "\n";
  }
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
  }
}

void add_input(CLI::App* sub, Options& o) {
  sub->add_option("--polytope", o.polytope_path, "Polytope JSON file");
  sub->add_option("--fixture", o.fixture, "Built-in polytope name")->check(CLI::IsMember(fixtures::names()));
}

void add_correction(CLI::App* sub, Options& o) {
  sub->add_option("--correction", o.correction, "Correction JSON file or built-in name (zero, calabi-blowup)");
}

void add_sampling(CLI::App* sub, Options& o) {
  sub->add_option("--grid", o.sampling.grid_per_axis, "Tensor grid points per axis")->check(CLI::PositiveNumber);
  sub->add_option("--halton", o.sampling.low_discrepancy, "Low-discrepancy interior points")->check(CLI::NonNegativeNumber);
  sub->add_option("--margin", o.sampling.boundary_margin, "Keep samples with ℓ_r >= margin * diameter");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kähler geometry of toric manifolds on Delzant polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Write the report here instead of stdout");

  auto* validate = app.add_subcommand("validate", "Check the Delzant conditions; with --correction also validate the potential");
  add_input(validate, o);
  add_correction(validate, o);
  add_sampling(validate, o);

  auto* describe = app.add_subcommand("describe", "Vertices, face counts, h-numbers and metric data at the centroid");
  add_input(describe, o);
  add_correction(describe, o);

  auto* curvature = app.add_subcommand("curvature", "Scalar curvature at sample or given points");
  add_input(curvature, o);
  add_correction(curvature, o);
  add_sampling(curvature, o);
  curvature->add_option("--points", o.points_path, "Points file (JSON array or one point per line)");

  auto* extremal = app.add_subcommand("extremal-check", "Affine fit of the scalar curvature");
  add_input(extremal, o);
  add_correction(extremal, o);
  add_sampling(extremal, o);
  extremal->add_option("--points", o.points_path, "Points file");
  extremal->add_option("--tol-extremal", o.tol_extremal, "Residual tolerance")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Invariant Laplacian eigenvalues");
  add_input(spectrum, o);
  add_correction(spectrum, o);
  spectrum->add_option("--k", o.k, "Number of eigenvalues")->check(CLI::PositiveNumber)->capture_default_str();
  spectrum->add_option("--degree", o.degree, "Ritz polynomial degree")->check(CLI::PositiveNumber)->capture_default_str();
  spectrum->add_option("--method", o.method, "auto, ritz or fem")->check(CLI::IsMember({"auto", "ritz", "fem"}))->capture_default_str();
  spectrum->add_option("--cells", o.cells, "Finite element cells (1D)")->check(CLI::Range(2, 1 << 14))->capture_default_str();
  spectrum->add_flag("--history", o.history, "Ritz values for degrees 1..degree");

  auto* cohomology = app.add_subcommand("cohomology", "dim H^2, class of the symplectic form, generator forms");
  add_input(cohomology, o);
  add_correction(cohomology, o);
  cohomology->add_option("--points", o.points_path, "Points for pointwise evaluation");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Emit the built-in polytopes");
  fixtures_cmd->add_option("--name", o.fixture_name, "Only this fixture")->check(CLI::IsMember(fixtures::names()));
  fixtures_cmd->add_option("--out-dir", o.out_dir, "Also write NAME.json files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Output out;
    if (validate->parsed()) out = run_validate(o);
    else if (describe->parsed()) out = run_describe(o);
    else if (curvature->parsed()) out = run_curvature(o);
    else if (extremal->parsed()) out = run_extremal(o);
    else if (spectrum->parsed()) out = run_spectrum(o);
    else if (cohomology->parsed()) out = run_cohomology(o);
    else out = run_fixtures(o);
    emit(o, out);
    return out.status;
  } catch (const ToricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool input = is_validation_error(e.kind()) || e.kind() == ErrorKind::BoundaryPoint ||
                       e.kind() == ErrorKind::OutsidePolytope || e.kind() == ErrorKind::IllConditionedGram;
    return input ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
