#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "saddlepairs/counting.hpp"
#include "saddlepairs/enumerate.hpp"
#include "saddlepairs/errors.hpp"
#include "saddlepairs/lattice.hpp"
#include "saddlepairs/poisson.hpp"
#include "saddlepairs/report.hpp"
#include "saddlepairs/siegel_veech.hpp"
#include "saddlepairs/surface.hpp"

namespace sp = saddlepairs;

namespace {

std::string read_file(const std::string& path, sp::ErrorCode missing_code) {
  std::ifstream in(path, std::ios::binary);
  sp::require(in.good(), missing_code, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  sp::require(out.good(), sp::ErrorCode::BadConfig,
              "cannot open output file: " + path);
  out << content;
}

// A loaded surface: one of the two representations, plus shared metadata.
struct LoadedSurface {
  bool is_origami = true;
  sp::Origami origami;
  sp::PolygonSurface polygon;
  std::string label;
};

LoadedSurface load_surface(const std::string& spec) {
  LoadedSurface s;
  s.label = spec;
  if (spec == "torus" || spec == "l3" || spec == "cyl2") {
    s.origami = sp::builtin_origami(spec);
    return s;
  }
  const std::string text = read_file(spec, sp::ErrorCode::BadSurfaceFile);
  if (text.find("\"polygons\"") != std::string::npos) {
    s.is_origami = false;
    s.polygon = sp::polygon_from_json(text);
  } else {
    s.origami = sp::origami_from_json(text);
  }
  return s;
}

double surface_area(const LoadedSurface& s) {
  return s.is_origami ? sp::area(s.origami) : sp::area(s.polygon);
}

sp::Enumeration enumerate_surface(const LoadedSurface& s, double R) {
  return s.is_origami ? sp::saddle_connections(s.origami, R)
                      : sp::saddle_connections(s.polygon, R);
}

sp::HolonomySet holonomies(const LoadedSurface& s, double R) {
  return s.is_origami ? sp::holonomy_set(s.origami, R)
                      : sp::holonomy_set(s.polygon, R);
}

double auto_radius(double t, double area_bound) {
  return std::sqrt(2.0 * std::cosh(2.0 * t)) *
             sp::mate_norm_factor(t, area_bound) +
         1.0;
}

std::string join_fingerprint(const std::vector<int>& fp) {
  std::string out;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(fp[i]);
  }
  return out;
}

// ----- subcommand configuration -----

struct Options {
  int threads = 0;

  std::string surface = "torus";
  double radius = 0.0;
  bool radius_set = false;
  double area_bound = 1.0;
  double t = 2.0;
  double tol = 1e-10;
  bool normalize = false;
  std::string format = "csv";
  std::string output = "-";

  std::vector<double> radii;
  std::string cusp_file;
  std::string convention = "ordered-pairs";

  std::string mode = "sample";
  double intensity = 1.0;
  double window_radius = 10.0;
  long long trials = 1000;
  std::uint64_t seed = 12345;
  std::vector<std::string> cell_specs;

  std::string input;
};

void append_config(sp::CsvReport& report, const Options& opt,
                   std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    const std::string k = key;
    if (k == "surface") report.meta.emplace_back(k, opt.surface);
    if (k == "radius") report.meta.emplace_back(k, sp::format_real(opt.radius));
    if (k == "area_bound")
      report.meta.emplace_back(k, sp::format_real(opt.area_bound));
    if (k == "normalize") report.meta.emplace_back(k, opt.normalize ? "1" : "0");
    if (k == "seed") report.meta.emplace_back(k, std::to_string(opt.seed));
    if (k == "intensity")
      report.meta.emplace_back(k, sp::format_real(opt.intensity));
    if (k == "trials") report.meta.emplace_back(k, std::to_string(opt.trials));
  }
}

int cmd_enumerate(const Options& opt) {
  sp::require(opt.radius_set && opt.radius > 0.0,
              sp::ErrorCode::RadiusNonPositive,
              "enumerate needs a positive --radius");
  const LoadedSurface s = load_surface(opt.surface);
  const double scale =
      opt.normalize ? 1.0 / std::sqrt(surface_area(s)) : 1.0;
  const sp::Enumeration e = enumerate_surface(s, opt.radius / scale);

  if (opt.format == "json") {
    nlohmann::ordered_json doc = sp::json_envelope("enumerate");
    doc["config"] = {{"surface", opt.surface},
                     {"radius", opt.radius},
                     {"normalize", opt.normalize}};
    doc["warnings"] = e.warnings;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& sc : e.connections) {
      nlohmann::ordered_json row;
      row["x"] = sc.holonomy.x * scale;
      row["y"] = sc.holonomy.y * scale;
      row["length"] = sp::norm(sc.holonomy) * scale;
      row["start"] = sc.start_cone_point;
      row["end"] = sc.end_cone_point;
      row["fingerprint"] = sc.fingerprint;
      arr.push_back(row);
    }
    doc["connections"] = arr;
    write_output(opt.output, doc.dump(2) + "\n");
    return 0;
  }

  sp::CsvReport report;
  sp::add_envelope(report, "enumerate");
  append_config(report, opt, {"surface", "radius", "normalize"});
  for (const std::string& w : e.warnings) report.meta.emplace_back("warning", w);
  report.columns = {"x", "y", "length", "start", "end", "fingerprint"};
  for (const auto& sc : e.connections)
    report.rows.push_back({sp::format_real(sc.holonomy.x * scale),
                           sp::format_real(sc.holonomy.y * scale),
                           sp::format_real(sp::norm(sc.holonomy) * scale),
                           std::to_string(sc.start_cone_point),
                           std::to_string(sc.end_cone_point),
                           join_fingerprint(sc.fingerprint)});
  write_output(opt.output, sp::csv_to_string(report));
  return 0;
}

int cmd_count(const Options& opt) {
  sp::require(opt.radius_set && opt.radius > 0.0,
              sp::ErrorCode::RadiusNonPositive,
              "count needs a positive --radius");
  const LoadedSurface s = load_surface(opt.surface);
  const double scale =
      opt.normalize ? 1.0 / std::sqrt(surface_area(s)) : 1.0;
  const double raw_radius = opt.radius / scale;
  const double raw_bound = opt.area_bound / (scale * scale);
  const sp::HolonomySet set = holonomies(s, raw_radius);
  sp::PairCountReport rep =
      sp::pair_count_report(set, raw_radius, raw_bound, opt.threads);
  // report in user units
  rep.radius = opt.radius;
  rep.area_bound = opt.area_bound;
  rep.pair_ratio =
      static_cast<double>(rep.pair_count) / (opt.radius * opt.radius);
  rep.parallel_ratio =
      static_cast<double>(rep.parallel_pair_count) / (opt.radius * opt.radius);

  if (opt.format == "json") {
    nlohmann::ordered_json doc = sp::json_envelope("count");
    doc["config"] = {{"surface", opt.surface},
                     {"radius", opt.radius},
                     {"area_bound", opt.area_bound},
                     {"normalize", opt.normalize}};
    doc["radius"] = rep.radius;
    doc["area_bound"] = rep.area_bound;
    doc["vector_count"] = rep.vector_count;
    doc["pair_count"] = rep.pair_count;
    doc["shell_pair_count"] = rep.shell_pair_count;
    doc["parallel_pair_count"] = rep.parallel_pair_count;
    doc["pair_ratio"] = rep.pair_ratio;
    doc["parallel_ratio"] = rep.parallel_ratio;
    write_output(opt.output, doc.dump(2) + "\n");
    return 0;
  }

  sp::CsvReport report;
  sp::add_envelope(report, "count");
  append_config(report, opt, {"surface", "radius", "area_bound", "normalize"});
  report.columns = {"radius",          "area_bound",
                    "vector_count",    "pair_count",
                    "shell_pair_count", "parallel_pair_count",
                    "pair_ratio",      "parallel_ratio"};
  report.rows.push_back({sp::format_real(rep.radius),
                         sp::format_real(rep.area_bound),
                         std::to_string(rep.vector_count),
                         std::to_string(rep.pair_count),
                         std::to_string(rep.shell_pair_count),
                         std::to_string(rep.parallel_pair_count),
                         sp::format_real(rep.pair_ratio),
                         sp::format_real(rep.parallel_ratio)});
  write_output(opt.output, sp::csv_to_string(report));
  return 0;
}

int cmd_decompose(const Options& opt) {
  const LoadedSurface s = load_surface(opt.surface);
  const double R =
      opt.radius_set ? opt.radius : auto_radius(opt.t, opt.area_bound);
  const sp::HolonomySet set = holonomies(s, R);
  const sp::ErrorDecomposition d = sp::error_decomposition(
      set, opt.t, opt.area_bound, opt.tol, opt.threads);

  nlohmann::ordered_json doc = sp::json_envelope("decompose");
  doc["config"] = {{"surface", opt.surface},
                   {"t", opt.t},
                   {"area_bound", opt.area_bound},
                   {"tol", opt.tol},
                   {"radius", R}};
  doc["t"] = d.t;
  doc["area_bound"] = d.area_bound;
  doc["main"] = d.main;
  doc["inner_shell"] = d.inner_shell;
  doc["near_equal"] = d.near_equal;
  doc["outer_shell"] = d.outer_shell;
  doc["swapped"] = d.swapped;
  doc["shell_pair_count"] = d.shell_pairs;
  doc["circle_average"] = d.circle_average;
  doc["positive_arc_pairs"] = d.positive_arc_pairs;
  doc["residual"] = d.residual;
  write_output(opt.output, doc.dump(2) + "\n");
  return 0;
}

int cmd_circle_average(const Options& opt) {
  const LoadedSurface s = load_surface(opt.surface);
  const double R =
      opt.radius_set ? opt.radius : auto_radius(opt.t, opt.area_bound);
  const sp::HolonomySet set = holonomies(s, R);
  const double average = sp::circle_average_transform(
      set, opt.t, opt.area_bound, opt.tol, opt.threads);
  const double e2t = std::exp(2.0 * opt.t);
  const long long shell = sp::count_pairs_annulus(
      set, std::exp(opt.t), opt.area_bound, opt.threads);
  const double scaled = M_PI * e2t * average;

  nlohmann::ordered_json doc = sp::json_envelope("circle-average");
  doc["config"] = {{"surface", opt.surface},
                   {"t", opt.t},
                   {"area_bound", opt.area_bound},
                   {"tol", opt.tol},
                   {"radius", R}};
  doc["t"] = opt.t;
  doc["area_bound"] = opt.area_bound;
  doc["shell_pair_count"] = shell;
  doc["circle_average"] = average;
  doc["scaled_average"] = scaled;
  doc["normalized_error"] =
      std::abs(static_cast<double>(shell) - scaled) / e2t;
  write_output(opt.output, doc.dump(2) + "\n");
  return 0;
}

int cmd_pair_growth(const Options& opt) {
  sp::require(!opt.radii.empty(), sp::ErrorCode::InsufficientRadii,
              "pair-growth needs --radii");
  const LoadedSurface s = load_surface(opt.surface);
  const double rmax = *std::max_element(opt.radii.begin(), opt.radii.end());
  const sp::HolonomySet set = holonomies(s, rmax);
  const sp::GrowthFit fit =
      sp::estimate_pair_growth(set, opt.area_bound, opt.radii, opt.threads);

  sp::CsvReport report;
  sp::add_envelope(report, "pair-growth");
  append_config(report, opt, {"surface", "area_bound"});
  report.meta.emplace_back("mean", sp::format_real(fit.mean));
  report.meta.emplace_back(
      "coefficient_of_variation",
      sp::format_real(fit.coefficient_of_variation));
  report.columns = {"radius", "pair_ratio"};
  for (std::size_t i = 0; i < fit.radii.size(); ++i)
    report.rows.push_back(
        {sp::format_real(fit.radii[i]), sp::format_real(fit.ratios[i])});
  write_output(opt.output, sp::csv_to_string(report));
  return 0;
}

int cmd_lattice_constant(const Options& opt) {
  nlohmann::ordered_json doc = sp::json_envelope("lattice-constant");
  if (!opt.cusp_file.empty()) {
    const sp::CuspData data = sp::cusp_data_from_json(
        read_file(opt.cusp_file, sp::ErrorCode::BadConfig));
    const double value = sp::lattice_constant(
        data, opt.convention == "as-printed"
                  ? sp::LatticeConvention::AsPrinted
                  : sp::LatticeConvention::OrderedPairs);
    doc["config"] = {{"cusp_file", opt.cusp_file},
                     {"convention", opt.convention}};
    doc["convention"] = opt.convention;
    doc["value"] = value;
    write_output(opt.output, doc.dump(2) + "\n");
    return 0;
  }
  sp::require(!opt.radii.empty(), sp::ErrorCode::BadConfig,
              "lattice-constant needs --cusp-file or --surface with --radii");
  const LoadedSurface s = load_surface(opt.surface);
  const double rmax = *std::max_element(opt.radii.begin(), opt.radii.end());
  const sp::GrowthFit fit =
      sp::parallel_growth(holonomies(s, rmax), opt.radii);
  doc["config"] = {{"surface", opt.surface}};
  doc["mean"] = fit.mean;
  doc["coefficient_of_variation"] = fit.coefficient_of_variation;
  doc["radii"] = fit.radii;
  doc["parallel_ratios"] = fit.ratios;
  write_output(opt.output, doc.dump(2) + "\n");
  return 0;
}

sp::CellBox parse_cell(const std::string& text) {
  sp::CellBox box;
  const int got = std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &box.x0,
                              &box.y0, &box.x1, &box.y1);
  sp::require(got == 4, sp::ErrorCode::BadConfig,
              "cell must be x0,y0,x1,y1: " + text);
  return box;
}

int cmd_poisson(const Options& opt) {
  if (opt.mode == "sample") {
    const sp::PoissonSample ps =
        sp::sample(opt.intensity, opt.window_radius, opt.seed);
    sp::CsvReport report;
    sp::add_envelope(report, "poisson");
    report.meta.emplace_back("mode", "sample");
    report.meta.emplace_back("generator", "xoshiro256** / splitmix64 seeding");
    append_config(report, opt, {"intensity", "seed"});
    report.meta.emplace_back("window_radius",
                             sp::format_real(ps.window_radius));
    report.meta.emplace_back("count", std::to_string(ps.points.size()));
    report.columns = {"x", "y"};
    for (const auto& p : ps.points)
      report.rows.push_back({sp::format_real(p.x), sp::format_real(p.y)});
    write_output(opt.output, sp::csv_to_string(report));
    return 0;
  }
  if (opt.mode == "pair-growth") {
    sp::require(!opt.radii.empty(), sp::ErrorCode::BadConfig,
                "poisson pair-growth needs --radii");
    const sp::PoissonPairGrowth g =
        sp::poisson_pair_growth(opt.intensity, opt.area_bound, opt.radii,
                                opt.trials, opt.seed, opt.threads);
    sp::CsvReport report;
    sp::add_envelope(report, "poisson");
    report.meta.emplace_back("mode", "pair-growth");
    report.meta.emplace_back("generator", "xoshiro256** / splitmix64 seeding");
    append_config(report, opt,
                  {"intensity", "area_bound", "trials", "seed"});
    report.columns = {"radius", "empirical_ratio", "predicted_ratio", "ratio"};
    for (std::size_t i = 0; i < opt.radii.size(); ++i)
      report.rows.push_back({sp::format_real(opt.radii[i]),
                             sp::format_real(g.empirical.ratios[i]),
                             sp::format_real(g.predicted[i]),
                             sp::format_real(g.ratio[i])});
    write_output(opt.output, sp::csv_to_string(report));
    return 0;
  }
  sp::require(opt.mode == "cell-test", sp::ErrorCode::BadConfig,
              "unknown poisson mode: " + opt.mode);
  std::vector<sp::CellBox> cells;
  if (opt.cell_specs.empty()) {
    cells = {{1.0, 1.0, 2.0, 2.0}, {-2.0, -1.0, -1.0, 1.0},
             {0.0, -2.0, 1.0, -1.0}};
  } else {
    for (const std::string& spec : opt.cell_specs)
      cells.push_back(parse_cell(spec));
  }
  const sp::CellCountResult r = sp::cell_count_test(
      opt.intensity, cells, opt.trials, opt.seed, opt.threads);
  nlohmann::ordered_json doc = sp::json_envelope("poisson");
  doc["config"] = {{"mode", "cell-test"},
                   {"intensity", opt.intensity},
                   {"trials", opt.trials},
                   {"seed", opt.seed}};
  doc["generator"] = "xoshiro256** / splitmix64 seeding";
  doc["window_radius"] = r.window_radius;
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    nlohmann::ordered_json cell;
    cell["x0"] = cells[c].x0;
    cell["y0"] = cells[c].y0;
    cell["x1"] = cells[c].x1;
    cell["y1"] = cells[c].y1;
    cell["area"] = r.cell_area[c];
    cell["statistic"] = r.statistic[c];
    cell["degrees"] = r.degrees[c];
    cell["p_value"] = r.p_value[c];
    arr.push_back(cell);
  }
  doc["cells"] = arr;
  doc["correlation"] = r.correlation;
  write_output(opt.output, doc.dump(2) + "\n");
  return 0;
}

int cmd_check(const Options& opt) {
  sp::require(!opt.input.empty(), sp::ErrorCode::BadConfig,
              "check needs an input report file");
  sp::check_report(read_file(opt.input, sp::ErrorCode::BadConfig));
  std::cout << "ok " << opt.input << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"saddle connection and pair counting toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--threads", opt.threads,
                 "worker thread cap (default: SADDLEPAIRS_THREADS or cores)");

  auto add_surface = [&](CLI::App* cmd) {
    cmd->add_option("--surface", opt.surface,
                    "built-in name (torus, l3, cyl2) or surface JSON path");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", opt.output, "output path, - for stdout");
  };

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list saddle connections up to a radius");
  add_surface(enumerate);
  enumerate->add_option("--radius", opt.radius, "holonomy norm bound")
      ->each([&](const std::string&) { opt.radius_set = true; });
  enumerate->add_flag("--normalize", opt.normalize,
                      "rescale holonomies to unit surface area");
  enumerate->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_output(enumerate);

  CLI::App* count =
      app.add_subcommand("count", "headline pair counts at one radius");
  add_surface(count);
  count->add_option("--radius", opt.radius, "norm bound")
      ->each([&](const std::string&) { opt.radius_set = true; });
  count->add_option("--area-bound", opt.area_bound, "virtual area bound");
  count->add_flag("--normalize", opt.normalize,
                  "count in unit-area normalized units");
  count->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_output(count);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "main/error decomposition of the circle-average identity");
  add_surface(decompose);
  decompose->add_option("--t", opt.t, "flow time");
  decompose->add_option("--area-bound", opt.area_bound, "virtual area bound");
  decompose->add_option("--tol", opt.tol, "arc bisection tolerance");
  decompose->add_option("--radius", opt.radius,
                        "enumeration radius (default: auto from t)")
      ->each([&](const std::string&) { opt.radius_set = true; });
  add_output(decompose);

  CLI::App* circle = app.add_subcommand(
      "circle-average", "renormalized circle average of the pair transform");
  add_surface(circle);
  circle->add_option("--t", opt.t, "flow time");
  circle->add_option("--area-bound", opt.area_bound, "virtual area bound");
  circle->add_option("--tol", opt.tol, "arc bisection tolerance");
  circle->add_option("--radius", opt.radius,
                     "enumeration radius (default: auto from t)")
      ->each([&](const std::string&) { opt.radius_set = true; });
  add_output(circle);

  CLI::App* growth = app.add_subcommand(
      "pair-growth", "pair count / R^2 ratios over a radius ladder");
  add_surface(growth);
  growth->add_option("--area-bound", opt.area_bound, "virtual area bound");
  growth->add_option("--radii", opt.radii, "increasing radii (>= 3)");
  add_output(growth);

  CLI::App* lattice = app.add_subcommand(
      "lattice-constant",
      "parallel-pair constant from cusp data, or empirical growth");
  lattice->add_option("--cusp-file", opt.cusp_file, "cusp data JSON");
  lattice->add_option("--convention", opt.convention,
                      "as-printed or ordered-pairs")
      ->check(CLI::IsMember({"as-printed", "ordered-pairs"}));
  add_surface(lattice);
  lattice->add_option("--radii", opt.radii, "radii for empirical growth");
  add_output(lattice);

  CLI::App* poisson = app.add_subcommand(
      "poisson", "planar Poisson baseline: sample, pair-growth, cell-test");
  poisson->add_option("--mode", opt.mode, "sample, pair-growth, or cell-test")
      ->check(CLI::IsMember({"sample", "pair-growth", "cell-test"}));
  poisson->add_option("--intensity", opt.intensity, "points per unit area");
  poisson->add_option("--window-radius", opt.window_radius,
                      "sampling disk radius (sample mode)");
  poisson->add_option("--area-bound", opt.area_bound, "virtual area bound");
  poisson->add_option("--radii", opt.radii, "radii (pair-growth mode)");
  poisson->add_option("--trials", opt.trials, "number of seeded trials");
  poisson->add_option("--seed", opt.seed, "base seed");
  poisson->add_option("--cell", opt.cell_specs,
                      "cell box x0,y0,x1,y1 (repeatable, cell-test mode)");
  add_output(poisson);

  CLI::App* check =
      app.add_subcommand("check", "validate a report file round-trip");
  check->add_option("input", opt.input, "report file to validate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error code=BadConfig exit=2 message=" << e.what() << "\n";
    return 2;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(opt);
    if (count->parsed()) return cmd_count(opt);
    if (decompose->parsed()) return cmd_decompose(opt);
    if (circle->parsed()) return cmd_circle_average(opt);
    if (growth->parsed()) return cmd_pair_growth(opt);
    if (lattice->parsed()) return cmd_lattice_constant(opt);
    if (poisson->parsed()) return cmd_poisson(opt);
    if (check->parsed()) return cmd_check(opt);
    std::cerr << "error code=BadConfig exit=2 message=no subcommand\n";
    return 2;
  } catch (const sp::Error& e) {
    const int code = static_cast<int>(e.category());
    std::cerr << "error code=" << sp::name_of(e.code()) << " exit=" << code
              << " message=" << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error code=InternalInvariant exit=5 message=" << e.what()
              << "\n";
    return 5;
  }
}
