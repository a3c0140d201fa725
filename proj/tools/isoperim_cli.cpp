// Command line surface: every computation lands in a CSV (and optionally an
// SVG), always accompanied by a JSON manifest, so runs can be reproduced and
// diffed byte for byte.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isoperim/deficit.hpp"
#include "isoperim/extremals.hpp"
#include "isoperim/functional.hpp"
#include "isoperim/measure.hpp"
#include "isoperim/oracle.hpp"
#include "isoperim/quantile_set.hpp"

using isoperim::Family;
using isoperim::Measure;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string f17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string na_or(double v) { return std::isnan(v) ? "NA" : f17(v); }

// comma separated, '.' decimal, header row, LF endings, 17 significant digits
struct CsvWriter {
  std::ofstream out;
  explicit CsvWriter(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }
};

json base_manifest(const std::string& command, const Measure& m) {
  json man;
  man["tool"] = "isoperim";
  man["version"] = kVersion;
  man["command"] = command;
  man["measure"] = m.spec_string();
  return man;
}

void write_manifest(const std::string& csv_path, const json& man) {
  std::ofstream out(csv_path + ".manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest for " + csv_path);
  out << man.dump(2) << '\n';
}

// regions.csv -> regions_lambda0.csv etc.
std::string derive_path(const std::string& out, const std::string& suffix) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() &&
      out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
    return out.substr(0, out.size() - ext.size()) + suffix + ext;
  return out + suffix + ext;
}

// --- profile -------------------------------------------------------------

void run_profile(const Measure& m, int n_points, const std::string& out) {
  if (n_points < 1) throw std::invalid_argument("profile: --n must be >= 1");
  CsvWriter csv(out);
  csv.row({"p", "I(p)", "J(p)"});
  for (int k = 0; k < n_points; ++k) {
    const double p = (k + 0.5) / n_points;
    csv.row({f17(p), f17(isoperim::isoperimetric_profile(m, p)), f17(m.j(p))});
  }
  json man = base_manifest("profile", m);
  man["n_points"] = n_points;
  man["outputs"] = {out};
  write_manifest(out, man);
}

// --- regions -------------------------------------------------------------

const char* family_color(Family f) {
  switch (f) {
    case Family::E1: return "#4c78a8";
    case Family::E2: return "#f28e2b";
    case Family::E3: return "#59a14f";
    case Family::E4: return "#e15759";
    default: return "#bbbbbb";
  }
}

void write_region_svg(const std::string& path, const isoperim::RegionMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const double W = 640.0, H = 640.0;
  const double ml = 70.0, mr = 24.0, mt = 24.0, mb = 56.0;
  auto X = [&](double p) { return ml + p / 0.5 * (W - ml - mr); };
  auto Y = [&](double lam) { return H - mb - lam * (H - mt - mb); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  out << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  const int n = map.grid_n;
  const double dp = 0.5 / n;
  for (const auto& cell : map.cells) {
    const double lmax = std::fmin(2.0 * cell.p, 1.0);
    const double dl = lmax / n;
    const double x0 = X(cell.p - dp / 2), x1 = X(cell.p + dp / 2);
    const double y0 = Y(cell.lambda + dl / 2), y1 = Y(cell.lambda - dl / 2);
    out << "<rect x=\"" << f2(x0) << "\" y=\"" << f2(y0) << "\" width=\""
        << f2(x1 - x0) << "\" height=\"" << f2(y1 - y0) << "\" fill=\""
        << family_color(cell.winner) << "\"/>\n";
  }
  auto polyline = [&](const std::vector<std::pair<double, double>>& pts,
                      bool swap_xy, const char* stroke) {
    if (pts.empty()) return;
    out << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    for (const auto& q : pts) {
      const double p = swap_xy ? q.second : q.first;
      const double lam = swap_xy ? q.first : q.second;
      out << f2(X(p)) << ',' << f2(Y(lam)) << ' ';
    }
    out << "\"/>\n";
  };
  polyline(map.lambda0_curve, false, "#222222");
  polyline(map.p0_curve, true, "#222222");
  // axes
  out << "<line x1=\"" << f2(X(0)) << "\" y1=\"" << f2(Y(0)) << "\" x2=\""
      << f2(X(0.5)) << "\" y2=\"" << f2(Y(0)) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << f2(X(0)) << "\" y1=\"" << f2(Y(0)) << "\" x2=\""
      << f2(X(0)) << "\" y2=\"" << f2(Y(1)) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = 0.1 * i;
    out << "<text x=\"" << f2(X(p)) << "\" y=\"" << f2(Y(0) + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << f2(p)
        << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double lam = 0.2 * i;
    out << "<text x=\"" << f2(X(0) - 8) << "\" y=\"" << f2(Y(lam) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << f2(lam)
        << "</text>\n";
  }
  out << "<text x=\"" << f2(X(0.25)) << "\" y=\"" << f2(H - 12)
      << "\" font-size=\"14\" text-anchor=\"middle\">p</text>\n";
  out << "<text x=\"16\" y=\"" << f2(Y(0.5)) << "\" font-size=\"14\">&#955;"
      << "</text>\n";
  // corner markers: lambda0 meets lambda = 2p at p1, and the two branches
  // meet on lambda = 1-p at p2
  if (!std::isnan(map.p1))
    out << "<circle cx=\"" << f2(X(map.p1)) << "\" cy=\"" << f2(Y(2 * map.p1))
        << "\" r=\"4\" fill=\"black\"/>\n";
  if (!std::isnan(map.p2))
    out << "<circle cx=\"" << f2(X(map.p2)) << "\" cy=\""
        << f2(Y(1 - map.p2)) << "\" r=\"4\" fill=\"black\"/>\n";
  // legend
  const Family fams[4] = {Family::E1, Family::E2, Family::E3, Family::E4};
  for (int i = 0; i < 4; ++i) {
    const double y = mt + 20.0 * i;
    out << "<rect x=\"" << f2(ml + 10) << "\" y=\"" << f2(y)
        << "\" width=\"14\" height=\"14\" fill=\"" << family_color(fams[i])
        << "\"/>\n";
    out << "<text x=\"" << f2(ml + 30) << "\" y=\"" << f2(y + 12)
        << "\" font-size=\"12\">" << isoperim::family_name(fams[i])
        << "</text>\n";
  }
  out << "</svg>\n";
}

void run_regions(const Measure& m, int grid_n, const std::string& out,
                 const std::string& svg) {
  const isoperim::RegionMap map = isoperim::region_map(m, grid_n);
  CsvWriter csv(out);
  csv.row({"p", "lambda", "winner", "P_E1", "P_E2", "P_E3", "P_E4"});
  for (const auto& cell : map.cells) {
    csv.row({f17(cell.p), f17(cell.lambda), isoperim::family_name(cell.winner),
             na_or(cell.perimeter[0]), na_or(cell.perimeter[1]),
             na_or(cell.perimeter[2]), na_or(cell.perimeter[3])});
  }
  const std::string lam0_path = derive_path(out, "_lambda0");
  {
    CsvWriter c2(lam0_path);
    c2.row({"p", "lambda0"});
    for (const auto& q : map.lambda0_curve) c2.row({f17(q.first), f17(q.second)});
  }
  const std::string p0_path = derive_path(out, "_p0");
  {
    CsvWriter c3(p0_path);
    c3.row({"lambda", "p0"});
    for (const auto& q : map.p0_curve) c3.row({f17(q.first), f17(q.second)});
  }
  if (!svg.empty()) write_region_svg(svg, map);
  json man = base_manifest("regions", m);
  man["grid_n"] = grid_n;
  man["p1"] = map.p1;
  man["p2"] = map.p2;
  man["outputs"] = json::array({out, lam0_path, p0_path});
  if (!svg.empty()) man["outputs"].push_back(svg);
  write_manifest(out, man);
}

// --- deficit ---------------------------------------------------------------

void run_deficit(const Measure& m, double p, double lambda,
                 const std::string& out) {
  CsvWriter csv(out);
  csv.row({"family", "perimeter", "deficit", "bound_general", "margin_general",
           "bound_origin_free", "margin_origin_free"});
  double bound_general = std::numeric_limits<double>::quiet_NaN();
  try {
    bound_general = isoperim::deficit_lower_bound(m, p, lambda, false);
  } catch (const std::runtime_error&) {
  }
  double bound_free = std::numeric_limits<double>::quiet_NaN();
  try {
    bound_free = isoperim::deficit_lower_bound(m, p, lambda, true);
  } catch (const std::runtime_error&) {
  }
  const Family fams[4] = {Family::E1, Family::E2, Family::E3, Family::E4};
  int rows = 0;
  for (Family f : fams) {
    if (!isoperim::family_valid(f, p, lambda)) continue;
    const isoperim::Candidate cand = isoperim::candidate(m, f, p, lambda);
    const double deficit = isoperim::deficit(cand.set, m);
    const bool origin_free = !cand.set.contains_origin();
    const double bf =
        origin_free ? bound_free : std::numeric_limits<double>::quiet_NaN();
    csv.row({isoperim::family_name(f), f17(cand.closed_form_perimeter),
             f17(deficit), na_or(bound_general),
             std::isnan(bound_general) ? "NA" : f17(deficit - bound_general),
             na_or(bf), std::isnan(bf) ? "NA" : f17(deficit - bf)});
    ++rows;
  }
  json man = base_manifest("deficit", m);
  man["p"] = p;
  man["lambda"] = lambda;
  man["rows"] = rows;
  man["outputs"] = {out};
  write_manifest(out, man);
}

// --- oracle ----------------------------------------------------------------

void run_oracle(const Measure& m, double p, std::optional<double> lambda,
                const isoperim::OracleConfig& cfg, bool origin_free,
                const std::string& out) {
  const isoperim::OracleResult res =
      isoperim::brute_min_perimeter(m, p, lambda, cfg, origin_free);
  double closed;
  if (lambda) {
    closed = isoperim::min_candidate(m, p, *lambda, origin_free).perimeter;
  } else {
    closed = isoperim::isoperimetric_profile(m, p);
  }
  const double gap = std::fabs(res.min_perimeter - closed);
  const double bound =
      m.j_lipschitz() * 2.0 * cfg.max_components / cfg.grid_n;
  CsvWriter csv(out);
  std::vector<std::string> head = {"p",
                                   "lambda",
                                   "min_perimeter",
                                   "measure_residual",
                                   "asymmetry_residual",
                                   "count",
                                   "tie",
                                   "closed_form",
                                   "gap",
                                   "bound"};
  for (int i = 1; i <= 8; ++i) head.push_back("e" + std::to_string(i));
  csv.row(head);
  std::vector<std::string> row = {f17(p),
                                  lambda ? f17(*lambda) : "NA",
                                  f17(res.min_perimeter),
                                  f17(res.measure_residual),
                                  f17(res.asymmetry_residual),
                                  std::to_string(res.enumerated_count),
                                  res.tie ? "1" : "0",
                                  f17(closed),
                                  f17(gap),
                                  f17(bound)};
  const auto& e = res.witness.endpoints();
  for (std::size_t i = 0; i < 8; ++i)
    row.push_back(i < e.size() ? f17(e[i]) : "NA");
  csv.row(row);
  json man = base_manifest("oracle", m);
  man["p"] = p;
  if (lambda) man["lambda"] = *lambda;
  man["grid_n"] = cfg.grid_n;
  man["max_components"] = cfg.max_components;
  man["measure_tol"] = cfg.measure_tol;
  man["asymmetry_tol"] = cfg.asymmetry_tol;
  man["origin_free"] = origin_free;
  man["seed"] = cfg.seed;
  man["outputs"] = {out};
  write_manifest(out, man);
}

// --- cheeger -----------------------------------------------------------------

void run_cheeger(const Measure& m, int grid_n, const std::string& out) {
  if (grid_n < 1) throw std::invalid_argument("cheeger: --grid-n must be >= 1");
  CsvWriter csv(out);
  csv.row({"s", "beta"});
  for (int k = 0; k < grid_n; ++k) {
    const double s = (k + 0.5) / (2.0 * grid_n);
    csv.row({f17(s), f17(isoperim::cheeger_beta(m, s))});
  }
  double residual = 0.0;
  for (int k = 0; k < grid_n; ++k) {
    const double t = (k + 0.5) / (2.0 * grid_n);
    residual = std::fmax(residual,
                         std::fabs(isoperim::isoperimetric_profile(m, t) -
                                   isoperim::profile_from_beta(m, t)));
  }
  std::printf("roundtrip_residual=%s\n", f17(residual).c_str());
  json man = base_manifest("cheeger", m);
  man["grid_n"] = grid_n;
  man["roundtrip_residual"] = residual;
  man["outputs"] = {out};
  write_manifest(out, man);
}

// --- rearrange ---------------------------------------------------------------

isoperim::PiecewiseFunction read_function_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("rearrange: cannot open " + path);
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) continue;
    try {
      std::size_t pa = 0, pb = 0;
      const double x = std::stod(a, &pa);
      const double v = std::stod(b, &pb);
      xs.push_back(x);
      vs.push_back(v);
    } catch (const std::exception&) {
      if (xs.empty()) continue;  // header row
      throw std::invalid_argument("rearrange: bad row '" + line + "'");
    }
  }
  if (xs.size() < 2)
    throw std::invalid_argument("rearrange: need at least two x,value rows");
  return isoperim::PiecewiseFunction(std::move(xs), std::move(vs));
}

void run_rearrange(const Measure& m, const std::string& in_path, int grid_n,
                   const std::string& out) {
  if (grid_n < 1)
    throw std::invalid_argument("rearrange: --grid-n must be >= 1");
  const isoperim::PiecewiseFunction u = read_function_csv(in_path);
  const isoperim::PiecewiseFunction au = isoperim::absolute(u);
  const double supp = isoperim::support_measure(au, m);
  CsvWriter csv(out);
  csv.row({"t", "x", "u_sharp", "s", "u_star"});
  for (int k = 0; k < grid_n; ++k) {
    const double t = (k + 0.5) / grid_n;
    const double x = m.quantile(t);
    const double us = isoperim::sharp_rearrangement(au, m, x);
    const double s = t * supp;
    const double ustar = isoperim::decreasing_rearrangement(au, m, s);
    csv.row({f17(t), f17(x), f17(us), f17(s), f17(ustar)});
  }
  json man = base_manifest("rearrange", m);
  man["input"] = in_path;
  man["grid_n"] = grid_n;
  man["support_measure"] = supp;
  man["total_variation"] = isoperim::integral_abs_gradient(u, m);
  man["outputs"] = {out};
  write_manifest(out, man);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for one-dimensional isoperimetry of "
               "symmetric log-convex probability measures"};
  app.require_subcommand(1);

  std::string measure_spec = "cauchy:1";
  std::string out_path, svg_path, in_path;
  int grid_n = 200;
  int n_points = 200;
  double p = 0.25, lambda = 0.0;
  bool origin_free = false;
  isoperim::OracleConfig ocfg;

  auto* c_profile = app.add_subcommand("profile", "isoperimetric profile and J");
  c_profile->add_option("--measure", measure_spec, "measure spec");
  c_profile->add_option("--n", n_points, "number of sample points");
  c_profile->add_option("--out", out_path, "output CSV")->required();

  auto* c_regions =
      app.add_subcommand("regions", "minimal-perimeter family map over (p, lambda)");
  c_regions->add_option("--measure", measure_spec, "measure spec");
  c_regions->add_option("--grid-n", grid_n, "cells per axis");
  c_regions->add_option("--out", out_path, "output CSV")->required();
  c_regions->add_option("--svg", svg_path, "optional SVG rendering");

  auto* c_deficit =
      app.add_subcommand("deficit", "deficit and lower bounds per family");
  c_deficit->add_option("--measure", measure_spec, "measure spec");
  c_deficit->add_option("--p", p, "set measure")->required();
  c_deficit->add_option("--lambda", lambda, "asymmetry")->required();
  c_deficit->add_option("--out", out_path, "output CSV")->required();

  auto* c_oracle =
      app.add_subcommand("oracle", "grid search minimum vs closed form");
  bool have_lambda = false;
  c_oracle->add_option("--measure", measure_spec, "measure spec");
  c_oracle->add_option("--p", p, "target measure")->required();
  auto* lam_opt = c_oracle->add_option("--lambda", lambda, "target asymmetry");
  c_oracle->add_option("--grid-n", ocfg.grid_n, "grid resolution");
  c_oracle->add_option("--k", ocfg.max_components, "max components (1..4)");
  c_oracle->add_option("--measure-tol", ocfg.measure_tol,
                       "measure window half width (default 2/grid_n)");
  c_oracle->add_option("--asymmetry-tol", ocfg.asymmetry_tol,
                       "asymmetry window half width (default 2/grid_n)");
  c_oracle->add_option("--seed", ocfg.seed, "seed (recorded in the manifest)");
  c_oracle->add_flag("--origin-free", origin_free,
                     "exclude sets with the origin inside");
  c_oracle->add_option("--out", out_path, "output CSV")->required();

  auto* c_cheeger = app.add_subcommand("cheeger", "weak Cheeger beta(s)");
  c_cheeger->add_option("--measure", measure_spec, "measure spec");
  c_cheeger->add_option("--grid-n", grid_n, "number of s samples");
  c_cheeger->add_option("--out", out_path, "output CSV")->required();

  auto* c_rearrange = app.add_subcommand(
      "rearrange", "decreasing and symmetric rearrangements of a CSV function");
  c_rearrange->add_option("--measure", measure_spec, "measure spec");
  c_rearrange->add_option("--in", in_path, "input CSV with x,value rows")
      ->required();
  c_rearrange->add_option("--grid-n", grid_n, "number of t samples");
  c_rearrange->add_option("--out", out_path, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  have_lambda = lam_opt->count() > 0;

  try {
    const Measure m = isoperim::parse_measure(measure_spec);
    if (app.got_subcommand(c_profile)) {
      run_profile(m, n_points, out_path);
    } else if (app.got_subcommand(c_regions)) {
      run_regions(m, grid_n, out_path, svg_path);
    } else if (app.got_subcommand(c_deficit)) {
      run_deficit(m, p, lambda, out_path);
    } else if (app.got_subcommand(c_oracle)) {
      run_oracle(m, p,
                 have_lambda ? std::optional<double>(lambda) : std::nullopt,
                 ocfg, origin_free, out_path);
    } else if (app.got_subcommand(c_cheeger)) {
      run_cheeger(m, grid_n, out_path);
    } else if (app.got_subcommand(c_rearrange)) {
      run_rearrange(m, in_path, grid_n, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
