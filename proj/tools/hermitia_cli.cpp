// Command line front end.  Subcommands:
//
//   validate   check antisymmetry, the Jacobi identities and d^2 = 0
//   curvature  curvature tensor of one connection, with constancy verdict
//   identities run the cross-route identity suite at the named parameters
//   scan       sweep the (r, s) plane for constant holomorphic sectional curvature
//   hopf       closed-form Hopf reports: curvature, constancy, flat parameters
//   btp3       threefold torsion-pattern feasibility analysis
//
// All machine output is JSON on stdout (or --json FILE); --csv FILE writes a
// flat projection where it makes sense.  Exit codes: 0 success, 1 domain or
// analysis failure, 2 malformed input.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermitia/hermitia.hpp"

namespace {

using namespace hermitia;
using nlohmann::json;

std::uint64_t env_seed() {
  const char* v = std::getenv("HERMITIA_SEED");
  if (!v) return 0;
  return std::strtoull(v, nullptr, 10);
}

void emit(const json& doc, const std::string& json_path) {
  if (json_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(json_path);
  if (!out) throw ParseError("cannot open file for writing: " + json_path);
  out << doc.dump(2) << "\n";
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  fn(out);
}

// shared options for picking a connection: either a named point or explicit (r, s)
struct ParamChoice {
  std::string named;
  std::vector<double> rs;

  ConnectionParams resolve(ConnectionParams fallback) const {
    if (!named.empty() && !rs.empty())
      throw CLI::ValidationError("give either --named or --params, not both");
    if (!named.empty()) {
      for (const auto& np : named_connection_params())
        if (named == np.name) return np.params;
      throw CLI::ValidationError("unknown connection name: " + named);
    }
    if (!rs.empty()) return {rs[0], rs[1]};
    return fallback;
  }
};

void add_param_options(CLI::App* cmd, ParamChoice& choice) {
  cmd->add_option("--named", choice.named,
                  "named connection point (chern, bismut, lichnerowicz, "
                  "levi_civita, anti_bismut, plus, minus, minimal_gauduchon)");
  cmd->add_option("--params", choice.rs, "explicit parameters r s")
      ->expected(2);
}

StructureConstants load_checked(const std::string& path, double tol) {
  StructureConstants S = load_algebra(path);
  auto rep = validate(S, tol);
  if (!rep.ok)
    throw OutsideDomainError("input does not satisfy the integrability identities");
  return S;
}

int cmd_validate(const std::string& path, double tol, const std::string& json_path) {
  StructureConstants S = load_algebra(path);
  auto rep = validate(S, tol);
  json results;
  results["validation"] = rep;
  results["d_squared_residual"] = d_squared_residual(S);
  results["n"] = S.n();
  if (rep.ok) {
    TorsionTensor T = chern_torsion(S);
    results["kahler"] = check_kahler(S, tol);
    results["nilpotent_j"] = check_nilpotent_j(S);
    results["salamon"] = check_salamon(S);
    results["balanced"] = check_balanced(S, tol);
    results["torsion_max_abs"] = T.max_abs();
    results["bismut_torsion_parallel"] = check_btp(S, tol).parallel;
  }
  emit(report_envelope("validate", json{{"file", path}, {"tol", tol}},
                       env_seed(), results),
       json_path);
  return rep.ok ? 0 : 1;
}

int cmd_curvature(const std::string& path, const ParamChoice& choice, double tol,
                  const std::string& json_path, const std::string& csv_path) {
  StructureConstants S = load_checked(path, tol);
  ConnectionParams p = choice.resolve(ConnectionParams::chern());
  CurvatureTensor R = curvature_D(S, p);
  json results;
  results["params"] = p;
  results["curvature"] = R;
  results["constancy"] = constancy_test(R, tol);
  results["flat"] = check_flat(R, tol);
  emit(report_envelope("curvature", json{{"file", path}, {"tol", tol}},
                       env_seed(), results),
       json_path);
  if (!csv_path.empty())
    write_csv_file(csv_path, [&](std::ostream& o) { curvature_to_csv(R, o); });
  return 0;
}

int cmd_identities(const std::string& path, double tol, const std::string& json_path) {
  StructureConstants S = load_checked(path, tol);
  std::vector<ConnectionParams> pts;
  for (const auto& np : named_connection_params()) pts.push_back(np.params);
  IdentityReport rep = verify_identities(S, pts, tol);
  json results;
  results["identities"] = rep;
  emit(report_envelope("identities", json{{"file", path}, {"tol", tol}},
                       env_seed(), results),
       json_path);
  return rep.all_ok ? 0 : 1;
}

int cmd_scan(const std::string& path, const ScanOptions& opt,
             const std::string& json_path, const std::string& csv_path) {
  StructureConstants S = load_checked(path, opt.tol);
  auto rows = scan_parameters(S, opt);
  json results;
  results["row_count"] = rows.size();
  auto constant_rows = json::array();
  for (const auto& row : rows)
    if (row.verdict.constant) constant_rows.push_back(row);
  results["constant_rows"] = constant_rows;
  emit(report_envelope(
           "scan",
           json{{"file", path},
                {"grid",
                 json{{"r_min", opt.r_min}, {"r_max", opt.r_max},
                      {"s_min", opt.s_min}, {"s_max", opt.s_max},
                      {"step", opt.step}}},
                {"tol", opt.tol}},
           env_seed(), results),
       json_path);
  if (!csv_path.empty())
    write_csv_file(csv_path, [&](std::ostream& o) { scan_to_csv(rows, o); });
  return 0;
}

std::vector<cplx> parse_coords(const std::vector<double>& flat) {
  if (flat.empty() || flat.size() % 2 != 0)
    throw CLI::ValidationError("--z expects re,im pairs (an even count of reals)");
  std::vector<cplx> z;
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2)
    z.emplace_back(flat[i], flat[i + 1]);
  return z;
}

int cmd_hopf(int dim, std::vector<double> zflat, const ParamChoice& choice,
             bool flat_params, double tol, const std::string& json_path) {
  json results;
  if (flat_params) {
    auto flats = hopf_flat_params(dim);
    auto arr = json::array();
    for (const auto& p : flats) arr.push_back(p);
    results["flat_params"] = arr;
    emit(report_envelope("hopf", json{{"dim", dim}, {"flat_params", true}},
                         env_seed(), results),
         json_path);
    return 0;
  }
  std::vector<cplx> z;
  if (zflat.empty()) {
    z.assign(dim, cplx{});
    z.back() = 1.0;
  } else {
    z = parse_coords(zflat);
  }
  HopfPoint pt(dim, z);
  ConnectionParams p = choice.resolve(ConnectionParams::chern());
  HopfHscReport rep = hopf_hsc_report(pt, p, tol);
  results["report"] = rep;
  results["curvature"] = hopf_curvature_D(pt, p);
  json zj = json::array();
  for (const auto& v : z) zj.push_back(json{{"re", v.real()}, {"im", v.imag()}});
  emit(report_envelope("hopf", json{{"dim", dim}, {"z", zj}, {"tol", tol}},
                       env_seed(), results),
       json_path);
  return 0;
}

int cmd_btp3(const std::string& which, const ParamChoice& choice, double lambda,
             double tol, const std::string& json_path) {
  Btp3Case c;
  if (which == "rank3")
    c = Btp3Case::Rank3;
  else if (which == "wallach")
    c = Btp3Case::Wallach;
  else if (which == "middle")
    c = Btp3Case::Middle;
  else
    throw CLI::ValidationError("--case must be rank3, wallach or middle");
  ConnectionParams p = choice.resolve(ConnectionParams::bismut());
  Btp3Verdict v = btp3_constancy_analysis(c, p, lambda, tol);
  json results;
  results["verdict"] = v;
  emit(report_envelope("btp3",
                       json{{"case", which}, {"lambda", lambda}, {"tol", tol}},
                       env_seed(), results),
       json_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant Hermitian geometry: canonical connections, torsion, curvature"};
  app.set_version_flag("--version", std::string(hermitia::kToolVersion));
  app.require_subcommand(1);

  double tol = hermitia::kDefaultTol;
  std::string file, json_path, csv_path;

  auto* validate_cmd = app.add_subcommand("validate", "check integrability of an algebra file");
  validate_cmd->add_option("file", file, "algebra JSON file")->required();
  validate_cmd->add_option("--tol", tol, "tolerance");
  validate_cmd->add_option("--json", json_path, "write the report to a file");

  ParamChoice curv_choice;
  auto* curvature_cmd = app.add_subcommand("curvature", "curvature tensor of one connection");
  curvature_cmd->add_option("file", file, "algebra JSON file")->required();
  add_param_options(curvature_cmd, curv_choice);
  curvature_cmd->add_option("--tol", tol, "tolerance");
  curvature_cmd->add_option("--json", json_path, "write the report to a file");
  curvature_cmd->add_option("--csv", csv_path, "write the tensor entries as CSV");

  auto* identities_cmd = app.add_subcommand("identities", "cross-route identity suite");
  identities_cmd->add_option("file", file, "algebra JSON file")->required();
  identities_cmd->add_option("--tol", tol, "tolerance");
  identities_cmd->add_option("--json", json_path, "write the report to a file");

  hermitia::ScanOptions scan_opt;
  auto* scan_cmd = app.add_subcommand("scan", "sweep the parameter plane for constancy");
  scan_cmd->add_option("file", file, "algebra JSON file")->required();
  scan_cmd->add_option("--r-min", scan_opt.r_min, "grid lower bound for r");
  scan_cmd->add_option("--r-max", scan_opt.r_max, "grid upper bound for r");
  scan_cmd->add_option("--s-min", scan_opt.s_min, "grid lower bound for s");
  scan_cmd->add_option("--s-max", scan_opt.s_max, "grid upper bound for s");
  scan_cmd->add_option("--step", scan_opt.step, "grid step");
  scan_cmd->add_option("--tol", scan_opt.tol, "tolerance");
  scan_cmd->add_flag("--named-points,!--no-named", scan_opt.inject_named,
                     "inject the named parameter points into the grid (default on)");
  scan_cmd->add_option("--json", json_path, "write the report to a file");
  scan_cmd->add_option("--csv", csv_path, "write all grid rows as CSV");

  int hopf_dim = 2;
  std::vector<double> hopf_z;
  bool hopf_flats = false;
  ParamChoice hopf_choice;
  auto* hopf_cmd = app.add_subcommand("hopf", "closed-form Hopf manifold reports");
  hopf_cmd->add_option("--dim", hopf_dim, "complex dimension (>= 2)");
  hopf_cmd->add_option("--z", hopf_z,
                       "point coordinates as re im pairs, e.g. --z 0 0 1 0");
  add_param_options(hopf_cmd, hopf_choice);
  hopf_cmd->add_flag("--flat-params", hopf_flats,
                     "list the parameters at which the connection is flat");
  hopf_cmd->add_option("--tol", tol, "tolerance");
  hopf_cmd->add_option("--json", json_path, "write the report to a file");

  std::string btp3_case;
  double btp3_lambda = 1.0;
  ParamChoice btp3_choice;
  auto* btp3_cmd = app.add_subcommand("btp3", "threefold torsion-pattern feasibility");
  btp3_cmd->add_option("--case", btp3_case, "rank3, wallach or middle")->required();
  add_param_options(btp3_cmd, btp3_choice);
  btp3_cmd->add_option("--lambda", btp3_lambda, "torsion scale (> 0)");
  btp3_cmd->add_option("--tol", tol, "tolerance");
  btp3_cmd->add_option("--json", json_path, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(file, tol, json_path);
    if (curvature_cmd->parsed())
      return cmd_curvature(file, curv_choice, tol, json_path, csv_path);
    if (identities_cmd->parsed()) return cmd_identities(file, tol, json_path);
    if (scan_cmd->parsed()) return cmd_scan(file, scan_opt, json_path, csv_path);
    if (hopf_cmd->parsed())
      return cmd_hopf(hopf_dim, hopf_z, hopf_choice, hopf_flats, tol, json_path);
    if (btp3_cmd->parsed())
      return cmd_btp3(btp3_case, btp3_choice, btp3_lambda, tol, json_path);
  } catch (const hermitia::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hermitia::OutsideDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
