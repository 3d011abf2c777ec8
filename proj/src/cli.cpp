#include "hermlab/cli.hpp"

#include "hermlab/catalog.hpp"
#include "hermlab/errors.hpp"
#include "hermlab/gray_hervella.hpp"
#include "hermlab/json_io.hpp"
#include "hermlab/stable_forms.hpp"
#include "hermlab/twistor.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace hermlab {

namespace {

struct RunConfig {
  double tol = kGHRelTol;
  int samples = 200;
  std::uint64_t seed = 1;
  std::string output_path;
  std::string format = "text";
  std::string algebra_file, structure_file, omega_file, entry;
};

struct Input {
  LieAlgebra6 lie;
  Metric g = Metric::identity();
  ComplexStructure j = ComplexStructure::standard();
  std::string label;
};

Input load_input(const RunConfig& cfg) {
  if (!cfg.entry.empty()) {
    if (!cfg.algebra_file.empty() || !cfg.structure_file.empty())
      throw InputError("--entry cannot be combined with --algebra/--structure");
    const auto e = find_entry(cfg.entry);
    if (!e) throw InputError("unknown catalog entry '" + cfg.entry + "'");
    return {e->lie, e->g, e->J, e->name};
  }
  if (cfg.algebra_file.empty() || cfg.structure_file.empty())
    throw InputError("need --algebra and --structure, or --entry");
  const LieAlgebra6 lie = lie_from_json(unwrap(read_json_file(cfg.algebra_file), "algebra"));
  auto [g, j] = structure_from_json(unwrap(read_json_file(cfg.structure_file), "structure"));
  return {lie, g, j, cfg.structure_file};
}

/// Left-justifies to `width` code points.
std::string pad(const std::string& s, size_t width) {
  size_t n = 0;
  for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
  return s + std::string(n < width ? width - n : 1, ' ');
}

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

std::string vec(const Json& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + num(a[i].get<double>());
  return s + ")";
}

std::string form_text(const Json& f) {
  if (f["terms"].empty()) return "0";
  std::string s;
  for (const auto& t : f["terms"]) {
    const double c = t["c"].get<double>();
    std::string idx;
    for (const auto& i : t["indices"]) idx += std::to_string(i.get<int>());
    s += (s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) + num(std::abs(c)) + " e" + idx;
  }
  return s;
}

void classification_text(const Json& c, std::ostream& o) {
  o << "type        " << c["type"].get<std::string>() << " (" << c["class"].get<std::string>() << ")\n";
  const Json& n = c["norms"];
  o << "norms       w1 " << num(n["w1"]) << "  w2 " << num(n["w2"]) << "  w3 " << num(n["w3"]) << "  w4 "
    << num(n["w4"]) << "  total " << num(n["total"]) << "\n";
  o << "lee form    " << vec(c["theta"]) << "\n";
  o << "d(theta)    " << form_text(c["dtheta"]) << (c["lee_closed"].get<bool>() ? "  [closed]" : "  [not closed]")
    << "\n";
  const Json& nij = c["nijenhuis"];
  o << "nijenhuis   " << num(nij["norm"]) << "  (n1 " << num(nij["n1"]) << ", n2 " << num(nij["n2"]) << ")\n";
  if (!c["nk_check"].is_null()) {
    const Json& nk = c["nk_check"];
    o << "nk check    sigma " << vec(nk["sigma"]) << "  dpsi " << num(nk["dpsi_residual"]) << "  dphi "
      << num(nk["dphi_residual"]) << "\n";
  }
}

void integrability_text(const Json& r, std::ostream& o) {
  o << "verdict     " << r["verdict"].get<std::string>() << (r["inconclusive"].get<bool>() ? " (inconclusive)" : "")
    << "\n";
  o << "residuals   T " << num(r["t_residual_max"]) << "  R " << num(r["r_residual_max"]) << "\n";
  o << "sampling    " << r["samples"].get<int>() << " points per component, seed " << r["seed"].get<std::uint64_t>()
    << "\n";
  for (const auto& c : r["components"]) {
    o << "p = " << c["p"].get<int>() << "       T " << num(c["t_max"]) << "  R " << num(c["r_max"]) << "\n";
    for (const char* key : {"t_histogram", "r_histogram"}) {
      o << "  " << key << " ";
      for (const auto& b : c[key]) o << ' ' << b.get<int>();
      o << "\n";
    }
  }
}

Json cmd_classify(const RunConfig& cfg, std::ostream& text) {
  const Input in = load_input(cfg);
  const Json report = {{"tol", cfg.tol},
                       {"classification", classification_to_json(classify(in.lie, in.g, in.j, cfg.tol))}};
  text << "input       " << in.label << "\n";
  classification_text(report["classification"], text);
  return report;
}

Json cmd_twistor_check(const RunConfig& cfg, std::ostream& text) {
  const Input in = load_input(cfg);
  in.j.require_compatible(in.g);
  const IntegrabilityReport r = integrability_for_structure(in.lie, in.g, in.j, cfg.samples, cfg.seed);
  const Json report = {{"integrability", integrability_to_json(r)}};
  text << "input       " << in.label << "\n";
  integrability_text(report["integrability"], text);
  return report;
}

Json cmd_su3_construct(const RunConfig& cfg, std::ostream& text) {
  if (cfg.algebra_file.empty() || cfg.omega_file.empty()) throw InputError("need --algebra and --omega");
  const LieAlgebra6 lie = lie_from_json(unwrap(read_json_file(cfg.algebra_file), "algebra"));
  const KForm omega = kform_from_json(unwrap(read_json_file(cfg.omega_file), "omega"));
  if (omega.degree() != 2) throw InputError("--omega must hold a 2-form");
  const SU3Structure s = su3_from_2form(omega, ce_differential(lie, omega));
  const StabilityReport check = check_su3(s.omega, s.psi);
  const Classification c = classify(lie, s.g, s.J, cfg.tol);
  const bool non_closed = !c.lee_closed;
  Json report;
  report["structure"] = structure_to_json(s.g, s.J);
  report["su3"] = su3_to_json(s);
  report["check"] = stability_to_json(check);
  report["classification"] = classification_to_json(c);
  report["non_closed_lee_form"] = non_closed;
  text << "kappa       " << num(check.kappa_value) << "  (r1 r2 c1 c2 c3: " << check.r1 << check.r2 << check.c1
       << check.c2 << check.c3 << ")\n";
  text << "scale       " << num(s.scale) << "\n";
  classification_text(report["classification"], text);
  if (non_closed) text << "flag        non-closed Lee form\n";
  return report;
}

Json cmd_catalog(const std::string& name, std::ostream& text) {
  if (!name.empty()) {
    const auto e = find_entry(name);
    if (!e) throw InputError("unknown catalog entry '" + name + "'");
    const Json j = catalog_entry_to_json(*e);
    text << j.dump(2) << "\n";
    return j;
  }
  Json list = Json::array();
  for (const auto& e : catalog()) {
    list.push_back({{"name", e.name},
                    {"description", e.description},
                    {"expected", {{"type", e.expected_type}, {"twistor", e.expected_twistor}}}});
    text << pad(e.name, 16) << pad(e.expected_type, 12) << pad(e.expected_twistor, 24) << e.description << "\n";
  }
  return {{"entries", list}};
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Almost Hermitian geometry on 6-dimensional Lie algebras", "hermlab"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string catalog_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.output_path, "Write the report to this file");
    sub->add_option("--tol", cfg.tol, "Relative threshold for Gray-Hervella components")
        ->check(CLI::PositiveNumber);
  };
  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("--algebra", cfg.algebra_file, "Lie algebra JSON");
    sub->add_option("--structure", cfg.structure_file, "Structure JSON with g and J");
    sub->add_option("--entry", cfg.entry, "Use a catalog entry instead of files");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "Gray-Hervella classification");
  add_common(classify_cmd);
  add_structure(classify_cmd);

  CLI::App* twistor_cmd = app.add_subcommand("twistor-check", "Reduced twistor space integrability report");
  add_common(twistor_cmd);
  add_structure(twistor_cmd);
  twistor_cmd->add_option("--samples", cfg.samples, "Fibre points per component")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  twistor_cmd->add_option("--seed", cfg.seed, "Sampling seed");

  CLI::App* su3_cmd = app.add_subcommand("su3-construct", "SU(3) structure from an invariant 2-form");
  add_common(su3_cmd);
  su3_cmd->add_option("--algebra", cfg.algebra_file, "Lie algebra JSON")->required();
  su3_cmd->add_option("--omega", cfg.omega_file, "2-form JSON")->required();

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "List catalog entries or dump one");
  add_common(catalog_cmd);
  catalog_cmd->add_option("name", catalog_name, "Entry to dump");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : InputError("").exit_code();
  }

  try {
    std::ostringstream text;
    Json report;
    if (*classify_cmd) report = cmd_classify(cfg, text);
    else if (*twistor_cmd) report = cmd_twistor_check(cfg, text);
    else if (*su3_cmd) report = cmd_su3_construct(cfg, text);
    else report = cmd_catalog(catalog_name, text);

    const std::string body = cfg.format == "json" ? report.dump(2) + "\n" : text.str();
    if (cfg.output_path.empty()) {
      out << body;
    } else {
      std::ofstream f(cfg.output_path);
      if (!f || !(f << body)) throw InputError("cannot write " + cfg.output_path);
    }
    return 0;
  } catch (const Error& e) {
    err << "hermlab: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "hermlab: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hermlab
