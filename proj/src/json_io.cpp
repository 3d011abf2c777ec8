#include "hermlab/json_io.hpp"

#include "hermlab/errors.hpp"

#include <fstream>
#include <set>

namespace hermlab {

namespace {

Json vec_to_json(const Vec6& v) {
  Json out = Json::array();
  for (int i = 0; i < kDim; ++i) out.push_back(v(i));
  return out;
}

template <typename F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

template <std::size_t N>
Json histogram_to_json(const std::array<int, N>& h) {
  Json out = Json::array();
  for (int v : h) out.push_back(v);
  return out;
}

}  // namespace

Json kform_to_json(const KForm& a) {
  Json terms = Json::array();
  const auto& ms = multi_index::masks(a.degree());
  const Eigen::VectorXd c = a.real_coeffs();
  for (size_t p = 0; p < ms.size(); ++p) {
    if (c(static_cast<int>(p)) == 0.0) continue;
    Json idx = Json::array();
    for (int i : multi_index::indices(ms[p])) idx.push_back(i + 1);
    terms.push_back({{"indices", idx}, {"c", c(static_cast<int>(p))}});
  }
  return {{"degree", a.degree()}, {"terms", terms}};
}

KForm kform_from_json(const Json& j) {
  return guarded("form", [&] {
    const int degree = j.at("degree").get<int>();
    KForm out(degree);
    for (const auto& t : j.at("terms")) {
      KForm term = KForm::scalar(t.at("c").get<double>());
      const auto idx = t.at("indices").get<std::vector<int>>();
      if (static_cast<int>(idx.size()) != degree) throw InputError("form term has the wrong number of indices");
      for (int i : idx) {
        if (i < 1 || i > kDim) throw InputError("form index out of range 1..6");
        term = wedge(term, KForm::basis({i}));
      }
      out += term;
    }
    return out;
  });
}

Json lie_to_json(const LieAlgebra6& lie) {
  Json brackets = Json::array();
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      Json out = Json::array();
      for (int k = 0; k < kDim; ++k)
        if (lie.c(k, i, j) != 0.0) out.push_back({{"k", k + 1}, {"c", lie.c(k, i, j)}});
      if (!out.empty()) brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"out", out}});
    }
  return {{"brackets", brackets}};
}

LieAlgebra6 lie_from_json(const Json& j) {
  return guarded("algebra", [&] {
    std::vector<BracketTerm> terms;
    std::set<std::pair<int, int>> seen;
    for (const auto& b : j.at("brackets")) {
      const int i = b.at("i").get<int>(), jj = b.at("j").get<int>();
      if (!seen.insert({std::min(i, jj), std::max(i, jj)}).second)
        throw InputError("bracket [e" + std::to_string(i) + ",e" + std::to_string(jj) + "] given twice");
      for (const auto& o : b.at("out")) terms.push_back({i, jj, o.at("k").get<int>(), o.at("c").get<double>()});
    }
    return lie_from_brackets(terms);
  });
}

Json matrix_to_json(const Mat6& m) {
  Json out = Json::array();
  for (int r = 0; r < kDim; ++r) out.push_back(vec_to_json(m.row(r).transpose()));
  return out;
}

Mat6 matrix_from_json(const Json& j, const std::string& what) {
  return guarded(what, [&] {
    if (!j.is_array() || j.size() != kDim) throw InputError(what + " must be a 6×6 array");
    Mat6 m;
    for (int r = 0; r < kDim; ++r) {
      if (!j[r].is_array() || j[r].size() != kDim) throw InputError(what + " must be a 6×6 array");
      for (int c = 0; c < kDim; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
  });
}

Json structure_to_json(const Metric& g, const ComplexStructure& j) {
  return {{"g", matrix_to_json(g.matrix())}, {"J", matrix_to_json(j.matrix())}};
}

std::pair<Metric, ComplexStructure> structure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("J"))
    throw InputError("structure needs both \"g\" and \"J\"");
  return {Metric(matrix_from_json(j.at("g"), "g")), ComplexStructure(matrix_from_json(j.at("J"), "J"))};
}

Json classification_to_json(const Classification& c) {
  const GHDecomposition& gh = c.gh;
  Json out;
  out["type"] = gh.type;
  out["class"] = class_label(gh.type);
  out["norms"] = {{"w1", gh.norms[0]}, {"w2", gh.norms[1]}, {"w3", gh.norms[2]}, {"w4", gh.norms[3]},
                  {"total", gh.total}};
  out["theta"] = vec_to_json(gh.theta.as_vec6());
  out["dtheta"] = kform_to_json(c.dtheta);
  out["lee_closed"] = c.lee_closed;
  out["nijenhuis"] = {{"norm", c.nijenhuis_norm}, {"n1", c.n1_norm}, {"n2", c.n2_norm}};
  if (c.nk) {
    out["nk_check"] = {{"sigma", vec_to_json(c.nk->sigma.as_vec6())},
                       {"dpsi_residual", c.nk->dpsi_residual},
                       {"dphi_residual", c.nk->dphi_residual},
                       {"normal_residual", c.nk->normal_residual}};
  } else {
    out["nk_check"] = nullptr;
  }
  return out;
}

Json integrability_to_json(const IntegrabilityReport& r) {
  Json out;
  out["verdict"] = verdict_name(r.verdict);
  out["inconclusive"] = r.inconclusive;
  out["t_residual_max"] = r.t_residual_max;
  out["r_residual_max"] = r.r_residual_max;
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  out["thresholds"] = {{"pass", kTwistorPass}, {"fail", kTwistorFail}};
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back({{"p", c.p},
                     {"t_max", c.t_max},
                     {"r_max", c.r_max},
                     {"t_histogram", histogram_to_json(c.t_histogram)},
                     {"r_histogram", histogram_to_json(c.r_histogram)}});
  out["components"] = comps;
  out["histogram_bins"] = "bin 0: r < 1e-15; bin k: 1e-(16-k) <= r < 1e-(15-k); bin 16: r >= 1";
  return out;
}

Json su3_to_json(const SU3Structure& s) {
  Json out;
  out["omega"] = kform_to_json(s.omega);
  out["psi"] = kform_to_json(s.psi);
  out["phi"] = kform_to_json(s.phi);
  out["theta"] = kform_to_json(s.theta);
  out["scale"] = s.scale;
  out["g"] = matrix_to_json(s.g.matrix());
  out["J"] = matrix_to_json(s.J.matrix());
  return out;
}

Json stability_to_json(const StabilityReport& r) {
  Json out;
  out["kappa"] = r.kappa_value;
  out["r1"] = r.r1;
  out["r2"] = r.r2;
  out["c1"] = r.c1;
  out["c2"] = r.c2;
  out["c3"] = r.c3;
  Json res = Json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  out["residuals"] = res;
  return out;
}

Json catalog_entry_to_json(const CatalogEntry& e) {
  Json out;
  out["name"] = e.name;
  out["description"] = e.description;
  out["algebra"] = lie_to_json(e.lie);
  out["structure"] = structure_to_json(e.g, e.J);
  out["expected"] = {{"type", e.expected_type}, {"twistor", e.expected_twistor}};
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

const Json& unwrap(const Json& j, const std::string& key) {
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

}  // namespace hermlab
