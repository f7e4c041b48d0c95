#include "homog/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace homog {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  raise(Errc::config_invalid, "config key '" + key + "': " + why);
}

const json& require_object(const json& j, const std::string& key) {
  if (!j.is_object()) bad_key(key, "expected an object");
  return j;
}

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) bad_key(key, "expected a number");
  return j.get<double>();
}

int require_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad_key(key, "expected an integer");
  return j.get<int>();
}

std::string require_string(const json& j, const std::string& key) {
  if (!j.is_string()) bad_key(key, "expected a string");
  return j.get<std::string>();
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& scope) {
  for (const auto& [k, v] : obj.items())
    if (!known.count(k)) bad_key(scope.empty() ? k : scope + "." + k, "unknown key");
}

Mat2 parse_matrix(const json& j, const std::string& key) {
  Mat2 m;
  if (j.is_array() && j.size() == 4) {  // row-major flat form
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < 2; ++c) m(i, c) = require_number(j[2 * i + c], key);
    return m;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[1].is_array() &&
      j[1].size() == 2) {
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < 2; ++c) m(i, c) = require_number(j[i][c], key);
    return m;
  }
  bad_key(key, "expected a 2x2 matrix as 4 row-major numbers");
}

TrigEntry parse_trig_entry(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown_keys(j, {"constant", "cos", "sin"}, key);
  TrigEntry e;
  if (j.contains("constant")) e.constant = require_number(j["constant"], key + ".constant");
  for (const char* part : {"cos", "sin"}) {
    if (!j.contains(part)) continue;
    const json& arr = j[part];
    if (!arr.is_array()) bad_key(key + "." + part, "expected an array of amplitudes");
    auto& target = (std::string(part) == "cos") ? e.cos_amp : e.sin_amp;
    for (const auto& v : arr) target.push_back(require_number(v, key + "." + part));
  }
  return e;
}

PeriodicProfile parse_profile(const json& j) {
  require_object(j, "profile");
  reject_unknown_keys(j, {"layers", "smooth"}, "profile");
  if (j.contains("layers") == j.contains("smooth"))
    bad_key("profile", "expected exactly one of 'layers' or 'smooth'");

  try {
    if (j.contains("layers")) {
      const json& arr = j["layers"];
      if (!arr.is_array() || arr.empty()) bad_key("profile.layers", "expected a non-empty array");
      std::vector<Layer> layers;
      for (const auto& lj : arr) {
        require_object(lj, "profile.layers[]");
        reject_unknown_keys(lj, {"fraction", "matrix"}, "profile.layers[]");
        if (!lj.contains("fraction") || !lj.contains("matrix"))
          bad_key("profile.layers[]", "each layer needs 'fraction' and 'matrix'");
        layers.push_back({require_number(lj["fraction"], "profile.layers[].fraction"),
                          parse_matrix(lj["matrix"], "profile.layers[].matrix")});
      }
      return PeriodicProfile::piecewise(std::move(layers));
    }
    const json& sm = j["smooth"];
    require_object(sm, "profile.smooth");
    reject_unknown_keys(sm, {"a11", "a12", "a21", "a22"}, "profile.smooth");
    std::array<std::array<TrigEntry, 2>, 2> entries;
    const char* names[2][2] = {{"a11", "a12"}, {"a21", "a22"}};
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < 2; ++c)
        if (sm.contains(names[i][c]))
          entries[i][c] = parse_trig_entry(sm[names[i][c]], std::string("profile.smooth.") + names[i][c]);
    return PeriodicProfile::smooth(std::move(entries));
  } catch (const Error& e) {
    if (e.code() == Errc::config_invalid) throw;
    bad_key("profile", e.what());
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

StudyConfig RunConfig::study_config(bool quotient_checks) const {
  StudyConfig cfg{profile,
                  epsilons,
                  n_cells,
                  source == "manufactured" ? StudySource::manufactured_sine : StudySource::zero,
                  lift == "x1+x2" ? StudyLift::x1_plus_x2 : StudyLift::x1,
                  polynomial_degree,
                  subdomain,
                  1e-10,
                  quotient_checks};
  return cfg;
}

RunConfig parse_run_config(const std::string& text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) raise(Errc::config_invalid, "config is not valid JSON");
  require_object(doc, "<root>");
  reject_unknown_keys(doc, {"grid", "profile", "epsilons", "study", "subdomain", "tests", "output"},
                      "");

  RunConfig cfg;

  if (doc.contains("grid")) {
    const json& g = require_object(doc["grid"], "grid");
    reject_unknown_keys(g, {"n_cells"}, "grid");
    if (g.contains("n_cells")) cfg.n_cells = require_int(g["n_cells"], "grid.n_cells");
    if (cfg.n_cells < 2) bad_key("grid.n_cells", "must be at least 2");
  }

  if (!doc.contains("profile")) bad_key("profile", "missing");
  cfg.profile = parse_profile(doc["profile"]);

  if (doc.contains("epsilons")) {
    const json& arr = doc["epsilons"];
    if (!arr.is_array() || arr.empty()) bad_key("epsilons", "expected a non-empty array");
    cfg.epsilons.clear();
    for (const auto& v : arr) cfg.epsilons.push_back(require_number(v, "epsilons"));
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double e : cfg.epsilons) {
    if (!(e > 0.0) || e > 1.0) bad_key("epsilons", "values must lie in (0, 1]");
    const double k = std::round(1.0 / e);
    if (k < 1.0 || std::abs(e * k - 1.0) > 1e-12)
      bad_key("epsilons", "values must be reciprocals of integers");
    if (!(e < prev)) bad_key("epsilons", "list must be strictly decreasing");
    prev = e;
  }
  const double h = 1.0 / cfg.n_cells;
  if (h > cfg.epsilons.back() * cfg.profile.min_fraction() / 4.0)
    bad_key("epsilons", "grid.n_cells does not resolve the smallest epsilon (need h <= eps*theta_min/4)");

  if (doc.contains("study")) {
    const json& s = require_object(doc["study"], "study");
    reject_unknown_keys(s, {"source", "lift"}, "study");
    if (s.contains("source")) cfg.source = require_string(s["source"], "study.source");
    if (s.contains("lift")) cfg.lift = require_string(s["lift"], "study.lift");
    if (cfg.source != "zero-affine" && cfg.source != "manufactured")
      bad_key("study.source", "expected 'zero-affine' or 'manufactured'");
    if (cfg.lift != "x1" && cfg.lift != "x1+x2")
      bad_key("study.lift", "expected 'x1' or 'x1+x2'");
  }

  if (doc.contains("subdomain")) {
    const json& s = require_object(doc["subdomain"], "subdomain");
    reject_unknown_keys(s, {"rectangle"}, "subdomain");
    if (s.contains("rectangle")) {
      const json& r = s["rectangle"];
      if (!r.is_array() || r.size() != 4)
        bad_key("subdomain.rectangle", "expected [x0, y0, x1, y1]");
      cfg.subdomain = {require_number(r[0], "subdomain.rectangle"),
                       require_number(r[1], "subdomain.rectangle"),
                       require_number(r[2], "subdomain.rectangle"),
                       require_number(r[3], "subdomain.rectangle")};
    }
  }
  if (!(cfg.subdomain.x0 < cfg.subdomain.x1 && cfg.subdomain.y0 < cfg.subdomain.y1) ||
      cfg.subdomain.x0 <= 0.0 || cfg.subdomain.y0 <= 0.0 || cfg.subdomain.x1 >= 1.0 ||
      cfg.subdomain.y1 >= 1.0)
    bad_key("subdomain.rectangle", "must be strictly inside the unit square");

  if (doc.contains("tests")) {
    const json& t = require_object(doc["tests"], "tests");
    reject_unknown_keys(t, {"polynomial_degree"}, "tests");
    if (t.contains("polynomial_degree"))
      cfg.polynomial_degree = require_int(t["polynomial_degree"], "tests.polynomial_degree");
    if (cfg.polynomial_degree < 0 || cfg.polynomial_degree > 3)
      bad_key("tests.polynomial_degree", "must lie in [0, 3]");
  }

  if (doc.contains("output")) {
    const json& o = require_object(doc["output"], "output");
    reject_unknown_keys(o, {"directory"}, "output");
    if (o.contains("directory")) cfg.output_dir = require_string(o["directory"], "output.directory");
    if (cfg.output_dir.empty()) bad_key("output.directory", "must not be empty");
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::config_invalid, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string print_run_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"grid\": {\"n_cells\": " << cfg.n_cells << "},\n";
  out << "  \"profile\": {";
  if (cfg.profile.is_piecewise()) {
    out << "\"layers\": [";
    bool first = true;
    for (const auto& l : cfg.profile.layers()) {
      if (!first) out << ", ";
      first = false;
      out << "{\"fraction\": " << fmt17(l.fraction) << ", \"matrix\": [";
      for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c)
          out << fmt17(l.matrix(i, c)) << (i == 1 && c == 1 ? "" : ", ");
      out << "]}";
    }
    out << "]";
  } else {
    out << "\"smooth\": {";
    const char* names[2][2] = {{"a11", "a12"}, {"a21", "a22"}};
    bool first = true;
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < 2; ++c) {
        const TrigEntry& e = cfg.profile.smooth_entries()[i][c];
        if (!first) out << ", ";
        first = false;
        out << "\"" << names[i][c] << "\": {\"constant\": " << fmt17(e.constant);
        out << ", \"cos\": [";
        for (std::size_t m = 0; m < e.cos_amp.size(); ++m)
          out << (m ? ", " : "") << fmt17(e.cos_amp[m]);
        out << "], \"sin\": [";
        for (std::size_t m = 0; m < e.sin_amp.size(); ++m)
          out << (m ? ", " : "") << fmt17(e.sin_amp[m]);
        out << "]}";
      }
    out << "}";
  }
  out << "},\n";
  out << "  \"epsilons\": [";
  for (std::size_t k = 0; k < cfg.epsilons.size(); ++k)
    out << (k ? ", " : "") << fmt17(cfg.epsilons[k]);
  out << "],\n";
  out << "  \"study\": {\"source\": \"" << cfg.source << "\", \"lift\": \"" << cfg.lift
      << "\"},\n";
  out << "  \"subdomain\": {\"rectangle\": [" << fmt17(cfg.subdomain.x0) << ", "
      << fmt17(cfg.subdomain.y0) << ", " << fmt17(cfg.subdomain.x1) << ", "
      << fmt17(cfg.subdomain.y1) << "]},\n";
  out << "  \"tests\": {\"polynomial_degree\": " << cfg.polynomial_degree << "},\n";
  out << "  \"output\": {\"directory\": \"" << cfg.output_dir << "\"}\n";
  out << "}\n";
  return out.str();
}

}  // namespace homog
