#include "orlicz/scenario.hpp"

#include <fstream>
#include <map>
#include <set>

namespace orlicz {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
  throw ScenarioError("scenario: " + msg);
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing required key '") + key + "'");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

long as_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  return j.get<std::string>();
}

std::pair<long, long> as_window(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    fail(where + " must be a two-element array [lo, hi]");
  return {as_integer(j[0], where + "[0]"), as_integer(j[1], where + "[1]")};
}

YoungFunction parse_young(const json& j) {
  const std::string family = as_string(require(j, "family"), "young.family");
  try {
    if (family == "power")
      return YoungFunction::power(as_number(require(j, "p"), "young.p"));
    if (family == "power_over_p")
      return YoungFunction::power_over_p(
          as_number(require(j, "p"), "young.p"));
    if (family == "exp_minus_one") return YoungFunction::exp_minus_one();
    if (family == "p_log")
      return YoungFunction::p_log(as_number(require(j, "p"), "young.p"));
    if (family == "table") {
      const json& xs = require(j, "xs");
      const json& ys = require(j, "ys");
      if (!xs.is_array() || !ys.is_array() || xs.size() != ys.size())
        fail("young.xs and young.ys must be arrays of equal length");
      std::vector<double> xv, yv;
      for (size_t i = 0; i < xs.size(); ++i) {
        xv.push_back(as_number(xs[i], "young.xs entry"));
        yv.push_back(as_number(ys[i], "young.ys entry"));
      }
      return YoungFunction::table(std::move(xv), std::move(yv));
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("young: ") + e.what());
  }
  fail("unknown young.family '" + family + "'");
}

TailModel parse_tail(const json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "none") return TailModel::none();
    if (s == "monotone_increasing") return TailModel::monotone_increasing();
    if (s == "monotone_decreasing") return TailModel::monotone_decreasing();
    fail(where + ": unknown tail shorthand '" + s + "'");
  }
  if (!j.is_object()) fail(where + " must be a string or object");
  const std::string kind = as_string(require(j, "kind"), where + ".kind");
  if (kind == "geometric") {
    if (j.contains("ratios")) {
      const json& rs = j["ratios"];
      if (!rs.is_array() || rs.empty())
        fail(where + ".ratios must be a non-empty array");
      std::vector<double> ratios;
      for (const auto& r : rs)
        ratios.push_back(as_number(r, where + ".ratios entry"));
      return TailModel::geometric_residues(std::move(ratios));
    }
    return TailModel::geometric(as_number(require(j, "ratio"), where + ".ratio"));
  }
  if (kind == "periodic")
    return TailModel::periodic(as_integer(require(j, "period"), where + ".period"));
  fail(where + ": unknown tail kind '" + kind + "'");
}

long parse_atom_key(const std::string& key, const std::string& where) {
  try {
    size_t pos = 0;
    const long v = std::stol(key, &pos);
    if (pos != key.size()) fail(where + ": atom key '" + key + "' not an integer");
    return v;
  } catch (const std::logic_error&) {
    fail(where + ": atom key '" + key + "' not an integer");
  }
}

AtomicMeasureSpace parse_space(const json& j) {
  const json& kind_j = j.contains("kind") ? j["kind"] : require(j, "rule");
  const std::string kind = as_string(kind_j, "space.kind");
  try {
    if (kind == "geometric") {
      const auto [lo, hi] = as_window(require(j, "window"), "space.window");
      return AtomicMeasureSpace::geometric(
          as_number(require(j, "r"), "space.r"), lo, hi);
    }
    if (kind == "two_sided_exp") {
      const auto [lo, hi] = as_window(require(j, "window"), "space.window");
      return AtomicMeasureSpace::two_sided_exp(
          as_number(require(j, "base"), "space.base"), lo, hi);
    }
    if (kind == "table") {
      const json& ws = require(j, "weights");
      std::map<long, double> weights;
      if (ws.is_object()) {
        for (const auto& [key, value] : ws.items())
          weights[parse_atom_key(key, "space.weights")] =
              as_number(value, "space.weights weight");
      } else if (ws.is_array()) {
        for (const auto& row : ws) {
          if (!row.is_array() || row.size() != 2)
            fail("space.weights entries must be [atom, weight] pairs");
          weights[as_integer(row[0], "space.weights atom")] =
              as_number(row[1], "space.weights weight");
        }
      } else {
        fail("space.weights must be an object {atom: weight} or pair array");
      }
      if (weights.empty()) fail("space.weights must be non-empty");
      TailModel left = TailModel::none();
      TailModel right = TailModel::none();
      if (j.contains("tail")) {
        // shorthand: "<monotone_increasing|monotone_decreasing>_<left|right>"
        const std::string s = as_string(j["tail"], "space.tail");
        const auto cut = s.rfind('_');
        const std::string side = cut == std::string::npos ? "" : s.substr(cut + 1);
        const std::string body = cut == std::string::npos ? s : s.substr(0, cut);
        TailModel model = TailModel::none();
        if (body == "monotone_increasing")
          model = TailModel::monotone_increasing();
        else if (body == "monotone_decreasing")
          model = TailModel::monotone_decreasing();
        else
          fail("space.tail: unknown shorthand '" + s + "'");
        if (side == "left")
          left = model;
        else if (side == "right")
          right = model;
        else
          fail("space.tail: shorthand must end in _left or _right");
      }
      if (j.contains("tails")) {
        const json& t = j["tails"];
        if (!t.is_object()) fail("space.tails must be an object");
        if (t.contains("left")) left = parse_tail(t["left"], "space.tails.left");
        if (t.contains("right"))
          right = parse_tail(t["right"], "space.tails.right");
      }
      return AtomicMeasureSpace::table(weights, left, right);
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("space: ") + e.what());
  }
  fail("unknown space.kind '" + kind + "'");
}

AtomTransformation parse_transform(const json& j) {
  const std::string kind = as_string(require(j, "kind"), "transform.kind");
  try {
    if (kind == "shift")
      return AtomTransformation::shift(
          as_integer(require(j, "step"), "transform.step"));
    if (kind == "table") {
      const json& fw = j.contains("map") ? j["map"] : require(j, "forward");
      std::map<long, long> forward;
      if (fw.is_object()) {
        for (const auto& [key, value] : fw.items())
          forward[parse_atom_key(key, "transform.map")] =
              as_integer(value, "transform.map to");
      } else if (fw.is_array()) {
        for (const auto& row : fw) {
          if (!row.is_array() || row.size() != 2)
            fail("transform.map entries must be [from, to] pairs");
          forward[as_integer(row[0], "transform.map from")] =
              as_integer(row[1], "transform.map to");
        }
      } else {
        fail("transform.map must be an object {from: to} or pair array");
      }
      if (forward.empty()) fail("transform.map must be non-empty");
      const std::string off =
          as_string(require(j, "off_window"), "transform.off_window");
      if (off == "reject")
        return AtomTransformation::table(
            forward, AtomTransformation::OffWindow::Reject);
      if (off == "extend_by_shift")
        return AtomTransformation::table(
            forward, AtomTransformation::OffWindow::ExtendByShift,
            as_integer(require(j, "off_step"), "transform.off_step"));
      fail("unknown transform.off_window '" + off + "'");
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("transform: ") + e.what());
  }
  fail("unknown transform.kind '" + kind + "'");
}

DissipativeStructure::Spec parse_dissipative(const json& j) {
  DissipativeStructure::Spec spec;
  const json& w = require(j, "W");
  if (!w.is_array() || w.empty())
    fail("dissipative.W must be a non-empty array of atoms");
  for (const auto& a : w) spec.W.push_back(as_integer(a, "dissipative.W atom"));
  if (j.contains("k_window"))
    spec.k_window = as_integer(j["k_window"], "dissipative.k_window");
  if (j.contains("distortion_k"))
    spec.distortion_k = as_integer(j["distortion_k"], "dissipative.distortion_k");
  if (j.contains("gen_s")) spec.gen_s = as_integer(j["gen_s"], "dissipative.gen_s");
  if (j.contains("gen_t")) spec.gen_t = as_integer(j["gen_t"], "dissipative.gen_t");
  if (j.contains("subsets")) {
    const json& s = j["subsets"];
    if (s.is_string()) {
      if (s.get<std::string>() != "exhaustive")
        fail("dissipative.subsets string must be 'exhaustive'");
      spec.subsets.exhaustive = true;
    } else if (s.is_object()) {
      spec.subsets.exhaustive = false;
      spec.subsets.sample_count =
          as_integer(require(s, "sample"), "dissipative.subsets.sample");
      if (s.contains("seed"))
        spec.subsets.seed =
            static_cast<unsigned long long>(as_integer(s["seed"], "dissipative.subsets.seed"));
    } else {
      fail("dissipative.subsets must be 'exhaustive' or {sample, seed}");
    }
  }
  return spec;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("top level must be a JSON object");
  static const std::set<std::string> known = {
      "young",   "young_window", "space", "transform", "dissipative",
      "classifier", "probe",     "function", "norm",   "sweep",
      "out"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) fail("unknown top-level key '" + key + "'");
  }

  Scenario sc;
  sc.raw = j;
  if (j.contains("young")) sc.phi = parse_young(j["young"]);
  if (j.contains("young_window")) {
    const json& w = j["young_window"];
    sc.young_window.lo = as_number(require(w, "lo"), "young_window.lo");
    sc.young_window.hi = as_number(require(w, "hi"), "young_window.hi");
    sc.young_window.points = static_cast<int>(
        as_integer(require(w, "points"), "young_window.points"));
    if (!sc.young_window.structurally_valid())
      fail("young_window is not a valid log grid");
  }
  if (j.contains("space")) sc.space = parse_space(j["space"]);
  if (j.contains("transform")) sc.transform = parse_transform(j["transform"]);
  if (j.contains("dissipative"))
    sc.dissipative = parse_dissipative(j["dissipative"]);
  if (j.contains("classifier")) {
    const json& c = j["classifier"];
    if (c.contains("horizon"))
      sc.classifier.horizon = as_integer(c["horizon"], "classifier.horizon");
    if (c.contains("margin"))
      sc.classifier.margin = as_number(c["margin"], "classifier.margin");
    if (sc.classifier.horizon < 1) fail("classifier.horizon must be >= 1");
    if (!(sc.classifier.margin >= 0)) fail("classifier.margin must be >= 0");
    if (c.contains("criteria")) {
      const json& cr = c["criteria"];
      if (!cr.is_array()) fail("classifier.criteria must be an array");
      for (const auto& tag : cr)
        sc.criteria.push_back(as_string(tag, "classifier.criteria entry"));
    }
  }
  if (j.contains("probe")) {
    const json& p = j["probe"];
    if (p.contains("samples"))
      sc.probe.samples = as_integer(p["samples"], "probe.samples");
    if (p.contains("seed"))
      sc.probe.seed = static_cast<unsigned long long>(
          as_integer(p["seed"], "probe.seed"));
    if (p.contains("horizon"))
      sc.probe.horizon = as_integer(p["horizon"], "probe.horizon");
    if (p.contains("threshold"))
      sc.probe.threshold = as_number(p["threshold"], "probe.threshold");
    if (p.contains("M")) sc.probe.threshold = as_number(p["M"], "probe.M");
    if (p.contains("max_support"))
      sc.probe.max_support = as_integer(p["max_support"], "probe.max_support");
    if (p.contains("window")) {
      const auto [lo, hi] = as_window(p["window"], "probe.window");
      sc.probe.window_lo = lo;
      sc.probe.window_hi = hi;
    }
    if (p.contains("coef")) {
      const json& c = p["coef"];
      if (!c.is_array() || c.size() != 2)
        fail("probe.coef must be [lo, hi]");
      sc.probe.coef_lo = as_number(c[0], "probe.coef[0]");
      sc.probe.coef_hi = as_number(c[1], "probe.coef[1]");
    }
  }
  if (j.contains("function")) {
    const json& f = j["function"];
    if (!f.is_array() || f.empty())
      fail("function must be a non-empty array of [atom, value] pairs");
    for (const auto& row : f) {
      if (!row.is_array() || row.size() != 2)
        fail("function entries must be [atom, value] pairs");
      sc.function.emplace_back(as_integer(row[0], "function atom"),
                               as_number(row[1], "function value"));
    }
  }
  if (j.contains("norm")) {
    const json& n = j["norm"];
    if (n.contains("dual_grid")) {
      if (!n["dual_grid"].is_boolean()) fail("norm.dual_grid must be a bool");
      sc.norm_dual_grid = n["dual_grid"].get<bool>();
    }
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    SweepSpec sw;
    sw.parameter = as_string(require(s, "parameter"), "sweep.parameter");
    if (sw.parameter != "r" && sw.parameter != "base" && sw.parameter != "p")
      fail("sweep.parameter must be 'r', 'base' or 'p'");
    const json& vs = require(s, "values");
    if (!vs.is_array() || vs.empty())
      fail("sweep.values must be a non-empty array");
    for (const auto& v : vs) sw.values.push_back(as_number(v, "sweep value"));
    sc.sweep = std::move(sw);
  }
  if (j.contains("out")) sc.out_hint = as_string(j["out"], "out");

  // Cross-references: W atoms and listed function atoms must carry weight.
  if (sc.dissipative && sc.space) {
    for (long a : sc.dissipative->W)
      if (!sc.space->weight_available(a))
        fail("dissipative.W atom " + std::to_string(a) +
             " has no weight in the space");
  }
  if (!sc.function.empty() && sc.space) {
    for (const auto& [a, v] : sc.function) {
      (void)v;
      if (!sc.space->weight_available(a))
        fail("function atom " + std::to_string(a) +
             " has no weight in the space");
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
  return parse_scenario(j);
}

Scenario with_parameter(const Scenario& base, const std::string& parameter,
                        double value) {
  json j = base.raw;
  if (parameter == "r" || parameter == "base") {
    if (!j.contains("space") || !j["space"].contains(parameter))
      fail("sweep parameter '" + parameter + "' not present in space block");
    j["space"][parameter] = value;
  } else if (parameter == "p") {
    if (!j.contains("young") || !j["young"].contains("p"))
      fail("sweep parameter 'p' not present in young block");
    j["young"]["p"] = value;
  } else {
    fail("unknown sweep parameter '" + parameter + "'");
  }
  j.erase("sweep");
  return parse_scenario(j);
}

}  // namespace orlicz
