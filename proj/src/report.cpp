#include "orlicz/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "orlicz/norms.hpp"

namespace orlicz {

namespace {

using json = nlohmann::ordered_json;

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_json(const LogGrid& g) {
  return {{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}};
}

json growth_json(const GrowthCertificate& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["K"] = c.K;
  j["x0"] = c.x0;
  j["closed_form"] = c.closed_form;
  json cx = json::array();
  for (const auto& [x, ratio] : c.counterexample) cx.push_back({x, ratio});
  j["counterexample"] = cx;
  j["window"] = grid_json(c.window);
  j["note"] = c.note;
  return j;
}

json side_json(const BoundednessCertificate::Side& s) {
  json j;
  j["verdict"] = to_string(s.verdict);
  if (std::isfinite(s.c))
    j["c"] = s.c;
  else
    j["c"] = nullptr;
  j["worst_atom"] = s.worst_atom;
  j["closed_form"] = s.closed_form;
  j["note"] = s.note;
  return j;
}

json bounds_json(const BoundednessCertificate& b) {
  json j;
  j["forward"] = side_json(b.forward);
  j["inverse"] = side_json(b.inverse);
  j["window"] = {b.window_lo, b.window_hi};
  return j;
}

json verdict_json(const Verdict& v) {
  json j;
  j["criterion"] = v.criterion;
  j["status"] = to_string(v.status);
  if (v.witness)
    j["witness"] = *v.witness;
  else
    j["witness"] = nullptr;
  j["witness_kind"] = v.witness_kind;
  j["tail_model"] = v.tail_model;
  j["values"] = v.values;
  j["note"] = v.note;
  return j;
}

json tail_json(const SequenceTail& t) {
  json j;
  using K = SequenceTail::Kind;
  switch (t.kind) {
    case K::None:
      j["kind"] = "none";
      break;
    case K::Geometric:
      j["kind"] = "geometric";
      j["ratio"] = t.ratio;
      break;
    case K::Periodic:
      j["kind"] = "periodic";
      j["cycle"] = t.cycle;
      break;
    case K::LimitZero:
      j["kind"] = "limit-zero";
      break;
    case K::LimitInfinity:
      j["kind"] = "limit-infinity";
      break;
    case K::LimitPositive:
      j["kind"] = "limit-positive";
      j["limit"] = t.limit;
      break;
  }
  j["exact"] = t.exact;
  j["provenance"] = t.provenance;
  return j;
}

json exponent_json(const ExponentEstimate& e) {
  json j;
  j["value"] = e.value;
  j["numeric_at_horizon"] = e.numeric_at_horizon;
  if (e.closed_form)
    j["closed_form"] = *e.closed_form;
  else
    j["closed_form"] = nullptr;
  j["horizon"] = e.horizon;
  j["trend"] = e.trend;
  j["window_truncated"] = e.window_truncated;
  return j;
}

json exponents_json(const ExponentEstimates& e) {
  json j;
  j["lambda_sup_Z"] = exponent_json(e.lambda_sup_Z);
  j["lambda_inf_Z"] = exponent_json(e.lambda_inf_Z);
  j["lambda_sup_N0"] = exponent_json(e.lambda_sup_N0);
  j["lambda_inf_negN0"] = exponent_json(e.lambda_inf_negN0);
  j["bwd_sup_negN0"] = exponent_json(e.bwd_sup_negN0);
  j["dec_inf_N0"] = exponent_json(e.dec_inf_N0);
  return j;
}

json dissipative_cert_json(const DissipativeCertificate& c) {
  json j;
  j["status"] = to_string(c.status);
  if (c.witness)
    j["witness"] = *c.witness;
  else
    j["witness"] = nullptr;
  j["window"] = c.window;
  j["closed_form"] = c.closed_form;
  j["note"] = c.note;
  return j;
}

json distortion_json(const DistortionEstimate& d) {
  json j;
  j["K_hat"] = d.K_hat;
  j["exhaustive"] = d.exhaustive;
  j["evidence_subsets"] = d.evidence_subsets;
  j["k_range"] = d.k_range;
  j["worst_k"] = d.worst_k;
  j["worst_subset"] = d.worst_subset;
  j["note"] = d.note;
  return j;
}

json generalized_json(const GeneralizedDistortionEstimate& g) {
  json j;
  j["H_hat"] = g.H_hat;
  j["exhaustive"] = g.exhaustive;
  j["evidence_subsets"] = g.evidence_subsets;
  j["s_range"] = g.s_range;
  j["t_range"] = g.t_range;
  j["worst_s"] = g.worst_s;
  j["worst_t"] = g.worst_t;
  j["worst_subset"] = g.worst_subset;
  j["note"] = g.note;
  return j;
}

// ---------------------------------------------------------------------------

const YoungFunction& need_phi(const Scenario& sc) {
  if (!sc.phi) throw ScenarioError("scenario: 'young' block required");
  return *sc.phi;
}

const AtomicMeasureSpace& need_space(const Scenario& sc) {
  if (!sc.space) throw ScenarioError("scenario: 'space' block required");
  return *sc.space;
}

const AtomTransformation& need_transform(const Scenario& sc) {
  if (!sc.transform)
    throw ScenarioError("scenario: 'transform' block required");
  return *sc.transform;
}

std::string criterion_group(const std::string& base) {
  if (base.rfind("Thm 2.7", 0) == 0) return "t2.7";
  if (base.rfind("Thm 2.8", 0) == 0) return "t2.8";
  if (base.rfind("Prop 2.9", 0) == 0) return "p2.9";
  if (base.rfind("Thm 2.10", 0) == 0) return "t2.10";
  return "";
}

bool criterion_enabled(const Scenario& sc, const std::string& base) {
  if (sc.criteria.empty()) return true;
  const std::string group = criterion_group(base);
  for (const auto& c : sc.criteria)
    if (c == base || (!group.empty() && c == group)) return true;
  return false;
}

int bounds_exit_code(const CompositionSystem& system) {
  const auto& b = system.bounds();
  const bool falsified =
      b.forward.verdict == BoundednessCertificate::Verdict::UnboundedEvidence ||
      b.inverse.verdict == BoundednessCertificate::Verdict::UnboundedEvidence;
  return falsified ? 3 : 0;
}

struct DissipativeParts {
  DissipativeCertificate certificate;
  DissipativeCertificate wandering;
  std::optional<DissipativeStructure> structure;
};

DissipativeParts build_dissipative(const CompositionSystem& system,
                                   const DissipativeStructure::Spec& spec) {
  DissipativeParts parts;
  parts.certificate = verify_dissipative(system, spec.W, spec.k_window);
  parts.wandering = wandering_check(system, spec.W, spec.k_window);
  if (parts.certificate.status != Status::Fails)
    parts.structure.emplace(system, spec);
  return parts;
}

// Runs one classifier guarded against precondition failures; the failure is
// recorded in `errors` instead of aborting the report.
template <typename Fn>
void guarded(json& verdicts, json& errors, const Scenario& sc,
             const std::string& base, Fn&& fn) {
  if (!criterion_enabled(sc, base)) return;
  try {
    verdicts.push_back(verdict_json(fn()));
  } catch (const PreconditionError& e) {
    errors.push_back(
        {{"criterion", base}, {"error", "precondition"}, {"message", e.what()}});
  }
}

std::vector<std::vector<long>> singleton_family(const AtomicMeasureSpace& s) {
  std::vector<std::vector<long>> family;
  for (long a : s.window_atoms()) family.push_back({a});
  return family;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

RunResult run_young(const Scenario& sc) {
  RunResult out;
  const YoungFunction& phi = need_phi(sc);
  const Delta2Certificate d2 = check_delta2(phi, sc.young_window);
  const DeltaPrimeCertificate dp = check_delta_prime(phi, sc.young_window);
  const ConjugateResult conj = conjugate(phi);

  json y;
  y["family"] = to_string(phi.family());
  if (std::isfinite(phi.param()))
    y["p"] = phi.param();
  else
    y["p"] = nullptr;
  y["strictly_positive"] = phi.strictly_positive();
  y["delta2"] = growth_json(d2);
  y["delta_prime"] = growth_json(dp);
  json cj;
  cj["closed_form"] = conj.closed_form;
  cj["x_cap"] = conj.x_cap;
  cj["undetermined_ys"] = conj.undetermined_ys.size();
  y["conjugate"] = cj;
  out.report["young"] = y;

  std::ostringstream csv;
  csv << "y,psi\n";
  for (int d = -6; d < 6; ++d) {
    for (int s = 0; s < 8; ++s) {
      const double yv = std::pow(10.0, d + s / 8.0);
      csv << num17(yv) << "," << num17(conj.psi(yv)) << "\n";
    }
  }
  csv << num17(1e6) << "," << num17(conj.psi(1e6)) << "\n";
  out.csv["conjugate_trace.csv"] = csv.str();
  return out;
}

RunResult run_norm(const Scenario& sc) {
  RunResult out;
  const YoungFunction& phi = need_phi(sc);
  const AtomicMeasureSpace& space = need_space(sc);
  if (sc.function.empty())
    throw ScenarioError("scenario: 'function' block required for norm");
  std::map<long, double> coeffs;
  for (const auto& [a, v] : sc.function) coeffs[a] = v;
  const SimpleFunction f{std::move(coeffs)};
  const NormReport nr = norm_report(space, phi, f, sc.norm_dual_grid);

  json n;
  n["support"] = f.support_size();
  n["gauge"] = nr.gauge;
  n["amemiya"] = nr.amemiya;
  if (nr.dual_grid)
    n["dual_grid"] = *nr.dual_grid;
  else
    n["dual_grid"] = nullptr;
  n["bisection_iterations"] = nr.bisection_iterations;
  n["residual"] = nr.residual;
  out.report["norm"] = n;
  return out;
}

// Shared classify/stability payload pieces.
void append_certificates(json& report, const Scenario& sc,
                         const CompositionSystem& system,
                         const Delta2Certificate& d2,
                         const DeltaPrimeCertificate& dp,
                         const std::optional<DissipativeParts>& parts) {
  json certs;
  certs["boundedness"] = bounds_json(system.bounds());
  certs["delta2"] = growth_json(d2);
  certs["delta_prime"] = growth_json(dp);
  if (parts) {
    certs["dissipativity"] = dissipative_cert_json(parts->certificate);
    certs["wandering"] = dissipative_cert_json(parts->wandering);
    if (parts->structure) {
      certs["distortion"] = distortion_json(parts->structure->distortion());
      certs["generalized_distortion"] =
          generalized_json(parts->structure->generalized());
    } else {
      certs["distortion"] = nullptr;
      certs["generalized_distortion"] = nullptr;
    }
  }
  report["certificates"] = certs;
  (void)sc;
}

void append_tails(json& report, const DissipativeStructure& st) {
  json t;
  t["mu_backward"] = tail_json(st.mu_tail(-1));
  t["mu_forward"] = tail_json(st.mu_tail(+1));
  t["a_left"] = tail_json(st.a_tail(-1));
  t["a_right"] = tail_json(st.a_tail(+1));
  report["tails"] = t;
}

std::string ratio_trace_csv(const DissipativeStructure& st, long window) {
  std::ostringstream csv;
  csv << "k,mu,a\n";
  for (long k = -window; k <= window; ++k) {
    try {
      const double log_mu = log_mu_iterate(
          st.system().space(), st.system().transform(), st.W(), k);
      csv << k << "," << num17(std::exp(log_mu)) << "," << num17(st.a(k))
          << "\n";
    } catch (const std::out_of_range&) {
      // window edge: skip unavailable iterates, keep the trace contiguous
      continue;
    }
  }
  return csv.str();
}

RunResult run_classify(const Scenario& sc) {
  RunResult out;
  const YoungFunction& phi = need_phi(sc);
  const CompositionSystem system(need_space(sc), need_transform(sc), phi);
  const Delta2Certificate d2 = check_delta2(phi, sc.young_window);
  const DeltaPrimeCertificate dp = check_delta_prime(phi, sc.young_window);
  std::optional<DissipativeParts> parts;
  if (sc.dissipative) parts = build_dissipative(system, *sc.dissipative);

  append_certificates(out.report, sc, system, d2, dp, parts);

  json verdicts = json::array();
  json errors = json::array();
  const ClassifierConfig& cfg = sc.classifier;
  const DissipativeStructure* st =
      parts && parts->structure ? &*parts->structure : nullptr;

  guarded(verdicts, errors, sc, "Thm 2.7(1)",
          [&] { return positively_expansive_general(system, cfg); });
  guarded(verdicts, errors, sc, "Thm 2.7(2)",
          [&] { return expansive_general(system, cfg); });
  guarded(verdicts, errors, sc, "Thm 2.7(3)", [&] {
    return uniform_general_heuristic(system, singleton_family(*sc.space), cfg,
                                     st);
  });
  if (st) {
    guarded(verdicts, errors, sc, "Thm 2.8(1)",
            [&] { return positively_expansive_dissipative(*st, cfg); });
    guarded(verdicts, errors, sc, "Thm 2.8(2)",
            [&] { return expansive_dissipative(*st, cfg); });
    guarded(verdicts, errors, sc, "Thm 2.8(3)", [&] {
      return uniformly_positively_expansive_dissipative(*st, d2, cfg);
    });
    guarded(verdicts, errors, sc, "Thm 2.8(4)",
            [&] { return uniformly_expansive_dissipative(*st, d2, cfg); });
    guarded(verdicts, errors, sc, "Prop 2.9",
            [&] { return structural_instability(*st, dp, cfg); });
    guarded(verdicts, errors, sc, "Thm 2.10",
            [&] { return strong_structural_stability(*st, dp, cfg); });
  }
  out.report["verdicts"] = verdicts;
  out.report["errors"] = errors;
  if (st) {
    out.report["exponents"] = exponents_json(exponent_estimates(*st, cfg));
    append_tails(out.report, *st);
    out.csv["ratio_trace.csv"] =
        ratio_trace_csv(*st, std::min<long>(cfg.horizon, 64));
  }
  out.exit_code = bounds_exit_code(system);
  return out;
}

RunResult run_stability(const Scenario& sc) {
  RunResult out;
  const YoungFunction& phi = need_phi(sc);
  const CompositionSystem system(need_space(sc), need_transform(sc), phi);
  if (!sc.dissipative)
    throw ScenarioError("scenario: 'dissipative' block required for stability");
  const Delta2Certificate d2 = check_delta2(phi, sc.young_window);
  const DeltaPrimeCertificate dp = check_delta_prime(phi, sc.young_window);
  const DissipativeParts parts = build_dissipative(system, *sc.dissipative);
  append_certificates(out.report, sc, system, d2, dp, parts);

  json verdicts = json::array();
  json errors = json::array();
  if (parts.structure) {
    const DissipativeStructure& st = *parts.structure;
    const ClassifierConfig& cfg = sc.classifier;
    const ExponentEstimates est = exponent_estimates(st, cfg);
    out.report["exponents"] = exponents_json(est);
    append_tails(out.report, st);
    guarded(verdicts, errors, sc, "Prop 2.9",
            [&] { return structural_instability(st, dp, cfg); });
    guarded(verdicts, errors, sc, "Thm 2.10",
            [&] { return strong_structural_stability(st, dp, cfg); });
    try {
      const ShadowingReport rep = shadowing_equivalence_report(st, dp, cfg);
      json sj;
      sj["hypothesis"] = verdict_json(rep.hypothesis);
      sj["stability"] = verdict_json(rep.stability);
      sj["instability"] = verdict_json(rep.instability);
      sj["implications"] = rep.implications;
      out.report["shadowing"] = sj;
    } catch (const PreconditionError& e) {
      errors.push_back({{"criterion", "shadowing"},
                        {"error", "precondition"},
                        {"message", e.what()}});
    }

    std::ostringstream csv;
    csv << "n,lambda_sup_Z,lambda_inf_Z,lambda_sup_N0,lambda_inf_negN0,"
           "bwd_sup_negN0,dec_inf_N0\n";
    const std::vector<const ExponentEstimate*> cols = {
        &est.lambda_sup_Z,    &est.lambda_inf_Z,  &est.lambda_sup_N0,
        &est.lambda_inf_negN0, &est.bwd_sup_negN0, &est.dec_inf_N0};
    size_t rows = 0;
    for (const auto* c : cols) rows = std::max(rows, c->series.size());
    for (size_t n = 0; n < rows; ++n) {
      csv << (n + 1);
      for (const auto* c : cols) {
        csv << ",";
        if (n < c->series.size()) csv << num17(c->series[n]);
      }
      csv << "\n";
    }
    out.csv["exponent_trace.csv"] = csv.str();
  } else {
    errors.push_back({{"criterion", "stability"},
                      {"error", "precondition"},
                      {"message", "dissipative decomposition fails: " +
                                      parts.certificate.note}});
  }
  out.report["verdicts"] = verdicts;
  out.report["errors"] = errors;
  out.exit_code = bounds_exit_code(system);
  return out;
}

RunResult run_probe(const Scenario& sc) {
  RunResult out;
  const YoungFunction& phi = need_phi(sc);
  const CompositionSystem system(need_space(sc), need_transform(sc), phi);
  const ProbeReport rep = expansivity_probe(system, sc.probe);

  json p;
  p["samples"] = rep.samples.size();
  p["count_exceeding"] = rep.count_exceeding;
  p["count_exceeding_forward"] = rep.count_exceeding_forward;
  p["min_sup"] = rep.min_sup;
  p["min_sup_forward"] = rep.min_sup_forward;
  p["any_truncated"] = rep.any_truncated;
  p["threshold"] = rep.config.threshold;
  p["horizon"] = rep.config.horizon;
  p["note"] = rep.note;
  out.report["probe"] = p;
  out.report["certificates"] = {{"boundedness", bounds_json(system.bounds())}};

  std::ostringstream csv;
  csv << "sample,support,sup_two_sided,argmax_two_sided,sup_forward,"
         "argmax_forward,truncated,exceeds_two_sided,exceeds_forward\n";
  for (size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    csv << i << "," << s.f.support_size() << "," << num17(s.sup_two_sided)
        << "," << s.argmax_two_sided << "," << num17(s.sup_forward) << ","
        << s.argmax_forward << "," << (s.truncated ? 1 : 0) << ","
        << (s.exceeds_two_sided ? 1 : 0) << "," << (s.exceeds_forward ? 1 : 0)
        << "\n";
  }
  out.csv["probe_samples.csv"] = csv.str();
  out.exit_code = bounds_exit_code(system);
  return out;
}

RunResult run_sweep(const Scenario& sc) {
  RunResult out;
  if (!sc.sweep) throw ScenarioError("scenario: 'sweep' block required");
  static const char* kTags[] = {"Thm 2.7(1)", "Thm 2.7(2)", "Thm 2.7(3)",
                                "Thm 2.8(1)", "Thm 2.8(2)", "Thm 2.8(3)",
                                "Thm 2.8(4)", "Prop 2.9",   "Thm 2.10"};
  json rows = json::array();
  std::ostringstream csv;
  csv << "value,forward_bounded,inverse_bounded";
  for (const char* t : kTags) csv << "," << t;
  csv << ",lambda_sup_Z,lambda_inf_Z,lambda_sup_N0,lambda_inf_negN0,"
         "bwd_sup_negN0,dec_inf_N0\n";
  int exit_code = 0;

  for (double value : sc.sweep->values) {
    const Scenario point = with_parameter(sc, sc.sweep->parameter, value);
    const YoungFunction& phi = need_phi(point);
    const CompositionSystem system(need_space(point), need_transform(point),
                                   phi);
    const Delta2Certificate d2 = check_delta2(phi, point.young_window);
    const DeltaPrimeCertificate dp = check_delta_prime(phi, point.young_window);
    std::optional<DissipativeParts> parts;
    if (point.dissipative) parts = build_dissipative(system, *point.dissipative);
    const DissipativeStructure* st =
        parts && parts->structure ? &*parts->structure : nullptr;
    const ClassifierConfig& cfg = point.classifier;

    json statuses;
    auto record = [&](const char* tag, auto&& fn) {
      if (!criterion_enabled(point, tag)) {
        statuses[tag] = "disabled";
        return;
      }
      try {
        statuses[tag] = to_string(fn().status);
      } catch (const PreconditionError&) {
        statuses[tag] = "error";
      }
    };
    record("Thm 2.7(1)", [&] { return positively_expansive_general(system, cfg); });
    record("Thm 2.7(2)", [&] { return expansive_general(system, cfg); });
    record("Thm 2.7(3)", [&] {
      return uniform_general_heuristic(system, singleton_family(*point.space),
                                       cfg, st);
    });
    if (st) {
      record("Thm 2.8(1)",
             [&] { return positively_expansive_dissipative(*st, cfg); });
      record("Thm 2.8(2)", [&] { return expansive_dissipative(*st, cfg); });
      record("Thm 2.8(3)", [&] {
        return uniformly_positively_expansive_dissipative(*st, d2, cfg);
      });
      record("Thm 2.8(4)",
             [&] { return uniformly_expansive_dissipative(*st, d2, cfg); });
      record("Prop 2.9", [&] { return structural_instability(*st, dp, cfg); });
      record("Thm 2.10",
             [&] { return strong_structural_stability(*st, dp, cfg); });
    } else {
      for (int i = 3; i < 9; ++i) statuses[kTags[i]] = "unavailable";
    }

    json row;
    row["value"] = value;
    row["boundedness"] = {
        {"forward", to_string(system.bounds().forward.verdict)},
        {"inverse", to_string(system.bounds().inverse.verdict)}};
    row["statuses"] = statuses;
    csv << num17(value) << ","
        << to_string(system.bounds().forward.verdict) << ","
        << to_string(system.bounds().inverse.verdict);
    for (const char* t : kTags)
      csv << "," << statuses[t].get<std::string>();
    if (st) {
      const ExponentEstimates est = exponent_estimates(*st, cfg);
      row["exponents"] = exponents_json(est);
      for (const auto* e :
           {&est.lambda_sup_Z, &est.lambda_inf_Z, &est.lambda_sup_N0,
            &est.lambda_inf_negN0, &est.bwd_sup_negN0, &est.dec_inf_N0})
        csv << "," << num17(e->value);
    } else {
      row["exponents"] = nullptr;
      csv << ",,,,,,";
    }
    csv << "\n";
    rows.push_back(row);
    exit_code = std::max(exit_code, bounds_exit_code(system));
  }

  out.report["sweep"] = {{"parameter", sc.sweep->parameter}, {"rows", rows}};
  out.csv["sweep.csv"] = csv.str();
  out.exit_code = exit_code;
  return out;
}

}  // namespace

RunResult run_subcommand(const std::string& subcommand, Scenario scenario,
                         std::optional<unsigned long long> seed,
                         std::optional<long> horizon) {
  if (seed) {
    scenario.probe.seed = *seed;
    if (scenario.dissipative) scenario.dissipative->subsets.seed = *seed;
  }
  if (horizon) {
    if (*horizon < 1) throw ScenarioError("scenario: horizon must be >= 1");
    scenario.classifier.horizon = *horizon;
  }

  RunResult out;
  if (subcommand == "young")
    out = run_young(scenario);
  else if (subcommand == "norm")
    out = run_norm(scenario);
  else if (subcommand == "classify")
    out = run_classify(scenario);
  else if (subcommand == "stability")
    out = run_stability(scenario);
  else if (subcommand == "probe")
    out = run_probe(scenario);
  else if (subcommand == "sweep")
    out = run_sweep(scenario);
  else
    throw std::invalid_argument("unknown subcommand '" + subcommand + "'");

  json report;
  report["tool"] = {{"name", "orlicz"}, {"version", kVersion}};
  report["subcommand"] = subcommand;
  report["seed"] = seed ? *seed : scenario.probe.seed;
  report["scenario"] = scenario.raw;
  for (auto& [key, value] : out.report.items()) report[key] = value;
  out.report = std::move(report);
  return out;
}

}  // namespace orlicz
