// Command-line front end.  One verb per invocation; every run emits a report
// (text or JSON) carrying the verdict, the numeric payload, and a provenance
// block with input digests and seeds.
//
// Exit codes: 0 computed with affirmative verdict; 1 computed with negative
// scientific verdict (contextual, non-codeployable, misclassified trial);
// 2 input or usage error; 3 resource cap exceeded.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qframe/json_io.hpp"
#include "qframe/report.hpp"

namespace {

using qframe::CapError;
using qframe::NonCodeployableError;
using qframe::Rational;
using qframe::ValidationError;
using json = qframe::io::json;
namespace io = qframe::io;
namespace cls = qframe::classifier;
namespace qq = qframe::quantum;
namespace ctx = qframe::contextuality;
namespace exp = qframe::experiments;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapExceeded = 3;

struct Common {
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", c.out, "write the report to this file");
}

int emit(const io::Report& r, const Common& c, int code) {
  const std::string body =
      c.format == "json" ? io::render_json(r) : io::render_text(r);
  if (c.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write: " << c.out << "\n";
      return kExitInputError;
    }
    f << body;
  }
  return code;
}

struct Loaded {
  json j;
  io::InputDigest digest;
};

Loaded load(const std::string& path) {
  const std::string bytes = io::read_file(path);
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw ValidationError("", "not valid JSON: " + path);
  return {std::move(j), {path, io::sha256_hex(bytes)}};
}

long assignment_cap() {
  const char* e = std::getenv("QFRAME_MAX_ASSIGNMENTS");
  if (e == nullptr) return ctx::kDefaultAssignmentCap;
  char* end = nullptr;
  long v = std::strtol(e, &end, 10);
  if (end == e || *end != '\0' || v <= 0)
    throw ValidationError(
        "", "QFRAME_MAX_ASSIGNMENTS must be a positive integer");
  return v;
}

json sparse_vector(const std::vector<double>& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0)
      out.push_back(json{{"index", i}, {"value", v[i]}});
  return out;
}

json sparse_vector(const std::vector<Rational>& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      out.push_back(
          json{{"index", i}, {"value", qframe::rational_to_string(v[i])}});
  return out;
}

json disturbance_payload(const ctx::DisturbanceReport& d) {
  return json{{"passes", d.passes},
              {"max_violation", d.max_violation},
              {"observable", d.observable},
              {"context_a", d.context_a},
              {"context_b", d.context_b}};
}

json section_payload(const ctx::SectionReport& s) {
  json p{{"feasible", s.feasible},
         {"exact", s.exact},
         {"signaling", s.signaling},
         {"assignments", s.assignments},
         {"max_marginal_error", s.max_marginal_error}};
  if (s.feasible)
    p["lambda"] = s.exact ? sparse_vector(s.lambda_exact)
                          : sparse_vector(s.lambda);
  else
    p["farkas"] = s.exact ? sparse_vector(s.farkas_exact)
                          : sparse_vector(s.farkas);
  return p;
}

json fraction_payload(const ctx::FractionReport& f) {
  json p{{"value", f.value},
         {"signaling", f.signaling},
         {"assignments", f.assignments}};
  if (f.exact) p["exact"] = qframe::rational_to_string(*f.exact);
  return p;
}

json infomorphism_payload(const cls::InfomorphismReport& r) {
  json viols = json::array();
  for (const auto& v : r.violations)
    viols.push_back(json{{"token", v.token},
                         {"type", v.type},
                         {"source_holds", v.source_holds},
                         {"target_holds", v.target_holds}});
  return json{{"valid", r.valid}, {"violations", viols}};
}

json witness_payload(const cls::CommutationWitness& w) {
  return json{{"path_a", w.path_a}, {"path_b", w.path_b},
              {"element", w.element}, {"kind", w.kind},
              {"image_a", w.image_a}, {"image_b", w.image_b}};
}

// ---------------------------------------------------------------------------

int run_validate_infomorphism(const std::string& path, const Common& c) {
  Loaded in = load(path);
  cls::Classification source, target;
  cls::Infomorphism f;
  {
    if (!in.j.is_object() || !in.j.contains("source") ||
        !in.j.contains("target") || !in.j.contains("morphism"))
      throw ValidationError("",
                            "expected fields: source, target, morphism");
    source = io::parse_classification(in.j["source"]);
    target = io::parse_classification(in.j["target"]);
    f = io::parse_infomorphism(in.j["morphism"]);
  }
  auto report = cls::validate_infomorphism(source, target, f);
  io::Report r;
  r.verb = "validate-infomorphism";
  r.verdict = report.valid ? "valid" : "invalid";
  r.payload = infomorphism_payload(report);
  r.inputs = {in.digest};
  return emit(r, c, report.valid ? kExitOk : kExitNegative);
}

int run_check_diagram(const std::string& path, const Common& c) {
  Loaded in = load(path);
  auto d = io::parse_diagram(in.j);
  d.validate_edges();
  auto report = cls::check_commutes(d);
  io::Report r;
  r.verb = "check-diagram";
  r.verdict = report.commutes ? "commutes" : "does-not-commute";
  r.payload = json{{"commutes", report.commutes}};
  if (report.witness) r.payload["witness"] = witness_payload(*report.witness);
  r.inputs = {in.digest};
  return emit(r, c, report.commutes ? kExitOk : kExitNegative);
}

int run_colimit(const std::string& path, const Common& c, bool dual) {
  Loaded in = load(path);
  auto d = io::parse_diagram(in.j);
  d.validate_edges();
  io::Report r;
  r.inputs = {in.digest};
  r.verdict = "computed";
  if (!dual) {
    auto col = cls::colimit(d);
    r.verb = "colimit";
    json arrows = json::array();
    for (const auto& f : col.cocone) arrows.push_back(io::to_json(f));
    r.payload = json{{"object", io::to_json(col.object)}, {"cocone", arrows}};
  } else {
    auto lim = cls::limit(d);
    r.verb = "limit";
    json arrows = json::array();
    for (const auto& f : lim.cone) arrows.push_back(io::to_json(f));
    r.payload = json{{"object", io::to_json(lim.object)}, {"cone", arrows}};
  }
  return emit(r, c, kExitOk);
}

int run_verify_cccd(const std::string& path, const Common& c) {
  Loaded in = load(path);
  auto cand = io::parse_cccd(in.j);
  auto report = cls::verify_cccd(cand);
  io::Report r;
  r.verb = "verify-cccd";
  r.verdict = report.verdict ? "cccd" : "not-cccd";
  r.payload = json{{"verdict", report.verdict},
                   {"arrows_valid", report.arrows_valid},
                   {"full_diagram_commutes", report.full_diagram_commutes},
                   {"core_is_colimit", report.core_is_colimit},
                   {"core_is_limit", report.core_is_limit},
                   {"details", report.details}};
  r.inputs = {in.digest};
  return emit(r, c, report.verdict ? kExitOk : kExitNegative);
}

int run_merge_cores(const std::string& path_a, const std::string& path_b,
                    const Common& c) {
  Loaded in_a = load(path_a);
  Loaded in_b = load(path_b);
  auto a = io::parse_cccd(in_a.j);
  auto b = io::parse_cccd(in_b.j);
  auto res = cls::merge_cores(a, b);
  io::Report r;
  r.verb = "merge-cores";
  r.verdict = res.merged ? "merged" : "not-merged";
  r.payload = json{{"merged", res.merged}, {"strict", res.strict}};
  if (!res.error.empty()) r.payload["error"] = res.error;
  if (res.witness) r.payload["witness"] = witness_payload(*res.witness);
  if (res.combined) r.payload["combined"] = io::to_json(*res.combined);
  r.inputs = {in_a.digest, in_b.digest};
  return emit(r, c, res.merged ? kExitOk : kExitNegative);
}

qq::SystemLayout layout_or_default(const json& j, const qq::Qrf& q) {
  if (j.is_object() && j.contains("layout"))
    return io::parse_layout(j["layout"]);
  qq::SystemLayout l;
  l.labels = q.sector;
  l.dims.assign(q.sector.size(), 2);
  return l;
}

int run_hamiltonian(const std::string& path, const Common& c) {
  Loaded in = load(path);
  if (!in.j.is_object() || !in.j.contains("qrf"))
    throw ValidationError("", "expected fields: qrf, optional layout");
  auto q = io::parse_qrf(in.j["qrf"]);
  auto layout = layout_or_default(in.j, q);
  layout.validate();
  qq::Matrix h = qq::interaction_hamiltonian(q, layout);
  io::Report r;
  r.verb = "hamiltonian";
  r.verdict = "computed";
  r.payload = json{{"matrix", io::matrix_to_json(h)},
                   {"dimension", h.rows()},
                   {"sector", q.sector},
                   {"beta", q.beta},
                   {"temperature", q.temperature}};
  r.inputs = {in.digest};
  return emit(r, c, kExitOk);
}

int run_commutator(const std::string& path, double tol, const Common& c) {
  Loaded in = load(path);
  if (!in.j.is_object() || !in.j.contains("q1") || !in.j.contains("q2"))
    throw ValidationError("", "expected fields: q1, q2, optional layout");
  auto q1 = io::parse_qrf(in.j["q1"]);
  auto q2 = io::parse_qrf(in.j["q2"]);
  qq::SystemLayout layout;
  if (in.j.contains("layout")) {
    layout = io::parse_layout(in.j["layout"]);
  } else {
    layout.labels = q1.sector;
    for (const auto& l : q2.sector)
      if (std::find(layout.labels.begin(), layout.labels.end(), l) ==
          layout.labels.end())
        layout.labels.push_back(l);
    layout.dims.assign(layout.labels.size(), 2);
  }
  layout.validate();
  double norm = qq::commutator_norm(q1, q2, layout);
  bool ok = norm <= tol;
  io::Report r;
  r.verb = "commutator";
  r.verdict = ok ? "codeployable" : "non-codeployable";
  r.payload = json{{"commutator_norm", norm},
                   {"codeployable", ok},
                   {"tolerance", tol}};
  r.inputs = {in.digest};
  return emit(r, c, ok ? kExitOk : kExitNegative);
}

int run_entropy(const std::string& path, const Common& c) {
  Loaded in = load(path);
  io::Report r;
  r.verb = "entropy";
  r.verdict = "computed";
  r.inputs = {in.digest};
  double bits = 0.0;
  if (in.j.is_object() && in.j.contains("matrix")) {
    auto rho = io::parse_density(in.j);
    bits = qq::von_neumann_entropy(rho);
  } else {
    auto s = io::parse_pure_state(in.j);
    if (in.j.contains("keep")) {
      std::vector<std::string> keep =
          in.j["keep"].get<std::vector<std::string>>();
      bits = qq::von_neumann_entropy(qq::partial_trace(s, keep));
      r.payload["keep"] = keep;
    } else {
      bits = 0.0;  // a pure state has zero entropy
    }
  }
  r.payload["bits"] = bits;
  return emit(r, c, kExitOk);
}

int run_entanglement(const std::string& path, const Common& c) {
  Loaded in = load(path);
  auto s = io::parse_pure_state(in.j);
  auto res = qq::entanglement_entropy(s);
  io::Report r;
  r.verb = "entanglement";
  r.verdict = res.bits > 1e-9 ? "entangled" : "separable";
  r.payload = json{{"bits", res.bits},
                   {"part_a", res.part_a},
                   {"part_b", res.part_b}};
  r.inputs = {in.digest};
  return emit(r, c, kExitOk);
}

int finish_model_analysis(io::Report& r, const ctx::EmpiricalModel& m,
                          double nd_tol, const Common& c) {
  const long cap = assignment_cap();
  auto disturbance = ctx::check_no_disturbance(m, nd_tol);
  auto section = ctx::has_global_section(m, cap);
  r.payload["disturbance"] = disturbance_payload(disturbance);
  r.payload["section"] = section_payload(section);
  if (disturbance.passes)
    r.payload["fraction"] = fraction_payload(ctx::contextual_fraction(m, cap));
  if (!disturbance.passes) {
    r.verdict = "signaling";
    return emit(r, c, kExitNegative);
  }
  r.verdict = section.feasible ? "noncontextual" : "contextual";
  return emit(r, c, section.feasible ? kExitOk : kExitNegative);
}

int run_check_model(const std::string& path, double nd_tol, const Common& c) {
  Loaded in = load(path);
  auto m = io::parse_model(in.j);
  io::Report r;
  r.verb = "check-model";
  r.inputs = {in.digest};
  return finish_model_analysis(r, m, nd_tol, c);
}

int run_contextual_fraction(const std::string& path, const Common& c) {
  Loaded in = load(path);
  auto m = io::parse_model(in.j);
  auto f = ctx::contextual_fraction(m, assignment_cap());
  bool noncontextual = f.exact ? (*f.exact == 0) : (f.value <= 1e-9);
  io::Report r;
  r.verb = "contextual-fraction";
  r.verdict = noncontextual ? "noncontextual" : "contextual";
  r.payload = fraction_payload(f);
  r.inputs = {in.digest};
  return emit(r, c, noncontextual ? kExitOk : kExitNegative);
}

int run_chsh(const std::string& path, const Common& c) {
  Loaded in = load(path);
  auto m = io::parse_model(in.j);
  double s = ctx::chsh_value(m);
  bool within = std::abs(s) <= 2.0 + 1e-9;
  io::Report r;
  r.verb = "chsh";
  r.verdict = within ? "within-classical-bound" : "violates-classical-bound";
  r.payload = json{{"chsh", s},
                   {"classical_bound", 2.0},
                   {"tsirelson_bound", 2.0 * std::sqrt(2.0)}};
  r.inputs = {in.digest};
  return emit(r, c, within ? kExitOk : kExitNegative);
}

int run_model_from_qrfs(const std::string& path, const std::string& mode,
                        const Common& c) {
  Loaded in = load(path);
  if (!in.j.is_object() || !in.j.contains("state") ||
      !in.j.contains("q1") || !in.j.contains("q2"))
    throw ValidationError("", "expected fields: state, q1, q2");
  auto state = io::parse_pure_state(in.j["state"]);
  auto q1 = io::parse_qrf(in.j["q1"]);
  auto q2 = io::parse_qrf(in.j["q2"]);
  auto mm = mode == "sequential" ? qq::MeasureMode::sequential
                                 : qq::MeasureMode::joint;
  auto res = ctx::empirical_model_from_qrfs(state, q1, q2, mm);
  io::Report r;
  r.verb = "model-from-qrfs";
  r.verdict = res.codeployable ? "codeployable" : "non-codeployable";
  r.payload = json{{"model", io::to_json(res.model)},
                   {"codeployable", res.codeployable},
                   {"commutator", res.commutator},
                   {"mode", mode},
                   {"note", res.note}};
  r.inputs = {in.digest};
  return emit(r, c, res.codeployable ? kExitOk : kExitNegative);
}

int run_bell(const std::optional<std::string>& path,
             const std::optional<long>& shots,
             const std::optional<std::uint64_t>& seed,
             const std::optional<double>& misalignment, const Common& c) {
  exp::BellSetup setup;
  io::Report r;
  r.verb = "bell";
  if (path) {
    Loaded in = load(*path);
    setup = io::parse_bell_setup(in.j);
    r.inputs = {in.digest};
  } else {
    // Canonical maximally violating settings.
    setup.a1_angles = {0.0, M_PI / 2.0};
    setup.a2_angles = {M_PI / 4.0, -M_PI / 4.0};
  }
  if (shots) setup.shots = *shots;
  if (seed) setup.seed = *seed;
  if (misalignment) setup.misalignment = *misalignment;
  r.seed = setup.seed;

  auto res = exp::run_bell(setup);
  json correlators = json::array();
  for (int i = 0; i < 2; ++i)
    correlators.push_back(
        json::array({res.correlators[i][0], res.correlators[i][1]}));
  r.payload = json{{"chsh", res.chsh},
                   {"correlators", correlators},
                   {"misalignment", setup.misalignment},
                   {"shots", setup.shots},
                   {"nd_tol", res.nd_tol},
                   {"model", io::to_json(res.model)},
                   {"disturbance",
                    disturbance_payload(res.report.disturbance)},
                   {"section", section_payload(res.report.section)}};
  if (res.report.fraction)
    r.payload["fraction"] = fraction_payload(*res.report.fraction);
  if (!res.report.disturbance.passes) {
    r.verdict = "signaling";
    return emit(r, c, kExitNegative);
  }
  r.verdict = res.report.section.feasible ? "noncontextual" : "contextual";
  return emit(r, c, res.report.section.feasible ? kExitOk : kExitNegative);
}

int run_qfp_pair(const std::string& path, const std::string& family,
                 const Common& c) {
  static const std::vector<std::string> kFamilies = {
      "auto", "bell-tail", "diagonal-blind", "ghz-vs-bell"};
  if (std::find(kFamilies.begin(), kFamilies.end(), family) ==
      kFamilies.end())
    throw ValidationError("/family", "unknown catalog family: " + family);
  Loaded in = load(path);
  if (!in.j.is_object() || !in.j.contains("components"))
    throw ValidationError("", "expected field: components");
  auto agent = io::parse_agent(in.j["components"]);
  io::Report r;
  r.verb = "qfp-pair";
  r.inputs = {in.digest};
  try {
    auto pair = exp::construct_adversarial_pair(agent, family);
    r.verdict = "adversarial-pair";
    r.payload = json{{"family", pair.family},
                     {"max_discrepancy", pair.max_discrepancy},
                     {"delta_s_bits", pair.delta_s_bits},
                     {"state_a", io::to_json(pair.state_a)},
                     {"state_b", io::to_json(pair.state_b)}};
    return emit(r, c, kExitOk);
  } catch (const ValidationError& e) {
    // The agent is well formed, so this is a scientific verdict: the
    // requested family (or the whole catalog) does not defeat it.
    r.verdict = "not-defeated";
    r.payload = json{{"family", family}, {"reason", e.what()}};
    return emit(r, c, kExitNegative);
  }
}

int run_qfp_trial(const std::string& path, const Common& c) {
  Loaded in = load(path);
  auto inst = io::parse_qfp_instance(in.j);
  auto res = exp::run_qfp_trial(inst);
  io::Report r;
  r.verb = "qfp-trial";
  r.verdict = res.classification;
  r.payload = json{{"classification", res.classification},
                   {"truth_changed", res.truth_changed},
                   {"agent_changed", res.agent_changed},
                   {"entropy_before", res.entropy_before},
                   {"entropy_after", res.entropy_after},
                   {"max_stat_change", res.max_stat_change}};
  r.inputs = {in.digest};
  return emit(r, c, res.classification == "correct" ? kExitOk
                                                    : kExitNegative);
}

int run_thermo(const std::string& path, const std::optional<double>& epsilon,
               const std::optional<std::uint64_t>& seed,
               const std::optional<int>& trials, const Common& c) {
  Loaded in = load(path);
  auto setup = io::parse_thermo_setup(in.j);
  if (epsilon) setup.epsilon = *epsilon;
  if (seed) setup.seed = *seed;
  if (trials) setup.trials = *trials;
  setup.validate();
  auto res = exp::thermo_context_demo(setup);
  io::Report r;
  r.verb = "thermo-demo";
  r.verdict = "bounded";
  r.seed = setup.seed;
  r.payload = json{{"epsilon", setup.epsilon},
                   {"trials", setup.trials},
                   {"max_drift", res.max_drift},
                   {"bound", res.bound},
                   {"per_trial", res.per_trial}};
  r.inputs = {in.digest};
  return emit(r, c, kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qframe: classifications, quantum reference frames, and "
      "contextuality analyses"};
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  std::string path_a, path_b, mode = "joint", family = "auto";
  double tolerance = qq::kTolCommute;
  double nd_tol_val = 1e-9;
  long shots_val = 0;
  std::uint64_t seed_val = 0;
  double mis_val = 0.0, eps_val = 0.0;
  int trials_val = 1;

  {
    auto* sub = app.add_subcommand("validate-infomorphism",
                                   "check the infomorphism condition "
                                   "exhaustively");
    sub->add_option("input", path_a, "file with source, target, morphism")
        ->required();
    add_common(sub, common);
    sub->callback(
        [&] { action = [&] { return run_validate_infomorphism(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand(
        "check-diagram", "check that all parallel paths of a diagram agree");
    sub->add_option("input", path_a, "diagram file")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&] { return run_check_diagram(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand("colimit",
                                   "colimit classification and cocone");
    sub->add_option("input", path_a, "diagram file")->required();
    add_common(sub, common);
    sub->callback(
        [&] { action = [&] { return run_colimit(path_a, common, false); }; });
  }
  {
    auto* sub = app.add_subcommand("limit", "limit classification and cone");
    sub->add_option("input", path_a, "diagram file")->required();
    add_common(sub, common);
    sub->callback(
        [&] { action = [&] { return run_colimit(path_a, common, true); }; });
  }
  {
    auto* sub = app.add_subcommand(
        "verify-cccd", "verify the colimit-and-limit core property");
    sub->add_option("input", path_a, "candidate file")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&] { return run_verify_cccd(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand("merge-cores",
                                   "merge two verified cores over the union "
                                   "of their bases");
    sub->add_option("first", path_a, "first candidate file")->required();
    sub->add_option("second", path_b, "second candidate file")->required();
    add_common(sub, common);
    sub->callback(
        [&] { action = [&] { return run_merge_cores(path_a, path_b, common); }; });
  }
  {
    auto* sub = app.add_subcommand("hamiltonian",
                                   "interaction Hamiltonian of a QRF");
    sub->add_option("input", path_a, "file with qrf and optional layout")
        ->required();
    add_common(sub, common);
    sub->callback([&] { action = [&] { return run_hamiltonian(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand(
        "commutator", "worst pairwise commutator norm of two QRFs");
    sub->add_option("input", path_a, "file with q1, q2, optional layout")
        ->required();
    sub->add_option("--tolerance", tolerance,
                    "co-deployability threshold on the norm");
    add_common(sub, common);
    sub->callback([&] {
      action = [&] { return run_commutator(path_a, tolerance, common); };
    });
  }
  {
    auto* sub = app.add_subcommand("entropy",
                                   "von Neumann entropy (density matrix, or "
                                   "reduced pure state via a keep list)");
    sub->add_option("input", path_a, "state or density file")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&] { return run_entropy(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand(
        "entanglement", "entanglement entropy over all bipartitions");
    sub->add_option("input", path_a, "pure state file")->required();
    add_common(sub, common);
    sub->callback(
        [&] { action = [&] { return run_entanglement(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand("check-model",
                                   "no-disturbance, global section, and "
                                   "contextual fraction of a model");
    sub->add_option("input", path_a, "empirical model file")->required();
    sub->add_option("--tolerance", nd_tol_val, "no-disturbance tolerance");
    add_common(sub, common);
    sub->callback([&] {
      action = [&] { return run_check_model(path_a, nd_tol_val, common); };
    });
  }
  {
    auto* sub = app.add_subcommand("contextual-fraction",
                                   "1 - max noncontextual weight");
    sub->add_option("input", path_a, "empirical model file")->required();
    add_common(sub, common);
    sub->callback(
        [&] { action = [&] { return run_contextual_fraction(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand("chsh", "CHSH combination of a 2x2 model");
    sub->add_option("input", path_a, "empirical model file")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&] { return run_chsh(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand(
        "model-from-qrfs", "Born tables from deploying two QRFs on a state");
    sub->add_option("input", path_a, "file with state, q1, q2")->required();
    sub->add_option("--mode", mode, "joint or sequential")
        ->check(CLI::IsMember({"joint", "sequential"}));
    add_common(sub, common);
    sub->callback([&] {
      action = [&] { return run_model_from_qrfs(path_a, mode, common); };
    });
  }
  {
    auto* sub = app.add_subcommand("bell",
                                   "two-observer Bell experiment with "
                                   "optional misalignment and shot noise");
    auto* in_opt = sub->add_option("input", path_a, "setup file (optional)");
    auto* shots_opt = sub->add_option("--shots", shots_val,
                                      "samples per context (0 = exact)");
    auto* seed_opt = sub->add_option("--seed", seed_val, "sampling seed");
    auto* mis_opt =
        sub->add_option("--misalignment", mis_val, "frame angle in [0, pi]");
    add_common(sub, common);
    sub->callback([&, in_opt, shots_opt, seed_opt, mis_opt] {
      action = [&, in_opt, shots_opt, seed_opt, mis_opt] {
        return run_bell(
            in_opt->count() ? std::optional<std::string>(path_a)
                            : std::nullopt,
            shots_opt->count() ? std::optional<long>(shots_val) : std::nullopt,
            seed_opt->count() ? std::optional<std::uint64_t>(seed_val)
                              : std::nullopt,
            mis_opt->count() ? std::optional<double>(mis_val) : std::nullopt,
            common);
      };
    });
  }
  {
    auto* sub = app.add_subcommand(
        "qfp-pair", "construct an adversarial state pair for an agent");
    sub->add_option("input", path_a, "file with components")->required();
    sub->add_option("--family", family,
                    "bell-tail, diagonal-blind, ghz-vs-bell, or auto");
    add_common(sub, common);
    sub->callback([&] {
      action = [&] { return run_qfp_pair(path_a, family, common); };
    });
  }
  {
    auto* sub = app.add_subcommand(
        "qfp-trial", "run one frame-problem trial and classify the verdict");
    sub->add_option("input", path_a, "instance file")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&] { return run_qfp_trial(path_a, common); }; });
  }
  {
    auto* sub = app.add_subcommand(
        "thermo-demo", "agent statistic drift under random thermal kicks");
    sub->add_option("input", path_a, "setup file")->required();
    auto* eps_opt = sub->add_option("--epsilon", eps_val, "coupling strength");
    auto* seed_opt = sub->add_option("--seed", seed_val, "kick seed");
    auto* trials_opt = sub->add_option("--trials", trials_val, "trial count");
    add_common(sub, common);
    sub->callback([&, eps_opt, seed_opt, trials_opt] {
      action = [&, eps_opt, seed_opt, trials_opt] {
        return run_thermo(
            path_a,
            eps_opt->count() ? std::optional<double>(eps_val) : std::nullopt,
            seed_opt->count() ? std::optional<std::uint64_t>(seed_val)
                              : std::nullopt,
            trials_opt->count() ? std::optional<int>(trials_val)
                                : std::nullopt,
            common);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  io::Report err;
  err.verb = app.get_subcommands().empty()
                 ? "unknown"
                 : app.get_subcommands()[0]->get_name();
  try {
    return action();
  } catch (const CapError& e) {
    err.verdict = "cap-exceeded";
    err.payload = json{{"error", e.what()}};
    return emit(err, common, kExitCapExceeded);
  } catch (const NonCodeployableError& e) {
    err.verdict = "non-codeployable";
    err.payload = json{{"error", e.what()}};
    return emit(err, common, kExitNegative);
  } catch (const ValidationError& e) {
    err.verdict = "input-error";
    json viols = json::array();
    for (const auto& v : e.violations())
      viols.push_back(json{{"pointer", v.pointer}, {"message", v.message}});
    err.payload = json{{"error", e.what()}, {"violations", viols}};
    return emit(err, common, kExitInputError);
  } catch (const std::exception& e) {
    err.verdict = "input-error";
    err.payload = json{{"error", e.what()}};
    return emit(err, common, kExitInputError);
  }
}
