#include <doctest.h>

#include <cmath>

#include "qframe/json_io.hpp"
#include "qframe/report.hpp"

using namespace qframe;
using io::json;

namespace {

classifier::Classification tiny_classification() {
  classifier::Classification c;
  c.id = "A";
  c.tokens = {"t1", "t2"};
  c.types = {"p", "q", "r"};
  c.incidence = {{true, false, true}, {false, true, false}};
  return c;
}

classifier::ClassifierDiagram span_diagram() {
  classifier::ClassifierDiagram d;
  classifier::Classification a = tiny_classification();
  classifier::Classification b = tiny_classification();
  b.id = "B";
  d.nodes = {a, b};
  classifier::DiagramEdge e;
  e.id = "f";
  e.source = 0;
  e.target = 1;
  e.morphism.source_id = "A";
  e.morphism.target_id = "B";
  for (const auto& t : a.types) e.morphism.type_map[t] = t;
  for (const auto& t : b.tokens) e.morphism.token_map[t] = t;
  d.edges = {e};
  return d;
}

quantum::PureState phi_plus_state() {
  quantum::PureState s;
  s.layout.labels = {"1", "2"};
  s.layout.dims = {2, 2};
  s.amplitudes = quantum::Vector::Zero(4);
  s.amplitudes(0) = 1.0 / std::sqrt(2.0);
  s.amplitudes(3) = 1.0 / std::sqrt(2.0);
  return s;
}

quantum::Qrf z_qrf(const std::string& id, const std::string& label) {
  quantum::Qrf q;
  q.id = id;
  q.sector = {label};
  quantum::Observable o;
  o.sector = {label};
  o.matrix = quantum::Matrix(2, 2);
  o.matrix << 1, 0, 0, -1;
  o.dichotomic = true;
  q.observables = {o};
  q.weights = {1.0};
  return q;
}

// Serialize, re-parse, serialize again; the two serializations must agree.
template <typename T, typename Parse>
void round_trip(const T& value, Parse parse) {
  json first = io::to_json(value);
  std::string text = first.dump();
  T back = parse(json::parse(text));
  CHECK(io::to_json(back) == first);
}

}  // namespace

TEST_CASE("round trips over the whole type corpus") {
  round_trip(tiny_classification(), io::parse_classification);
  round_trip(span_diagram(), io::parse_diagram);

  classifier::Infomorphism f = span_diagram().edges[0].morphism;
  json fj = io::to_json(f);
  CHECK(io::to_json(io::parse_infomorphism(fj)) == fj);

  round_trip(phi_plus_state(), io::parse_pure_state);
  round_trip(quantum::partial_trace(phi_plus_state(), {"1"}),
             io::parse_density);
  round_trip(z_qrf("Z", "1").observables[0], io::parse_observable);
  round_trip(z_qrf("Z", "1"), io::parse_qrf);

  auto qrf_model = contextuality::empirical_model_from_qrfs(
      phi_plus_state(), z_qrf("Z1", "1"), z_qrf("Z2", "2"),
      quantum::MeasureMode::joint);
  round_trip(qrf_model.model.scenario, io::parse_scenario);
  round_trip(qrf_model.model, io::parse_model);

  experiments::BellSetup setup;
  setup.a1_angles = {0.0, M_PI / 2};
  setup.a2_angles = {M_PI / 4, -M_PI / 4};
  setup.misalignment = 0.3;
  setup.shots = 250;
  setup.seed = 42;
  round_trip(setup, io::parse_bell_setup);

  std::vector<experiments::AgentComponent> agent;
  agent.push_back({"Z", z_qrf("Z", "1")});
  json aj = io::agent_to_json(agent);
  CHECK(io::agent_to_json(io::parse_agent(aj)) == aj);

  experiments::QfpInstance inst;
  inst.environment = phi_plus_state();
  inst.components = agent;
  inst.action.unitary = quantum::Matrix::Identity(2, 2);
  inst.action.targets = {"2"};
  round_trip(inst, io::parse_qfp_instance);

  experiments::ThermoSetup thermo;
  thermo.state = phi_plus_state();
  thermo.agent = agent;
  thermo.epsilon = 0.25;
  thermo.seed = 9;
  thermo.trials = 2;
  round_trip(thermo, io::parse_thermo_setup);
}

TEST_CASE("exact probability strings survive a round trip") {
  auto third = contextuality::ProbEntry::of(Rational(1, 3));
  contextuality::EmpiricalModel m;
  m.scenario.observables = {{"a", {"+1", "-1"}}};
  m.scenario.contexts = {{"a"}};
  m.tables = {{third, contextuality::ProbEntry::of(Rational(2, 3))}};

  json j = io::to_json(m);
  CHECK(j["tables"][0][0] == json("1/3"));
  auto back = io::parse_model(j);
  REQUIRE(back.all_rational());
  CHECK(*back.tables[0][0].exact == Rational(1, 3));
  CHECK(*back.tables[0][1].exact == Rational(2, 3));

  // Dyadic/decimal denominators render as terminating decimals.
  m.tables = {{contextuality::ProbEntry::of(Rational(1, 4)),
               contextuality::ProbEntry::of(Rational(3, 4))}};
  j = io::to_json(m);
  CHECK(j["tables"][0][0] == json("0.25"));
  CHECK(*io::parse_model(j).tables[0][0].exact == Rational(1, 4));

  // Plain JSON numbers stay on the floating path.
  j["tables"][0][0] = 0.25;
  j["tables"][0][1] = 0.75;
  CHECK_FALSE(io::parse_model(j).all_rational());
}

TEST_CASE("digit runs with leading zeros parse as decimal") {
  // cpp_int's string constructor would read "0625" as octal.
  CHECK(*rational_from_string("0.0625") == Rational(1, 16));
  CHECK(*rational_from_string("-0.0625") == Rational(-1, 16));
  CHECK(*rational_from_string("2.0098") == Rational(10049, 5000));
  CHECK(*rational_from_string("007") == Rational(7));
  CHECK(*rational_from_string("1/016") == Rational(1, 16));
  CHECK(*rational_from_string("0.000") == Rational(0));
  CHECK(rational_to_string(Rational(1, 16)) == "0.0625");
}

TEST_CASE("state file with a broken norm names normalization") {
  json j = io::to_json(phi_plus_state());
  j["amplitudes"][0] = json::array({0.9, 0.0});
  j["amplitudes"][3] = json::array({0.0, 0.0});
  CHECK_THROWS_WITH_AS(io::parse_pure_state(j),
                       doctest::Contains("normalization"), ValidationError);

  // Length mismatch against the layout is caught before validation.
  json k = io::to_json(phi_plus_state());
  k["amplitudes"].erase(3);
  CHECK_THROWS_WITH_AS(io::parse_pure_state(k),
                       doctest::Contains("layout dimension"), ValidationError);
}

TEST_CASE("model whose table sums to 1.01 reports the context index") {
  auto qrf_model = contextuality::empirical_model_from_qrfs(
      phi_plus_state(), z_qrf("Z1", "1"), z_qrf("Z2", "2"),
      quantum::MeasureMode::joint);
  json j = io::to_json(qrf_model.model);
  j["tables"][0][0] = 0.51;
  j["tables"][0][3] = 0.50;
  try {
    io::parse_model(j);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("/tables/0") != std::string::npos);
    CHECK(std::string(e.what()).find("sum") != std::string::npos);
  }
}

TEST_CASE("structural errors are accumulated with one pointer each") {
  json j{{"id", "A"}};  // tokens, types, incidence all missing
  try {
    io::parse_classification(j);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 3);
    CHECK(e.violations()[0].pointer == "/tokens");
    CHECK(e.violations()[1].pointer == "/types");
    CHECK(e.violations()[2].pointer == "/incidence");
  }

  json s = io::to_json(phi_plus_state());
  s["amplitudes"][1] = "oops";
  s["layout"]["dims"][0] = "two";
  try {
    io::parse_pure_state(s);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 2);
    CHECK(e.violations()[0].pointer == "/layout/dims/0");
    CHECK(e.violations()[1].pointer == "/amplitudes/1");
  }
}

TEST_CASE("diagram edges resolve node ids") {
  json j = io::to_json(span_diagram());
  j["edges"][0]["target"] = "Z";
  CHECK_THROWS_WITH_AS(io::parse_diagram(j), doctest::Contains("unknown node"),
                       ValidationError);
}

TEST_CASE("probability literals must parse") {
  auto qrf_model = contextuality::empirical_model_from_qrfs(
      phi_plus_state(), z_qrf("Z1", "1"), z_qrf("Z2", "2"),
      quantum::MeasureMode::joint);
  json j = io::to_json(qrf_model.model);
  j["tables"][1][2] = "half";
  CHECK_THROWS_WITH_AS(io::parse_model(j), doctest::Contains("/tables/1/2"),
                       ValidationError);
}

TEST_CASE("file loading errors") {
  CHECK_THROWS_WITH_AS(io::load_json_file("/nonexistent/x.json"),
                       doctest::Contains("cannot read"), ValidationError);
}

TEST_CASE("sha256 matches the published test vectors") {
  CHECK(io::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reports render deterministically in both formats") {
  io::Report r;
  r.verb = "chsh";
  r.verdict = "contextual";
  r.payload = json{{"chsh", 2.8284271247461903},
                   {"correlators", json::array({0.7071067811865476, -0.5})},
                   {"exact", true},
                   {"note", "cross pairs"}};
  r.inputs = {{"model.json", io::sha256_hex("abc")}};
  r.seed = 7;

  const std::string j1 = io::render_json(r);
  const std::string j2 = io::render_json(r);
  CHECK(j1 == j2);
  CHECK(j1.back() == '\n');
  json parsed = json::parse(j1);
  CHECK(parsed["verdict"] == "contextual");
  CHECK(parsed["provenance"]["version"] == io::kToolVersion);
  CHECK(parsed["provenance"]["seed"] == 7);
  CHECK(parsed["payload"]["chsh"].get<double>() ==
        doctest::Approx(2.8284271247461903));

  const std::string t = io::render_text(r);
  CHECK(t == io::render_text(r));
  CHECK(t.find("verdict: contextual\n") != std::string::npos);
  CHECK(t.find("chsh: 2.82842712475\n") != std::string::npos);  // %.12g
  CHECK(t.find("correlators[1]: -0.5\n") != std::string::npos);
  CHECK(t.find("sha256=") != std::string::npos);
  CHECK(t.find("seed: 7\n") != std::string::npos);
}
