#include "qframe/json_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "qframe/rational.hpp"

namespace qframe::io {
namespace {

using quantum::Complex;
using quantum::Matrix;
using quantum::Vector;

// Accumulates one violation per structural defect so the caller sees the
// whole list at once.
struct Ctx {
  std::vector<Violation> v;

  void add(const std::string& ptr, const std::string& msg) {
    v.push_back({ptr, msg});
  }
  void raise() {
    if (!v.empty()) throw ValidationError(std::move(v));
  }
};

const json* field(const json& j, const char* key, const std::string& ptr,
                  Ctx& c, bool required = true) {
  if (!j.is_object()) {
    c.add(ptr, "expected an object");
    return nullptr;
  }
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) c.add(ptr + "/" + key, "missing required field");
    return nullptr;
  }
  return &*it;
}

std::string want_string(const json& j, const std::string& ptr, Ctx& c) {
  if (j.is_string()) return j.get<std::string>();
  c.add(ptr, "expected a string");
  return {};
}

double want_double(const json& j, const std::string& ptr, Ctx& c) {
  if (j.is_number()) return j.get<double>();
  c.add(ptr, "expected a number");
  return 0.0;
}

long want_long(const json& j, const std::string& ptr, Ctx& c) {
  if (j.is_number_integer()) return j.get<long>();
  c.add(ptr, "expected an integer");
  return 0;
}

bool want_bool(const json& j, const std::string& ptr, Ctx& c) {
  if (j.is_boolean()) return j.get<bool>();
  c.add(ptr, "expected a boolean");
  return false;
}

std::vector<std::string> want_string_array(const json& j,
                                           const std::string& ptr, Ctx& c) {
  std::vector<std::string> out;
  if (!j.is_array()) {
    c.add(ptr, "expected an array of strings");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(want_string(j[i], ptr + "/" + std::to_string(i), c));
  return out;
}

std::map<std::string, std::string> want_string_map(const json& j,
                                                   const std::string& ptr,
                                                   Ctx& c) {
  std::map<std::string, std::string> out;
  if (!j.is_object()) {
    c.add(ptr, "expected an object of strings");
    return out;
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    out[it.key()] = want_string(it.value(), ptr + "/" + it.key(), c);
  return out;
}

// A complex entry is a plain number or an [re, im] pair.
Complex want_complex(const json& j, const std::string& ptr, Ctx& c) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  c.add(ptr, "expected a number or an [re, im] pair");
  return Complex(0.0, 0.0);
}

Matrix want_matrix(const json& j, const std::string& ptr, Ctx& c) {
  if (!j.is_array() || j.empty()) {
    c.add(ptr, "expected a nonempty array of rows");
    return Matrix::Zero(1, 1);
  }
  std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) {
    c.add(ptr + "/0", "expected a nonempty row");
    return Matrix::Zero(1, 1);
  }
  Matrix m((long)j.size(), (long)cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rptr = ptr + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) {
      c.add(rptr, "row length differs from the first row");
      continue;
    }
    for (std::size_t col = 0; col < cols; ++col)
      m((long)r, (long)col) =
          want_complex(j[r][col], rptr + "/" + std::to_string(col), c);
  }
  return m;
}

Vector want_vector(const json& j, const std::string& ptr, Ctx& c) {
  if (!j.is_array() || j.empty()) {
    c.add(ptr, "expected a nonempty array");
    return Vector::Zero(1);
  }
  Vector v((long)j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v((long)i) = want_complex(j[i], ptr + "/" + std::to_string(i), c);
  return v;
}

contextuality::ProbEntry want_prob(const json& j, const std::string& ptr,
                                   Ctx& c) {
  if (j.is_number()) return contextuality::ProbEntry::of(j.get<double>());
  if (j.is_string()) {
    auto r = rational_from_string(j.get<std::string>());
    if (r) return contextuality::ProbEntry::of(*r);
    c.add(ptr, "not a fraction or decimal literal: " + j.get<std::string>());
    return contextuality::ProbEntry::of(0.0);
  }
  c.add(ptr, "expected a probability (number, or string in exact mode)");
  return contextuality::ProbEntry::of(0.0);
}

json complex_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json prob_json(const contextuality::ProbEntry& p) {
  if (p.exact) return json(rational_to_string(*p.exact));
  return json(p.value);
}

classifier::Classification classification_impl(const json& j,
                                               const std::string& ptr,
                                               Ctx& c) {
  classifier::Classification out;
  if (const json* f = field(j, "id", ptr, c)) out.id = want_string(*f, ptr + "/id", c);
  if (const json* f = field(j, "tokens", ptr, c))
    out.tokens = want_string_array(*f, ptr + "/tokens", c);
  if (const json* f = field(j, "types", ptr, c))
    out.types = want_string_array(*f, ptr + "/types", c);
  if (const json* f = field(j, "incidence", ptr, c)) {
    const std::string iptr = ptr + "/incidence";
    if (!f->is_array()) {
      c.add(iptr, "expected an array of boolean rows");
    } else {
      for (std::size_t r = 0; r < f->size(); ++r) {
        const json& row = (*f)[r];
        const std::string rptr = iptr + "/" + std::to_string(r);
        std::vector<bool> bits;
        if (!row.is_array()) {
          c.add(rptr, "expected an array of booleans");
        } else {
          for (std::size_t k = 0; k < row.size(); ++k)
            bits.push_back(
                want_bool(row[k], rptr + "/" + std::to_string(k), c));
        }
        out.incidence.push_back(std::move(bits));
      }
    }
  }
  return out;
}

classifier::Infomorphism infomorphism_impl(const json& j,
                                           const std::string& ptr, Ctx& c) {
  classifier::Infomorphism f;
  if (const json* x = field(j, "source", ptr, c))
    f.source_id = want_string(*x, ptr + "/source", c);
  if (const json* x = field(j, "target", ptr, c))
    f.target_id = want_string(*x, ptr + "/target", c);
  if (const json* x = field(j, "type_map", ptr, c))
    f.type_map = want_string_map(*x, ptr + "/type_map", c);
  if (const json* x = field(j, "token_map", ptr, c))
    f.token_map = want_string_map(*x, ptr + "/token_map", c);
  return f;
}

classifier::ClassifierDiagram diagram_impl(const json& j,
                                           const std::string& ptr, Ctx& c) {
  classifier::ClassifierDiagram d;
  if (const json* nodes = field(j, "nodes", ptr, c)) {
    if (!nodes->is_array()) {
      c.add(ptr + "/nodes", "expected an array of classifications");
    } else {
      for (std::size_t i = 0; i < nodes->size(); ++i)
        d.nodes.push_back(classification_impl(
            (*nodes)[i], ptr + "/nodes/" + std::to_string(i), c));
    }
  }
  if (const json* edges = field(j, "edges", ptr, c)) {
    if (!edges->is_array()) {
      c.add(ptr + "/edges", "expected an array of edges");
    } else {
      for (std::size_t i = 0; i < edges->size(); ++i) {
        const std::string eptr = ptr + "/edges/" + std::to_string(i);
        const json& e = (*edges)[i];
        classifier::DiagramEdge edge;
        if (const json* x = field(e, "id", eptr, c))
          edge.id = want_string(*x, eptr + "/id", c);
        edge.morphism = infomorphism_impl(e, eptr, c);
        edge.source = d.node_index(edge.morphism.source_id);
        edge.target = d.node_index(edge.morphism.target_id);
        if (edge.source < 0)
          c.add(eptr + "/source",
                "unknown node id: " + edge.morphism.source_id);
        if (edge.target < 0)
          c.add(eptr + "/target",
                "unknown node id: " + edge.morphism.target_id);
        d.edges.push_back(std::move(edge));
      }
    }
  }
  return d;
}

std::vector<classifier::Infomorphism> infomorphism_list(const json& j,
                                                        const std::string& ptr,
                                                        Ctx& c) {
  std::vector<classifier::Infomorphism> out;
  if (!j.is_array()) {
    c.add(ptr, "expected an array of infomorphisms");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(infomorphism_impl(j[i], ptr + "/" + std::to_string(i), c));
  return out;
}

quantum::SystemLayout layout_impl(const json& j, const std::string& ptr,
                                  Ctx& c) {
  quantum::SystemLayout l;
  if (const json* f = field(j, "labels", ptr, c))
    l.labels = want_string_array(*f, ptr + "/labels", c);
  if (const json* f = field(j, "dims", ptr, c)) {
    const std::string dptr = ptr + "/dims";
    if (!f->is_array()) {
      c.add(dptr, "expected an array of integers");
    } else {
      for (std::size_t i = 0; i < f->size(); ++i)
        l.dims.push_back(static_cast<int>(
            want_long((*f)[i], dptr + "/" + std::to_string(i), c)));
    }
  }
  return l;
}

quantum::PureState pure_state_impl(const json& j, const std::string& ptr,
                                   Ctx& c) {
  quantum::PureState s;
  if (const json* f = field(j, "layout", ptr, c))
    s.layout = layout_impl(*f, ptr + "/layout", c);
  if (const json* f = field(j, "amplitudes", ptr, c))
    s.amplitudes = want_vector(*f, ptr + "/amplitudes", c);
  else
    s.amplitudes = Vector::Zero(1);
  return s;
}

quantum::Observable observable_impl(const json& j, const std::string& ptr,
                                    Ctx& c) {
  quantum::Observable o;
  if (const json* f = field(j, "sector", ptr, c))
    o.sector = want_string_array(*f, ptr + "/sector", c);
  if (const json* f = field(j, "matrix", ptr, c))
    o.matrix = want_matrix(*f, ptr + "/matrix", c);
  else
    o.matrix = Matrix::Zero(1, 1);
  if (const json* f = field(j, "dichotomic", ptr, c, false))
    o.dichotomic = want_bool(*f, ptr + "/dichotomic", c);
  else
    o.dichotomic = true;  // QRF observables are dichotomic by default
  return o;
}

quantum::Qrf qrf_impl(const json& j, const std::string& ptr, Ctx& c) {
  quantum::Qrf q;
  if (const json* f = field(j, "id", ptr, c)) q.id = want_string(*f, ptr + "/id", c);
  if (const json* f = field(j, "sector", ptr, c))
    q.sector = want_string_array(*f, ptr + "/sector", c);
  if (const json* f = field(j, "observables", ptr, c)) {
    const std::string optr = ptr + "/observables";
    if (!f->is_array()) {
      c.add(optr, "expected an array of observables");
    } else {
      for (std::size_t i = 0; i < f->size(); ++i)
        q.observables.push_back(
            observable_impl((*f)[i], optr + "/" + std::to_string(i), c));
    }
  }
  if (const json* f = field(j, "weights", ptr, c, false)) {
    const std::string wptr = ptr + "/weights";
    if (!f->is_array()) {
      c.add(wptr, "expected an array of numbers");
    } else {
      q.weights.clear();
      for (std::size_t i = 0; i < f->size(); ++i)
        q.weights.push_back(
            want_double((*f)[i], wptr + "/" + std::to_string(i), c));
    }
  } else if (!q.observables.empty()) {
    // Default: equal weights.
    q.weights.assign(q.observables.size(),
                     1.0 / static_cast<double>(q.observables.size()));
  }
  if (const json* f = field(j, "beta", ptr, c, false))
    q.beta = want_double(*f, ptr + "/beta", c);
  if (const json* f = field(j, "temperature", ptr, c, false))
    q.temperature = want_double(*f, ptr + "/temperature", c);
  return q;
}

contextuality::MeasurementScenario scenario_impl(const json& j,
                                                 const std::string& ptr,
                                                 Ctx& c) {
  contextuality::MeasurementScenario s;
  if (const json* f = field(j, "observables", ptr, c)) {
    const std::string optr = ptr + "/observables";
    if (!f->is_array()) {
      c.add(optr, "expected an array");
    } else {
      for (std::size_t i = 0; i < f->size(); ++i) {
        const std::string iptr = optr + "/" + std::to_string(i);
        const json& e = (*f)[i];
        contextuality::ObservableSpec spec;
        if (const json* x = field(e, "id", iptr, c))
          spec.id = want_string(*x, iptr + "/id", c);
        if (const json* x = field(e, "outcomes", iptr, c))
          spec.outcomes = want_string_array(*x, iptr + "/outcomes", c);
        s.observables.push_back(std::move(spec));
      }
    }
  }
  if (const json* f = field(j, "contexts", ptr, c)) {
    const std::string cptr = ptr + "/contexts";
    if (!f->is_array()) {
      c.add(cptr, "expected an array of contexts");
    } else {
      for (std::size_t i = 0; i < f->size(); ++i)
        s.contexts.push_back(
            want_string_array((*f)[i], cptr + "/" + std::to_string(i), c));
    }
  }
  return s;
}

contextuality::EmpiricalModel model_impl(const json& j,
                                         const std::string& ptr, Ctx& c) {
  contextuality::EmpiricalModel m;
  if (const json* f = field(j, "scenario", ptr, c))
    m.scenario = scenario_impl(*f, ptr + "/scenario", c);
  if (const json* f = field(j, "tables", ptr, c)) {
    const std::string tptr = ptr + "/tables";
    if (!f->is_array()) {
      c.add(tptr, "expected an array of context tables");
    } else {
      for (std::size_t i = 0; i < f->size(); ++i) {
        const std::string iptr = tptr + "/" + std::to_string(i);
        const json& tab = (*f)[i];
        std::vector<contextuality::ProbEntry> cells;
        if (!tab.is_array()) {
          c.add(iptr, "expected an array of probabilities");
        } else {
          for (std::size_t k = 0; k < tab.size(); ++k)
            cells.push_back(
                want_prob(tab[k], iptr + "/" + std::to_string(k), c));
        }
        m.tables.push_back(std::move(cells));
      }
    }
  }
  return m;
}

std::vector<experiments::AgentComponent> agent_impl(const json& j,
                                                    const std::string& ptr,
                                                    Ctx& c) {
  std::vector<experiments::AgentComponent> agent;
  if (!j.is_array()) {
    c.add(ptr, "expected an array of QRFs");
    return agent;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    experiments::AgentComponent comp;
    comp.qrf = qrf_impl(j[i], ptr + "/" + std::to_string(i), c);
    comp.id = comp.qrf.id;
    agent.push_back(std::move(comp));
  }
  return agent;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("", "cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json_file(const std::string& path) {
  const std::string bytes = read_file(path);
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded())
    throw ValidationError("", "not valid JSON: " + path);
  return j;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

classifier::Classification parse_classification(const json& j) {
  Ctx c;
  auto out = classification_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

classifier::Infomorphism parse_infomorphism(const json& j) {
  Ctx c;
  auto out = infomorphism_impl(j, "", c);
  c.raise();
  return out;
}

classifier::ClassifierDiagram parse_diagram(const json& j) {
  Ctx c;
  auto out = diagram_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

classifier::CccdCandidate parse_cccd(const json& j) {
  Ctx c;
  classifier::CccdCandidate out;
  if (const json* f = field(j, "base", "", c))
    out.base = diagram_impl(*f, "/base", c);
  if (const json* f = field(j, "core", "", c))
    out.core = classification_impl(*f, "/core", c);
  if (const json* f = field(j, "incoming", "", c))
    out.incoming = infomorphism_list(*f, "/incoming", c);
  if (const json* f = field(j, "outgoing", "", c))
    out.outgoing = infomorphism_list(*f, "/outgoing", c);
  c.raise();
  out.base.validate();
  out.core.validate();
  return out;
}

quantum::SystemLayout parse_layout(const json& j) {
  Ctx c;
  auto out = layout_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

quantum::PureState parse_pure_state(const json& j) {
  Ctx c;
  auto out = pure_state_impl(j, "", c);
  c.raise();
  out.layout.validate();
  if (out.amplitudes.size() != out.layout.total_dim())
    throw ValidationError("/amplitudes",
                          "length does not match the layout dimension");
  out.validate();
  return out;
}

quantum::DensityMatrix parse_density(const json& j) {
  Ctx c;
  quantum::DensityMatrix rho;
  if (const json* f = field(j, "layout", "", c))
    rho.layout = layout_impl(*f, "/layout", c);
  if (const json* f = field(j, "matrix", "", c))
    rho.matrix = want_matrix(*f, "/matrix", c);
  else
    rho.matrix = Matrix::Zero(1, 1);
  c.raise();
  rho.layout.validate();
  if (rho.matrix.rows() != rho.layout.total_dim() ||
      rho.matrix.cols() != rho.layout.total_dim())
    throw ValidationError("/matrix",
                          "shape does not match the layout dimension");
  rho.validate();
  return rho;
}

quantum::Observable parse_observable(const json& j) {
  Ctx c;
  auto out = observable_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

quantum::Qrf parse_qrf(const json& j) {
  Ctx c;
  auto out = qrf_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

contextuality::MeasurementScenario parse_scenario(const json& j) {
  Ctx c;
  auto out = scenario_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

contextuality::EmpiricalModel parse_model(const json& j) {
  Ctx c;
  auto out = model_impl(j, "", c);
  c.raise();
  out.validate();
  return out;
}

experiments::BellSetup parse_bell_setup(const json& j) {
  Ctx c;
  experiments::BellSetup setup;
  if (!j.is_object()) {
    c.add("", "expected an object");
    c.raise();
  }
  if (const json* f = field(j, "state", "", c, false))
    setup.state = pure_state_impl(*f, "/state", c);
  for (const char* key : {"a1_angles", "a2_angles"}) {
    if (const json* f = field(j, key, "", c, false)) {
      const std::string aptr = std::string("/") + key;
      if (!f->is_array() || f->size() != 2) {
        c.add(aptr, "expected exactly two angles");
      } else {
        auto& dst = (key[1] == '1') ? setup.a1_angles : setup.a2_angles;
        for (int i = 0; i < 2; ++i)
          dst[i] = want_double((*f)[i], aptr + "/" + std::to_string(i), c);
      }
    }
  }
  if (const json* f = field(j, "misalignment", "", c, false))
    setup.misalignment = want_double(*f, "/misalignment", c);
  if (const json* f = field(j, "shots", "", c, false))
    setup.shots = want_long(*f, "/shots", c);
  if (const json* f = field(j, "seed", "", c, false))
    setup.seed = static_cast<std::uint64_t>(want_long(*f, "/seed", c));
  c.raise();
  setup.validate();
  return setup;
}

std::vector<experiments::AgentComponent> parse_agent(const json& j) {
  Ctx c;
  auto out = agent_impl(j, "", c);
  c.raise();
  for (std::size_t i = 0; i < out.size(); ++i) out[i].qrf.validate();
  return out;
}

experiments::QfpInstance parse_qfp_instance(const json& j) {
  Ctx c;
  experiments::QfpInstance inst;
  if (const json* f = field(j, "environment", "", c))
    inst.environment = pure_state_impl(*f, "/environment", c);
  if (const json* f = field(j, "components", "", c))
    inst.components = agent_impl(*f, "/components", c);
  if (const json* f = field(j, "action", "", c)) {
    if (const json* u = field(*f, "unitary", "/action", c))
      inst.action.unitary = want_matrix(*u, "/action/unitary", c);
    else
      inst.action.unitary = Matrix::Zero(1, 1);
    if (const json* t = field(*f, "targets", "/action", c))
      inst.action.targets = want_string_array(*t, "/action/targets", c);
  }
  c.raise();
  inst.environment.validate();
  inst.validate();
  return inst;
}

experiments::ThermoSetup parse_thermo_setup(const json& j) {
  Ctx c;
  experiments::ThermoSetup setup;
  if (const json* f = field(j, "state", "", c))
    setup.state = pure_state_impl(*f, "/state", c);
  if (const json* f = field(j, "agent", "", c))
    setup.agent = agent_impl(*f, "/agent", c);
  if (const json* f = field(j, "epsilon", "", c, false))
    setup.epsilon = want_double(*f, "/epsilon", c);
  if (const json* f = field(j, "seed", "", c, false))
    setup.seed = static_cast<std::uint64_t>(want_long(*f, "/seed", c));
  if (const json* f = field(j, "trials", "", c, false))
    setup.trials = static_cast<int>(want_long(*f, "/trials", c));
  c.raise();
  setup.state.validate();
  setup.validate();
  return setup;
}

json to_json(const classifier::Classification& c) {
  json inc = json::array();
  for (const auto& row : c.incidence) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    inc.push_back(r);
  }
  return json{{"id", c.id},
              {"tokens", c.tokens},
              {"types", c.types},
              {"incidence", inc}};
}

json to_json(const classifier::Infomorphism& f) {
  return json{{"source", f.source_id},
              {"target", f.target_id},
              {"type_map", f.type_map},
              {"token_map", f.token_map}};
}

json to_json(const classifier::ClassifierDiagram& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes) nodes.push_back(to_json(n));
  json edges = json::array();
  for (const auto& e : d.edges) {
    json edge = to_json(e.morphism);
    edge["id"] = e.id;
    edges.push_back(edge);
  }
  return json{{"nodes", nodes}, {"edges", edges}};
}

json to_json(const classifier::CccdCandidate& c) {
  json inc = json::array();
  for (const auto& f : c.incoming) inc.push_back(to_json(f));
  json out = json::array();
  for (const auto& f : c.outgoing) out.push_back(to_json(f));
  return json{{"base", to_json(c.base)},
              {"core", to_json(c.core)},
              {"incoming", inc},
              {"outgoing", out}};
}

json to_json(const quantum::SystemLayout& l) {
  return json{{"labels", l.labels}, {"dims", l.dims}};
}

json to_json(const quantum::PureState& s) {
  return json{{"layout", to_json(s.layout)},
              {"amplitudes", vector_json(s.amplitudes)}};
}

json to_json(const quantum::DensityMatrix& rho) {
  return json{{"layout", to_json(rho.layout)},
              {"matrix", matrix_json(rho.matrix)}};
}

json to_json(const quantum::Observable& o) {
  return json{{"sector", o.sector},
              {"matrix", matrix_json(o.matrix)},
              {"dichotomic", o.dichotomic}};
}

json to_json(const quantum::Qrf& q) {
  json obs = json::array();
  for (const auto& o : q.observables) obs.push_back(to_json(o));
  return json{{"id", q.id},          {"sector", q.sector},
              {"observables", obs},  {"weights", q.weights},
              {"beta", q.beta},      {"temperature", q.temperature}};
}

json to_json(const contextuality::MeasurementScenario& s) {
  json obs = json::array();
  for (const auto& o : s.observables)
    obs.push_back(json{{"id", o.id}, {"outcomes", o.outcomes}});
  return json{{"observables", obs}, {"contexts", s.contexts}};
}

json to_json(const contextuality::EmpiricalModel& m) {
  json tables = json::array();
  for (const auto& tab : m.tables) {
    json t = json::array();
    for (const auto& p : tab) t.push_back(prob_json(p));
    tables.push_back(t);
  }
  return json{{"scenario", to_json(m.scenario)}, {"tables", tables}};
}

json to_json(const experiments::BellSetup& b) {
  return json{{"state", to_json(b.state)},
              {"a1_angles", json::array({b.a1_angles[0], b.a1_angles[1]})},
              {"a2_angles", json::array({b.a2_angles[0], b.a2_angles[1]})},
              {"misalignment", b.misalignment},
              {"shots", b.shots},
              {"seed", b.seed}};
}

json agent_to_json(const std::vector<experiments::AgentComponent>& agent) {
  json out = json::array();
  for (const auto& comp : agent) out.push_back(to_json(comp.qrf));
  return out;
}

json to_json(const experiments::QfpInstance& inst) {
  return json{{"environment", to_json(inst.environment)},
              {"components", agent_to_json(inst.components)},
              {"action", json{{"unitary", matrix_json(inst.action.unitary)},
                              {"targets", inst.action.targets}}}};
}

json to_json(const experiments::ThermoSetup& t) {
  return json{{"state", to_json(t.state)},
              {"agent", agent_to_json(t.agent)},
              {"epsilon", t.epsilon},
              {"seed", t.seed},
              {"trials", t.trials}};
}

json matrix_to_json(const quantum::Matrix& m) { return matrix_json(m); }

}  // namespace qframe::io
