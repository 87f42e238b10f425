#include <doctest.h>

#include <cmath>
#include <vector>

#include "qframe/contextuality.hpp"
#include "qframe/rng.hpp"

using namespace qframe::contextuality;
using qframe::CapError;
using qframe::NonCodeployableError;
using qframe::Rational;
using qframe::SplitMix64;
using qframe::ValidationError;
namespace qq = qframe::quantum;

namespace {

using RMat = std::vector<std::vector<Rational>>;
using RVec = std::vector<Rational>;

MeasurementScenario bell_scenario() {
  MeasurementScenario s;
  s.observables = {{"a", {"+1", "-1"}},
                   {"a'", {"+1", "-1"}},
                   {"b", {"+1", "-1"}},
                   {"b'", {"+1", "-1"}}};
  s.contexts = {{"a", "b"}, {"a", "b'"}, {"a'", "b"}, {"a'", "b'"}};
  return s;
}

// Deterministic local model: digits 0/1 pick +1/-1 per observable.
EmpiricalModel deterministic_bell(int da, int dap, int db, int dbp) {
  EmpiricalModel m;
  m.scenario = bell_scenario();
  int digits[4] = {da, dap, db, dbp};
  auto side = [&](const std::string& id) {
    if (id == "a") return digits[0];
    if (id == "a'") return digits[1];
    if (id == "b") return digits[2];
    return digits[3];
  };
  for (const auto& ctx : m.scenario.contexts) {
    std::vector<ProbEntry> t(4, ProbEntry::of(Rational(0)));
    t[2 * side(ctx[0]) + side(ctx[1])] = ProbEntry::of(Rational(1));
    m.tables.push_back(t);
  }
  return m;
}

EmpiricalModel pr_box() {
  EmpiricalModel m;
  m.scenario = bell_scenario();
  Rational h(1, 2);
  for (int c = 0; c < 4; ++c) {
    std::vector<ProbEntry> t(4, ProbEntry::of(Rational(0)));
    if (c < 3) {  // perfectly correlated
      t[0] = ProbEntry::of(h);
      t[3] = ProbEntry::of(h);
    } else {  // (a',b') anticorrelated
      t[1] = ProbEntry::of(h);
      t[2] = ProbEntry::of(h);
    }
    m.tables.push_back(t);
  }
  return m;
}

EmpiricalModel mix(const EmpiricalModel& x, const EmpiricalModel& y,
                   const Rational& wx) {
  EmpiricalModel m;
  m.scenario = x.scenario;
  for (std::size_t c = 0; c < x.tables.size(); ++c) {
    std::vector<ProbEntry> t;
    for (std::size_t k = 0; k < x.tables[c].size(); ++k)
      t.push_back(ProbEntry::of(wx * *x.tables[c][k].exact +
                                (1 - wx) * *y.tables[c][k].exact));
    m.tables.push_back(t);
  }
  return m;
}

EmpiricalModel uniform_bell() {
  EmpiricalModel m;
  m.scenario = bell_scenario();
  for (int c = 0; c < 4; ++c)
    m.tables.push_back(
        std::vector<ProbEntry>(4, ProbEntry::of(Rational(1, 4))));
  return m;
}

// --- independent feasibility oracle -------------------------------------
// { lambda >= 0 : A lambda = b } is solvable iff some independent column
// subset solves it nonnegatively (basic feasible solutions are exhaustive).

// RREF solve of the overdetermined system restricted to `cols`; false when
// the columns are dependent or the system is inconsistent.
bool solve_subset(const RMat& a, const RVec& b, const std::vector<int>& cols,
                  RVec& x) {
  int m = static_cast<int>(a.size());
  int k = static_cast<int>(cols.size());
  RMat t(m, RVec(k + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) t[i][j] = a[i][cols[j]];
    t[i][k] = b[i];
  }
  std::vector<int> pivot_row(k, -1);
  int row = 0;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int i = row; i < m; ++i)
      if (t[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;  // dependent columns
    std::swap(t[piv], t[row]);
    Rational p = t[row][col];
    for (int j = 0; j <= k; ++j) t[row][j] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rational f = t[i][col];
      for (int j = 0; j <= k; ++j) t[i][j] -= f * t[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (int i = row; i < m; ++i)
    if (t[i][k] != 0) return false;  // inconsistent
  x.assign(k, Rational(0));
  for (int col = 0; col < k; ++col) x[col] = t[pivot_row[col]][k];
  return true;
}

bool oracle_feasible(const RMat& a, const RVec& b) {
  int m = static_cast<int>(a.size());
  int n = a.empty() ? 0 : static_cast<int>(a[0].size());
  int max_k = std::min(m, n);
  // All column subsets by bitmask (n <= 10 in oracle-checked scenarios).
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (mask & (1L << j)) cols.push_back(j);
    if (static_cast<int>(cols.size()) > max_k) continue;
    if (cols.empty()) {
      bool zero = true;
      for (const auto& v : b)
        if (v != 0) zero = false;
      if (zero) return true;
      continue;
    }
    RVec x;
    if (!solve_subset(a, b, cols, x)) continue;
    bool nonneg = true;
    for (const auto& v : x)
      if (v < 0) nonneg = false;
    if (nonneg) return true;
  }
  return false;
}

// Rebuild the constraint system exactly as the library defines it:
// rows are (context, cell) pairs, columns are global assignments.
void constraint_system(const EmpiricalModel& m, RMat& a, RVec& b) {
  const auto& s = m.scenario;
  int nobs = static_cast<int>(s.observables.size());
  std::vector<long> strides(nobs);
  long count = 1;
  for (int i = nobs; i-- > 0;) {
    strides[i] = count;
    count *= static_cast<long>(s.observables[i].outcomes.size());
  }
  a.clear();
  b.clear();
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    long cells = s.context_cells(static_cast<int>(c));
    std::size_t base = a.size();
    for (long cell = 0; cell < cells; ++cell) {
      a.push_back(RVec(count, Rational(0)));
      b.push_back(*m.tables[c][cell].exact);
    }
    for (long g = 0; g < count; ++g) {
      long cell = 0;
      for (const auto& id : s.contexts[c]) {
        int obs = s.observable_index(id);
        cell = cell * static_cast<long>(s.observables[obs].outcomes.size()) +
               (g / strides[obs]) %
                   static_cast<long>(s.observables[obs].outcomes.size());
      }
      a[base + cell][g] = 1;
    }
  }
}

// Exact substitution checks: a returned certificate is a proof.
void verify_section_report(const EmpiricalModel& m, const SectionReport& rep) {
  RMat a;
  RVec b;
  constraint_system(m, a, b);
  if (rep.feasible) {
    REQUIRE(static_cast<long>(rep.lambda_exact.size()) == rep.assignments);
    for (const auto& l : rep.lambda_exact) CHECK(l >= 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < a[i].size(); ++j)
        lhs += a[i][j] * rep.lambda_exact[j];
      CHECK(lhs == b[i]);
    }
    CHECK(rep.max_marginal_error < 1e-12);
  } else {
    REQUIRE(rep.farkas_exact.size() == a.size());
    for (std::size_t j = 0; j < a[0].size(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        s += rep.farkas_exact[i] * a[i][j];
      CHECK(s <= 0);
    }
    Rational yb = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      yb += rep.farkas_exact[i] * b[i];
    CHECK(yb > 0);
  }
}

qq::Matrix pauli(char which) {
  qq::Matrix m(2, 2);
  std::complex<double> i(0, 1);
  if (which == 'x')
    m << 0, 1, 1, 0;
  else if (which == 'y')
    m << 0, -i, i, 0;
  else
    m << 1, 0, 0, -1;
  return m;
}

qq::Observable obs_on(const std::string& label, const qq::Matrix& m) {
  qq::Observable o;
  o.sector = {label};
  o.matrix = m;
  o.dichotomic = true;
  return o;
}

qq::Qrf qrf_of(std::string id, std::vector<qq::Observable> obs) {
  qq::Qrf q;
  q.id = std::move(id);
  q.sector = obs[0].sector;
  for (const auto& o : obs)
    for (const auto& lbl : o.sector)
      if (std::find(q.sector.begin(), q.sector.end(), lbl) == q.sector.end())
        q.sector.push_back(lbl);
  q.weights.assign(obs.size(), 1.0 / static_cast<double>(obs.size()));
  q.observables = std::move(obs);
  return q;
}

qq::PureState bell_state() {
  qq::PureState s;
  s.layout.labels = {"1", "2"};
  s.layout.dims = {2, 2};
  s.amplitudes = qq::Vector::Zero(4);
  s.amplitudes(0) = 1.0 / std::sqrt(2.0);
  s.amplitudes(3) = 1.0 / std::sqrt(2.0);
  return s;
}

}  // namespace

TEST_CASE("scenario validation rejects malformed covers") {
  MeasurementScenario s;
  s.observables = {{"b", {"0", "1"}}, {"a", {"0", "1"}}};  // unsorted
  s.contexts = {{"a", "b"}};
  CHECK_THROWS_AS(s.validate(), ValidationError);

  s.observables = {{"a", {"0", "1"}}, {"b", {}}};  // empty outcomes
  CHECK_THROWS_AS(s.validate(), ValidationError);

  s.observables = {{"a", {"0", "1"}}, {"b", {"0", "1"}}};
  s.contexts = {{"a", "zz"}};  // unknown member, and b uncovered
  try {
    s.validate();
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 2);
  }

  s.contexts = {{"a", "a"}, {"b"}};  // repeated member
  CHECK_THROWS_AS(s.validate(), ValidationError);

  s.contexts = {{"a"}, {"b"}};
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("model validation enforces table shape and normalization") {
  auto m = pr_box();
  CHECK_NOTHROW(m.validate());
  CHECK(m.all_rational());

  auto bad = pr_box();
  bad.tables[0][0] = ProbEntry::of(Rational(51, 100));  // sums to 1.01
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  auto neg = pr_box();
  neg.tables[0][0] = ProbEntry::of(Rational(-1, 2));
  neg.tables[0][1] = ProbEntry::of(Rational(1));
  CHECK_THROWS_AS(neg.validate(), ValidationError);

  auto shape = pr_box();
  shape.tables[2].pop_back();
  CHECK_THROWS_AS(shape.validate(), ValidationError);

  auto drift = pr_box();
  drift.tables[0][0].value = 0.6;  // disagrees with exact 1/2
  CHECK_THROWS_AS(drift.validate(), ValidationError);
}

TEST_CASE("no-disturbance: vacuous, uniform-marginal, and broken models") {
  // Single context passes vacuously.
  EmpiricalModel solo;
  solo.scenario.observables = {{"x", {"0", "1"}}, {"y", {"0", "1"}}};
  solo.scenario.contexts = {{"x", "y"}};
  solo.tables = {{ProbEntry::of(Rational(1)), ProbEntry::of(Rational(0)),
                  ProbEntry::of(Rational(0)), ProbEntry::of(Rational(0))}};
  auto rep = check_no_disturbance(solo);
  CHECK(rep.passes);
  CHECK(rep.max_violation == 0.0);

  // All marginals uniform despite wildly different joints.
  auto pr = check_no_disturbance(pr_box());
  CHECK(pr.passes);
  CHECK(pr.max_violation < 1e-15);

  // Observable a answers +1 in one context and -1 in another.
  EmpiricalModel sig;
  sig.scenario = bell_scenario();
  sig.tables = deterministic_bell(0, 0, 0, 0).tables;
  sig.tables[1] = {ProbEntry::of(Rational(0)), ProbEntry::of(Rational(0)),
                   ProbEntry::of(Rational(1)), ProbEntry::of(Rational(0))};
  auto bad = check_no_disturbance(sig);
  CHECK_FALSE(bad.passes);
  CHECK(bad.max_violation == doctest::Approx(1.0));
  CHECK(bad.observable == "a");
  CHECK(bad.context_a == 0);
  CHECK(bad.context_b == 1);
}

TEST_CASE("deterministic local models: section exists and chsh at most 2") {
  for (int mask = 0; mask < 16; ++mask) {
    auto m = deterministic_bell(mask & 1, (mask >> 1) & 1, (mask >> 2) & 1,
                                (mask >> 3) & 1);
    auto rep = has_global_section(m);
    CHECK(rep.exact);
    CHECK(rep.feasible);
    CHECK_FALSE(rep.signaling);
    verify_section_report(m, rep);
    CHECK(std::abs(chsh_value(m)) <= 2.0 + 1e-12);

    auto cf = contextual_fraction(m);
    REQUIRE(cf.exact.has_value());
    CHECK(*cf.exact == 0);
  }
}

TEST_CASE("pr box: no section, farkas certificate, fraction 1, chsh 4") {
  auto m = pr_box();

  // Independent impossibility proof: every deterministic assignment lands
  // on a zero-probability cell of some context, so no mixture works.
  RMat a;
  RVec b;
  constraint_system(m, a, b);
  for (long g = 0; g < 16; ++g) {
    bool killed = false;
    for (std::size_t row = 0; row < a.size(); ++row)
      if (a[row][g] == 1 && b[row] == 0) killed = true;
    CHECK(killed);
  }

  auto rep = has_global_section(m);
  CHECK(rep.exact);
  CHECK_FALSE(rep.feasible);
  CHECK_FALSE(rep.signaling);
  verify_section_report(m, rep);

  auto cf = contextual_fraction(m);
  REQUIRE(cf.exact.has_value());
  CHECK(*cf.exact == 1);

  CHECK(chsh_value(m) == doctest::Approx(4.0));
}

TEST_CASE("noisy pr box has a sharp feasibility boundary at half") {
  auto noisy = [&](const Rational& f) { return mix(pr_box(), uniform_bell(), f); };

  auto at_half = has_global_section(noisy(Rational(1, 2)));
  CHECK(at_half.feasible);
  verify_section_report(noisy(Rational(1, 2)), at_half);

  auto above = has_global_section(noisy(Rational(51, 100)));
  CHECK_FALSE(above.feasible);
  verify_section_report(noisy(Rational(51, 100)), above);

  // Fraction grows linearly past the boundary: CF(3/4 PR + 1/4 noise) = 1/2.
  auto cf = contextual_fraction(noisy(Rational(3, 4)));
  REQUIRE(cf.exact.has_value());
  CHECK(*cf.exact == Rational(1, 2));
  CHECK(chsh_value(noisy(Rational(3, 4))) == doctest::Approx(3.0));
}

TEST_CASE("chsh value demands the exact bell shape") {
  auto m = deterministic_bell(0, 0, 0, 0);
  CHECK(chsh_value(m) == doctest::Approx(2.0));

  // Off-cover contexts: (a,a') is not a cross pair.
  auto bad = m;
  bad.scenario.contexts[3] = {"a", "a'"};
  bad.tables[3] = {ProbEntry::of(Rational(1)), ProbEntry::of(Rational(0)),
                   ProbEntry::of(Rational(0)), ProbEntry::of(Rational(0))};
  CHECK_THROWS_AS(chsh_value(bad), ValidationError);

  // Three observables only.
  EmpiricalModel tri;
  tri.scenario.observables = {{"a", {"+1", "-1"}},
                              {"b", {"+1", "-1"}},
                              {"c", {"+1", "-1"}}};
  tri.scenario.contexts = {{"a", "b"}, {"a", "c"}, {"b", "c"}};
  tri.tables.assign(3, std::vector<ProbEntry>(4, ProbEntry::of(Rational(1, 4))));
  CHECK_THROWS_AS(chsh_value(tri), ValidationError);

  // Outcome labels that are not +1/-1.
  auto odd = m;
  odd.scenario.observables[0].outcomes = {"up", "down"};
  CHECK_THROWS_AS(chsh_value(odd), ValidationError);
}

TEST_CASE("random rational models agree with basic-solution enumeration") {
  SplitMix64 rng(1618);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    // Two or three binary observables, random pair/singleton cover.
    int nobs = 2 + static_cast<int>(rng.next() % 2);
    MeasurementScenario s;
    for (int i = 0; i < nobs; ++i)
      s.observables.push_back(
          {"m" + std::to_string(i), {"0", "1"}});
    int ncontexts = 2 + static_cast<int>(rng.next() % 2);
    for (int c = 0; c < ncontexts; ++c) {
      int u = static_cast<int>(rng.next() % nobs);
      int w = static_cast<int>(rng.next() % nobs);
      if (u == w)
        s.contexts.push_back({"m" + std::to_string(u)});
      else
        s.contexts.push_back(
            {"m" + std::to_string(u), "m" + std::to_string(w)});
    }
    for (int i = 0; i < nobs; ++i)  // guarantee coverage
      s.contexts.push_back({"m" + std::to_string(i)});

    EmpiricalModel m;
    m.scenario = s;
    bool degenerate = false;
    if (trial % 2 == 0) {
      // Marginalize a random global distribution: feasible by construction.
      long count = s.assignment_count(1000);
      std::vector<Rational> lambda(count);
      Rational total = 0;
      for (long g = 0; g < count; ++g) {
        lambda[g] = Rational(static_cast<int>(rng.next() % 4));
        total += lambda[g];
      }
      if (total == 0) continue;
      for (auto& l : lambda) l /= total;
      std::vector<long> strides(nobs);
      long acc = 1;
      for (int i = nobs; i-- > 0;) {
        strides[i] = acc;
        acc *= 2;
      }
      for (std::size_t c = 0; c < s.contexts.size(); ++c) {
        std::vector<Rational> cells(s.context_cells(static_cast<int>(c)), 0);
        for (long g = 0; g < count; ++g) {
          long cell = 0;
          for (const auto& id : s.contexts[c])
            cell = cell * 2 + (g / strides[s.observable_index(id)]) % 2;
          cells[cell] += lambda[g];
        }
        std::vector<ProbEntry> t;
        for (const auto& p : cells) t.push_back(ProbEntry::of(p));
        m.tables.push_back(t);
      }
    } else {
      for (std::size_t c = 0; c < s.contexts.size(); ++c) {
        long cells = s.context_cells(static_cast<int>(c));
        std::vector<Rational> raw(cells);
        Rational total = 0;
        for (long k = 0; k < cells; ++k) {
          raw[k] = Rational(static_cast<int>(rng.next() % 5));
          total += raw[k];
        }
        if (total == 0) {
          degenerate = true;
          break;
        }
        std::vector<ProbEntry> t;
        for (long k = 0; k < cells; ++k)
          t.push_back(ProbEntry::of(raw[k] / total));
        m.tables.push_back(t);
      }
    }
    if (degenerate) continue;

    auto rep = has_global_section(m);
    verify_section_report(m, rep);

    RMat a;
    RVec b;
    constraint_system(m, a, b);
    CHECK(rep.feasible == oracle_feasible(a, b));
    (rep.feasible ? feasible_seen : infeasible_seen)++;
  }
  CHECK(feasible_seen > 5);
  CHECK(infeasible_seen > 5);
}

TEST_CASE("assignment cap: twenty-one binary observables is past a million") {
  EmpiricalModel m;
  for (int i = 0; i < 21; ++i) {
    char id[8];
    std::snprintf(id, sizeof(id), "m%02d", i);
    m.scenario.observables.push_back({id, {"0", "1"}});
    m.scenario.contexts.push_back({id});
    m.tables.push_back({ProbEntry::of(Rational(1)), ProbEntry::of(Rational(0))});
  }
  CHECK_THROWS_AS(has_global_section(m), CapError);
  CHECK_THROWS_AS(contextual_fraction(m), CapError);
  CHECK(m.scenario.assignment_count(1L << 22) == (1L << 21));
}

TEST_CASE("bridge: tsirelson-optimal settings produce the quantum chsh model") {
  auto s = bell_state();
  auto q1 = qrf_of("A", {obs_on("1", pauli('z')), obs_on("1", pauli('x'))});
  qq::Matrix b1 = (pauli('z') + pauli('x')) / std::sqrt(2.0);
  qq::Matrix b2 = (pauli('z') - pauli('x')) / std::sqrt(2.0);
  auto q2 = qrf_of("B", {obs_on("2", b1), obs_on("2", b2)});

  auto res = empirical_model_from_qrfs(s, q1, q2, qq::MeasureMode::joint);
  CHECK(res.codeployable);  // cross pairs act on different qubits
  CHECK(res.commutator < 1e-12);
  CHECK(res.note.find("co-deployable") == 0);

  const auto& m = res.model;
  CHECK_FALSE(m.all_rational());
  CHECK(check_no_disturbance(m).passes);
  CHECK(chsh_value(m) == doctest::Approx(2.0 * std::sqrt(2.0)));

  auto rep = has_global_section(m);
  CHECK_FALSE(rep.exact);
  CHECK_FALSE(rep.feasible);
  // Float Farkas certificate still separates with a wide margin.
  REQUIRE(rep.farkas.size() == 16);

  auto cf = contextual_fraction(m);
  CHECK(cf.value == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-6));
}

TEST_CASE("bridge: product state with commuting frames is noncontextual") {
  qq::PureState s;
  s.layout.labels = {"1", "2"};
  s.layout.dims = {2, 2};
  s.amplitudes = qq::Vector::Zero(4);
  s.amplitudes(1) = 1.0;  // |0>|1>

  auto q1 = qrf_of("A", {obs_on("1", pauli('z')), obs_on("1", pauli('x'))});
  auto q2 = qrf_of("B", {obs_on("2", pauli('z')), obs_on("2", pauli('x'))});
  auto res = empirical_model_from_qrfs(s, q1, q2, qq::MeasureMode::joint);
  CHECK(res.codeployable);
  CHECK(check_no_disturbance(res.model).passes);
  auto rep = has_global_section(res.model);
  CHECK(rep.feasible);
  CHECK(rep.max_marginal_error < 1e-9);
  auto cf = contextual_fraction(res.model);
  CHECK(cf.value < 1e-7);
}

TEST_CASE("bridge: mutually commuting observables always admit a section") {
  SplitMix64 rng(5151);
  for (int trial = 0; trial < 10; ++trial) {
    qq::PureState s;
    s.layout.labels = {"1", "2"};
    s.layout.dims = {2, 2};
    s.amplitudes = qq::Vector(4);
    for (int i = 0; i < 4; ++i)
      s.amplitudes(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
    s.amplitudes /= s.amplitudes.norm();

    auto diag_obs = [&](const std::string& lbl) {
      qq::Matrix d = qq::Matrix::Zero(2, 2);
      d(0, 0) = (rng.next() % 2) ? 1.0 : -1.0;
      d(1, 1) = (rng.next() % 2) ? 1.0 : -1.0;
      return obs_on(lbl, d);
    };
    auto q1 = qrf_of("A", {diag_obs("1"), diag_obs("1")});
    auto q2 = qrf_of("B", {diag_obs("2"), diag_obs("2")});
    auto res = empirical_model_from_qrfs(s, q1, q2, qq::MeasureMode::joint);
    auto rep = has_global_section(res.model);
    CHECK(rep.feasible);
    CHECK(rep.max_marginal_error < 1e-9);
  }
}

TEST_CASE("bridge: same-qubit frames in sequential mode leak the order") {
  qq::PureState s;
  s.layout.labels = {"1"};
  s.layout.dims = {2};
  s.amplitudes = qq::Vector::Zero(2);
  s.amplitudes(0) = 1.0;  // |0>

  auto q1 = qrf_of("A", {obs_on("1", pauli('z')), obs_on("1", pauli('x'))});
  auto q2 = qrf_of("B", {obs_on("1", pauli('z'))});

  // Joint mode refuses: X and Z on the same qubit cannot be measured jointly.
  CHECK_THROWS_AS(
      empirical_model_from_qrfs(s, q1, q2, qq::MeasureMode::joint),
      NonCodeployableError);

  auto res = empirical_model_from_qrfs(s, q1, q2, qq::MeasureMode::sequential);
  CHECK_FALSE(res.codeployable);
  CHECK(res.note.find("non-codeployable") == 0);
  CHECK(res.note.find("sequential") != std::string::npos);

  // B:0's marginal is (1,0) after measuring Z first but (1/2,1/2) after X.
  auto nd = check_no_disturbance(res.model);
  CHECK_FALSE(nd.passes);
  CHECK(nd.max_violation == doctest::Approx(0.5));
  CHECK(nd.observable == "B:0");

  // The section question is still answered, flagged as signaling.
  auto rep = has_global_section(res.model);
  CHECK(rep.signaling);
}

TEST_CASE("analyze bundles verdicts and skips fraction for signaling models") {
  auto good = analyze(pr_box());
  CHECK(good.disturbance.passes);
  CHECK_FALSE(good.section.feasible);
  REQUIRE(good.fraction.has_value());
  CHECK(*good.fraction->exact == 1);

  EmpiricalModel sig;
  sig.scenario = bell_scenario();
  sig.tables = deterministic_bell(0, 0, 0, 0).tables;
  sig.tables[1] = {ProbEntry::of(Rational(0)), ProbEntry::of(Rational(0)),
                   ProbEntry::of(Rational(1)), ProbEntry::of(Rational(0))};
  auto flagged = analyze(sig);
  CHECK_FALSE(flagged.disturbance.passes);
  CHECK(flagged.section.signaling);
  CHECK_FALSE(flagged.fraction.has_value());
}
