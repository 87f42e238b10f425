#include <cmath>

#include "qframe/contextuality.hpp"
#include "qframe/lp.hpp"

namespace qframe::contextuality {

namespace {

struct AssignmentGrid {
  std::vector<long> strides;  // per observable, first most significant
  long count = 1;

  explicit AssignmentGrid(const MeasurementScenario& s, long cap) {
    count = s.assignment_count(cap);
    strides.resize(s.observables.size());
    long acc = 1;
    for (std::size_t i = s.observables.size(); i-- > 0;) {
      strides[i] = acc;
      acc *= static_cast<long>(s.observables[i].outcomes.size());
    }
  }

  long digit(long g, int obs, const MeasurementScenario& s) const {
    return (g / strides[obs]) %
           static_cast<long>(s.observables[obs].outcomes.size());
  }
};

// Row index of assignment g inside context c's table.
long cell_of(const MeasurementScenario& s, const AssignmentGrid& grid, int c,
             long g) {
  long cell = 0;
  for (const auto& id : s.contexts[c]) {
    int obs = s.observable_index(id);
    cell = cell * static_cast<long>(s.observables[obs].outcomes.size()) +
           grid.digit(g, obs, s);
  }
  return cell;
}

// 0/1 incidence matrix: rows are (context, cell) pairs in order, columns
// are global assignments.
template <class T>
std::vector<std::vector<T>> incidence(const MeasurementScenario& s,
                                      const AssignmentGrid& grid) {
  long rows = 0;
  for (std::size_t c = 0; c < s.contexts.size(); ++c)
    rows += s.context_cells(static_cast<int>(c));
  std::vector<std::vector<T>> a(rows, std::vector<T>(grid.count, T(0)));
  long offset = 0;
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    for (long g = 0; g < grid.count; ++g)
      a[offset + cell_of(s, grid, static_cast<int>(c), g)][g] = T(1);
    offset += s.context_cells(static_cast<int>(c));
  }
  return a;
}

template <class T>
std::vector<T> flat_tables(const EmpiricalModel& m);

template <>
std::vector<Rational> flat_tables<Rational>(const EmpiricalModel& m) {
  std::vector<Rational> b;
  for (const auto& table : m.tables)
    for (const auto& e : table) b.push_back(*e.exact);
  return b;
}

template <>
std::vector<double> flat_tables<double>(const EmpiricalModel& m) {
  std::vector<double> b;
  for (const auto& table : m.tables)
    for (const auto& e : table) b.push_back(std::max(0.0, e.value));
  return b;
}

double self_check(const EmpiricalModel& m, const AssignmentGrid& grid,
                  const std::vector<double>& lambda) {
  double worst = 0.0;
  for (std::size_t c = 0; c < m.scenario.contexts.size(); ++c) {
    std::vector<double> repro(m.tables[c].size(), 0.0);
    for (long g = 0; g < grid.count; ++g)
      repro[cell_of(m.scenario, grid, static_cast<int>(c), g)] += lambda[g];
    for (std::size_t k = 0; k < repro.size(); ++k)
      worst = std::max(worst, std::abs(repro[k] - m.tables[c][k].value));
  }
  return worst;
}

}  // namespace

SectionReport has_global_section(const EmpiricalModel& m, long cap) {
  m.validate();
  SectionReport rep;
  rep.signaling = !check_no_disturbance(m).passes;
  AssignmentGrid grid(m.scenario, cap);
  rep.assignments = grid.count;
  rep.exact = m.all_rational();
  if (rep.exact) {
    auto res = lp::equality_feasibility<Rational>(
        incidence<Rational>(m.scenario, grid), flat_tables<Rational>(m));
    rep.feasible = res.feasible;
    if (res.feasible) {
      rep.lambda_exact = res.x;
      for (const auto& r : res.x)
        rep.lambda.push_back(static_cast<double>(r));
    } else {
      rep.farkas_exact = res.farkas_y;
      for (const auto& r : res.farkas_y)
        rep.farkas.push_back(static_cast<double>(r));
    }
  } else {
    auto res = lp::equality_feasibility<double>(
        incidence<double>(m.scenario, grid), flat_tables<double>(m), 1e-9,
        1e-9);
    rep.feasible = res.feasible;
    if (res.feasible)
      rep.lambda = res.x;
    else
      rep.farkas = res.farkas_y;
  }
  if (rep.feasible) rep.max_marginal_error = self_check(m, grid, rep.lambda);
  return rep;
}

FractionReport contextual_fraction(const EmpiricalModel& m, long cap) {
  m.validate();
  FractionReport rep;
  rep.signaling = !check_no_disturbance(m).passes;
  AssignmentGrid grid(m.scenario, cap);
  rep.assignments = grid.count;
  if (m.all_rational()) {
    std::vector<Rational> ones(grid.count, Rational(1));
    auto res = lp::maximize_leq<Rational>(incidence<Rational>(m.scenario, grid),
                                          flat_tables<Rational>(m), ones);
    if (res.status != lp::Status::optimal)
      throw ValidationError("/tables",
                            "noncontextual-part program did not reach an "
                            "optimum; tables are malformed");
    rep.exact = Rational(1) - res.value;
    rep.value = static_cast<double>(*rep.exact);
  } else {
    std::vector<double> ones(grid.count, 1.0);
    auto res = lp::maximize_leq<double>(incidence<double>(m.scenario, grid),
                                        flat_tables<double>(m), ones, 1e-9);
    if (res.status != lp::Status::optimal)
      throw ValidationError("/tables",
                            "noncontextual-part program did not reach an "
                            "optimum; tables are malformed");
    rep.value = 1.0 - res.value;
  }
  // Clamp float residue at the boundaries.
  if (!rep.exact) rep.value = std::min(1.0, std::max(0.0, rep.value));
  return rep;
}

ContextualityReport analyze(const EmpiricalModel& m, long cap) {
  ContextualityReport rep;
  rep.disturbance = check_no_disturbance(m);
  rep.section = has_global_section(m, cap);
  if (rep.disturbance.passes) rep.fraction = contextual_fraction(m, cap);
  return rep;
}

}  // namespace qframe::contextuality
