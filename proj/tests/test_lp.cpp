#include <doctest.h>

#include <vector>

#include "qframe/lp.hpp"
#include "qframe/rational.hpp"
#include "qframe/rng.hpp"

using qframe::Rational;
using qframe::SplitMix64;
using namespace qframe::lp;

namespace {

using RMat = std::vector<std::vector<Rational>>;
using RVec = std::vector<Rational>;

Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exact checks that make solver answers self-certifying.
void check_feasible_point(const RMat& a, const RVec& b, const RVec& x) {
  REQUIRE(x.size() == (a.empty() ? 0 : a[0].size()));
  for (const auto& v : x) CHECK(v >= 0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(dot(a[i], x) == b[i]);
}

void check_farkas(const RMat& a, const RVec& b, const RVec& y) {
  REQUIRE(y.size() == a.size());
  std::size_t n = a.empty() ? 0 : a[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += y[i] * a[i][j];
    CHECK(s <= 0);
  }
  CHECK(dot(y, b) > 0);
}

// Solve the square rational system M z = r by Gaussian elimination;
// returns false when singular.
bool solve_square(RMat m, RVec r, RVec& out) {
  int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    Rational p = m[col][col];
    for (int j = 0; j < n; ++j) m[col][j] /= p;
    r[col] /= p;
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (int j = 0; j < n; ++j) m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  out = r;
  return true;
}

// Independent optimum for { max c.x : A x <= b, x >= 0 } on instances known
// to be bounded: enumerate all vertices (n tight constraints) exactly.
bool brute_force_max(const RMat& a, const RVec& b, const RVec& c,
                     Rational& best) {
  int m = static_cast<int>(a.size());
  int n = static_cast<int>(c.size());
  // Rows: m inequality rows then n nonnegativity rows (-x_i <= 0).
  auto row = [&](int r, int j) -> Rational {
    if (r < m) return a[r][j];
    return r - m == j ? Rational(-1) : Rational(0);
  };
  auto rhs = [&](int r) -> Rational { return r < m ? b[r] : Rational(0); };
  int total = m + n;
  std::vector<int> pick(n);
  bool found = false;
  // Odometer over strictly increasing index tuples.
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    RMat sq(n, RVec(n));
    RVec r(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sq[i][j] = row(pick[i], j);
      r[i] = rhs(pick[i]);
    }
    RVec x;
    if (solve_square(sq, r, x)) {
      bool ok = true;
      for (int i = 0; i < total && ok; ++i) {
        Rational lhs = 0;
        for (int j = 0; j < n; ++j) lhs += row(i, j) * x[j];
        if (lhs > rhs(i)) ok = false;
      }
      if (ok) {
        Rational val = dot(c, x);
        if (!found || val > best) best = val;
        found = true;
      }
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == total - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int i = k + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  return found;
}

}  // namespace

TEST_CASE("exact feasibility: simplex and split systems") {
  // x1 + x2 = 1.
  auto r1 = equality_feasibility<Rational>({{1, 1}}, {1});
  REQUIRE(r1.feasible);
  check_feasible_point({{1, 1}}, {1}, r1.x);

  // x1 - x2 = 0 and x1 + x2 = 1 forces (1/2, 1/2) up to basis choice.
  RMat a2 = {{1, -1}, {1, 1}};
  RVec b2 = {0, 1};
  auto r2 = equality_feasibility<Rational>(a2, b2);
  REQUIRE(r2.feasible);
  check_feasible_point(a2, b2, r2.x);
  CHECK(r2.x[0] == Rational(1) / 2);
  CHECK(r2.x[1] == Rational(1) / 2);

  // Negative rhs exercises the row-flip path.
  RMat a3 = {{-1, -1}};
  RVec b3 = {-1};
  auto r3 = equality_feasibility<Rational>(a3, b3);
  REQUIRE(r3.feasible);
  check_feasible_point(a3, b3, r3.x);
}

TEST_CASE("exact infeasibility comes with a Farkas certificate") {
  // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
  RMat a = {{1, 1}, {1, 1}};
  RVec b = {1, 2};
  auto r = equality_feasibility<Rational>(a, b);
  REQUIRE_FALSE(r.feasible);
  check_farkas(a, b, r.farkas_y);

  // Nonnegative x cannot satisfy x1 + x2 = -1.
  RMat a2 = {{1, 1}};
  RVec b2 = {-1};
  auto r2 = equality_feasibility<Rational>(a2, b2);
  REQUIRE_FALSE(r2.feasible);
  check_farkas(a2, b2, r2.farkas_y);

  // No variables at all: 0 = 1 is infeasible, 0 = 0 is feasible.
  auto r3 = equality_feasibility<Rational>({{}}, {1});
  REQUIRE_FALSE(r3.feasible);
  CHECK(r3.farkas_y[0] > 0);
  auto r4 = equality_feasibility<Rational>({{}}, {0});
  CHECK(r4.feasible);
}

TEST_CASE("random exact systems are always self-certified") {
  SplitMix64 rng(2024);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int m = 1 + static_cast<int>(rng.next() % 4);
    int n = 1 + static_cast<int>(rng.next() % 5);
    RMat a(m, RVec(n));
    RVec b(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j)
        a[i][j] = Rational(static_cast<int>(rng.next() % 7) - 3);
      b[i] = Rational(static_cast<int>(rng.next() % 9) - 4);
    }
    auto r = equality_feasibility<Rational>(a, b);
    if (r.feasible) {
      ++feasible_seen;
      check_feasible_point(a, b, r.x);
    } else {
      ++infeasible_seen;
      check_farkas(a, b, r.farkas_y);
    }
  }
  // The generator must exercise both branches.
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 10);
}

TEST_CASE("float mode agrees with exact mode on integer instances") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng.next() % 3);
    int n = 1 + static_cast<int>(rng.next() % 4);
    RMat a(m, RVec(n));
    std::vector<std::vector<double>> af(m, std::vector<double>(n));
    RVec b(m);
    std::vector<double> bf(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        int v = static_cast<int>(rng.next() % 5) - 2;
        a[i][j] = v;
        af[i][j] = v;
      }
      int v = static_cast<int>(rng.next() % 7) - 3;
      b[i] = v;
      bf[i] = v;
    }
    auto exact = equality_feasibility<Rational>(a, b);
    auto approx = equality_feasibility<double>(af, bf, 1e-9, 1e-7);
    CHECK(exact.feasible == approx.feasible);
    if (approx.feasible) {
      for (int i = 0; i < m; ++i) {
        double lhs = 0;
        for (int j = 0; j < n; ++j) lhs += af[i][j] * approx.x[j];
        CHECK(lhs == doctest::Approx(bf[i]).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("maximize: corner solutions and status reporting") {
  // max x1 + x2 with independent caps.
  auto r1 = maximize_leq<Rational>({{1, 0}, {0, 1}}, {1, 2}, {1, 1});
  REQUIRE(r1.status == Status::optimal);
  CHECK(r1.value == 3);
  CHECK(r1.x[0] == 1);
  CHECK(r1.x[1] == 2);

  // max 3x1 + 2x2 st x1 + x2 <= 4, x1 <= 2 -> (2,2) worth 10.
  auto r2 = maximize_leq<Rational>({{1, 1}, {1, 0}}, {4, 2}, {3, 2});
  REQUIRE(r2.status == Status::optimal);
  CHECK(r2.value == 10);

  // No constraints at all: unbounded.
  auto r3 = maximize_leq<Rational>({}, {}, {1});
  CHECK(r3.status == Status::unbounded);

  CHECK_THROWS_AS(maximize_leq<Rational>({{1}}, {-1}, {1}),
                  std::invalid_argument);
}

TEST_CASE("Bland's rule terminates on the classic cycling instance") {
  // Beale's example cycles under naive most-negative pivoting.
  RMat a = {{Rational(1, 4), -60, Rational(-1, 25), 9},
            {Rational(1, 2), -90, Rational(-1, 50), 3},
            {0, 0, 1, 0}};
  RVec b = {0, 0, 1};
  RVec c = {Rational(3, 4), -150, Rational(1, 50), -6};
  auto r = maximize_leq<Rational>(a, b, c);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.value == Rational(1, 20));
}

TEST_CASE("maximize agrees with exact vertex enumeration") {
  SplitMix64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng.next() % 3);
    int n = 1 + static_cast<int>(rng.next() % 3);
    RMat a(m, RVec(n));
    RVec b(m), c(n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j)
        a[i][j] = Rational(static_cast<int>(rng.next() % 5) - 2);
      b[i] = Rational(static_cast<int>(rng.next() % 5));
    }
    for (int j = 0; j < n; ++j)
      c[j] = Rational(static_cast<int>(rng.next() % 7) - 3);
    // Box rows guarantee boundedness so vertex enumeration is exhaustive.
    for (int j = 0; j < n; ++j) {
      RVec box(n, 0);
      box[j] = 1;
      a.push_back(box);
      b.push_back(5);
    }
    auto r = maximize_leq<Rational>(a, b, c);
    REQUIRE(r.status == Status::optimal);
    Rational best;
    REQUIRE(brute_force_max(a, b, c, best));
    CHECK(r.value == best);
    // The reported point must itself be feasible and attain the value.
    Rational attained = dot(c, r.x);
    CHECK(attained == r.value);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(dot(a[i], r.x) <= b[i]);
    ++checked;
  }
  CHECK(checked == 60);
}
