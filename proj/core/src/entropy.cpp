#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "qframe/quantum.hpp"

namespace qframe::quantum {

namespace {

double entropy_bits(const std::vector<double>& probs) {
  double s = 0.0;
  for (double p : probs)
    if (p > 1e-18) s -= p * std::log2(p);
  return s;
}

// Amplitude matrix with rows indexed by part_a digits, columns by the rest;
// its singular values squared are the reduced-state eigenvalues.
Eigen::VectorXd schmidt_values(const PureState& s,
                               const std::vector<std::string>& part_a) {
  std::vector<int> apos, rpos;
  for (std::size_t i = 0; i < s.layout.labels.size(); ++i) {
    if (std::find(part_a.begin(), part_a.end(), s.layout.labels[i]) !=
        part_a.end())
      apos.push_back(static_cast<int>(i));
    else
      rpos.push_back(static_cast<int>(i));
  }
  if (apos.size() != part_a.size())
    throw ValidationError("/bipartition", "labels not part of the layout");
  if (apos.empty() || rpos.empty())
    throw ValidationError("/bipartition",
                          "bipartition must split the layout in two");
  std::vector<long> strides(s.layout.dims.size());
  long acc = 1;
  for (int i = static_cast<int>(s.layout.dims.size()) - 1; i >= 0; --i) {
    strides[i] = acc;
    acc *= s.layout.dims[i];
  }
  auto offsets = [&](const std::vector<int>& pos) {
    long d = 1;
    for (int p : pos) d *= s.layout.dims[p];
    std::vector<long> out(d);
    for (long i = 0; i < d; ++i) {
      long rem = i, off = 0;
      for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
        int dk = s.layout.dims[pos[k]];
        off += (rem % dk) * strides[pos[k]];
        rem /= dk;
      }
      out[i] = off;
    }
    return out;
  };
  auto aoff = offsets(apos);
  auto roff = offsets(rpos);
  Matrix m(static_cast<long>(aoff.size()), static_cast<long>(roff.size()));
  for (std::size_t i = 0; i < aoff.size(); ++i)
    for (std::size_t j = 0; j < roff.size(); ++j)
      m(static_cast<long>(i), static_cast<long>(j)) =
          s.amplitudes(aoff[i] + roff[j]);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  rho.validate();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix,
                                           Eigen::EigenvaluesOnly);
  std::vector<double> probs;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    probs.push_back(std::max(0.0, es.eigenvalues()(i)));
  return entropy_bits(probs);
}

bool is_separable_pure(const PureState& s,
                       const std::vector<std::string>& part_a) {
  s.validate();
  auto sv = schmidt_values(s, part_a);
  return sv.size() < 2 || sv(1) < 1e-10;
}

EntanglementResult entanglement_entropy(const PureState& s) {
  s.validate();
  int n = static_cast<int>(s.layout.labels.size());
  if (n < 2)
    throw ValidationError("/layout",
                          "entanglement needs at least two subsystems");

  EntanglementResult best;
  best.bits = -1.0;
  std::vector<std::vector<std::string>> argmax_pool;
  std::vector<double> values;

  // Canonical representatives: subsets containing the first label.
  long count = (1L << (n - 1)) - 1;
  std::vector<std::vector<std::string>> parts;
  for (long mask = 0; mask < count; ++mask) {
    std::vector<std::string> part{s.layout.labels[0]};
    for (int k = 1; k < n; ++k)
      if (mask & (1L << (k - 1))) part.push_back(s.layout.labels[k]);
    parts.push_back(std::move(part));
  }
  double maxval = -1.0;
  std::vector<double> entropies(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto sv = schmidt_values(s, parts[i]);
    std::vector<double> probs;
    for (long k = 0; k < sv.size(); ++k) probs.push_back(sv(k) * sv(k));
    entropies[i] = 0.0;
    for (double p : probs)
      if (p > 1e-18) entropies[i] -= p * std::log2(p);
    maxval = std::max(maxval, entropies[i]);
  }
  // Among near-ties, pick the lexicographically first sorted label subset.
  std::vector<std::string> chosen;
  std::size_t chosen_idx = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (entropies[i] < maxval - 1e-12) continue;
    auto sorted = parts[i];
    std::sort(sorted.begin(), sorted.end());
    if (chosen.empty() || sorted < chosen) {
      chosen = sorted;
      chosen_idx = i;
    }
  }
  best.bits = std::max(0.0, maxval);
  best.part_a = chosen;
  for (const auto& lbl : s.layout.labels)
    if (std::find(best.part_a.begin(), best.part_a.end(), lbl) ==
        best.part_a.end())
      best.part_b.push_back(lbl);
  (void)chosen_idx;
  return best;
}

}  // namespace qframe::quantum
