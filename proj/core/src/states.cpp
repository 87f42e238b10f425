#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

#include "qframe/quantum.hpp"

namespace qframe::quantum {

void PureState::validate() const {
  layout.validate();
  std::vector<Violation> v;
  if (amplitudes.size() != layout.total_dim())
    v.push_back({"/amplitudes",
                 "expected " + std::to_string(layout.total_dim()) +
                     " amplitudes, got " + std::to_string(amplitudes.size())});
  else {
    double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kTolNorm)
      v.push_back({"/amplitudes", "normalization violated: |psi| = " +
                                      std::to_string(norm)});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

void DensityMatrix::validate() const {
  layout.validate();
  std::vector<Violation> v;
  long dim = layout.total_dim();
  if (matrix.rows() != dim || matrix.cols() != dim) {
    v.push_back({"/matrix", "expected a " + std::to_string(dim) + "x" +
                                std::to_string(dim) + " matrix"});
    throw ValidationError(std::move(v));
  }
  double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kTolHermitian)
    v.push_back({"/matrix", "not Hermitian (max asymmetry " +
                                std::to_string(herm) + ")"});
  double tr = std::abs(matrix.trace().real() - 1.0) +
              std::abs(matrix.trace().imag());
  if (tr > kTolTrace)
    v.push_back({"/matrix", "trace differs from 1"});
  if (herm <= kTolHermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix);
    if (es.eigenvalues().minCoeff() < -kTolPsd)
      v.push_back({"/matrix", "not positive semidefinite (min eigenvalue " +
                                  std::to_string(es.eigenvalues().minCoeff()) +
                                  ")"});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

namespace {

struct SplitTables {
  SystemLayout kept;  // keep labels in layout order
  std::vector<long> keep_offsets;
  std::vector<long> rest_offsets;
};

SplitTables split_tables(const SystemLayout& layout,
                         const std::vector<std::string>& keep) {
  layout.validate();
  if (keep.empty())
    throw ValidationError("/keep", "kept label set must be nonempty");
  std::set<std::string> want;
  for (const auto& k : keep) {
    if (layout.position(k) < 0)
      throw ValidationError("/keep", "label '" + k + "' not in the layout");
    if (!want.insert(k).second)
      throw ValidationError("/keep", "duplicate label '" + k + "'");
  }
  std::vector<long> strides(layout.dims.size());
  long acc = 1;
  for (int i = static_cast<int>(layout.dims.size()) - 1; i >= 0; --i) {
    strides[i] = acc;
    acc *= layout.dims[i];
  }
  SplitTables t;
  std::vector<int> kpos, rpos;
  for (std::size_t i = 0; i < layout.labels.size(); ++i) {
    if (want.count(layout.labels[i])) {
      t.kept.labels.push_back(layout.labels[i]);
      t.kept.dims.push_back(layout.dims[i]);
      kpos.push_back(static_cast<int>(i));
    } else {
      rpos.push_back(static_cast<int>(i));
    }
  }
  auto offsets = [&](const std::vector<int>& pos) {
    long d = 1;
    for (int p : pos) d *= layout.dims[p];
    std::vector<long> out(d);
    for (long i = 0; i < d; ++i) {
      long rem = i, off = 0;
      for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
        int dk = layout.dims[pos[k]];
        off += (rem % dk) * strides[pos[k]];
        rem /= dk;
      }
      out[i] = off;
    }
    return out;
  };
  t.keep_offsets = offsets(kpos);
  t.rest_offsets = offsets(rpos);
  return t;
}

}  // namespace

DensityMatrix partial_trace(const PureState& s,
                            const std::vector<std::string>& keep) {
  s.validate();
  auto t = split_tables(s.layout, keep);
  long dk = static_cast<long>(t.keep_offsets.size());
  long dr = static_cast<long>(t.rest_offsets.size());
  Matrix rho = Matrix::Zero(dk, dk);
  for (long r = 0; r < dr; ++r) {
    long ro = t.rest_offsets[r];
    for (long i = 0; i < dk; ++i) {
      Complex ai = s.amplitudes(t.keep_offsets[i] + ro);
      if (ai == Complex(0.0, 0.0)) continue;
      for (long j = 0; j < dk; ++j)
        rho(i, j) += ai * std::conj(s.amplitudes(t.keep_offsets[j] + ro));
    }
  }
  return DensityMatrix{t.kept, std::move(rho)};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep) {
  rho.validate();
  auto t = split_tables(rho.layout, keep);
  long dk = static_cast<long>(t.keep_offsets.size());
  long dr = static_cast<long>(t.rest_offsets.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dr; ++r) {
    long ro = t.rest_offsets[r];
    for (long i = 0; i < dk; ++i)
      for (long j = 0; j < dk; ++j)
        out(i, j) += rho.matrix(t.keep_offsets[i] + ro, t.keep_offsets[j] + ro);
  }
  return DensityMatrix{t.kept, std::move(out)};
}

}  // namespace qframe::quantum
