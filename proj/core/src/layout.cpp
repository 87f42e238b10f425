#include <algorithm>
#include <set>

#include "qframe/quantum.hpp"

namespace qframe::quantum {

int SystemLayout::position(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

long SystemLayout::total_dim() const {
  long d = 1;
  for (int x : dims) d *= x;
  return d;
}

void SystemLayout::validate() const {
  std::vector<Violation> v;
  if (labels.empty()) v.push_back({"/labels", "layout must be nonempty"});
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!seen.insert(labels[i]).second)
      v.push_back({"/labels/" + std::to_string(i),
                   "duplicate label '" + labels[i] + "'"});
  if (dims.size() != labels.size())
    v.push_back({"/dims", "expected one dimension per label"});
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i] < 2)
      v.push_back({"/dims/" + std::to_string(i),
                   "local dimension must be at least 2"});
  if (!v.empty()) throw ValidationError(std::move(v));
}

SystemLayout SystemLayout::sublayout(
    const std::vector<std::string>& subset) const {
  SystemLayout out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (std::find(subset.begin(), subset.end(), labels[i]) != subset.end()) {
      out.labels.push_back(labels[i]);
      out.dims.push_back(dims[i]);
    }
  if (out.labels.size() != subset.size())
    throw ValidationError("/sector", "labels not part of the layout");
  return out;
}

namespace {

std::vector<long> strides_of(const SystemLayout& l) {
  std::vector<long> s(l.dims.size());
  long acc = 1;
  for (int i = static_cast<int>(l.dims.size()) - 1; i >= 0; --i) {
    s[i] = acc;
    acc *= l.dims[i];
  }
  return s;
}

// For each index of the sector subspace (sector labels in the given order),
// its offset inside the full space; plus the enumeration of "rest" offsets.
struct EmbedTables {
  std::vector<long> sector_offsets;
  std::vector<long> rest_offsets;
};

EmbedTables embed_tables(const SystemLayout& layout,
                         const std::vector<std::string>& sector) {
  layout.validate();
  std::set<std::string> sec_seen;
  for (const auto& s : sector)
    if (!sec_seen.insert(s).second)
      throw ValidationError("/sector", "duplicate label '" + s + "'");
  std::vector<int> pos;
  for (const auto& s : sector) {
    int p = layout.position(s);
    if (p < 0)
      throw ValidationError("/sector", "label '" + s + "' not in the layout");
    pos.push_back(p);
  }
  auto strides = strides_of(layout);

  long ds = 1;
  for (int p : pos) ds *= layout.dims[p];
  EmbedTables t;
  t.sector_offsets.resize(ds);
  for (long i = 0; i < ds; ++i) {
    long rem = i, off = 0;
    for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
      int d = layout.dims[pos[k]];
      off += (rem % d) * strides[pos[k]];
      rem /= d;
    }
    t.sector_offsets[i] = off;
  }

  std::vector<int> rest;
  for (std::size_t i = 0; i < layout.labels.size(); ++i)
    if (std::find(pos.begin(), pos.end(), static_cast<int>(i)) == pos.end())
      rest.push_back(static_cast<int>(i));
  long dr = 1;
  for (int p : rest) dr *= layout.dims[p];
  t.rest_offsets.resize(dr);
  for (long r = 0; r < dr; ++r) {
    long rem = r, off = 0;
    for (int k = static_cast<int>(rest.size()) - 1; k >= 0; --k) {
      int d = layout.dims[rest[k]];
      off += (rem % d) * strides[rest[k]];
      rem /= d;
    }
    t.rest_offsets[r] = off;
  }
  return t;
}

}  // namespace

Matrix embed(const SystemLayout& layout, const std::vector<std::string>& sector,
             const Matrix& op) {
  auto t = embed_tables(layout, sector);
  long ds = static_cast<long>(t.sector_offsets.size());
  if (op.rows() != ds || op.cols() != ds)
    throw ValidationError(
        "/matrix", "operator dimension " + std::to_string(op.rows()) +
                       " does not match sector dimension " +
                       std::to_string(ds));
  long dim = layout.total_dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (long base : t.rest_offsets)
    for (long i = 0; i < ds; ++i)
      for (long j = 0; j < ds; ++j)
        out(base + t.sector_offsets[i], base + t.sector_offsets[j]) = op(i, j);
  return out;
}

PureState apply_unitary(const PureState& s,
                        const std::vector<std::string>& targets,
                        const Matrix& u) {
  s.validate();
  auto t = embed_tables(s.layout, targets);
  long ds = static_cast<long>(t.sector_offsets.size());
  if (u.rows() != ds || u.cols() != ds)
    throw ValidationError("/action/unitary",
                          "matrix dimension does not match target labels");
  Matrix defect = u.adjoint() * u - Matrix::Identity(ds, ds);
  if (defect.cwiseAbs().maxCoeff() > kTolUnitary)
    throw ValidationError("/action/unitary", "matrix is not unitary");
  PureState out = s;
  Vector block(ds);
  for (long base : t.rest_offsets) {
    for (long i = 0; i < ds; ++i)
      block(i) = s.amplitudes(base + t.sector_offsets[i]);
    Vector mixed = u * block;
    for (long i = 0; i < ds; ++i)
      out.amplitudes(base + t.sector_offsets[i]) = mixed(i);
  }
  return out;
}

}  // namespace qframe::quantum
