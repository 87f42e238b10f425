#include <cmath>

#include "qframe/quantum.hpp"

namespace qframe::quantum {

std::vector<MeasureOutcome> measure(const PureState& s,
                                    const std::vector<Observable>& obs,
                                    MeasureMode mode) {
  s.validate();
  if (obs.empty())
    throw ValidationError("/observables", "need at least one observable");
  std::vector<Matrix> embedded;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    obs[i].validate();
    if (!obs[i].dichotomic)
      throw ValidationError(
          "/observables/" + std::to_string(i),
          "outcome labelling requires dichotomic observables");
    embedded.push_back(embed(s.layout, obs[i].sector, obs[i].matrix));
  }
  if (mode == MeasureMode::joint) {
    for (std::size_t i = 0; i < embedded.size(); ++i)
      for (std::size_t j = i + 1; j < embedded.size(); ++j) {
        double defect =
            (embedded[i] * embedded[j] - embedded[j] * embedded[i]).norm();
        if (defect > kTolCommute)
          throw NonCodeployableError(
              "observables " + std::to_string(i) + " and " +
              std::to_string(j) + " do not commute (defect " +
              std::to_string(defect) + "); joint outcomes are undefined");
      }
  }

  long dim = s.amplitudes.size();
  Matrix ident = Matrix::Identity(dim, dim);
  std::vector<Matrix> proj_plus, proj_minus;
  for (const auto& m : embedded) {
    proj_plus.push_back(0.5 * (ident + m));
    proj_minus.push_back(0.5 * (ident - m));
  }

  std::size_t kcount = obs.size();
  long tuples = 1L << kcount;
  std::vector<MeasureOutcome> results;
  results.reserve(tuples);
  for (long t = 0; t < tuples; ++t) {
    MeasureOutcome out;
    out.outcomes.resize(kcount);
    Vector psi = s.amplitudes;
    bool dead = false;
    for (std::size_t k = 0; k < kcount; ++k) {
      // First observable occupies the most significant bit; +1 sorts first.
      int bit = static_cast<int>((t >> (kcount - 1 - k)) & 1);
      out.outcomes[k] = bit == 0 ? +1 : -1;
      if (dead) continue;
      psi = (bit == 0 ? proj_plus[k] : proj_minus[k]) * psi;
      if (psi.squaredNorm() < 1e-30) dead = true;
    }
    out.probability = psi.squaredNorm();
    if (mode == MeasureMode::sequential && out.probability > 1e-15) {
      PureState post;
      post.layout = s.layout;
      post.amplitudes = psi / psi.norm();
      out.post_state = std::move(post);
    }
    results.push_back(std::move(out));
  }
  return results;
}

}  // namespace qframe::quantum
