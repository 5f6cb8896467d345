#include "netmon/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace netmon {

MixedDefense decomposeMarginals(const Marginals& rho, int budget) {
  const Index n = rho.rho.size();
  if (budget < 1) throw ValidationError("budget must be positive");
  double total = 0.0;
  for (Index v = 0; v < n; ++v) {
    const double p = rho.rho(v);
    if (!(p >= -kBuildTol) || p > 1.0 + kBuildTol) {
      throw ValidationError("marginal probability outside [0, 1]");
    }
    total += p;
  }
  if (total > budget + kBuildTol) throw ValidationError("marginals exceed the budget");

  // Cumulative segment ends; the tail [total, budget] is virtual no-op mass.
  std::vector<double> ends(static_cast<size_t>(n) + 1, 0.0);
  double acc = 0.0;
  for (Index v = 0; v < n; ++v) {
    acc += std::clamp(rho.rho(v), 0.0, 1.0);
    ends[static_cast<size_t>(v) + 1] = acc;
  }

  // Subsets change only where a segment boundary crosses a strip, i.e. at the
  // fractional parts of the segment ends.
  std::vector<double> cuts{0.0, 1.0};
  for (double c : ends) {
    const double f = c - std::floor(c);
    if (f > 1e-12 && f < 1.0 - 1e-12) cuts.push_back(f);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
             cuts.end());

  std::map<std::vector<int>, double> support;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double width = cuts[c + 1] - cuts[c];
    if (width <= 1e-12) continue;
    const double offset = 0.5 * (cuts[c] + cuts[c + 1]);
    std::vector<int> subset;
    for (int strip = 0; strip < budget; ++strip) {
      const double point = strip + offset;
      if (point >= acc) break;  // virtual tail; later strips are virtual too
      const auto it = std::upper_bound(ends.begin(), ends.end(), point);
      const Index v = static_cast<Index>(it - ends.begin()) - 1;
      if (v < n) subset.push_back(static_cast<int>(v));
    }
    support[subset] += width;
  }

  MixedDefense sigma1;
  for (auto& [subset, prob] : support) {
    sigma1.support.push_back({PureDefense{subset}, prob});
  }
  return sigma1;
}

EpsilonCertificate coverPackingCertificate(int n_star, int m_star, int b1, double w_min,
                                           double w_max, bool exact) {
  if (n_star < 1 || m_star < 1 || b1 < 1) {
    throw ValidationError("certificate requires positive cover, packing, and budget sizes");
  }
  EpsilonCertificate cert;
  cert.n_star = n_star;
  cert.m_star = m_star;
  cert.exact = exact;
  const double dominant = std::max(b1, m_star);
  cert.eps1 = b1 * w_min * (n_star - dominant) / (n_star * dominant);
  cert.eps2 = (w_max - w_min) * (n_star - b1) / n_star;
  cert.eps = cert.eps1 + cert.eps2;
  cert.worst_case_loss = w_max * (n_star - b1) / n_star;
  cert.payoff_floor = w_min * std::max(0, m_star - b1) / m_star;
  return cert;
}

CoverPackingProfile coverPackingProfile(const Instance& inst, const CoverResult& cover,
                                        const PackingResult& packing) {
  const int b1 = inst.budget();
  if (cover.size <= 0 || packing.size <= 0) {
    throw ValidationError("profile requires a nonempty cover and packing");
  }
  if (b1 >= cover.size) {
    throw ValidationError(
        "budget reaches the cover size; a pure equilibrium exists (use pureNashIfCover)");
  }

  Vector rho = Vector::Zero(inst.nodeCount());
  for (int v : cover.nodes) rho(v) = static_cast<double>(b1) / cover.size;

  CoverPackingProfile profile;
  profile.defense = decomposeMarginals(Marginals{rho}, b1);
  Vector attack = Vector::Zero(inst.componentCount());
  for (int e : packing.components) attack(e) = 1.0 / packing.size;
  profile.attack = MixedAttack{std::move(attack)};

  const double w_min = inst.weights().minCoeff();
  const double w_max = inst.weights().maxCoeff();
  profile.certificate = coverPackingCertificate(cover.size, packing.size, b1, w_min, w_max,
                                                cover.exact && packing.exact);
  return profile;
}

FocusedResult focusedProfile(const Instance& inst, const std::optional<std::vector<int>>& focus,
                             const CoverOptions& opts) {
  FocusedResult result;
  const double w_max = inst.weights().maxCoeff();
  if (focus.has_value()) {
    result.focus = *focus;
    std::sort(result.focus.begin(), result.focus.end());
    result.focus.erase(std::unique(result.focus.begin(), result.focus.end()), result.focus.end());
    if (result.focus.empty()) throw ValidationError("focus group is empty");
    for (int e : result.focus) {
      if (e < 0 || e >= inst.componentCount()) {
        throw ValidationError("focus component index out of range");
      }
    }
  } else {
    for (int e = 0; e < inst.componentCount(); ++e) {
      if (inst.weight(e) == w_max) result.focus.push_back(e);
    }
  }

  double focus_max = 0.0;
  for (int e : result.focus) focus_max = std::max(focus_max, inst.weight(e));
  std::vector<char> in_focus(static_cast<size_t>(inst.componentCount()), 0);
  for (int e : result.focus) in_focus[static_cast<size_t>(e)] = 1;
  double outside_max = 0.0;
  for (int e = 0; e < inst.componentCount(); ++e) {
    if (!in_focus[static_cast<size_t>(e)]) outside_max = std::max(outside_max, inst.weight(e));
  }

  const CoverResult cover = minSetCover(inst, result.focus, opts);
  const PackingResult packing = maxSetPacking(inst, result.focus, opts);

  result.gap = focus_max - outside_max;
  result.required_gap = focus_max * inst.budget() / cover.size;
  if (result.gap < result.required_gap - 1e-12) return result;  // guarantee unavailable

  const int b1 = inst.budget();
  FocusedProfile profile;
  profile.focus = result.focus;
  profile.n_bar = cover.size;
  profile.m_bar = packing.size;
  profile.exact = cover.exact && packing.exact;

  Vector rho = Vector::Zero(inst.nodeCount());
  for (int v : cover.nodes) rho(v) = static_cast<double>(b1) / cover.size;
  profile.defense = decomposeMarginals(Marginals{rho}, b1);

  Vector attack = Vector::Zero(inst.componentCount());
  for (int e : packing.components) attack(e) = 1.0 / packing.size;
  profile.attack = MixedAttack{std::move(attack)};

  const double dominant = std::max(b1, packing.size);
  profile.eps = b1 * focus_max * (cover.size - dominant) / (cover.size * dominant);
  profile.worst_case_loss = focus_max * (cover.size - b1) / cover.size;
  profile.payoff_floor = focus_max * std::max(0, packing.size - b1) / packing.size;

  result.profile = std::move(profile);
  return result;
}

CertificateComparison compareCertificates(const EpsilonCertificate& full,
                                          const FocusedProfile& focused) {
  CertificateComparison cmp;
  cmp.full_worst_case = full.worst_case_loss;
  cmp.focused_worst_case = focused.worst_case_loss;
  cmp.focused_not_worse = focused.worst_case_loss <= full.worst_case_loss + 1e-12;
  cmp.full_eps = full.eps;
  cmp.focused_eps = focused.eps;
  cmp.focused_eps_smaller = focused.eps < full.eps;
  return cmp;
}

}  // namespace netmon
