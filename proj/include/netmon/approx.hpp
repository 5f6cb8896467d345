#pragma once

#include <optional>
#include <vector>

#include "netmon/cover.hpp"
#include "netmon/instance.hpp"

namespace netmon {

// Turns per-node sensor probabilities (sum at most the budget, each entry at
// most one) into an explicit distribution over placements of size at most the
// budget whose marginals reproduce the input. Interval construction: node
// masses laid out consecutively on [0, budget], sliced into unit strips, and
// swept by a common offset; the support has at most n+1 subsets.
MixedDefense decomposeMarginals(const Marginals& rho, int budget);

struct EpsilonCertificate {
  double eps1 = 0;
  double eps2 = 0;
  double eps = 0;
  double worst_case_loss = 0;
  double payoff_floor = 0;
  int n_star = 0;
  int m_star = 0;
  // False when cover/packing sizes come from a heuristic; the guarantee then
  // only holds for the true optima.
  bool exact = true;
};

// Certificate fields for the cover/packing profile as functions of the cover
// size, packing size, budget, and weight range.
EpsilonCertificate coverPackingCertificate(int n_star, int m_star, int b1, double w_min,
                                           double w_max, bool exact = true);

struct CoverPackingProfile {
  MixedDefense defense;
  MixedAttack attack;
  EpsilonCertificate certificate;
};

// Defense spreading the budget uniformly over a set cover, attack uniform
// over a set packing. Requires b1 < cover size (otherwise a pure equilibrium
// exists and pureNashIfCover applies).
CoverPackingProfile coverPackingProfile(const Instance& inst, const CoverResult& cover,
                                        const PackingResult& packing);

struct FocusedProfile {
  MixedDefense defense;
  MixedAttack attack;
  double eps = 0;
  double worst_case_loss = 0;
  double payoff_floor = 0;
  int n_bar = 0;
  int m_bar = 0;
  std::vector<int> focus;
  bool exact = true;
};

struct FocusedResult {
  // Empty when the criticality gap is too small for the focused guarantee.
  std::optional<FocusedProfile> profile;
  double gap = 0;           // w_max - max criticality outside the focus group
  double required_gap = 0;  // w_max * b1 / cover size of the focus group
  std::vector<int> focus;
};

// Cover/packing profile restricted to the top-criticality components. The
// default focus group is every component of maximal criticality; callers may
// supply their own.
FocusedResult focusedProfile(const Instance& inst,
                             const std::optional<std::vector<int>>& focus = std::nullopt,
                             const CoverOptions& opts = {});

struct CertificateComparison {
  double full_worst_case = 0;
  double focused_worst_case = 0;
  bool focused_not_worse = false;  // guaranteed: the focus cover is never larger
  double full_eps = 0;
  double focused_eps = 0;
  bool focused_eps_smaller = false;
};

CertificateComparison compareCertificates(const EpsilonCertificate& full,
                                          const FocusedProfile& focused);

}  // namespace netmon
