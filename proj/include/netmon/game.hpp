#pragma once

#include "netmon/ilp.hpp"
#include "netmon/instance.hpp"

namespace netmon {

// Loss of the operator when the attacker hits `component` against placement
// `defense`: the component's criticality if unmonitored, zero otherwise.
double loss(const Instance& inst, const PureDefense& defense, int component);

// Per-node probability of carrying a sensor under the mixed defense.
Marginals marginals(const Instance& inst, const MixedDefense& sigma1);

// Expected loss L(sigma1, e) for every component.
Vector lossByComponent(const Instance& inst, const MixedDefense& sigma1);

// Expected loss L(V, sigma2) of a fixed placement against a mixed attack.
double lossAgainst(const Instance& inst, const PureDefense& defense, const MixedAttack& sigma2);

double expectedLoss(const Instance& inst, const MixedDefense& sigma1, const MixedAttack& sigma2);

struct AttackResponse {
  int component;
  double value;
};

// Component maximizing L(sigma1, e); ties go to the lowest component index.
AttackResponse bestResponseAttack(const Instance& inst, const MixedDefense& sigma1);

struct DefenseResponse {
  PureDefense defense;
  double value;
};

// Placement minimizing L(V, sigma2) over all subsets within budget, solved
// exactly as a budgeted maximum-coverage binary program.
DefenseResponse bestResponseDefense(const Instance& inst, const MixedAttack& sigma2,
                                    const IlpOptions& opts = {});

// Best-response gap of the profile: zero (within tolerance) exactly at a NE.
double profileEpsilon(const Instance& inst, const MixedDefense& sigma1, const MixedAttack& sigma2,
                      const IlpOptions& opts = {});

}  // namespace netmon
