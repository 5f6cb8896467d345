#pragma once

#include <vector>

#include "netmon/instance.hpp"

namespace netmon {

inline constexpr long kDefaultEnumerationCap = 200000;

// Every placement of size at most the budget (the empty placement included),
// in lexicographic order. Refuses to enumerate past the cap.
std::vector<PureDefense> enumerateDefenses(const Instance& inst,
                                           long cap = kDefaultEnumerationCap);

struct OracleResult {
  double value = 0;
  MixedDefense defense;
  MixedAttack attack;
  long action_count = 0;
  double defense_program_value = 0;
  double attack_program_value = 0;
};

// Ground-truth equilibrium by full enumeration: both players' programs are
// built over the complete action set and solved exactly. Intended for desk
// scale; larger instances belong to column generation.
OracleResult solveExact(const Instance& inst, long cap = kDefaultEnumerationCap);

}  // namespace netmon
