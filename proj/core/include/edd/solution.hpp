#pragma once

#include <compare>
#include <vector>

#include "edd/instance.hpp"

namespace edd {

/// A valid permutation: fragment orders read left to right, plus the piece
/// order they induce. Indices are 0-based.
struct Solution {
  std::vector<Index> pi_a;
  std::vector<Index> pi_b;
  std::vector<LabeledLength> pi_c;
};

/// Length-level view of a solution. Two solutions with equal keys differ only
/// by swapping identical fragments.
struct SolutionKey {
  std::vector<Length> c;
  std::vector<Length> a;
  std::vector<Length> b;

  friend auto operator<=>(const SolutionKey&, const SolutionKey&) = default;
  friend bool operator==(const SolutionKey&, const SolutionKey&) = default;
};

SolutionKey value_key(const Solution& s, const EddInstance& inst);

/// The same layout read right to left.
Solution mirrored(const Solution& s);

/// Returns s or its mirror, whichever has the smaller key (pieces first).
Solution canonical_orientation(Solution s, const EddInstance& inst);

}  // namespace edd
