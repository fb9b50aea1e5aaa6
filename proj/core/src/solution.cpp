#include "edd/solution.hpp"

#include <algorithm>

namespace edd {

SolutionKey value_key(const Solution& s, const EddInstance& inst) {
  SolutionKey key;
  key.c.reserve(s.pi_c.size());
  for (const auto& piece : s.pi_c) key.c.push_back(piece.value);
  key.a.reserve(s.pi_a.size());
  for (Index i : s.pi_a) key.a.push_back(inst.a_lengths[i]);
  key.b.reserve(s.pi_b.size());
  for (Index j : s.pi_b) key.b.push_back(inst.b_lengths[j]);
  return key;
}

Solution mirrored(const Solution& s) {
  Solution out{{s.pi_a.rbegin(), s.pi_a.rend()},
               {s.pi_b.rbegin(), s.pi_b.rend()},
               {s.pi_c.rbegin(), s.pi_c.rend()}};
  return out;
}

Solution canonical_orientation(Solution s, const EddInstance& inst) {
  // Compare forward against reversed sequences without materialising the mirror.
  auto forward = value_key(s, inst);
  auto compare_reversed = [](const std::vector<Length>& v) {
    return std::lexicographical_compare_three_way(v.rbegin(), v.rend(), v.begin(), v.end());
  };
  std::strong_ordering order = compare_reversed(forward.c);
  if (order == std::strong_ordering::equal) order = compare_reversed(forward.a);
  if (order == std::strong_ordering::equal) order = compare_reversed(forward.b);
  if (order == std::strong_ordering::less) return mirrored(s);
  return s;
}

}  // namespace edd
