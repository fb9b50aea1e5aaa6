#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "edd/instance.hpp"
#include "edd/solution.hpp"

namespace edd {

/// Restriction sites of both enzymes on a linear sequence [0, total_length].
/// Cuts are internal positions, strictly increasing, and the two sets are disjoint.
struct CutModel {
  Length total_length = 0;
  std::vector<Length> cuts_a;
  std::vector<Length> cuts_b;
};

struct GeneratedInstance {
  EddInstance instance;
  Solution truth;  // the order the fragments actually have on the sequence
  CutModel cuts;
};

/// Digests the sequence. Fragments are listed sorted by (length, sorted
/// sub-lengths), so the instance carries no positional hints; truth maps the
/// left-to-right order back onto those indices.
/// Throws Error(InvalidArgument) if the cut model is malformed.
GeneratedInstance instance_from_cuts(const CutModel& model);

/// Draws p-1 + q-1 distinct cut positions uniformly from (0, total_length)
/// with std::mt19937_64 seeded by seed, then splits them between the enzymes
/// at random. Same seed, same instance. Throws Error(InfeasibleParams).
GeneratedInstance random_instance(std::uint64_t seed, std::size_t p, std::size_t q, Length total_length);

/// Like random_instance, but redraws (continuing the same stream) until the
/// pieces contain at least min_duplicates repeated lengths. Throws
/// Error(InfeasibleParams) when max_attempts draws all fall short.
GeneratedInstance random_instance_with_duplicates(std::uint64_t seed, std::size_t p, std::size_t q,
                                                  Length total_length, std::size_t min_duplicates,
                                                  std::size_t max_attempts = 1000);

/// An instance with p + q - 1 pieces of pairwise distinct length, for
/// large-scale runs where uniform cuts would collide.
GeneratedInstance random_distinct_instance(std::uint64_t seed, std::size_t p, std::size_t q);

/// Sidecar text: `GT-L total`, `GT-A cuts...`, `GT-B cuts...`, and the true
/// orders as 1-based indices in `GT-PA ...` / `GT-PB ...`.
std::string serialize_ground_truth(const GeneratedInstance& generated);

}  // namespace edd
