#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "edd/instance.hpp"
#include "edd/solution.hpp"

namespace edd {

/// One double-digest piece [start, end) with the fragments covering it.
struct Piece {
  Length start = 0;
  Length end = 0;
  Index a_owner = 0;
  Index b_owner = 0;

  Length length() const noexcept { return end - start; }
};

/// Both fragment orders plotted on one line.
struct Layout {
  Length total_length = 0;
  std::vector<Length> a_boundaries;  // internal cut positions, strictly increasing
  std::vector<Length> b_boundaries;
  std::vector<Piece> pieces;         // left to right, covering [0, total_length]
};

/// Plots pa and pb (0-based fragment indices, left to right).
/// Throws Error with CoincidentCut when an internal A cut equals an internal B
/// cut, SumMismatch when the two totals differ, InvalidArgument when pa or pb
/// is not a permutation.
Layout layout(std::span<const Index> pa, std::span<const Index> pb, const EddInstance& inst);

struct VerifyResult {
  bool valid = false;
  std::string diagnostic;  // first failing check; empty when valid

  explicit operator bool() const noexcept { return valid; }
};

/// True iff the plotted pieces reproduce every AB_i and BA_j exactly.
VerifyResult verify_permutation(const EddInstance& inst, std::span<const Index> pa,
                                std::span<const Index> pb);

/// Pieces of a layout as labeled lengths; copy ids follow the labeling
/// convention (equal values numbered by A owner, then left to right).
std::vector<LabeledLength> labeled_pieces(const Layout& lay);

struct OracleLimits {
  std::size_t max_fragments = 12;  // p + q
};

/// Tries every pair of orders, keeps the valid ones in canonical orientation,
/// drops length-level duplicates and returns them sorted by key.
/// Throws Error(OracleCapExceeded) when p + q exceeds the limit.
std::vector<Solution> brute_force_solve(const EddInstance& inst, OracleLimits limits = {});

}  // namespace edd
