#include "edd/verifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "edd/error.hpp"

namespace edd {

namespace {

struct LayoutFailure {
  ErrorCode code;
  std::string message;
};

bool is_permutation_of_range(std::span<const Index> order, std::size_t size) {
  if (order.size() != size) return false;
  std::vector<bool> seen(size, false);
  for (Index i : order) {
    if (i >= size || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

std::optional<std::vector<Length>> boundaries_of(std::span<const Index> order,
                                                 const std::vector<Length>& lengths, Length& total) {
  std::vector<Length> cuts;
  cuts.reserve(order.size());
  Length pos = 0;
  for (Index i : order) {
    if (__builtin_add_overflow(pos, lengths[i], &pos)) return std::nullopt;
    cuts.push_back(pos);
  }
  total = pos;
  if (!cuts.empty()) cuts.pop_back();
  return cuts;
}

// Non-throwing core shared by layout() and the oracle's inner loop.
std::optional<Layout> try_layout(std::span<const Index> pa, std::span<const Index> pb,
                                 const EddInstance& inst, LayoutFailure& failure) {
  if (!is_permutation_of_range(pa, inst.p())) {
    failure = {ErrorCode::InvalidArgument, "pi_A is not a permutation of 1.." + std::to_string(inst.p())};
    return std::nullopt;
  }
  if (!is_permutation_of_range(pb, inst.q())) {
    failure = {ErrorCode::InvalidArgument, "pi_B is not a permutation of 1.." + std::to_string(inst.q())};
    return std::nullopt;
  }
  Layout lay;
  Length total_b = 0;
  auto a_cuts = boundaries_of(pa, inst.a_lengths, lay.total_length);
  auto b_cuts = boundaries_of(pb, inst.b_lengths, total_b);
  if (!a_cuts || !b_cuts || lay.total_length != total_b) {
    failure = {ErrorCode::SumMismatch, "A and B lengths do not sum to the same total"};
    return std::nullopt;
  }
  lay.a_boundaries = std::move(*a_cuts);
  lay.b_boundaries = std::move(*b_cuts);

  const auto& ac = lay.a_boundaries;
  const auto& bc = lay.b_boundaries;
  lay.pieces.reserve(ac.size() + bc.size() + 1);
  std::size_t ia = 0;
  std::size_t ib = 0;
  Length start = 0;
  while (ia < ac.size() || ib < bc.size()) {
    Length next;
    if (ib == bc.size() || (ia < ac.size() && ac[ia] < bc[ib])) {
      next = ac[ia];
      lay.pieces.push_back({start, next, pa[ia], pb[ib]});
      ++ia;
    } else if (ia == ac.size() || bc[ib] < ac[ia]) {
      next = bc[ib];
      lay.pieces.push_back({start, next, pa[ia], pb[ib]});
      ++ib;
    } else {
      failure = {ErrorCode::CoincidentCut,
                 "A and B both cut at position " + std::to_string(ac[ia])};
      return std::nullopt;
    }
    start = next;
  }
  lay.pieces.push_back({start, lay.total_length, pa[ia], pb[ib]});
  return lay;
}

std::string format_multiset(std::vector<Length> values) {
  std::sort(values.begin(), values.end());
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < values.size(); ++k) os << (k ? ", " : "") << values[k];
  os << '}';
  return os.str();
}

// Per-fragment comparison of the layout against the expected multisets.
// Pieces are bucketed by owner in one flat array; expected sets are sorted
// into a scratch buffer unless the caller says they already are.
std::optional<std::string> first_mismatch(const Layout& lay, const std::vector<std::vector<Length>>& ab,
                                          const std::vector<std::vector<Length>>& ba, bool presorted) {
  std::vector<Length> scratch;
  auto check_side = [&](const std::vector<std::vector<Length>>& expected, auto owner_of,
                        const char* name) -> std::optional<std::string> {
    std::vector<std::size_t> start(expected.size() + 1, 0);
    for (const auto& piece : lay.pieces) ++start[owner_of(piece) + 1];
    for (std::size_t i = 0; i < expected.size(); ++i) start[i + 1] += start[i];
    std::vector<Length> got(lay.pieces.size());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& piece : lay.pieces) got[fill[owner_of(piece)]++] = piece.length();
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto first = got.begin() + static_cast<std::ptrdiff_t>(start[i]);
      auto last = got.begin() + static_cast<std::ptrdiff_t>(start[i + 1]);
      std::sort(first, last);
      const std::vector<Length>* want = &expected[i];
      if (!presorted) {
        scratch = expected[i];
        std::sort(scratch.begin(), scratch.end());
        want = &scratch;
      }
      if (!std::equal(first, last, want->begin(), want->end())) {
        return std::string(name) + "_" + std::to_string(i + 1) + " expected " + format_multiset(*want) +
               " but the layout gives " + format_multiset(std::vector<Length>(first, last));
      }
    }
    return std::nullopt;
  };
  if (auto m = check_side(ab, [](const Piece& piece) { return piece.a_owner; }, "AB")) return m;
  return check_side(ba, [](const Piece& piece) { return piece.b_owner; }, "BA");
}

std::vector<std::vector<Length>> sorted_sets(const std::vector<std::vector<Length>>& sets) {
  auto out = sets;
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Layout layout(std::span<const Index> pa, std::span<const Index> pb, const EddInstance& inst) {
  LayoutFailure failure{ErrorCode::InvalidArgument, {}};
  auto lay = try_layout(pa, pb, inst, failure);
  if (!lay) throw Error(failure.code, failure.message);
  return std::move(*lay);
}

VerifyResult verify_permutation(const EddInstance& inst, std::span<const Index> pa,
                                std::span<const Index> pb) {
  if (inst.ab_sets.size() != inst.p() || inst.ba_sets.size() != inst.q()) {
    return {false, "instance has mismatched subset counts"};
  }
  LayoutFailure failure{ErrorCode::InvalidArgument, {}};
  auto lay = try_layout(pa, pb, inst, failure);
  if (!lay) return {false, std::string(to_string(failure.code)) + ": " + failure.message};

  // The union check is implied by the per-fragment checks but is the natural
  // first thing to report.
  std::vector<Length> pieces;
  pieces.reserve(lay->pieces.size());
  for (const auto& piece : lay->pieces) pieces.push_back(piece.length());
  std::sort(pieces.begin(), pieces.end());
  std::vector<Length> expected;
  for (const auto& set : inst.ab_sets) expected.insert(expected.end(), set.begin(), set.end());
  std::sort(expected.begin(), expected.end());
  if (pieces != expected) {
    return {false, "piece lengths " + format_multiset(pieces) + " differ from C " + format_multiset(expected)};
  }
  if (auto mismatch = first_mismatch(*lay, inst.ab_sets, inst.ba_sets, false)) {
    return {false, *mismatch};
  }
  return {true, {}};
}

std::vector<LabeledLength> labeled_pieces(const Layout& lay) {
  std::vector<LabeledLength> out;
  out.reserve(lay.pieces.size());
  for (const auto& piece : lay.pieces) out.push_back({piece.length(), piece.a_owner, piece.b_owner, 1});
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (out[x].value != out[y].value) return out[x].value < out[y].value;
    if (out[x].a_owner != out[y].a_owner) return out[x].a_owner < out[y].a_owner;
    return x < y;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (out[order[k]].value == out[order[k - 1]].value) out[order[k]].copy_id = out[order[k - 1]].copy_id + 1;
  }
  return out;
}

std::vector<Solution> brute_force_solve(const EddInstance& inst, OracleLimits limits) {
  if (inst.p() + inst.q() > limits.max_fragments) {
    throw Error(ErrorCode::OracleCapExceeded,
                "oracle limited to p + q <= " + std::to_string(limits.max_fragments) + ", got " +
                    std::to_string(inst.p() + inst.q()) + " (" + std::to_string(factorial(inst.p())) +
                    " x " + std::to_string(factorial(inst.q())) + " orders)");
  }
  if (inst.ab_sets.size() != inst.p() || inst.ba_sets.size() != inst.q()) return {};

  const auto ab_sorted = sorted_sets(inst.ab_sets);
  const auto ba_sorted = sorted_sets(inst.ba_sets);
  std::map<SolutionKey, Solution> found;

  std::vector<Index> pa(inst.p());
  std::iota(pa.begin(), pa.end(), Index{0});
  do {
    std::vector<Index> pb(inst.q());
    std::iota(pb.begin(), pb.end(), Index{0});
    do {
      LayoutFailure failure{ErrorCode::InvalidArgument, {}};
      auto lay = try_layout(pa, pb, inst, failure);
      if (!lay) {
        // A total mismatch rules out every pair.
        if (failure.code == ErrorCode::SumMismatch) return {};
        continue;
      }
      if (first_mismatch(*lay, ab_sorted, ba_sorted, true)) continue;
      Solution s{pa, pb, labeled_pieces(*lay)};
      s = canonical_orientation(std::move(s), inst);
      auto key = value_key(s, inst);
      found.try_emplace(std::move(key), std::move(s));
    } while (std::next_permutation(pb.begin(), pb.end()));
  } while (std::next_permutation(pa.begin(), pa.end()));

  std::vector<Solution> out;
  out.reserve(found.size());
  for (auto& [key, s] : found) out.push_back(std::move(s));
  return out;
}

}  // namespace edd
