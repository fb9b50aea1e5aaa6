#include "edd/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "edd/error.hpp"
#include "edd/verifier.hpp"

namespace edd {

namespace {

// Uniform draw from [0, bound) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

// Floyd's sampling of k distinct values from [1, range], returned sorted.
std::vector<Length> sample_distinct(std::mt19937_64& rng, Length range, std::size_t k) {
  std::unordered_set<Length> chosen;
  chosen.reserve(k * 2);
  std::vector<Length> out;
  out.reserve(k);
  for (Length j = range - k + 1; j <= range; ++j) {
    Length t = 1 + uniform_below(rng, j);
    Length pick = chosen.count(t) ? j : t;
    chosen.insert(pick);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CutModel random_cuts(std::mt19937_64& rng, std::size_t p, std::size_t q, Length total_length) {
  std::vector<Length> positions = sample_distinct(rng, total_length - 1, p + q - 2);
  std::vector<Length> split = positions;
  shuffle(split, rng);
  CutModel model;
  model.total_length = total_length;
  model.cuts_a.assign(split.begin(), split.begin() + static_cast<std::ptrdiff_t>(p - 1));
  model.cuts_b.assign(split.begin() + static_cast<std::ptrdiff_t>(p - 1), split.end());
  std::sort(model.cuts_a.begin(), model.cuts_a.end());
  std::sort(model.cuts_b.begin(), model.cuts_b.end());
  return model;
}

void check_params(std::size_t p, std::size_t q, Length total_length) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InfeasibleParams, "p and q must be at least 1");
  if (total_length < 1 || total_length > kMaxLength) {
    throw Error(ErrorCode::InfeasibleParams, "total length must lie in [1, 2^63-1]");
  }
  if (total_length < p + q - 1) {
    throw Error(ErrorCode::InfeasibleParams, std::to_string(p + q - 2) + " distinct cuts do not fit in (0, " +
                                                 std::to_string(total_length) + ")");
  }
}

struct Fragments {
  std::vector<Length> lengths;
  std::vector<std::vector<Length>> subsets;
};

// Fragments between consecutive own cuts, with the pieces cut by either enzyme.
Fragments digest(const std::vector<Length>& own, const std::vector<Length>& all, Length total) {
  Fragments out;
  std::size_t k = 0;
  Length start = 0;
  for (std::size_t i = 0; i <= own.size(); ++i) {
    Length end = i < own.size() ? own[i] : total;
    out.lengths.push_back(end - start);
    std::vector<Length> pieces;
    Length piece_start = start;
    while (k < all.size() && all[k] < end) {
      if (all[k] > start) {
        pieces.push_back(all[k] - piece_start);
        piece_start = all[k];
      }
      ++k;
    }
    pieces.push_back(end - piece_start);
    std::sort(pieces.begin(), pieces.end());
    out.subsets.push_back(std::move(pieces));
    start = end;
  }
  return out;
}

// Sorts fragments by (length, subset); returns new index of each positional fragment.
std::vector<Index> sort_fragments(Fragments& f) {
  std::vector<Index> order(f.lengths.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    if (f.lengths[x] != f.lengths[y]) return f.lengths[x] < f.lengths[y];
    return f.subsets[x] < f.subsets[y];
  });
  Fragments sorted;
  std::vector<Index> new_index(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    new_index[order[r]] = static_cast<Index>(r);
    sorted.lengths.push_back(f.lengths[order[r]]);
    sorted.subsets.push_back(std::move(f.subsets[order[r]]));
  }
  f = std::move(sorted);
  return new_index;
}

bool strictly_inside(const std::vector<Length>& cuts, Length total) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] == 0 || cuts[i] >= total) return false;
    if (i > 0 && cuts[i] <= cuts[i - 1]) return false;
  }
  return true;
}

}  // namespace

GeneratedInstance instance_from_cuts(const CutModel& model) {
  if (model.total_length < 1 || model.total_length > kMaxLength) {
    throw Error(ErrorCode::InvalidArgument, "total length must lie in [1, 2^63-1]");
  }
  if (!strictly_inside(model.cuts_a, model.total_length) || !strictly_inside(model.cuts_b, model.total_length)) {
    throw Error(ErrorCode::InvalidArgument, "cuts must be strictly increasing and inside (0, total)");
  }
  std::vector<Length> all;
  std::merge(model.cuts_a.begin(), model.cuts_a.end(), model.cuts_b.begin(), model.cuts_b.end(),
             std::back_inserter(all));
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw Error(ErrorCode::InvalidArgument, "the two enzymes may not cut at the same position");
  }

  Fragments a = digest(model.cuts_a, all, model.total_length);
  Fragments b = digest(model.cuts_b, all, model.total_length);
  std::vector<Index> a_index = sort_fragments(a);
  std::vector<Index> b_index = sort_fragments(b);

  GeneratedInstance out;
  out.cuts = model;
  out.instance.a_lengths = std::move(a.lengths);
  out.instance.ab_sets = std::move(a.subsets);
  out.instance.b_lengths = std::move(b.lengths);
  out.instance.ba_sets = std::move(b.subsets);
  out.truth.pi_a = std::move(a_index);
  out.truth.pi_b = std::move(b_index);
  out.truth.pi_c = labeled_pieces(layout(out.truth.pi_a, out.truth.pi_b, out.instance));
  return out;
}

GeneratedInstance random_instance(std::uint64_t seed, std::size_t p, std::size_t q, Length total_length) {
  check_params(p, q, total_length);
  std::mt19937_64 rng(seed);
  return instance_from_cuts(random_cuts(rng, p, q, total_length));
}

GeneratedInstance random_instance_with_duplicates(std::uint64_t seed, std::size_t p, std::size_t q,
                                                  Length total_length, std::size_t min_duplicates,
                                                  std::size_t max_attempts) {
  check_params(p, q, total_length);
  if (min_duplicates > p + q - 2) {
    throw Error(ErrorCode::InfeasibleParams, "at most p + q - 2 pieces can repeat a length");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    auto generated = instance_from_cuts(random_cuts(rng, p, q, total_length));
    if (duplicate_count(generated.instance) >= min_duplicates) return generated;
  }
  throw Error(ErrorCode::InfeasibleParams, "no draw with " + std::to_string(min_duplicates) +
                                               " duplicate lengths in " + std::to_string(max_attempts) +
                                               " attempts");
}

GeneratedInstance random_distinct_instance(std::uint64_t seed, std::size_t p, std::size_t q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InfeasibleParams, "p and q must be at least 1");
  const std::size_t n = p + q - 1;
  std::mt19937_64 rng(seed);
  std::vector<Length> lengths = sample_distinct(rng, 8 * static_cast<Length>(n), n);
  shuffle(lengths, rng);

  std::vector<Length> boundaries;
  boundaries.reserve(n - 1);
  Length pos = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) boundaries.push_back(pos += lengths[k]);
  Length total = pos + lengths[n - 1];

  std::vector<Index> owner(n - 1);
  std::iota(owner.begin(), owner.end(), Index{0});
  shuffle(owner, rng);
  std::vector<bool> to_a(n - 1, false);
  for (std::size_t k = 0; k + 1 < p; ++k) to_a[owner[k]] = true;

  CutModel model;
  model.total_length = total;
  for (std::size_t k = 0; k + 1 < n; ++k) (to_a[k] ? model.cuts_a : model.cuts_b).push_back(boundaries[k]);
  return instance_from_cuts(model);
}

std::string serialize_ground_truth(const GeneratedInstance& generated) {
  std::ostringstream os;
  auto line = [&os](const char* tag, const auto& values, std::uint64_t offset) {
    os << tag;
    for (auto v : values) os << ' ' << v + offset;
    os << '\n';
  };
  os << "GT-L " << generated.cuts.total_length << '\n';
  line("GT-A", generated.cuts.cuts_a, 0);
  line("GT-B", generated.cuts.cuts_b, 0);
  line("GT-PA", generated.truth.pi_a, 1);
  line("GT-PB", generated.truth.pi_b, 1);
  return os.str();
}

}  // namespace edd
