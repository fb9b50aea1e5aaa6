#include "edd/instance.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "edd/error.hpp"

namespace edd {

namespace {

std::vector<Length> sorted_copy(const std::vector<Length>& values) {
  std::vector<Length> out = values;
  std::sort(out.begin(), out.end());
  return out;
}

bool same_multisets(const std::vector<std::vector<Length>>& lhs,
                    const std::vector<std::vector<Length>>& rhs) {
  if (lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i].size() != rhs[i].size()) return false;
    if (sorted_copy(lhs[i]) != sorted_copy(rhs[i])) return false;
  }
  return true;
}

// ---- parsing ---------------------------------------------------------------

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

std::uint64_t parse_unsigned(std::string_view token, std::size_t line, const char* what) {
  if (!token.empty() && token.front() == '-') {
    bool digits = token.size() > 1 &&
                  std::all_of(token.begin() + 1, token.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (digits) {
      throw ParseError(ErrorCode::NonPositiveLength, line,
                       std::string(what) + " must be positive, got '" + std::string(token) + "'");
    }
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(ErrorCode::Overflow, line,
                     std::string(what) + " '" + std::string(token) + "' exceeds 2^63-1");
  }
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(ErrorCode::Syntax, line,
                     "expected a decimal integer for " + std::string(what) + ", got '" +
                         std::string(token) + "'");
  }
  return value;
}

Length parse_length(std::string_view token, std::size_t line) {
  std::uint64_t value = parse_unsigned(token, line, "length");
  if (value == 0) throw ParseError(ErrorCode::NonPositiveLength, line, "length must be positive, got 0");
  if (value > kMaxLength) {
    throw ParseError(ErrorCode::Overflow, line, "length '" + std::string(token) + "' exceeds 2^63-1");
  }
  return value;
}

std::vector<Length> parse_lengths(std::span<const std::string_view> tokens, std::size_t line,
                                  std::string_view keyword) {
  if (tokens.empty()) {
    throw ParseError(ErrorCode::Syntax, line, std::string(keyword) + " line needs at least one length");
  }
  std::vector<Length> out;
  out.reserve(tokens.size());
  for (auto token : tokens) out.push_back(parse_length(token, line));
  return out;
}

// Shared handling of the AB / BA lines.
void parse_subset_line(std::span<const std::string_view> tokens, std::size_t line,
                       std::string_view keyword, std::size_t declared,
                       std::vector<std::vector<Length>>& sets, std::vector<std::size_t>& seen_at) {
  if (tokens.size() < 2) {
    throw ParseError(ErrorCode::Syntax, line, std::string(keyword) + " line needs an index and lengths");
  }
  std::uint64_t index = parse_unsigned(tokens[1], line, "index");
  if (index < 1 || index > declared) {
    throw ParseError(ErrorCode::IndexOutOfRange, line,
                     std::string(keyword) + " index " + std::to_string(index) + " outside 1.." +
                         std::to_string(declared));
  }
  std::size_t slot = static_cast<std::size_t>(index - 1);
  if (seen_at[slot] != 0) {
    throw ParseError(ErrorCode::DuplicateSection, line,
                     std::string(keyword) + " " + std::to_string(index) + " already given on line " +
                         std::to_string(seen_at[slot]));
  }
  seen_at[slot] = line;
  auto values = parse_lengths(tokens.subspan(2), line, keyword);
  std::sort(values.begin(), values.end());
  sets[slot] = std::move(values);
}

void append_number(std::string& out, std::uint64_t value) {
  char buffer[24];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  out.append(buffer, ptr);
}

void append_line(std::string& out, std::string_view keyword, std::optional<std::size_t> index,
                 const std::vector<Length>& values) {
  out.append(keyword);
  if (index) {
    out.push_back(' ');
    append_number(out, *index);
  }
  for (Length v : values) {
    out.push_back(' ');
    append_number(out, v);
  }
  out.push_back('\n');
}

// Saturating a += b; returns false on overflow.
bool checked_add(std::uint64_t& acc, std::uint64_t value) {
  return !__builtin_add_overflow(acc, value, &acc);
}

std::string describe_difference(const std::vector<Length>& only, const char* side) {
  std::ostringstream os;
  os << "only in " << side << ":";
  std::size_t shown = 0;
  for (Length v : only) {
    if (shown == 8) {
      os << " ... (" << only.size() << " total)";
      break;
    }
    os << ' ' << v;
    ++shown;
  }
  return os.str();
}

std::uint64_t saturating_factorial_product(std::uint64_t acc, std::size_t m) {
  for (std::size_t k = 2; k <= m; ++k) {
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(acc, static_cast<std::uint64_t>(k), &next)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    acc = next;
  }
  return acc;
}

}  // namespace

std::size_t EddInstance::c_count() const noexcept {
  std::size_t total = 0;
  for (const auto& set : ab_sets) total += set.size();
  return total;
}

bool operator==(const EddInstance& lhs, const EddInstance& rhs) {
  return lhs.a_lengths == rhs.a_lengths && lhs.b_lengths == rhs.b_lengths &&
         same_multisets(lhs.ab_sets, rhs.ab_sets) && same_multisets(lhs.ba_sets, rhs.ba_sets);
}

EddInstance parse_instance(std::string_view text) {
  EddInstance inst;
  bool have_header = false;
  std::size_t a_line = 0;
  std::size_t b_line = 0;
  std::vector<std::size_t> ab_seen;
  std::vector<std::size_t> ba_seen;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (end == text.size() && line.empty()) break;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    last_line = line_no;
    std::string_view keyword = tokens.front();

    if (!have_header) {
      if (keyword != "EDD") throw ParseError(ErrorCode::Syntax, line_no, "expected 'EDD 1' header");
      if (tokens.size() != 2 || tokens[1] != "1") {
        throw ParseError(ErrorCode::Syntax, line_no, "unsupported EDD version line");
      }
      have_header = true;
      continue;
    }

    std::span<const std::string_view> rest(tokens.data() + 1, tokens.size() - 1);
    if (keyword == "A") {
      if (a_line != 0) {
        throw ParseError(ErrorCode::DuplicateSection, line_no,
                         "A already given on line " + std::to_string(a_line));
      }
      a_line = line_no;
      inst.a_lengths = parse_lengths(rest, line_no, keyword);
      inst.ab_sets.assign(inst.a_lengths.size(), {});
      ab_seen.assign(inst.a_lengths.size(), 0);
    } else if (keyword == "B") {
      if (b_line != 0) {
        throw ParseError(ErrorCode::DuplicateSection, line_no,
                         "B already given on line " + std::to_string(b_line));
      }
      b_line = line_no;
      inst.b_lengths = parse_lengths(rest, line_no, keyword);
      inst.ba_sets.assign(inst.b_lengths.size(), {});
      ba_seen.assign(inst.b_lengths.size(), 0);
    } else if (keyword == "AB") {
      if (a_line == 0) throw ParseError(ErrorCode::Syntax, line_no, "AB line before the A line");
      parse_subset_line(tokens, line_no, keyword, inst.p(), inst.ab_sets, ab_seen);
    } else if (keyword == "BA") {
      if (b_line == 0) throw ParseError(ErrorCode::Syntax, line_no, "BA line before the B line");
      parse_subset_line(tokens, line_no, keyword, inst.q(), inst.ba_sets, ba_seen);
    } else if (keyword == "EDD") {
      throw ParseError(ErrorCode::DuplicateSection, line_no, "repeated EDD header");
    } else {
      throw ParseError(ErrorCode::Syntax, line_no, "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  if (!have_header) throw ParseError(ErrorCode::Syntax, last_line, "missing 'EDD 1' header");
  if (a_line == 0) throw ParseError(ErrorCode::MissingSection, last_line, "missing A line");
  if (b_line == 0) throw ParseError(ErrorCode::MissingSection, last_line, "missing B line");
  for (std::size_t i = 0; i < ab_seen.size(); ++i) {
    if (ab_seen[i] == 0) {
      throw ParseError(ErrorCode::MissingSection, last_line, "missing AB " + std::to_string(i + 1));
    }
  }
  for (std::size_t j = 0; j < ba_seen.size(); ++j) {
    if (ba_seen[j] == 0) {
      throw ParseError(ErrorCode::MissingSection, last_line, "missing BA " + std::to_string(j + 1));
    }
  }
  return inst;
}

std::string serialize_instance(const EddInstance& inst, std::span<const std::string> header_comments) {
  std::string out;
  out.reserve(32 + 24 * (inst.p() + inst.q() + 2 * inst.c_count()));
  out.append("EDD 1\n");
  for (const auto& comment : header_comments) {
    out.append("# ");
    out.append(comment);
    out.push_back('\n');
  }
  append_line(out, "A", std::nullopt, inst.a_lengths);
  append_line(out, "B", std::nullopt, inst.b_lengths);
  for (std::size_t i = 0; i < inst.ab_sets.size(); ++i) {
    append_line(out, "AB", i + 1, sorted_copy(inst.ab_sets[i]));
  }
  for (std::size_t j = 0; j < inst.ba_sets.size(); ++j) {
    append_line(out, "BA", j + 1, sorted_copy(inst.ba_sets[j]));
  }
  return out;
}

const char* to_string(ConsistencyRule rule) {
  switch (rule) {
    case ConsistencyRule::SumA: return "SUM_A";
    case ConsistencyRule::SumB: return "SUM_B";
    case ConsistencyRule::UnionMismatch: return "UNION_MISMATCH";
    case ConsistencyRule::Count: return "COUNT";
  }
  return "UNKNOWN";
}

bool ConsistencyReport::has(ConsistencyRule rule) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [rule](const ConsistencyViolation& v) { return v.rule == rule; });
}

ConsistencyReport validate_consistency(const EddInstance& inst) {
  if (inst.ab_sets.size() != inst.p() || inst.ba_sets.size() != inst.q()) {
    throw Error(ErrorCode::InvalidArgument, "instance has mismatched subset counts");
  }
  ConsistencyReport report;

  auto check_sums = [&report](const std::vector<Length>& lengths,
                              const std::vector<std::vector<Length>>& sets, ConsistencyRule rule,
                              const char* name) {
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      std::uint64_t sum = 0;
      bool fits = true;
      for (Length v : sets[i]) fits = fits && checked_add(sum, v);
      if (!fits || sum != lengths[i]) {
        std::ostringstream os;
        os << name << '_' << (i + 1) << " = " << lengths[i] << " but its sub-lengths sum to ";
        if (fits) {
          os << sum;
        } else {
          os << "more than 2^64";
        }
        report.violations.push_back({rule, i, os.str()});
      }
    }
  };
  check_sums(inst.a_lengths, inst.ab_sets, ConsistencyRule::SumA, "a");
  check_sums(inst.b_lengths, inst.ba_sets, ConsistencyRule::SumB, "b");

  std::vector<Length> ab_union;
  std::vector<Length> ba_union;
  for (const auto& set : inst.ab_sets) ab_union.insert(ab_union.end(), set.begin(), set.end());
  for (const auto& set : inst.ba_sets) ba_union.insert(ba_union.end(), set.begin(), set.end());
  std::sort(ab_union.begin(), ab_union.end());
  std::sort(ba_union.begin(), ba_union.end());
  if (ab_union != ba_union) {
    std::vector<Length> only_ab;
    std::vector<Length> only_ba;
    std::set_difference(ab_union.begin(), ab_union.end(), ba_union.begin(), ba_union.end(),
                        std::back_inserter(only_ab));
    std::set_difference(ba_union.begin(), ba_union.end(), ab_union.begin(), ab_union.end(),
                        std::back_inserter(only_ba));
    std::string detail = "union of AB differs from union of BA; " + describe_difference(only_ab, "AB") +
                         "; " + describe_difference(only_ba, "BA");
    report.violations.push_back({ConsistencyRule::UnionMismatch, std::nullopt, std::move(detail)});
  }

  std::size_t expected = inst.p() + inst.q() - 1;
  if (ab_union.size() != expected) {
    report.violations.push_back(
        {ConsistencyRule::Count, std::nullopt,
         "|C| = " + std::to_string(ab_union.size()) + " but p + q - 1 = " + std::to_string(expected)});
  }
  return report;
}

LabelingPlan make_labeling_plan(std::shared_ptr<const EddInstance> base) {
  const EddInstance& inst = *base;
  LabelingPlan plan;
  const std::size_t n = inst.c_count();
  plan.prototype.reserve(n);
  for (std::size_t i = 0; i < inst.p(); ++i) {
    auto values = sorted_copy(inst.ab_sets[i]);
    for (Length v : values) plan.prototype.push_back({v, static_cast<Index>(i), 0, 1});
  }

  // Pieces sorted by (value, a_owner): equal values form contiguous runs whose
  // order fixes the copy ids.
  std::vector<Index> a_side(n);
  std::iota(a_side.begin(), a_side.end(), Index{0});
  std::sort(a_side.begin(), a_side.end(), [&](Index x, Index y) {
    const auto& px = plan.prototype[x];
    const auto& py = plan.prototype[y];
    return px.value != py.value ? px.value < py.value : x < y;
  });

  std::vector<std::pair<Length, Index>> b_side;
  b_side.reserve(n);
  for (std::size_t j = 0; j < inst.q(); ++j) {
    for (Length v : inst.ba_sets[j]) b_side.emplace_back(v, static_cast<Index>(j));
  }
  std::sort(b_side.begin(), b_side.end());
  if (b_side.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "labeling requires a consistent instance");
  }

  std::uint64_t count = 1;
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    Length value = plan.prototype[a_side[start]].value;
    while (stop < n && plan.prototype[a_side[stop]].value == value) ++stop;
    for (std::size_t k = start; k < stop; ++k) {
      if (b_side[k].first != value) {
        throw Error(ErrorCode::InvalidArgument, "labeling requires a consistent instance");
      }
      plan.prototype[a_side[k]].copy_id = static_cast<Index>(k - start + 1);
    }
    if (stop - start == 1) {
      plan.prototype[a_side[start]].b_owner = b_side[start].second;
    } else {
      ValueGroup group;
      group.value = value;
      for (std::size_t k = start; k < stop; ++k) {
        group.elements.push_back(a_side[k]);
        group.b_owners.push_back(b_side[k].second);
      }
      count = saturating_factorial_product(count, stop - start);
      plan.groups.push_back(std::move(group));
    }
    start = stop;
  }
  plan.assignment_count = count;
  plan.base = std::move(base);
  return plan;
}

DuplicateAssignments::DuplicateAssignments(LabelingPlan plan) : plan_(std::move(plan)) {
  matchings_.reserve(plan_.groups.size());
  for (const auto& group : plan_.groups) {
    std::vector<Index> identity(group.elements.size());
    std::iota(identity.begin(), identity.end(), Index{0});
    matchings_.push_back(std::move(identity));
  }
}

std::optional<LabeledInstance> DuplicateAssignments::next() {
  if (exhausted_) return std::nullopt;

  LabeledInstance out;
  out.base = plan_.base;
  out.c_elements = plan_.prototype;
  out.assignment_id = next_id_++;
  for (std::size_t g = 0; g < plan_.groups.size(); ++g) {
    const auto& group = plan_.groups[g];
    for (std::size_t k = 0; k < group.elements.size(); ++k) {
      out.c_elements[group.elements[k]].b_owner = group.b_owners[matchings_[g][k]];
    }
  }

  // Odometer step, last group fastest.
  std::size_t g = matchings_.size();
  for (;;) {
    if (g == 0) {
      exhausted_ = true;
      break;
    }
    --g;
    if (std::next_permutation(matchings_[g].begin(), matchings_[g].end())) break;
    // next_permutation wrapped this group back to the identity; carry.
  }
  return out;
}

DuplicateAssignments label_duplicates(std::shared_ptr<const EddInstance> inst, std::uint64_t cap) {
  LabelingPlan plan = make_labeling_plan(std::move(inst));
  if (plan.assignment_count > cap) {
    throw Error(ErrorCode::AssignmentCapExceeded,
                "duplicate assignments (" + std::to_string(plan.assignment_count) + ") exceed cap " +
                    std::to_string(cap));
  }
  return DuplicateAssignments(std::move(plan));
}

DuplicateAssignments label_duplicates(const EddInstance& inst, std::uint64_t cap) {
  return label_duplicates(std::make_shared<const EddInstance>(inst), cap);
}

std::size_t duplicate_count(const EddInstance& inst) {
  std::vector<Length> all;
  for (const auto& set : inst.ab_sets) all.insert(all.end(), set.begin(), set.end());
  std::sort(all.begin(), all.end());
  auto distinct = static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  return all.size() - distinct;
}

}  // namespace edd
