#include "edd/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "edd/error.hpp"

namespace edd {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(ErrorCode::Syntax, line, "expected a node number, got '" + std::string(token) + "'");
  }
  return value;
}

bool extend_path(const SimpleGraph& h, std::vector<std::size_t>& path, std::vector<bool>& used) {
  if (path.size() == h.node_count()) return true;
  for (std::size_t v = 1; v <= h.node_count(); ++v) {
    if (used[v] || (!path.empty() && !h.adjacent(path.back(), v))) continue;
    used[v] = true;
    path.push_back(v);
    if (extend_path(h, path, used)) return true;
    path.pop_back();
    used[v] = false;
  }
  return false;
}

}  // namespace

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  if (u < 1 || v < 1 || u > node_count_ || v > node_count_) {
    throw Error(ErrorCode::InvalidArgument, "edge endpoint outside 1.." + std::to_string(node_count_));
  }
  if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(u));
  if (!edges_.emplace(std::min(u, v), std::max(u, v)).second) {
    throw Error(ErrorCode::InvalidArgument,
                "repeated edge " + std::to_string(u) + " " + std::to_string(v));
  }
}

bool SimpleGraph::adjacent(std::size_t u, std::size_t v) const {
  return edges_.count({std::min(u, v), std::max(u, v)}) != 0;
}

std::size_t SimpleGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& [x, y] : edges_) d += (x == v || y == v) ? 1 : 0;
  return d;
}

SimpleGraph parse_graph(std::string_view text) {
  SimpleGraph g;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2 || tokens[0] != "GRAPH") {
        throw ParseError(ErrorCode::Syntax, line_no, "expected 'GRAPH <node_count>'");
      }
      g = SimpleGraph(parse_count(tokens[1], line_no));
      have_header = true;
      continue;
    }
    if (tokens.size() != 2) throw ParseError(ErrorCode::Syntax, line_no, "expected an edge 'u v'");
    std::size_t u = parse_count(tokens[0], line_no);
    std::size_t v = parse_count(tokens[1], line_no);
    try {
      g.add_edge(u, v);
    } catch (const Error& e) {
      throw ParseError(ErrorCode::Syntax, line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(ErrorCode::Syntax, line_no, "missing GRAPH header");
  return g;
}

std::string serialize_graph(const SimpleGraph& g) {
  std::ostringstream os;
  os << "GRAPH " << g.node_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

AugmentedGraph augment(const SimpleGraph& h) {
  if (h.node_count() < 1) throw Error(ErrorCode::InvalidArgument, "graph needs at least one node");
  AugmentedGraph aug;
  aug.original_count = h.node_count();
  aug.t = h.node_count() + 1;
  aug.z = h.node_count() + 2;
  aug.ell = h.node_count() + 2;
  aug.graph = SimpleGraph(aug.ell);
  for (const auto& [u, v] : h.edges()) aug.graph.add_edge(u, v);
  for (std::size_t v = 1; v <= h.node_count(); ++v) aug.graph.add_edge(v, aug.t);
  aug.graph.add_edge(aug.t, aug.z);
  return aug;
}

std::vector<std::string> Reduction::sidecar_comments() const {
  auto name = [this](std::size_t v) {
    if (v == augmented.t) return std::string("t");
    if (v == augmented.z) return std::string("z");
    return std::to_string(v);
  };
  std::vector<std::string> out;
  out.push_back("reduced from a graph on " + std::to_string(augmented.original_count) + " nodes; t = " +
                std::to_string(augmented.t) + ", z = " + std::to_string(augmented.z) + ", v' = v + " +
                std::to_string(augmented.ell));
  for (std::size_t i = 0; i < a_node.size(); ++i) {
    out.push_back("node A" + std::to_string(i + 1) + " = " + name(a_node[i]));
  }
  for (std::size_t j = 0; j < b_origin.size(); ++j) {
    std::string label = name(b_origin[j].node);
    if (b_origin[j].copy > 0) label += "(" + std::to_string(b_origin[j].copy) + ")";
    out.push_back("node B" + std::to_string(j + 1) + " = " + label);
  }
  return out;
}

Reduction reduce(const SimpleGraph& h) {
  Reduction r;
  r.augmented = augment(h);
  const AugmentedGraph& aug = r.augmented;
  EddInstance& inst = r.instance;

  for (std::size_t v = 1; v <= aug.ell; ++v) {
    std::vector<Length> pieces;
    if (v == aug.z) {
      pieces.push_back(aug.prime(aug.t));
    } else if (v == aug.t) {
      for (std::size_t u = 1; u <= aug.original_count; ++u) pieces.push_back(aug.prime(u));
      pieces.push_back(aug.t);
    } else {
      for (std::size_t u = 1; u <= aug.ell; ++u) {
        if (aug.graph.adjacent(u, v)) pieces.push_back(aug.prime(u));
      }
      pieces.push_back(v);
    }
    std::sort(pieces.begin(), pieces.end());
    Length total = 0;
    for (Length c : pieces) total += c;
    inst.a_lengths.push_back(total);
    inst.ab_sets.push_back(std::move(pieces));
    r.a_node.push_back(v);
  }

  for (std::size_t v = 1; v <= aug.ell; ++v) {
    if (v == aug.z) continue;
    inst.b_lengths.push_back(v + aug.prime(v));
    inst.ba_sets.push_back({v, aug.prime(v)});
    r.b_origin.push_back({v, 0});
    for (std::size_t i = 1; i < aug.kappa(v); ++i) {
      inst.b_lengths.push_back(aug.prime(v));
      inst.ba_sets.push_back({aug.prime(v)});
      r.b_origin.push_back({v, i});
    }
  }

  auto report = validate_consistency(inst);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidArgument, "reduction produced an inconsistent instance: " +
                                                report.violations.front().detail);
  }
  return r;
}

std::vector<std::size_t> extract_path(const Solution& sol, const SimpleGraph& h) {
  const AugmentedGraph aug = augment(h);
  if (sol.pi_a.size() != aug.ell) {
    throw Error(ErrorCode::MalformedSolution, "pi_A has " + std::to_string(sol.pi_a.size()) +
                                                  " fragments, expected " + std::to_string(aug.ell));
  }
  // A line i is node i + 1.
  std::vector<std::size_t> nodes;
  for (Index i : sol.pi_a) nodes.push_back(static_cast<std::size_t>(i) + 1);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    if (!aug.graph.adjacent(nodes[k], nodes[k + 1])) {
      throw Error(ErrorCode::MalformedSolution, "consecutive fragments for nodes " + std::to_string(nodes[k]) +
                                                    " and " + std::to_string(nodes[k + 1]) +
                                                    " are not adjacent");
    }
  }
  if (nodes.back() == aug.z) std::reverse(nodes.begin(), nodes.end());
  if (nodes.front() != aug.z || nodes[1] != aug.t) {
    throw Error(ErrorCode::MalformedSolution, "z and t are not at an end of pi_A");
  }
  std::vector<std::size_t> path(nodes.begin() + 2, nodes.end());
  std::reverse(path.begin(), path.end());
  return path;
}

bool is_hamiltonian_path(const SimpleGraph& h, const std::vector<std::size_t>& path) {
  if (path.size() != h.node_count()) return false;
  std::vector<bool> seen(h.node_count() + 1, false);
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::size_t v = path[k];
    if (v < 1 || v > h.node_count() || seen[v]) return false;
    seen[v] = true;
    if (k > 0 && !h.adjacent(path[k - 1], v)) return false;
  }
  return true;
}

bool has_hamiltonian_path(const SimpleGraph& h, std::size_t max_nodes) {
  if (h.node_count() > max_nodes) {
    throw Error(ErrorCode::CapExceeded, "Hamiltonian path search limited to " + std::to_string(max_nodes) +
                                            " nodes");
  }
  if (h.node_count() == 0) return false;
  std::vector<std::size_t> path;
  std::vector<bool> used(h.node_count() + 1, false);
  return extend_path(h, path, used);
}

}  // namespace edd
