#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "edd/digest_graph.hpp"
#include "edd/error.hpp"
#include "edd/generator.hpp"
#include "edd/instance.hpp"
#include "edd/reduction.hpp"
#include "edd/solver.hpp"
#include "edd/verifier.hpp"

namespace edd::cli {

namespace {

using nlohmann::json;

// Reported as exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

EddInstance load_instance(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<std::uint64_t> parse_number_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  auto is_sep = [](char ch) { return ch == ',' || ch == ' ' || ch == '\t'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    std::size_t start = pos;
    while (pos < text.size() && !is_sep(text[pos])) ++pos;
    if (pos == start) break;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
    if (ec != std::errc() || ptr != text.data() + pos) {
      throw UsageError(std::string(what) + ": '" + text.substr(start, pos - start) + "' is not a number");
    }
    out.push_back(value);
  }
  return out;
}

// 1-based command-line indices to 0-based fragment indices.
std::vector<Index> parse_index_list(const std::string& text, std::size_t size, const char* what) {
  std::vector<Index> out;
  for (std::uint64_t v : parse_number_list(text, what)) {
    if (v < 1 || v > size) {
      throw UsageError(std::string(what) + ": index " + std::to_string(v) + " outside 1.." + std::to_string(size));
    }
    out.push_back(static_cast<Index>(v - 1));
  }
  return out;
}

template <typename Seq, typename F>
std::string join(const Seq& seq, F&& f) {
  std::string s;
  bool first = true;
  for (const auto& x : seq) {
    if (!first) s += ' ';
    first = false;
    s += std::to_string(f(x));
  }
  return s;
}

std::vector<Length> a_values(const Solution& s, const EddInstance& inst) {
  std::vector<Length> v;
  for (Index i : s.pi_a) v.push_back(inst.a_lengths[i]);
  return v;
}

std::vector<Length> b_values(const Solution& s, const EddInstance& inst) {
  std::vector<Length> v;
  for (Index j : s.pi_b) v.push_back(inst.b_lengths[j]);
  return v;
}

std::vector<Length> c_values(const Solution& s) {
  std::vector<Length> v;
  for (const auto& c : s.pi_c) v.push_back(c.value);
  return v;
}

std::vector<std::uint64_t> one_based(const std::vector<Index>& order) {
  std::vector<std::uint64_t> v;
  for (Index i : order) v.push_back(std::uint64_t{i} + 1);
  return v;
}

void print_solution(std::ostream& os, const Solution& s, const EddInstance& inst) {
  auto id = [](auto x) { return x; };
  os << "piA: " << join(a_values(s, inst), id) << '\n';
  os << "piB: " << join(b_values(s, inst), id) << '\n';
  os << "piC: " << join(c_values(s), id) << '\n';
  os << "piA-index: " << join(one_based(s.pi_a), id) << '\n';
  os << "piB-index: " << join(one_based(s.pi_b), id) << '\n';
}

json solution_json(const Solution& s, const EddInstance& inst) {
  return json{{"piA", a_values(s, inst)},
              {"piB", b_values(s, inst)},
              {"piC", c_values(s)},
              {"piA_index", one_based(s.pi_a)},
              {"piB_index", one_based(s.pi_b)}};
}

struct Output {
  bool json_mode = false;
  std::ostringstream text;
  json doc = json::object();
};

// ---------------------------------------------------------------- commands

int cmd_check(const std::string& path, Output& o) {
  EddInstance inst = load_instance(path);
  ConsistencyReport report = validate_consistency(inst);
  json violations = json::array();
  for (const auto& v : report.violations) {
    o.text << to_string(v.rule) << ": " << v.detail << '\n';
    violations.push_back({{"rule", to_string(v.rule)},
                          {"index", v.index ? json(*v.index + 1) : json(nullptr)},
                          {"detail", v.detail}});
  }
  if (report.ok()) o.text << "consistent\n";
  o.doc = {{"consistent", report.ok()}, {"violations", violations}};
  return report.ok() ? kOk : kNoSolution;
}

struct SolveOptions {
  bool all = false;
  std::optional<std::uint64_t> max_solutions;
  SolveLimits limits;
  bool emit_families = false;
  std::string dump_graph;
};

int cmd_solve(const std::string& path, const SolveOptions& opt, Output& o) {
  auto inst = std::make_shared<const EddInstance>(load_instance(path));
  ConsistencyReport report = validate_consistency(*inst);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    o.text << "invalid instance: " << to_string(v.rule) << ": " << v.detail << '\n';
    o.doc = {{"status", "invalid"}, {"rule", to_string(v.rule)}, {"detail", v.detail}};
    return kNoSolution;
  }

  SolveResult result = solve(inst, opt.limits);

  if (!opt.dump_graph.empty()) {
    std::optional<LabeledInstance> shown;
    if (result.solved()) {
      shown = result.families.front().labeled;
    } else {
      shown = label_duplicates(inst, opt.limits.max_assignments).next();
    }
    std::ostringstream edges;
    write_edge_list(edges, build_graph(*shown), *shown);
    write_file(opt.dump_graph, edges.str());
  }

  o.text << "assignments: " << result.assignment_count << " (examined " << result.assignments_examined << ")\n";
  o.doc = {{"assignment_count", result.assignment_count},
           {"assignments_examined", result.assignments_examined}};

  if (!result.solved()) {
    const char* reason = to_string(result.reason.value_or(StructureViolationKind::NotConnected));
    o.text << "no solution: " << reason << '\n';
    o.doc["status"] = "no_solution";
    o.doc["reason"] = reason;
    return kNoSolution;
  }
  o.doc["status"] = "solved";

  if (opt.emit_families) {
    json families = json::array();
    for (const auto& f : result.families) {
      std::string notation = format_family(f.family, f.labeled);
      o.text << "family (assignment " << f.assignment_id << "): " << notation << '\n';
      families.push_back({{"assignment_id", f.assignment_id},
                          {"notation", notation},
                          {"expansion_count", f.family.expansion_count()}});
    }
    o.doc["families"] = families;
  }

  const std::uint64_t wanted =
      opt.max_solutions ? *opt.max_solutions : (opt.all ? std::numeric_limits<std::uint64_t>::max() : 1);
  const std::uint64_t cap = std::min(wanted, opt.limits.max_expansions);
  Expansion expansion = collect_solutions(result, cap);

  json solutions = json::array();
  for (std::size_t k = 0; k < expansion.solutions.size(); ++k) {
    o.text << "solution " << (k + 1) << " (assignment " << expansion.assignment_ids[k] << ")\n";
    print_solution(o.text, expansion.solutions[k], *inst);
    json sj = solution_json(expansion.solutions[k], *inst);
    sj["assignment_id"] = expansion.assignment_ids[k];
    solutions.push_back(std::move(sj));
  }
  const bool cap_hit = expansion.truncated && opt.limits.max_expansions < wanted;
  o.text << "solutions shown: " << expansion.solutions.size();
  if (expansion.truncated) o.text << (cap_hit ? " (stopped at --max-expansions)" : " (more exist)");
  o.text << '\n';
  o.doc["solutions"] = solutions;
  o.doc["truncated"] = expansion.truncated;
  if (cap_hit) o.doc["status"] = "cap_exceeded";
  return cap_hit ? kCapExceeded : kOk;
}

int cmd_verify(const std::string& path, const std::string& pa_text, const std::string& pb_text, Output& o) {
  EddInstance inst = load_instance(path);
  auto pa = parse_index_list(pa_text, inst.p(), "--pa");
  auto pb = parse_index_list(pb_text, inst.q(), "--pb");
  VerifyResult r = verify_permutation(inst, pa, pb);
  if (r) {
    o.text << "valid\n";
  } else {
    o.text << "invalid: " << r.diagnostic << '\n';
  }
  o.doc = {{"valid", r.valid}, {"diagnostic", r.diagnostic}};
  return r ? kOk : kNoSolution;
}

int cmd_oracle(const std::string& path, std::size_t max_fragments, Output& o) {
  EddInstance inst = load_instance(path);
  auto solutions = brute_force_solve(inst, OracleLimits{max_fragments});
  o.text << "solutions: " << solutions.size() << '\n';
  json list = json::array();
  for (std::size_t k = 0; k < solutions.size(); ++k) {
    o.text << "solution " << (k + 1) << '\n';
    print_solution(o.text, solutions[k], inst);
    list.push_back(solution_json(solutions[k], inst));
  }
  o.doc = {{"count", solutions.size()}, {"solutions", list}};
  return solutions.empty() ? kNoSolution : kOk;
}

struct GenOptions {
  std::string cuts_a;
  std::string cuts_b;
  std::optional<Length> total;
  std::optional<std::uint64_t> seed;
  std::size_t p = 0;
  std::size_t q = 0;
  std::optional<Length> length;
  std::size_t min_duplicates = 0;
  bool distinct = false;
  std::string out;
  std::string truth;
};

int cmd_gen(const GenOptions& opt, Output& o) {
  GeneratedInstance g;
  std::vector<std::string> header;
  if (opt.total) {
    if (opt.seed) throw UsageError("gen: use either --total with cuts or --seed, not both");
    CutModel model{*opt.total, parse_number_list(opt.cuts_a, "--cuts-a"), parse_number_list(opt.cuts_b, "--cuts-b")};
    g = instance_from_cuts(model);
    header.push_back("generated from cut positions, total length " + std::to_string(*opt.total));
  } else if (opt.seed) {
    if (opt.p < 1 || opt.q < 1) throw UsageError("gen: --p and --q must be at least 1");
    std::ostringstream h;
    h << "generated with seed " << *opt.seed << ", p " << opt.p << ", q " << opt.q;
    if (opt.distinct) {
      g = random_distinct_instance(*opt.seed, opt.p, opt.q);
      h << ", distinct lengths";
    } else {
      if (!opt.length) throw UsageError("gen: --length is required unless --distinct is given");
      h << ", length " << *opt.length;
      if (opt.min_duplicates > 0) {
        g = random_instance_with_duplicates(*opt.seed, opt.p, opt.q, *opt.length, opt.min_duplicates);
        h << ", at least " << opt.min_duplicates << " duplicates";
      } else {
        g = random_instance(*opt.seed, opt.p, opt.q, *opt.length);
      }
    }
    header.push_back(h.str());
  } else {
    throw UsageError("gen: give --total with --cuts-a/--cuts-b, or --seed with --p/--q");
  }

  std::string text = serialize_instance(g.instance, header);
  std::string truth = serialize_ground_truth(g);
  if (!opt.truth.empty()) write_file(opt.truth, truth);
  if (!opt.out.empty()) {
    write_file(opt.out, text);
  } else {
    o.text << text;
  }
  o.doc = {{"instance", text}, {"ground_truth", truth}};
  return kOk;
}

SimpleGraph load_graph(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_graph(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_reduce_hp(const std::string& path, const std::string& out, Output& o) {
  SimpleGraph h = load_graph(path);
  if (h.node_count() < 1) throw UsageError(path + ": graph has no nodes");
  Reduction r = reduce(h);
  std::string text = serialize_instance(r.instance, r.sidecar_comments());
  if (!out.empty()) {
    write_file(out, text);
  } else {
    o.text << text;
  }
  json b_nodes = json::array();
  for (const auto& b : r.b_origin) b_nodes.push_back({{"node", b.node}, {"copy", b.copy}});
  o.doc = {{"instance", text}, {"a_nodes", r.a_node}, {"b_nodes", b_nodes}};
  return kOk;
}

// Reads the first `piA-index:` and `piB-index:` lines of solve output.
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> read_solution_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::optional<std::vector<std::uint64_t>> pa;
  std::optional<std::vector<std::uint64_t>> pb;
  std::string line;
  while (std::getline(in, line) && !(pa && pb)) {
    auto take = [&](const std::string& prefix, auto& slot) {
      if (!slot && line.rfind(prefix, 0) == 0) slot = parse_number_list(line.substr(prefix.size()), prefix.c_str());
    };
    take("piA-index:", pa);
    take("piB-index:", pb);
  }
  if (!pa || !pb) throw UsageError(path + ": no piA-index/piB-index lines");
  return {*pa, *pb};
}

int cmd_extract_hp(const std::string& graph_path, const std::string& solution_path, Output& o) {
  SimpleGraph h = load_graph(graph_path);
  if (h.node_count() < 1) throw UsageError(graph_path + ": graph has no nodes");
  Reduction r = reduce(h);
  auto [pa_raw, pb_raw] = read_solution_file(solution_path);
  auto to_index = [&](const std::vector<std::uint64_t>& raw, std::size_t size) {
    std::vector<Index> out;
    for (auto v : raw) {
      if (v < 1 || v > size) throw UsageError(solution_path + ": index " + std::to_string(v) + " out of range");
      out.push_back(static_cast<Index>(v - 1));
    }
    return out;
  };
  Solution s;
  s.pi_a = to_index(pa_raw, r.instance.p());
  s.pi_b = to_index(pb_raw, r.instance.q());
  VerifyResult check = verify_permutation(r.instance, s.pi_a, s.pi_b);
  if (!check) {
    o.text << "invalid solution: " << check.diagnostic << '\n';
    o.doc = {{"valid", false}, {"diagnostic", check.diagnostic}};
    return kNoSolution;
  }
  std::vector<std::size_t> path = extract_path(s, h);
  const bool ok = is_hamiltonian_path(h, path);
  o.text << "path: " << join(path, [](auto x) { return x; }) << '\n';
  if (!ok) o.text << "not a Hamiltonian path\n";
  o.doc = {{"valid", true}, {"path", path}, {"hamiltonian", ok}};
  return ok ? kOk : kNoSolution;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::AssignmentCapExceeded:
    case ErrorCode::OracleCapExceeded:
    case ErrorCode::CapExceeded:
      return kCapExceeded;
    case ErrorCode::MalformedSolution:
    case ErrorCode::NotConsecutive:
    case ErrorCode::CoincidentCut:
    case ErrorCode::SumMismatch:
      return kNoSolution;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enhanced double digest solver", "edd"};
  app.require_subcommand(1);
  app.fallthrough();
  Output o;
  bool quiet = false;
  app.add_flag("--json", o.json_mode, "Print JSON instead of text");
  app.add_flag("--quiet,-q", quiet, "Print nothing; report through the exit status only");

  std::string file;
  std::string file2;

  auto* check = app.add_subcommand("check", "Check the length identities of an instance");
  check->add_option("file", file, "Instance file")->required();

  SolveOptions solve_opt;
  std::uint64_t max_solutions = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Find valid permutations");
  solve_cmd->add_option("file", file, "Instance file")->required();
  solve_cmd->add_flag("--all", solve_opt.all, "Print every solution up to --max-expansions");
  auto* max_sol_opt = solve_cmd->add_option("--max-solutions", max_solutions, "Print at most N solutions");
  solve_cmd->add_option("--max-assignments", solve_opt.limits.max_assignments, "Duplicate assignment cap")
      ->capture_default_str();
  solve_cmd->add_option("--max-expansions", solve_opt.limits.max_expansions, "Solution enumeration cap")
      ->capture_default_str();
  solve_cmd->add_flag("--emit-families", solve_opt.emit_families, "Print families in block notation");
  solve_cmd->add_option("--dump-graph", solve_opt.dump_graph, "Write the digest graph edge list to a file");

  std::string pa_text;
  std::string pb_text;
  auto* verify_cmd = app.add_subcommand("verify", "Check a candidate permutation");
  verify_cmd->add_option("file", file, "Instance file")->required();
  verify_cmd->add_option("--pa", pa_text, "A order, 1-based line indices")->required();
  verify_cmd->add_option("--pb", pb_text, "B order, 1-based line indices")->required();

  std::size_t max_fragments = OracleLimits{}.max_fragments;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force every permutation pair");
  oracle_cmd->add_option("file", file, "Instance file")->required();
  oracle_cmd->add_option("--max-fragments", max_fragments, "Largest p + q attempted")->capture_default_str();

  GenOptions gen_opt;
  Length total = 0;
  std::uint64_t seed = 0;
  Length length = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance with known answer");
  gen_cmd->add_option("--cuts-a", gen_opt.cuts_a, "First enzyme cut positions");
  gen_cmd->add_option("--cuts-b", gen_opt.cuts_b, "Second enzyme cut positions");
  auto* total_opt = gen_cmd->add_option("--total", total, "Sequence length for --cuts-a/--cuts-b");
  auto* seed_opt = gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("--p", gen_opt.p, "Number of A fragments");
  gen_cmd->add_option("--q", gen_opt.q, "Number of B fragments");
  auto* length_opt = gen_cmd->add_option("--length", length, "Sequence length for random cuts");
  gen_cmd->add_option("--min-duplicates", gen_opt.min_duplicates, "Redraw until this many repeated pieces");
  gen_cmd->add_flag("--distinct", gen_opt.distinct, "All pieces of distinct length");
  gen_cmd->add_option("--out", gen_opt.out, "Instance output file (default: stdout)");
  gen_cmd->add_option("--truth", gen_opt.truth, "Ground truth output file");

  std::string reduce_out;
  auto* reduce_cmd = app.add_subcommand("reduce-hp", "Build an instance from a Hamiltonian path question");
  reduce_cmd->add_option("graph", file, "Graph file")->required();
  reduce_cmd->add_option("--out", reduce_out, "Instance output file (default: stdout)");

  auto* extract_cmd = app.add_subcommand("extract-hp", "Read a Hamiltonian path off a solution");
  extract_cmd->add_option("graph", file, "Graph file")->required();
  extract_cmd->add_option("solution", file2, "Output of `edd solve` on the reduced instance")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  int status = kOk;
  try {
    if (check->parsed()) {
      status = cmd_check(file, o);
    } else if (solve_cmd->parsed()) {
      if (*max_sol_opt) solve_opt.max_solutions = max_solutions;
      status = cmd_solve(file, solve_opt, o);
    } else if (verify_cmd->parsed()) {
      status = cmd_verify(file, pa_text, pb_text, o);
    } else if (oracle_cmd->parsed()) {
      status = cmd_oracle(file, max_fragments, o);
    } else if (gen_cmd->parsed()) {
      if (*total_opt) gen_opt.total = total;
      if (*seed_opt) gen_opt.seed = seed;
      if (*length_opt) gen_opt.length = length;
      status = cmd_gen(gen_opt, o);
    } else if (reduce_cmd->parsed()) {
      status = cmd_reduce_hp(file, reduce_out, o);
    } else if (extract_cmd->parsed()) {
      status = cmd_extract_hp(file, file2, o);
    }
  } catch (const UsageError& e) {
    err << "edd: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "edd: " << to_string(e.code()) << ": " << e.what() << '\n';
    return status_for(e.code());
  }

  if (!quiet) {
    if (o.json_mode) {
      out << o.doc.dump(2) << '\n';
    } else {
      out << o.text.str();
    }
  }
  return status;
}

}  // namespace edd::cli
