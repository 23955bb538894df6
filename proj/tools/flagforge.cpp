#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "flagforge/certificate.hpp"
#include "flagforge/constructions.hpp"
#include "flagforge/oracle.hpp"
#include "flagforge/sdpgen.hpp"

using namespace flagforge;
using nlohmann::json;

namespace {

struct Globals {
  bool json_out = false;
  int threads = 0;
  std::uint64_t seed = 1;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string vertex_list(SmallGraph::Row mask, const SmallGraph& f) {
  std::string out = "{";
  bool first = true;
  for (int v = 0; v < f.order(); ++v)
    if ((mask >> v) & 1u) {
      out += (first ? "" : ",") + std::to_string(v + 1);
      first = false;
    }
  return out + "}";
}

int cmd_enumerate(const Globals& g, int order, int alpha_lt, const std::string& flags_of, int flag_order,
                  const std::vector<std::string>& forbid) {
  Admissibility rule{alpha_lt, {}};
  for (const auto& f : forbid) rule.forbidden.push_back(parse_graph(f));
  std::vector<std::string> keys;
  if (flags_of.empty()) {
    keys = admissible_graphs(order, rule);
  } else {
    const TypeSpec tau{parse_graph(flags_of)};
    const int m = flag_order > 0 ? flag_order : flag_order_for(order, tau);
    for (const auto& f : enumerate_flags(tau, m, rule)) keys.push_back(f.to_string());
  }
  if (g.json_out) {
    std::cout << json{{"keys", keys}, {"count", keys.size()}}.dump(2) << "\n";
  } else {
    for (const auto& k : keys) std::cout << k << "\n";
    std::cout << "count " << keys.size() << "\n";
  }
  return 0;
}

int cmd_verify(const Globals& g, const std::string& path) {
  const Certificate cert = load_certificate(path, false);
  const auto rep = verify(cert);
  if (g.json_out) {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    for (const auto& s : rep.stages) {
      std::cout << "stage " << s.name << ": " << (!s.ran ? "SKIPPED" : s.passed ? "PASS" : "FAIL") << "\n";
      for (const auto& d : s.details) std::cout << "  " << d << "\n";
    }
    if (rep.bound) {
      std::cout << "derived bound: " << rational_to_string(rep.bound->derived_bound) << "\n";
      std::cout << "claimed bound: " << rational_to_string(rep.bound->claimed_bound) << "\n";
      std::cout << "sharp graphs (" << rep.sharp_keys.size() << "):";
      for (const auto& k : rep.sharp_keys) std::cout << " " << k;
      std::cout << "\n";
    }
    std::cout << (rep.verified ? "VERIFIED" : "NOT VERIFIED") << "\n";
  }
  return rep.verified ? kVerified : kFailed;
}

int cmd_bound(const std::string& path, const std::string& pattern_text) {
  const Certificate cert = load_certificate(path, true);
  const auto b = derive_bound(cert);
  json out;
  out["derived_bound"] = rational_to_string(b.derived_bound);
  out["claimed_bound"] = rational_to_string(b.claimed_bound);
  out["ok"] = b.ok;
  json per = json::array();
  for (std::size_t i = 0; i < cert.admissible_graphs.size(); ++i)
    per.push_back({{"graph", cert.admissible_graphs[i].to_string()},
                   {"alpha", rational_to_string(b.alpha[i])},
                   {"slack", rational_to_string(b.slack[i])}});
  out["graphs"] = per;
  json sharp = json::array();
  for (auto i : b.sharp) sharp.push_back(cert.admissible_graphs[i].to_string());
  out["sharp"] = sharp;
  bool kernel_ok = true;
  if (!pattern_text.empty()) {
    const auto rep = check_forced_kernel(cert, parse_pattern(pattern_text));
    kernel_ok = rep.ok;
    json vecs = json::array();
    for (const auto& e : rep.entries) {
      json v = json::array();
      for (const auto& x : e.vector) v.push_back(rational_to_string(x));
      vecs.push_back({{"type", cert.types[e.type_index].to_string()}, {"vector", v}, {"in_kernel", e.in_kernel}});
    }
    out["forced_kernel"] = {{"ok", rep.ok}, {"vectors", vecs}};
  }
  std::cout << out.dump(2) << "\n";
  return b.ok && kernel_ok ? 0 : 1;
}

int cmd_construct(const Globals& g, const std::string& spec, int k, const std::string& sizes_text) {
  const PatternGraph p = parse_pattern(spec);
  json out{{"pattern", p.to_string()}, {"k", k}, {"limit_density", rational_to_string(clique_density_limit(p, k))}};
  if (!sizes_text.empty()) {
    const auto sizes = parse_int_list(sizes_text);
    out["sizes"] = sizes;
    out["clique_count"] = expansion_clique_count(p, sizes, k).get_str();
    int total = 0;
    for (int s : sizes) total += s;
    if (total <= SmallGraph::kMaxOrder) out["graph"] = expansion_graph(p, sizes).to_string();
  }
  if (g.json_out) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto it = out.begin(); it != out.end(); ++it)
      std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
  return 0;
}

int cmd_strict(const Globals& g, const std::string& spec, int l, int k, const std::string& bound) {
  const PatternGraph p = parse_pattern(spec);
  const auto rep = check_strict(p.base, l, k, parse_rational(bound));
  std::vector<std::string> viol;
  for (auto x : rep.violations) viol.push_back(vertex_list(x, p.base));
  if (g.json_out) {
    std::cout << json{{"strict", rep.strict}, {"legal_sets", rep.legal_count}, {"violations", viol}}.dump(2) << "\n";
  } else {
    std::cout << "legal sets: " << rep.legal_count << "\n";
    for (const auto& v : viol) std::cout << "violation: " << v << "\n";
    std::cout << (rep.strict ? "STRICT" : "NOT STRICT") << "\n";
  }
  return rep.strict ? 0 : 1;
}

std::string set_text(const std::vector<std::string>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
  return out + "}";
}

int cmd_clebsch(const Globals& g) {
  const auto audit = clebsch_equivalence_audit();
  const auto mis = maximal_independent_sets(clebsch_graph(), clebsch_vertex("00000"));
  int size5 = 0, size4 = 0;
  for (auto m : mis) {
    if (std::popcount(m) == 5) ++size5;
    if (std::popcount(m) == 4) ++size4;
  }
  if (g.json_out) {
    json rows = json::array();
    for (const auto& r : audit.reduced)
      rows.push_back({{"x", r.x}, {"y", r.y}, {"z", r.z}, {"x_class", r.x_class}, {"y_class", r.y_class}});
    std::cout << json{{"x_equivalence_trivial", audit.x_equivalence_trivial},
                      {"pairs_checked", audit.full.size()},
                      {"failures", audit.failures.size()},
                      {"reduced", rows},
                      {"maximal_independent_sets_through_00000", {{"size5", size5}, {"size4", size4}}},
                      {"passed", audit.passed()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "x     y     z     [x]_Z  [y]_Z\n";
    for (const auto& r : audit.reduced)
      std::cout << r.x << " " << r.y << " " << r.z << " " << set_text(r.x_class) << " " << set_text(r.y_class) << "\n";
    std::cout << "orbits: " << audit.reduced.size() << ", pairs: " << audit.full.size()
              << ", failures: " << audit.failures.size() << "\n";
    std::cout << "X-equivalence trivial: " << (audit.x_equivalence_trivial ? "yes" : "no") << "\n";
    std::cout << "maximal independent sets through 00000: " << size5 << " of size 5, " << size4 << " of size 4\n";
    std::cout << (audit.passed() ? "PASS" : "FAIL") << "\n";
  }
  return audit.passed() ? 0 : 1;
}

int cmd_oracle_f(int n, int k, int l, double budget) {
  const auto r = brute_force_f(n, k, l, budget);
  json out{{"n", n}, {"k", k}, {"l", l}, {"complete", r.complete}, {"seconds", r.seconds}};
  out["status"] = r.complete ? "complete" : "incomplete";
  out["value"] = r.value ? json(r.value->get_str()) : json(nullptr);
  out["extremal_keys"] = r.extremal_keys;
  std::cout << out.dump(2) << "\n";
  return r.complete ? 0 : 1;
}

int cmd_oracle_ramsey(int s, int t, int n, double budget) {
  const auto r = ramsey_check(s, t, n, budget);
  json out{{"s", s}, {"t", t}, {"n", n}, {"complete", r.complete}, {"exists", r.exists}};
  out["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
  std::cout << out.dump(2) << "\n";
  return r.complete ? 0 : 1;
}

int cmd_oracle_identity(const Globals& g, int order, int l, int trials) {
  const auto r = identity_audit(full_skeleton(order, l), trials, g.seed);
  json out{{"order", order}, {"l", l}, {"seed", r.seed}, {"cases", r.cases}, {"checks", r.checks},
           {"max_discrepancy", r.max_discrepancy.get_str()}, {"passed", r.passed()}};
  out["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
  std::cout << out.dump(2) << "\n";
  return r.passed() ? 0 : 1;
}

int cmd_sdp_gen(int k, int l, int order, const std::vector<std::string>& forbid, const std::string& types_text,
                const std::string& out_path, const std::string& skeleton_path) {
  std::vector<SmallGraph> extra;
  for (const auto& f : forbid) extra.push_back(parse_graph(f));
  std::optional<std::vector<TypeSpec>> types;
  if (!types_text.empty()) {
    types.emplace();
    if (types_text != "none") {
      std::stringstream ss(types_text);
      std::string item;
      while (std::getline(ss, item, ';')) types->push_back(TypeSpec{parse_graph(item)});
    }
  }
  const auto p = generate_sdp(k, l, order, extra, types);
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write " + out_path);
  write_sdpa(p, out);
  if (!skeleton_path.empty()) {
    std::ofstream sk(skeleton_path);
    if (!sk) throw ParseError("cannot write " + skeleton_path);
    sk << certificate_to_json(skeleton_certificate(p)).dump(2) << "\n";
  }
  std::cout << json{{"constraints", p.constraint_count()}, {"blocks", p.block_struct()}}.dump() << "\n";
  return 0;
}

int cmd_sdp_round(const std::string& skeleton_path, const std::string& solution_path, const std::string& pattern_text,
                  bool phantom, long dencap, const std::string& out_path) {
  const Certificate skeleton = load_certificate(skeleton_path, false);
  const SdpProblem p = problem_from_skeleton(skeleton);
  const SdpSolution sol = parse_sdpa_solution(read_file(solution_path), p);
  RoundingSpec spec{sol.type_blocks, {}, dencap};
  if (!pattern_text.empty())
    spec.forced_kernel = collect_forced_vectors(parse_pattern(pattern_text), p.types, p.flags, phantom, p.l);
  Certificate cert;
  try {
    cert = build_certificate(p, round_solution(p, spec));
  } catch (const RoundingError& e) {
    std::cerr << "rounding failed: " << e.what() << "\n";
    return 1;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write " + out_path);
  out << certificate_to_json(cert).dump(2) << "\n";
  std::cout << json{{"solver_objective", sol.objective}, {"derived_bound", rational_to_string(cert.claimed_bound)}}.dump()
            << "\n";
  return 0;
}

int cmd_optimize(const Globals& g, const std::string& graph, int k, double tol) {
  const auto r = optimize_weights(parse_graph(graph), k, tol, g.seed);
  std::ostringstream dens;
  dens << std::setprecision(17) << r.density;
  std::cout << json{{"exact", WeightOptimum::exact}, {"weights", r.weights}, {"density", dens.str()},
                    {"converged", r.converged}, {"iterations", r.iterations}}
                   .dump(2)
            << "\n";
  return r.converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flagforge: exact flag-algebra certificates for clique minimization"};
  Globals g;
  app.add_flag("--json", g.json_out, "Machine-readable output");
  app.add_option("--threads", g.threads, "Worker threads (default: OpenMP default)");
  app.add_option("--seed", g.seed, "Seed for randomized audits and optimizer restarts");
  app.set_version_flag("--version", std::string("flagforge 1.0.0, certificate convention ") + kConvention);
  app.require_subcommand(1);

  int order = 0, alpha_lt = 3, flag_order = 0;
  std::string flags_of;
  std::vector<std::string> forbid;
  auto* en = app.add_subcommand("enumerate", "List admissible graphs or flags");
  en->add_option("--order", order, "Graph order N")->required();
  en->add_option("--alpha-lt", alpha_lt, "Independence number bound l")->required();
  en->add_option("--flags", flags_of, "Type graph string: list its flags instead");
  en->add_option("--flag-order", flag_order, "Flag order M (default (N+v)/2)");
  en->add_option("--forbid", forbid, "Extra forbidden induced subgraphs");

  std::string cert_path, pattern_text;
  auto* ve = app.add_subcommand("verify", "Verify a certificate");
  ve->add_option("--cert", cert_path)->required();
  auto* bo = app.add_subcommand("bound", "Derive the bound of a certificate");
  bo->add_option("--cert", cert_path)->required();
  bo->add_option("--pattern", pattern_text, "Check forced zero eigenvectors for this pattern");

  int k = 3, l = 3;
  std::string sizes_text, bound_text;
  auto* co = app.add_subcommand("construct", "Clique densities of a pattern");
  co->add_option("--pattern", pattern_text)->required();
  co->add_option("--k", k)->required();
  co->add_option("--sizes", sizes_text, "Comma list of part sizes");
  auto* st = app.add_subcommand("strict", "Check strictness of a pattern");
  st->add_option("--pattern", pattern_text)->required();
  st->add_option("--l", l)->required();
  st->add_option("--k", k)->required();
  st->add_option("--bound", bound_text)->required();
  auto* cl = app.add_subcommand("clebsch-audit", "Equivalence audit on the Clebsch graph");

  auto* orc = app.add_subcommand("oracle", "Brute-force ground truth");
  orc->require_subcommand(1);
  int n = 0, s = 3, t = 3, trials = 0;
  double budget = 120;
  auto* of = orc->add_subcommand("f", "Exact f(n,k,l)");
  of->add_option("--n", n)->required();
  of->add_option("--k", k)->required();
  of->add_option("--l", l)->required();
  of->add_option("--budget", budget, "Seconds before reporting incomplete");
  auto* ora = orc->add_subcommand("ramsey", "Is there a graph with no K_s and no independent t-set?");
  ora->add_option("--s", s)->required();
  ora->add_option("--t", t)->required();
  ora->add_option("--n", n)->required();
  ora->add_option("--budget", budget);
  auto* oid = orc->add_subcommand("identity", "Double-counting identity audit");
  oid->add_option("--order", order)->required();
  oid->add_option("--l", l)->required();
  oid->add_option("--trials", trials, "Random graphs per order; 0 = exhaustive");

  auto* sdp = app.add_subcommand("sdp", "SDP emission and rounding");
  sdp->require_subcommand(1);
  std::string out_path, skeleton_path, types_text, solution_path;
  long dencap = 1L << 20;
  bool phantom = false;
  auto* sg = sdp->add_subcommand("gen", "Write an SDPA sparse problem");
  sg->add_option("--k", k)->required();
  sg->add_option("--l", l)->required();
  sg->add_option("--order", order)->required();
  sg->add_option("--forbid", forbid);
  sg->add_option("--types", types_text, "';'-separated type graphs, or 'none'");
  sg->add_option("--out", out_path)->required();
  sg->add_option("--skeleton", skeleton_path, "Also write a certificate skeleton");
  auto* sr = sdp->add_subcommand("round", "Round an SDPA solution into a certificate");
  sr->add_option("--skeleton", skeleton_path)->required();
  sr->add_option("--solution", solution_path)->required();
  sr->add_option("--pattern", pattern_text);
  sr->add_flag("--phantom", phantom);
  sr->add_option("--dencap", dencap);
  sr->add_option("--out", out_path)->required();

  std::string graph_text;
  double tol = 1e-12;
  auto* op = app.add_subcommand("optimize", "Minimize the clique density over part weights (floating point)");
  op->add_option("--graph", graph_text)->required();
  op->add_option("--k", k)->required();
  op->add_option("--tol", tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kMalformed;
  }
  if (g.threads > 0) set_thread_count(g.threads);

  try {
    if (en->parsed()) return cmd_enumerate(g, order, alpha_lt, flags_of, flag_order, forbid);
    if (ve->parsed()) return cmd_verify(g, cert_path);
    if (bo->parsed()) return cmd_bound(cert_path, pattern_text);
    if (co->parsed()) return cmd_construct(g, pattern_text, k, sizes_text);
    if (st->parsed()) return cmd_strict(g, pattern_text, l, k, bound_text);
    if (cl->parsed()) return cmd_clebsch(g);
    if (of->parsed()) return cmd_oracle_f(n, k, l, budget);
    if (ora->parsed()) return cmd_oracle_ramsey(s, t, n, budget);
    if (oid->parsed()) return cmd_oracle_identity(g, order, l, trials);
    if (sg->parsed()) return cmd_sdp_gen(k, l, order, forbid, types_text, out_path, skeleton_path);
    if (sr->parsed()) return cmd_sdp_round(skeleton_path, solution_path, pattern_text, phantom, dencap, out_path);
    if (op->parsed()) return cmd_optimize(g, graph_text, k, tol);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kMalformed;
}
