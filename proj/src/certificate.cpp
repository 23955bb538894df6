#include "flagforge/certificate.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace flagforge {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw CertificateError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw CertificateError(path + "/" + key, "missing field");
  return *it;
}

const json& array_field(const json& obj, const std::string& key, const std::string& path) {
  const json& a = field(obj, key, path);
  if (!a.is_array()) throw CertificateError(path + "/" + key, "expected an array");
  return a;
}

int int_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer()) throw CertificateError(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw CertificateError(path, "expected a string");
  return v.get<std::string>();
}

Rational rational_at(const json& v, const std::string& path) {
  try {
    return parse_rational(string_at(v, path));
  } catch (const CertificateError&) {
    throw;
  } catch (const ParseError& e) {
    throw CertificateError(path, e.what());
  }
}

SmallGraph graph_at(const json& v, const std::string& path) {
  try {
    return parse_graph(string_at(v, path));
  } catch (const CertificateError&) {
    throw;
  } catch (const ParseError& e) {
    throw CertificateError(path, e.what());
  }
}

std::string admissibility_problem(const Problem& p, const SmallGraph& g) {
  if (independence_number(g) >= p.l)
    return "independence number " + std::to_string(independence_number(g)) + " is not below l = " +
           std::to_string(p.l);
  for (const auto& f : p.extra_forbidden)
    if (f.order() <= g.order() && count_induced(f, g, Execution::serial) > 0)
      return "contains the forbidden induced subgraph " + f.to_string();
  return {};
}

}  // namespace

Certificate parse_certificate(std::string_view text, bool check_complete) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateError("", std::string("invalid JSON: ") + e.what());
  }
  Certificate cert;

  const json& prob = field(doc, "problem", "");
  Problem& p = cert.problem;
  p.k = int_field(prob, "k", "/problem");
  p.l = int_field(prob, "l", "/problem");
  p.order = int_field(prob, "order", "/problem");
  p.convention = string_at(field(prob, "convention", "/problem"), "/problem/convention");
  if (p.convention != kConvention)
    throw CertificateError("/problem/convention", "unsupported convention '" + p.convention + "'");
  if (p.l < 2) throw CertificateError("/problem/l", "l must be at least 2");
  if (p.order < 1 || p.order > 10) throw CertificateError("/problem/order", "order must be in [1, 10]");
  if (p.k < 1 || p.k > p.order) throw CertificateError("/problem/k", "k must be in [1, order]");
  const json& forb = array_field(prob, "extra_forbidden", "/problem");
  for (std::size_t i = 0; i < forb.size(); ++i)
    p.extra_forbidden.push_back(graph_at(forb[i], "/problem/extra_forbidden/" + std::to_string(i)));

  cert.claimed_bound = rational_at(field(doc, "claimed_bound", ""), "/claimed_bound");

  const json& graphs = array_field(doc, "admissible_graphs", "");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const std::string path = "/admissible_graphs/" + std::to_string(i);
    SmallGraph g = graph_at(graphs[i], path);
    if (g.order() != p.order) throw CertificateError(path, "graph order differs from problem order");
    if (auto why = admissibility_problem(p, g); !why.empty()) throw CertificateError(path, "inadmissible: " + why);
    if (!seen.insert(canonical_key(g)).second) throw CertificateError(path, "duplicate isomorphism class");
    cert.admissible_graphs.push_back(std::move(g));
  }
  if (check_complete) {
    for (const auto& key : admissible_graphs(p.order, p.admissibility()))
      if (!seen.count(key)) throw CertificateError("/admissible_graphs", "incomplete: missing " + key);
  }

  const json& types = array_field(doc, "types", "");
  const json& flags = array_field(doc, "flags", "");
  const json& blocks = array_field(doc, "blocks", "");
  if (flags.size() != types.size()) throw CertificateError("/flags", "one flag list per type required");
  if (blocks.size() != types.size()) throw CertificateError("/blocks", "one block per type required");

  for (std::size_t t = 0; t < types.size(); ++t) {
    const std::string tpath = "/types/" + std::to_string(t);
    TypeSpec tau{graph_at(types[t], tpath)};
    const int gap = p.order - tau.order();
    if (gap <= 0 || gap % 2) throw CertificateError(tpath, "order - v(type) must be positive and even");
    if (auto why = admissibility_problem(p, tau.graph); !why.empty())
      throw CertificateError(tpath, "inadmissible: " + why);
    const int m = (p.order + tau.order()) / 2;

    const std::string fpath = "/flags/" + std::to_string(t);
    if (!flags[t].is_array()) throw CertificateError(fpath, "expected an array");
    std::vector<FlagSpec> list;
    for (std::size_t j = 0; j < flags[t].size(); ++j) {
      const std::string path = fpath + "/" + std::to_string(j);
      FlagSpec f;
      try {
        f = parse_flag(string_at(flags[t][j], path));
      } catch (const CertificateError&) {
        throw;
      } catch (const ParseError& e) {
        throw CertificateError(path, e.what());
      }
      if (f.labeled != tau.order() || f.order() != m)
        throw CertificateError(path, "flag must have " + std::to_string(m) + " vertices and " +
                                         std::to_string(tau.order()) + " labels");
      if (!(f.type() == tau)) throw CertificateError(path, "labelled part is not the type " + tau.to_string());
      if (auto why = admissibility_problem(p, f.graph); !why.empty())
        throw CertificateError(path, "inadmissible: " + why);
      list.push_back(std::move(f));
    }

    const std::string bpath = "/blocks/" + std::to_string(t);
    const json& qd = array_field(blocks[t], "qdash", bpath);
    const json& r = array_field(blocks[t], "r", bpath);
    PSDBlock block;
    for (std::size_t j = 0; j < qd.size(); ++j) {
      Rational q = rational_at(qd[j], bpath + "/qdash/" + std::to_string(j));
      if (q <= 0) throw CertificateError(bpath + "/qdash/" + std::to_string(j), "Q' entries must be positive");
      block.qdash.push_back(q);
    }
    if (r.size() != list.size())
      throw CertificateError(bpath + "/r", "R must have one row per flag (" + std::to_string(list.size()) + ")");
    block.r = RationalMatrix(list.size(), qd.size(), Rational(0));
    for (std::size_t a = 0; a < r.size(); ++a) {
      const std::string rpath = bpath + "/r/" + std::to_string(a);
      if (!r[a].is_array() || r[a].size() != qd.size())
        throw CertificateError(rpath, "row must have one entry per Q' entry");
      for (std::size_t b = 0; b < qd.size(); ++b) block.r(a, b) = rational_at(r[a][b], rpath + "/" + std::to_string(b));
    }
    cert.types.push_back(std::move(tau));
    cert.flags.push_back(std::move(list));
    cert.blocks.push_back(std::move(block));
  }
  return cert;
}

Certificate load_certificate(const std::string& path, bool check_complete) {
  std::ifstream in(path);
  if (!in) throw CertificateError("", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str(), check_complete);
}

json certificate_to_json(const Certificate& cert) {
  json doc;
  json forb = json::array();
  for (const auto& f : cert.problem.extra_forbidden) forb.push_back(f.to_string());
  doc["problem"] = {{"k", cert.problem.k},
                    {"l", cert.problem.l},
                    {"order", cert.problem.order},
                    {"extra_forbidden", forb},
                    {"convention", cert.problem.convention}};
  doc["claimed_bound"] = rational_to_string(cert.claimed_bound);
  doc["admissible_graphs"] = json::array();
  for (const auto& g : cert.admissible_graphs) doc["admissible_graphs"].push_back(g.to_string());
  doc["types"] = json::array();
  doc["flags"] = json::array();
  doc["blocks"] = json::array();
  for (std::size_t t = 0; t < cert.types.size(); ++t) {
    doc["types"].push_back(cert.types[t].to_string());
    json fl = json::array();
    for (const auto& f : cert.flags[t]) fl.push_back(f.to_string());
    doc["flags"].push_back(fl);
    json qd = json::array(), r = json::array();
    for (const auto& q : cert.blocks[t].qdash) qd.push_back(rational_to_string(q));
    for (std::size_t a = 0; a < cert.blocks[t].r.rows(); ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < cert.blocks[t].r.cols(); ++b) row.push_back(rational_to_string(cert.blocks[t].r(a, b)));
      r.push_back(row);
    }
    doc["blocks"].push_back({{"qdash", qd}, {"r", r}});
  }
  return doc;
}

VerificationReport verify(const Certificate& cert, Execution ex) {
  VerificationReport rep;
  const Problem& p = cert.problem;
  const Admissibility rule = p.admissibility();
  for (const auto& g : cert.admissible_graphs) rep.graph_keys.push_back(canonical_key(g));

  StageResult s1{"admissible_graphs", false, true, {}};
  {
    const auto expected = admissible_graphs(p.order, rule, ex);
    const std::set<std::string> want(expected.begin(), expected.end());
    const std::set<std::string> have(rep.graph_keys.begin(), rep.graph_keys.end());
    for (const auto& k : want)
      if (!have.count(k)) s1.details.push_back("missing " + k);
    for (const auto& k : have)
      if (!want.count(k)) s1.details.push_back("unexpected " + k);
    s1.passed = s1.details.empty();
  }
  rep.stages.push_back(s1);

  StageResult s2{"flags", true, true, {}};
  for (std::size_t t = 0; t < cert.types.size(); ++t) {
    std::set<std::string> want, have;
    for (const auto& f : enumerate_flags(cert.types[t], (p.order + cert.types[t].order()) / 2, rule, ex))
      want.insert(f.to_string());
    for (const auto& f : cert.flags[t]) {
      const auto key = canonical_flag_key(f);
      if (!have.insert(key).second) s2.details.push_back("type " + cert.types[t].to_string() + ": duplicate " + key);
    }
    for (const auto& k : want)
      if (!have.count(k)) s2.details.push_back("type " + cert.types[t].to_string() + ": missing " + k);
    for (const auto& k : have)
      if (!want.count(k)) s2.details.push_back("type " + cert.types[t].to_string() + ": unexpected " + k);
  }
  s2.passed = s2.details.empty();
  rep.stages.push_back(s2);

  StageResult s3{"psd", true, true, {}};
  for (std::size_t t = 0; t < cert.blocks.size(); ++t) {
    const auto& b = cert.blocks[t];
    const bool structural = std::all_of(b.qdash.begin(), b.qdash.end(), [](const Rational& q) { return q > 0; });
    const bool ldl = check_psd(assemble(b));
    if (!structural || !ldl)
      s3.details.push_back("block " + std::to_string(t) + ": structural " + (structural ? "ok" : "fail") +
                           ", LDL " + (ldl ? "ok" : "fail"));
  }
  s3.passed = s3.details.empty();
  rep.stages.push_back(s3);

  StageResult s4{"bound", false, false, {}};
  if (s1.passed && s2.passed && s3.passed) {
    s4.ran = true;
    rep.bound = derive_bound(cert, ex);
    s4.passed = rep.bound->ok;
    if (!s4.passed)
      s4.details.push_back("claimed bound " + rational_to_string(cert.claimed_bound) + " exceeds derived bound " +
                           rational_to_string(rep.bound->derived_bound) + " at graph " +
                           rep.graph_keys[*rep.bound->violating]);
    for (auto i : rep.bound->sharp) rep.sharp_keys.push_back(rep.graph_keys[i]);
  } else {
    s4.details.push_back("skipped: an earlier stage failed");
  }
  rep.stages.push_back(s4);
  rep.verified = s1.passed && s2.passed && s3.passed && s4.passed;
  return rep;
}

json VerificationReport::to_json() const {
  json out;
  out["verified"] = verified;
  out["convention"] = kConvention;
  out["stages"] = json::array();
  for (const auto& s : stages)
    out["stages"].push_back({{"stage", s.name}, {"ran", s.ran}, {"passed", s.passed}, {"details", s.details}});
  if (bound) {
    out["derived_bound"] = rational_to_string(bound->derived_bound);
    out["claimed_bound"] = rational_to_string(bound->claimed_bound);
    out["violating_graph"] = bound->violating ? json(graph_keys[*bound->violating]) : json(nullptr);
    json per = json::array();
    for (std::size_t i = 0; i < graph_keys.size(); ++i)
      per.push_back({{"graph", graph_keys[i]},
                     {"clique_density", rational_to_string(bound->clique_density[i])},
                     {"alpha", rational_to_string(bound->alpha[i])},
                     {"slack", rational_to_string(bound->slack[i])}});
    out["graphs"] = per;
  }
  out["sharp"] = sharp_keys;
  return out;
}

SharpComparison sharp_report(const Certificate& cert, const PatternGraph& pattern, Execution ex) {
  SharpComparison cmp;
  const auto bound = derive_bound(cert, ex);
  std::set<std::string> cert_sharp;
  for (auto i : bound.sharp) cert_sharp.insert(canonical_key(cert.admissible_graphs[i]));
  const auto embeds = map_indices<char>(
      cert.admissible_graphs.size(),
      [&](std::size_t i) { return static_cast<char>(embeds_in_blowup(cert.admissible_graphs[i], pattern)); }, ex);
  std::set<std::string> cons;
  for (std::size_t i = 0; i < embeds.size(); ++i)
    if (embeds[i]) cons.insert(canonical_key(cert.admissible_graphs[i]));
  cmp.certificate_sharp.assign(cert_sharp.begin(), cert_sharp.end());
  cmp.construction_sharp.assign(cons.begin(), cons.end());
  for (const auto& k : cons)
    if (!cert_sharp.count(k)) cmp.missing.push_back(k);
  cmp.contained = cmp.missing.empty();
  return cmp;
}

}  // namespace flagforge
