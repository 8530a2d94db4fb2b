#include "mckay/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

namespace mckay {

namespace {

std::string vertex_triple(int i, int j, int w) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(w) + ")";
}

// Runs body; an exception from the library turns the check red.
void add_check(Report& r, const std::string& name, const std::function<std::vector<std::string>()>& body) {
  Check c;
  c.name = name;
  try {
    c.failures = body();
  } catch (const Error& e) {
    c.failures.push_back(e.what());
  }
  c.ok = c.failures.empty();
  r.checks.push_back(std::move(c));
}

long long binomial(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::string> d_squared_failures(const GinzburgPresentation& pres) {
  std::vector<std::string> out;
  for (const auto& [id, e] : check_d_squared(pres).failures)
    out.push_back(pres.quiver.arrows[static_cast<std::size_t>(id)].name + ": d^2 = " + element_to_string(pres.quiver, e));
  return out;
}

std::vector<std::string> bracket_failures(const GinzburgPresentation& pres) {
  const CyclicElement b = necklace_bracket(pres.potential, pres.potential, pres.quiver);
  if (is_zero(b)) return {};
  return {"{W,W} = " + element_to_string(pres.quiver, b)};
}

std::vector<std::string> homogeneity_failures(const GinzburgPresentation& pres) {
  if (check_d_homogeneous(pres)) return {};
  std::vector<std::string> out;
  for (const auto& a : pres.quiver.arrows)
    for (const auto& [p, c] : pres.differential[static_cast<std::size_t>(a.id)])
      if (path_degree(pres.quiver, p.arrows) != a.degree + 1 || path_weight(pres.quiver, p.arrows) != a.weight) {
        out.push_back(a.name + ": term " + path_to_string(pres.quiver, p));
        break;
      }
  if (out.empty()) out.push_back("differential is not homogeneous");
  return out;
}

std::vector<std::string> potential_degree_failures(const GinzburgPresentation& pres) {
  if (pres.potential.empty()) return {};
  const int d = homogeneous_degree(pres.quiver, pres.potential);
  if (d == 3 - pres.n) return {};
  return {"W has degree " + std::to_string(d) + ", expected " + std::to_string(3 - pres.n)};
}

std::vector<std::string> euler_failures(const GradedQuiver& q, const IrrepSet& irreps, int w_max) {
  const Representation v = natural_representation(irreps.group);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < irreps.size(); ++i)
    for (std::size_t j = 0; j < irreps.size(); ++j) {
      const auto euler = path_euler_characteristics(q, static_cast<int>(i), static_cast<int>(j), w_max);
      const auto molien = molien_table(irreps, v, i, j, static_cast<std::size_t>(w_max));
      for (int w = 0; w <= w_max; ++w) {
        const auto k = static_cast<std::size_t>(w);
        if (euler[k] != molien[k])
          out.push_back(vertex_triple(static_cast<int>(i), static_cast<int>(j), w) + ": euler " + std::to_string(euler[k]) +
                        ", molien " + std::to_string(molien[k]));
      }
    }
  return out;
}

// H^k = 0 for k != 0 and dim H^0 = expected(i, j, w).
std::vector<std::string> concentration_failures(const GinzburgPresentation& pres, int w_max, std::size_t budget,
                                                const std::function<long long(int, int, int)>& expected) {
  std::vector<std::string> out;
  for (const auto& vi : pres.quiver.vertices)
    for (const auto& vj : pres.quiver.vertices)
      for (int w = 0; w <= w_max; ++w) {
        const auto h = cohomology_dims(weight_component(pres, vi.id, vj.id, w, budget));
        const std::string at = vertex_triple(vi.id, vj.id, w);
        for (const auto& [k, dim] : h)
          if (k != 0 && dim != 0) out.push_back(at + ": dim H^" + std::to_string(k) + " = " + std::to_string(dim));
        const auto h0 = h.find(0);
        const long long got = h0 == h.end() ? 0 : static_cast<long long>(h0->second);
        const long long want = expected(vi.id, vj.id, w);
        if (got != want) out.push_back(at + ": dim H^0 = " + std::to_string(got) + ", expected " + std::to_string(want));
      }
  return out;
}

Json arrow_table(const GradedQuiver& q, const std::set<ArrowKind>& skip) {
  std::map<std::tuple<int, int, int>, int> counts;
  for (const auto& a : q.arrows) {
    if (skip.count(a.kind)) continue;
    ++counts[{-a.degree, a.source, a.target}];
  }
  Json out = Json::array();
  for (const auto& [key, c] : counts) {
    const auto [negdeg, s, t] = key;
    out.push_back({{"degree", -negdeg}, {"source", s}, {"target", t}, {"count", c}});
  }
  return out;
}

Json vertex_dims(const GradedQuiver& q) {
  Json out = Json::array();
  for (const auto& v : q.vertices) out.push_back(v.dim);
  return out;
}

Json potential_summary(const GinzburgPresentation& pres) {
  std::map<std::vector<int>, int> patterns;
  for (const auto& [p, c] : pres.potential) {
    std::vector<int> degrees;
    for (int a : p.arrows) degrees.push_back(pres.quiver.arrows[static_cast<std::size_t>(a)].degree);
    std::sort(degrees.rbegin(), degrees.rend());
    ++patterns[degrees];
  }
  Json pat = Json::array();
  for (const auto& [d, c] : patterns) pat.push_back({{"degrees", d}, {"terms", c}});
  return {{"terms", pres.potential.size()}, {"degree_patterns", pat}};
}

IrrepSet load_irreps(const GroupDocument& doc) {
  auto group = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
  return resolve_irreps(group, doc);
}

std::string subject_of(const GroupDocument& doc) { return doc.name.empty() ? "group" : doc.name; }

// The naive quotient by e_v: drop every term through v.
PathElement project_away(const GradedQuiver& q, const PathElement& e, int v) {
  PathElement out;
  for (const auto& [p, c] : e) {
    bool through = p.start == v;
    for (int a : p.arrows) {
      const Arrow& arrow = q.arrows[static_cast<std::size_t>(a)];
      through = through || arrow.source == v || arrow.target == v;
    }
    if (!through) out[p] = c;
  }
  return out;
}

// The presentation with vertex v deleted against d of the original, term by term.
std::vector<std::string> deletion_failures(const GinzburgPresentation& full, const GinzburgPresentation& cut, int v) {
  std::map<std::string, int> by_name;
  for (const auto& a : full.quiver.arrows) by_name[a.name] = a.id;
  std::vector<int> to_full;
  for (const auto& a : cut.quiver.arrows) to_full.push_back(by_name.at(a.name));
  std::vector<std::string> out;
  for (const auto& a : cut.quiver.arrows) {
    const PathElement expected = project_away(full.quiver, full.differential[static_cast<std::size_t>(to_full[static_cast<std::size_t>(a.id)])], v);
    PathElement got;
    for (const auto& [p, c] : cut.differential[static_cast<std::size_t>(a.id)]) {
      Path q{p.start, {}};
      for (int x : p.arrows) q.arrows.push_back(to_full[static_cast<std::size_t>(x)]);
      add_term(got, q, c);
    }
    if (!is_zero(got - expected)) out.push_back(a.name + ": differential differs from the projected one");
  }
  std::size_t expected_arrows = 0;
  for (const auto& a : full.quiver.arrows)
    if (a.source != v && a.target != v) ++expected_arrows;
  if (expected_arrows != cut.quiver.arrows.size()) out.push_back("arrow count after deletion is wrong");
  return out;
}

}  // namespace

void check_options(const RunOptions& opts) {
  if (opts.w_max < 0) fail(ErrorCode::ValidationError, "w_max must be nonnegative");
  if (opts.w_max > opts.w_cap)
    fail(ErrorCode::ValidationError, "w_max " + std::to_string(opts.w_max) + " exceeds the cap " + std::to_string(opts.w_cap));
  if (opts.path_budget == 0) fail(ErrorCode::ValidationError, "path budget must be positive");
}

std::size_t path_budget_from_env(std::size_t fallback) {
  const char* v = std::getenv("MCKAYQP_PATH_BUDGET");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) fail(ErrorCode::ValidationError, "MCKAYQP_PATH_BUDGET must be a positive integer");
  return static_cast<std::size_t>(x);
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["subject"] = subject;
  j["facts"] = facts;
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"ok", c.ok}, {"failures", c.failures}});
  j["checks"] = cs;
  j["check_count"] = checks.size();
  j["passed"] = passed();
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command << ": " << subject << "\n";
  for (const auto& [k, v] : facts.items()) out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  std::size_t ok = 0;
  for (const auto& c : checks) ok += c.ok ? 1 : 0;
  out << "checks (" << checks.size() << "):\n";
  for (const auto& c : checks) {
    out << "  [" << (c.ok ? "pass" : "FAIL") << "] " << c.name << "\n";
    for (const auto& f : c.failures) out << "         " << f << "\n";
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << " (" << ok << "/" << checks.size() << ")\n";
  return out.str();
}

PolyRun run_poly_qp(int n, const RunOptions& opts) {
  check_options(opts);
  PolyRun run{poly_qp(n), {}};
  Report& r = run.report;
  const GinzburgPresentation& pres = run.qp.pres;
  r.command = "poly-qp";
  r.subject = "n=" + std::to_string(n);
  std::size_t base = 0;
  for (const auto& a : pres.quiver.arrows) base += a.kind == ArrowKind::base ? 1 : 0;
  r.facts["n"] = n;
  r.facts["base_arrows"] = base;
  r.facts["arrows"] = pres.quiver.arrows.size();
  r.facts["potential"] = potential_summary(pres);
  const int cw = std::min(opts.cohomology_w_max, opts.w_max);
  r.facts["cohomology_w_max"] = cw;
  add_check(r, "quiver structure", [&] { pres.quiver.validate(n); return std::vector<std::string>{}; });
  add_check(r, "differential homogeneous", [&] { return homogeneity_failures(pres); });
  add_check(r, "W degree 3-n", [&] { return potential_degree_failures(pres); });
  add_check(r, "d^2 = 0", [&] { return d_squared_failures(pres); });
  add_check(r, "{W,W} = 0", [&] { return bracket_failures(pres); });
  add_check(r, "euler = monomial count", [&] {
    std::vector<std::string> out;
    const auto e = path_euler_characteristics(pres.quiver, 0, 0, opts.w_max);
    for (int w = 0; w <= opts.w_max; ++w)
      if (e[static_cast<std::size_t>(w)] != binomial(w + n - 1, n - 1))
        out.push_back("w=" + std::to_string(w) + ": euler " + std::to_string(e[static_cast<std::size_t>(w)]));
    return out;
  });
  add_check(r, "cohomology concentrated in degree 0", [&] {
    return concentration_failures(pres, cw, opts.path_budget, [n](int, int, int w) { return binomial(w + n - 1, n - 1); });
  });
  return run;
}

GlRun run_gl_dga(const GroupDocument& doc, const RunOptions& opts) {
  check_options(opts);
  const IrrepSet irreps = load_irreps(doc);
  GlRun run{gl_dga(irreps), {}, {}};
  const GinzburgPresentation& pres = run.dga.pres;
  run.quotient = delete_vertex(pres, 0);
  Report& r = run.report;
  r.command = "gl-dga";
  r.subject = subject_of(doc);
  const auto& g = *irreps.group;
  const Representation v = natural_representation(irreps.group);
  r.facts["n"] = pres.n;
  r.facts["group_order"] = g.order();
  r.facts["in_SL"] = linearity_predicates(g).in_SL;
  r.facts["vertex_dims"] = vertex_dims(pres.quiver);
  r.facts["generators"] = pres.quiver.arrows.size();
  r.facts["generator_table"] = arrow_table(pres.quiver, {});
  r.facts["quotient_generators"] = run.quotient.quiver.arrows.size();
  const int cw = std::min(opts.cohomology_w_max, opts.w_max);
  r.facts["cohomology_w_max"] = cw;
  add_check(r, "differential homogeneous", [&] { return homogeneity_failures(pres); });
  add_check(r, "d^2 = 0", [&] { return d_squared_failures(pres); });
  add_check(r, "euler = molien", [&] { return euler_failures(pres.quiver, irreps, opts.w_max); });
  add_check(r, "cohomology concentrated in degree 0", [&] {
    return concentration_failures(pres, cw, opts.path_budget, [&](int i, int j, int w) {
      return molien_table(irreps, v, static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(w))
          .back();
    });
  });
  add_check(r, "quotient by vertex 0", [&] {
    auto out = deletion_failures(pres, run.quotient, 0);
    for (auto& f : d_squared_failures(run.quotient)) out.push_back(std::move(f));
    return out;
  });
  if (g.order() == 1)
    add_check(r, "trivial group matches poly-qp", [&] {
      return tensor_matches_poly(run.dga, poly_qp(pres.n)) ? std::vector<std::string>{}
                                                            : std::vector<std::string>{"generator lists differ"};
    });
  return run;
}

McKayRun run_mckay(const GroupDocument& doc, const RunOptions& opts) {
  check_options(opts);
  const IrrepSet irreps = load_irreps(doc);
  McKayRun run{assemble_mckay_qp(irreps), {}, false, {}};
  const McKayQP& qp = run.qp;
  const GinzburgPresentation& pres = qp.pres;
  run.deleted = delete_vertex(pres, 0);
  run.isolated = isolated_singularity_test(*irreps.group);
  const Representation v = natural_representation(irreps.group);
  Report& r = run.report;
  r.command = "mckay";
  r.subject = subject_of(doc);
  r.facts["n"] = qp.n;
  r.facts["group_order"] = irreps.group->order();
  r.facts["vertex_dims"] = vertex_dims(pres.quiver);
  r.facts["degree_0_arrows"] = [&] {
    Json t = Json::array();
    for (const auto& e : arrow_table(pres.quiver, {ArrowKind::star, ArrowKind::loop_t}))
      if (e["degree"] == 0) t.push_back(e);
    return t;
  }();
  r.facts["double_quiver_arrows"] = arrow_table(pres.quiver, {ArrowKind::loop_t});
  Json lag = Json::object();
  for (const auto& [w, d] : qp.lagrangian_dims) lag[std::to_string(w)] = d;
  r.facts["lagrangian_dims"] = lag;
  r.facts["potential"] = potential_summary(pres);
  r.facts["lambda_entries"] = qp.lambda.size();
  Json sym = Json::array();
  for (const auto& p : qp.symmetric_cycles) sym.push_back(path_to_string(pres.quiver, p));
  r.facts["rotation_symmetric_cycles"] = sym;
  r.facts["isolated"] = run.isolated;
  r.facts["deleted_vertex_0"] = {{"arrows", run.deleted.quiver.arrows.size()},
                                 {"potential_terms", run.deleted.potential.size()}};
  const int cw = std::min(opts.cohomology_w_max, opts.w_max);
  r.facts["cohomology_w_max"] = cw;

  add_check(r, "quiver structure", [&] { pres.quiver.validate(qp.n); return std::vector<std::string>{}; });
  add_check(r, "differential homogeneous", [&] { return homogeneity_failures(pres); });
  add_check(r, "W degree 3-n", [&] { return potential_degree_failures(pres); });
  add_check(r, "d^2 = 0", [&] { return d_squared_failures(pres); });
  add_check(r, "{W,W} = 0", [&] { return bracket_failures(pres); });
  add_check(r, "multiplicities = characters", [&] {
    std::vector<std::string> out;
    std::set<std::vector<int>> keys;
    for (const auto& [k, c] : qp.multiplicities) keys.insert(k);
    for (const auto& [k, c] : qp.predicted_multiplicities) keys.insert(k);
    for (const auto& k : keys) {
      const auto a = qp.multiplicities.count(k) ? qp.multiplicities.at(k) : 0;
      const auto b = qp.predicted_multiplicities.count(k) ? qp.predicted_multiplicities.at(k) : 0;
      if (a != b)
        out.push_back("weight " + std::to_string(k[0]) + " " + std::to_string(k[1]) + "->" + std::to_string(k[2]) + ": " +
                      std::to_string(a) + " arrows, character count " + std::to_string(b));
    }
    return out;
  });
  add_check(r, "differential matches tensor algebra", [&] {
    return differential_matches_tensor_algebra(qp) ? std::vector<std::string>{}
                                                    : std::vector<std::string>{"Ginzburg differential differs"};
  });
  add_check(r, "sym(W) = triple pairing", [&] {
    return sym_check(qp) ? std::vector<std::string>{} : std::vector<std::string>{"sym(W) differs"};
  });
  add_check(r, "euler = molien", [&] { return euler_failures(pres.quiver, irreps, opts.w_max); });
  add_check(r, "cohomology concentrated in degree 0", [&] {
    return concentration_failures(pres, cw, opts.path_budget, [&](int i, int j, int w) {
      return molien_table(irreps, v, static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(w))
          .back();
    });
  });
  add_check(r, "vertex 0 deletion", [&] {
    auto out = deletion_failures(pres, run.deleted, 0);
    for (auto& f : d_squared_failures(run.deleted)) out.push_back(std::move(f));
    return out;
  });
  add_check(r, "H^0 presentation", [&] {
    const H0Presentation h0 = h0_presentation(pres, cw, opts.path_budget);
    Json dims = Json::array();
    for (int w = 0; w <= cw; ++w) dims.push_back(h0.weight_dims.at({0, 0, w}));
    r.facts["h0_dims_vertex_0"] = dims;
    r.facts["h0_relations"] = h0.relations.size();
    return std::vector<std::string>{};
  });
  return run;
}

H0Run run_h0(const GroupDocument* doc, int n, const RunOptions& opts) {
  check_options(opts);
  H0Run run;
  Report& r = run.report;
  r.command = "h0";
  GinzburgPresentation pres;
  std::function<long long(int, int, int)> expected;
  IrrepSet irreps;
  if (doc) {
    irreps = load_irreps(*doc);
    pres = assemble_mckay_qp(irreps).pres;
    r.subject = subject_of(*doc);
    const Representation v = natural_representation(irreps.group);
    expected = [&irreps, v](int i, int j, int w) {
      return molien_table(irreps, v, static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(w))
          .back();
    };
  } else {
    pres = poly_qp(n).pres;
    r.subject = "n=" + std::to_string(n);
    expected = [n](int, int, int w) { return binomial(w + n - 1, n - 1); };
  }
  const int w_max = std::min(opts.cohomology_w_max, opts.w_max);
  r.facts["w_max"] = w_max;
  add_check(r, "relation quotient = H^0", [&] {
    run.h0 = h0_presentation(pres, w_max, opts.path_budget);
    return std::vector<std::string>{};
  });
  r.facts["degree_0_arrows"] = run.h0.quiver.arrows.size();
  r.facts["relations"] = run.h0.relations.size();
  Json dims = Json::array();
  for (const auto& [k, d] : run.h0.weight_dims) dims.push_back({{"source", k[0]}, {"target", k[1]}, {"weight", k[2]}, {"dim", d}});
  r.facts["weight_dims"] = dims;
  add_check(r, "H^0 dims = molien", [&] {
    std::vector<std::string> out;
    if (run.h0.weight_dims.empty()) out.push_back("no dimensions computed");
    for (const auto& [k, d] : run.h0.weight_dims) {
      const long long want = expected(k[0], k[1], k[2]);
      if (static_cast<long long>(d) != want)
        out.push_back(vertex_triple(k[0], k[1], k[2]) + ": " + std::to_string(d) + ", expected " + std::to_string(want));
    }
    return out;
  });
  return run;
}

Report run_verify(const PresentationDocument& doc, const RunOptions& opts) {
  check_options(opts);
  const GinzburgPresentation& pres = doc.pres;
  Report r;
  r.command = "verify";
  r.subject = "presentation";
  r.facts["n"] = pres.n;
  r.facts["vertices"] = pres.quiver.vertices.size();
  r.facts["arrows"] = pres.quiver.arrows.size();
  r.facts["potential_terms"] = pres.potential.size();
  add_check(r, "quiver structure", [&] { pres.quiver.validate(pres.n); return std::vector<std::string>{}; });
  add_check(r, "differential homogeneous", [&] { return homogeneity_failures(pres); });
  add_check(r, "d^2 = 0", [&] { return d_squared_failures(pres); });
  if (pres.from_potential) {
    add_check(r, "W degree 3-n", [&] { return potential_degree_failures(pres); });
    add_check(r, "{W,W} = 0", [&] { return bracket_failures(pres); });
    add_check(r, "differential = Ginzburg differential of W", [&] {
      const GinzburgPresentation fresh = assemble_ginzburg(pres.quiver, pres.potential, pres.n);
      std::vector<std::string> out;
      for (std::size_t k = 0; k < pres.differential.size(); ++k)
        if (!is_zero(fresh.differential[k] - pres.differential[k])) out.push_back(pres.quiver.arrows[k].name);
      return out;
    });
  }
  if (!doc.pairing.empty()) {
    add_check(r, "pairing graded antisymmetric", [&] {
      std::vector<std::string> out;
      std::map<std::tuple<int, std::size_t, std::size_t>, const CycloMatrix*> blocks;
      for (const auto& b : doc.pairing) blocks[{b.weight, b.source, b.target}] = &b.gram;
      for (const auto& b : doc.pairing) {
        const int a = b.weight;
        const int c = pres.n - a;
        const std::string at = "weight " + std::to_string(a) + " " + std::to_string(b.source) + "->" + std::to_string(b.target);
        const auto other = blocks.find({c, b.target, b.source});
        if (other == blocks.end()) {
          out.push_back(at + ": partner block missing");
          continue;
        }
        const int sign = ((1 - a) * (1 - c)) % 2 == 0 ? -1 : 1;
        if (*other->second != Cyclo(sign) * b.gram.transpose()) out.push_back(at);
      }
      return out;
    });
  }
  (void)opts;
  return r;
}

Report run_info(const GroupDocument& doc) {
  auto group = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
  Report r;
  r.command = "info";
  r.subject = subject_of(doc);
  const auto lin = linearity_predicates(*group);
  r.facts["n"] = doc.spec.n;
  r.facts["order"] = group->order();
  r.facts["exponent"] = group->exponent();
  r.facts["abelian"] = group->is_abelian();
  Json sizes = Json::array();
  for (const auto& c : group->classes()) sizes.push_back(c.size());
  r.facts["class_sizes"] = sizes;
  r.facts["in_SL"] = lin.in_SL;
  r.facts["isolated"] = isolated_singularity_test(*group);
  IrrepSet irreps;
  add_check(r, "irreducible representations", [&] {
    irreps = resolve_irreps(group, doc);
    return std::vector<std::string>{};
  });
  Json irr = Json::array();
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    Json chi = Json::array();
    for (const auto& x : irreps.characters[i]) chi.push_back(x.is_rational() ? x.rational_value().get_str() : x.minimized().to_string());
    irr.push_back({{"label", irreps.irreps[i].label}, {"dim", irreps.dim(i)}, {"character", chi}});
  }
  r.facts["irreps"] = irr;
  r.facts["document"] = group_document_json(doc);
  return r;
}

}  // namespace mckay
