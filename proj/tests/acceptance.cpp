// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "mckay/pipeline.hpp"

using namespace mckay;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few failure messages.
struct Tally {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (notes.size() < 5) notes.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (ok) return {true, summary};
    std::string s;
    for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
    return {false, s};
  }
};

std::string groups_dir() { return MCKAY_GROUPS_DIR; }

GroupDocument group(const std::string& stem) { return load_group_document(groups_dir() + "/" + stem + ".json"); }

IrrepSet irreps_of(const GroupDocument& doc) {
  auto g = std::make_shared<const FiniteMatrixGroup>(enumerate_group(doc.spec));
  return resolve_irreps(g, doc);
}

long long choose(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool bracket_vanishes(const GinzburgPresentation& pres) {
  return is_zero(necklace_bracket(pres.potential, pres.potential, pres.quiver));
}

std::string at(int i, int j, int w) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(w) + ")";
}

void euler_vs_molien(Tally& t, const GradedQuiver& q, const IrrepSet& irreps, int w_max) {
  const Representation v = natural_representation(irreps.group);
  for (std::size_t i = 0; i < irreps.size(); ++i)
    for (std::size_t j = 0; j < irreps.size(); ++j) {
      const auto e = path_euler_characteristics(q, static_cast<int>(i), static_cast<int>(j), w_max);
      const auto m = molien_table(irreps, v, i, j, static_cast<std::size_t>(w_max));
      for (int w = 0; w <= w_max; ++w)
        t.require(e[static_cast<std::size_t>(w)] == m[static_cast<std::size_t>(w)],
                  "euler != molien at " + at(static_cast<int>(i), static_cast<int>(j), w));
    }
}

// Arrow counts keyed by (degree, source, target), t-loops excluded.
std::map<std::tuple<int, int, int>, int> doubled_counts(const GradedQuiver& q) {
  std::map<std::tuple<int, int, int>, int> out;
  for (const auto& a : q.arrows)
    if (a.kind != ArrowKind::loop_t) ++out[{a.degree, a.source, a.target}];
  return out;
}

int count(const std::map<std::tuple<int, int, int>, int>& m, int d, int s, int t) {
  const auto it = m.find({d, s, t});
  return it == m.end() ? 0 : it->second;
}

// Parity of a permutation of 0..k-1 by counting inversions.
int parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) inv += p[a] > p[b] ? 1 : 0;
  return inv % 2 ? -1 : 1;
}

// All composable cyclic words of length 3.
std::vector<Path> three_cycles(const GradedQuiver& q) {
  std::vector<Path> out;
  for (const auto& a : q.arrows)
    for (const auto& b : q.arrows) {
      if (b.source != a.target) continue;
      for (const auto& c : q.arrows)
        if (c.source == b.target && c.target == a.source) out.push_back(Path{a.source, {a.id, b.id, c.id}});
    }
  return out;
}

Rational random_nonzero(std::mt19937& rng) {
  static const std::vector<Rational> choices{Rational(1), Rational(-1), Rational(2), Rational(-3), Rational(1, 2),
                                             Rational(-2, 3)};
  return choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
}

// Perturbs one coefficient of W, or adds one 3-cycle when W is empty.
CyclicElement mutate(const GinzburgPresentation& pres, std::mt19937& rng, bool keep_degree) {
  CyclicElement w = pres.potential;
  if (!w.empty()) {
    auto it = w.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng));
    add_term(w, it->first, Cyclo(random_nonzero(rng)));
    return w;
  }
  std::vector<Path> cycles;
  for (const auto& p : three_cycles(pres.quiver))
    if (!keep_degree || path_degree(pres.quiver, p.arrows) == 3 - pres.n) cycles.push_back(p);
  for (int attempt = 0; attempt < 100 && !cycles.empty(); ++attempt) {
    CyclicElement m = w;
    add_cyclic(m, pres.quiver, cycles[std::uniform_int_distribution<std::size_t>(0, cycles.size() - 1)(rng)],
               Cyclo(random_nonzero(rng)));
    if (!m.empty()) return m;
  }
  fail(ErrorCode::ValidationError, "no mutation available");
}

struct Example {
  std::string stem;
  GroupDocument doc;
  IrrepSet irreps;
  McKayQP qp;
};

std::vector<Example>& mckay_examples() {
  static std::vector<Example> ex = [] {
    std::vector<Example> out;
    for (const char* stem : {"a1_sl2", "a2_sl2", "a3_sl2", "c3_sl3", "s3_sl4", "trivial3"}) {
      Example e{stem, group(stem), {}, {}};
      e.irreps = irreps_of(e.doc);
      e.qp = assemble_mckay_qp(e.irreps);
      out.push_back(std::move(e));
    }
    return out;
  }();
  return ex;
}

const Example& example(const std::string& stem) {
  for (const auto& e : mckay_examples())
    if (e.stem == stem) return e;
  fail(ErrorCode::ValidationError, "unknown example " + stem);
}

Outcome criterion_poly() {
  Tally t;
  for (int n = 1; n <= 4; ++n) {
    const PolyQP p = poly_qp(n);
    t.require(check_d_squared(p.pres).ok, "d^2 != 0 for n=" + std::to_string(n));
    t.require(bracket_vanishes(p.pres), "{W,W} != 0 for n=" + std::to_string(n));
    if (n > 3) continue;
    for (int w = 0; w <= 4; ++w) {
      const auto h = cohomology_dims(weight_component(p.pres, 0, 0, w));
      for (const auto& [k, d] : h)
        if (k != 0) t.require(d == 0, "H^" + std::to_string(k) + " != 0 for n=" + std::to_string(n) + " w=" + std::to_string(w));
      const auto h0 = h.count(0) ? static_cast<long long>(h.at(0)) : 0;
      t.require(h0 == choose(w + n - 1, n - 1), "dim H^0 wrong for n=" + std::to_string(n) + " w=" + std::to_string(w));
    }
  }
  return t.outcome("n=1..4 d^2=0 and {W,W}=0; n<=3, w<=4 cohomology = monomials");
}

Outcome criterion_a_type() {
  Tally t;
  for (int m = 1; m <= 3; ++m) {
    const Example& e = example("a" + std::to_string(m) + "_sl2");
    const auto counts = doubled_counts(e.qp.pres.quiver);
    const int k = m + 1;
    int total = 0;
    for (const auto& [key, c] : counts) total += c;
    int expected_total = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int want = (j == (i + 1) % k ? 1 : 0) + (j == (i + k - 1) % k ? 1 : 0);
        expected_total += want;
        t.require(count(counts, 0, i, j) == want, "A_" + std::to_string(m) + " arrow count " + std::to_string(i) + "->" + std::to_string(j));
      }
    t.require(total == expected_total, "A_" + std::to_string(m) + " has arrows outside the doubled cycle");
    t.require(e.qp.pres.potential.empty(), "A_" + std::to_string(m) + " W != 0");
    RunOptions opts;
    t.require(run_mckay(e.doc, opts).report.passed(), "A_" + std::to_string(m) + " report has failing checks");
    t.require(isolated_singularity_test(*e.irreps.group), "A_" + std::to_string(m) + " not isolated");
  }
  return t.outcome("m=1..3 doubled cycle, W=0, all checks pass, isolated");
}

Outcome criterion_c3() {
  Tally t;
  const Example& e = example("c3_sl3");
  const GinzburgPresentation& pres = e.qp.pres;
  const GradedQuiver& q = pres.quiver;
  t.require(q.vertices.size() == 3, "vertex count");
  std::map<std::pair<int, int>, int> deg0;
  std::map<int, int> family_index;  // arrow id -> position among base arrows with the same ends
  for (const auto& a : q.arrows)
    if (a.degree == 0 && a.kind == ArrowKind::base) family_index[a.id] = deg0[{a.source, a.target}]++;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto it = deg0.find({i, j});
      t.require((it == deg0.end() ? 0 : it->second) == (j == (i + 1) % 3 ? 3 : 0),
                "degree-0 multiplicity " + std::to_string(i) + "->" + std::to_string(j));
    }
  t.require(pres.potential.size() == 6, "W has " + std::to_string(pres.potential.size()) + " terms");

  // coefficient divided by the sign of the permutation of family indices, per cyclic word
  auto normalized = [&](const Path& p, const Cyclo& c) -> std::optional<Cyclo> {
    if (p.arrows.size() != 3) return std::nullopt;
    std::vector<int> ids = p.arrows;
    std::set<int> sources;
    for (int a : ids) sources.insert(q.arrows[static_cast<std::size_t>(a)].source);
    if (sources.size() != 3 || !family_index.count(ids[0]) || !family_index.count(ids[1]) || !family_index.count(ids[2]))
      return std::nullopt;
    while (q.arrows[static_cast<std::size_t>(ids[0])].source != 0) std::rotate(ids.begin(), ids.begin() + 1, ids.end());
    std::vector<int> perm{family_index[ids[0]], family_index[ids[1]], family_index[ids[2]]};
    if (std::set<int>(perm.begin(), perm.end()).size() != 3) return std::nullopt;
    return Cyclo(parity(perm)) * c;
  };
  std::optional<Cyclo> scalar;
  for (const auto& [p, c] : pres.potential) {
    const auto v = normalized(p, c);
    t.require(v.has_value(), "W term " + path_to_string(q, p) + " is not one arrow per family with distinct indices");
    if (!v) continue;
    if (!scalar) scalar = *v;
    t.require(*v == *scalar, "W is not antisymmetric up to one scalar");
  }
  std::optional<Cyclo> lam;
  for (const auto& [p, c] : e.qp.lambda) {
    const auto v = normalized(p, c);
    t.require(v.has_value(), "lambda supported off the antisymmetric pattern");
    if (!v) continue;
    if (!lam) lam = *v;
    t.require(*v == *lam, "lambda is not antisymmetric up to one scalar");
  }
  t.require(e.qp.lambda.size() == 18, "lambda has " + std::to_string(e.qp.lambda.size()) + " entries");

  const GinzburgPresentation cut = delete_vertex(pres, 0);
  t.require(cut.potential.empty(), "W' != 0");
  int base12 = 0, base = 0;
  for (const auto& a : cut.quiver.arrows)
    if (a.kind == ArrowKind::base) {
      ++base;
      base12 += a.source == 1 && a.target == 2 ? 1 : 0;
    }
  t.require(base == 3 && base12 == 3, "Q' base arrows are not three arrows 1->2");

  euler_vs_molien(t, q, e.irreps, 5);
  const auto m00 = molien_table(e.irreps, natural_representation(e.irreps.group), 0, 0, 5);
  for (int w = 0; w <= 5; ++w)
    t.require(m00[static_cast<std::size_t>(w)] == (w % 3 == 0 ? choose(w + 2, 2) : 0), "invariant monomials at w=" + std::to_string(w));
  t.require(m00[3] == 10, "(0,0,3) != 10");
  t.require(isolated_singularity_test(*e.irreps.group), "not isolated");
  return t.outcome("triangle x3, 6-term antisymmetric W, W'=0, euler=molien w<=5, (0,0,3)=10, isolated");
}

Outcome criterion_s3() {
  Tally t;
  const Example& e = example("s3_sl4");
  const McKayQP qp = assemble_mckay_qp(e.irreps);
  const GradedQuiver& q = qp.pres.quiver;
  const auto counts = doubled_counts(q);
  std::map<std::pair<int, int>, int> base0;
  for (const auto& a : q.arrows)
    if (a.kind == ArrowKind::base && a.degree == 0) ++base0[{a.source, a.target}];
  const int loops[3] = {1, 1, 3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto it = base0.find({i, j});
      t.require((it == base0.end() ? 0 : it->second) == (i == j ? loops[i] : 1), "degree-0 table at " + std::to_string(i) + "->" + std::to_string(j));
    }
  const int mid[3] = {0, 0, 4};
  for (int i = 0; i < 3; ++i) {
    t.require(count(counts, -1, i, i) == mid[i], "middle loops at " + std::to_string(i));
    for (int j = i + 1; j < 3; ++j)
      t.require(count(counts, -1, i, j) + count(counts, -1, j, i) == 4, "middle pair " + std::to_string(i) + "," + std::to_string(j));
  }
  t.require(qp.lagrangian_dims.count(2) && qp.lagrangian_dims.at(2) == 8, "Lagrangian dimension != 8");
  t.require(!qp.pres.potential.empty(), "W = 0");
  for (const auto& [p, c] : qp.pres.potential) {
    std::multiset<int> d;
    for (int a : p.arrows) d.insert(q.arrows[static_cast<std::size_t>(a)].degree);
    t.require(d == std::multiset<int>{0, 0, -1}, "W term " + path_to_string(q, p) + " has the wrong degree pattern");
  }
  t.require(!isolated_singularity_test(*e.irreps.group), "reported isolated");
  t.require(check_d_squared(qp.pres).ok, "d^2 != 0");
  t.require(bracket_vanishes(qp.pres), "{W,W} != 0");
  t.require(sym_check(qp), "sym_check fails");
  euler_vs_molien(t, q, e.irreps, 4);
  return t.outcome("tables (1,1,3)/4/8, W degrees (0,0,-1), not isolated, d^2, {W,W}, sym, euler w<=4");
}

// Character inner product <chi_{X_p} chi_j, chi_i> with chi_{X_p}(g) = e_p(eigenvalues of g^-1).
long char_multiplicity(const IrrepSet& irreps, int p, std::size_t i, std::size_t j) {
  const auto& g = *irreps.group;
  const auto imgs_i = element_images(irreps.irreps[i]);
  const auto imgs_j = element_images(irreps.irreps[j]);
  Cyclo sum(0);
  for (std::size_t k = 0; k < g.order(); ++k) {
    const auto coeffs = det_one_minus_t(g.element(g.inverse(k)));
    const Cyclo ep = (p % 2 ? Cyclo(-1) : Cyclo(1)) * coeffs[static_cast<std::size_t>(p)];
    sum += imgs_i[k].trace().conj() * imgs_j[k].trace() * ep;
  }
  sum /= Cyclo(static_cast<long>(g.order()));
  return static_cast<long>(sum.rational_value().get_num().get_si());
}

Outcome criterion_multiplicities() {
  Tally t;
  std::size_t cells = 0;
  for (const auto& e : mckay_examples()) {
    const GradedQuiver& q = e.qp.pres.quiver;
    std::map<std::tuple<int, int, int>, long> arrows;
    for (const auto& a : q.arrows)
      if (a.kind != ArrowKind::loop_t) ++arrows[{a.weight, a.source, a.target}];
    for (int p = 1; p < e.qp.n; ++p)
      for (std::size_t i = 0; i < e.irreps.size(); ++i)
        for (std::size_t j = 0; j < e.irreps.size(); ++j) {
          const auto it = arrows.find({p, static_cast<int>(i), static_cast<int>(j)});
          const long got = it == arrows.end() ? 0 : it->second;
          t.require(got == char_multiplicity(e.irreps, p, i, j), e.stem + " weight " + std::to_string(p) + " " + std::to_string(i) + "->" + std::to_string(j));
          ++cells;
        }
    t.require(e.qp.multiplicities == e.qp.predicted_multiplicities, e.stem + " library tables differ");
  }
  return t.outcome(std::to_string(cells) + " cells over " + std::to_string(mckay_examples().size()) + " McKay QPs agree");
}

Outcome criterion_sym() {
  Tally t;
  std::mt19937 rng(2024);
  std::size_t mutations = 0;
  for (const auto& e : mckay_examples()) {
    t.require(sym_check(e.qp), e.stem + " sym_check fails");
    for (int k = 0; k < 12; ++k) {
      const CyclicElement w = mutate(e.qp.pres, rng, false);
      t.require(!sym_check(e.qp, w), e.stem + " mutation " + std::to_string(k) + " passes sym_check");
      ++mutations;
    }
  }
  return t.outcome("sym_check passes on " + std::to_string(mckay_examples().size()) + " QPs and fails on all " +
                   std::to_string(mutations) + " mutations");
}

Outcome criterion_gl() {
  Tally t;
  for (const char* stem : {"c4_gl2", "c3_gl2"}) {
    const IrrepSet irreps = irreps_of(group(stem));
    const TensorDGA a = gl_dga(irreps);
    t.require(check_d_squared(a.pres).ok, std::string(stem) + " d^2 != 0");
    euler_vs_molien(t, a.pres.quiver, irreps, 5);
  }
  for (int n = 1; n <= 4; ++n) {
    GroupSpec spec;
    spec.n = n;
    spec.generators.push_back(CycloMatrix::identity(static_cast<std::size_t>(n)));
    auto g = std::make_shared<const FiniteMatrixGroup>(enumerate_group(spec));
    t.require(tensor_matches_poly(gl_dga(abelian_irreps(g)), poly_qp(n)), "trivial n=" + std::to_string(n) + " differs from poly-qp");
  }
  return t.outcome("diag(i,1), diag(w,w): d^2=0, euler=molien w<=5; trivial group = poly-qp for n<=4");
}

Outcome criterion_d2_bracket() {
  Tally t;
  std::vector<GinzburgPresentation> bases;
  for (int n = 1; n <= 4; ++n) bases.push_back(poly_qp(n).pres);
  for (const auto& e : mckay_examples()) bases.push_back(e.qp.pres);
  std::size_t agree = 0;
  for (const auto& p : bases) {
    const bool a = check_d_squared(p).ok;
    const bool b = bracket_vanishes(p);
    t.require(a == b, "detectors disagree on an example");
    agree += a == b ? 1 : 0;
  }
  std::mt19937 rng(77);
  std::size_t mutated = 0, broken = 0;
  const std::vector<std::size_t> targets{2, 3, 7, 8, 9};  // poly 3, poly 4, c3, s3, trivial3
  for (int k = 0; k < 25; ++k) {
    const GinzburgPresentation& base = bases[targets[static_cast<std::size_t>(k) % targets.size()]];
    const CyclicElement w = mutate(base, rng, true);
    const GinzburgPresentation m = assemble_ginzburg(base.quiver, w, base.n);
    const bool a = check_d_squared(m).ok;
    const bool b = bracket_vanishes(m);
    t.require(a == b, "detectors disagree on mutation " + std::to_string(k));
    ++mutated;
    broken += a ? 0 : 1;
  }
  return t.outcome(std::to_string(agree) + " examples and " + std::to_string(mutated) + " mutations agree (" +
                   std::to_string(broken) + " mutations break both)");
}

std::string slurp_dir(const std::filesystem::path& dir) {
  std::ostringstream out;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out << f.filename().string() << "\n" << read_text_file(f.string());
  return out.str();
}

Outcome criterion_determinism() {
  Tally t;
  RunOptions opts;
  for (const char* stem : {"c3_sl3", "s3_sl4"}) {
    const GroupDocument doc = group(stem);
    const McKayRun a = run_mckay(doc, opts);
    const McKayRun b = run_mckay(doc, opts);
    t.require(mckay_json(a.qp).dump(2) == mckay_json(b.qp).dump(2), std::string(stem) + " presentation differs");
    t.require(a.report.to_text() == b.report.to_text(), std::string(stem) + " text report differs");
    t.require(a.report.to_json().dump(2) == b.report.to_json().dump(2), std::string(stem) + " JSON report differs");
  }
  t.require(presentation_json(run_poly_qp(3).qp.pres).dump() == presentation_json(run_poly_qp(3).qp.pres).dump(), "poly presentation differs");

  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "mckayqp_acceptance";
  std::filesystem::remove_all(tmp);
  std::string first;
  for (int run = 0; run < 2; ++run) {
    const auto dir = tmp / std::to_string(run);
    const std::string cmd = std::string(MCKAYQP_BIN) + " mckay --input " + groups_dir() + "/c3_sl3.json -q --emit json,dot,report --out " +
                            dir.string() + " && " + MCKAYQP_BIN + " poly-qp --n 3 -q --emit json,dot,report --out " + dir.string();
    t.require(std::system(cmd.c_str()) == 0, "command-line run failed");
    const std::string files = slurp_dir(dir);
    if (run == 0) first = files;
    else t.require(files == first, "command-line artifacts differ between runs");
  }
  std::filesystem::remove_all(tmp);
  return t.outcome("library and command-line artifacts byte-identical across runs");
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds = 0;  // 0: no runtime budget
  };
  const std::vector<Criterion> criteria{
      {"polynomial QP suite", criterion_poly, 120},
      {"A-type SL_2", criterion_a_type},
      {"C_3 in SL_3", criterion_c3},
      {"S_3 in SL_4", criterion_s3, 300},
      {"multiplicities = characters", criterion_multiplicities},
      {"symmetrization identity", criterion_sym},
      {"GL_n tensor algebra", criterion_gl},
      {"d^2 iff {W,W}", criterion_d2_bracket},
      {"determinism", criterion_determinism},
  };
  mckay_examples();
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[k].budget_seconds > 0 && secs > criteria[k].budget_seconds) {
      o.ok = false;
      o.detail += ", over the runtime budget";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.ok ? "PASS" : "FAIL") << "  criterion " << (k + 1) << ": " << criteria[k].name << " -- " << o.detail << " ("
         << secs << " s)";
    std::cout << line.str() << std::endl;
    failed += o.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
