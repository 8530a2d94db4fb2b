#include "mckay/dgquiver.hpp"

#include <algorithm>
#include <functional>

namespace mckay {

namespace {

int parity_sign(long x) { return (x % 2 == 0) ? 1 : -1; }

Cyclo signed_value(int sign, const Cyclo& c) { return sign > 0 ? c : -c; }

std::vector<int> concat(std::initializer_list<const std::vector<int>*> parts) {
  std::vector<int> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::vector<int> slice(const std::vector<int>& v, std::size_t b, std::size_t e) {
  return std::vector<int>(v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e));
}

std::map<int, std::size_t> vertex_positions(const GradedQuiver& q) {
  std::map<int, std::size_t> pos;
  for (std::size_t k = 0; k < q.vertices.size(); ++k) pos[q.vertices[k].id] = k;
  return pos;
}

}  // namespace

std::string_view arrow_kind_name(ArrowKind k) noexcept {
  switch (k) {
    case ArrowKind::base: return "base";
    case ArrowKind::star: return "star";
    case ArrowKind::loop_t: return "loop_t";
    case ArrowKind::generator: return "generator";
  }
  return "base";
}

ArrowKind parse_arrow_kind(std::string_view s) {
  if (s == "base") return ArrowKind::base;
  if (s == "star") return ArrowKind::star;
  if (s == "loop_t") return ArrowKind::loop_t;
  if (s == "generator") return ArrowKind::generator;
  fail(ErrorCode::ParseError, "unknown arrow kind '" + std::string(s) + "'");
}

bool GradedQuiver::has_vertex(int id) const noexcept {
  return std::any_of(vertices.begin(), vertices.end(), [id](const Vertex& v) { return v.id == id; });
}

const Vertex& GradedQuiver::vertex(int id) const {
  for (const auto& v : vertices)
    if (v.id == id) return v;
  fail(ErrorCode::VertexNotFound, "no vertex with id " + std::to_string(id));
}

std::vector<int> GradedQuiver::vertex_ids() const {
  std::vector<int> ids;
  for (const auto& v : vertices) ids.push_back(v.id);
  return ids;
}

int GradedQuiver::add_arrow(Arrow a) {
  a.id = static_cast<int>(arrows.size());
  arrows.push_back(std::move(a));
  return arrows.back().id;
}

void GradedQuiver::validate(int n) const {
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const Arrow& a = arrows[k];
    if (a.id != static_cast<int>(k)) fail(ErrorCode::ValidationError, "arrow ids must be positions");
    if (!has_vertex(a.source) || !has_vertex(a.target))
      fail(ErrorCode::VertexNotFound, "arrow " + a.name + " has an unknown endpoint");
    if (a.weight < 1) fail(ErrorCode::ValidationError, "arrow " + a.name + " must have positive weight");
  }
  const bool tensor_algebra = std::any_of(arrows.begin(), arrows.end(),
                                          [](const Arrow& a) { return a.kind == ArrowKind::generator; });
  if (tensor_algebra) return;
  std::map<int, int> loops;
  for (const Arrow& a : arrows) {
    switch (a.kind) {
      case ArrowKind::base: {
        if (2 * a.degree < 2 - n || a.degree > 0)
          fail(ErrorCode::ValidationError, "base arrow " + a.name + " has degree outside [(2-n)/2, 0]");
        if (a.epsilon != 1 && a.epsilon != -1) fail(ErrorCode::ValidationError, "epsilon must be +1 or -1");
        if (a.partner < 0 || a.partner >= static_cast<int>(arrows.size()))
          fail(ErrorCode::ValidationError, "base arrow " + a.name + " lacks a star partner");
        const Arrow& s = arrows[static_cast<std::size_t>(a.partner)];
        if (s.kind != ArrowKind::star || s.partner != a.id || s.source != a.target || s.target != a.source ||
            s.degree != 2 - n - a.degree || s.weight != n - a.weight)
          fail(ErrorCode::ValidationError, "star partner of " + a.name + " is inconsistent");
        break;
      }
      case ArrowKind::star: {
        if (a.partner < 0 || a.partner >= static_cast<int>(arrows.size()) ||
            arrows[static_cast<std::size_t>(a.partner)].kind != ArrowKind::base ||
            arrows[static_cast<std::size_t>(a.partner)].partner != a.id)
          fail(ErrorCode::ValidationError, "star arrow " + a.name + " lacks a base partner");
        break;
      }
      case ArrowKind::loop_t:
        if (a.source != a.target || a.degree != 1 - n || a.weight != n)
          fail(ErrorCode::ValidationError, "loop " + a.name + " must be a loop of degree 1-n and weight n");
        ++loops[a.source];
        break;
      case ArrowKind::generator: break;
    }
  }
  for (const auto& v : vertices)
    if (loops[v.id] != 1) fail(ErrorCode::ValidationError, "vertex " + std::to_string(v.id) + " needs one t-loop");
}

int path_degree(const GradedQuiver& q, const std::vector<int>& arrows) {
  int d = 0;
  for (int a : arrows) d += q.arrows.at(static_cast<std::size_t>(a)).degree;
  return d;
}

int path_weight(const GradedQuiver& q, const std::vector<int>& arrows) {
  int w = 0;
  for (int a : arrows) w += q.arrows.at(static_cast<std::size_t>(a)).weight;
  return w;
}

int path_end(const GradedQuiver& q, const Path& p) {
  return p.arrows.empty() ? p.start : q.arrows.at(static_cast<std::size_t>(p.arrows.back())).target;
}

bool is_composable(const GradedQuiver& q, const Path& p) {
  int at = p.start;
  for (int a : p.arrows) {
    if (a < 0 || a >= static_cast<int>(q.arrows.size())) return false;
    const Arrow& arr = q.arrows[static_cast<std::size_t>(a)];
    if (arr.source != at) return false;
    at = arr.target;
  }
  return true;
}

void add_term(PathElement& e, const Path& p, const Cyclo& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = e.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

PathElement operator+(PathElement a, const PathElement& b) {
  for (const auto& [p, c] : b) add_term(a, p, c);
  return a;
}

PathElement operator-(PathElement a, const PathElement& b) {
  for (const auto& [p, c] : b) add_term(a, p, -c);
  return a;
}

PathElement scale(const Cyclo& s, PathElement a) {
  if (s.is_zero()) return {};
  for (auto& [p, c] : a) c = s * c;
  return a;
}

PathElement multiply(const GradedQuiver& q, const PathElement& a, const PathElement& b) {
  PathElement out;
  for (const auto& [p, c] : a)
    for (const auto& [r, d] : b) {
      if (path_end(q, p) != r.start) continue;
      add_term(out, Path{p.start, concat({&p.arrows, &r.arrows})}, c * d);
    }
  return out;
}

bool is_zero(const PathElement& e) { return e.empty(); }

std::pair<Path, Cyclo> canonical_cycle(const GradedQuiver& q, const Path& cycle, const Cyclo& coeff) {
  if (!is_composable(q, cycle) || path_end(q, cycle) != cycle.start)
    fail(ErrorCode::NotClosed, "path is not a closed cycle");
  const std::size_t r = cycle.arrows.size();
  if (r == 0) return {cycle, coeff};
  std::vector<long> prefix(r + 1, 0);
  for (std::size_t k = 0; k < r; ++k) prefix[k + 1] = prefix[k] + q.arrows[static_cast<std::size_t>(cycle.arrows[k])].degree;
  const long total = prefix[r];
  auto rotation = [&](std::size_t k) {
    std::vector<int> out(cycle.arrows.begin() + static_cast<std::ptrdiff_t>(k), cycle.arrows.end());
    out.insert(out.end(), cycle.arrows.begin(), cycle.arrows.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
  };
  // uv = (-1)^{|u||v|} vu with u the first k arrows
  auto sign_of = [&](std::size_t k) { return parity_sign(prefix[k] * (total - prefix[k])); };
  std::size_t best = 0;
  std::vector<int> best_seq = cycle.arrows;
  for (std::size_t k = 1; k < r; ++k) {
    auto seq = rotation(k);
    if (seq < best_seq) {
      best_seq = std::move(seq);
      best = k;
    }
  }
  const int s0 = sign_of(best);
  for (std::size_t k = 0; k < r; ++k) {
    if (k == best) continue;
    if (rotation(k) == best_seq && sign_of(k) != s0) {
      return {Path{q.arrows[static_cast<std::size_t>(best_seq[0])].source, best_seq}, Cyclo::zero(coeff.conductor())};
    }
  }
  return {Path{q.arrows[static_cast<std::size_t>(best_seq[0])].source, best_seq}, signed_value(s0, coeff)};
}

void add_cyclic(CyclicElement& e, const GradedQuiver& q, const Path& cycle, const Cyclo& coeff) {
  if (coeff.is_zero()) return;
  auto [rep, c] = canonical_cycle(q, cycle, coeff);
  add_term(e, rep, c);
}

CyclicElement canonicalize(const GradedQuiver& q, const PathElement& e) {
  CyclicElement out;
  for (const auto& [p, c] : e) add_cyclic(out, q, p, c);
  return out;
}

int homogeneous_degree(const GradedQuiver& q, const CyclicElement& e) {
  std::optional<int> deg;
  for (const auto& [p, c] : e) {
    const int d = path_degree(q, p.arrows);
    if (deg && *deg != d) fail(ErrorCode::BadPotentialDegree, "element is not homogeneous");
    deg = d;
  }
  return deg.value_or(0);
}

CyclicElement necklace_bracket(const CyclicElement& p, const CyclicElement& pp, const GradedQuiver& quiver,
                               BracketSign second) {
  for (const auto* e : {&p, &pp})
    for (const auto& [path, c] : *e)
      if (!is_composable(quiver, path)) fail(ErrorCode::QuiverMismatch, "element uses arrows outside the quiver");
  CyclicElement out;
  auto deg = [&](int a) { return static_cast<long>(quiver.arrows[static_cast<std::size_t>(a)].degree); };
  for (const auto& [P, cp] : p) {
    for (std::size_t k = 0; k < P.arrows.size(); ++k) {
      const Arrow& x = quiver.arrows[static_cast<std::size_t>(P.arrows[k])];
      if (x.kind != ArrowKind::base && x.kind != ArrowKind::star) continue;
      const bool first = x.kind == ArrowKind::base;
      const Arrow& alpha = first ? x : quiver.arrows[static_cast<std::size_t>(x.partner)];
      const Arrow& star = first ? quiver.arrows[static_cast<std::size_t>(x.partner)] : x;
      const int match = first ? star.id : alpha.id;  // arrow sought in p'
      const auto u = slice(P.arrows, 0, k);
      const auto v = slice(P.arrows, k + 1, P.arrows.size());
      const long du = path_degree(quiver, u);
      const long dv = path_degree(quiver, v);
      for (const auto& [Q, cq] : pp) {
        for (std::size_t l = 0; l < Q.arrows.size(); ++l) {
          if (Q.arrows[l] != match) continue;
          const auto u2 = slice(Q.arrows, 0, l);
          const auto v2 = slice(Q.arrows, l + 1, Q.arrows.size());
          const long du2 = path_degree(quiver, u2);
          long exponent;
          int overall = alpha.epsilon;
          if (first) {
            exponent = du2 + deg(alpha.id) + du * (deg(alpha.id) + dv);
          } else {
            const long mid = second == BracketSign::base_degree ? deg(alpha.id) : deg(star.id);
            exponent = du2 + (deg(alpha.id) + 1) * deg(star.id) + du * (mid + dv);
            overall = -overall;
          }
          const Cyclo coeff = signed_value(overall * parity_sign(exponent), cp * cq);
          add_cyclic(out, quiver, Path{Q.start, concat({&u2, &v, &u, &v2})}, coeff);
        }
      }
    }
  }
  return out;
}

PathElement cyclic_derivative(const CyclicElement& p, int alpha, const GradedQuiver& quiver) {
  PathElement out;
  const Arrow& a = quiver.arrows.at(static_cast<std::size_t>(alpha));
  for (const auto& [P, c] : p) {
    for (std::size_t k = 0; k < P.arrows.size(); ++k) {
      if (P.arrows[k] != alpha) continue;
      const auto u = slice(P.arrows, 0, k);
      const auto v = slice(P.arrows, k + 1, P.arrows.size());
      const long sign_exp = static_cast<long>(path_degree(quiver, u)) * (a.degree + path_degree(quiver, v));
      add_term(out, Path{a.target, concat({&v, &u})}, signed_value(parity_sign(sign_exp), c));
    }
  }
  return out;
}

GinzburgPresentation assemble_ginzburg(const GradedQuiver& quiver, const CyclicElement& w, int n) {
  quiver.validate(n);
  for (const auto& [p, c] : w) {
    if (p.arrows.size() < 3) fail(ErrorCode::BadPotentialLength, "potential contains a cycle of length < 3");
    if (path_degree(quiver, p.arrows) != 3 - n)
      fail(ErrorCode::BadPotentialDegree, "potential term of degree " + std::to_string(path_degree(quiver, p.arrows)) +
                                              ", expected " + std::to_string(3 - n));
    if (path_end(quiver, p) != p.start || !is_composable(quiver, p))
      fail(ErrorCode::NotClosed, "potential term is not a cycle");
  }
  GinzburgPresentation pres;
  pres.n = n;
  pres.quiver = quiver;
  pres.potential = w;
  pres.differential.resize(quiver.arrows.size());
  for (const Arrow& a : quiver.arrows) {
    PathElement& d = pres.differential[static_cast<std::size_t>(a.id)];
    switch (a.kind) {
      case ArrowKind::base: {
        const Arrow& s = quiver.arrows[static_cast<std::size_t>(a.partner)];
        d = scale(Cyclo(-a.epsilon * parity_sign(static_cast<long>(a.degree + 1) * s.degree)),
                  cyclic_derivative(w, s.id, quiver));
        break;
      }
      case ArrowKind::star: {
        const Arrow& b = quiver.arrows[static_cast<std::size_t>(a.partner)];
        d = scale(Cyclo(b.epsilon * parity_sign(b.degree)), cyclic_derivative(w, b.id, quiver));
        break;
      }
      case ArrowKind::loop_t: {
        for (const Arrow& b : quiver.arrows) {
          if (b.kind != ArrowKind::base) continue;
          const Arrow& s = quiver.arrows[static_cast<std::size_t>(b.partner)];
          if (b.source == a.source) add_term(d, Path{b.source, {b.id, s.id}}, Cyclo(b.epsilon));
          if (b.target == a.source)
            add_term(d, Path{s.source, {s.id, b.id}},
                     Cyclo(-b.epsilon * parity_sign(static_cast<long>(b.degree) * s.degree)));
        }
        break;
      }
      case ArrowKind::generator:
        fail(ErrorCode::ValidationError, "generator arrows need an explicit differential");
    }
  }
  return pres;
}

PathElement apply_d(const GinzburgPresentation& pres, const PathElement& e) {
  const GradedQuiver& q = pres.quiver;
  PathElement out;
  for (const auto& [p, c] : e) {
    long prefix = 0;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
      const int a = p.arrows[k];
      const PathElement& da = pres.differential.at(static_cast<std::size_t>(a));
      const Cyclo coeff = signed_value(parity_sign(prefix), c);
      const auto u = slice(p.arrows, 0, k);
      const auto v = slice(p.arrows, k + 1, p.arrows.size());
      for (const auto& [r, dc] : da) add_term(out, Path{p.start, concat({&u, &r.arrows, &v})}, coeff * dc);
      prefix += q.arrows[static_cast<std::size_t>(a)].degree;
    }
  }
  return out;
}

DSquaredReport check_d_squared(const GinzburgPresentation& pres) {
  DSquaredReport report;
  for (std::size_t a = 0; a < pres.differential.size(); ++a) {
    PathElement dd = apply_d(pres, pres.differential[a]);
    if (!dd.empty()) {
      report.ok = false;
      report.failures.emplace_back(static_cast<int>(a), std::move(dd));
    }
  }
  return report;
}

bool check_d_homogeneous(const GinzburgPresentation& pres) {
  const GradedQuiver& q = pres.quiver;
  for (const Arrow& a : q.arrows)
    for (const auto& [p, c] : pres.differential.at(static_cast<std::size_t>(a.id))) {
      if (path_degree(q, p.arrows) != a.degree + 1) return false;
      if (path_weight(q, p.arrows) != a.weight) return false;
      if (p.start != a.source || path_end(q, p) != a.target || !is_composable(q, p)) return false;
    }
  return true;
}

CycloMatrix SparseMatrix::dense() const {
  CycloMatrix m(rows, cols, 1);
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [r, x] : columns[c]) m.set(r, c, x);
  return m;
}

std::size_t SparseMatrix::rank() const {
  SparseEchelon e;
  for (const auto& col : columns) e.insert(col);
  return e.rank();
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) fail(ErrorCode::ShapeMismatch, "sparse product shapes differ");
  SparseMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  for (const auto& col : b.columns) {
    std::map<std::size_t, Cyclo> acc;
    for (const auto& [k, x] : col)
      for (const auto& [r, y] : a.columns[k]) {
        auto [it, inserted] = acc.try_emplace(r, x * y);
        if (!inserted) it->second += x * y;
      }
    SparseVector v;
    for (auto& [r, x] : acc)
      if (!x.is_zero()) v.emplace_back(r, std::move(x));
    out.columns.push_back(std::move(v));
  }
  return out;
}

std::size_t CochainComplex::dim(int degree) const {
  const int k = degree - min_degree;
  if (k < 0 || k >= static_cast<int>(terms.size())) return 0;
  return terms[static_cast<std::size_t>(k)].size();
}

CochainComplex weight_component(const GinzburgPresentation& pres, int i, int j, int w, std::size_t path_budget) {
  const GradedQuiver& q = pres.quiver;
  q.vertex(i);
  q.vertex(j);
  if (w < 0) fail(ErrorCode::OutOfRange, "weight must be nonnegative");
  std::map<int, std::vector<int>> out_arrows;
  for (const Arrow& a : q.arrows) {
    if (a.weight < 1) fail(ErrorCode::NotFinite, "arrow " + a.name + " has nonpositive weight");
    out_arrows[a.source].push_back(a.id);
  }
  std::map<int, std::vector<Path>> by_degree;
  std::size_t found = 0;
  std::vector<int> stack;
  std::function<void(int, int, int)> dfs = [&](int at, int remaining, int degree) {
    if (remaining == 0) {
      if (at == j) {
        if (++found > path_budget)
          fail(ErrorCode::ResourceLimit, "more than " + std::to_string(path_budget) + " paths in weight component");
        by_degree[degree].push_back(Path{i, stack});
      }
      return;
    }
    for (int a : out_arrows[at]) {
      const Arrow& arr = q.arrows[static_cast<std::size_t>(a)];
      if (arr.weight > remaining) continue;
      stack.push_back(a);
      dfs(arr.target, remaining - arr.weight, degree + arr.degree);
      stack.pop_back();
    }
  };
  dfs(i, w, 0);

  CochainComplex c;
  if (by_degree.empty()) return c;
  c.min_degree = by_degree.begin()->first;
  const int max_degree = by_degree.rbegin()->first;
  c.terms.resize(static_cast<std::size_t>(max_degree - c.min_degree + 1));
  for (auto& [d, paths] : by_degree) {
    std::sort(paths.begin(), paths.end());
    c.terms[static_cast<std::size_t>(d - c.min_degree)] = std::move(paths);
  }
  for (std::size_t k = 0; k + 1 < c.terms.size(); ++k) {
    std::map<Path, std::size_t> row_index;
    for (std::size_t r = 0; r < c.terms[k + 1].size(); ++r) row_index[c.terms[k + 1][r]] = r;
    SparseMatrix m;
    m.rows = c.terms[k + 1].size();
    m.cols = c.terms[k].size();
    for (const Path& p : c.terms[k]) {
      PathElement dp = apply_d(pres, PathElement{{p, Cyclo(1)}});
      SparseVector col;
      for (const auto& [r, x] : dp) {
        auto it = row_index.find(r);
        if (it == row_index.end())
          fail(ErrorCode::ValidationError, "differential leaves the weight component: " + path_to_string(q, r));
        col.emplace_back(it->second, x);
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      m.columns.push_back(std::move(col));
    }
    c.d.push_back(std::move(m));
  }
  return c;
}

std::map<int, std::size_t> cohomology_dims(const CochainComplex& c) {
  std::vector<std::size_t> ranks;
  for (const auto& m : c.d) ranks.push_back(m.rank());
  std::map<int, std::size_t> h;
  for (std::size_t k = 0; k < c.terms.size(); ++k) {
    std::size_t dim = c.terms[k].size();
    if (k < ranks.size()) dim -= ranks[k];
    if (k > 0) dim -= ranks[k - 1];
    h[c.min_degree + static_cast<int>(k)] = dim;
  }
  return h;
}

std::vector<long long> path_euler_characteristics(const GradedQuiver& q, int i, int j, int w_max) {
  const auto pos = vertex_positions(q);
  q.vertex(i);
  q.vertex(j);
  const std::size_t nv = q.vertices.size();
  std::vector<std::vector<long long>> e(static_cast<std::size_t>(w_max) + 1, std::vector<long long>(nv, 0));
  e[0][pos.at(i)] = 1;
  for (int w = 1; w <= w_max; ++w)
    for (const Arrow& a : q.arrows) {
      if (a.weight < 1) fail(ErrorCode::NotFinite, "arrow " + a.name + " has nonpositive weight");
      if (a.weight > w) continue;
      e[static_cast<std::size_t>(w)][pos.at(a.target)] +=
          parity_sign(a.degree) * e[static_cast<std::size_t>(w - a.weight)][pos.at(a.source)];
    }
  std::vector<long long> out;
  for (int w = 0; w <= w_max; ++w) out.push_back(e[static_cast<std::size_t>(w)][pos.at(j)]);
  return out;
}

GinzburgPresentation delete_vertex(const GinzburgPresentation& pres, int v) {
  const GradedQuiver& q = pres.quiver;
  q.vertex(v);
  GradedQuiver out;
  for (const auto& vert : q.vertices)
    if (vert.id != v) out.vertices.push_back(vert);
  std::vector<int> remap(q.arrows.size(), -1);
  for (const Arrow& a : q.arrows) {
    if (a.source == v || a.target == v) continue;
    remap[static_cast<std::size_t>(a.id)] = static_cast<int>(out.arrows.size());
    out.arrows.push_back(a);
  }
  for (Arrow& a : out.arrows) {
    a.id = remap[static_cast<std::size_t>(a.id)];
    if (a.partner >= 0) a.partner = remap[static_cast<std::size_t>(a.partner)];
  }
  auto translate = [&](const Path& p) -> std::optional<Path> {
    if (p.start == v) return std::nullopt;
    Path r{p.start, {}};
    for (int a : p.arrows) {
      const int b = remap[static_cast<std::size_t>(a)];
      if (b < 0) return std::nullopt;
      r.arrows.push_back(b);
    }
    return r;
  };
  CyclicElement w;
  for (const auto& [p, c] : pres.potential)
    if (auto t = translate(p)) add_term(w, *t, c);
  if (pres.from_potential) return assemble_ginzburg(out, w, pres.n);
  GinzburgPresentation r;
  r.n = pres.n;
  r.quiver = std::move(out);
  r.potential = std::move(w);
  r.from_potential = false;
  for (const Arrow& a : q.arrows) {
    if (remap[static_cast<std::size_t>(a.id)] < 0) continue;
    PathElement d;
    for (const auto& [p, c] : pres.differential[static_cast<std::size_t>(a.id)])
      if (auto t = translate(p)) add_term(d, *t, c);
    r.differential.push_back(std::move(d));
  }
  return r;
}

std::string path_to_string(const GradedQuiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + std::to_string(p.start);
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += ' ';
    s += q.arrows.at(static_cast<std::size_t>(p.arrows[k])).name;
  }
  return s;
}

std::string element_to_string(const GradedQuiver& q, const PathElement& e) {
  if (e.empty()) return "0";
  std::string s;
  for (const auto& [p, c] : e) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")*[" + path_to_string(q, p) + "]";
  }
  return s;
}

}  // namespace mckay
