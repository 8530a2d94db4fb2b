#include <functional>
#include <random>

#include "doctest.h"
#include "mckay/dgquiver.hpp"

using namespace mckay;

namespace {

struct Builder {
  GradedQuiver q;
  int n;
  explicit Builder(int n_, int vertices) : n(n_) {
    for (int v = 0; v < vertices; ++v) q.vertices.push_back({v, "v" + std::to_string(v), 1});
  }
  // Adds a base arrow and its star; returns the base id.
  int pair(const std::string& name, int s, int t, int degree, int weight, int epsilon = 1) {
    const int a = q.add_arrow({0, name, s, t, degree, weight, ArrowKind::base, epsilon, -1});
    const int b = q.add_arrow({0, name + "*", t, s, 2 - n - degree, n - weight, ArrowKind::star, 1, a});
    q.arrows[static_cast<std::size_t>(a)].partner = b;
    return a;
  }
  void loops() {
    for (const auto& v : q.vertices) q.add_arrow({0, "t" + std::to_string(v.id), v.id, v.id, 1 - n, n, ArrowKind::loop_t});
  }
};

Path cyc(int start, std::vector<int> arrows) { return Path{start, std::move(arrows)}; }

// Polynomial quiver with potential in three variables, built by hand.
struct Poly3 {
  Builder b{3, 1};
  int x1, x2, x3;
  CyclicElement w;
  Poly3() {
    x1 = b.pair("x1", 0, 0, 0, 1, 1);
    x2 = b.pair("x2", 0, 0, 0, 1, -1);
    x3 = b.pair("x3", 0, 0, 0, 1, 1);
    b.loops();
    add_cyclic(w, b.q, cyc(0, {x1, x2, x3}), Cyclo(1));
    add_cyclic(w, b.q, cyc(0, {x1, x3, x2}), Cyclo(-1));
  }
};

// Two vertices, n = 4, with arrows in degrees 0 and -1.
struct TwoVertex4 {
  Builder b{4, 2};
  int a, c, m, l;
  TwoVertex4() {
    a = b.pair("a", 0, 1, 0, 1);
    c = b.pair("c", 1, 0, 0, 1);
    m = b.pair("m", 0, 1, -1, 2);
    l = b.pair("l", 0, 0, -1, 2);
    b.loops();
  }
};

std::vector<Path> closed_paths(const GradedQuiver& q, std::size_t length, int degree) {
  std::vector<Path> out;
  std::vector<int> stack;
  std::function<void(int, int)> rec = [&](int start, int at) {
    if (stack.size() == length) {
      if (at == start && path_degree(q, stack) == degree) out.push_back(Path{start, stack});
      return;
    }
    for (const auto& a : q.arrows) {
      if (a.source != at || a.kind == ArrowKind::loop_t) continue;
      stack.push_back(a.id);
      rec(start, a.target);
      stack.pop_back();
    }
  };
  for (const auto& v : q.vertices) rec(v.id, v.id);
  return out;
}

CyclicElement random_potential(const GradedQuiver& q, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  CyclicElement w;
  for (const Path& p : closed_paths(q, 3, 3 - n)) add_cyclic(w, q, p, Cyclo(coeff(rng)));
  return w;
}

PathElement random_element(const GradedQuiver& q, std::mt19937& rng, int start, std::size_t max_len) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  PathElement e;
  for (int t = 0; t < 3; ++t) {
    Path p{start, {}};
    int at = start;
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    const std::size_t l = len(rng);
    for (std::size_t k = 0; k < l; ++k) {
      std::vector<int> out;
      for (const auto& a : q.arrows)
        if (a.source == at) out.push_back(a.id);
      if (out.empty()) break;
      const int a = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
      p.arrows.push_back(a);
      at = q.arrows[static_cast<std::size_t>(a)].target;
    }
    add_term(e, p, Cyclo(coeff(rng)));
  }
  return e;
}

}  // namespace

TEST_CASE("canonical cycle examples") {
  Builder b(2, 2);
  const int a = b.q.add_arrow({0, "a", 0, 1, 0, 1, ArrowKind::generator});
  const int c = b.q.add_arrow({0, "c", 1, 0, 0, 1, ArrowKind::generator});
  auto [r1, s1] = canonical_cycle(b.q, cyc(1, {c, a}), Cyclo(3));
  CHECK(r1 == cyc(0, {a, c}));
  CHECK(s1 == Cyclo(3));

  const int u = b.q.add_arrow({0, "u", 0, 1, -1, 1, ArrowKind::generator});
  const int v = b.q.add_arrow({0, "v", 1, 0, -2, 1, ArrowKind::generator});
  auto [r2, s2] = canonical_cycle(b.q, cyc(1, {v, u}), Cyclo(1));
  CHECK(r2 == cyc(0, {u, v}));
  CHECK(s2 == Cyclo(1));

  const int o = b.q.add_arrow({0, "o", 0, 0, -1, 1, ArrowKind::generator});
  auto [r3, s3] = canonical_cycle(b.q, cyc(0, {o, o}), Cyclo(5));
  CHECK(s3.is_zero());
  CyclicElement e;
  add_cyclic(e, b.q, cyc(0, {o, o}), Cyclo(5));
  CHECK(e.empty());

  // odd rotation sign between two odd arrows
  const int o2 = b.q.add_arrow({0, "o2", 0, 0, -1, 1, ArrowKind::generator});
  auto [r4, s4] = canonical_cycle(b.q, cyc(0, {o2, o}), Cyclo(1));
  CHECK(r4 == cyc(0, {o, o2}));
  CHECK(s4 == Cyclo(-1));

  CHECK_THROWS_AS(canonical_cycle(b.q, cyc(0, {a}), Cyclo(1)), Error);
  try {
    canonical_cycle(b.q, cyc(0, {a}), Cyclo(1));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotClosed);
  }
}

TEST_CASE("canonicalization is idempotent") {
  TwoVertex4 t;
  std::mt19937 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    CyclicElement w = random_potential(t.b.q, 4, rng);
    CHECK(canonicalize(t.b.q, w) == w);
  }
}

TEST_CASE("cyclic derivative examples") {
  Poly3 p;
  PathElement expected;
  add_term(expected, cyc(0, {p.x2, p.x3}), Cyclo(1));
  add_term(expected, cyc(0, {p.x3, p.x2}), Cyclo(-1));
  CHECK(cyclic_derivative(p.w, p.x1, p.b.q) == expected);
  CHECK(cyclic_derivative(p.w, p.b.q.arrows[static_cast<std::size_t>(p.x1)].partner, p.b.q).empty());

  CyclicElement cube;
  add_cyclic(cube, p.b.q, cyc(0, {p.x1, p.x1, p.x1}), Cyclo(1));
  PathElement sq;
  add_term(sq, cyc(0, {p.x1, p.x1}), Cyclo(3));
  CHECK(cyclic_derivative(cube, p.x1, p.b.q) == sq);
}

TEST_CASE("zero potential presentation") {
  Builder b(2, 2);
  const int a = b.pair("a", 0, 1, 0, 1);
  b.pair("c", 1, 0, 0, 1);
  b.loops();
  const auto pres = assemble_ginzburg(b.q, {}, 2);
  CHECK(pres.differential[static_cast<std::size_t>(a)].empty());
  const PathElement& dt = pres.differential[4];
  CHECK(dt.size() == 2);  // a a* and c* c at vertex 0
  CHECK(check_d_squared(pres).ok);
  CHECK(check_d_homogeneous(pres));
}

TEST_CASE("three-variable polynomial potential") {
  Poly3 p;
  const auto pres = assemble_ginzburg(p.b.q, p.w, 3);
  CHECK(check_d_squared(pres).ok);
  CHECK(check_d_homogeneous(pres));
  CHECK(necklace_bracket(p.w, p.w, p.b.q).empty());
  // H^0 is the polynomial ring in three variables
  for (int w = 0; w <= 3; ++w) {
    const auto c = weight_component(pres, 0, 0, w);
    const auto h = cohomology_dims(c);
    for (const auto& [k, dim] : h) {
      if (k == 0) CHECK(dim == static_cast<std::size_t>((w + 1) * (w + 2) / 2));
      else CHECK(dim == 0);
    }
  }
}

TEST_CASE("potential validation") {
  Poly3 p;
  CyclicElement shortw;
  add_cyclic(shortw, p.b.q, cyc(0, {p.x1, p.x2}), Cyclo(1));
  CHECK_THROWS_AS(assemble_ginzburg(p.b.q, shortw, 3), Error);
  CyclicElement wrong;
  add_cyclic(wrong, p.b.q, cyc(0, {p.x1, p.x2, p.b.q.arrows[static_cast<std::size_t>(p.x3)].partner}), Cyclo(1));
  try {
    assemble_ginzburg(p.b.q, wrong, 3);
    FAIL("expected BadPotentialDegree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadPotentialDegree);
  }
  GradedQuiver broken = p.b.q;
  broken.arrows[1].degree = 0;
  CHECK_THROWS_AS(broken.validate(3), Error);
}

TEST_CASE("d squared agrees with the bracket on random potentials") {
  TwoVertex4 t;
  std::mt19937 rng(42);
  int passing = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const CyclicElement w = random_potential(t.b.q, 4, rng);
    const auto pres = assemble_ginzburg(t.b.q, w, 4);
    const bool d2 = check_d_squared(pres).ok;
    const bool bracket = necklace_bracket(w, w, t.b.q).empty();
    CHECK(d2 == bracket);
    CHECK(check_d_homogeneous(pres) == true);
    passing += d2 ? 1 : 0;
  }
  // a potential avoiding stars is always integrable
  CyclicElement w;
  add_cyclic(w, t.b.q, cyc(0, {t.a, t.c, t.l}), Cyclo(2));
  const auto pres = assemble_ginzburg(t.b.q, w, 4);
  CHECK(check_d_squared(pres).ok);
  CHECK(necklace_bracket(w, w, t.b.q).empty());
  CHECK(passing < 25);
}

TEST_CASE("bracket is bilinear and defined on trace classes") {
  TwoVertex4 t;
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const CyclicElement p = random_potential(t.b.q, 4, rng);
    const CyclicElement q1 = random_potential(t.b.q, 4, rng);
    const CyclicElement q2 = random_potential(t.b.q, 4, rng);
    CHECK(necklace_bracket(p, canonicalize(t.b.q, q1 + q2), t.b.q) ==
          canonicalize(t.b.q, necklace_bracket(p, q1, t.b.q) + necklace_bracket(p, q2, t.b.q)));

    // the same class written with rotated representatives
    CyclicElement rotated;
    for (const auto& [path, c] : p) {
      std::vector<int> r(path.arrows.begin() + 1, path.arrows.end());
      r.push_back(path.arrows.front());
      const long du = t.b.q.arrows[static_cast<std::size_t>(path.arrows.front())].degree;
      const long dv = path_degree(t.b.q, path.arrows) - du;
      const Cyclo s = (du * dv) % 2 == 0 ? c : -c;
      add_term(rotated, Path{t.b.q.arrows[static_cast<std::size_t>(r.front())].source, r}, s);
    }
    CHECK(canonicalize(t.b.q, rotated) == p);
    CHECK(necklace_bracket(rotated, q1, t.b.q) == necklace_bracket(p, q1, t.b.q));
    CHECK(necklace_bracket(q1, rotated, t.b.q) == necklace_bracket(q1, p, t.b.q));

    // graded antisymmetry: {p, q} = -(-1)^{(|p| + n)(|q| + n)} {q, p}
    const int e = (3 - 4 + 4) * (3 - 4 + 4);
    CHECK(necklace_bracket(p, q1, t.b.q) == scale(Cyclo(e % 2 == 0 ? -1 : 1), necklace_bracket(q1, p, t.b.q)));
  }
}

TEST_CASE("bracket of elements sharing no arrow pair vanishes") {
  TwoVertex4 t;
  CyclicElement p, q;
  add_cyclic(p, t.b.q, cyc(0, {t.a, t.c, t.l}), Cyclo(1));
  add_cyclic(q, t.b.q, cyc(0, {t.m, t.c, t.l}), Cyclo(1));
  CHECK(necklace_bracket(p, q, t.b.q).empty());
}

TEST_CASE("Leibniz rule") {
  TwoVertex4 t;
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pres = assemble_ginzburg(t.b.q, random_potential(t.b.q, 4, rng), 4);
    const Path p0 = random_element(t.b.q, rng, 0, 3).begin()->first;
    PathElement p{{p0, Cyclo(1)}};
    PathElement q = random_element(t.b.q, rng, path_end(t.b.q, p0), 3);
    const int dp = path_degree(t.b.q, p0.arrows);
    const PathElement lhs = apply_d(pres, multiply(t.b.q, p, q));
    const PathElement rhs = multiply(t.b.q, apply_d(pres, p), q) +
                            scale(Cyclo(dp % 2 == 0 ? 1 : -1), multiply(t.b.q, p, apply_d(pres, q)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("weight components of the two-variable polynomial quiver") {
  Builder b(2, 1);
  b.pair("x1", 0, 0, 0, 1);
  b.loops();
  const auto pres = assemble_ginzburg(b.q, {}, 2);
  const auto c2 = weight_component(pres, 0, 0, 2);
  CHECK(c2.dim(0) == 4);
  CHECK(c2.dim(-1) == 1);
  const auto h2 = cohomology_dims(c2);
  CHECK(h2.at(0) == 3);
  CHECK(h2.at(-1) == 0);
  const auto c0 = weight_component(pres, 0, 0, 0);
  CHECK(c0.dim(0) == 1);
  CHECK(cohomology_dims(c0).at(0) == 1);
  const auto euler = path_euler_characteristics(b.q, 0, 0, 6);
  for (int w = 0; w <= 6; ++w) {
    const auto c = weight_component(pres, 0, 0, w);
    long long chi = 0;
    long long chi_h = 0;
    for (int k = c.min_degree; k <= c.max_degree(); ++k) {
      chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.dim(k));
    }
    for (const auto& [k, d] : cohomology_dims(c)) chi_h += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(d);
    CHECK(chi == euler[static_cast<std::size_t>(w)]);
    CHECK(chi == chi_h);
    CHECK(euler[static_cast<std::size_t>(w)] == w + 1);
    for (std::size_t k = 0; k < c.d.size(); ++k) {
      CHECK(c.d[k].rank() + (k > 0 ? c.d[k - 1].rank() : 0) <= c.terms[k].size());
      if (k + 1 < c.d.size()) CHECK((c.d[k + 1] * c.d[k]).dense().is_zero());
    }
  }
  CHECK_THROWS_AS(weight_component(pres, 0, 0, 6, 10), Error);
  CHECK_THROWS_AS(weight_component(pres, 0, 3, 1), Error);
}

TEST_CASE("vertex deletion matches reassembly") {
  TwoVertex4 t;
  std::mt19937 rng(17);
  const CyclicElement w = random_potential(t.b.q, 4, rng);
  const auto pres = assemble_ginzburg(t.b.q, w, 4);
  const auto del = delete_vertex(pres, 1);
  CHECK(del.quiver.vertices.size() == 1);
  for (const auto& a : del.quiver.arrows) {
    CHECK(a.source == 0);
    CHECK(a.target == 0);
  }
  const auto fresh = assemble_ginzburg(del.quiver, del.potential, 4);
  CHECK(fresh.differential == del.differential);
  CHECK_THROWS_AS(delete_vertex(pres, 7), Error);

  Builder single(2, 1);
  single.pair("x1", 0, 0, 0, 1);
  single.loops();
  const auto gone = delete_vertex(assemble_ginzburg(single.q, {}, 2), 0);
  CHECK(gone.quiver.vertices.empty());
  CHECK(gone.quiver.arrows.empty());
}
