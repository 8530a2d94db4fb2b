#include "mckay/constructions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "mckay/groups.hpp"

namespace mckay {

namespace {

int parity_sign(long x) { return (x % 2 == 0) ? 1 : -1; }

std::string subset_name(const std::vector<int>& s, int n) {
  std::string out = "x";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (n > 9 && k) out += ',';
    out += std::to_string(s[k] + 1);
  }
  return out;
}

std::vector<int> complement(const std::vector<int>& s, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

// Position of each p-subset in lexicographic order.
std::map<std::vector<int>, std::size_t> subset_index(int n, int p) {
  std::map<std::vector<int>, std::size_t> idx;
  const auto subsets = subsets_of_size(n, p);
  for (std::size_t k = 0; k < subsets.size(); ++k) idx[subsets[k]] = k;
  return idx;
}

// Dual wedge comultiplication X_{a+b} -> X_a (x) X_b with the shift sign (-1)^{a-1}.
CycloMatrix comultiplication(int n, int a, int b) {
  const auto big = subsets_of_size(n, a + b);
  const auto ia = subset_index(n, a);
  const auto ib = subset_index(n, b);
  CycloMatrix m(ia.size() * ib.size(), big.size());
  for (std::size_t s = 0; s < big.size(); ++s) {
    for (const auto& left : subsets_of_size(a + b, a)) {
      std::vector<int> A, B;
      std::size_t pos = 0;
      for (std::size_t k = 0; k < big[s].size(); ++k) {
        if (pos < left.size() && left[pos] == static_cast<int>(k)) {
          A.push_back(big[s][k]);
          ++pos;
        } else {
          B.push_back(big[s][k]);
        }
      }
      const int e = parity_sign(a - 1) * shuffle_sign({A, B});
      m.add_to(ia.at(A) * ib.size() + ib.at(B), s, Cyclo(e));
    }
  }
  return m;
}

// Triple pairing tensor: sum of eps_{A,B,C} x_A (x) x_B (x) x_C as a column.
CycloMatrix triple_tensor(int n, int a, int b, int c) {
  const auto sa = subsets_of_size(n, a);
  const auto sb = subsets_of_size(n, b);
  const auto sc = subsets_of_size(n, c);
  CycloMatrix t(sa.size() * sb.size() * sc.size(), 1);
  for (std::size_t x = 0; x < sa.size(); ++x)
    for (std::size_t y = 0; y < sb.size(); ++y)
      for (std::size_t z = 0; z < sc.size(); ++z) {
        const int e = shuffle_sign({sa[x], sb[y], sc[z]});
        if (e) t.set((x * sb.size() + y) * sc.size() + z, 0, Cyclo(e));
      }
  return t;
}

CycloMatrix word2(const CycloMatrix& f1, const CycloMatrix& f2, std::size_t dim_first) {
  return kron(CycloMatrix::identity(dim_first), f2) * f1;
}

CycloMatrix word3(const CycloMatrix& f1, const CycloMatrix& f2, const CycloMatrix& f3, std::size_t d1,
                  std::size_t d2) {
  return kron(CycloMatrix::identity(d1 * d2), f3) * (kron(CycloMatrix::identity(d1), f2) * f1);
}

// Coordinates of each target in the span of the given words; the words are
// linearly independent by monoidality of the intertwiner calculus.
std::vector<CycloVector> decompose(const std::vector<CycloMatrix>& words, const std::vector<CycloMatrix>& targets) {
  std::vector<CycloVector> out(targets.size());
  if (targets.empty()) return out;
  const std::size_t len = targets.front().rows() * targets.front().cols();
  if (words.empty()) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!targets[t].is_zero()) fail(ErrorCode::ValidationError, "tensor lies outside the span of the word basis");
    }
    return out;
  }
  CycloMatrix a(len, words.size());
  for (std::size_t c = 0; c < words.size(); ++c) {
    const auto flat = words[c].flatten();
    for (std::size_t r = 0; r < len; ++r)
      if (!flat[r].is_zero()) a.set(r, c, flat[r]);
  }
  CycloMatrix b(len, targets.size());
  for (std::size_t c = 0; c < targets.size(); ++c) {
    const auto flat = targets[c].flatten();
    for (std::size_t r = 0; r < len; ++r)
      if (!flat[r].is_zero()) b.set(r, c, flat[r]);
  }
  const auto x = solve(a, b);
  if (!x) fail(ErrorCode::ValidationError, "tensor lies outside the span of the word basis");
  for (std::size_t t = 0; t < targets.size(); ++t) out[t] = x->column_vector(t);
  return out;
}

// Intertwiner spaces Hom_G(L_i, X_p (x) L_j) for p = 1..n.
struct Calculus {
  const IrrepSet& irreps;
  int n;
  std::size_t m;
  std::vector<Representation> x;       // x[p] = (wedge^p V)^*
  std::vector<Representation> wedge;   // wedge[p] = wedge^p V
  std::vector<std::vector<std::vector<std::vector<CycloMatrix>>>> y;  // y[p][i][j]

  explicit Calculus(const IrrepSet& ir) : irreps(ir), n(ir.group->n()), m(ir.size()) {
    const Representation v = natural_representation(ir.group);
    x.resize(static_cast<std::size_t>(n) + 1);
    wedge.resize(static_cast<std::size_t>(n) + 1);
    y.resize(static_cast<std::size_t>(n) + 1);
    for (int p = 1; p <= n; ++p) {
      wedge[static_cast<std::size_t>(p)] = wedge_power(v, static_cast<std::size_t>(p));
      x[static_cast<std::size_t>(p)] = dual(wedge[static_cast<std::size_t>(p)]);
      auto& yp = y[static_cast<std::size_t>(p)];
      yp.assign(m, std::vector<std::vector<CycloMatrix>>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          yp[i][j] = intertwiners(ir.irreps[i], tensor(x[static_cast<std::size_t>(p)], ir.irreps[j]));
    }
  }
  std::size_t xdim(int p) const { return x[static_cast<std::size_t>(p)].dim; }
  std::size_t d(std::size_t i) const { return irreps.dim(i); }
};

void require_validated(const IrrepSet& irreps) {
  if (!irreps.group || irreps.irreps.empty() || irreps.characters.size() != irreps.irreps.size())
    fail(ErrorCode::NotValidated, "irreducible representations must be validated first");
  for (const auto& r : irreps.irreps)
    if (r.group.get() != irreps.group.get()) fail(ErrorCode::NotValidated, "representation of a different group");
}

// Arrow data in the basis being assembled.
struct ArrowSet {
  std::vector<Arrow> arrows;
  std::vector<CycloMatrix> maps;
  int add(Arrow a, CycloMatrix map) {
    a.id = static_cast<int>(arrows.size());
    arrows.push_back(std::move(a));
    maps.push_back(std::move(map));
    return arrows.back().id;
  }
};

// Arrow decomposition of a generator map in the word basis built from the given arrows.
PathElement tensor_differential(const Calculus& c, const std::vector<Arrow>& arrows,
                                const std::vector<CycloMatrix>& maps, const Arrow& gen, const CycloMatrix& map,
                                int max_factor_weight) {
  PathElement out;
  const std::size_t i = static_cast<std::size_t>(gen.source);
  const std::size_t j = static_cast<std::size_t>(gen.target);
  for (int a = 1; a < gen.weight; ++a) {
    const int b = gen.weight - a;
    if (a > max_factor_weight || b > max_factor_weight) continue;
    const CycloMatrix target = kron(comultiplication(c.n, a, b), CycloMatrix::identity(c.d(j))) * map;
    std::vector<CycloMatrix> words;
    std::vector<std::pair<int, int>> labels;
    for (const Arrow& f1 : arrows) {
      if (f1.weight != a || f1.source != gen.source || f1.kind == ArrowKind::loop_t) continue;
      for (const Arrow& f2 : arrows) {
        if (f2.weight != b || f2.source != f1.target || f2.target != gen.target || f2.kind == ArrowKind::loop_t)
          continue;
        words.push_back(word2(maps[static_cast<std::size_t>(f1.id)], maps[static_cast<std::size_t>(f2.id)], c.xdim(a)));
        labels.emplace_back(f1.id, f2.id);
      }
    }
    const auto coeffs = decompose(words, {target});
    for (std::size_t k = 0; k < labels.size(); ++k)
      add_term(out, Path{static_cast<int>(i), {labels[k].first, labels[k].second}}, coeffs[0][k]);
  }
  return out;
}

using Form = std::function<Cyclo(const CycloVector&, const CycloVector&)>;

CycloVector axpy(const CycloVector& x, const Cyclo& s, const CycloVector& y) {
  CycloVector out = x;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += s * y[k];
  return out;
}

CycloVector scaled(const Cyclo& s, CycloVector v) {
  for (auto& e : v) e = s * e;
  return v;
}

// An isotropic vector in the span of the given vectors for a symmetric form.
std::optional<CycloVector> isotropic_vector(const std::vector<CycloVector>& basis, const Form& f) {
  for (const auto& v : basis)
    if (f(v, v).is_zero()) return v;
  // orthogonal basis
  std::vector<CycloVector> orth;
  for (CycloVector v : basis) {
    for (const auto& u : orth) v = axpy(v, -(f(v, u) / f(u, u)), u);
    if (f(v, v).is_zero()) {
      bool zero = std::all_of(v.begin(), v.end(), [](const Cyclo& c) { return c.is_zero(); });
      if (!zero) return v;
      continue;
    }
    orth.push_back(std::move(v));
  }
  std::optional<CycloVector> best;
  int best_conductor = 0;
  for (std::size_t a = 0; a < orth.size(); ++a)
    for (std::size_t b = a + 1; b < orth.size(); ++b) {
      const auto r = rational_square_root(-(f(orth[b], orth[b]) / f(orth[a], orth[a])));
      if (!r) continue;
      if (!best || r->conductor() < best_conductor) {
        best = axpy(orth[b], *r, orth[a]);
        best_conductor = r->conductor();
      }
    }
  return best;
}

// Vectors u_k, v_k with f(u_k, v_l) = delta_kl and all other pairings among them zero.
// sign: f(v, u) = -sign * f(u, v).
std::pair<std::vector<CycloVector>, std::vector<CycloVector>> hyperbolic_basis(std::vector<CycloVector> space,
                                                                              const Form& f, int sign) {
  std::vector<CycloVector> us, vs;
  while (!space.empty()) {
    if (space.size() % 2) fail(ErrorCode::OddMiddleDimension, "middle loop block has odd dimension");
    CycloVector u;
    if (sign == 1) {
      u = space.front();
    } else {
      auto iso = isotropic_vector(space, f);
      if (!iso) fail(ErrorCode::NotSplit, "no isotropic vector found for the symmetric middle form");
      u = *iso;
    }
    std::optional<CycloVector> w;
    for (const auto& cand : space)
      if (!f(u, cand).is_zero()) {
        w = scaled(f(u, cand).inverse(), cand);
        break;
      }
    if (!w) fail(ErrorCode::DegeneratePairing, "middle loop block is degenerate");
    CycloVector v = *w;
    if (sign == -1) v = axpy(v, -(f(v, v) / Cyclo(2)), u);  // now f(v, v) = 0
    us.push_back(u);
    vs.push_back(v);
    // project the spanning set into the orthogonal complement and re-extract a basis
    std::vector<CycloVector> rest;
    for (const auto& x : space) {
      CycloVector y = axpy(x, -f(x, v), u);
      y = axpy(y, Cyclo(sign) * f(x, u), v);
      rest.push_back(std::move(y));
    }
    space = echelon_basis(rest);
  }
  return {us, vs};
}

}  // namespace

int shuffle_sign(const std::vector<std::vector<int>>& parts) {
  std::vector<int> seq;
  for (const auto& p : parts) seq.insert(seq.end(), p.begin(), p.end());
  std::vector<int> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  long inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inversions;
  return parity_sign(inversions);
}

int PolyQP::arrow_of(const std::vector<int>& subset) const {
  for (std::size_t k = 0; k < subsets.size(); ++k)
    if (subsets[k] == subset) return static_cast<int>(k);
  fail(ErrorCode::OutOfRange, "no arrow for the given subset");
}

PolyQP poly_qp(int n) {
  if (n < 1) fail(ErrorCode::OutOfRange, "n must be positive");
  PolyQP out;
  out.n = n;
  GradedQuiver q;
  q.vertices.push_back({0, "0", 1});
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int size = 1; 2 * size <= n; ++size) {
    for (const auto& s : subsets_of_size(n, size)) {
      if (2 * size == n && s.front() != 0) continue;
      const auto sc = complement(s, n);
      const int eps = parity_sign(size - 1) * shuffle_sign({s, sc});
      const int a = q.add_arrow({0, subset_name(s, n), 0, 0, 1 - size, size, ArrowKind::base, eps, -1});
      const int b = q.add_arrow({0, subset_name(sc, n), 0, 0, 1 - (n - size), n - size, ArrowKind::star, 1, a});
      q.arrows[static_cast<std::size_t>(a)].partner = b;
      out.subsets.push_back(s);
      out.subsets.push_back(sc);
    }
  }
  q.add_arrow({0, subset_name(all, n), 0, 0, 1 - n, n, ArrowKind::loop_t});
  out.subsets.push_back(all);

  CyclicElement w;
  // one ordered triple per cyclic class: the first part contains variable 0
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      std::vector<int> parts[3];
      for (int v = 0; v < n; ++v) parts[label[static_cast<std::size_t>(v)]].push_back(v);
      if (parts[1].empty() || parts[2].empty()) return;
      const int e = parity_sign(static_cast<long>(parts[1].size()) - 1) * shuffle_sign({parts[0], parts[1], parts[2]});
      add_cyclic(w, q, Path{0, {out.arrow_of(parts[0]), out.arrow_of(parts[1]), out.arrow_of(parts[2])}}, Cyclo(e));
      return;
    }
    for (int part = 0; part < 3; ++part) {
      if (k == 0 && part != 0) continue;
      label[static_cast<std::size_t>(k)] = part;
      rec(k + 1);
    }
  };
  if (n >= 3) rec(0);
  out.pres = assemble_ginzburg(q, w, n);
  return out;
}

TensorDGA gl_dga(const IrrepSet& irreps) {
  require_validated(irreps);
  const Calculus c(irreps);
  TensorDGA out;
  out.irreps = irreps;
  out.n = c.n;
  GradedQuiver q;
  for (std::size_t i = 0; i < c.m; ++i)
    q.vertices.push_back({static_cast<int>(i), irreps.irreps[i].label.empty() ? std::to_string(i) : irreps.irreps[i].label,
                          static_cast<int>(c.d(i))});
  for (int p = 1; p <= c.n; ++p)
    for (std::size_t i = 0; i < c.m; ++i)
      for (std::size_t j = 0; j < c.m; ++j) {
        const auto& basis = c.y[static_cast<std::size_t>(p)][i][j];
        for (std::size_t k = 0; k < basis.size(); ++k) {
          const std::string name = "y" + std::to_string(p) + "_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                   std::to_string(k);
          q.add_arrow({0, name, static_cast<int>(i), static_cast<int>(j), 1 - p, p, ArrowKind::generator});
          out.arrow_maps.push_back(basis[k]);
          out.basis_index.push_back(k);
        }
      }
  out.pres.n = c.n;
  out.pres.from_potential = false;
  out.pres.quiver = q;
  out.pres.differential.resize(q.arrows.size());
  for (const Arrow& a : q.arrows)
    out.pres.differential[static_cast<std::size_t>(a.id)] =
        tensor_differential(c, q.arrows, out.arrow_maps, a, out.arrow_maps[static_cast<std::size_t>(a.id)], c.n);
  return out;
}

bool tensor_matches_poly(const TensorDGA& a, const PolyQP& p) {
  const GradedQuiver& qa = a.pres.quiver;
  const GradedQuiver& qp = p.pres.quiver;
  if (qa.vertices.size() != 1 || qa.arrows.size() != qp.arrows.size()) return false;
  std::vector<int> to_poly(qa.arrows.size());
  for (const Arrow& arr : qa.arrows) {
    const auto subset = subsets_of_size(a.n, arr.weight).at(a.basis_index[static_cast<std::size_t>(arr.id)]);
    const int target = p.arrow_of(subset);
    const Arrow& pa = qp.arrows[static_cast<std::size_t>(target)];
    if (pa.degree != arr.degree || pa.weight != arr.weight) return false;
    to_poly[static_cast<std::size_t>(arr.id)] = target;
  }
  for (const Arrow& arr : qa.arrows) {
    PathElement mapped;
    for (const auto& [path, coeff] : a.pres.differential[static_cast<std::size_t>(arr.id)]) {
      Path r{0, {}};
      for (int x : path.arrows) r.arrows.push_back(to_poly[static_cast<std::size_t>(x)]);
      add_term(mapped, r, coeff);
    }
    if (mapped != p.pres.differential[static_cast<std::size_t>(to_poly[static_cast<std::size_t>(arr.id)])]) return false;
  }
  return true;
}

namespace {

// Gram blocks of all weights, from the decomposition of d(t_i).
std::map<std::tuple<int, std::size_t, std::size_t>, CycloMatrix> gram_blocks(const Calculus& c) {
  std::map<std::tuple<int, std::size_t, std::size_t>, CycloMatrix> out;
  for (std::size_t i = 0; i < c.m; ++i) {
    const CycloMatrix t = Cyclo(static_cast<long>(c.d(i))) * CycloMatrix::identity(c.d(i));
    for (int a = 1; a < c.n; ++a) {
      const int b = c.n - a;
      const CycloMatrix target = kron(comultiplication(c.n, a, b), CycloMatrix::identity(c.d(i))) * t;
      std::vector<CycloMatrix> words;
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> labels;
      for (std::size_t j = 0; j < c.m; ++j) {
        const auto& y1 = c.y[static_cast<std::size_t>(a)][i][j];
        const auto& y2 = c.y[static_cast<std::size_t>(b)][j][i];
        for (std::size_t k1 = 0; k1 < y1.size(); ++k1)
          for (std::size_t k2 = 0; k2 < y2.size(); ++k2) {
            words.push_back(word2(y1[k1], y2[k2], c.xdim(a)));
            labels.emplace_back(j, k1, k2);
          }
      }
      const auto coeffs = decompose(words, {target});
      for (std::size_t j = 0; j < c.m; ++j) {
        const std::size_t r = c.y[static_cast<std::size_t>(a)][i][j].size();
        const std::size_t s = c.y[static_cast<std::size_t>(b)][j][i].size();
        if (r == 0 && s == 0) continue;
        if (r != s) fail(ErrorCode::DegeneratePairing, "paired intertwiner spaces differ in dimension");
        out[{a, i, j}] = CycloMatrix(r, s);
      }
      for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto [j, k1, k2] = labels[k];
        if (!coeffs[0][k].is_zero()) out[{a, i, j}].set(k1, k2, coeffs[0][k]);
      }
    }
  }
  for (const auto& [key, g] : out)
    if (det(g).is_zero()) fail(ErrorCode::DegeneratePairing, "copairing block is singular");
  // graded antisymmetry between the blocks at both ends
  for (const auto& [key, g] : out) {
    const auto [a, i, j] = key;
    const int b = c.n - a;
    const int expected = -parity_sign(static_cast<long>(1 - a) * (1 - b));
    if (out.at({b, j, i}) != Cyclo(expected) * g.transpose())
      fail(ErrorCode::ValidationError, "copairing is not graded antisymmetric");
  }
  return out;
}

CycloMatrix combine(const std::vector<CycloMatrix>& basis, const CycloVector& coeffs) {
  CycloMatrix out(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!coeffs[k].is_zero()) out = out + coeffs[k] * basis[k];
  return out;
}

// Contraction X_p (x) wedge^p V -> k applied in the middle of L_i -> X_p (x) L_j -> X_p (x) wedge^p V (x) L_i.
Cyclo dual_pairing(const Calculus& c, int p, std::size_t i, const CycloMatrix& alpha, const CycloMatrix& dual_map) {
  const std::size_t xd = c.xdim(p);
  const CycloMatrix composite = kron(CycloMatrix::identity(xd), dual_map) * alpha;
  const std::size_t di = c.d(i);
  Cyclo tr(0);
  for (std::size_t s = 0; s < xd; ++s)
    for (std::size_t r = 0; r < di; ++r) tr += composite((s * xd + s) * di + r, r);
  return tr / Cyclo(static_cast<long>(di));
}

}  // namespace

std::vector<PairingBlock> mckay_pairing(const IrrepSet& irreps, int p) {
  require_validated(irreps);
  if (!linearity_predicates(*irreps.group).in_SL) fail(ErrorCode::NotSL, "group is not contained in SL_n");
  const Calculus c(irreps);
  if (p < 1 || p >= c.n) fail(ErrorCode::OutOfRange, "pairing weight must lie in [1, n - 1]");
  std::vector<PairingBlock> out;
  for (const auto& [key, g] : gram_blocks(c)) {
    const auto [a, i, j] = key;
    if (a == p) out.push_back({a, i, j, g});
  }
  return out;
}

CycloMatrix hyperbolic_change_of_basis(const CycloMatrix& gram, PairingSymmetry symmetry) {
  const std::size_t dim = gram.rows();
  if (gram.cols() != dim) fail(ErrorCode::ShapeMismatch, "gram matrix must be square");
  const int sign = symmetry == PairingSymmetry::antisymmetric ? 1 : -1;
  const Form f = [&gram](const CycloVector& u, const CycloVector& v) {
    Cyclo s(0);
    for (std::size_t r = 0; r < u.size(); ++r) {
      if (u[r].is_zero()) continue;
      for (std::size_t t = 0; t < v.size(); ++t)
        if (!v[t].is_zero() && !gram(r, t).is_zero()) s += u[r] * gram(r, t) * v[t];
    }
    return s;
  };
  std::vector<CycloVector> space;
  for (std::size_t k = 0; k < dim; ++k) {
    CycloVector e(dim);
    e[k] = Cyclo(1);
    space.push_back(e);
  }
  const auto [us, vs] = hyperbolic_basis(space, f, sign);
  if (2 * us.size() != dim) fail(ErrorCode::DegeneratePairing, "middle loop block is degenerate");
  const std::size_t half = us.size();
  CycloMatrix q(dim, dim);
  for (std::size_t k = 0; k < half; ++k)
    for (std::size_t r = 0; r < dim; ++r) {
      q.set(r, k, us[k][r]);
      q.set(r, half + k, vs[k][r]);
    }
  return q;
}

PairingSymmetry middle_symmetry(int n) {
  const int a = n / 2;
  return parity_sign(static_cast<long>(1 - a) * (1 - a)) == 1 ? PairingSymmetry::antisymmetric
                                                              : PairingSymmetry::symmetric;
}

McKayQP assemble_mckay_qp(const IrrepSet& irreps) {
  require_validated(irreps);
  if (!linearity_predicates(*irreps.group).in_SL) fail(ErrorCode::NotSL, "group is not contained in SL_n");
  const Calculus c(irreps);
  const int n = c.n;
  McKayQP qp;
  qp.irreps = irreps;
  qp.n = n;
  const auto grams = gram_blocks(c);
  for (const auto& [key, g] : grams) qp.pairing.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), g});

  ArrowSet set;
  auto name = [](int p, std::size_t i, std::size_t j, std::size_t k) {
    return "a" + std::to_string(p) + "_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
  };
  auto add_pair = [&](int a, std::size_t i, std::size_t j, const std::string& nm, CycloMatrix base, CycloMatrix star) {
    const int id = set.add({0, nm, static_cast<int>(i), static_cast<int>(j), 1 - a, a, ArrowKind::base, 1, -1},
                           std::move(base));
    const int sid = set.add({0, nm + "*", static_cast<int>(j), static_cast<int>(i), 1 - (n - a), n - a,
                             ArrowKind::star, 1, id},
                            std::move(star));
    set.arrows[static_cast<std::size_t>(id)].partner = sid;
  };
  for (int a = 1; 2 * a <= n; ++a) {
    const bool middle = 2 * a == n;
    for (std::size_t i = 0; i < c.m; ++i)
      for (std::size_t j = 0; j < c.m; ++j) {
        const auto& ya = c.y[static_cast<std::size_t>(a)][i][j];
        if (ya.empty()) continue;
        const auto& yb = c.y[static_cast<std::size_t>(n - a)][j][i];
        const CycloMatrix& g = grams.at({a, i, j});
        if (!middle || i < j) {
          for (std::size_t k = 0; k < ya.size(); ++k) {
            CycloVector row(yb.size());
            for (std::size_t b = 0; b < yb.size(); ++b) row[b] = g(k, b);
            add_pair(a, i, j, name(a, i, j, k), ya[k], combine(yb, row));
          }
        } else if (i == j) {
          const CycloMatrix q = hyperbolic_change_of_basis(g, middle_symmetry(n));
          const std::size_t half = ya.size() / 2;
          const CycloMatrix qinv = inverse(q);
          for (std::size_t k = 0; k < half; ++k) {
            CycloVector rb(ya.size()), rs(ya.size());
            for (std::size_t r = 0; r < ya.size(); ++r) {
              rb[r] = qinv(k, r);
              rs[r] = qinv(half + k, r);
            }
            add_pair(a, i, i, name(a, i, i, k), combine(ya, rb), combine(ya, rs));
          }
        }
      }
  }
  for (const auto& a : set.arrows)
    if (a.kind == ArrowKind::base) ++qp.lagrangian_dims[a.weight];
  for (std::size_t i = 0; i < c.m; ++i)
    set.add({0, "t" + std::to_string(i), static_cast<int>(i), static_cast<int>(i), 1 - n, n, ArrowKind::loop_t},
            Cyclo(static_cast<long>(c.d(i))) * CycloMatrix::identity(c.d(i)));

  GradedQuiver quiver;
  for (std::size_t i = 0; i < c.m; ++i)
    quiver.vertices.push_back({static_cast<int>(i),
                               irreps.irreps[i].label.empty() ? std::to_string(i) : irreps.irreps[i].label,
                               static_cast<int>(c.d(i))});
  quiver.arrows = set.arrows;
  qp.arrow_maps = set.maps;

  // dual bases per (weight, source, target) block
  std::vector<CycloMatrix> duals(set.arrows.size());
  std::map<std::tuple<int, int, int>, std::vector<int>> blocks;
  for (const Arrow& a : set.arrows)
    if (a.kind != ArrowKind::loop_t) blocks[{a.weight, a.source, a.target}].push_back(a.id);
  for (const auto& [key, ids] : blocks) {
    const auto [p, i, j] = key;
    const auto dual_space =
        intertwiners(irreps.irreps[static_cast<std::size_t>(j)],
                     tensor(c.wedge[static_cast<std::size_t>(p)], irreps.irreps[static_cast<std::size_t>(i)]));
    if (dual_space.size() != ids.size()) fail(ErrorCode::ValidationError, "dual intertwiner space has wrong dimension");
    CycloMatrix pm(ids.size(), ids.size());
    for (std::size_t r = 0; r < ids.size(); ++r)
      for (std::size_t s = 0; s < ids.size(); ++s)
        pm.set(r, s, dual_pairing(c, p, static_cast<std::size_t>(i), set.maps[static_cast<std::size_t>(ids[r])],
                                  dual_space[s]));
    const CycloMatrix coeff = inverse(pm).transpose();
    for (std::size_t r = 0; r < ids.size(); ++r) {
      CycloVector row(ids.size());
      for (std::size_t s = 0; s < ids.size(); ++s) row[s] = coeff(r, s);
      duals[static_cast<std::size_t>(ids[r])] = combine(dual_space, row);
    }
  }

  // lambda on composable 3-cycle words of total weight n
  CyclicElement w;
  for (const Arrow& x : set.arrows) {
    if (x.kind == ArrowKind::loop_t) continue;
    for (const Arrow& y : set.arrows) {
      if (y.kind == ArrowKind::loop_t || y.source != x.target || x.weight + y.weight >= n) continue;
      for (const Arrow& z : set.arrows) {
        if (z.kind == ArrowKind::loop_t || z.source != y.target || z.target != x.source ||
            x.weight + y.weight + z.weight != n)
          continue;
        const std::size_t i = static_cast<std::size_t>(x.source);
        const std::size_t ua = c.wedge[static_cast<std::size_t>(x.weight)].dim;
        const std::size_t ub = c.wedge[static_cast<std::size_t>(y.weight)].dim;
        const std::size_t uc = c.wedge[static_cast<std::size_t>(z.weight)].dim;
        // L_i -> U_c (x) L_k -> U_c (x) U_b (x) L_j -> U_c (x) U_b (x) U_a (x) L_i
        const CycloMatrix phi = kron(CycloMatrix::identity(uc * ub), duals[static_cast<std::size_t>(x.id)]) *
                                (kron(CycloMatrix::identity(uc), duals[static_cast<std::size_t>(y.id)]) *
                                 duals[static_cast<std::size_t>(z.id)]);
        const auto sa = subsets_of_size(n, x.weight);
        const auto sb = subsets_of_size(n, y.weight);
        const auto sc = subsets_of_size(n, z.weight);
        const std::size_t di = c.d(i);
        CycloMatrix e(di, di);
        for (std::size_t C = 0; C < uc; ++C)
          for (std::size_t B = 0; B < ub; ++B)
            for (std::size_t A = 0; A < ua; ++A) {
              const int s = shuffle_sign({sa[A], sb[B], sc[C]});
              if (!s) continue;
              const std::size_t row0 = ((C * ub + B) * ua + A) * di;
              for (std::size_t r = 0; r < di; ++r)
                for (std::size_t col = 0; col < di; ++col)
                  if (!phi(row0 + r, col).is_zero()) e.add_to(r, col, Cyclo(s) * phi(row0 + r, col));
            }
        if (!e.is_scalar()) fail(ErrorCode::NotScalar, "triple pairing composite is not scalar");
        const Cyclo lam = e.trace();
        if (lam.is_zero()) continue;
        const Path word{x.source, {x.id, y.id, z.id}};
        qp.lambda[word] = lam;
        const Cyclo coeff = Cyclo(Rational(parity_sign(y.degree), 3)) * lam;
        auto [rep, value] = canonical_cycle(quiver, word, coeff);
        if (value.is_zero()) {
          if (std::find(qp.symmetric_cycles.begin(), qp.symmetric_cycles.end(), rep) == qp.symmetric_cycles.end())
            qp.symmetric_cycles.push_back(rep);
          continue;
        }
        add_term(w, rep, value);
      }
    }
  }
  qp.pres = assemble_ginzburg(quiver, w, n);

  for (int p = 1; p <= n; ++p)
    for (std::size_t i = 0; i < c.m; ++i)
      for (std::size_t j = 0; j < c.m; ++j) {
        long count = 0;
        for (const Arrow& a : quiver.arrows)
          if (a.weight == p && a.source == static_cast<int>(i) && a.target == static_cast<int>(j)) ++count;
        qp.multiplicities[{p, static_cast<int>(i), static_cast<int>(j)}] = count;
        qp.predicted_multiplicities[{p, static_cast<int>(i), static_cast<int>(j)}] =
            hom_dimension_prediction(irreps, i, j, c.x[static_cast<std::size_t>(p)]);
      }
  return qp;
}

bool differential_matches_tensor_algebra(const McKayQP& qp) {
  const Calculus c(qp.irreps);
  const GradedQuiver& q = qp.pres.quiver;
  for (const Arrow& a : q.arrows) {
    const PathElement expected =
        tensor_differential(c, q.arrows, qp.arrow_maps, a, qp.arrow_maps[static_cast<std::size_t>(a.id)], c.n - 1);
    if (expected != qp.pres.differential[static_cast<std::size_t>(a.id)]) return false;
  }
  return true;
}

bool sym_check(const McKayQP& qp, const CyclicElement& w) {
  const GradedQuiver& q = qp.pres.quiver;
  PathElement lhs;
  for (const auto& [path, coeff] : w) {
    const std::size_t r = path.arrows.size();
    long prefix = 0;
    const long total = path_degree(q, path.arrows);
    for (std::size_t k = 0; k < r; ++k) {
      std::vector<int> rot(path.arrows.begin() + static_cast<std::ptrdiff_t>(k), path.arrows.end());
      rot.insert(rot.end(), path.arrows.begin(), path.arrows.begin() + static_cast<std::ptrdiff_t>(k));
      const Cyclo s = parity_sign(prefix * (total - prefix)) == 1 ? coeff : -coeff;
      add_term(lhs, Path{q.arrows[static_cast<std::size_t>(rot.front())].source, rot}, s);
      prefix += q.arrows[static_cast<std::size_t>(path.arrows[k])].degree;
    }
  }

  const Calculus c(qp.irreps);
  const int n = c.n;
  PathElement rhs;
  for (std::size_t i = 0; i < c.m; ++i)
    for (int a = 1; a < n; ++a)
      for (int b = 1; a + b < n; ++b) {
        const int cw = n - a - b;
        const CycloMatrix target = kron(triple_tensor(n, a, b, cw), CycloMatrix::identity(c.d(i)));
        std::vector<CycloMatrix> words;
        std::vector<Path> labels;
        for (const Arrow& x : q.arrows) {
          if (x.weight != a || x.source != static_cast<int>(i) || x.kind == ArrowKind::loop_t) continue;
          for (const Arrow& y : q.arrows) {
            if (y.weight != b || y.source != x.target || y.kind == ArrowKind::loop_t) continue;
            for (const Arrow& z : q.arrows) {
              if (z.weight != cw || z.source != y.target || z.target != x.source || z.kind == ArrowKind::loop_t)
                continue;
              words.push_back(word3(qp.arrow_maps[static_cast<std::size_t>(x.id)],
                                    qp.arrow_maps[static_cast<std::size_t>(y.id)],
                                    qp.arrow_maps[static_cast<std::size_t>(z.id)], c.xdim(a), c.xdim(b)));
              labels.push_back(Path{x.source, {x.id, y.id, z.id}});
            }
          }
        }
        const auto coeffs = decompose(words, {target});
        const Cyclo factor = Cyclo(static_cast<long>(c.d(i)) * parity_sign(1 - b));
        for (std::size_t k = 0; k < labels.size(); ++k) add_term(rhs, labels[k], factor * coeffs[0][k]);
      }
  return lhs == rhs;
}

H0Presentation h0_presentation(const GinzburgPresentation& pres, int w_max, std::size_t path_budget) {
  const GradedQuiver& q = pres.quiver;
  H0Presentation out;
  out.quiver.vertices = q.vertices;
  std::vector<int> remap(q.arrows.size(), -1);
  for (const Arrow& a : q.arrows)
    if (a.degree == 0) {
      remap[static_cast<std::size_t>(a.id)] = static_cast<int>(out.quiver.arrows.size());
      Arrow b = a;
      b.id = static_cast<int>(out.quiver.arrows.size());
      b.partner = -1;
      out.quiver.arrows.push_back(b);
    }
  std::vector<std::pair<const Arrow*, PathElement>> rels;
  for (const Arrow& a : q.arrows) {
    if (a.degree != -1) continue;
    PathElement r;
    for (const auto& [path, coeff] : pres.differential[static_cast<std::size_t>(a.id)]) {
      Path m{path.start, {}};
      for (int x : path.arrows) m.arrows.push_back(remap[static_cast<std::size_t>(x)]);
      add_term(r, m, coeff);
    }
    out.relations.push_back(r);
    rels.emplace_back(&a, std::move(r));
  }

  // degree-0 paths per (start, end, weight)
  std::map<std::tuple<int, int, int>, std::vector<Path>> paths;
  std::size_t count = 0;
  std::vector<int> stack;
  std::function<void(int, int, int)> dfs = [&](int start, int at, int weight) {
    if (++count > path_budget) fail(ErrorCode::ResourceLimit, "degree-0 path enumeration exceeds the budget");
    paths[{start, at, weight}].push_back(Path{start, stack});
    for (const Arrow& a : out.quiver.arrows) {
      if (a.source != at || weight + a.weight > w_max) continue;
      stack.push_back(a.id);
      dfs(start, a.target, weight + a.weight);
      stack.pop_back();
    }
  };
  for (const auto& v : q.vertices) dfs(v.id, v.id, 0);

  for (const auto& vi : q.vertices)
    for (const auto& vj : q.vertices)
      for (int w = 0; w <= w_max; ++w) {
        const auto it = paths.find({vi.id, vj.id, w});
        const std::vector<Path> basis = it == paths.end() ? std::vector<Path>{} : it->second;
        std::map<Path, std::size_t> index;
        for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
        SparseEchelon ideal;
        for (const auto& [arrow, rel] : rels) {
          for (int w1 = 0; w1 + arrow->weight <= w; ++w1) {
            const int w2 = w - w1 - arrow->weight;
            const auto left = paths.find({vi.id, arrow->source, w1});
            const auto right = paths.find({arrow->target, vj.id, w2});
            if (left == paths.end() || right == paths.end()) continue;
            for (const Path& u : left->second)
              for (const Path& v : right->second) {
                std::map<std::size_t, Cyclo> acc;
                for (const auto& [m, coeff] : rel) {
                  Path full{vi.id, u.arrows};
                  full.arrows.insert(full.arrows.end(), m.arrows.begin(), m.arrows.end());
                  full.arrows.insert(full.arrows.end(), v.arrows.begin(), v.arrows.end());
                  acc[index.at(full)] += coeff;
                }
                SparseVector sv;
                for (auto& [k, x] : acc)
                  if (!x.is_zero()) sv.emplace_back(k, x);
                ideal.insert(sv);
              }
          }
        }
        const std::size_t dim = basis.size() - ideal.rank();
        out.weight_dims[{vi.id, vj.id, w}] = dim;
        const auto h = cohomology_dims(weight_component(pres, vi.id, vj.id, w, path_budget));
        const auto h0 = h.find(0);
        if ((h0 == h.end() ? 0 : h0->second) != dim)
          fail(ErrorCode::ValidationError, "relation quotient disagrees with H^0 at weight " + std::to_string(w));
      }
  return out;
}

}  // namespace mckay
