#include "mckay/reps.hpp"

#include <algorithm>
#include <numeric>

namespace mckay {

namespace {

void require_same_group(const Representation& a, const Representation& b) {
  if (a.group != b.group) fail(ErrorCode::GroupMismatch, "representations of different groups");
}

CycloMatrix image_of(const Representation& r, std::size_t k) {
  const auto& g = *r.group;
  std::vector<std::size_t> gens;
  while (k != 0) {
    gens.push_back(g.parent_generator(k));
    k = g.parent(k);
  }
  CycloMatrix m = CycloMatrix::identity(r.dim, g.conductor());
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) m = m * r.gen_images[*it];
  return m;
}

long as_integer(const Cyclo& c, const std::string& what) {
  if (!c.is_rational()) fail(ErrorCode::NonIntegerMultiplicity, what + " is not rational: " + c.to_string());
  const Rational q = c.rational_value();
  if (q.get_den() != 1) fail(ErrorCode::NonIntegerMultiplicity, what + " is not an integer: " + q.get_str());
  return q.get_num().get_si();
}

}  // namespace

Representation trivial_representation(const GroupPtr& g) {
  Representation r;
  r.group = g;
  r.dim = 1;
  r.gen_images.assign(g->generator_count(), CycloMatrix::identity(1, 1));
  r.label = "trivial";
  return r;
}

Representation natural_representation(const GroupPtr& g) {
  Representation r;
  r.group = g;
  r.dim = static_cast<std::size_t>(g->n());
  r.gen_images = g->generators();
  r.label = "V";
  return r;
}

std::vector<CycloMatrix> element_images(const Representation& r) {
  const auto& g = *r.group;
  std::vector<CycloMatrix> images;
  images.reserve(g.order());
  images.push_back(CycloMatrix::identity(r.dim, g.conductor()));
  for (std::size_t k = 1; k < g.order(); ++k)
    images.push_back(images[g.parent(k)] * r.gen_images[g.parent_generator(k)]);
  return images;
}

bool is_homomorphism(const Representation& r) {
  const auto& g = *r.group;
  if (r.gen_images.size() != g.generator_count()) return false;
  for (const auto& m : r.gen_images)
    if (m.rows() != r.dim || m.cols() != r.dim) return false;
  const auto images = element_images(r);
  for (std::size_t k = 0; k < g.order(); ++k)
    for (std::size_t j = 0; j < g.generator_count(); ++j)
      if (images[g.right_multiply(k, j)] != images[k] * r.gen_images[j]) return false;
  return true;
}

std::vector<Cyclo> character(const Representation& r) {
  std::vector<Cyclo> chi;
  for (const auto& cls : r.group->classes()) chi.push_back(image_of(r, cls.front()).trace());
  return chi;
}

Representation tensor(const Representation& a, const Representation& b) {
  require_same_group(a, b);
  Representation r;
  r.group = a.group;
  r.dim = a.dim * b.dim;
  for (std::size_t k = 0; k < a.gen_images.size(); ++k) r.gen_images.push_back(kron(a.gen_images[k], b.gen_images[k]));
  r.degree = a.degree + b.degree;
  r.weight = a.weight + b.weight;
  r.label = "(" + a.label + ")*(" + b.label + ")";
  return r;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  require_same_group(a, b);
  Representation r;
  r.group = a.group;
  r.dim = a.dim + b.dim;
  for (std::size_t k = 0; k < a.gen_images.size(); ++k) {
    CycloMatrix m(r.dim, r.dim, std::lcm(a.gen_images[k].conductor(), b.gen_images[k].conductor()));
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j) m.set(i, j, a.gen_images[k](i, j));
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) m.set(a.dim + i, a.dim + j, b.gen_images[k](i, j));
    r.gen_images.push_back(std::move(m));
  }
  r.label = a.label + "+" + b.label;
  return r;
}

std::vector<std::vector<int>> subsets_of_size(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(p));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int k = p - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == n - p + k) --k;
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < p; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Representation wedge_power(const Representation& a, std::size_t p) {
  if (p > a.dim) fail(ErrorCode::OutOfRange, "wedge power exceeds dimension");
  const auto subsets = subsets_of_size(static_cast<int>(a.dim), static_cast<int>(p));
  Representation r;
  r.group = a.group;
  r.dim = subsets.size();
  for (const auto& m : a.gen_images) {
    CycloMatrix w(r.dim, r.dim, m.conductor());
    for (std::size_t s = 0; s < subsets.size(); ++s)
      for (std::size_t t = 0; t < subsets.size(); ++t) {
        CycloMatrix minor(p, p, m.conductor());
        for (std::size_t x = 0; x < p; ++x)
          for (std::size_t y = 0; y < p; ++y)
            minor.set(x, y, m(static_cast<std::size_t>(subsets[s][x]), static_cast<std::size_t>(subsets[t][y])));
        w.set(s, t, p == 0 ? Cyclo(1) : det(minor));
      }
    r.gen_images.push_back(std::move(w));
  }
  r.degree = -static_cast<int>(p);
  r.weight = static_cast<int>(p);
  r.label = "wedge" + std::to_string(p) + "(" + a.label + ")";
  return r;
}

Representation dual(const Representation& a) {
  Representation r = a;
  r.gen_images.clear();
  for (const auto& m : a.gen_images) r.gen_images.push_back(inverse(m).transpose());
  r.degree = -a.degree;
  r.weight = a.weight;
  r.label = "dual(" + a.label + ")";
  return r;
}

std::vector<CycloMatrix> intertwiners(const Representation& source, const Representation& target) {
  require_same_group(source, target);
  const std::size_t s = source.dim;
  const std::size_t t = target.dim;
  const std::size_t unknowns = s * t;
  if (unknowns == 0) return {};
  const std::size_t ngen = source.gen_images.size();
  int m = source.group->conductor();
  for (std::size_t g = 0; g < ngen; ++g)
    m = std::lcm(m, std::lcm(source.gen_images[g].conductor(), target.gen_images[g].conductor()));
  // rows indexed by (generator, r, c) of rho_t(g) T - T rho_s(g) = 0
  CycloMatrix eq(std::max<std::size_t>(ngen, 1) * unknowns, unknowns, m);
  for (std::size_t g = 0; g < ngen; ++g) {
    const CycloMatrix& rt = target.gen_images[g];
    const CycloMatrix& rs = source.gen_images[g];
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t c = 0; c < s; ++c) {
        const std::size_t row = g * unknowns + r * s + c;
        for (std::size_t k = 0; k < t; ++k)
          if (!rt(r, k).is_zero()) eq.add_to(row, k * s + c, rt(r, k));
        for (std::size_t k = 0; k < s; ++k)
          if (!rs(k, c).is_zero()) eq.add_to(row, r * s + k, -rs(k, c));
      }
  }
  std::vector<CycloMatrix> basis;
  for (const auto& v : kernel_basis(eq)) basis.emplace_back(t, s, v);
  return basis;
}

Cyclo character_inner_product(const FiniteMatrixGroup& g, const std::vector<Cyclo>& a, const std::vector<Cyclo>& b) {
  Cyclo sum;
  const auto& classes = g.classes();
  for (std::size_t c = 0; c < classes.size(); ++c)
    sum += Cyclo(static_cast<long>(classes[c].size())) * a[c].conj() * b[c];
  return sum / Cyclo(static_cast<long>(g.order()));
}

IrrepSet abelian_irreps(const GroupPtr& gp) {
  const auto& g = *gp;
  if (!g.is_abelian()) fail(ErrorCode::NotAbelian, "automatic irreps need an abelian group");
  const std::size_t ngen = g.generator_count();
  const long e = g.exponent();
  std::vector<long> gen_order(ngen);
  for (std::size_t k = 0; k < ngen; ++k) gen_order[k] = static_cast<long>(g.element_order(*g.index_of(g.generators()[k])));

  IrrepSet set;
  set.group = gp;
  // characters as exponents of zeta_e, enumerated in lexicographic order of
  // the per-generator exponent tuples and kept when multiplicative
  std::vector<long> tuple(ngen, 0);
  while (true) {
    std::vector<long> step(ngen);
    for (std::size_t k = 0; k < ngen; ++k) step[k] = tuple[k] * (e / gen_order[k]);
    std::vector<long> value(g.order(), 0);
    for (std::size_t x = 1; x < g.order(); ++x) value[x] = (value[g.parent(x)] + step[g.parent_generator(x)]) % e;
    bool ok = true;
    for (std::size_t x = 0; x < g.order() && ok; ++x)
      for (std::size_t k = 0; k < ngen && ok; ++k)
        ok = value[g.right_multiply(x, k)] == (value[x] + step[k]) % e;
    if (ok) {
      Representation r;
      r.group = gp;
      r.dim = 1;
      for (std::size_t k = 0; k < ngen; ++k)
        r.gen_images.push_back(CycloMatrix(1, 1, std::vector<Cyclo>{Cyclo::zeta(static_cast<int>(e), step[k])}));
      r.label = "chi" + std::to_string(set.irreps.size());
      std::vector<Cyclo> chi;
      for (const auto& cls : g.classes()) chi.push_back(Cyclo::zeta(static_cast<int>(e), value[cls.front()]));
      set.irreps.push_back(std::move(r));
      set.characters.push_back(std::move(chi));
    }
    bool done = true;
    for (std::size_t k = ngen; k-- > 0;) {
      if (++tuple[k] < gen_order[k]) {
        done = false;
        break;
      }
      tuple[k] = 0;
    }
    if (done) break;
  }
  if (set.irreps.size() != g.order())
    fail(ErrorCode::Incomplete, "found " + std::to_string(set.irreps.size()) + " characters for an abelian group of order " +
                                    std::to_string(g.order()));
  return set;
}

namespace {

bool has_zero_divisor(const std::vector<CycloMatrix>& endo) {
  // Probes: basis elements, differences of basis elements, and each basis
  // element shifted by its diagonal entries.
  for (std::size_t a = 0; a < endo.size(); ++a) {
    const CycloMatrix& e = endo[a];
    if (e.is_scalar()) continue;
    if (det(e).is_zero()) return true;
    for (std::size_t r = 0; r < e.rows(); ++r) {
      CycloMatrix shifted = e - e(r, r) * CycloMatrix::identity(e.rows(), e.conductor());
      if (!shifted.is_zero() && det(shifted).is_zero()) return true;
    }
    for (std::size_t b = a + 1; b < endo.size(); ++b) {
      CycloMatrix d = e - endo[b];
      if (!d.is_zero() && det(d).is_zero()) return true;
    }
  }
  return false;
}

}  // namespace

IrrepSet validate_irrep_set(const GroupPtr& gp, std::vector<Representation> candidate) {
  const auto& g = *gp;
  if (candidate.empty()) fail(ErrorCode::Incomplete, "no irreducible representations supplied");
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    auto& r = candidate[i];
    r.group = gp;
    if (!is_homomorphism(r))
      fail(ErrorCode::ValidationError, "representation " + std::to_string(i) + " is not a homomorphism");
  }
  const auto& l0 = candidate.front();
  if (l0.dim != 1 || !std::all_of(l0.gen_images.begin(), l0.gen_images.end(),
                                  [](const CycloMatrix& m) { return m.is_identity(); }))
    fail(ErrorCode::NotTrivialFirst, "the first representation must be trivial");
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    auto endo = intertwiners(candidate[i], candidate[i]);
    if (endo.size() != 1) {
      if (has_zero_divisor(endo))
        fail(ErrorCode::NotIrreducible, "representation " + std::to_string(i) + " is reducible");
      fail(ErrorCode::NotSplit, "representation " + std::to_string(i) + " has endomorphism algebra of dimension " +
                                    std::to_string(endo.size()) + " over the working field");
    }
  }
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = i + 1; j < candidate.size(); ++j)
      if (candidate[i].dim == candidate[j].dim && !intertwiners(candidate[i], candidate[j]).empty())
        fail(ErrorCode::Duplicate, "representations " + std::to_string(i) + " and " + std::to_string(j) + " are isomorphic");
  std::size_t total = 0;
  for (const auto& r : candidate) total += r.dim * r.dim;
  if (total != g.order())
    fail(ErrorCode::Incomplete, "sum of squared dimensions is " + std::to_string(total) + ", group order is " +
                                    std::to_string(g.order()));
  IrrepSet set;
  set.group = gp;
  for (auto& r : candidate) {
    set.characters.push_back(character(r));
    set.irreps.push_back(std::move(r));
  }
  return set;
}

IntertwinerBasis hom_basis(const IrrepSet& irreps, std::size_t i, std::size_t j, const Representation& m) {
  if (i >= irreps.size() || j >= irreps.size()) fail(ErrorCode::OutOfRange, "irrep index out of range");
  if (m.group != irreps.group) fail(ErrorCode::GroupMismatch, "tensor factor over a different group");
  IntertwinerBasis b;
  b.source = i;
  b.target = j;
  b.tensor_factor = m;
  b.basis = intertwiners(irreps.irreps[i], tensor(irreps.irreps[j], m));
  return b;
}

long hom_dimension_prediction(const IrrepSet& irreps, std::size_t i, std::size_t j, const Representation& m) {
  const auto chi_m = character(m);
  std::vector<Cyclo> prod;
  for (std::size_t c = 0; c < chi_m.size(); ++c) prod.push_back(irreps.characters.at(j)[c] * chi_m[c]);
  return as_integer(character_inner_product(*irreps.group, irreps.characters.at(i), prod), "multiplicity");
}

std::vector<Cyclo> det_one_minus_t(const CycloMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Cyclo> c(n + 1);
  c[0] = Cyclo(1);
  CycloMatrix mk = CycloMatrix::identity(n, a.conductor());
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) mk = a * mk + c[k - 1] * CycloMatrix::identity(n, a.conductor());
    c[k] = -(a * mk).trace() / Cyclo(static_cast<long>(k));
  }
  return c;
}

std::vector<long> molien_table(const IrrepSet& irreps, const Representation& v, std::size_t i, std::size_t j,
                               std::size_t w_max) {
  if (i >= irreps.size() || j >= irreps.size()) fail(ErrorCode::OutOfRange, "irrep index out of range");
  const auto& g = *irreps.group;
  const Representation vd = dual(v);
  std::vector<Cyclo> total(w_max + 1);
  const auto& classes = g.classes();
  for (std::size_t cls = 0; cls < classes.size(); ++cls) {
    const auto c = det_one_minus_t(image_of(vd, classes[cls].front()));
    std::vector<Cyclo> h(w_max + 1);
    h[0] = Cyclo(1);
    for (std::size_t w = 1; w <= w_max; ++w)
      for (std::size_t k = 1; k <= std::min(w, c.size() - 1); ++k) h[w] -= c[k] * h[w - k];
    const Cyclo weight = Cyclo(static_cast<long>(classes[cls].size())) * irreps.characters[j][cls] *
                         irreps.characters[i][cls].conj();
    for (std::size_t w = 0; w <= w_max; ++w) total[w] += weight * h[w];
  }
  std::vector<long> out;
  for (std::size_t w = 0; w <= w_max; ++w) {
    const long x = as_integer(total[w] / Cyclo(static_cast<long>(g.order())), "Molien entry");
    if (x < 0) fail(ErrorCode::NonIntegerMultiplicity, "negative Molien entry");
    out.push_back(x);
  }
  return out;
}

}  // namespace mckay
