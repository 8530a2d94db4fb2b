#include "mckay/groups.hpp"

#include <algorithm>
#include <numeric>

namespace mckay {

std::optional<std::size_t> FiniteMatrixGroup::index_of(const CycloMatrix& m) const {
  if (m.rows() != static_cast<std::size_t>(spec_.n) || m.cols() != m.rows()) return std::nullopt;
  if (conductor_ % m.conductor() != 0) {
    const int l = std::lcm(conductor_, m.conductor());
    // Entries outside the group's field cannot match unless they restrict.
    std::vector<Cyclo> entries;
    for (const auto& e : m.entries()) {
      auto r = e.embed(l).restrict_to(conductor_);
      if (!r) return std::nullopt;
      entries.push_back(*r);
    }
    return index_of(CycloMatrix(m.rows(), m.cols(), std::move(entries)).embed(conductor_));
  }
  auto it = index_.find(m.embed(conductor_).canonical_key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteMatrixGroup::multiply(std::size_t a, std::size_t b) const {
  auto k = index_of(elements_.at(a) * elements_.at(b));
  if (!k) fail(ErrorCode::NotClosed, "product left the enumerated group");
  return *k;
}

std::size_t FiniteMatrixGroup::inverse(std::size_t a) const {
  auto k = index_of(mckay::inverse(elements_.at(a)));
  if (!k) fail(ErrorCode::NotClosed, "inverse left the enumerated group");
  return *k;
}

FiniteMatrixGroup enumerate_group(const GroupSpec& spec, std::size_t max_order) {
  if (spec.n <= 0) fail(ErrorCode::ValidationError, "group dimension n must be positive");
  if (spec.generators.empty()) fail(ErrorCode::ValidationError, "at least one generator is required");
  FiniteMatrixGroup g;
  g.spec_ = spec;
  int m = std::max(1, spec.conductor);
  for (const auto& gen : spec.generators) {
    if (gen.rows() != static_cast<std::size_t>(spec.n) || gen.cols() != gen.rows())
      fail(ErrorCode::ShapeMismatch, "generator is not n x n");
    m = std::lcm(m, gen.conductor());
  }
  g.conductor_ = m;

  std::vector<std::pair<std::string, CycloMatrix>> sorted;
  for (const auto& gen : spec.generators) {
    CycloMatrix e = gen.embed(m);
    if (det(e).is_zero()) fail(ErrorCode::Singular, "generator is not invertible");
    sorted.emplace_back(e.canonical_key(), std::move(e));
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const auto& a, const auto& b) { return a.first == b.first; }),
               sorted.end());
  for (auto& [key, mat] : sorted) g.generators_.push_back(mat);
  for (const auto& gen : spec.generators) {
    const std::string key = gen.embed(m).canonical_key();
    const auto pos = std::find_if(sorted.begin(), sorted.end(), [&](const auto& e) { return e.first == key; });
    g.spec_to_gen_.push_back(static_cast<std::size_t>(pos - sorted.begin()));
  }

  const std::size_t ngen = g.generators_.size();
  auto add = [&](CycloMatrix mat, std::size_t parent, std::size_t gen) {
    std::string key = mat.canonical_key();
    auto [it, inserted] = g.index_.emplace(std::move(key), g.elements_.size());
    if (inserted) {
      if (g.elements_.size() >= max_order)
        fail(ErrorCode::OrderExceeded,
             "group order exceeds " + std::to_string(max_order) + " (possibly infinite)");
      g.elements_.push_back(std::move(mat));
      g.parent_.push_back(parent);
      g.parent_gen_.push_back(gen);
    }
    return it->second;
  };
  add(CycloMatrix::identity(static_cast<std::size_t>(spec.n), m), 0, 0);
  for (std::size_t k = 0; k < g.elements_.size(); ++k) {
    std::vector<std::size_t> row(ngen);
    for (std::size_t j = 0; j < ngen; ++j) row[j] = add(g.elements_[k] * g.generators_[j], k, j);
    g.cayley_.push_back(std::move(row));
  }

  const std::size_t order = g.elements_.size();
  // element orders by following powers through the index
  g.orders_.assign(order, 0);
  g.orders_[0] = 1;
  int exponent = 1;
  for (std::size_t k = 1; k < order; ++k) {
    CycloMatrix p = g.elements_[k];
    std::size_t o = 1;
    while (!p.is_identity()) {
      p = p * g.elements_[k];
      ++o;
      if (o > order) fail(ErrorCode::NotClosed, "element order exceeds group order");
    }
    g.orders_[k] = o;
    exponent = std::lcm(exponent, static_cast<int>(o));
  }
  g.exponent_ = exponent;

  // conjugacy classes: orbits under conjugation by generators, in index order
  std::vector<CycloMatrix> gen_inv;
  for (const auto& gen : g.generators_) gen_inv.push_back(inverse(gen));
  g.class_of_.assign(order, order);
  for (std::size_t k = 0; k < order; ++k) {
    if (g.class_of_[k] != order) continue;
    const std::size_t cid = g.classes_.size();
    std::vector<std::size_t> cls{k};
    g.class_of_[k] = cid;
    for (std::size_t q = 0; q < cls.size(); ++q) {
      for (std::size_t j = 0; j < ngen; ++j) {
        auto c = g.index_of(gen_inv[j] * g.elements_[cls[q]] * g.generators_[j]);
        if (!c) fail(ErrorCode::NotClosed, "conjugate left the enumerated group");
        if (g.class_of_[*c] == order) {
          g.class_of_[*c] = cid;
          cls.push_back(*c);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    if (cls.size() > 1) g.abelian_ = false;
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

const std::vector<std::vector<std::size_t>>& conjugacy_classes(const FiniteMatrixGroup& g) {
  return g.classes();
}

LinearityPredicates linearity_predicates(const FiniteMatrixGroup& g) {
  LinearityPredicates p;
  p.in_SL = std::all_of(g.generators().begin(), g.generators().end(),
                        [](const CycloMatrix& m) { return det(m).is_one(); });
  return p;
}

bool isolated_singularity_test(const FiniteMatrixGroup& g) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  const CycloMatrix id = CycloMatrix::identity(n, g.conductor());
  for (std::size_t k = 1; k < g.order(); ++k)
    if (det(g.element(k) - id).is_zero()) return false;
  return true;
}

}  // namespace mckay
