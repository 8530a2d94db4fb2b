#pragma once

// Finite matrix groups given by generators: enumeration, conjugacy classes,
// and the SL / isolated-fixed-point predicates.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "mckay/exactfield.hpp"

namespace mckay {

struct GroupSpec {
  int n = 0;
  int conductor = 1;
  std::vector<CycloMatrix> generators;
  std::vector<std::string> labels;
};

class FiniteMatrixGroup {
 public:
  static constexpr std::size_t default_max_order = 2000;

  const GroupSpec& spec() const noexcept { return spec_; }
  int n() const noexcept { return spec_.n; }
  /// Conductor all element entries are written over.
  int conductor() const noexcept { return conductor_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t identity_index() const noexcept { return 0; }
  const CycloMatrix& element(std::size_t k) const { return elements_.at(k); }
  const std::vector<CycloMatrix>& elements() const noexcept { return elements_; }

  /// Generators after sorting and deduplication, in BFS order.
  const std::vector<CycloMatrix>& generators() const noexcept { return generators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  /// Position in generators() of the k-th generator as listed in the spec.
  std::size_t spec_generator_position(std::size_t k) const { return spec_to_gen_.at(k); }

  /// Every element other than the identity is parent(k) * generator(parent_generator(k)).
  std::size_t parent(std::size_t k) const { return parent_.at(k); }
  std::size_t parent_generator(std::size_t k) const { return parent_gen_.at(k); }
  /// Index of element(k) * generator(g).
  std::size_t right_multiply(std::size_t k, std::size_t g) const { return cayley_.at(k).at(g); }

  std::optional<std::size_t> index_of(const CycloMatrix& m) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t k) const { return class_of_.at(k); }
  std::size_t element_order(std::size_t k) const { return orders_.at(k); }
  int exponent() const noexcept { return exponent_; }
  bool is_abelian() const noexcept { return abelian_; }

 private:
  friend FiniteMatrixGroup enumerate_group(const GroupSpec& spec, std::size_t max_order);

  GroupSpec spec_;
  int conductor_ = 1;
  std::vector<CycloMatrix> generators_;
  std::vector<std::size_t> spec_to_gen_;
  std::vector<CycloMatrix> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_gen_;
  std::vector<std::vector<std::size_t>> cayley_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> orders_;
  int exponent_ = 1;
  bool abelian_ = true;
};

/// Breadth-first closure of the generators.  Throws OrderExceeded past max_order.
FiniteMatrixGroup enumerate_group(const GroupSpec& spec,
                                  std::size_t max_order = FiniteMatrixGroup::default_max_order);

const std::vector<std::vector<std::size_t>>& conjugacy_classes(const FiniteMatrixGroup& g);

struct LinearityPredicates {
  bool in_GL = true;
  bool in_SL = false;
};
LinearityPredicates linearity_predicates(const FiniteMatrixGroup& g);

/// True iff no element other than the identity has eigenvalue 1.
bool isolated_singularity_test(const FiniteMatrixGroup& g);

}  // namespace mckay
