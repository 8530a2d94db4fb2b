#pragma once

// Matrix representations of an enumerated group, intertwiner spaces,
// characters, and Molien multiplicities.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mckay/groups.hpp"

namespace mckay {

using GroupPtr = std::shared_ptr<const FiniteMatrixGroup>;

struct Representation {
  GroupPtr group;
  std::size_t dim = 0;
  std::vector<CycloMatrix> gen_images;  // aligned with group->generators()
  int degree = 0;
  int weight = 0;
  std::string label;
};

Representation trivial_representation(const GroupPtr& g);
Representation natural_representation(const GroupPtr& g);

/// Images of every group element, extended along the BFS tree.
std::vector<CycloMatrix> element_images(const Representation& r);
/// True iff the extension along the tree is compatible with every Cayley edge.
bool is_homomorphism(const Representation& r);

/// Character values on conjugacy classes (class order of the group).
std::vector<Cyclo> character(const Representation& r);

Representation tensor(const Representation& a, const Representation& b);
Representation wedge_power(const Representation& a, std::size_t p);
Representation dual(const Representation& a);
Representation direct_sum(const Representation& a, const Representation& b);

/// Ascending p-subsets of {0, .., n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int p);

/// Basis of Hom_G(source, target) as target.dim x source.dim matrices,
/// in reduced echelon form of the row-major flattening.
std::vector<CycloMatrix> intertwiners(const Representation& source, const Representation& target);

/// (1/|G|) sum_g conj(chi_a(g)) chi_b(g).
Cyclo character_inner_product(const FiniteMatrixGroup& g, const std::vector<Cyclo>& a,
                              const std::vector<Cyclo>& b);

struct IrrepSet {
  GroupPtr group;
  std::vector<Representation> irreps;
  std::vector<std::vector<Cyclo>> characters;
  std::size_t size() const noexcept { return irreps.size(); }
  std::size_t dim(std::size_t i) const { return irreps.at(i).dim; }
};

IrrepSet abelian_irreps(const GroupPtr& g);
IrrepSet validate_irrep_set(const GroupPtr& g, std::vector<Representation> candidate);

struct IntertwinerBasis {
  std::size_t source = 0;
  std::size_t target = 0;
  Representation tensor_factor;
  std::vector<CycloMatrix> basis;  // (dim L_j * dim M) x dim L_i
};

/// Basis of Hom_G(L_i, L_j (x) M).
IntertwinerBasis hom_basis(const IrrepSet& irreps, std::size_t i, std::size_t j, const Representation& m);

/// Predicted dim Hom_G(L_i, L_j (x) M) from characters.
long hom_dimension_prediction(const IrrepSet& irreps, std::size_t i, std::size_t j, const Representation& m);

/// Entry w: dim Hom_G(L_i, L_j (x) Sym^w V^*), for w = 0..w_max.
std::vector<long> molien_table(const IrrepSet& irreps, const Representation& v, std::size_t i, std::size_t j,
                               std::size_t w_max);

/// Coefficients c_0..c_n of det(I - t A).
std::vector<Cyclo> det_one_minus_t(const CycloMatrix& a);

}  // namespace mckay
