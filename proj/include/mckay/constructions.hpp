#pragma once

// The polynomial quiver with potential, the dg tensor algebra of a finite
// subgroup of GL_n, and the higher McKay quiver with potential of a finite
// subgroup of SL_n.

#include <map>
#include <vector>

#include "mckay/dgquiver.hpp"
#include "mckay/reps.hpp"

namespace mckay {

/// Sign e with (wedge_{A_1}) ^ ... ^ (wedge_{A_m}) = e * wedge_{union}; 0 if the parts overlap.
int shuffle_sign(const std::vector<std::vector<int>>& parts);

struct PolyQP {
  int n = 0;
  GinzburgPresentation pres;
  std::vector<std::vector<int>> subsets;  // by arrow id, 0-based variable indices
  int arrow_of(const std::vector<int>& subset) const;
};

PolyQP poly_qp(int n);

/// A dg tensor algebra whose generators are intertwiner basis vectors.
struct TensorDGA {
  IrrepSet irreps;
  int n = 0;
  GinzburgPresentation pres;              // generator arrows, explicit differential
  std::vector<CycloMatrix> arrow_maps;     // Hom(L_source, X_weight (x) L_target), X_p = (wedge^p V)^*
  std::vector<std::size_t> basis_index;    // position of the arrow in its intertwiner basis
};

/// Throws NotValidated when irreps do not belong to the group.
TensorDGA gl_dga(const IrrepSet& irreps);

/// Generator-for-generator comparison of gl_dga of the trivial group with poly_qp.
bool tensor_matches_poly(const TensorDGA& a, const PolyQP& p);

/// Coefficient of the word y' y'' in d(t_i) with t_i = dim(L_i) * identity:
/// rows index Hom(L_i, X_p (x) L_j), columns Hom(L_j, X_{n-p} (x) L_i).
struct PairingBlock {
  int weight = 0;
  std::size_t source = 0;
  std::size_t target = 0;
  CycloMatrix gram;
};

enum class PairingSymmetry { symmetric, antisymmetric };

struct McKayQP {
  IrrepSet irreps;
  int n = 0;
  GinzburgPresentation pres;
  std::vector<CycloMatrix> arrow_maps;         // per arrow id; t_i is dim(L_i) * identity
  std::vector<PairingBlock> pairing;
  std::map<Path, Cyclo> lambda;                // nonzero values on composable 3-cycle words
  std::map<std::vector<int>, long> multiplicities;              // (p, i, j) -> count from bases
  std::map<std::vector<int>, long> predicted_multiplicities;    // (p, i, j) -> count from characters
  std::map<int, std::size_t> lagrangian_dims;   // weight -> number of base arrows
  std::vector<Path> symmetric_cycles;           // rotation-symmetric cycles met while assembling W
};

/// Exact Gram blocks of weight p, verified invertible and graded antisymmetric.
/// Throws NotSL, DegeneratePairing.
std::vector<PairingBlock> mckay_pairing(const IrrepSet& irreps, int p);

/// Symmetry type of the middle-weight loop blocks as ordinary bilinear forms.
PairingSymmetry middle_symmetry(int n);

/// Columns u_1..u_h, v_1..v_h with u_k^T G v_l = delta_kl and the u's and v's
/// isotropic. Throws NotSplit when the field lacks an isotropic vector,
/// OddMiddleDimension, DegeneratePairing.
CycloMatrix hyperbolic_change_of_basis(const CycloMatrix& gram, PairingSymmetry symmetry);

McKayQP assemble_mckay_qp(const IrrepSet& irreps);

/// The differential of the tensor algebra rewritten in the arrow basis of the
/// McKay quiver agrees with the Ginzburg differential of W.
bool differential_matches_tensor_algebra(const McKayQP& qp);

/// sym(W) against the triple pairing expanded in the arrow basis.
bool sym_check(const McKayQP& qp, const CyclicElement& w);
inline bool sym_check(const McKayQP& qp) { return sym_check(qp, qp.pres.potential); }

struct H0Presentation {
  GradedQuiver quiver;                  // degree-0 arrows only
  std::vector<PathElement> relations;   // d(a) for the degree -1 arrows
  std::map<std::vector<int>, std::size_t> weight_dims;  // (i, j, w) -> dim
};

/// Quotient dimensions up to w_max from the relation ideal, checked against H^0.
H0Presentation h0_presentation(const GinzburgPresentation& pres, int w_max,
                               std::size_t path_budget = default_path_budget);

}  // namespace mckay
