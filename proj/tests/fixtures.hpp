#pragma once

// Small groups shared by the test binaries.

#include <memory>

#include "mckay/reps.hpp"

namespace fixtures {

using namespace mckay;

inline CycloMatrix diagonal(const std::vector<Cyclo>& d) {
  CycloMatrix m(d.size(), d.size(), 1);
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

inline GroupPtr make_group(int n, int conductor, std::vector<CycloMatrix> gens) {
  GroupSpec spec;
  spec.n = n;
  spec.conductor = conductor;
  spec.generators = std::move(gens);
  return std::make_shared<const FiniteMatrixGroup>(enumerate_group(spec));
}

inline GroupPtr cyclic_sl2(int order) {
  return make_group(2, order, {diagonal({Cyclo::zeta(order), Cyclo::zeta(order, order - 1)})});
}

inline GroupPtr c3_sl3() {
  const Cyclo z = Cyclo::zeta(3);
  return make_group(3, 3, {diagonal({z, z, z})});
}

inline GroupPtr trivial_group(int n) { return make_group(n, 1, {CycloMatrix::identity(static_cast<std::size_t>(n))}); }

// S_3 inside SL_4: permutation matrix padded by the sign.
inline CycloMatrix s3_generator(const std::vector<int>& perm, int sign) {
  CycloMatrix m(4, 4, 1);
  for (std::size_t c = 0; c < 3; ++c) m.set(static_cast<std::size_t>(perm[c]), c, Cyclo(1));
  m.set(3, 3, Cyclo(sign));
  return m;
}

inline GroupPtr s3_sl4() { return make_group(4, 3, {s3_generator({1, 0, 2}, -1), s3_generator({1, 2, 0}, 1)}); }

inline std::vector<Representation> s3_irreps(const GroupPtr& g) {
  // generator images in the group's sorted generator order
  std::vector<Representation> out(3);
  const CycloMatrix t = s3_generator({1, 0, 2}, -1);
  for (auto& r : out) r.group = g;
  out[0].dim = 1;
  out[1].dim = 1;
  out[2].dim = 2;
  out[0].label = "trivial";
  out[1].label = "sign";
  out[2].label = "standard";
  for (const auto& gen : g->generators()) {
    const bool transposition = gen == t;
    out[0].gen_images.push_back(CycloMatrix::identity(1));
    out[1].gen_images.push_back(CycloMatrix::from_integers(1, 1, {transposition ? -1 : 1}));
    out[2].gen_images.push_back(transposition ? CycloMatrix::from_integers(2, 2, {0, 1, 1, 0})
                                              : CycloMatrix::from_integers(2, 2, {0, -1, 1, -1}));
  }
  return out;
}

}  // namespace fixtures
