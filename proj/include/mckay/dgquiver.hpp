#pragma once

// Graded quivers, path and trace-space elements, the necklace bracket,
// cyclic derivatives, Ginzburg dg algebras, and weight-truncated complexes.
//
// Paths are written left to right: the path [a, b] is a followed by b and
// requires target(a) == source(b).

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mckay/exactfield.hpp"

namespace mckay {

enum class ArrowKind { base, star, loop_t, generator };

std::string_view arrow_kind_name(ArrowKind k) noexcept;
ArrowKind parse_arrow_kind(std::string_view s);

struct Vertex {
  int id = 0;
  std::string label;
  int dim = 1;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Arrow {
  int id = 0;
  std::string name;
  int source = 0;
  int target = 0;
  int degree = 0;
  int weight = 1;
  ArrowKind kind = ArrowKind::base;
  int epsilon = 1;   // meaningful on base arrows
  int partner = -1;  // star partner of a base arrow and vice versa
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class GradedQuiver {
 public:
  std::vector<Vertex> vertices;
  std::vector<Arrow> arrows;  // arrows[k].id == k

  bool has_vertex(int id) const noexcept;
  /// Throws VertexNotFound.
  const Vertex& vertex(int id) const;
  std::vector<int> vertex_ids() const;

  int add_arrow(Arrow a);
  /// Structural checks for the graded quiver of an n-dimensional Ginzburg algebra.
  void validate(int n) const;

  friend bool operator==(const GradedQuiver&, const GradedQuiver&) = default;
};

struct Path {
  int start = 0;            // vertex id; the only data of a lazy path
  std::vector<int> arrows;  // arrow ids
  auto operator<=>(const Path&) const = default;
};

using PathElement = std::map<Path, Cyclo>;
using CyclicElement = std::map<Path, Cyclo>;

int path_degree(const GradedQuiver& q, const std::vector<int>& arrows);
int path_weight(const GradedQuiver& q, const std::vector<int>& arrows);
int path_end(const GradedQuiver& q, const Path& p);
bool is_composable(const GradedQuiver& q, const Path& p);

void add_term(PathElement& e, const Path& p, const Cyclo& c);
PathElement operator+(PathElement a, const PathElement& b);
PathElement operator-(PathElement a, const PathElement& b);
PathElement scale(const Cyclo& s, PathElement a);
/// Concatenation product; noncomposable pairs give 0.
PathElement multiply(const GradedQuiver& q, const PathElement& a, const PathElement& b);
bool is_zero(const PathElement& e);

/// Lexicographically least rotation with its Koszul sign.  The coefficient is
/// 0 when a symmetric rotation forces x = -x.  Throws NotClosed.
std::pair<Path, Cyclo> canonical_cycle(const GradedQuiver& q, const Path& cycle, const Cyclo& coeff);
void add_cyclic(CyclicElement& e, const GradedQuiver& q, const Path& cycle, const Cyclo& coeff);
CyclicElement canonicalize(const GradedQuiver& q, const PathElement& e);
/// Degree of a homogeneous element; throws BadPotentialDegree when inhomogeneous.
int homogeneous_degree(const GradedQuiver& q, const CyclicElement& e);

/// Which degree enters the second sum's |u|(|alpha| + |v|) factor.
enum class BracketSign { base_degree, star_degree };

CyclicElement necklace_bracket(const CyclicElement& p, const CyclicElement& q, const GradedQuiver& quiver,
                               BracketSign second = BracketSign::base_degree);

PathElement cyclic_derivative(const CyclicElement& p, int alpha, const GradedQuiver& quiver);

struct GinzburgPresentation {
  int n = 0;
  GradedQuiver quiver;
  CyclicElement potential;
  std::vector<PathElement> differential;  // indexed by arrow id
  bool from_potential = true;             // false for tensor algebras with a given differential
};

GinzburgPresentation assemble_ginzburg(const GradedQuiver& quiver, const CyclicElement& w, int n);

/// d extended by the graded Leibniz rule.
PathElement apply_d(const GinzburgPresentation& pres, const PathElement& e);

struct DSquaredReport {
  bool ok = true;
  std::vector<std::pair<int, PathElement>> failures;
};
DSquaredReport check_d_squared(const GinzburgPresentation& pres);

/// Degree +1 and weight preservation of d on every generator.
bool check_d_homogeneous(const GinzburgPresentation& pres);

/// Column-sparse matrix.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVector> columns;
  CycloMatrix dense() const;
  std::size_t rank() const;
};
SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

struct CochainComplex {
  int min_degree = 0;                       // degree of terms[0]
  std::vector<std::vector<Path>> terms;     // basis paths per degree
  std::vector<SparseMatrix> d;              // d[k]: terms[k] -> terms[k + 1]
  std::size_t dim(int degree) const;
  int max_degree() const noexcept { return min_degree + static_cast<int>(terms.size()) - 1; }
};

inline constexpr std::size_t default_path_budget = 200000;

/// Paths from vertex i to vertex j of total weight w with the matrices of d.
CochainComplex weight_component(const GinzburgPresentation& pres, int i, int j, int w,
                                std::size_t path_budget = default_path_budget);

/// degree -> dim H^degree.
std::map<int, std::size_t> cohomology_dims(const CochainComplex& c);

/// Euler characteristic of weight-w paths i -> j for w = 0..w_max, by dynamic programming.
std::vector<long long> path_euler_characteristics(const GradedQuiver& q, int i, int j, int w_max);

GinzburgPresentation delete_vertex(const GinzburgPresentation& pres, int v);

std::string path_to_string(const GradedQuiver& q, const Path& p);
std::string element_to_string(const GradedQuiver& q, const PathElement& e);

}  // namespace mckay
