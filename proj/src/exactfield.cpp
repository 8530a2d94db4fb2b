#include "mckay/exactfield.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace mckay {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::Duplicate: return "Duplicate";
    case ErrorCode::Incomplete: return "Incomplete";
    case ErrorCode::NotTrivialFirst: return "NotTrivialFirst";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::QuiverMismatch: return "QuiverMismatch";
    case ErrorCode::BadPotentialDegree: return "BadPotentialDegree";
    case ErrorCode::BadPotentialLength: return "BadPotentialLength";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotValidated: return "NotValidated";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::OddMiddleDimension: return "OddMiddleDimension";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::NotSL: return "NotSL";
    case ErrorCode::VertexNotFound: return "VertexNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

// x^k mod Phi_m for 0 <= k < m, as integer coefficient vectors of length phi(m).
struct CycloTables {
  int phi = 1;
  std::vector<Integer> poly;
  std::vector<std::vector<Integer>> powers;
};

std::vector<Integer> poly_exact_divide(std::vector<Integer> num, const std::vector<Integer>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    quot[i - dn] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

const CycloTables& tables(int m) {
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<CycloTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(m); it != cache.end()) return *it->second;

  auto t = std::make_unique<CycloTables>();
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed without recursion
  // through the cache lock.
  std::vector<std::vector<Integer>> phis(static_cast<std::size_t>(m) + 1);
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    std::vector<Integer> p(static_cast<std::size_t>(d) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    for (int e = 1; e < d; ++e)
      if (d % e == 0) p = poly_exact_divide(p, phis[static_cast<std::size_t>(e)]);
    phis[static_cast<std::size_t>(d)] = std::move(p);
  }
  t->poly = phis[static_cast<std::size_t>(m)];
  t->phi = static_cast<int>(t->poly.size()) - 1;
  const std::size_t phi = static_cast<std::size_t>(t->phi);
  t->powers.assign(static_cast<std::size_t>(m), std::vector<Integer>(phi, 0));
  std::vector<Integer> cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    t->powers[static_cast<std::size_t>(k)] = cur;
    // multiply by x and reduce using x^phi = -sum poly[i] x^i
    Integer top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * t->poly[i];
  }
  auto& ref = *t;
  cache.emplace(m, std::move(t));
  return ref;
}

long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Reduce a polynomial given by arbitrary (nonnegative) exponents into the
// power basis of conductor m.
std::vector<Rational> reduce_poly(const std::vector<Rational>& poly, int m) {
  const auto& t = tables(m);
  const std::size_t phi = static_cast<std::size_t>(t.phi);
  std::vector<Rational> out(phi, 0);
  for (std::size_t e = 0; e < poly.size(); ++e) {
    if (sgn(poly[e]) == 0) continue;
    const std::size_t k = e % static_cast<std::size_t>(m);
    if (k < phi) {
      out[k] += poly[e];
    } else {
      const auto& row = t.powers[k];
      for (std::size_t i = 0; i < phi; ++i)
        if (row[i] != 0) out[i] += poly[e] * row[i];
    }
  }
  return out;
}

// Dense rational Gaussian solve of a square nonsingular system, used for
// field inverses and subfield recognition.
std::optional<std::vector<Rational>> rational_solve(std::vector<std::vector<Rational>> a,
                                                    std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;
  std::vector<Rational> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[piv[i]] = b[i];
  return x;
}

}  // namespace

int euler_phi(int m) {
  if (m <= 0) fail(ErrorCode::OutOfRange, "conductor must be positive");
  int result = m;
  int x = m;
  for (int p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    while (x % p == 0) x /= p;
    result -= result / p;
  }
  if (x > 1) result -= result / x;
  return result;
}

const std::vector<Integer>& cyclotomic_polynomial(int m) {
  if (m <= 0) fail(ErrorCode::OutOfRange, "conductor must be positive");
  return tables(m).poly;
}

Cyclo::Cyclo(int conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  if (conductor <= 0) fail(ErrorCode::OutOfRange, "conductor must be positive");
  if (coeffs_.size() != static_cast<std::size_t>(euler_phi(conductor)))
    fail(ErrorCode::ShapeMismatch, "coefficient vector length must equal phi(m)");
  for (auto& q : coeffs_) {
    if (q.get_den() == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    q.canonicalize();
  }
}

Cyclo Cyclo::zeta(int m, long k) {
  std::vector<Rational> poly(static_cast<std::size_t>(mod_floor(k, m)) + 1, 0);
  poly.back() = 1;
  return Cyclo(m, reduce_poly(poly, m));
}

Cyclo Cyclo::zero(int m) { return Cyclo(m, std::vector<Rational>(static_cast<std::size_t>(euler_phi(m)), 0)); }

Cyclo Cyclo::one(int m) {
  Cyclo c = zero(m);
  c.coeffs_[0] = 1;
  return c;
}

bool Cyclo::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool Cyclo::is_one() const noexcept {
  if (coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool Cyclo::is_rational() const noexcept {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational Cyclo::rational_value() const {
  if (!is_rational()) fail(ErrorCode::NotDivisible, "element is not rational: " + to_string());
  return coeffs_[0];
}

Cyclo Cyclo::embed(int m2) const {
  if (m2 == conductor_) return *this;
  if (m2 <= 0 || m2 % conductor_ != 0)
    fail(ErrorCode::NotDivisible,
         "conductor " + std::to_string(conductor_) + " does not divide " + std::to_string(m2));
  const std::size_t f = static_cast<std::size_t>(m2 / conductor_);
  std::vector<Rational> poly((coeffs_.size() - 1) * f + 1, 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[k * f] = coeffs_[k];
  return Cyclo(m2, reduce_poly(poly, m2));
}

std::optional<Cyclo> Cyclo::restrict_to(int m) const {
  if (m <= 0 || conductor_ % m != 0) return std::nullopt;
  if (m == conductor_) return *this;
  if (is_rational()) {
    Cyclo c = zero(m);
    c.coeffs_[0] = coeffs_[0];
    return c;
  }
  const std::size_t small = static_cast<std::size_t>(euler_phi(m));
  const std::size_t big = coeffs_.size();
  std::vector<std::vector<Rational>> a(big, std::vector<Rational>(small, 0));
  for (std::size_t k = 0; k < small; ++k) {
    Cyclo basis = zeta(m, static_cast<long>(k)).embed(conductor_);
    for (std::size_t i = 0; i < big; ++i) a[i][k] = basis.coeffs_[i];
  }
  auto x = rational_solve(std::move(a), coeffs_);
  if (!x) return std::nullopt;
  return Cyclo(m, std::move(*x));
}

Cyclo Cyclo::minimized() const {
  for (int d = 1; d < conductor_; ++d) {
    if (conductor_ % d != 0) continue;
    if (auto r = restrict_to(d)) return *r;
  }
  return *this;
}

Cyclo Cyclo::galois(long t) const {
  const long m = conductor_;
  if (std::gcd(mod_floor(t, m), m) != 1 && m > 1)
    fail(ErrorCode::OutOfRange, "galois exponent must be a unit");
  if (m <= 2) return *this;
  std::vector<Rational> poly(static_cast<std::size_t>(m), 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    poly[static_cast<std::size_t>(mod_floor(static_cast<long>(k) * t, m))] += coeffs_[k];
  return Cyclo(conductor_, reduce_poly(poly, conductor_));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    Cyclo c = zero(conductor_);
    c.coeffs_[0] = 1 / coeffs_[0];
    return c;
  }
  // Solve (multiplication by *this) x = 1.
  const std::size_t phi = coeffs_.size();
  std::vector<std::vector<Rational>> a(phi, std::vector<Rational>(phi, 0));
  for (std::size_t k = 0; k < phi; ++k) {
    Cyclo col = *this * zeta(conductor_, static_cast<long>(k));
    for (std::size_t i = 0; i < phi; ++i) a[i][k] = col.coeffs_[i];
  }
  std::vector<Rational> rhs(phi, 0);
  rhs[0] = 1;
  return Cyclo(conductor_, *rational_solve(std::move(a), std::move(rhs)));
}

Cyclo Cyclo::operator-() const {
  Cyclo c = *this;
  for (auto& q : c.coeffs_) q = -q;
  return c;
}

Cyclo& Cyclo::operator+=(const Cyclo& other) {
  if (other.conductor_ != conductor_) {
    const int m = std::lcm(conductor_, other.conductor_);
    *this = embed(m);
    return *this += other.embed(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& other) {
  if (other.conductor_ != conductor_) {
    const int m = std::lcm(conductor_, other.conductor_);
    *this = embed(m);
    return *this -= other.embed(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ != b.conductor_) {
    const int m = std::lcm(a.conductor_, b.conductor_);
    return a.embed(m) * b.embed(m);
  }
  const std::size_t phi = a.coeffs_.size();
  if (phi == 1) {
    Cyclo c = a;
    c.coeffs_[0] *= b.coeffs_[0];
    return c;
  }
  if (b.is_rational()) {
    Cyclo c = a;
    for (auto& q : c.coeffs_) q *= b.coeffs_[0];
    return c;
  }
  if (a.is_rational()) return b * a;
  std::vector<Rational> prod(2 * phi - 1, 0);
  for (std::size_t i = 0; i < phi; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < phi; ++j)
      if (sgn(b.coeffs_[j]) != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Cyclo(a.conductor_, reduce_poly(prod, a.conductor_));
}

Cyclo& Cyclo::operator*=(const Cyclo& other) { return *this = *this * other; }

Cyclo& Cyclo::operator/=(const Cyclo& other) {
  if (other.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  return *this = *this * other.inverse();
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ != b.conductor_) {
    const int m = std::lcm(a.conductor_, b.conductor_);
    return a.embed(m) == b.embed(m);
  }
  return a.coeffs_ == b.coeffs_;
}

Cyclo field_arith(const Cyclo& a, const Cyclo& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  return a;
}

std::size_t Cyclo::description_size() const {
  std::size_t s = 0;
  for (const auto& q : coeffs_) {
    if (sgn(q) == 0) continue;
    s += mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  }
  return s;
}

std::string Cyclo::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += coeffs_[k].get_str();
    out += "*z^";
    out += std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

struct Scanner {
  std::string_view s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool at_end() {
    skip();
    return i >= s.size();
  }
  bool peek_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  std::string digits() {
    skip();
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (b == i) fail(ErrorCode::ParseError, "expected digits in '" + std::string(s) + "'");
    return std::string(s.substr(b, i - b));
  }
};

}  // namespace

Cyclo Cyclo::parse(std::string_view text, int conductor) {
  Scanner sc{text};
  std::vector<Rational> poly(static_cast<std::size_t>(conductor), 0);
  bool first = true;
  if (sc.at_end()) fail(ErrorCode::ParseError, "empty cyclotomic literal");
  while (!sc.at_end()) {
    int sign = 1;
    if (!first) {
      if (sc.eat('+')) {
      } else if (sc.eat('-')) {
        sign = -1;
      } else {
        fail(ErrorCode::ParseError, "expected '+' or '-' in '" + std::string(text) + "'");
      }
    }
    while (true) {
      if (sc.eat('-')) sign = -sign;
      else if (!sc.eat('+')) break;
    }
    first = false;
    Rational q = 1;
    bool have_coeff = false;
    if (sc.peek_digit()) {
      Integer num(sc.digits());
      Integer den = 1;
      if (sc.eat('/')) den = Integer(sc.digits());
      if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
      q = Rational(num, den);
      q.canonicalize();
      have_coeff = true;
    }
    long exponent = 0;
    bool have_z = false;
    if (have_coeff) {
      if (sc.eat('*')) {
        if (!sc.eat('z')) fail(ErrorCode::ParseError, "expected 'z' in '" + std::string(text) + "'");
        have_z = true;
      }
    } else {
      if (!sc.eat('z')) fail(ErrorCode::ParseError, "expected term in '" + std::string(text) + "'");
      have_z = true;
    }
    if (have_z) {
      exponent = 1;
      if (sc.eat('^')) {
        int esign = 1;
        if (sc.eat('-')) esign = -1;
        exponent = esign * std::stol(sc.digits());
      }
    }
    poly[static_cast<std::size_t>(mod_floor(exponent, conductor))] += sign * q;
  }
  return Cyclo(conductor, reduce_poly(poly, conductor));
}

// ---------------------------------------------------------------------------
// CycloMatrix

CycloMatrix::CycloMatrix(std::size_t rows, std::size_t cols, int conductor)
    : rows_(rows), cols_(cols), conductor_(conductor), entries_(rows * cols, Cyclo::zero(conductor)) {}

CycloMatrix::CycloMatrix(std::size_t rows, std::size_t cols, std::vector<Cyclo> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) fail(ErrorCode::ShapeMismatch, "entry count must equal rows * cols");
  int m = 1;
  for (const auto& e : entries_) m = std::lcm(m, e.conductor());
  conductor_ = m;
  for (auto& e : entries_)
    if (e.conductor() != m) e = e.embed(m);
}

CycloMatrix CycloMatrix::identity(std::size_t n, int conductor) {
  CycloMatrix m(n, n, conductor);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = Cyclo::one(conductor);
  return m;
}

CycloMatrix CycloMatrix::from_integers(std::size_t rows, std::size_t cols, const std::vector<long>& values) {
  std::vector<Cyclo> e;
  e.reserve(values.size());
  for (long v : values) e.emplace_back(v);
  return CycloMatrix(rows, cols, std::move(e));
}

CycloMatrix CycloMatrix::column(const CycloVector& v) { return CycloMatrix(v.size(), 1, v); }

void CycloMatrix::set(std::size_t r, std::size_t c, const Cyclo& value) {
  if (conductor_ % value.conductor() != 0) *this = embed(std::lcm(conductor_, value.conductor()));
  entries_[r * cols_ + c] = value.embed(conductor_);
}

void CycloMatrix::add_to(std::size_t r, std::size_t c, const Cyclo& value) {
  if (conductor_ % value.conductor() != 0) *this = embed(std::lcm(conductor_, value.conductor()));
  entries_[r * cols_ + c] += value.embed(conductor_);
}

CycloMatrix CycloMatrix::embed(int m2) const {
  if (m2 == conductor_) return *this;
  CycloMatrix out = *this;
  out.conductor_ = m2;
  for (auto& e : out.entries_) e = e.embed(m2);
  return out;
}

CycloMatrix CycloMatrix::transpose() const {
  CycloMatrix t(cols_, rows_, conductor_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
  return t;
}

CycloVector CycloMatrix::column_vector(std::size_t c) const {
  CycloVector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

bool CycloMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Cyclo& c) { return c.is_zero(); });
}

bool CycloMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Cyclo& e = (*this)(r, c);
      if (r == c ? !e.is_one() : !e.is_zero()) return false;
    }
  return true;
}

bool CycloMatrix::is_scalar() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r == c) {
        if ((*this)(r, c) != (*this)(0, 0)) return false;
      } else if (!(*this)(r, c).is_zero()) {
        return false;
      }
    }
  return true;
}

Cyclo CycloMatrix::trace() const {
  if (rows_ != cols_) fail(ErrorCode::ShapeMismatch, "trace of a non-square matrix");
  Cyclo t = Cyclo::zero(conductor_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

CycloMatrix CycloMatrix::operator-() const {
  CycloMatrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

namespace {
void require_same_shape(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::ShapeMismatch, "matrix shapes differ");
}
std::pair<CycloMatrix, CycloMatrix> common(const CycloMatrix& a, const CycloMatrix& b) {
  const int m = std::lcm(a.conductor(), b.conductor());
  return {a.embed(m), b.embed(m)};
}
}  // namespace

CycloMatrix operator+(const CycloMatrix& a, const CycloMatrix& b) {
  require_same_shape(a, b);
  auto [x, y] = common(a, b);
  for (std::size_t i = 0; i < x.entries_.size(); ++i) x.entries_[i] += y.entries_[i];
  return x;
}

CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b) {
  require_same_shape(a, b);
  auto [x, y] = common(a, b);
  for (std::size_t i = 0; i < x.entries_.size(); ++i) x.entries_[i] -= y.entries_[i];
  return x;
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::ShapeMismatch, "inner dimensions differ in product");
  const int m = std::lcm(a.conductor_, b.conductor_);
  const CycloMatrix x = a.embed(m);
  const CycloMatrix y = b.embed(m);
  CycloMatrix out(a.rows_, b.cols_, m);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Cyclo& aik = x.entries_[i * a.cols_ + k];
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Cyclo& bkj = y.entries_[k * b.cols_ + j];
        if (!bkj.is_zero()) out.entries_[i * b.cols_ + j] += aik * bkj;
      }
    }
  return out;
}

CycloMatrix operator*(const Cyclo& s, const CycloMatrix& a) {
  const int m = std::lcm(s.conductor(), a.conductor_);
  CycloMatrix out = a.embed(m);
  const Cyclo t = s.embed(m);
  for (auto& e : out.entries_) e = t * e;
  return out;
}

bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.conductor_ != b.conductor_) {
    auto [x, y] = common(a, b);
    return x.entries_ == y.entries_;
  }
  return a.entries_ == b.entries_;
}

std::string CycloMatrix::canonical_key() const {
  std::string key = std::to_string(conductor_) + "|" + std::to_string(rows_) + "x" + std::to_string(cols_);
  for (const auto& e : entries_) {
    key += '|';
    for (std::size_t k = 0; k < e.coeffs().size(); ++k) {
      if (k) key += ',';
      key += e.coeffs()[k].get_str();
    }
  }
  return key;
}

CycloMatrix kron(const CycloMatrix& a, const CycloMatrix& b) {
  const int m = std::lcm(a.conductor(), b.conductor());
  const CycloMatrix x = a.embed(m);
  const CycloMatrix y = b.embed(m);
  CycloMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), m);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Cyclo& aij = x(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Cyclo& bkl = y(k, l);
          if (!bkl.is_zero()) out.set(i * b.rows() + k, j * b.cols() + l, aij * bkl);
        }
    }
  return out;
}

CycloMatrix hstack(const std::vector<CycloMatrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks[0].rows();
  std::size_t cols = 0;
  int m = 1;
  for (const auto& b : blocks) {
    if (b.rows() != rows) fail(ErrorCode::ShapeMismatch, "hstack row counts differ");
    cols += b.cols();
    m = std::lcm(m, b.conductor());
  }
  CycloMatrix out(rows, cols, m);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, off + c, b(r, c));
    off += b.cols();
  }
  return out;
}

CycloMatrix vstack(const std::vector<CycloMatrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks[0].cols();
  std::size_t rows = 0;
  int m = 1;
  for (const auto& b : blocks) {
    if (b.cols() != cols) fail(ErrorCode::ShapeMismatch, "vstack column counts differ");
    rows += b.rows();
    m = std::lcm(m, b.conductor());
  }
  CycloMatrix out(rows, cols, m);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out.set(off + r, c, b(r, c));
    off += b.rows();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense elimination

EchelonForm rref(const CycloMatrix& input) {
  const std::size_t rows = input.rows();
  const std::size_t cols = input.cols();
  const int m = input.conductor();
  std::vector<std::vector<Cyclo>> a(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r].push_back(input(r, c));

  EchelonForm out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // pivot: nonzero entry with the shortest description
    std::size_t best = rows;
    std::size_t best_size = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      const std::size_t s = a[i][c].description_size();
      if (best == rows || s < best_size) {
        best = i;
        best_size = s;
      }
    }
    if (best == rows) continue;
    if (best != r) {
      std::swap(a[best], a[r]);
      out.odd_permutation = !out.odd_permutation;
    }
    const Cyclo inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!a[r][j].is_zero()) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Cyclo f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  std::vector<Cyclo> flat;
  flat.reserve(rows * cols);
  for (auto& row : a)
    for (auto& e : row) flat.push_back(std::move(e));
  out.reduced = rows * cols == 0 ? CycloMatrix(rows, cols, m) : CycloMatrix(rows, cols, std::move(flat));
  if (out.reduced.conductor() != m) out.reduced = out.reduced.embed(m);
  return out;
}

std::size_t rank(const CycloMatrix& m) { return rref(m).pivots.size(); }

Cyclo det(const CycloMatrix& input) {
  if (input.rows() != input.cols()) fail(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  std::vector<std::vector<Cyclo>> a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r].push_back(input(r, c));
  Cyclo d = Cyclo::one(input.conductor());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return Cyclo::zero(input.conductor());
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    const Cyclo inv = a[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      const Cyclo f = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!a[c][j].is_zero()) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

std::vector<CycloVector> kernel_basis(const CycloMatrix& m) {
  const EchelonForm e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<CycloVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    CycloVector v(cols, Cyclo::zero(m.conductor()));
    v[f] = Cyclo::one(m.conductor());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return echelon_basis(basis);
}

std::optional<CycloMatrix> solve(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::ShapeMismatch, "solve: row counts differ");
  const std::size_t n = a.cols();
  const EchelonForm e = rref(hstack({a, b}));
  CycloMatrix x(n, b.cols(), e.reduced.conductor());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t p = e.pivots[r];
    if (p >= n) return std::nullopt;  // inconsistent
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(p, j, e.reduced(r, n + j));
  }
  return x;
}

std::optional<Cyclo> rational_square_root(const Cyclo& value) {
  const Cyclo v = value.minimized();
  if (!v.is_rational()) return std::nullopt;
  Rational q = v.rational_value();
  if (q == 0) return Cyclo(0);
  const bool negative = q < 0;
  if (negative) q = -q;
  Integer num = q.get_num() * q.get_den();
  const Rational scale_back(Integer(1), q.get_den());
  Integer outside = 1;
  Cyclo root(1);
  for (Integer p = 2; p * p <= num; ++p) {
    while (num % (p * p) == 0) {
      num /= p * p;
      outside *= p;
    }
  }
  // num is now squarefree
  Integer rest = num;
  for (Integer p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    rest /= p;
    if (p > 100000) return std::nullopt;
    const long pl = p.get_si();
    Cyclo r;
    if (pl == 2) {
      r = Cyclo::zeta(8) + Cyclo::zeta(8, 7);
    } else {
      Cyclo g = Cyclo::zero(static_cast<int>(pl));
      for (long a = 1; a < pl; ++a) {
        long t = 1;
        for (long e = 0; e < (pl - 1) / 2; ++e) t = t * a % pl;
        g += (t == 1 ? Cyclo(1) : Cyclo(-1)) * Cyclo::zeta(static_cast<int>(pl), a);
      }
      r = pl % 4 == 1 ? g : -(Cyclo::zeta(4) * g);
    }
    root = root * r;
  }
  root = Cyclo(Rational(outside) * scale_back) * root;
  if (negative) root = Cyclo::zeta(4) * root;
  if (root * root != value) return std::nullopt;
  return root.minimized();
}

CycloMatrix inverse(const CycloMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const EchelonForm e = rref(hstack({m, CycloMatrix::identity(n, m.conductor())}));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    fail(ErrorCode::Singular, "matrix is not invertible");
  CycloMatrix inv(n, n, e.reduced.conductor());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, e.reduced(r, n + c));
  return inv;
}

std::vector<CycloVector> echelon_basis(const std::vector<CycloVector>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t cols = vectors[0].size();
  std::vector<Cyclo> flat;
  for (const auto& v : vectors) {
    if (v.size() != cols) fail(ErrorCode::ShapeMismatch, "vectors of different lengths");
    flat.insert(flat.end(), v.begin(), v.end());
  }
  if (cols == 0) return {};
  const EchelonForm e = rref(CycloMatrix(vectors.size(), cols, std::move(flat)));
  std::vector<CycloVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    CycloVector row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(e.reduced(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sparse elimination

std::optional<std::size_t> SparseEchelon::reduce(const SparseVector& v, SparseVector* remainder) const {
  std::map<std::size_t, Cyclo> work;
  for (const auto& [c, x] : v)
    if (!x.is_zero()) work[c] += x;
  while (!work.empty()) {
    auto it = work.begin();
    if (it->second.is_zero()) {
      work.erase(it);
      continue;
    }
    auto piv = pivot_rows_.find(it->first);
    if (piv == pivot_rows_.end()) {
      if (remainder) {
        remainder->clear();
        for (auto& [c, x] : work)
          if (!x.is_zero()) remainder->emplace_back(c, x);
      }
      return it->first;
    }
    const Cyclo f = it->second;
    for (const auto& [c, x] : piv->second) {
      auto [w, inserted] = work.try_emplace(c, Cyclo::zero(x.conductor()));
      w->second -= f * x;
      if (w->second.is_zero()) work.erase(w);
    }
  }
  return std::nullopt;
}

bool SparseEchelon::insert(const SparseVector& v) {
  SparseVector rem;
  auto lead = reduce(v, &rem);
  if (!lead) return false;
  const Cyclo inv = rem.front().second.inverse();
  for (auto& [c, x] : rem) x *= inv;
  pivot_rows_.emplace(*lead, std::move(rem));
  return true;
}

bool SparseEchelon::contains(const SparseVector& v) const { return !reduce(v, nullptr).has_value(); }

}  // namespace mckay
