#pragma once
/*
 * Exact truncated bivariate Laurent series in q and z over arbitrary-precision
 * integers.
 *
 * A Series stores finitely many coefficients together with a Window that
 * records where the stored data is exact.  The contract is:
 *
 *   (1) the true (untruncated) series has no support with z < z_min;
 *   (2) within z_min <= z <= z_max it has no support with q < q_min;
 *   (3) inside the window box the stored coefficients equal the true ones.
 *
 * So the exactness region of a Series is the window box together with the
 * half-planes below the lower corner, where the series is identically zero.
 * Every operation computes the largest window on which the result is provably
 * exact under (1)-(3).  Lower corners act as support bounds; they may be
 * lowered (weakened) freely but are raised only across provably empty space.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klc {

using Int = boost::multiprecision::cpp_int;

// q^a z^n, exponents may be negative.
struct Monomial2 {
  std::int64_t a{0};
  std::int64_t n{0};

  friend Monomial2 operator*(Monomial2 x, Monomial2 y) {
    return {x.a + y.a, x.n + y.n};
  }
  friend Monomial2 operator/(Monomial2 x, Monomial2 y) {
    return {x.a - y.a, x.n - y.n};
  }
  friend bool operator==(Monomial2 x, Monomial2 y) {
    return x.a == y.a && x.n == y.n;
  }
  friend bool operator!=(Monomial2 x, Monomial2 y) { return !(x == y); }

  bool is_one() const { return a == 0 && n == 0; }
  Monomial2 inverse() const { return {-a, -n}; }
  Monomial2 pow(std::int64_t e) const;  // e >= 0
};

// z -> qz on a monomial: q^a z^n -> q^{a+n} z^n.
inline Monomial2 shift_s(Monomial2 m) { return {m.a + m.n, m.n}; }

std::string to_string(Monomial2 m);

struct Window {
  // Exponent bounds treated as +/- infinity beyond |kInf|.
  static constexpr std::int64_t kInf = std::int64_t{1} << 40;

  std::int64_t q_min{0};
  std::int64_t q_max{0};
  std::int64_t z_min{0};
  std::int64_t z_max{0};

  // The usual character window [0,qmax] x [0,zmax].
  static Window box(std::int64_t qmax, std::int64_t zmax);
  // Unbounded window (exact polynomials).
  static Window all();

  bool valid() const { return q_min <= q_max && z_min <= z_max; }
  bool contains(std::int64_t a, std::int64_t n) const {
    return q_min <= a && a <= q_max && z_min <= n && n <= z_max;
  }
  // w covers v: every point of v's box is inside w's exactness region.
  bool covers(const Window& v) const;
  Window shifted(Monomial2 m) const;

  friend bool operator==(const Window& x, const Window& y) {
    return x.q_min == y.q_min && x.q_max == y.q_max && x.z_min == y.z_min &&
           x.z_max == y.z_max;
  }
};

std::string to_string(const Window& w);

// Saturating exponent arithmetic for window bounds.
std::int64_t sat_add(std::int64_t x, std::int64_t y);

class Series {
 public:
  // Keyed (n, a) so iteration order matches the serialization order.
  using Key = std::pair<std::int64_t, std::int64_t>;
  using Map = std::map<Key, Int>;

  explicit Series(Window w);  // zero on w

  static Series zero(Window w) { return Series(w); }
  static Series one(Window w) { return monomial({0, 0}, 1, w); }
  static Series monomial(Monomial2 m, Int c, Window w);

  const Window& window() const { return win_; }
  const Map& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t term_count() const { return c_.size(); }

  // Coefficient if (a, n) lies in the exactness region, nullopt otherwise.
  std::optional<Int> coeff(std::int64_t a, std::int64_t n) const;

  // Stored coefficient, zero outside the stored support (no exactness check).
  const Int& stored(std::int64_t a, std::int64_t n) const;

  void set(std::int64_t a, std::int64_t n, Int c);        // inside window only
  void accumulate(std::int64_t a, std::int64_t n, const Int& c);  // drops outside

  // Shrink/adjust the window.  Raising a lower corner is allowed only across
  // coefficient-free space (it must not cross stored support); throws
  // std::domain_error otherwise.
  Series restricted(const Window& w) const;

  // Lowest bidegree in lex order by (n, a); nullopt when zero.
  std::optional<Monomial2> leading() const;

  friend Series operator-(const Series& s);

 private:
  Window win_;
  Map c_;
};

Series add(const Series& s, const Series& t);
Series sub(const Series& s, const Series& t);
Series mul(const Series& s, const Series& t);
Series mul_int(const Series& s, const Int& c);
Series mul_monomial(const Series& s, Monomial2 m);

// Power-series expansion of 1/(1 - q^{u.a} z^{u.n}) with finitely many terms
// inside w (only the upper corner of w is consulted; lower corners are the
// honest support bounds of the chosen expansion):
//   u.n > 0, or u.n == 0 && u.a > 0 :  sum_{j>=0} u^j
//   otherwise                       : -sum_{j>=1} u^{-j}
// Throws std::domain_error for u == 1.
Series geom_inverse(Monomial2 u, const Window& w);

// (u)_n = prod_{i=0}^{n-1} (1 - q^i u), an exact polynomial.
Series pochhammer(Monomial2 u, std::int64_t n);

// (u)_inf truncated to w; requires u.n > 0, or u.n == 0 && u.a > 0.
Series pochhammer_inf(Monomial2 u, const Window& w);

// Expansions of 1/(u)_n and 1/(u)_inf (same convergence condition).
Series inv_pochhammer(Monomial2 u, std::int64_t n, const Window& w);
Series inv_pochhammer_inf(Monomial2 u, const Window& w);

// The q-shift S: g(q, z) -> g(q, qz).
Series shift_S(const Series& s);

// Coefficients agree at every exponent of w lying in both windows.
bool equal_on(const Series& s, const Series& t, const Window& w);

struct Mismatch {
  std::int64_t a{0};
  std::int64_t n{0};
  Int lhs;
  Int rhs;
};

// First disagreeing coefficient (ordered by (n, a)) of w in both windows.
std::optional<Mismatch> first_mismatch(const Series& s, const Series& t,
                                       const Window& w);

// Deterministic serialization: window header, then rows "a n coeff" sorted
// lexicographically by (n, a) with decimal integer rendering.
void write_table(std::ostream& os, const Series& s);
std::string to_table(const Series& s);
std::string to_json(const Series& s);

}  // namespace klc
