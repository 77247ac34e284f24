#pragma once
/*
 * (k,l)-configurations and their characters.
 *
 * A configuration is a finitely supported sequence (x_0, x_1, ...) of
 * non-negative integers in which every l consecutive entries sum to at most
 * k.  The boundary vector b = (b_0 <= ... <= b_{l-2} <= k) restricts the
 * prefix sums x_0 + ... + x_j <= b_j for j <= l-2, and the character is the
 * generating series sum q^{sum j x_j} z^{sum x_j} over such configurations.
 *
 * Characters are computed two independent ways: direct enumeration (the
 * ground-truth oracle) and the left-end recursion
 *   chi^{(N+1)}_{(b_0..b_{l-2})}(q,z)
 *     = sum_{i=0}^{b_0} z^i chi^{(N)}_{(b_1-i,..,b_{l-2}-i,k-i)}(q,qz),
 * run as a dynamic program over all boundary vectors at once.
 */

#include <cstdint>
#include <map>
#include <vector>

#include "klc/series.hpp"
#include "klc/words.hpp"

namespace klc {

struct BoundaryVector {
  std::int64_t l{2};
  std::int64_t k{1};
  std::vector<std::int64_t> b;  // length l-1

  BoundaryVector(std::int64_t l_, std::int64_t k_, std::vector<std::int64_t> b_);

  // (b_0, b_1-b_0, ..., k-b_{l-2}): the exponents of [P_1,...,P_l].
  std::vector<std::int64_t> exponents() const;

  friend bool operator<(const BoundaryVector& x, const BoundaryVector& y) {
    return std::tie(x.l, x.k, x.b) < std::tie(y.l, y.k, y.b);
  }
  friend bool operator==(const BoundaryVector& x, const BoundaryVector& y) {
    return x.l == y.l && x.k == y.k && x.b == y.b;
  }
};

std::string to_string(const BoundaryVector& bv);

// All valid boundary vectors for given k, l, in lexicographic order.
std::vector<BoundaryVector> all_boundary_vectors(std::int64_t k, std::int64_t l);

using Config = std::vector<std::int64_t>;

// Every window of l consecutive entries sums to <= k (entries non-negative).
bool is_config(const Config& x, std::int64_t k, std::int64_t l);

// Equal after stripping trailing zeros.
bool config_equivalent(const Config& x, const Config& y);

// chi^{(N)}_{k,l;b} truncated to w, by pruned depth-first enumeration.
Series char_bruteforce(const BoundaryVector& bv, std::int64_t N, const Window& w);

// Same character through the recursion over all boundary vectors.
Series char_recursion(const BoundaryVector& bv, std::int64_t N, const Window& w);
std::map<std::vector<std::int64_t>, Series> char_recursion_all(std::int64_t k,
                                                               std::int64_t l,
                                                               std::int64_t N,
                                                               const Window& w);

// chi^{(infinity)}: exact on w via stabilization at N = q_max + 1 (a nonzero
// part at position >= N contributes q-order >= N).
Series char_infinite(const BoundaryVector& bv, const Window& w);

/*
 * The lattice Lambda generated by the formal symbols b_0, ..., b_{l-2}, k,
 * with the Z-linear maps
 *   M_a: b_i -> b_{i+1} (i <= l-3), b_{l-2} -> k,       k -> k
 *   M_b: b_i -> b_{i+1} - b_0,      b_{l-2} -> k - b_0, k -> k.
 */
struct LambdaElement {
  std::vector<std::int64_t> c;  // size l: coefficients of b_0..b_{l-2}, then k

  explicit LambdaElement(std::int64_t l) : c(static_cast<std::size_t>(l), 0) {}
  std::int64_t l() const { return static_cast<std::int64_t>(c.size()); }
  friend bool operator==(const LambdaElement& x, const LambdaElement& y) {
    return x.c == y.c;
  }
};

LambdaElement lambda_b0(std::int64_t l);
LambdaElement lambda_k(std::int64_t l);
// op is 'a' or 'b'; also accepts the letters 'A'/'B' of a word.
LambdaElement lambda_apply(char op, const LambdaElement& v);
std::int64_t lambda_eval(const LambdaElement& v, const BoundaryVector& bv);

// iota_{i,j} = b_{ibar-2} - b_{jbar-2} + k delta(ibar <= jbar), b_{-1} = 0,
// where ibar, jbar reduce i, j mod l into 1..l.
LambdaElement iota(std::int64_t i, std::int64_t j, std::int64_t l);
std::int64_t iota_eval(std::int64_t i, std::int64_t j, const BoundaryVector& bv);

/*
 * Extremal configuration of a word: x_i = 0 when C_{i+1} = A, and otherwise
 * the lattice composite M_{c_1} o ... o M_{c_i} (b_0), rightmost map applied
 * first, evaluated at the boundary vector.
 */
std::vector<LambdaElement> extremal_config_lambda(const Word& m, std::int64_t l);
Config extremal_config(const Word& m, const BoundaryVector& bv);

// The fast route for good words through the index recursion
//   gamma'_i = gamma_{i_-},   gamma_i = i+1 (i <= l-1), gamma'_{i-l+1} (i >= l),
// giving x_i = iota_{gamma_{i+1}, gamma'_{i+1}}.  Throws if the recursion
// references a non-B position (the word was not good).
Config extremal_config_rec(const Word& m, const BoundaryVector& bv);

}  // namespace klc
