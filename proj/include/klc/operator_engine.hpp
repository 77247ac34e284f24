#pragma once
/*
 * The space V_l of simple vectors f(q,z)[P_1,...,P_l] and the two operators
 *
 *   A(f[P_1..P_l]) = S( f/(1 - q^{-1}z P_l/P_1) [P_1,P_1,P_2,..,P_{l-1}] )
 *   B(f[P_1..P_l]) = S( f/(1 - q z^{-1} P_1/P_l) [q^{-1}zP_l,P_1,..,P_{l-1}] )
 *
 * with S the q-shift z -> qz.  The denominators are expanded by geom_inverse
 * after shifting, which keeps scalars honest power series.  Words act with
 * the rightmost letter first, so chi^{(N)} = (A+B)^N v_ini.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "klc/configurations.hpp"
#include "klc/series.hpp"
#include "klc/words.hpp"

namespace klc {

struct SimpleVector {
  Series scalar;
  std::vector<Monomial2> vpart;  // [P_1, ..., P_l]

  std::int64_t l() const { return static_cast<std::int64_t>(vpart.size()); }
};

// scalar 1, vector part [1,...,1]; the scalar carries w's upper corner.
SimpleVector v_ini(std::int64_t l, const Window& w);
// scalar 1/(z)_inf on w, vector part [1,...,1].
SimpleVector v_infinity(std::int64_t l, const Window& w);

// Throw std::domain_error when the expansion ratio degenerates to 1.
SimpleVector apply_A(const SimpleVector& v);
SimpleVector apply_B(const SimpleVector& v);
SimpleVector apply_letter(char c, const SimpleVector& v);
SimpleVector apply_word(const Word& m, const SimpleVector& v);

// scalar * P_1^{b_0} P_2^{b_1-b_0} ... P_l^{k-b_{l-2}}, truncated to w.
Series eval_at_boundary(const SimpleVector& v, const BoundaryVector& bv,
                        const Window& w);

/*
 * Sum of eval(M v_inf) over canonical classes of degree <= budget.  The sum
 * itself is exact on w; it equals the infinite character only where omitted
 * classes cannot reach, which is certified by the q-order bound
 *   q_order(eval(M v_inf)) >= deg(M) - l,
 * giving the window q <= budget - l (absent when budget < l).
 */
struct MonomialSum {
  Series sum;
  std::optional<Window> certified;
};

MonomialSum char_by_monomials(const BoundaryVector& bv, const Window& w,
                              std::int64_t budget);
std::map<std::vector<std::int64_t>, MonomialSum> char_by_monomials_all(
    std::int64_t k, std::int64_t l, const Window& w, std::int64_t budget);

}  // namespace klc
