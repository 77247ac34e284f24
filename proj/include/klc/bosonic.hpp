#pragma once
/*
 * Closed bosonic forms for the infinite character: the (sigma, n)
 * parameterization of good classes, closed vector parts, block coloring and
 * closed scalar parts, term assembly, the convergent bosonic summation, and
 * the explicit l=2 / l=3 formulas.
 *
 * Every good class M contributes M v_inf = f [P_1..P_l] with
 *
 *   f = (-1)^alpha q^{beta} z^{m_1} / ( (q)_{t_2}...(q)_{t_l} (q^T z)_inf ),
 *
 * T = t_2+...+t_l.  The scalar is computed in closed form by telescoping the
 * per-letter factors f_i / S(f_{i+1}) across the colored blocks of M; the
 * factor exponents are asserted to group into the (q)_{t_c} runs and the
 * (q^T z)_inf tail, so the shape above is machine-checked at construction.
 */

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "klc/good_monomials.hpp"

namespace klc {

struct GoodParam {
  std::int64_t l{2};
  std::vector<std::int64_t> sigma;  // sigma[i-1] = sigma(i); sigma(1)=l, sigma(l)=1
  std::vector<std::int64_t> n;      // n_1 .. n_{l-1}

  // Membership in the parameter set: n_i >= 0 for i <= l-2,
  // n_{l-1} >= 2 - sigma(l-1), and n_i > 0 whenever sigma(i) < sigma(i+1).
  void validate() const;  // throws std::invalid_argument
  std::int64_t word_degree() const;
};

Word param_to_word(const GoodParam& p);
GoodParam word_to_param(const Word& m, std::int64_t l);

// Exponent pairs (omega_i, rho_i) of the vector part of M[1,...,1].
std::vector<Monomial2> closed_vector_part(const GoodParam& p);

/*
 * Maximal B A...A blocks of a good word ending in B, with the inductive
 * coloring: the last block has color 1, a block continues the color of the
 * block l-1 letters after its successor head when that position is a B, and
 * otherwise opens a fresh color.  Leading A's are covered by a virtual block
 * B A^{lead} at position 0, colored by the same rule.
 */
struct BlockData {
  std::int64_t l{0};
  std::int64_t n{0};     // word degree
  std::int64_t lead{0};  // leading A's (virtual block length lead+1 at pos 0)
  std::vector<std::int64_t> bpos;                 // real B positions, ascending
  std::map<std::int64_t, std::int64_t> r;         // block length by head (incl 0)
  std::map<std::int64_t, std::int64_t> c;         // color by head (incl 0)
  std::map<std::int64_t, std::int64_t> lambda;    // by head (incl 0)
  std::int64_t colors{0};                         // distinct colors incl virtual
  std::vector<std::int64_t> t, m, mu;             // real-block aggregates by color

  std::string colored_string() const;  // e.g. "B3B1B4B2..A.."
};

BlockData color_blocks(const Word& m, std::int64_t l);

struct ClosedTerm {
  std::int64_t l{2};
  std::int64_t alpha{0};     // sign exponent
  std::int64_t beta_bar{0};  // q-exponent of the prefactor
  std::int64_t m1{0};        // z-exponent of the prefactor
  std::vector<std::int64_t> t;   // denominator lengths t_2..t_l
  std::vector<Monomial2> vpart;  // closed vector part (empty until attached)

  std::int64_t tsum() const;
  Int sign() const { return alpha % 2 == 0 ? 1 : -1; }
};

// Scalar part of M v_inf in closed form (vpart left empty).
ClosedTerm closed_scalar(const Word& m, std::int64_t l);
ClosedTerm closed_term(const GoodParam& p);

// Expansion of the scalar prefactor on w.
Series closed_scalar_series(const ClosedTerm& t, const Window& w);

struct TermSeries {
  Series series;
  Monomial2 leading;  // exact leading bidegree (beta, gamma) after evaluation
};

TermSeries closed_term_series(const GoodParam& p, const BoundaryVector& bv,
                              const Window& w);

// All parameters whose word degree is at most maxdeg.
std::vector<GoodParam> params_upto(std::int64_t l, std::int64_t maxdeg);

// Sum of closed terms over every class of word degree <= q_max + l; omitted
// classes have q-order above the window, so the result is exact on w.
// Honors the KLC_THREADS environment variable for parallel term evaluation.
Series char_bosonic(const BoundaryVector& bv, const Window& w);

// The explicit l=2 and l=3 closed sums.
Series char_l2_closed(std::int64_t k, std::int64_t b0, const Window& w);
Series char_l3_closed(std::int64_t k, std::int64_t b0, std::int64_t b1,
                      const Window& w);

/*
 * Checks, by exact finite differences over full lattice periods, that the
 * quadratic part of omega and the linear part of rho are independent of
 * sigma and i and match
 *   omega2(n) = (l-1)/2 sum_{a,b<=l-2} n_a n_b c/(c+1)  (c = min(a,b))
 *             + n_{l-1} sum_a n_a a/(a+1) + n_{l-1}^2 / (2l),
 *   rho1(n)   = sum_a n_a a/(a+1) + n_{l-1}/l,
 * and that n, m_c, t_c have the stated sigma-independent linear parts, and
 * that beta's second differences agree across all sigma.
 */
struct SigmaIndependenceReport {
  bool ok{true};
  std::vector<std::string> lines;
  std::string text() const;
};

SigmaIndependenceReport sigma_independence_report(std::int64_t l,
                                                  std::int64_t samples);

}  // namespace klc
