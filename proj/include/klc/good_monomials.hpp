#pragma once
/*
 * The summation graph on nonempty subsets of {1,...,l}, sigma maps, marked
 * paths, the good-monomial predicate, cancellation-arrow classification and
 * the pairwise cancellation AN(A+B)K v_inf = 0.
 *
 * A word is good when C_i = A forces C_{i+l-1} = A (reading the class as
 * C_1...C_m A^infinity); equivalently its path from the all-in vertex stays
 * at vertices containing 1.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "klc/operator_engine.hpp"
#include "klc/series.hpp"
#include "klc/words.hpp"

namespace klc {

struct Vertex {
  std::int64_t l{0};
  std::uint32_t bits{0};  // bit i-1 set iff i is a member

  static Vertex top(std::int64_t l);
  bool contains(std::int64_t i) const { return bits >> (i - 1) & 1; }
  bool good() const { return contains(1); }
  bool empty() const { return bits == 0; }
  std::string str() const;  // e.g. "[@@.]" rendered with bullet glyphs

  friend bool operator==(const Vertex& x, const Vertex& y) {
    return x.l == y.l && x.bits == y.bits;
  }
};

// Arrow rules: A drops the second entry when 1 is a member (merging it into
// the first) and appends a gap; B rotates cyclically.
Vertex graph_step(Vertex v, char c);

struct MarkedVertex {
  Vertex v;
  std::int64_t mark{0};  // 0 = unmarked, else a member position 1..l

  std::string str() const;
  friend bool operator==(const MarkedVertex& x, const MarkedVertex& y) {
    return x.v == y.v && x.mark == y.mark;
  }
};

MarkedVertex marked_step(MarkedVertex m, char c);

// sigma_A(1)=1, sigma_A(i)=i-1; sigma_B(1)=l, sigma_B(i)=i-1; composition
// follows sigma_{MM'} = sigma_{M'} o sigma_M.
struct SigmaMap {
  std::vector<std::int64_t> img;  // img[i-1] = sigma(i)

  static SigmaMap identity(std::int64_t l);
  std::int64_t l() const { return static_cast<std::int64_t>(img.size()); }
  std::int64_t operator()(std::int64_t i) const {
    return img[static_cast<std::size_t>(i - 1)];
  }
  Vertex image_set() const;
};

SigmaMap sigma_of(const Word& m, std::int64_t l);
std::vector<Vertex> path_of(const Word& m, std::int64_t l);

bool is_good(const Word& m, std::int64_t l);
std::vector<Word> good_classes_upto(std::int64_t l, std::int64_t maxdeg);

enum class GoodClass { G, A, B };  // AM good / cancellation A-arrow / B-arrow

struct Classification {
  GoodClass cls{GoodClass::G};
  std::int64_t index{0};  // 1-based cancellation-arrow position (A/B only)
  Word extended;          // the walked horizon word (degree + l letters)
  std::vector<MarkedVertex> marked_path;  // states 0..horizon
};

// Requires M good and canonical; walks the marked path from [@...@x].
Classification classify(const Word& m, std::int64_t l);

// Flip the cancellation arrow; an involution exchanging the A and B classes.
Word cancellation_partner(const Word& m, std::int64_t l);

struct CancellationPair {
  Word n, k;    // M = N A K around the cancellation arrow
  Word nak, nbk;
};

CancellationPair cancellation_pair(const Word& m, std::int64_t l);

// Checks AN A K v_inf + AN B K v_inf = 0 on w at the given boundary.
bool verify_cancellation(const Word& m, const BoundaryVector& bv, const Window& w);

// Cancellation blocks B_s = B A^s B C..C B A^s of degree l+s (Lemma on the
// unique factorization of BN).
struct Block {
  std::int64_t s{0};
  Word letters;
};

std::vector<Block> decompose_blocks(const Word& bn, std::int64_t l);

// (C1)_s: P_j = P'_j (j >= 2); (C2)_s: P_1/P_2 = z P'_l/P'_1;
// (C3)_s: P_{l-s} = ... = P_l.
bool check_condition_Cs(const SimpleVector& v, const SimpleVector& vp,
                        std::int64_t s);

}  // namespace klc
