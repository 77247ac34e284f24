#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "klc/good_monomials.hpp"

#include <set>
#include <string>

using namespace klc;

namespace {

const Window W = Window::box(10, 6);

Vertex vx(const std::string& pattern) {  // '@' member, '.' gap
  Vertex v{static_cast<std::int64_t>(pattern.size()), 0};
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] == '@') v.bits |= std::uint32_t{1} << i;
  return v;
}

MarkedVertex mvx(const std::string& pattern) {  // 'x' marks a member
  MarkedVertex m{vx(pattern), 0};
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i] == 'x') {
      m.v.bits |= std::uint32_t{1} << i;
      m.mark = static_cast<std::int64_t>(i) + 1;
    }
  return m;
}

std::string rep(std::int64_t m, const std::string& unit) {
  std::string s;
  for (std::int64_t i = 0; i < m; ++i) s += unit;
  return s;
}

// The example families of good classes.
std::set<Word> census_l2(std::int64_t maxdeg) {
  std::set<Word> out;
  for (std::int64_t m = 0; m <= maxdeg; ++m) out.insert(Word(rep(m, "B")));
  return out;
}

std::set<Word> census_l3(std::int64_t maxdeg) {
  std::set<Word> out;
  for (std::int64_t m = 0; m <= maxdeg; ++m)
    for (std::int64_t n = 0; m + 2 * n <= maxdeg; ++n)
      out.insert(Word(rep(m, "B") + rep(n, "AB")));
  return out;
}

std::set<Word> census_l4(std::int64_t maxdeg) {
  std::set<Word> out;
  for (std::int64_t m = 0; m <= maxdeg; ++m)
    for (std::int64_t n = 0; m + 3 * n <= maxdeg; ++n)
      for (std::int64_t p = 0; m + 3 * n + 3 * p <= maxdeg; ++p)
        out.insert(Word(rep(m, "B") + rep(n, "ABB") + rep(p, "AAB")));
  for (std::int64_t m = -1; m <= maxdeg; ++m)
    for (std::int64_t n = 1; 3 * n + std::max<std::int64_t>(m, 0) <= maxdeg + 1; ++n)
      for (std::int64_t p = 0; m + 3 * n + 3 * p <= maxdeg; ++p) {
        std::string s = rep(n, "BAB") + rep(p, "AAB");
        if (m >= 0)
          s = rep(m, "B") + s;
        else
          s = s.substr(1);  // B^{-1} strips the leading B
        if (static_cast<std::int64_t>(s.size()) <= maxdeg) out.insert(Word(s));
      }
  return out;
}

}  // namespace

TEST_CASE("graph_step: fixed points and the full l=3 arrow table") {
  for (std::int64_t l = 2; l <= 5; ++l) {
    CHECK(graph_step(Vertex::top(l), 'B') == Vertex::top(l));
    Vertex lone = vx("@" + std::string(static_cast<std::size_t>(l - 1), '.'));
    CHECK(graph_step(lone, 'A') == lone);
  }
  // every arrow of the l=3 figure
  CHECK(graph_step(vx("@@@"), 'A') == vx("@@."));
  CHECK(graph_step(vx("@@@"), 'B') == vx("@@@"));
  CHECK(graph_step(vx("@@."), 'A') == vx("@.."));
  CHECK(graph_step(vx("@@."), 'B') == vx("@.@"));
  CHECK(graph_step(vx("@.@"), 'A') == vx("@@."));
  CHECK(graph_step(vx("@.@"), 'B') == vx(".@@"));
  CHECK(graph_step(vx(".@@"), 'A') == vx("@@."));
  CHECK(graph_step(vx(".@@"), 'B') == vx("@@."));
  CHECK(graph_step(vx("@.."), 'A') == vx("@.."));
  CHECK(graph_step(vx("@.."), 'B') == vx("..@"));
  CHECK(graph_step(vx("..@"), 'A') == vx(".@."));
  CHECK(graph_step(vx("..@"), 'B') == vx(".@."));
  CHECK(graph_step(vx(".@."), 'A') == vx("@.."));
  CHECK(graph_step(vx(".@."), 'B') == vx("@.."));
}

TEST_CASE("sigma maps: the l=5 example and Lemma 3.1") {
  SigmaMap s = sigma_of(Word("AABBA"), 5);
  CHECK(s.image_set() == vx("@.@@."));

  // image set of sigma equals the path endpoint, exhaustively to degree 6
  for (std::int64_t l = 2; l <= 5; ++l)
    for (const auto& m : canonical_words_upto(6)) {
      CHECK(sigma_of(m, l).image_set() == path_of(m, l).back());
    }

  CHECK(sigma_of(Word(""), 3).image_set() == Vertex::top(3));
  CHECK(path_of(Word(""), 3).size() == 1);
}

TEST_CASE("is_good: families and path characterization") {
  for (std::int64_t m = 0; m <= 6; ++m) CHECK(is_good(Word(rep(m, "B")), 2));
  CHECK(is_good(Word("AB"), 3));
  CHECK(is_good(Word("ABAB"), 3));
  CHECK_FALSE(is_good(Word("AB"), 2));
  CHECK_FALSE(is_good(Word("ABB"), 3));

  // goodness iff the path stays at vertices containing 1
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : canonical_words_upto(8)) {
      bool good = is_good(m, l);
      bool path_good = true;
      for (const auto& v : path_of(m, l)) path_good = path_good && v.good();
      CHECK(good == path_good);
    }
}

TEST_CASE("marked path: the l=5 displayed example") {
  MarkedVertex s = mvx("@@@@x");
  s = marked_step(s, 'A');
  CHECK(s == mvx("@@@x."));
  s = marked_step(s, 'B');
  CHECK(s == mvx("@@x.@"));
  s = marked_step(s, 'B');
  CHECK(s == mvx("@x.@@"));
  s = marked_step(s, 'A');
  CHECK(s == mvx("@.@@."));
  CHECK(s.mark == 0);
}

TEST_CASE("marked path: both unmark projections") {
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : canonical_words_upto(7)) {
      std::vector<MarkedVertex> mp{MarkedVertex{Vertex::top(l), l}};
      for (char c : m.letters) mp.push_back(marked_step(mp.back(), c));

      // x -> @ gives the path of M
      auto pm = path_of(m, l);
      REQUIRE(pm.size() == mp.size());
      for (std::size_t i = 0; i < mp.size(); ++i) {
        Vertex proj = mp[i].v;
        CHECK(proj == pm[i]);
      }

      // x -> gap, with a prepended A-step, gives the path of AM
      auto pam = path_of(Word("A" + m.letters), l);
      REQUIRE(pam.size() == mp.size() + 1);
      for (std::size_t i = 0; i < mp.size(); ++i) {
        Vertex proj = mp[i].v;
        if (mp[i].mark != 0) proj.bits &= ~(std::uint32_t{1} << (mp[i].mark - 1));
        CHECK(proj == pam[i + 1]);
      }
    }
}

TEST_CASE("census: good classes match the example families exactly") {
  const std::int64_t D = 8;
  auto as_set = [](std::vector<Word> v) { return std::set<Word>(v.begin(), v.end()); };
  CHECK(as_set(good_classes_upto(2, D)) == census_l2(D));
  CHECK(as_set(good_classes_upto(3, D)) == census_l3(D));
  CHECK(as_set(good_classes_upto(4, D)) == census_l4(D));
  // the l=3 count from m + 2n <= 4: 9 classes
  CHECK(good_classes_upto(3, 4).size() == 9);
}

TEST_CASE("classify: the partition of good classes is total and disjoint") {
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : good_classes_upto(l, 8)) {
      Classification c = classify(m, l);
      bool am_good = is_good(Word("A" + m.letters), l);
      CHECK((c.cls == GoodClass::G) == am_good);
      if (c.cls != GoodClass::G) {
        CHECK(c.index >= 1);
        CHECK(c.extended.at(c.index) == (c.cls == GoodClass::A ? 'A' : 'B'));
      }
    }
}

TEST_CASE("classify: l=2 smallest cancellation pair B ~ BB") {
  Classification cb = classify(Word("B"), 2);
  CHECK(cb.cls == GoodClass::A);
  CHECK(cb.index == 2);
  CHECK(cancellation_partner(Word("B"), 2) == Word("BB"));

  Classification cbb = classify(Word("BB"), 2);
  CHECK(cbb.cls == GoodClass::B);
  CHECK(cbb.index == 2);
  CHECK(cancellation_partner(Word("BB"), 2) == Word("B"));

  CHECK_THROWS_AS(classify(Word("AB"), 2), std::invalid_argument);
}

TEST_CASE("cancellation_partner: involution swapping the A and B classes") {
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : good_classes_upto(l, 8)) {
      Classification c = classify(m, l);
      if (c.cls == GoodClass::G) {
        CHECK_THROWS_AS(cancellation_partner(m, l), std::domain_error);
        continue;
      }
      Word p = cancellation_partner(m, l);
      CHECK(is_good(p, l));
      Classification cp = classify(p, l);
      CHECK(cp.cls == (c.cls == GoodClass::A ? GoodClass::B : GoodClass::A));
      CHECK(cp.index == c.index);  // the flipped arrow is the partner's arrow
      CHECK(cancellation_partner(p, l) == m);
    }
}

TEST_CASE("Theorem 3.5: AN(A+B)K v_inf = 0 for small pairs") {
  Window w = Window::box(8, 5);
  for (std::int64_t l = 2; l <= 3; ++l)
    for (const auto& m : good_classes_upto(l, 5)) {
      if (classify(m, l).cls != GoodClass::A) continue;
      for (const auto& bv : all_boundary_vectors(2, l))
        CHECK(verify_cancellation(m, bv, w));
    }
}

TEST_CASE("Prop 3.6: extremal configurations agree across a pair") {
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : good_classes_upto(l, 6)) {
      if (classify(m, l).cls != GoodClass::A) continue;
      CancellationPair p = cancellation_pair(m, l);
      Word wa = Word("A") + p.n + Word("A") + p.k;
      Word wb = Word("A") + p.n + Word("B") + p.k;
      std::int64_t len = std::max(wa.degree(), wb.degree());
      for (const auto& bv : all_boundary_vectors(2, l)) {
        Config xa = extremal_config(wa.extended(len - wa.degree()), bv);
        Config xb = extremal_config(wb.extended(len - wb.degree()), bv);
        CHECK(xa == xb);
      }
    }
}

TEST_CASE("decompose_blocks: structure of BN across all small pairs") {
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : good_classes_upto(l, 8)) {
      if (classify(m, l).cls != GoodClass::A) continue;
      CancellationPair p = cancellation_pair(m, l);
      Word bn = Word("B") + p.n;
      auto blocks = decompose_blocks(bn, l);
      CHECK(!blocks.empty());
      std::string glued;
      for (const auto& b : blocks) {
        CHECK(b.s >= 0);
        CHECK(b.s <= l - 2);
        CHECK(b.letters.degree() == l + b.s);
        glued += b.letters.letters;
      }
      CHECK(glued == bn.letters);  // unique factorization, round trip

      // adjacency constraints between consecutive blocks
      for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
        std::int64_t s = blocks[i].s, t = blocks[i + 1].s;
        bool case1 = t == l - 2;
        bool case2 = l >= s + t + 3;
        CHECK((case1 || case2));
        if (!case1 && case2) {
          for (std::int64_t j = l - s; j <= l - 1; ++j)
            CHECK(blocks[i + 1].letters.at(j) == 'A');
        }
      }

      // K = D_1...D_r with every chunk ending in A^{s_p+1}
      std::int64_t sp = blocks.back().s;
      Word k = p.k;
      if (k.degree() % (l - 1) != 0)
        k = k.extended(l - 1 - k.degree() % (l - 1));
      CHECK(k.degree() % (l - 1) == 0);
      for (std::int64_t base = 0; base < k.degree(); base += l - 1)
        for (std::int64_t j = l - 1 - sp; j <= l - 1; ++j)
          CHECK(k.at(base + j) == 'A');
    }
}

TEST_CASE("condition (C)_s along cancellation pairs") {
  Window w = Window::box(8, 5);
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : good_classes_upto(l, 7)) {
      if (classify(m, l).cls != GoodClass::A) continue;
      CancellationPair pair = cancellation_pair(m, l);
      Word bn = Word("B") + pair.n;
      auto blocks = decompose_blocks(bn, l);
      SimpleVector vinf = v_infinity(l, w);
      SimpleVector v = apply_word(Word("A") + pair.k, vinf);
      SimpleVector vp = apply_word(Word("B") + pair.k, vinf);
      // (AKv, BKv) satisfies (C)_{s_p}
      CHECK(check_condition_Cs(v, vp, blocks.back().s));
      CHECK(check_condition_Cs(vp, v, blocks.back().s));
      // applying the blocks right to left maintains (C)_{s_i}
      for (std::size_t i = blocks.size(); i-- > 1;) {
        v = apply_word(blocks[i].letters, v);
        vp = apply_word(blocks[i].letters, vp);
        CHECK(check_condition_Cs(v, vp, blocks[i - 1].s));
      }
    }
}

TEST_CASE("decompose_blocks: malformed input is rejected") {
  CHECK_THROWS_AS(decompose_blocks(Word("AB"), 2), std::domain_error);
  CHECK_THROWS_AS(decompose_blocks(Word("B"), 2), std::domain_error);
  CHECK_THROWS_AS(decompose_blocks(Word(""), 3), std::domain_error);
  CHECK_THROWS_AS(decompose_blocks(Word("BAAAB"), 3), std::domain_error);
}

TEST_CASE("vertex rendering uses the bullet, gap and mark glyphs") {
  CHECK(vx("@.@").str() == "[•∘•]");
  CHECK(mvx("@x.").str() == "[•×∘]");
}

TEST_CASE("distinct good classes give inequivalent extremal configurations") {
  // generic boundary: strictly increasing b with b_{l-2} < k
  for (std::int64_t l = 2; l <= 4; ++l) {
    std::vector<std::int64_t> b;
    for (std::int64_t i = 0; i <= l - 2; ++i) b.push_back(i + 1);
    BoundaryVector bv(l, l + 1, b);
    std::set<Config> seen;
    for (const auto& m : good_classes_upto(l, 8)) {
      Config x = extremal_config(m, bv);
      while (!x.empty() && x.back() == 0) x.pop_back();
      CHECK(seen.insert(x).second);
    }
  }
}

TEST_CASE("lattice composites at B positions never vanish for good words") {
  for (std::int64_t l = 2; l <= 4; ++l)
    for (const auto& m : good_classes_upto(l, 8)) {
      auto lam = extremal_config_lambda(m, l);
      for (std::int64_t i = 0; i < m.degree(); ++i)
        if (m.at(i + 1) == 'B') CHECK_FALSE(lam[static_cast<std::size_t>(i)] ==
                                            LambdaElement(l));
    }
}

TEST_CASE("good classes alone already sum to the full class sum") {
  // Summing eval(M v_inf) over good classes of degree <= D equals the sum
  // over all classes of degree <= D wherever budget D certifies exactness.
  const std::int64_t D = 8;
  Window w = Window::box(10, 6);
  for (std::int64_t l = 2; l <= 3; ++l) {
    SimpleVector vinf = v_infinity(l, w);
    for (const auto& bv : all_boundary_vectors(2, l)) {
      Series good_sum(Window::box(w.q_max, w.z_max));
      for (const auto& m : good_classes_upto(l, D))
        good_sum = add(good_sum, eval_at_boundary(apply_word(m, vinf), bv, w));
      MonomialSum all = char_by_monomials(bv, w, D);
      REQUIRE(all.certified.has_value());
      CHECK(equal_on(good_sum, all.sum, *all.certified));
    }
  }
}
