#include "klc/good_monomials.hpp"

#include <algorithm>
#include <stdexcept>

namespace klc {

namespace {

void check_vertex_l(std::int64_t l) {
  if (l < 2 || l > 30)
    throw std::invalid_argument("summation graph needs 2 <= l <= 30");
}

}  // namespace

Vertex Vertex::top(std::int64_t l) {
  check_vertex_l(l);
  return Vertex{l, (std::uint32_t{1} << l) - 1};
}

std::string Vertex::str() const {
  std::string s = "[";
  for (std::int64_t i = 1; i <= l; ++i) s += contains(i) ? "•" : "∘";
  return s + "]";
}

std::string MarkedVertex::str() const {
  std::string s = "[";
  for (std::int64_t i = 1; i <= v.l; ++i)
    s += i == mark ? "×" : (v.contains(i) ? "•" : "∘");
  return s + "]";
}

Vertex graph_step(Vertex v, char c) {
  if (v.empty()) throw std::invalid_argument("graph_step: empty vertex");
  Vertex r{v.l, 0};
  for (std::int64_t i = 1; i <= v.l; ++i) {
    if (!v.contains(i)) continue;
    std::int64_t img;
    if (c == 'A')
      img = i == 1 ? 1 : i - 1;
    else if (c == 'B')
      img = i == 1 ? v.l : i - 1;
    else
      throw std::invalid_argument("graph_step: letter must be A or B");
    r.bits |= std::uint32_t{1} << (img - 1);
  }
  return r;
}

MarkedVertex marked_step(MarkedVertex m, char c) {
  MarkedVertex r{graph_step(m.v, c), 0};
  if (m.mark == 0) return r;
  if (c == 'B') {
    r.mark = m.mark == 1 ? m.v.l : m.mark - 1;
  } else {
    if (m.mark >= 3)
      r.mark = m.mark - 1;
    else if (m.mark == 2)
      r.mark = m.v.contains(1) ? 0 : 1;  // merged into an occupied first cell
    else  // mark at 1
      r.mark = m.v.contains(2) ? 0 : 1;
  }
  if (r.mark != 0 && !r.v.contains(r.mark))
    throw std::logic_error("marked_step: mark escaped the vertex");
  return r;
}

SigmaMap SigmaMap::identity(std::int64_t l) {
  check_vertex_l(l);
  SigmaMap s;
  for (std::int64_t i = 1; i <= l; ++i) s.img.push_back(i);
  return s;
}

Vertex SigmaMap::image_set() const {
  Vertex v{l(), 0};
  for (std::int64_t i : img) v.bits |= std::uint32_t{1} << (i - 1);
  return v;
}

SigmaMap sigma_of(const Word& m, std::int64_t l) {
  SigmaMap s = SigmaMap::identity(l);
  for (char c : m.letters) {
    for (auto& i : s.img) {
      if (c == 'A')
        i = i == 1 ? 1 : i - 1;
      else
        i = i == 1 ? l : i - 1;
    }
  }
  return s;
}

std::vector<Vertex> path_of(const Word& m, std::int64_t l) {
  std::vector<Vertex> path{Vertex::top(l)};
  for (char c : m.letters) path.push_back(graph_step(path.back(), c));
  return path;
}

bool is_good(const Word& m, std::int64_t l) {
  std::int64_t n = m.degree();
  for (std::int64_t i = 1; i + l - 1 <= n; ++i)
    if (m.at(i) == 'A' && m.at(i + l - 1) == 'B') return false;
  return true;
}

std::vector<Word> good_classes_upto(std::int64_t l, std::int64_t maxdeg) {
  std::vector<Word> out;
  for (const auto& w : canonical_words_upto(maxdeg))
    if (is_good(w, l)) out.push_back(w);
  return out;
}

Classification classify(const Word& m, std::int64_t l) {
  if (!m.is_canonical()) throw std::invalid_argument("classify: word not canonical");
  if (!is_good(m, l)) throw std::invalid_argument("classify: word is not good");

  Classification out;
  out.extended = m.extended(l);
  MarkedVertex state{Vertex::top(l), l};
  out.marked_path.push_back(state);

  bool saw_marked_first = false;
  for (std::int64_t i = 1; i <= out.extended.degree(); ++i) {
    char c = out.extended.at(i);
    if (state.mark == 1) {
      saw_marked_first = true;
      if (state.v.contains(2)) {  // arrow types (i) and (ii)
        out.cls = c == 'A' ? GoodClass::A : GoodClass::B;
        out.index = i;
      } else if (c == 'B') {
        throw std::logic_error("classify: case (iv) reached on a good word");
      }
    }
    state = marked_step(state, c);
    out.marked_path.push_back(state);
  }

  bool am_good = is_good(Word("A" + m.letters), l);
  if (am_good != (out.index == 0) || am_good != !saw_marked_first)
    throw std::logic_error("classify: marked path disagrees with goodness of AM");
  if (am_good) out.cls = GoodClass::G;
  return out;
}

Word cancellation_partner(const Word& m, std::int64_t l) {
  Classification c = classify(m, l);
  if (c.cls == GoodClass::G)
    throw std::domain_error("cancellation_partner: word has no cancellation arrow");
  Word w = c.extended;
  w.letters[static_cast<std::size_t>(c.index - 1)] =
      c.cls == GoodClass::A ? 'B' : 'A';
  return w.canonical();
}

CancellationPair cancellation_pair(const Word& m, std::int64_t l) {
  Classification c = classify(m, l);
  if (c.cls != GoodClass::A)
    throw std::domain_error("cancellation_pair: expected a word with a cancellation A-arrow");
  CancellationPair p;
  p.n = Word(c.extended.letters.substr(0, static_cast<std::size_t>(c.index - 1)));
  p.k = Word(c.extended.letters.substr(static_cast<std::size_t>(c.index))).canonical();
  p.nak = (p.n + Word("A") + p.k).canonical();
  p.nbk = (p.n + Word("B") + p.k).canonical();
  if (!(p.nak == m))
    throw std::logic_error("cancellation_pair: N A K does not reproduce the word");
  return p;
}

bool verify_cancellation(const Word& m, const BoundaryVector& bv, const Window& w) {
  CancellationPair p = cancellation_pair(m, bv.l);
  SimpleVector vinf = v_infinity(bv.l, w);
  Word wa = Word("A") + p.n + Word("A") + p.k;
  Word wb = Word("A") + p.n + Word("B") + p.k;
  Series sum = add(eval_at_boundary(apply_word(wa, vinf), bv, w),
                   eval_at_boundary(apply_word(wb, vinf), bv, w));
  if (!sum.window().covers(Window::box(w.q_max, w.z_max)))
    throw std::logic_error("verify_cancellation: window not certified");
  return equal_on(sum, Series::zero(w), w);
}

std::vector<Block> decompose_blocks(const Word& bn, std::int64_t l) {
  std::vector<Block> out;
  const std::string& s = bn.letters;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::domain_error("decompose_blocks: " + why + " at offset " +
                            std::to_string(pos));
  };
  while (pos < s.size()) {
    if (s[pos] != 'B') fail("block must start with B");
    std::int64_t run = 0;
    while (pos + 1 + static_cast<std::size_t>(run) < s.size() &&
           s[pos + 1 + static_cast<std::size_t>(run)] == 'A')
      ++run;
    if (run > l - 2) fail("A-run after the head exceeds l-2");
    std::int64_t v = run;
    // block = B A^v B C_{v+3}..C_{l-1} B A^v, degree l+v
    std::int64_t len = l + v;
    if (pos + static_cast<std::size_t>(len) > s.size()) fail("truncated block");
    auto at = [&](std::int64_t j) { return s[pos + static_cast<std::size_t>(j - 1)]; };
    for (std::int64_t j = 2; j <= v + 1; ++j)
      if (at(j) != 'A') fail("expected A-run after the head");
    if (at(v + 2) != 'B') fail("expected B at position s+2");
    if (at(l) != 'B') fail("expected B at position l");
    for (std::int64_t j = l + 1; j <= l + v; ++j)
      if (at(j) != 'A') fail("expected trailing A-run");
    out.push_back(Block{v, Word(s.substr(pos, static_cast<std::size_t>(len)))});
    pos += static_cast<std::size_t>(len);
  }
  if (out.empty()) throw std::domain_error("decompose_blocks: empty input");
  return out;
}

bool check_condition_Cs(const SimpleVector& v, const SimpleVector& vp,
                        std::int64_t s) {
  std::int64_t l = v.l();
  if (vp.l() != l) throw std::invalid_argument("check_condition_Cs: rank mismatch");
  if (s < 0 || s > l - 2)
    throw std::invalid_argument("check_condition_Cs: need 0 <= s <= l-2");
  for (std::int64_t j = 2; j <= l; ++j)  // (C1)_s
    if (!(v.vpart[static_cast<std::size_t>(j - 1)] ==
          vp.vpart[static_cast<std::size_t>(j - 1)]))
      return false;
  Monomial2 lhs = v.vpart[0] / v.vpart[1];  // (C2)_s
  Monomial2 rhs = Monomial2{0, 1} * vp.vpart[static_cast<std::size_t>(l - 1)] /
                  vp.vpart[0];
  if (!(lhs == rhs)) return false;
  for (std::int64_t j = l - s; j <= l; ++j)  // (C3)_s
    if (!(v.vpart[static_cast<std::size_t>(j - 1)] ==
          v.vpart[static_cast<std::size_t>(l - 1)]))
      return false;
  return true;
}

}  // namespace klc
