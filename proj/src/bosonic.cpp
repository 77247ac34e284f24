#include "klc/bosonic.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace klc {

namespace {

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// I: Z>=0 -> [1,l] with I(0) = 1, I(1..r) the sorted subset, period r+1.
struct CyclicIndex {
  std::vector<std::int64_t> vals;  // size r+1, vals[0] = 1

  explicit CyclicIndex(const std::vector<std::int64_t>& subset) {
    vals.push_back(1);
    vals.insert(vals.end(), subset.begin(), subset.end());
    std::sort(vals.begin() + 1, vals.end());
  }
  std::int64_t r() const { return static_cast<std::int64_t>(vals.size()) - 1; }
  std::int64_t operator()(std::int64_t x) const {
    return vals[static_cast<std::size_t>(x % (r() + 1))];
  }
  std::int64_t star(std::int64_t j) const {  // max i with vals[i] <= j
    std::int64_t best = -1;
    for (std::int64_t i = 0; i <= r(); ++i)
      if (vals[static_cast<std::size_t>(i)] <= j) best = i;
    if (best < 0) throw std::logic_error("CyclicIndex::star: j below 1");
    return best;
  }
};

std::int64_t omega_r(const CyclicIndex& idx, std::int64_t n, std::int64_t i,
                     std::int64_t l) {
  std::int64_t r = idx.r();
  std::int64_t mm = floordiv(i + n, r + 1);
  std::int64_t s1 = 0;
  for (std::int64_t s = 1; s <= n; ++s) s1 += idx(i + s) - 2;
  return s1 + n * (n - 1) * (l - 1) / 2 + mm -
         (l - 1) * ((r - i) * mm + mm * (mm - 1) * (r + 1) / 2);
}

std::int64_t rho_r(std::int64_t r, std::int64_t n, std::int64_t i) {
  return n - floordiv(i + n, r + 1);
}

}  // namespace

void GoodParam::validate() const {
  if (l < 2) throw std::invalid_argument("GoodParam: need l >= 2");
  if (sigma.size() != static_cast<std::size_t>(l) ||
      n.size() != static_cast<std::size_t>(l - 1))
    throw std::invalid_argument("GoodParam: wrong component sizes");
  std::vector<bool> seen(static_cast<std::size_t>(l + 1), false);
  for (std::int64_t v : sigma) {
    if (v < 1 || v > l || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("GoodParam: sigma is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (sigma.front() != l || sigma.back() != 1)
    throw std::invalid_argument("GoodParam: need sigma(1) = l and sigma(l) = 1");
  for (std::int64_t i = 1; i <= l - 2; ++i)
    if (n[static_cast<std::size_t>(i - 1)] < 0)
      throw std::invalid_argument("GoodParam: n_i < 0");
  if (n.back() < 2 - sigma[static_cast<std::size_t>(l - 2)])
    throw std::invalid_argument("GoodParam: n_{l-1} below 2 - sigma(l-1)");
  for (std::int64_t i = 1; i <= l - 2; ++i)
    if (sigma[static_cast<std::size_t>(i - 1)] < sigma[static_cast<std::size_t>(i)] &&
        n[static_cast<std::size_t>(i - 1)] <= 0)
      throw std::invalid_argument("GoodParam: n_i must be positive at an ascent");
}

std::int64_t GoodParam::word_degree() const {
  std::int64_t s = 0;
  for (std::int64_t a = 1; a <= l - 2; ++a) s += n[static_cast<std::size_t>(a - 1)];
  return (l - 1) * s + n.back();
}

namespace {

// E_i = C_2...C_l with C_j = B exactly for j in {sigma(1),...,sigma(i)}.
std::string e_block(const GoodParam& p, std::int64_t i) {
  std::set<std::int64_t> bset(p.sigma.begin(), p.sigma.begin() + i);
  std::string s;
  for (std::int64_t j = 2; j <= p.l; ++j) s += bset.count(j) ? 'B' : 'A';
  return s;
}

}  // namespace

Word param_to_word(const GoodParam& p) {
  p.validate();
  std::string tail;
  for (std::int64_t i = p.l - 2; i >= 1; --i) {
    std::string e = e_block(p, i);
    for (std::int64_t rep = 0; rep < p.n[static_cast<std::size_t>(i - 1)]; ++rep)
      tail += e;
  }
  std::int64_t nl1 = p.n.back();
  std::string word;
  if (nl1 >= 0) {
    word = std::string(static_cast<std::size_t>(nl1), 'B') + tail;
  } else {
    if (static_cast<std::int64_t>(tail.size()) < -nl1)
      throw std::invalid_argument("param_to_word: cannot trim below the word");
    for (std::int64_t i = 0; i < -nl1; ++i)
      if (tail[static_cast<std::size_t>(i)] != 'B')
        throw std::logic_error("param_to_word: trimmed letters must be B");
    word = tail.substr(static_cast<std::size_t>(-nl1));
  }
  Word m(word);
  if (!m.is_canonical() || !is_good(m, p.l))
    throw std::logic_error("param_to_word: produced a non-good word");
  return m;
}

GoodParam word_to_param(const Word& m, std::int64_t l) {
  if (!m.is_canonical())
    throw std::invalid_argument("word_to_param: word not canonical");
  if (!is_good(m, l)) throw std::invalid_argument("word_to_param: word not good");

  const std::string mp = std::string(static_cast<std::size_t>(l - 1), 'B') + m.letters;
  // Chunk D_1, D_2, ... of length l-1 from the right while they contain an A.
  std::vector<std::string> chunks;
  std::size_t end = mp.size();
  while (end >= static_cast<std::size_t>(l - 1)) {
    std::string chunk = mp.substr(end - static_cast<std::size_t>(l - 1),
                                  static_cast<std::size_t>(l - 1));
    if (chunk.find('A') == std::string::npos) break;
    chunks.push_back(chunk);
    end -= static_cast<std::size_t>(l - 1);
  }
  for (std::size_t i = 0; i < end; ++i)
    if (mp[i] != 'B')
      throw std::logic_error("word_to_param: prefix after chunking is not all B");
  std::int64_t mhead = static_cast<std::int64_t>(end);

  // New-B scan, right to left: chunk s vs chunk s-1, then the all-B D_{t+1}.
  GoodParam p;
  p.l = l;
  auto scan_chunk = [&](const std::string& cur, const std::string* prev) {
    for (std::int64_t j = l; j >= 2; --j) {
      std::size_t idx = static_cast<std::size_t>(j - 2);
      if (cur[idx] == 'B' && (!prev || (*prev)[idx] == 'A'))
        p.sigma.push_back(j);
    }
  };
  for (std::size_t s = 0; s < chunks.size(); ++s)
    scan_chunk(chunks[s], s == 0 ? nullptr : &chunks[s - 1]);
  std::string all_b(static_cast<std::size_t>(l - 1), 'B');
  scan_chunk(all_b, chunks.empty() ? nullptr : &chunks.back());
  p.sigma.push_back(1);
  if (p.sigma.size() != static_cast<std::size_t>(l) || p.sigma.front() != l)
    throw std::logic_error("word_to_param: new-B scan did not yield a permutation");

  // Each chunk with i B's must be E_i; n_i counts them.
  p.n.assign(static_cast<std::size_t>(l - 1), 0);
  std::int64_t prev_i = 0;
  for (const auto& chunk : chunks) {
    std::int64_t i = static_cast<std::int64_t>(
        std::count(chunk.begin(), chunk.end(), 'B'));
    if (i < prev_i)
      throw std::logic_error("word_to_param: B-counts not monotone across chunks");
    prev_i = i;
    if (chunk != e_block(p, i))
      throw std::logic_error("word_to_param: chunk is not the expected E block");
    p.n[static_cast<std::size_t>(i - 1)] += 1;
  }
  p.n.back() = mhead - (l - 1);
  p.validate();
  return p;
}

std::vector<Monomial2> closed_vector_part(const GoodParam& p) {
  p.validate();
  const std::int64_t l = p.l;
  const std::int64_t nl1 = p.n.back();

  std::vector<CyclicIndex> idx;  // idx[a-1] = I_a for a = 1..l-2
  for (std::int64_t a = 1; a <= l - 2; ++a)
    idx.emplace_back(std::vector<std::int64_t>(p.sigma.begin(), p.sigma.begin() + a));

  std::vector<Monomial2> out;
  for (std::int64_t i = 1; i <= l; ++i) {
    std::int64_t d = i - nl1;
    std::int64_t j = ((d - 1) % l + l) % l + 1;
    std::int64_t mm = (d - j) / l;

    // the nested index chain i_{l-2}, ..., i_1
    std::vector<std::int64_t> ia(static_cast<std::size_t>(std::max<std::int64_t>(l - 2, 0)), 0);
    for (std::int64_t a = l - 2; a >= 1; --a) {
      const CyclicIndex& I = idx[static_cast<std::size_t>(a - 1)];
      if (a == l - 2) {
        ia[static_cast<std::size_t>(a - 1)] = I.star(j);
      } else {
        const CyclicIndex& up = idx[static_cast<std::size_t>(a)];
        std::int64_t prev = ia[static_cast<std::size_t>(a)];
        ia[static_cast<std::size_t>(a - 1)] =
            I.star(up(prev + p.n[static_cast<std::size_t>(a)]));
      }
    }

    std::int64_t omega = mm * (mm + 1) * l / 2 + (1 - i) * mm;
    std::int64_t rho = -mm;
    std::int64_t rho_sum = 0;
    for (std::int64_t a = 1; a <= l - 2; ++a) {
      std::int64_t na = p.n[static_cast<std::size_t>(a - 1)];
      std::int64_t iv = ia[static_cast<std::size_t>(a - 1)];
      omega += omega_r(idx[static_cast<std::size_t>(a - 1)], na, iv, l);
      std::int64_t ra = rho_r(a, na, iv);
      rho += ra;
      rho_sum += ra;
      // cross terms (l-1) * sum_{a<b} n_b rho_a
      for (std::int64_t b = a + 1; b <= l - 2; ++b)
        omega += (l - 1) * p.n[static_cast<std::size_t>(b - 1)] * ra;
    }
    omega += nl1 * rho_sum;
    out.push_back({omega, rho});
  }
  return out;
}

BlockData color_blocks(const Word& m, std::int64_t l) {
  if (!m.is_canonical())
    throw std::invalid_argument("color_blocks: word not canonical");
  if (!is_good(m, l)) throw std::invalid_argument("color_blocks: word not good");
  BlockData bd;
  bd.l = l;
  bd.n = m.degree();
  if (m.empty()) return bd;

  for (std::int64_t i = 1; i <= bd.n; ++i)
    if (m.at(i) == 'B') bd.bpos.push_back(i);
  bd.lead = bd.bpos.front() - 1;

  // block lengths (maximal B A..A), plus the virtual head covering lead A's
  for (std::size_t bi = 0; bi < bd.bpos.size(); ++bi) {
    std::int64_t head = bd.bpos[bi];
    std::int64_t next = bi + 1 < bd.bpos.size() ? bd.bpos[bi + 1] : bd.n + 1;
    bd.r[head] = next - head;
    if (bd.r[head] > l - 1)
      throw std::logic_error("color_blocks: block longer than l-1 in a good word");
  }
  if (bd.lead > 0) bd.r[0] = bd.lead + 1;

  // coloring, right to left; heads processed in descending position
  std::vector<std::int64_t> heads(bd.bpos.rbegin(), bd.bpos.rend());
  if (bd.lead > 0) heads.push_back(0);
  std::int64_t maxc = 0;
  for (std::int64_t head : heads) {
    if (head == bd.bpos.back()) {
      bd.c[head] = 1;
    } else {
      std::int64_t i1 = head + bd.r.at(head);
      std::int64_t probe = i1 + l - 1;
      if (probe > bd.n || m.at(probe) == 'A')
        bd.c[head] = maxc + 1;
      else
        bd.c[head] = bd.c.at(probe);
    }
    maxc = std::max(maxc, bd.c[head]);
  }
  bd.colors = maxc;

  // real-block aggregates by color
  bd.t.assign(static_cast<std::size_t>(maxc + 1), 0);
  bd.m.assign(static_cast<std::size_t>(maxc + 1), 0);
  bd.mu.assign(static_cast<std::size_t>(maxc + 1), 0);
  for (std::int64_t head : bd.bpos) {
    std::size_t col = static_cast<std::size_t>(bd.c.at(head));
    bd.t[col] += bd.r.at(head);
    bd.m[col] += 1;
    bd.mu[col] += bd.n - head + 1;
  }

  // lambda
  for (std::int64_t head : heads) {
    std::int64_t col = bd.c.at(head), acc = 0;
    if (col == 1) {
      for (std::int64_t j : bd.bpos)
        if (j > head && bd.c.at(j) != 1) acc += bd.r.at(j);
    } else {
      acc = head == 0 ? bd.r.at(0) : 0;
      for (std::int64_t j : bd.bpos)
        if (j >= head && bd.c.at(j) == col) acc += bd.r.at(j);
    }
    bd.lambda[head] = acc;
  }
  return bd;
}

std::string BlockData::colored_string() const {
  std::string s;
  std::size_t bi = 0;
  for (std::int64_t pos = 1; pos <= n; ++pos) {
    if (bi < bpos.size() && pos == bpos[bi]) {
      s += "B" + std::to_string(c.at(pos));
      ++bi;
    } else {
      s += "A";
    }
  }
  return s;
}

std::int64_t ClosedTerm::tsum() const {
  return std::accumulate(t.begin(), t.end(), std::int64_t{0});
}

ClosedTerm closed_scalar(const Word& m, std::int64_t l) {
  ClosedTerm ct;
  ct.l = l;
  ct.t.assign(static_cast<std::size_t>(l - 1), 0);
  if (m.empty()) return ct;  // the v_inf term: 1/(z)_inf

  BlockData bd = color_blocks(m, l);
  const std::int64_t n = bd.n;

  // owner[i] = block head containing position i (0 = virtual)
  std::vector<std::int64_t> owner(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t head : bd.bpos)
    for (std::int64_t i = head; i < head + bd.r.at(head); ++i)
      owner[static_cast<std::size_t>(i)] = head;

  // Collect the per-letter factors f_i / S(f_{i+1}) at shift S^{i-1}:
  //   B, color 1:   -q^{lambda+i-1} z / (1 - q^{lambda+i-1} z)
  //   A, color 1:    1 / (1 - q^{lambda+i-1} z)
  //   B, color c!=1: 1 / (1 - q^{lambda})
  //   A, color c!=1: -q^{lambda-(i-head)} / (1 - q^{lambda-(i-head)})
  std::multiset<std::int64_t> zexp;
  std::map<std::int64_t, std::multiset<std::int64_t>> qexp;  // by color
  for (std::int64_t i = 1; i <= n; ++i) {
    std::int64_t head = owner[static_cast<std::size_t>(i)];
    std::int64_t col = bd.c.at(head), lam = bd.lambda.at(head);
    bool is_b = m.at(i) == 'B';
    if (col == 1) {
      zexp.insert(lam + i - 1);
      if (is_b) {
        ct.alpha += 1;
        ct.beta_bar += lam + i - 1;
        ct.m1 += 1;
      }
    } else {
      std::int64_t x = is_b ? lam : lam - (i - head);
      if (x <= 0)
        throw std::logic_error("closed_scalar: nonpositive q-factor exponent");
      qexp[col].insert(x);
      if (!is_b) {
        ct.alpha += 1;
        ct.beta_bar += x;
      }
    }
  }

  // The q-factors of color c must form (q)_{t_c}: exponents exactly 1..size.
  if (bd.colors > l)
    throw std::logic_error("closed_scalar: more than l block colors");
  for (auto& [col, exps] : qexp) {
    std::int64_t want = 1;
    for (std::int64_t e : exps)
      if (e != want++)
        throw std::logic_error("closed_scalar: q-factors do not telescope to (q)_t");
    ct.t[static_cast<std::size_t>(col - 2)] =
        static_cast<std::int64_t>(exps.size());
  }
  // The z-factors together with S^n(1/(z)_inf) must form 1/(q^T z)_inf.
  std::int64_t want = ct.tsum();
  for (std::int64_t e : zexp)
    if (e != want++)
      throw std::logic_error("closed_scalar: z-factors do not telescope to (q^T z)_inf");
  if (want != n)
    throw std::logic_error("closed_scalar: z-factor run does not reach q^n");
  return ct;
}

ClosedTerm closed_term(const GoodParam& p) {
  ClosedTerm ct = closed_scalar(param_to_word(p), p.l);
  ct.vpart = closed_vector_part(p);
  return ct;
}

Series closed_scalar_series(const ClosedTerm& t, const Window& w) {
  Window caps = Window::box(std::max<std::int64_t>(w.q_max, 0),
                            std::max<std::int64_t>(w.z_max, 0));
  Series s = Series::one(caps);
  for (std::int64_t tc : t.t)
    if (tc > 0) s = mul(s, inv_pochhammer({1, 0}, tc, caps));
  s = mul(s, inv_pochhammer_inf({t.tsum(), 1}, caps));
  s = mul_monomial(s, {t.beta_bar, t.m1});
  return mul_int(s, t.sign());
}

namespace {

// Shrink the upper corner to at most w's; lower corners stay honest.
Series truncate_upper(const Series& s, const Window& w) {
  const Window& sw = s.window();
  Window out{std::min(sw.q_min, w.q_max), std::min(sw.q_max, w.q_max),
             std::min(sw.z_min, w.z_max), std::min(sw.z_max, w.z_max)};
  return s.restricted(out);
}

}  // namespace

TermSeries closed_term_series(const GoodParam& p, const BoundaryVector& bv,
                              const Window& w) {
  if (bv.l != p.l) throw std::invalid_argument("closed_term_series: rank mismatch");
  ClosedTerm ct = closed_term(p);
  auto e = bv.exponents();
  Monomial2 vshift{};
  for (std::size_t i = 0; i < e.size(); ++i)
    vshift = vshift * ct.vpart[i].pow(e[i]);
  Monomial2 shift{ct.beta_bar + vshift.a, ct.m1 + vshift.n};

  // Expand on caps enlarged by the negative part of the shift so the shifted
  // window still covers w.
  Window caps = Window::box(w.q_max - std::min<std::int64_t>(0, shift.a),
                            w.z_max - std::min<std::int64_t>(0, shift.n));
  Series s = Series::one(caps);
  for (std::int64_t tc : ct.t)
    if (tc > 0) s = mul(s, inv_pochhammer({1, 0}, tc, caps));
  s = mul(s, inv_pochhammer_inf({ct.tsum(), 1}, caps));
  s = mul_monomial(s, shift);
  s = mul_int(s, ct.sign());
  return {truncate_upper(s, w), shift};
}

std::vector<GoodParam> params_upto(std::int64_t l, std::int64_t maxdeg) {
  if (l < 2) throw std::invalid_argument("params_upto: need l >= 2");
  std::vector<GoodParam> out;

  std::vector<std::int64_t> middle;
  for (std::int64_t v = 2; v <= l - 1; ++v) middle.push_back(v);
  std::sort(middle.begin(), middle.end());
  do {
    GoodParam base;
    base.l = l;
    base.sigma.push_back(l);
    base.sigma.insert(base.sigma.end(), middle.begin(), middle.end());
    base.sigma.push_back(1);

    std::vector<std::int64_t> n(static_cast<std::size_t>(l - 1), 0);
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t a,
                                                              std::int64_t used) {
      if (a == l - 1) {
        std::int64_t lo = 2 - base.sigma[static_cast<std::size_t>(l - 2)];
        for (std::int64_t v = lo; (l - 1) * used + v <= maxdeg; ++v) {
          n[static_cast<std::size_t>(l - 2)] = v;
          GoodParam p = base;
          p.n = n;
          try {
            p.validate();
          } catch (const std::invalid_argument&) {
            continue;
          }
          if (p.word_degree() >= 0) out.push_back(std::move(p));
        }
        return;
      }
      for (std::int64_t v = 0; (l - 1) * (used + v) <= maxdeg + (l - 2); ++v) {
        n[static_cast<std::size_t>(a - 1)] = v;
        rec(a + 1, used + v);
      }
    };
    rec(1, 0);
  } while (std::next_permutation(middle.begin(), middle.end()));

  if (out.size() > 2000000)
    throw std::runtime_error("params_upto: parameter lattice unexpectedly large (" +
                             std::to_string(out.size()) + " points)");
  return out;
}

namespace {

// The character is a power series; after a certified summation the stored
// support below (0,0) must have cancelled.  Verify and raise the corner.
Series floor_to_box(const Series& s, const Window& box) {
  if (s.window().q_max < box.q_max || s.window().z_max < box.z_max)
    throw std::logic_error("floor_to_box: window does not cover the target box");
  Series r(box);
  for (const auto& [key, v] : s.terms()) {
    auto [zn, qa] = key;
    if (zn < box.z_min || (zn <= box.z_max && qa < box.q_min))
      throw std::logic_error(
          "floor_to_box: uncancelled support below the character window");
    if (box.contains(qa, zn)) r.set(qa, zn, v);
  }
  return r;
}

std::int64_t thread_count() {
  const char* env = std::getenv("KLC_THREADS");
  if (!env) return 1;
  std::int64_t v = std::atol(env);
  return v < 1 ? 1 : std::min<std::int64_t>(v, 64);
}

}  // namespace

Series char_bosonic(const BoundaryVector& bv, const Window& w) {
  if (w.q_min != 0 || w.z_min != 0)
    throw std::invalid_argument("char_bosonic: window must start at q=z=0");
  Window box = Window::box(w.q_max, w.z_max);
  auto params = params_upto(bv.l, w.q_max + bv.l);

  std::int64_t nthreads =
      std::min<std::int64_t>(thread_count(), static_cast<std::int64_t>(params.size()));
  if (nthreads <= 1) {
    Series acc(box);
    for (const auto& p : params)
      acc = add(acc, closed_term_series(p, bv, w).series);
    return floor_to_box(acc, box);
  }

  std::vector<Series> partial(static_cast<std::size_t>(nthreads), Series(box));
  std::vector<std::thread> pool;
  for (std::int64_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      Series local(box);
      for (std::size_t i = static_cast<std::size_t>(t); i < params.size();
           i += static_cast<std::size_t>(nthreads))
        local = add(local, closed_term_series(params[i], bv, w).series);
      partial[static_cast<std::size_t>(t)] = std::move(local);
    });
  }
  for (auto& th : pool) th.join();
  Series acc(box);
  for (const auto& part : partial) acc = add(acc, part);
  return floor_to_box(acc, box);
}

Series char_l2_closed(std::int64_t k, std::int64_t b0, const Window& w) {
  if (k < 1 || b0 < 0 || b0 > k)
    throw std::invalid_argument("char_l2_closed: need 0 <= b0 <= k");
  if (w.q_min != 0 || w.z_min != 0)
    throw std::invalid_argument("char_l2_closed: window must start at q=z=0");
  Window box = Window::box(w.q_max, w.z_max);
  Series acc(box);
  // terms of word degree 2n (+1) are invisible beyond q_max + 2
  for (std::int64_t n = 0; 2 * n <= w.q_max + 2; ++n) {
    Window caps = box;
    Series den = mul(inv_pochhammer({1, 0}, n, caps),
                     inv_pochhammer_inf({n, 1}, caps));
    {
      // (-1)^n q^{n^2 k - n b0 + n(3n-1)/2} z^{nk+n} / ((q)_n (q^n z)_inf)
      Monomial2 s{n * n * k - n * b0 + n * (3 * n - 1) / 2, n * k + n};
      Series t = mul_int(mul_monomial(den, s), n % 2 == 0 ? 1 : -1);
      acc = add(acc, truncate_upper(t, box));
    }
    if (2 * n + 1 <= w.q_max + 2) {
      // (-1)^{n+1} q^{n^2 k + n b0 + 3n(n+1)/2} z^{nk+b0+n+1} / (same)
      Monomial2 s{n * n * k + n * b0 + 3 * n * (n + 1) / 2, n * k + b0 + n + 1};
      Series t = mul_int(mul_monomial(den, s), n % 2 == 0 ? -1 : 1);
      acc = add(acc, truncate_upper(t, box));
    }
  }
  return floor_to_box(acc, box);
}

Series char_l3_closed(std::int64_t k, std::int64_t b0, std::int64_t b1,
                      const Window& w) {
  if (k < 1 || b0 < 0 || b0 > b1 || b1 > k)
    throw std::invalid_argument("char_l3_closed: need 0 <= b0 <= b1 <= k");
  if (w.q_min != 0 || w.z_min != 0)
    throw std::invalid_argument("char_l3_closed: window must start at q=z=0");
  Window box = Window::box(w.q_max, w.z_max);
  Series acc(box);

  // f_{m', n'} = B^{m'} (AB)^{n'} v_inf, summed over word degree <= q_max + 3.
  for (std::int64_t mp = 0; mp <= w.q_max + 3; ++mp)
    for (std::int64_t np = 0; mp + 2 * np <= w.q_max + 3; ++np) {
      std::int64_t j = mp % 3, m = mp / 3;
      bool odd = np % 2 == 1;
      std::int64_t n = odd ? (np + 1) / 2 : np / 2;

      // doubled q-exponent of g_{m,n} and its z-exponent
      std::int64_t g2 = (3 * k + 5) * m * m + 2 * (3 * k + 5) * m * n +
                        4 * (k + 2) * n * n;
      std::int64_t gz = (k + 1) * (m + n);

      std::int64_t sign, pref2, prefz = 0, d2, tinf;
      Monomial2 p2, p3;  // bracket entries (P_1 = 1)
      if (j == 0 && odd) {
        sign = m;
        pref2 = -3 * (k + 1) * m - 2 * (k + 2) * n;
        d2 = m + 2 * n - 1;
        tinf = 2 * m + 2 * n - 1;
        p2 = {m, 0};
        p3 = {-m - 2 * n + 1, -1};
      } else if (j == 0 && !odd) {
        sign = m;
        pref2 = -(3 * k + 1) * m - 2 * k * n;
        d2 = m + 2 * n;
        tinf = 2 * m + 2 * n;
        p2 = {m, 0};
        p3 = {2 * m + 2 * n, 0};
      } else if (j == 1 && odd) {
        sign = m;
        pref2 = -(3 * k + 1) * m - 2 * (2 * k + 1) * n;
        d2 = m + 2 * n;
        tinf = 2 * m + 2 * n;
        p2 = {m + 2 * n, 0};
        p3 = {2 * m + 2 * n, 0};
      } else if (j == 1 && !odd) {
        sign = m + 1;
        pref2 = (3 * k + 5) * m + 2 * (2 * k + 3) * n;
        prefz = k + 1;
        d2 = m + 2 * n;
        tinf = 2 * m + 2 * n;
        p2 = {-2 * m - 2 * n, -1};
        p3 = {-m - 2 * n, -1};
      } else if (j == 2 && odd) {
        sign = m + 1;
        pref2 = (3 * k + 5) * m + 2 * (k + 2) * n;
        prefz = k + 1;
        d2 = m + 2 * n;
        tinf = 2 * m + 2 * n;
        p2 = {-2 * m - 2 * n, -1};
        p3 = {-m, -1};
      } else {  // j == 2, even
        sign = m + 1;
        pref2 = (3 * k + 7) * m + 2 * (k + 4) * n + 2;
        prefz = k + 1;
        d2 = m + 2 * n + 1;
        tinf = 2 * m + 2 * n + 1;
        p2 = {m + 2 * n + 1, 0};
        p3 = {-m, -1};
      }

      Monomial2 bracket = p2.pow(b1 - b0) * p3.pow(k - b1);
      std::int64_t q2 = pref2 + g2 + 2 * bracket.a;
      if (q2 % 2 != 0)
        throw std::logic_error("char_l3_closed: non-integer combined q-exponent");
      Monomial2 shift{q2 / 2, prefz + gz + bracket.n};

      Window caps = Window::box(w.q_max - std::min<std::int64_t>(0, shift.a),
                                w.z_max - std::min<std::int64_t>(0, shift.n));
      Series den = mul(inv_pochhammer({1, 0}, m, caps),
                       mul(inv_pochhammer({1, 0}, d2, caps),
                           inv_pochhammer_inf({tinf, 1}, caps)));
      Series t = mul_int(mul_monomial(den, shift), sign % 2 == 0 ? 1 : -1);
      acc = add(acc, truncate_upper(t, box));
    }
  return floor_to_box(acc, box);
}

std::string SigmaIndependenceReport::text() const {
  std::string s;
  for (const auto& line : lines) s += line + "\n";
  return s;
}

SigmaIndependenceReport sigma_independence_report(std::int64_t l,
                                                  std::int64_t samples) {
  if (l < 2) throw std::invalid_argument("sigma_independence_report: l >= 2");
  SigmaIndependenceReport rep;
  std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(l);
  auto pick = [&](std::int64_t range) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::int64_t>(state >> 33) % range;
  };
  auto note = [&](bool ok, const std::string& what) {
    rep.ok = rep.ok && ok;
    rep.lines.push_back(std::string(ok ? "ok:   " : "FAIL: ") + what);
  };

  // every sigma with sigma(1)=l, sigma(l)=1
  std::vector<std::vector<std::int64_t>> sigmas;
  std::vector<std::int64_t> middle;
  for (std::int64_t v = 2; v <= l - 1; ++v) middle.push_back(v);
  do {
    std::vector<std::int64_t> s{l};
    s.insert(s.end(), middle.begin(), middle.end());
    s.push_back(1);
    sigmas.push_back(s);
  } while (std::next_permutation(middle.begin(), middle.end()));

  auto step_of = [&](std::int64_t a) { return a <= l - 2 ? a + 1 : l; };

  auto make_param = [&](const std::vector<std::int64_t>& sigma,
                        const std::vector<std::int64_t>& n) {
    GoodParam p;
    p.l = l;
    p.sigma = sigma;
    p.n = n;
    p.validate();
    return p;
  };

  bool rho_ok = true, omega_ok = true, deg_ok = true, mc_ok = true, tc_ok = true;
  bool beta_ok = true;
  for (std::int64_t s = 0; s < samples; ++s) {
    std::vector<std::int64_t> base(static_cast<std::size_t>(l - 1), 0);
    for (auto& v : base) v = 1 + pick(3);

    std::vector<std::vector<std::int64_t>> beta_diffs_by_sigma;
    for (const auto& sigma : sigmas) {
      auto rho_of = [&](const std::vector<std::int64_t>& n, std::int64_t i) {
        return closed_vector_part(make_param(sigma, n))[static_cast<std::size_t>(i - 1)].n;
      };
      auto omega_of = [&](const std::vector<std::int64_t>& n, std::int64_t i) {
        return closed_vector_part(make_param(sigma, n))[static_cast<std::size_t>(i - 1)].a;
      };

      for (std::int64_t i = 1; i <= l; ++i) {
        // rho linear part: slope a/(a+1) over period a+1, 1/l over period l
        for (std::int64_t a = 1; a <= l - 1; ++a) {
          auto n1 = base;
          n1[static_cast<std::size_t>(a - 1)] += step_of(a);
          std::int64_t got = rho_of(n1, i) - rho_of(base, i);
          std::int64_t want = a <= l - 2 ? a : 1;
          rho_ok = rho_ok && got == want;
        }
        // omega quadratic part via second differences over full periods
        for (std::int64_t a = 1; a <= l - 1; ++a)
          for (std::int64_t b = a; b <= l - 1; ++b) {
            std::int64_t pa = step_of(a), pb = step_of(b);
            auto na = base, nb = base, nab = base;
            na[static_cast<std::size_t>(a - 1)] += pa;
            nb[static_cast<std::size_t>(b - 1)] += pb;
            nab[static_cast<std::size_t>(a - 1)] += pa;
            nab[static_cast<std::size_t>(b - 1)] += pb;
            std::int64_t got = omega_of(nab, i) - omega_of(na, i) -
                               omega_of(nb, i) + omega_of(base, i);
            std::int64_t want;
            if (a == b && a <= l - 2)
              want = (l - 1) * a * (a + 1);
            else if (a == b)
              want = l;
            else if (b <= l - 2)
              want = (b + 1) * (l - 1) * a;
            else
              want = l * a;
            omega_ok = omega_ok && got == want;
          }
      }

      // degree identity and m_c / t_c linear parts from the colored word
      GoodParam pb = make_param(sigma, base);
      std::int64_t degree_sum = pb.n.back();
      for (std::int64_t a = 1; a <= l - 2; ++a)
        degree_sum += (l - 1) * pb.n[static_cast<std::size_t>(a - 1)];
      deg_ok = deg_ok && param_to_word(pb).degree() == degree_sum;

      BlockData bd0 = color_blocks(param_to_word(pb), l);
      auto agg = [](std::int64_t col, const std::vector<std::int64_t>& which) {
        return col < static_cast<std::int64_t>(which.size())
                   ? which[static_cast<std::size_t>(col)]
                   : 0;
      };
      for (std::int64_t a = 1; a <= l - 1; ++a) {
        auto n1 = base;
        n1[static_cast<std::size_t>(a - 1)] += step_of(a);
        BlockData bd1 = color_blocks(param_to_word(make_param(sigma, n1)), l);
        for (std::int64_t col = 1; col <= l; ++col) {
          std::int64_t dm = agg(col, bd1.m) - agg(col, bd0.m);
          std::int64_t dt = agg(col, bd1.t) - agg(col, bd0.t);
          std::int64_t want_m, want_t;
          if (a <= l - 2) {
            want_m = a >= col - 1 ? a : 0;
            want_t = a >= col - 1 ? l - 1 : 0;
          } else {
            want_m = 1;
            want_t = 1;
          }
          mc_ok = mc_ok && dm == want_m;
          tc_ok = tc_ok && dt == want_t;
        }
      }

      // beta second differences, to be compared across sigma
      std::vector<std::int64_t> diffs;
      auto beta_of = [&](const std::vector<std::int64_t>& n) {
        return closed_scalar(param_to_word(make_param(sigma, n)), l).beta_bar;
      };
      for (std::int64_t a = 1; a <= l - 1; ++a)
        for (std::int64_t b = a; b <= l - 1; ++b) {
          std::int64_t pa = step_of(a), pb2 = step_of(b);
          auto na = base, nb = base, nab = base;
          na[static_cast<std::size_t>(a - 1)] += pa;
          nb[static_cast<std::size_t>(b - 1)] += pb2;
          nab[static_cast<std::size_t>(a - 1)] += pa;
          nab[static_cast<std::size_t>(b - 1)] += pb2;
          diffs.push_back(beta_of(nab) - beta_of(na) - beta_of(nb) + beta_of(base));
        }
      beta_diffs_by_sigma.push_back(std::move(diffs));
    }
    for (const auto& d : beta_diffs_by_sigma)
      beta_ok = beta_ok && d == beta_diffs_by_sigma.front();
  }

  note(rho_ok, "rho linear part matches sum a/(a+1) n_a + n_{l-1}/l for every sigma, i");
  note(omega_ok, "omega quadratic part matches the displayed sigma-independent form");
  note(deg_ok, "word degree equals (l-1) sum n_a + n_{l-1}");
  note(mc_ok, "m_c linear parts match sum_{a>=c-1} a/(a+1) n_a + n_{l-1}/l");
  note(tc_ok, "t_c linear parts match (l-1) sum_{a>=c-1} n_a/(a+1) + n_{l-1}/l");
  note(beta_ok, "beta quadratic part is independent of sigma");
  return rep;
}

}  // namespace klc
