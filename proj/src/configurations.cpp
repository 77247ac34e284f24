#include "klc/configurations.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace klc {

Word::Word(std::string_view s) : letters(s) {
  for (char c : letters)
    if (c != 'A' && c != 'B')
      throw std::invalid_argument("Word: letters must be A or B");
}

Word Word::canonical() const {
  Word w = *this;
  while (!w.letters.empty() && w.letters.back() == 'A') w.letters.pop_back();
  return w;
}

Word Word::extended(std::int64_t extra_as) const {
  Word w = *this;
  w.letters.append(static_cast<std::size_t>(extra_as), 'A');
  return w;
}

std::vector<Word> canonical_words_upto(std::int64_t maxdeg) {
  std::vector<Word> out;
  out.emplace_back();
  for (std::int64_t d = 1; d <= maxdeg; ++d) {
    // d-1 free letters followed by a B.
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (d - 1)); ++bits) {
      std::string s(static_cast<std::size_t>(d), 'B');
      for (std::int64_t i = 0; i < d - 1; ++i)
        if (bits >> i & 1) s[static_cast<std::size_t>(i)] = 'A';
      out.emplace_back(s);
    }
  }
  return out;
}

BoundaryVector::BoundaryVector(std::int64_t l_, std::int64_t k_,
                               std::vector<std::int64_t> b_)
    : l(l_), k(k_), b(std::move(b_)) {
  if (l < 2 || k < 1)
    throw std::invalid_argument("BoundaryVector: need l >= 2, k >= 1");
  if (b.size() != static_cast<std::size_t>(l - 1))
    throw std::invalid_argument("BoundaryVector: b must have length l-1");
  std::int64_t prev = 0;
  for (std::int64_t bi : b) {
    if (bi < prev)
      throw std::invalid_argument("BoundaryVector: b must be nondecreasing");
    prev = bi;
  }
  if (b.back() > k)
    throw std::invalid_argument("BoundaryVector: need b_{l-2} <= k");
}

std::vector<std::int64_t> BoundaryVector::exponents() const {
  std::vector<std::int64_t> e;
  e.push_back(b[0]);
  for (std::size_t i = 1; i < b.size(); ++i) e.push_back(b[i] - b[i - 1]);
  e.push_back(k - b.back());
  return e;
}

std::string to_string(const BoundaryVector& bv) {
  std::string s = "(k=" + std::to_string(bv.k) + ", l=" + std::to_string(bv.l) + ", b=";
  for (std::size_t i = 0; i < bv.b.size(); ++i)
    s += (i ? "," : "") + std::to_string(bv.b[i]);
  return s + ")";
}

std::vector<BoundaryVector> all_boundary_vectors(std::int64_t k, std::int64_t l) {
  std::vector<BoundaryVector> out;
  std::vector<std::int64_t> b(static_cast<std::size_t>(l - 1), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i,
                                                           std::int64_t lo) {
    if (i == b.size()) {
      out.emplace_back(l, k, b);
      return;
    }
    for (std::int64_t v = lo; v <= k; ++v) {
      b[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

bool is_config(const Config& x, std::int64_t k, std::int64_t l) {
  for (std::int64_t v : x)
    if (v < 0) throw std::invalid_argument("is_config: negative entry");
  std::int64_t n = static_cast<std::int64_t>(x.size());
  for (std::int64_t j = 0; j < n; ++j) {
    std::int64_t s = 0;
    for (std::int64_t i = j; i < std::min(n, j + l); ++i) s += x[static_cast<std::size_t>(i)];
    if (s > k) return false;
  }
  return true;
}

bool config_equivalent(const Config& x, const Config& y) {
  auto stripped = [](Config c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
  };
  return stripped(x) == stripped(y);
}

Series char_bruteforce(const BoundaryVector& bv, std::int64_t N, const Window& w) {
  if (N < 0) throw std::invalid_argument("char_bruteforce: N < 0");
  Window box = Window::box(w.q_max, w.z_max);
  Series acc(box);
  std::vector<std::int64_t> x(static_cast<std::size_t>(N), 0);
  std::function<void(std::int64_t, std::int64_t, std::int64_t, std::int64_t)> rec =
      [&](std::int64_t j, std::int64_t weight, std::int64_t count,
          std::int64_t prefix) {
        if (j == N) {
          acc.accumulate(weight, count, 1);
          return;
        }
        std::int64_t window_sum = 0;
        for (std::int64_t i = std::max<std::int64_t>(0, j - bv.l + 1); i < j; ++i)
          window_sum += x[static_cast<std::size_t>(i)];
        std::int64_t hi = bv.k - window_sum;
        if (j <= bv.l - 2) hi = std::min(hi, bv.b[static_cast<std::size_t>(j)] - prefix);
        hi = std::min(hi, w.z_max - count);                    // z-pruning
        if (j >= 1) hi = std::min(hi, (w.q_max - weight) / j); // q-pruning
        for (std::int64_t v = 0; v <= hi; ++v) {
          x[static_cast<std::size_t>(j)] = v;
          rec(j + 1, weight + j * v, count + v, prefix + v);
        }
        x[static_cast<std::size_t>(j)] = 0;
      };
  rec(0, 0, 0, 0);
  return acc;
}

std::map<std::vector<std::int64_t>, Series> char_recursion_all(std::int64_t k,
                                                               std::int64_t l,
                                                               std::int64_t N,
                                                               const Window& w) {
  if (N < 0) throw std::invalid_argument("char_recursion_all: N < 0");
  Window box = Window::box(w.q_max, w.z_max);
  std::map<std::vector<std::int64_t>, Series> cur;
  for (const auto& bv : all_boundary_vectors(k, l)) cur.emplace(bv.b, Series::one(box));
  for (std::int64_t step = 0; step < N; ++step) {
    std::map<std::vector<std::int64_t>, Series> next;
    for (auto& [b, unused] : cur) {
      (void)unused;
      Series sum(box);
      for (std::int64_t i = 0; i <= b[0]; ++i) {
        std::vector<std::int64_t> shifted(b.begin() + 1, b.end());
        for (auto& v : shifted) v -= i;
        shifted.push_back(k - i);
        Series term = mul_monomial(shift_S(cur.at(shifted)), {0, i});
        sum = add(sum, term);
      }
      next.emplace(b, sum.restricted(box));
    }
    cur = std::move(next);
  }
  return cur;
}

Series char_recursion(const BoundaryVector& bv, std::int64_t N, const Window& w) {
  return char_recursion_all(bv.k, bv.l, N, w).at(bv.b);
}

Series char_infinite(const BoundaryVector& bv, const Window& w) {
  if (w.q_min != 0 || w.z_min != 0)
    throw std::invalid_argument("char_infinite: window must start at q=z=0");
  return char_recursion(bv, w.q_max + 1, w);
}

LambdaElement lambda_b0(std::int64_t l) {
  LambdaElement e(l);
  e.c[0] = 1;
  return e;
}

LambdaElement lambda_k(std::int64_t l) {
  LambdaElement e(l);
  e.c.back() = 1;
  return e;
}

LambdaElement lambda_apply(char op, const LambdaElement& v) {
  if (op == 'A') op = 'a';
  if (op == 'B') op = 'b';
  if (op != 'a' && op != 'b')
    throw std::invalid_argument("lambda_apply: op must be a or b");
  std::int64_t l = v.l();
  LambdaElement r(l);
  // b_i -> b_{i+1} (i <= l-3), b_{l-2} -> k; both maps fix k.
  for (std::int64_t i = 0; i + 1 <= l - 2; ++i)
    r.c[static_cast<std::size_t>(i + 1)] = v.c[static_cast<std::size_t>(i)];
  r.c[static_cast<std::size_t>(l - 1)] =
      v.c[static_cast<std::size_t>(l - 2)] + v.c[static_cast<std::size_t>(l - 1)];
  if (op == 'b') {
    // extra -b_0 from every b_i and from b_{l-2} -> k - b_0
    std::int64_t s = 0;
    for (std::int64_t i = 0; i <= l - 2; ++i) s += v.c[static_cast<std::size_t>(i)];
    r.c[0] -= s;
  }
  return r;
}

std::int64_t lambda_eval(const LambdaElement& v, const BoundaryVector& bv) {
  if (v.l() != bv.l) throw std::invalid_argument("lambda_eval: rank mismatch");
  std::int64_t s = 0;
  for (std::int64_t i = 0; i <= bv.l - 2; ++i)
    s += v.c[static_cast<std::size_t>(i)] * bv.b[static_cast<std::size_t>(i)];
  return s + v.c[static_cast<std::size_t>(bv.l - 1)] * bv.k;
}

namespace {

std::int64_t mod1l(std::int64_t i, std::int64_t l) {
  std::int64_t r = ((i % l) + l) % l;  // 0..l-1
  return r == 0 ? l : r;
}

}  // namespace

LambdaElement iota(std::int64_t i, std::int64_t j, std::int64_t l) {
  std::int64_t ibar = mod1l(i, l), jbar = mod1l(j, l);
  LambdaElement e(l);
  if (ibar - 2 >= 0) e.c[static_cast<std::size_t>(ibar - 2)] += 1;
  if (jbar - 2 >= 0) e.c[static_cast<std::size_t>(jbar - 2)] -= 1;
  if (ibar <= jbar) e.c[static_cast<std::size_t>(l - 1)] += 1;
  return e;
}

std::int64_t iota_eval(std::int64_t i, std::int64_t j, const BoundaryVector& bv) {
  return lambda_eval(iota(i, j, bv.l), bv);
}

std::vector<LambdaElement> extremal_config_lambda(const Word& m, std::int64_t l) {
  std::int64_t n = m.degree();
  std::vector<LambdaElement> x;
  x.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (m.at(i + 1) == 'A') {
      x.emplace_back(l);
      continue;
    }
    // M_{c_1} o ... o M_{c_i}(b_0), rightmost applied first.
    LambdaElement e = lambda_b0(l);
    for (std::int64_t t = i; t >= 1; --t) e = lambda_apply(m.at(t), e);
    x.push_back(e);
  }
  return x;
}

Config extremal_config(const Word& m, const BoundaryVector& bv) {
  Config out;
  for (const auto& e : extremal_config_lambda(m, bv.l)) out.push_back(lambda_eval(e, bv));
  return out;
}

Config extremal_config_rec(const Word& m, const BoundaryVector& bv) {
  std::int64_t l = bv.l, n = m.degree();
  // gamma, gamma' at B positions; gamma_0 = 1 covers the all-B extension i <= 0.
  std::map<std::int64_t, std::int64_t> gamma, gammap;
  gamma[0] = 1;
  std::int64_t prev_b = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    if (m.at(i) != 'B') continue;
    gammap[i] = gamma.at(prev_b);
    if (i <= l - 1) {
      gamma[i] = i + 1;
    } else {
      auto it = gammap.find(i - l + 1);
      if (it == gammap.end())
        throw std::domain_error("extremal_config_rec: word is not good");
      gamma[i] = it->second;
    }
    prev_b = i;
  }
  Config out;
  for (std::int64_t i = 0; i < n; ++i) {
    if (m.at(i + 1) == 'A')
      out.push_back(0);
    else
      out.push_back(iota_eval(gamma.at(i + 1), gammap.at(i + 1), bv));
  }
  return out;
}

}  // namespace klc
