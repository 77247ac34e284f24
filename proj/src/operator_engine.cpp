#include "klc/operator_engine.hpp"

#include <functional>
#include <stdexcept>

namespace klc {

namespace {

void check_l(std::int64_t l) {
  if (l < 2) throw std::invalid_argument("simple vectors need l >= 2");
}

Window scalar_box(const Window& w) {
  return Window::box(w.q_max, w.z_max);
}

}  // namespace

SimpleVector v_ini(std::int64_t l, const Window& w) {
  check_l(l);
  return {Series::one(scalar_box(w)),
          std::vector<Monomial2>(static_cast<std::size_t>(l), Monomial2{})};
}

SimpleVector v_infinity(std::int64_t l, const Window& w) {
  check_l(l);
  return {inv_pochhammer_inf({0, 1}, scalar_box(w)),
          std::vector<Monomial2>(static_cast<std::size_t>(l), Monomial2{})};
}

SimpleVector apply_A(const SimpleVector& v) {
  const auto& p = v.vpart;
  Monomial2 u = Monomial2{-1, 1} * p.back() / p.front();
  if (u.is_one())
    throw std::domain_error("apply_A: pole, q^{-1} z P_l / P_1 = 1");
  // Expand after shifting: S(f/(1-u)) = S(f) * geom_inverse(S(u)).
  Series scalar = mul(shift_S(v.scalar), geom_inverse(shift_s(u), v.scalar.window()));
  std::vector<Monomial2> q;
  q.push_back(shift_s(p.front()));
  q.push_back(shift_s(p.front()));
  for (std::size_t i = 1; i + 1 < p.size(); ++i) q.push_back(shift_s(p[i]));
  return {std::move(scalar), std::move(q)};
}

SimpleVector apply_B(const SimpleVector& v) {
  const auto& p = v.vpart;
  Monomial2 u = Monomial2{1, -1} * p.front() / p.back();
  if (u.is_one())
    throw std::domain_error("apply_B: pole, q z^{-1} P_1 / P_l = 1");
  Series scalar = mul(shift_S(v.scalar), geom_inverse(shift_s(u), v.scalar.window()));
  std::vector<Monomial2> q;
  q.push_back(Monomial2{0, 1} * shift_s(p.back()));  // z S(P_l)
  for (std::size_t i = 0; i + 1 < p.size(); ++i) q.push_back(shift_s(p[i]));
  return {std::move(scalar), std::move(q)};
}

SimpleVector apply_letter(char c, const SimpleVector& v) {
  if (c == 'A') return apply_A(v);
  if (c == 'B') return apply_B(v);
  throw std::invalid_argument("apply_letter: letter must be A or B");
}

SimpleVector apply_word(const Word& m, const SimpleVector& v) {
  SimpleVector cur = v;
  for (auto it = m.letters.rbegin(); it != m.letters.rend(); ++it)
    cur = apply_letter(*it, cur);
  return cur;
}

Series eval_at_boundary(const SimpleVector& v, const BoundaryVector& bv,
                        const Window& w) {
  if (v.l() != bv.l)
    throw std::invalid_argument("eval_at_boundary: rank mismatch");
  auto e = bv.exponents();
  Monomial2 mono{};
  for (std::size_t i = 0; i < e.size(); ++i)
    mono = mono * v.vpart[i].pow(e[i]);
  Series r = mul_monomial(v.scalar, mono);
  // Truncate to w's upper corner; keep the honest lower corner.
  const Window& rw = r.window();
  Window out{std::min(rw.q_min, w.q_max), std::min(rw.q_max, w.q_max),
             std::min(rw.z_min, w.z_max), std::min(rw.z_max, w.z_max)};
  return r.restricted(out);
}

std::map<std::vector<std::int64_t>, MonomialSum> char_by_monomials_all(
    std::int64_t k, std::int64_t l, const Window& w, std::int64_t budget) {
  if (budget < 0) throw std::invalid_argument("char_by_monomials: budget < 0");
  Window box = Window::box(w.q_max, w.z_max);
  auto bvs = all_boundary_vectors(k, l);
  std::vector<Series> acc(bvs.size(), Series(box));

  SimpleVector vinf = v_infinity(l, w);
  auto add_term = [&](const SimpleVector& sv) {
    for (std::size_t i = 0; i < bvs.size(); ++i)
      acc[i] = add(acc[i], eval_at_boundary(sv, bvs[i], w));
  };
  add_term(vinf);  // the empty class

  // Depth-first over suffixes: a node at depth d is C_{m-d+1}..C_m applied to
  // v_inf; the first step is B so every node is a canonical class.
  std::function<void(const SimpleVector&, std::int64_t)> dfs =
      [&](const SimpleVector& sv, std::int64_t d) {
        add_term(sv);
        if (d == budget) return;
        dfs(apply_A(sv), d + 1);
        dfs(apply_B(sv), d + 1);
      };
  if (budget >= 1) dfs(apply_B(vinf), 1);

  std::optional<Window> cert;
  if (budget - l >= 0)
    cert = Window::box(std::min(w.q_max, budget - l), w.z_max);

  std::map<std::vector<std::int64_t>, MonomialSum> out;
  for (std::size_t i = 0; i < bvs.size(); ++i)
    out.emplace(bvs[i].b, MonomialSum{acc[i].restricted(box), cert});
  return out;
}

MonomialSum char_by_monomials(const BoundaryVector& bv, const Window& w,
                              std::int64_t budget) {
  return char_by_monomials_all(bv.k, bv.l, w, budget).at(bv.b);
}

}  // namespace klc
