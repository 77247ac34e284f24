#include "klc/series.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace klc {

namespace {

std::int64_t clamp_inf(std::int64_t x) {
  if (x > Window::kInf) return Window::kInf;
  if (x < -Window::kInf) return -Window::kInf;
  return x;
}

std::string bound_str(std::int64_t x) {
  if (x >= Window::kInf) return "inf";
  if (x <= -Window::kInf) return "-inf";
  return std::to_string(x);
}

}  // namespace

std::int64_t sat_add(std::int64_t x, std::int64_t y) {
  if (x >= Window::kInf || y >= Window::kInf) {
    if (x <= -Window::kInf || y <= -Window::kInf)
      throw std::logic_error("sat_add: inf + -inf");
    return Window::kInf;
  }
  if (x <= -Window::kInf || y <= -Window::kInf) return -Window::kInf;
  return clamp_inf(x + y);
}

Monomial2 Monomial2::pow(std::int64_t e) const {
  if (e < 0) throw std::invalid_argument("Monomial2::pow: negative exponent");
  return {a * e, n * e};
}

std::string to_string(Monomial2 m) {
  if (m.is_one()) return "1";
  std::string s;
  if (m.a != 0) s += "q^" + std::to_string(m.a);
  if (m.n != 0) {
    if (!s.empty()) s += " ";
    s += "z^" + std::to_string(m.n);
  }
  return s;
}

Window Window::box(std::int64_t qmax, std::int64_t zmax) {
  return Window{0, qmax, 0, zmax};
}

bool Window::covers(const Window& v) const {
  // Every point of v's box must be inside our box or below a lower corner.
  if (!valid() || !v.valid()) return false;
  if (v.z_max < z_min) return true;  // entirely in the zero half-plane
  if (v.z_max > z_max) return false;
  if (v.q_max < q_min) return true;
  return v.q_max <= q_max;
}

Window Window::shifted(Monomial2 m) const {
  return Window{sat_add(q_min, m.a), sat_add(q_max, m.a), sat_add(z_min, m.n),
                sat_add(z_max, m.n)};
}

std::string to_string(const Window& w) {
  return "q=[" + bound_str(w.q_min) + "," + bound_str(w.q_max) + "] z=[" +
         bound_str(w.z_min) + "," + bound_str(w.z_max) + "]";
}

Series::Series(Window w) : win_(w) {
  if (!w.valid())
    throw std::invalid_argument("Series: degenerate window " + to_string(w));
}

Series Series::monomial(Monomial2 m, Int c, Window w) {
  Series s(w);
  if (c == 0) return s;
  if (m.n < w.z_min || (m.n <= w.z_max && m.a < w.q_min))
    throw std::domain_error("Series::monomial: support below window corner");
  if (w.contains(m.a, m.n)) s.c_[{m.n, m.a}] = std::move(c);
  return s;
}

std::optional<Int> Series::coeff(std::int64_t a, std::int64_t n) const {
  if (n < win_.z_min) return Int(0);
  if (n <= win_.z_max && a < win_.q_min) return Int(0);
  if (!win_.contains(a, n)) return std::nullopt;
  auto it = c_.find({n, a});
  return it == c_.end() ? Int(0) : it->second;
}

const Int& Series::stored(std::int64_t a, std::int64_t n) const {
  static const Int zero_{0};
  auto it = c_.find({n, a});
  return it == c_.end() ? zero_ : it->second;
}

void Series::set(std::int64_t a, std::int64_t n, Int c) {
  if (!win_.contains(a, n))
    throw std::invalid_argument("Series::set: exponent outside window");
  if (c == 0)
    c_.erase({n, a});
  else
    c_[{n, a}] = std::move(c);
}

void Series::accumulate(std::int64_t a, std::int64_t n, const Int& c) {
  if (c == 0 || !win_.contains(a, n)) return;
  auto it = c_.emplace(Key{n, a}, Int(0)).first;
  it->second += c;
  if (it->second == 0) c_.erase(it);
}

Series Series::restricted(const Window& w) const {
  if (w.q_max > win_.q_max || w.z_max > win_.z_max)
    throw std::domain_error("Series::restricted: cannot grow the window");
  // Raising a lower corner asserts the vacated strip is zero; that is known
  // only when the strip lies inside the old exactness region.
  if (w.z_min > win_.z_min && win_.q_max < Window::kInf)
    throw std::domain_error("Series::restricted: cannot raise z_min");
  if (w.q_min > win_.q_min && w.q_min > sat_add(win_.q_max, 1))
    throw std::domain_error("Series::restricted: cannot raise q_min");
  Series r(w);
  for (const auto& [key, v] : c_) {
    auto [n, a] = key;
    if (n < w.z_min || (n <= w.z_max && a < w.q_min))
      throw std::domain_error("Series::restricted: support below new corner");
    if (w.contains(a, n)) r.c_[key] = v;
  }
  return r;
}

std::optional<Monomial2> Series::leading() const {
  if (c_.empty()) return std::nullopt;
  const auto& [n, a] = c_.begin()->first;
  return Monomial2{a, n};
}

Series operator-(const Series& s) {
  Series r(s.win_);
  for (const auto& [k, v] : s.c_) r.c_[k] = -v;
  return r;
}

Series add(const Series& s, const Series& t) {
  const Window &a = s.window(), &b = t.window();
  Window w{std::min(a.q_min, b.q_min), std::min(a.q_max, b.q_max),
           std::min(a.z_min, b.z_min), std::min(a.z_max, b.z_max)};
  Series r(w);
  for (const auto& [key, v] : s.terms()) r.accumulate(key.second, key.first, v);
  for (const auto& [key, v] : t.terms()) r.accumulate(key.second, key.first, v);
  return r;
}

Series sub(const Series& s, const Series& t) { return add(s, -t); }

Series mul(const Series& s, const Series& t) {
  const Window &a = s.window(), &b = t.window();
  // Support lower bounds add; exactness holds while every contributing
  // term of each factor stays inside that factor's window.
  Window w{sat_add(a.q_min, b.q_min),
           std::min(sat_add(a.q_max, b.q_min), sat_add(b.q_max, a.q_min)),
           sat_add(a.z_min, b.z_min),
           std::min(sat_add(a.z_max, b.z_min), sat_add(b.z_max, a.z_min))};
  Series r(w);
  for (const auto& [ks, vs] : s.terms())
    for (const auto& [kt, vt] : t.terms())
      r.accumulate(ks.second + kt.second, ks.first + kt.first, vs * vt);
  return r;
}

Series mul_int(const Series& s, const Int& c) {
  Series r(s.window());
  if (c == 0) return r;
  for (const auto& [k, v] : s.terms()) r.set(k.second, k.first, v * c);
  return r;
}

Series mul_monomial(const Series& s, Monomial2 m) {
  Series r(s.window().shifted(m));
  for (const auto& [k, v] : s.terms()) r.set(k.second + m.a, k.first + m.n, v);
  return r;
}

Series geom_inverse(Monomial2 u, const Window& w) {
  if (u.is_one()) throw std::domain_error("geom_inverse: pole 1/(1-1)");
  bool direct = u.n > 0 || (u.n == 0 && u.a > 0);
  // direct:  sum_{j>=0} u^j;  otherwise: -sum_{j>=1} u^{-j}.
  Monomial2 v = direct ? u : u.inverse();  // v.n >= 0; v.n == 0 => v.a > 0
  std::int64_t j0 = direct ? 0 : 1;
  Int sign = direct ? 1 : -1;

  std::int64_t jcap;  // last j whose term can fit the window
  if (v.n > 0)
    jcap = (w.z_max >= j0 * v.n) ? w.z_max / v.n : j0 - 1;
  else
    jcap = (w.q_max >= j0 * v.a) ? w.q_max / v.a : j0 - 1;

  std::int64_t zmin = std::min(j0 * v.n, w.z_max);
  std::int64_t qmin = 0;
  if (jcap >= j0) qmin = std::min(j0 * v.a, jcap * v.a);
  qmin = std::min(qmin, w.q_max);

  Series r(Window{qmin, w.q_max, zmin, w.z_max});
  for (std::int64_t j = j0; j <= jcap; ++j) r.accumulate(j * v.a, j * v.n, sign);
  return r;
}

namespace {

// 1 - q^a z^n as an exact polynomial.
Series one_minus(Monomial2 f) {
  Window w{std::min<std::int64_t>(0, f.a), Window::kInf,
           std::min<std::int64_t>(0, f.n), Window::kInf};
  Series r(w);
  r.accumulate(0, 0, 1);
  r.accumulate(f.a, f.n, -1);
  return r;
}

void require_convergent(Monomial2 u, const char* who) {
  if (!(u.n > 0 || (u.n == 0 && u.a > 0)))
    throw std::domain_error(std::string(who) +
                            ": nonconvergent infinite product for u = " +
                            to_string(u));
}

}  // namespace

Series pochhammer(Monomial2 u, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("pochhammer: negative length");
  Series r = Series::one(Window{0, Window::kInf, 0, Window::kInf});
  for (std::int64_t i = 0; i < n; ++i) r = mul(r, one_minus({u.a + i, u.n}));
  // The product corner is a sound bound; tighten it to the actual support
  // (legitimate here: the polynomial is complete and exact everywhere).
  std::int64_t qmin = 0, zmin = 0;
  for (const auto& [k, v] : r.terms()) {
    (void)v;
    zmin = std::min(zmin, k.first);
    qmin = std::min(qmin, k.second);
  }
  Series out(Window{qmin, Window::kInf, zmin, Window::kInf});
  for (const auto& [k, v] : r.terms()) out.set(k.second, k.first, v);
  return out;
}

Series pochhammer_inf(Monomial2 u, const Window& w) {
  require_convergent(u, "pochhammer_inf");
  Window box{std::min<std::int64_t>(0, w.q_max), w.q_max,
             std::min<std::int64_t>(0, w.z_max), w.z_max};
  Series r = Series::one(box);
  for (std::int64_t i = 0;; ++i) {
    Monomial2 f{u.a + i, u.n};
    if (f.n > w.z_max || f.a > w.q_max) break;  // factor is 1 on the window
    r = mul(r, one_minus(f)).restricted(box);
  }
  return r;
}

Series inv_pochhammer(Monomial2 u, std::int64_t n, const Window& w) {
  if (n < 0) throw std::invalid_argument("inv_pochhammer: negative length");
  Series r = Series::one(Window{std::min<std::int64_t>(0, w.q_max), w.q_max,
                                std::min<std::int64_t>(0, w.z_max), w.z_max});
  for (std::int64_t i = 0; i < n; ++i)
    r = mul(r, geom_inverse({u.a + i, u.n}, w));
  return r;
}

Series inv_pochhammer_inf(Monomial2 u, const Window& w) {
  require_convergent(u, "inv_pochhammer_inf");
  Series r = Series::one(Window{std::min<std::int64_t>(0, w.q_max), w.q_max,
                                std::min<std::int64_t>(0, w.z_max), w.z_max});
  for (std::int64_t i = 0;; ++i) {
    Monomial2 f{u.a + i, u.n};
    if (f.n > w.z_max || f.a > w.q_max) break;
    r = mul(r, geom_inverse(f, w));
  }
  return r;
}

Series shift_S(const Series& s) {
  const Window& w = s.window();
  Window sw{sat_add(w.q_min, w.z_min), sat_add(w.q_max, w.z_min), w.z_min,
            w.z_max};
  Series r(sw);
  for (const auto& [k, v] : s.terms())
    r.accumulate(k.second + k.first, k.first, v);
  return r;
}

bool equal_on(const Series& s, const Series& t, const Window& w) {
  return !first_mismatch(s, t, w).has_value();
}

std::optional<Mismatch> first_mismatch(const Series& s, const Series& t,
                                       const Window& w) {
  const Window &a = s.window(), &b = t.window();
  std::int64_t zlo = std::max({w.z_min, a.z_min, b.z_min});
  std::int64_t zhi = std::min({w.z_max, a.z_max, b.z_max});
  std::int64_t qlo = std::max({w.q_min, a.q_min, b.q_min});
  std::int64_t qhi = std::min({w.q_max, a.q_max, b.q_max});
  for (std::int64_t n = zlo; n <= zhi; ++n)
    for (std::int64_t q = qlo; q <= qhi; ++q) {
      const Int &x = s.stored(q, n), &y = t.stored(q, n);
      if (x != y) return Mismatch{q, n, x, y};
    }
  return std::nullopt;
}

void write_table(std::ostream& os, const Series& s) {
  const Window& w = s.window();
  os << "window " << bound_str(w.q_min) << " " << bound_str(w.q_max) << " "
     << bound_str(w.z_min) << " " << bound_str(w.z_max) << "\n";
  os << "terms " << s.term_count() << "\n";
  for (const auto& [k, v] : s.terms())
    os << k.second << " " << k.first << " " << v.str() << "\n";
}

std::string to_table(const Series& s) {
  std::ostringstream os;
  write_table(os, s);
  return os.str();
}

std::string to_json(const Series& s) {
  nlohmann::json j;
  const Window& w = s.window();
  j["window"] = {{"q_min", bound_str(w.q_min)},
                 {"q_max", bound_str(w.q_max)},
                 {"z_min", bound_str(w.z_min)},
                 {"z_max", bound_str(w.z_max)}};
  auto rows = nlohmann::json::array();
  for (const auto& [k, v] : s.terms())
    rows.push_back({k.second, k.first, v.str()});
  j["terms"] = rows;
  return j.dump();
}

}  // namespace klc
