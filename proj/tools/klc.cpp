// Command-line front end: character computation by any method, all-methods
// cross verification, good-class enumeration and classification, and closed
// bosonic terms.  Output is deterministic; the exit code is nonzero whenever
// a verification fails.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "klc/bosonic.hpp"

using namespace klc;

namespace {

std::vector<std::int64_t> parse_list(const std::string& csv, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  if (out.empty())
    throw CLI::ValidationError(std::string(what) + ": empty list");
  return out;
}

void emit(const Series& s, const std::string& format) {
  if (format == "json")
    std::cout << to_json(s) << "\n";
  else
    write_table(std::cout, s);
}

struct CharArgs {
  std::int64_t k = 1, l = 2, qmax = 10, zmax = 6, budget = 10;
  std::string b = "1", n = "inf", format = "table";
};

void add_common(CLI::App* cmd, CharArgs& a) {
  cmd->add_option("--k", a.k, "level k >= 1");
  cmd->add_option("--l", a.l, "window length l >= 2");
  cmd->add_option("--b", a.b, "boundary vector b_0,..,b_{l-2} (comma separated)");
  cmd->add_option("--qmax", a.qmax, "q-degree bound of the window");
  cmd->add_option("--zmax", a.zmax, "z-degree bound of the window");
}

int run_verify(const CharArgs& a) {
  BoundaryVector bv(a.l, a.k, parse_list(a.b, "--b"));
  Window w = Window::box(a.qmax, a.zmax);
  Series inf = char_infinite(bv, w);
  std::cout << "chi (recursion, N = " << a.qmax + 1 << "):\n";
  write_table(std::cout, inf);

  int bad = 0;
  auto compare = [&](const char* name, const Series& other, const Window& on) {
    auto mm = first_mismatch(inf, other, on);
    if (!mm) {
      std::cout << "verify " << name << ": agree on " << to_string(on) << "\n";
    } else {
      std::cout << "verify " << name << ": MISMATCH at q^" << mm->a << " z^"
                << mm->n << ": " << mm->lhs.str() << " vs " << mm->rhs.str()
                << "\n";
      ++bad;
    }
  };

  compare("bosonic", char_bosonic(bv, w), w);
  MonomialSum ms = char_by_monomials(bv, w, a.budget);
  if (ms.certified)
    compare("monomials", ms.sum, *ms.certified);
  else
    std::cout << "verify monomials: budget " << a.budget
              << " certifies no window (needs budget >= l)\n";
  compare("bruteforce", char_bruteforce(bv, a.qmax + 1, w), w);
  if (a.l == 2) compare("l2-closed", char_l2_closed(a.k, bv.b[0], w), w);
  if (a.l == 3) compare("l3-closed", char_l3_closed(a.k, bv.b[0], bv.b[1], w), w);

  std::cout << (bad == 0 ? "all methods agree" : "MISMATCHES FOUND") << "\n";
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"characters of (k,l)-admissible partitions, exactly"};
  app.require_subcommand(1);

  CharArgs a;
  std::string method = "inf";

  auto* cchar = app.add_subcommand("char", "compute one character");
  add_common(cchar, a);
  cchar->add_option("--method", method,
                    "one of brute|rec|inf|monomials|bosonic|l2|l3");
  cchar->add_option("--N", a.n, "length bound (integer or 'inf')");
  cchar->add_option("--budget", a.budget, "class-degree budget for monomials");
  cchar->add_option("--format", a.format, "table|json");

  auto* cverify = app.add_subcommand("verify", "compute by every method and diff");
  add_common(cverify, a);
  cverify->add_option("--budget", a.budget, "class-degree budget for monomials");

  auto* cgood = app.add_subcommand("goodmon", "good monomial classes");
  cgood->require_subcommand(1);
  std::int64_t gl = 3, gmaxdeg = 6;
  std::string gword = "B";
  auto* glist = cgood->add_subcommand("list", "list good classes by degree");
  glist->add_option("--l", gl);
  glist->add_option("--maxdeg", gmaxdeg);
  auto* gclassify = cgood->add_subcommand("classify", "classify one good class");
  gclassify->add_option("--l", gl);
  gclassify->add_option("--word", gword, "letters A/B, canonical");
  auto* gcancel = cgood->add_subcommand("cancel", "verify one cancellation pair");
  gcancel->add_option("--l", gl);
  gcancel->add_option("--word", gword);
  gcancel->add_option("--k", a.k);
  gcancel->add_option("--b", a.b);
  gcancel->add_option("--qmax", a.qmax);
  gcancel->add_option("--zmax", a.zmax);

  auto* cterm = app.add_subcommand("term", "one closed bosonic term");
  std::string tsigma = "3,2,1", tn = "0,0";
  std::int64_t tl = 3;
  cterm->add_option("--l", tl);
  cterm->add_option("--sigma", tsigma, "permutation values sigma(1..l)");
  cterm->add_option("--n", tn, "lattice point n_1..n_{l-1}");
  cterm->add_option("--k", a.k);
  cterm->add_option("--b", a.b);
  cterm->add_option("--qmax", a.qmax);
  cterm->add_option("--zmax", a.zmax);

  auto* creport = app.add_subcommand("sigma-report", "sigma-independence checks");
  std::int64_t rl = 3, rsamples = 5;
  creport->add_option("--l", rl);
  creport->add_option("--samples", rsamples);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cchar->parsed()) {
      BoundaryVector bv(a.l, a.k, parse_list(a.b, "--b"));
      Window w = Window::box(a.qmax, a.zmax);
      std::int64_t n = a.n == "inf" ? a.qmax + 1 : std::stoll(a.n);
      if (method == "brute") {
        emit(char_bruteforce(bv, n, w), a.format);
      } else if (method == "rec") {
        emit(a.n == "inf" ? char_infinite(bv, w) : char_recursion(bv, n, w),
             a.format);
      } else if (method == "inf") {
        emit(char_infinite(bv, w), a.format);
      } else if (method == "monomials") {
        MonomialSum ms = char_by_monomials(bv, w, a.budget);
        if (!ms.certified)
          throw std::invalid_argument(
              "monomials: budget certifies no window (needs budget >= l)");
        emit(ms.sum.restricted(*ms.certified), a.format);
      } else if (method == "bosonic") {
        emit(char_bosonic(bv, w), a.format);
      } else if (method == "l2") {
        if (a.l != 2) throw std::invalid_argument("l2 method needs --l 2");
        emit(char_l2_closed(a.k, bv.b[0], w), a.format);
      } else if (method == "l3") {
        if (a.l != 3) throw std::invalid_argument("l3 method needs --l 3");
        emit(char_l3_closed(a.k, bv.b[0], bv.b[1], w), a.format);
      } else {
        throw std::invalid_argument("unknown method: " + method);
      }
      return 0;
    }

    if (cverify->parsed()) return run_verify(a);

    if (glist->parsed()) {
      auto classes = good_classes_upto(gl, gmaxdeg);
      std::cout << "good classes for l = " << gl << " up to degree " << gmaxdeg
                << ": " << classes.size() << "\n";
      for (const auto& m : classes)
        std::cout << (m.empty() ? "(empty)" : m.letters) << "\n";
      return 0;
    }

    if (gclassify->parsed()) {
      Word m(gword);
      Classification c = classify(m, gl);
      std::cout << "word: " << (m.empty() ? "(empty)" : m.letters) << "\n";
      std::cout << "marked path (extended to degree " << c.extended.degree()
                << "):\n";
      for (std::size_t i = 0; i < c.marked_path.size(); ++i) {
        std::cout << "  " << c.marked_path[i].str();
        if (i + 1 < c.marked_path.size())
          std::cout << "  --" << c.extended.letters[i] << "-->";
        std::cout << "\n";
      }
      if (c.cls == GoodClass::G) {
        std::cout << "class: G_G (AM is good)\n";
      } else {
        std::cout << "class: " << (c.cls == GoodClass::A ? "G_A" : "G_B")
                  << ", cancellation arrow at index " << c.index << "\n";
        Word p = cancellation_partner(m, gl);
        std::cout << "partner: " << (p.empty() ? "(empty)" : p.letters) << "\n";
      }
      return 0;
    }

    if (gcancel->parsed()) {
      Word m(gword);
      Classification c = classify(m, gl);
      if (c.cls == GoodClass::B) m = cancellation_partner(m, gl);
      if (classify(m, gl).cls != GoodClass::A)
        throw std::invalid_argument("word has no cancellation arrow (class G_G)");
      CancellationPair pair = cancellation_pair(m, gl);
      BoundaryVector bv(gl, a.k, parse_list(a.b, "--b"));
      Window w = Window::box(a.qmax, a.zmax);
      bool ok = verify_cancellation(m, bv, w);
      std::cout << "pair: (" << pair.nak.letters << ", " << pair.nbk.letters
                << ") at " << to_string(bv) << "\n";
      std::cout << "AN(A+B)K v_inf " << (ok ? "= 0" : "!= 0") << " on "
                << to_string(w) << "\n";
      return ok ? 0 : 1;
    }

    if (cterm->parsed()) {
      GoodParam p;
      p.l = tl;
      p.sigma = parse_list(tsigma, "--sigma");
      p.n = parse_list(tn, "--n");
      p.validate();
      Word m = param_to_word(p);
      ClosedTerm ct = closed_term(p);
      std::cout << "word: " << (m.empty() ? "(empty)" : m.letters) << "\n";
      std::cout << "alpha " << ct.alpha << ", beta " << ct.beta_bar << ", z^"
                << ct.m1 << ", t =";
      for (std::int64_t t : ct.t) std::cout << " " << t;
      std::cout << "\nvector part:";
      for (const auto& v : ct.vpart) std::cout << " [" << to_string(v) << "]";
      std::cout << "\n";
      BoundaryVector bv(tl, a.k, parse_list(a.b, "--b"));
      TermSeries ts = closed_term_series(p, bv, Window::box(a.qmax, a.zmax));
      std::cout << "leading bidegree after evaluation: q^" << ts.leading.a
                << " z^" << ts.leading.n << "\n";
      write_table(std::cout, ts.series);
      return 0;
    }

    if (creport->parsed()) {
      SigmaIndependenceReport rep = sigma_independence_report(rl, rsamples);
      std::cout << rep.text();
      return rep.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
