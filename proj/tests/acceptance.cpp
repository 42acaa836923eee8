// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a criterion fails
// that is not listed in kKnownFailing, or when a listed one unexpectedly passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "qxxz/qxxz.hpp"

using namespace qxxz;

namespace {

// printed PT factor and amplitude identity disagree with the measured Bethe vectors by a sign
const std::set<int> kKnownFailing = {7, 8};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

std::string fixture_dir() {
#ifdef QXXZ_FIXTURE_DIR
  return QXXZ_FIXTURE_DIR;
#else
  return "tools/fixtures";
#endif
}

Outcome c1() {
  Outcome o;
  auto t0 = Clock::now();
  DimTables d = dimension_tables(0, 10, 5);
  o.check(d.consistent(), "enumeration equals closed forms");
  auto t2 = table2_csv(d, 0, 10);
  const double secs = since(t0);
  auto mm = diff_against_fixture(t2, read_csv_file(fixture_dir() + "/table2_reference.csv"), 2);
  o.check(mm.empty(), std::to_string(mm.size()) + " cells differ from the reference table");
  o.check(dim_gamma(10, 0) == 42 && dim_gamma(10, 2) == 90 && dim_gamma(10, 4) == 75 && dim_gamma(10, 6) == 35 &&
              dim_gamma(10, 8) == 9 && dim_gamma(10, 10) == 1,
          "N=10 unrestricted row");
  o.check(dim_gamma_restricted(10, 0, 5) == 34 && dim_gamma_restricted(10, 2, 5) == 55, "N=10 restricted row");
  o.check(secs < 1.0, "runtime " + fmt(secs) + " s");
  o.note("cells " + std::to_string(d.all.size() + d.restricted.size()) + ", " + fmt(secs) + " s");
  return o;
}

Outcome c2() {
  Outcome o;
  auto t0 = Clock::now();
  double worst = 0, at10 = 0;
  for (int N = 3; N <= 10; ++N) {
    auto tn = Clock::now();
    QPhase ph(N + 3);
    ChainSpec s(N, ph);
    for (int tj = N % 2; tj <= N; tj += 2) {
      const int y = beta2_exponent(N, tj);
      const cplx want = ph.pow(-y);
      worst = std::max(worst, std::abs(beta2_scalar(s, tj) - want) / std::abs(want));
      auto d = beta_squared_diagrammatic(N, (N - tj) / 2 - 1);
      o.check(d.diagonal && d.exponent && *d.exponent == -y,
              "diagram oracle at N=" + std::to_string(N) + " j=" + spin_label(tj));
    }
    if (N == 10) at10 = since(tn);
  }
  auto ex = exponent_table(3, 10, false);
  auto mm = diff_against_fixture(table3_csv(ex, 3, 10), read_csv_file(fixture_dir() + "/table3_reference.csv"), 1);
  o.check(mm.empty(), std::to_string(mm.size()) + " exponents differ from the reference table");
  o.check(worst < 1e-9, "numeric relative error " + fmt(worst));
  o.check(at10 < 30, "N=10 runtime " + fmt(at10) + " s");
  o.note("max rel error " + fmt(worst) + ", N=10 " + fmt(at10) + " s, total " + fmt(since(t0)) + " s");
  return o;
}

struct GridResult {
  Outcome c3, c5;
};

GridResult grid_3_5() {
  GridResult g;
  double e = 0, s = 0, z = 0, h = 0, im = 0, mineig = 1e300;
  double cc = 0, t4 = 0, cpa = 0, chi = 0;
  for (int N = 2; N <= 10; ++N)
    for (int r : {3, 4, 5}) {
      const std::string tag = "N=" + std::to_string(N) + " r=" + std::to_string(r);
      SpanContext ctx(N, QPhase(r));
      MetricReport m = check_intertwining(ctx, false, false);
      e = std::max(e, m.res_Ek);
      s = std::max(s, m.res_Spm);
      z = std::max(z, m.res_Sz);
      h = std::max(h, m.res_H);
      im = std::max(im, m.spectrum_max_imag);
      mineig = std::min(mineig, m.min_eig);
      g.c3.check(m.res_Ek < 1e-9 && m.res_Spm < 1e-9 && m.res_Sz < 1e-12 && m.res_H < 1e-9, "intertwining " + tag);
      g.c3.check(m.min_eig > 1e-8, "Gram form " + tag);
      g.c3.check(m.spectrum_max_imag < 1e-9, "real spectrum " + tag);

      COperatorPair cp(ctx);
      CCReport c = cc_commute_check(cp);
      Table4Report t = table4_check(cp);
      CprimeActionReport a = cprime_path_action_check(ctx);
      BraidReport b = braid_identity_check(ctx);
      cc = std::max({cc, c.C2, c.Cp2, c.CCp});
      t4 = std::max(t4, t.max());
      cpa = std::max(cpa, a.path_action);
      chi = std::max(chi, b.max_chi_residual());
      g.c5.check(std::max({c.C2, c.Cp2, c.CCp}) < 1e-9, "involutions " + tag);
      g.c5.check(t.max() < 1e-9, "commutation table " + tag);
      g.c5.check(a.path_action < 1e-9, "C' path action " + tag);
      g.c5.check(b.max_chi_residual() < 1e-9, "chi " + tag);
      for (const auto& blk : b.blocks) g.c5.check(!blk.sign_flip, "chi sign " + tag);
    }
  g.c3.note("E_k " + fmt(e) + ", S+- " + fmt(s) + ", S^z " + fmt(z) + ", H " + fmt(h) + ", min Gram eig " + fmt(mineig) +
            ", max |Im| " + fmt(im));
  g.c5.note("C^2/C'^2/[C,C'] " + fmt(cc) + ", table " + fmt(t4) + ", C' action " + fmt(cpa) + ", chi " + fmt(chi));
  return g;
}

Outcome c4() {
  Outcome o;
  for (auto [N, r] : {std::pair{4, 3}, {6, 3}}) {
    UnreducedPositivity u = unreduced_positivity(N, QPhase(r));
    o.check(u.rank < u.dim, "kernel at N=" + std::to_string(N));
    o.note("N=" + std::to_string(N) + " r=" + std::to_string(r) + ": rank " + std::to_string(u.rank) + " of " +
           std::to_string(u.dim));
  }
  return o;
}

Outcome c6() {
  Outcome o;
  double worst = 0, mineig = 1e300;
  for (int N = 2; N <= 8; ++N)
    for (double r : {N + 0.5, 2.0 * N}) {
      std::ostringstream tag;
      tag << "N=" << N << " r=" << r;
      SpanContext ctx(N, QPhase(r));
      o.check(ctx.full_space(), "span is the full space " + tag.str());
      if (!ctx.full_space()) continue;
      MetricReport m = check_intertwining(ctx, true, false);
      FullSpaceCReport f = full_space_c_check(ctx);
      CprimeActionReport a = cprime_path_action_check(ctx);
      BraidReport b = braid_identity_check(ctx);
      const double w = std::max({m.full_Ek, m.full_Spm, m.full_H, f.C2, f.Cp2, f.CCp, f.table4.max(),
                                 a.path_action, b.max_chi_residual()});
      worst = std::max(worst, w);
      mineig = std::min(mineig, f.min_eig);
      o.check(m.full_Ek >= 0 && w < 1e-9, "full-space identities " + tag.str() + " " + fmt(w));
      o.check(m.full_Sz < 1e-12, "[eta, S^z] " + tag.str());
      o.check(f.min_eig > 1e-8, "eta positive " + tag.str());
      o.check(m.spectrum_max_imag < 1e-9, "real spectrum " + tag.str());
      for (const auto& blk : b.blocks) o.check(!blk.sign_flip, "chi sign " + tag.str());
    }
  o.note("max residual " + fmt(worst) + ", min eig of eta " + fmt(mineig));
  return o;
}

Outcome c7() {
  Outcome o;
  int states = 0, eig_bad = 0, hw_bad = 0, pt_miss = 0, prop_miss = 0, corrected_bad = 0, sigma_neg = 0;
  std::string first_miss;
  for (int N = 3; N <= 6; ++N)
    for (int n = 1; n <= 2; ++n)
      for (double r : {5.0, 7.0}) {
        if (n > N / 2) continue;
        QPhase ph(r);
        for (const auto& s : solve_bae(N, n, ph)) {
          PTReport pt = pt_eigenvalue_check(s, ph);
          states++;
          eig_bad += !(s.eigen_residual < 1e-8);
          hw_bad += !(s.hw_residual < 1e-8);
          corrected_bad += !(pt.corrected_deviation < 1e-8);
          sigma_neg += std::abs(pt.sigma + 1.0) < 1e-8;
          if (!(pt.deviation < 1e-8)) {
            pt_miss++;
            if (first_miss.empty()) {
              std::ostringstream m;
              m << "N=" << N << " n=" << n << " r=" << r << " measured " << pt.measured.real() << "+" << pt.measured.imag()
                << "i vs printed " << pt.predicted.real() << "+" << pt.predicted.imag() << "i";
              first_miss = m.str();
            }
          }
          prop_miss += !(pt.prop_residual < 1e-8);
        }
      }
  o.check(states > 0, "no Bethe states found");
  o.check(eig_bad == 0, std::to_string(eig_bad) + " vectors are not eigenvectors");
  o.check(hw_bad == 0, std::to_string(hw_bad) + " vectors are not highest weight");
  o.check(pt_miss == 0, "printed PT factor off on " + std::to_string(pt_miss) + "/" + std::to_string(states) +
                            " states (first: " + first_miss + ")");
  o.check(prop_miss == 0, "amplitude identity off on " + std::to_string(prop_miss) + "/" + std::to_string(states) +
                              " root sets (ratio equals sigma)");
  o.note(std::to_string(states) + " states; eigen and highest-weight checks " +
         (eig_bad + hw_bad == 0 ? std::string("pass") : std::string("fail")));
  o.note("sigma = e^{iN sum k} prod s(-k_l,k_j)/s(k_j,-k_l) is -1 on " + std::to_string(sigma_neg) + " states");
  o.note("measured PT factor = sigma (-1)^{m + n(n+1)/2} q^{-n} holds on " + std::to_string(states - corrected_bad) + "/" +
         std::to_string(states));
  std::vector<BetheState> all;
  QPhase ph7(7);
  for (int n = 0; n <= 2; ++n)
    for (auto& s : solve_bae(6, n, ph7)) all.push_back(s);
  EnergyFit f = fit_energy(all, ph7);
  o.note("energy fit (reported only) at N=6 r=7: slope " + fmt(f.slope) + ", intercept " + fmt(f.intercept) +
         "; printed normalization slope 4, intercept (N-1) Delta_+");
  return o;
}

Outcome c8() {
  Outcome o;
  double u = 0, ib = 0, app = 0;
  std::array<double, 5> per{};
  std::array<double, 2> amended{};
  for (double r : {7.0, 9.0}) {
    QPhase ph(r);
    for (int tj = 0; tj <= 5; ++tj) {
      UnitarityResult res = verify_unitarity(tj, ph);
      u = std::max(u, res.max_residual);
      o.check(res.ok && res.max_residual < 1e-12, "unitarity j=" + spin_label(tj));
    }
    for (int N : {4, 6, 9}) {
      IdentityReport id = bethe_identity_check(N, ph, 100);
      ib = std::max({ib, id.beta_conj, id.B_conj});
      o.check(id.beta_conj < 1e-12 && id.B_conj < 1e-12, "Bethe conjugation identities");
    }
    AppendixCReport rep = verify_appendix_c(5, ph);
    for (int i = 0; i < 5; ++i) {
      app = std::max(app, rep.max_residual[i]);
      per[i] = std::max(per[i], rep.max_residual[i]);
      o.check(rep.instances[i] > 0 || i == 2, "identity " + std::to_string(i + 1) + " exercised");
    }
    for (int i = 0; i < 2; ++i) amended[i] = std::max(amended[i], rep.amended_residual[i]);
    o.check(rep.passes(1e-12), "CG identities");
  }
  o.note("unitarity " + fmt(u) + ", conjugation identities " + fmt(ib) + ", CG identities " + fmt(app));
  std::string ids = "CG identity residuals as printed:";
  for (int i = 0; i < 5; ++i) ids += " " + std::to_string(i + 1) + "=" + fmt(per[i]);
  o.note(ids);
  o.note("amended forms (q^{+2a(2j+1)} on the j-1/2 branch; +- weight in the first sum rule): " + fmt(amended[0]) + ", " +
         fmt(amended[1]));
  return o;
}

Outcome c9() {
  Outcome o;
  double worst = 0;
  int blocks = 0;
  for (int r : {3, 4, 5})
    for (int N = 1; N <= 8; ++N)
      for (int tj = N % 2; tj <= N && tj + 1 < r; tj += 2) {
        if (enumerate_paths(N, r, tj).paths.empty()) continue;
        const double res = N >= 2 ? representation_isomorphism_check(N, tj, QPhase(r)) : 0.0;
        worst = std::max(worst, res);
        blocks++;
        o.check(res < 1e-9, "block N=" + std::to_string(N) + " j=" + spin_label(tj) + " r=" + std::to_string(r));
      }
  for (int N = 1; N <= 12; ++N)
    for (int k = -1; k <= N / 2 - 1; ++k) {
      const auto n = static_cast<std::int64_t>(reduced_word_basis(N, k).size());
      o.check(n == dim_W(N, k) && n == dim_gamma(N, N - 2 * k - 2),
              "dim W at N=" + std::to_string(N) + " k=" + std::to_string(k));
    }
  o.note(std::to_string(blocks) + " blocks, max residual " + fmt(worst) + "; dim W checked for N <= 12");
  return o;
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  std::cout << "qxxz acceptance, version " << kVersion << "\n";
  std::vector<std::pair<std::string, std::function<Outcome()>>> jobs;
  GridResult grid;
  bool grid_done = false;
  auto run_grid = [&] {
    if (!grid_done) grid = grid_3_5();
    grid_done = true;
  };
  jobs.push_back({"Table 2 dimensions", c1});
  jobs.push_back({"Table 3 braid exponents", c2});
  jobs.push_back({"quasi-Hermiticity on restricted spans", [&] { run_grid(); return grid.c3; }});
  jobs.push_back({"unreduced metric is singular", c4});
  jobs.push_back({"C-operator identities", [&] { run_grid(); return grid.c5; }});
  jobs.push_back({"full-space mode for real r", c6});
  jobs.push_back({"Bethe cross-validation", c7});
  jobs.push_back({"Clebsch-Gordan and Bethe identities", c8});
  jobs.push_back({"path representation equals spin representation", c9});

  int status = 0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    auto ts = Clock::now();
    Outcome o;
    try {
      o = jobs[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const bool known = kKnownFailing.count(id) > 0;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << jobs[i].first << " (" << fmt(since(ts))
              << " s)" << (known && !o.pass ? " [known failure]" : "") << "\n";
    size_t shown = 0;
    for (const auto& n : o.notes)
      if (shown++ < 8) std::cout << "    " << n << "\n";
    if (o.notes.size() > 8) std::cout << "    ... " << o.notes.size() - 8 << " more\n";
    if (o.pass == known) {
      status = 1;
      if (known) std::cout << "    criterion " << id << " listed as a known failure but passed\n";
    }
  }
  std::cout << "total " << fmt(since(t0)) << " s\n";
  return status;
}
