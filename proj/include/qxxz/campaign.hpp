#pragma once
// Per-(N, r) check batteries behind the command-line verbs. Each returns a JSON report.

#include <chrono>
#include <string>

#include "bethe.hpp"
#include "copers.hpp"
#include "tldiag.hpp"

namespace qxxz {

struct CheckList {
  nlohmann::json items = nlohmann::json::array();
  bool ok = true;
  void add(const std::string& name, double value, double tol) {
    const bool pass = value < tol;
    ok = ok && pass;
    items.push_back({{"check", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
  }
  void require(const std::string& name, bool pass, const std::string& detail = "") {
    ok = ok && pass;
    nlohmann::json j = {{"check", name}, {"pass", pass}};
    if (!detail.empty()) j["detail"] = detail;
    items.push_back(j);
  }
};

// Chain relations, metric intertwining, C-operator identities and the diagram oracle for one (N, r).
inline nlohmann::json verify_pair(int N, double r, double tol, bool expect_fail) {
  const auto t0 = std::chrono::steady_clock::now();
  QPhase ph(r);
  nlohmann::json out = {{"N", N}, {"r", r}, {"tolerance", tol}, {"version", kVersion}};
  CheckList cl;
  try {
    SpanContext ctx(N, ph);
    MetricReport m = check_intertwining(ctx, true, false);
    m.tol = tol;
    out["metric"] = to_json(m);
    cl.add("eta E_k", m.res_Ek, tol);
    cl.add("eta S+-", m.res_Spm, tol);
    cl.add("eta S^z", m.res_Sz, tol);
    cl.add("eta H", m.res_H, tol);
    cl.add("pairing", m.pairing, tol);
    cl.add("Im spectrum", m.spectrum_max_imag, tol);
    cl.require("Gram form positive", m.min_eig > 1e-8, std::to_string(m.min_eig));

    COperatorPair cp(ctx);
    CCReport cc = cc_commute_check(cp);
    cl.add("C^2 = 1", cc.C2, tol);
    cl.add("C'^2 = 1", cc.Cp2, tol);
    cl.add("[C, C']", cc.CCp, tol);
    cl.add("P eta P eta = 1", cc.PetaP, tol);
    cl.add("R eta R eta = 1", cc.RetaR, tol);
    Table4Report t4 = table4_check(cp);
    cl.add("commutation table", t4.max(), tol);
    CprimeActionReport ca = cprime_path_action_check(ctx);
    cl.add("C' path action", ca.path_action, tol);
    cl.add("C' through S^+-", ca.qgroup_form, tol);
    BraidReport br = braid_identity_check(ctx);
    out["braid"] = to_json(br, tol);
    cl.add("chi_j", br.max_chi_residual(), tol);
    cl.add("beta^2", br.max_beta2_error(), tol);
    for (const auto& b : br.blocks) {
      auto d = beta_squared_diagrammatic(N, (N - b.two_j) / 2 - 1);
      cl.require("diagram oracle j=" + spin_label(b.two_j), d.diagonal && d.exponent && *d.exponent == -b.beta2_exponent);
    }
    if (ctx.full_space()) {
      FullSpaceCReport fs = full_space_c_check(ctx);
      cl.add("full space C^2", fs.C2, tol);
      cl.add("full space C'^2", fs.Cp2, tol);
      cl.add("full space [C, C']", fs.CCp, tol);
      cl.add("full space table", fs.table4.max(), tol);
      cl.require("full space eta positive", fs.min_eig > 1e-8, std::to_string(fs.min_eig));
    }
    if (expect_fail && ph.is_root_of_unity() && !ctx.full_space()) {
      UnreducedPositivity u = unreduced_positivity(N, ph, tol);
      out["unreduced"] = {{"rank", u.rank}, {"dim", u.dim}, {"min_eig", u.min_eig}, {"sqrt_failed", u.sqrt_failed}};
      cl.require("expected failure: unreduced eta singular", u.rank < u.dim,
                 "rank " + std::to_string(u.rank) + " of " + std::to_string(u.dim));
    }
  } catch (const std::exception& e) {
    cl.require("exception", false, e.what());
  }
  out["checks"] = cl.items;
  out["pass"] = cl.ok;
  out["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline nlohmann::json bethe_campaign(int N, double r, int max_magnons, double tol) {
  QPhase ph(r);
  ChainSpec spec(N, ph);
  nlohmann::json out = {{"N", N}, {"r", r}, {"tolerance", tol}, {"version", kVersion}};
  nlohmann::json states = nlohmann::json::array(), coverage = nlohmann::json::array();
  std::vector<BetheState> all;
  bool ok = true;
  int formula_misses = 0;
  for (int n = 0; n <= std::min(max_magnons, N / 2); ++n) {
    BetheSolveStats st;
    auto sols = solve_bae(N, n, ph, &st);
    auto hw = hw_spectrum(spec, n);
    std::vector<bool> hit(hw.size(), false);
    for (const auto& s : sols) {
      PTReport pt = pt_eigenvalue_check(s, ph);
      nlohmann::json j = to_json(s, pt, ph, tol);
      j["pt_formula_holds"] = pt.deviation < tol;
      j["pt_corrected_deviation"] = pt.corrected_deviation;
      j["prop_ratio"] = {pt.prop_ratio.real(), pt.prop_ratio.imag()};
      j["energy_formula"] = {bethe_energy(s.roots.roots, ph).real(), bethe_energy(s.roots.roots, ph).imag()};
      j["energy_printed"] = {bethe_energy_printed(N, s.roots.roots, ph).real(), bethe_energy_printed(N, s.roots.roots, ph).imag()};
      formula_misses += pt.deviation >= tol;
      ok = ok && s.eigen_residual < tol && s.hw_residual < tol && pt.corrected_deviation < tol;
      for (size_t i = 0; i < hw.size(); ++i)
        if (!hit[i] && std::abs(hw[i] - s.energy) < tol) {
          hit[i] = true;
          break;
        }
      states.push_back(j);
      all.push_back(s);
    }
    coverage.push_back({{"n", n},
                        {"highest_weight_states", hw.size()},
                        {"matched", std::count(hit.begin(), hit.end(), true)},
                        {"seeds", st.seeds},
                        {"converged", st.converged},
                        {"rejected_trivial", st.rejected_trivial},
                        {"rejected_null", st.rejected_null},
                        {"rejected_residual", st.rejected_residual},
                        {"duplicates", st.duplicates}});
  }
  EnergyFit f = fit_energy(all, ph);
  out["states"] = states;
  out["coverage"] = coverage;
  out["energy_fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"max_dev", f.max_dev}, {"points", f.points},
                       {"printed_slope", 4.0}, {"printed_intercept", (N - 1) * ph.loop() / 2}};
  out["pt_formula_misses"] = formula_misses;
  out["pass"] = ok;
  return out;
}

inline nlohmann::json jordan_campaign(int N, double r, std::optional<int> sector_two_m, double tol) {
  QPhase ph(r);
  ChainSpec spec(N, ph);
  JordanReport rep;
  if (sector_two_m) {
    SectorMap sec = make_sector(N, *sector_two_m);
    rep = detect_jordan_blocks(CMatrix(sector_restrict(hamiltonian_sparse(spec), sec)), *sector_two_m);
  } else {
    rep = detect_jordan_blocks(spec);
  }
  return {{"N", N}, {"r", r}, {"jordan", to_json(rep)}, {"warnings", rep.warnings},
          {"cluster_radius", rep.cluster_radius}, {"rank_tol", rep.rank_tol}, {"tolerance", tol}, {"version", kVersion}};
}

}  // namespace qxxz
