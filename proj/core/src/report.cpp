#include "peerreview/report.hpp"

#include "json.hpp"

#include "peerreview/config.hpp"

namespace peerreview::report {

namespace {

using nlohmann::ordered_json;

double r12(double x) { return config::round_sig(x); }

ordered_json check(const reform::PremiseCheck& c) {
  return {{"holds", c.holds}, {"lhs", r12(c.lhs)}, {"rhs", r12(c.rhs)}};
}

ordered_json solution(const reform::ReformSolution& s) {
  const auto& g = s.grid_meta;
  return {{"gamma", r12(s.gamma)},
          {"m", r12(s.m)},
          {"K_star", r12(s.K_star)},
          {"p_det_star", r12(s.p_det_star)},
          {"lambda", r12(s.lambda)},
          {"U_E_star", r12(s.U_E_star)},
          {"U_A_star", r12(s.U_A_star)},
          {"U_A_bar", r12(s.U_A_bar)},
          {"binding", s.binding},
          {"U_E_decentralized", r12(s.U_E_decentralized)},
          {"foc_residual_K", r12(s.foc_residual_K)},
          {"foc_residual_p", r12(s.foc_residual_p)},
          {"grid",
           {{"K_points", g.K_points},
            {"p_points", g.p_points},
            {"K_min", r12(g.K_min)},
            {"K_max", r12(g.K_max)},
            {"K_step", r12(g.K_step)},
            {"p_max", r12(g.p_max)},
            {"p_step", r12(g.p_step)},
            {"feasible_cells", g.feasible_cells},
            {"refined", g.refined},
            {"panel_size", g.panel_size}}}};
}

ordered_json premises(const reform::PremiseReport& p) {
  return {{"rat_race_before_transition", check(p.p1)},
          {"detection_raises_polish", check(p.p2)},
          {"effort_below_sharpness_bound", check(p.p3)},
          {"detection_net_benefit", check(p.p4)},
          {"all_hold", p.p1.holds && p.p2.holds && p.p3.holds && p.p4.holds},
          {"composition_gain", r12(p.composition_gain)},
          {"sample_size_loss", r12(p.sample_size_loss)},
          {"net_sorting_benefit", r12(p.net_sorting_benefit)},
          {"compensation_cost", r12(p.compensation_cost)},
          {"lambda", r12(p.lambda_used)},
          {"psi_1", r12(p.psi_1)},
          {"psi_m1", r12(p.psi_m1)},
          {"rho_bar", r12(p.rho_bar)},
          {"rho_bar_at_m", r12(p.rho_bar_at_m)},
          {"rho_bar_exact", r12(p.rho_bar_exact)},
          {"rho_bar_gaussian", r12(p.rho_bar_gaussian)},
          {"m_bar", r12(p.m_bar)},
          {"m1", r12(p.m1)},
          {"margin", r12(p.m_bar / p.m1)},
          {"panel_size", p.panel_size}};
}

ordered_json restoration(const reform::RestorationResult& r) {
  return {{"m", r12(r.m)},
          {"pre_U_E", r12(r.pre_U_E)},
          {"pre_N", r.pre_N},
          {"best_post_U_E", r12(r.best_post_U_E)},
          {"best_N", r.best_N},
          {"best_K", r12(r.best_K)},
          {"best_p_det", r12(r.best_p_det)},
          {"gap", r12(r.gap)}};
}

ordered_json misalignment(const editor::Misalignment& m) {
  return {{"dU_A", r12(m.dU_A)},
          {"dU_E", r12(m.dU_E)},
          {"U_A_before", r12(m.U_A_before)},
          {"U_A_after", r12(m.U_A_after)},
          {"U_E_before", r12(m.U_E_before)},
          {"U_E_after", r12(m.U_E_after)},
          {"m_before", r12(m.m_before)},
          {"m_after", r12(m.m_after)},
          {"N_before", m.N_before},
          {"N_after", m.N_after}};
}

}  // namespace

std::string to_json(const reform::ReformSolution& s) { return solution(s).dump(2) + "\n"; }
std::string to_json(const reform::PremiseReport& p) { return premises(p).dump(2) + "\n"; }
std::string to_json(const reform::RestorationResult& r) { return restoration(r).dump(2) + "\n"; }
std::string to_json(const editor::Misalignment& m) { return misalignment(m).dump(2) + "\n"; }

std::string to_json(const sweep::BaselineReport& b) {
  ordered_json j{{"gamma1", r12(b.gamma1)},
                 {"m1", r12(b.m1)},
                 {"m_bar", r12(b.premises.m_bar)},
                 {"rho_bar", r12(b.premises.rho_bar)},
                 {"psi_1", r12(b.premises.psi_1)},
                 {"reform_panel_size", b.reform_panel_size},
                 {"pre_transition", solution(b.pre)},
                 {"post_transition", solution(b.post)},
                 {"misalignment", misalignment(b.misalignment)},
                 {"restoration", restoration(b.restoration)},
                 {"premises", premises(b.premises)}};
  return j.dump(2) + "\n";
}

}  // namespace peerreview::report
