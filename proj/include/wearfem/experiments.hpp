#pragma once

// Preset scenarios, the mesh/time refinement studies, and result export
// (VTK, wear profiles, convergence tables).

#include <map>
#include <string>
#include <vector>

#include "wearfem/time_stepper.hpp"

namespace wearfem {

// All presets share the unit-square geometry; constants below are the
// benchmark data. Fields are plain values so a config file can override
// any of them.
struct Scenario {
  std::string name = "fig1";
  double lambda = 4.0;
  double eta = 4.0;
  double cp = 100.0;  // compliance stiffness
  double gap = 0.1;
  Vec2 f0{0.0, -2.0};  // body force density
  Vec2 fN{0.0, 0.0};   // traction on the Neumann part
  double mu = 0.3;     // friction coefficient
  double kappa = 0.04; // wear coefficient
  Vec2 v_star{1.0, 0.0};
  double T = 1.0;
  int n = 16;       // mesh subdivisions
  int nsteps = 16;  // time steps

  MaterialParams material() const { return {lambda, eta}; }
  LinearCompliance compliance() const { return LinearCompliance(cp); }
  LoadSpec loads() const;
  FoundationMotion motion(int n_contact_nodes) const;
};

// names: fig1, fig2, fig3, fig4, table1; throws on anything else
Scenario preset(const std::string& name);

// key = value overrides ('#' comments); keys: lambda eta cp gap f0_x f0_y
// fN_x fN_y mu kappa vstar_x vstar_y T n nsteps
std::map<std::string, std::string> read_config(const std::string& path);
void apply_config(Scenario& sc, const std::map<std::string, std::string>& kv);

struct ConvergenceRow {
  double h_plus_k = 0.0;
  double err_u_rel = 0.0;
  double order_u = 0.0;  // NaN on the first row
  double err_w_rel = 0.0;
  double order_w = 0.0;  // NaN on the first row
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double ref_u_norm = 0.0;  // strain norm of the reference displacement
  double ref_w_norm = 0.0;  // contact L2 norm of the reference wear
  // diagnostics: max over shared time nodes of the same relative errors
  std::vector<double> max_err_u;
  std::vector<double> max_err_w;
};

// Runs the scenario on each level (mesh n = steps N = level), prolongs the
// final-time fields through the nested ladder onto the reference level,
// and reports relative errors and successive orders log2(e_i/e_{i+1}).
// Levels and the reference must form a power-of-two ladder.
ConvergenceStudy convergence_study(const Scenario& sc,
                                   const std::vector<int>& levels,
                                   int ref_level,
                                   const SolverSettings& settings = {});

// Fixed mesh, refined time grid: for each N, max over that run's time
// nodes of v_norm(u_ref(t) - u_N(t)) against the ref_steps run.
std::vector<double> temporal_study(const Scenario& sc,
                                   const std::vector<int>& step_counts,
                                   int ref_steps,
                                   const SolverSettings& settings = {});

struct ExportPaths {
  std::string vtk;
  std::string wear_profile;
};

// Deformed configuration at final time (points displaced by u_N, the field
// itself attached as point data) plus a two-column x/wear profile.
ExportPaths export_deformed(const Mesh& mesh, const FeSpace& space,
                            const Trajectory& traj, const Scenario& sc,
                            const std::string& out_dir);

// header h_plus_k,err_u_rel,order_u,err_w_rel,order_w; full precision;
// NaN orders serialize as empty fields and parse back as NaN
void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           const std::string& path);
std::vector<ConvergenceRow> read_convergence_csv(const std::string& path);

// log10 columns of the same table for log-log plots
void write_loglog_data(const std::vector<ConvergenceRow>& rows,
                       const std::string& path);

int cli_main(int argc, char** argv);

}  // namespace wearfem
