#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wearfem/experiments.hpp"
#include "wearfem/kernels.hpp"

namespace wearfem {

namespace {

Scenario build_scenario(const std::string& name, const std::string& config) {
  Scenario sc = preset(name);
  if (!config.empty()) apply_config(sc, read_config(config));
  return sc;
}

void print_row(const ConvergenceRow& r) {
  auto ord = [](double x) {
    if (std::isnan(x)) return std::string("      -");
    char b[32];
    std::snprintf(b, sizeof b, "%7.4f", x);
    return std::string(b);
  };
  char buf[160];
  std::snprintf(buf, sizeof buf, "%10.6g  %12.5e  %s  %12.5e  %s",
                r.h_plus_k, r.err_u_rel, ord(r.order_u).c_str(), r.err_w_rel,
                ord(r.order_w).c_str());
  std::cout << buf << "\n";
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{
      "quasistatic frictional contact with surface wear on the unit square"};
  app.require_subcommand(1);
  std::string backend;
  app.add_option("--backend", backend,
                 "force a kernel backend: scalar or avx2");

  auto* sim = app.add_subcommand(
      "simulate", "run one scenario and export deformed mesh + wear profile");
  std::string sim_scenario = "fig1", sim_out = ".", sim_config;
  int sim_n = 0, sim_nsteps = 0;
  sim->add_option("--scenario", sim_scenario,
                  "preset: fig1 fig2 fig3 fig4 table1");
  sim->add_option("--n", sim_n, "mesh subdivisions (overrides preset)");
  sim->add_option("--nsteps", sim_nsteps, "time steps (overrides preset)");
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--config", sim_config, "key=value overrides file");

  auto* conv = app.add_subcommand(
      "converge", "mesh/time refinement study against a reference level");
  int max_level = 32, ref_level = 64;
  std::string conv_out = ".", conv_scenario = "table1", conv_config;
  conv->add_option("--max-level", max_level, "finest study level (default 32)");
  conv->add_option("--ref-level", ref_level,
                   "reference level (default 64)");
  conv->add_option("--scenario", conv_scenario, "preset (default table1)");
  conv->add_option("--out", conv_out, "output directory");
  conv->add_option("--config", conv_config, "key=value overrides file");

  auto* chk = app.add_subcommand(
      "check", "print the fixed-point smallness report for a scenario");
  std::string chk_scenario = "fig1", chk_config;
  chk->add_option("--scenario", chk_scenario, "preset name");
  chk->add_option("--config", chk_config, "key=value overrides file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!backend.empty()) {
      if (backend == "scalar")
        kernels::select_backend(kernels::Backend::Scalar);
      else if (backend == "avx2")
        kernels::select_backend(kernels::Backend::Avx2);
      else
        throw std::invalid_argument("unknown backend: " + backend);
    }

    if (sim->parsed()) {
      Scenario sc = build_scenario(sim_scenario, sim_config);
      if (sim_n > 0) sc.n = sim_n;
      if (sim_nsteps > 0) sc.nsteps = sim_nsteps;

      const Mesh mesh = Mesh::unit_square(sc.n);
      const FeSpace space(mesh, sc.gap);
      const LinearCompliance law = sc.compliance();
      ProblemData data{sc.material(), &law,
                       sc.motion(static_cast<int>(mesh.contact_nodes().size())),
                       sc.loads()};
      const Trajectory traj =
          run(mesh, space, data, TimePartition::uniform(sc.T, sc.nsteps));

      const ExportPaths paths =
          export_deformed(mesh, space, traj, sc, sim_out);
      const std::string table =
          sim_out + "/" + sc.name + "_trajectory.txt";
      write_trajectory_table(traj, space, table);

      double max_wear = 0.0;
      for (double w : traj.w.back().values) max_wear = std::max(max_wear, w);
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "scenario %s: n=%d nsteps=%d  max wear %.6g",
                    sc.name.c_str(), sc.n, sc.nsteps, max_wear);
      std::cout << buf << "\n"
                << "wrote " << paths.vtk << "\n"
                << "wrote " << paths.wear_profile << "\n"
                << "wrote " << table << "\n";
      return 0;
    }

    if (conv->parsed()) {
      Scenario sc = build_scenario(conv_scenario, conv_config);
      std::vector<int> levels;
      for (int lv = 2; lv <= max_level; lv *= 2) levels.push_back(lv);
      if (levels.empty())
        throw std::invalid_argument("converge: max-level must be >= 2");

      const ConvergenceStudy study =
          convergence_study(sc, levels, ref_level);

      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "reference level %d: |u|_V = %.5f, |w|_W = %.5f",
                    ref_level, study.ref_u_norm, study.ref_w_norm);
      std::cout << buf << "\n";
      std::cout << "  h_plus_k     err_u_rel    order_u     err_w_rel    "
                   "order_w\n";
      for (const auto& r : study.rows) print_row(r);
      for (std::size_t i = 0; i < study.rows.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "max-over-steps diagnostics at h+k=%-8.6g  u %.5e  w "
                      "%.5e",
                      study.rows[i].h_plus_k, study.max_err_u[i],
                      study.max_err_w[i]);
        std::cout << buf << "\n";
      }

      namespace fs = std::filesystem;
      std::error_code ec;
      fs::create_directories(conv_out, ec);
      if (ec)
        throw std::runtime_error("cannot create output directory " +
                                 conv_out + ": " + ec.message());
      const std::string csv = conv_out + "/convergence.csv";
      const std::string loglog = conv_out + "/convergence_loglog.dat";
      write_convergence_csv(study.rows, csv);
      write_loglog_data(study.rows, loglog);
      std::cout << "wrote " << csv << "\nwrote " << loglog << "\n";
      return 0;
    }

    // check
    Scenario sc = build_scenario(chk_scenario, chk_config);
    const Mesh mesh = Mesh::unit_square(sc.n);
    const FeSpace space(mesh, sc.gap);
    const LinearCompliance law = sc.compliance();
    const std::vector<double> mu(mesh.contact_nodes().size(), sc.mu);
    const SmallnessReport rep =
        check_smallness(sc.material(), law, mu, mesh, space);
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "scenario %s (n=%d): c0 = %.6g, lhs = c0^2*L_p*max|mu| = "
                  "%.6g, m_F = %g",
                  sc.name.c_str(), sc.n, rep.c0, rep.lhs, rep.m_F);
    std::cout << buf << "\n";
    std::cout << "smallness condition "
              << (rep.satisfied ? "satisfied" : "NOT satisfied (fixed point "
                                                "has no contraction guarantee)")
              << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wearfem
