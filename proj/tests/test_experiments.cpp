#include "wearfem/experiments.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

using namespace wearfem;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(WEARFEM_CLI_PATH) + " " + args + " > " + log.string() +
      " 2>&1";
  const int st = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(st));
  return WEXITSTATUS(st);
}

}  // namespace

TEST_CASE("presets carry the benchmark data sets") {
  const Scenario f1 = preset("fig1");
  CHECK(f1.lambda == 4.0);
  CHECK(f1.eta == 4.0);
  CHECK(f1.cp == 100.0);
  CHECK(f1.gap == 0.1);
  CHECK(f1.f0.x == 0.0);
  CHECK(f1.f0.y == -2.0);
  CHECK(f1.fN.x == 0.0);
  CHECK(f1.fN.y == 0.0);
  CHECK(f1.mu == 0.3);
  CHECK(f1.kappa == 0.04);
  CHECK(f1.v_star.x == 1.0);
  CHECK(f1.v_star.y == 0.0);
  CHECK(f1.T == 1.0);
  CHECK(f1.n == 16);
  CHECK(f1.nsteps == 16);

  CHECK(preset("fig2").kappa == 0.08);
  CHECK(preset("fig3").mu == 1.0);
  const Scenario f4 = preset("fig4");
  CHECK(f4.kappa == 0.02);
  CHECK(f4.v_star.x == -1.0);
  const Scenario t1 = preset("table1");
  CHECK(t1.f0.x == -0.5);
  CHECK(t1.f0.y == -2.0);
  CHECK(t1.fN.x == -0.5);
  CHECK(t1.fN.y == -0.5);
  CHECK(t1.mu == 1.0);
  CHECK(t1.kappa == 0.05);

  CHECK_THROWS_AS(preset("fig5"), std::invalid_argument);
  CHECK_THROWS_AS(preset(""), std::invalid_argument);

  // derived pieces agree with the stored fields
  CHECK(f1.material().m_F() == 8.0);
  CHECK(f1.compliance().p(0.05) == doctest::Approx(5.0));
  const LoadSpec ld = t1.loads();
  const Vec2 body = ld.body({0.3, 0.7}, 0.5);
  CHECK(body.x == -0.5);
  CHECK(body.y == -2.0);
  const Vec2 trac = ld.traction({1.0, 0.5}, 0.5);
  CHECK(trac.x == -0.5);
  CHECK(trac.y == -0.5);
  const FoundationMotion mo = f4.motion(5);
  CHECK(mo.mu.size() == 5);
  CHECK(mo.kappa.size() == 5);
  CHECK(n_star(mo, 0.3).x == 1.0);  // opposite to v* = (-1, 0)
  CHECK(alpha(mo, 0.3, 2) == doctest::Approx(0.02));
}

TEST_CASE("config files override scenario fields") {
  const fs::path cfg = temp_file("wearfem_cfg_test.txt");
  {
    std::ofstream out(cfg);
    out << "# comment line\n"
        << "\n"
        << "mu = 0.55   # trailing comment\n"
        << "  n=8\n"
        << "f0_y = -1.25\n"
        << "vstar_x = -2\n";
  }
  const auto kv = read_config(cfg.string());
  REQUIRE(kv.size() == 4);
  CHECK(kv.at("mu") == "0.55");
  CHECK(kv.at("n") == "8");

  Scenario sc = preset("fig1");
  apply_config(sc, kv);
  CHECK(sc.mu == 0.55);
  CHECK(sc.n == 8);
  CHECK(sc.f0.y == -1.25);
  CHECK(sc.v_star.x == -2.0);
  CHECK(sc.kappa == 0.04);  // untouched fields keep preset values

  CHECK_THROWS_AS(apply_config(sc, {{"frobnicate", "1"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config(sc, {{"mu", "fast"}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_config(sc, {{"mu", "0.5x"}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_config(sc, {{"n", "2.5"}}), std::invalid_argument);

  {
    std::ofstream out(cfg);
    out << "mu 0.5\n";
  }
  CHECK_THROWS_AS(read_config(cfg.string()), std::runtime_error);
  CHECK_THROWS_AS(read_config("/nonexistent/wearfem.cfg"),
                  std::runtime_error);
  fs::remove(cfg);
}

TEST_CASE("convergence tables round-trip through CSV") {
  std::vector<ConvergenceRow> rows(3);
  rows[0] = {1.0, 0.4169, std::nan(""), 0.29, std::nan("")};
  rows[1] = {0.5, 0.2684, 0.6354871236548712, 0.1032, 1.49};
  rows[2] = {0.25, 0.1436, 0.90229999999999999, 0.0383, 1.43};

  const fs::path csv = temp_file("wearfem_conv_test.csv");
  write_convergence_csv(rows, csv.string());

  const std::string text = slurp(csv);
  CHECK(text.rfind("h_plus_k,err_u_rel,order_u,err_w_rel,order_w\n", 0) == 0);
  // NaN orders serialize as empty fields
  CHECK(text.find("1,0.41689999999999999,,0.28999999999999998,") !=
        std::string::npos);

  const auto back = read_convergence_csv(csv.string());
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].h_plus_k == rows[i].h_plus_k);
    CHECK(back[i].err_u_rel == rows[i].err_u_rel);
    CHECK(back[i].err_w_rel == rows[i].err_w_rel);
    if (std::isnan(rows[i].order_u)) {
      CHECK(std::isnan(back[i].order_u));
      CHECK(std::isnan(back[i].order_w));
    } else {
      CHECK(back[i].order_u == rows[i].order_u);
      CHECK(back[i].order_w == rows[i].order_w);
    }
  }
  CHECK_THROWS_AS(read_convergence_csv("/nonexistent/conv.csv"),
                  std::runtime_error);

  const fs::path loglog = temp_file("wearfem_loglog_test.dat");
  write_loglog_data(rows, loglog.string());
  std::ifstream in(loglog);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "# log10_h_plus_k log10_err_u_rel log10_err_w_rel");
  std::getline(in, line);
  std::istringstream ls(line);
  double lh = 0.0, lu = 0.0, lw = 0.0;
  ls >> lh >> lu >> lw;
  CHECK(lh == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(lu == doctest::Approx(std::log10(0.4169)).epsilon(1e-12));
  CHECK(lw == doctest::Approx(std::log10(0.29)).epsilon(1e-12));
  fs::remove(csv);
  fs::remove(loglog);
}

TEST_CASE("refinement study on a desk-size ladder behaves sanely") {
  const Scenario sc = preset("table1");
  const ConvergenceStudy study = convergence_study(sc, {2, 4}, 8);

  REQUIRE(study.rows.size() == 2);
  CHECK(study.rows[0].h_plus_k == 1.0);
  CHECK(study.rows[1].h_plus_k == 0.5);
  CHECK(study.ref_u_norm > 0.0);
  CHECK(study.ref_w_norm > 0.0);
  CHECK(study.rows[0].err_u_rel > study.rows[1].err_u_rel);
  CHECK(study.rows[0].err_w_rel > study.rows[1].err_w_rel);
  CHECK(study.rows[1].err_u_rel > 0.0);
  CHECK(std::isnan(study.rows[0].order_u));
  CHECK(std::isnan(study.rows[0].order_w));
  CHECK(std::isfinite(study.rows[1].order_u));
  CHECK(study.rows[1].order_u ==
        doctest::Approx(std::log2(study.rows[0].err_u_rel /
                                  study.rows[1].err_u_rel)));
  REQUIRE(study.max_err_u.size() == 2);
  // the max over shared time nodes dominates the final-time error
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(study.max_err_u[i] >= study.rows[i].err_u_rel - 1e-14);
    CHECK(study.max_err_w[i] >= study.rows[i].err_w_rel - 1e-14);
  }

  // identical call, identical table
  const ConvergenceStudy again = convergence_study(sc, {2, 4}, 8);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(again.rows[i].err_u_rel == study.rows[i].err_u_rel);
    CHECK(again.rows[i].err_w_rel == study.rows[i].err_w_rel);
  }

  CHECK_THROWS_AS(convergence_study(sc, {}, 8), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(sc, {4, 2}, 8), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(sc, {2, 4}, 4), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(sc, {2, 3}, 8), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(sc, {4}, 12), std::invalid_argument);
}

TEST_CASE("temporal refinement on a fixed mesh shrinks the gap to the "
          "reference run") {
  Scenario sc = preset("fig1");
  sc.n = 4;
  const std::vector<double> errs = temporal_study(sc, {2, 4}, 8);
  REQUIRE(errs.size() == 2);
  CHECK(errs[0] > errs[1]);
  CHECK(errs[1] > 0.0);
  CHECK_THROWS_AS(temporal_study(sc, {3}, 8), std::invalid_argument);
  CHECK_THROWS_AS(temporal_study(sc, {8}, 8), std::invalid_argument);
}

TEST_CASE("deformed-mesh export writes VTK and a wear profile") {
  Scenario sc = preset("fig2");
  sc.n = 2;
  sc.nsteps = 2;
  const Mesh mesh = Mesh::unit_square(sc.n);
  const FeSpace space(mesh, sc.gap);
  const LinearCompliance law = sc.compliance();
  const ProblemData data{sc.material(), &law,
                         sc.motion(static_cast<int>(
                             mesh.contact_nodes().size())),
                         sc.loads()};
  const Trajectory traj =
      run(mesh, space, data, TimePartition::uniform(sc.T, sc.nsteps));

  const fs::path dir = temp_file("wearfem_export_test");
  const ExportPaths paths =
      export_deformed(mesh, space, traj, sc, dir.string());
  CHECK(fs::exists(paths.vtk));
  CHECK(fs::exists(paths.wear_profile));
  CHECK(paths.vtk.find("fig2_deformed.vtk") != std::string::npos);

  const std::string vtk = slurp(paths.vtk);
  CHECK(vtk.rfind("# vtk DataFile", 0) == 0);
  CHECK(vtk.find("POINTS 9") != std::string::npos);
  CHECK(vtk.find("displacement") != std::string::npos);

  std::ifstream prof(paths.wear_profile);
  std::string header;
  std::getline(prof, header);
  CHECK(header == "# x wear");
  double prev_x = -1.0;
  int rows = 0;
  for (std::string line; std::getline(prof, line);) {
    std::istringstream ls(line);
    double x = 0.0, wv = 0.0;
    REQUIRE(static_cast<bool>(ls >> x >> wv));
    CHECK(x > prev_x);  // profile runs left to right along the contact side
    CHECK(wv >= 0.0);
    prev_x = x;
    ++rows;
  }
  CHECK(rows == static_cast<int>(mesh.contact_nodes().size()));
  fs::remove_all(dir);
}

TEST_CASE("command line driver runs end to end") {
  const fs::path log = temp_file("wearfem_cli_log.txt");

  SUBCASE("smallness check reports the material bound") {
    CHECK(run_cli("check --scenario fig1", log) == 0);
    const std::string out = slurp(log);
    CHECK(out.find("m_F = 8") != std::string::npos);
    CHECK(out.find("smallness condition") != std::string::npos);
  }

  SUBCASE("simulate writes the three artifacts") {
    const fs::path dir = temp_file("wearfem_cli_sim");
    CHECK(run_cli("simulate --scenario fig1 --n 4 --nsteps 4 --out " +
                      dir.string(),
                  log) == 0);
    CHECK(fs::exists(dir / "fig1_deformed.vtk"));
    CHECK(fs::exists(dir / "fig1_wear_profile.txt"));
    CHECK(fs::exists(dir / "fig1_trajectory.txt"));
    const std::string out = slurp(log);
    CHECK(out.find("max wear") != std::string::npos);
    fs::remove_all(dir);
  }

  SUBCASE("converge writes a parsable study table") {
    const fs::path dir = temp_file("wearfem_cli_conv");
    CHECK(run_cli("converge --scenario table1 --max-level 4 --ref-level 8 "
                  "--out " +
                      dir.string(),
                  log) == 0);
    const auto rows = read_convergence_csv((dir / "convergence.csv").string());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].h_plus_k == 1.0);
    CHECK(std::isnan(rows[0].order_u));
    CHECK(std::isfinite(rows[1].order_u));
    CHECK(fs::exists(dir / "convergence_loglog.dat"));
    const std::string out = slurp(log);
    CHECK(out.find("reference level 8") != std::string::npos);
    fs::remove_all(dir);
  }

  SUBCASE("the scalar backend is selectable") {
    CHECK(run_cli("--backend scalar check --scenario fig1", log) == 0);
    CHECK(run_cli("--backend quantum check", log) != 0);
  }

  SUBCASE("bad invocations exit nonzero") {
    CHECK(run_cli("", log) != 0);                      // subcommand required
    CHECK(run_cli("frobnicate", log) != 0);            // unknown subcommand
    CHECK(run_cli("simulate --scenario fig9", log) != 0);
    CHECK(run_cli("converge --max-level 1", log) != 0);
  }

  fs::remove(log);
}
