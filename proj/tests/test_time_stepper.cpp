#include "wearfem/time_stepper.hpp"

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
#include "wearfem/assembly.hpp"
#include "wearfem/contact_law.hpp"
#include "wearfem/fe_space.hpp"
#include "wearfem/mesh.hpp"

using namespace wearfem;

namespace {

ProblemData make_data(const LinearCompliance& law, Vec2 f0, Vec2 fN,
                      double kappa, double mu, Vec2 v_star, int nc) {
  ProblemData d{MaterialParams(4.0, 4.0), &law,
                make_constant_motion(v_star, kappa, mu, nc), LoadSpec{}};
  d.loads.body = [f0](Vec2, double) { return f0; };
  d.loads.traction = [fN](Vec2, double) { return fN; };
  return d;
}

int find_vertex(const Mesh& m, double x, double y) {
  for (std::size_t v = 0; v < m.vertices().size(); ++v)
    if (std::abs(m.vertices()[v].x - x) < 1e-12 &&
        std::abs(m.vertices()[v].y - y) < 1e-12)
      return static_cast<int>(v);
  return -1;
}

DisplacementField uniform_trace(const FeSpace& s, double unu) {
  DisplacementField u;
  u.values.assign(s.n_free(), 0.0);
  for (const auto& dof : s.contact_dofs())
    if (dof[0] >= 0) u.values[dof[1]] = -unu;
  return u;
}

}  // namespace

TEST_CASE("time partitions are validated and uniform steps are exact") {
  CHECK_THROWS_AS(TimePartition({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimePartition({0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimePartition({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimePartition::uniform(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(TimePartition::uniform(1.0, 0), std::invalid_argument);

  const TimePartition p = TimePartition::uniform(1.0, 16);
  CHECK(p.steps() == 16);
  CHECK(p.total_time() == 1.0);
  for (int n = 0; n < 16; ++n) CHECK(p.step(n) == 0.0625);
  CHECK(p.max_step() == 0.0625);

  const TimePartition q({0.0, 0.1, 0.4, 1.0});
  CHECK(q.steps() == 3);
  CHECK(q.max_step() == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("a single wear update reproduces hand-computed sums") {
  const Mesh mesh = Mesh::unit_square(4);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const int nc = static_cast<int>(mesh.contact_nodes().size());
  const FoundationMotion motion =
      make_constant_motion({1.0, 0.0}, 0.05, 0.3, nc);

  WearField w;
  w.values.assign(nc, 0.0);

  SUBCASE("one step: k alpha p = 0.5 * 0.05 * 100 * 0.1") {
    const DisplacementField u = uniform_trace(space, 0.1);
    const WearField out = wear_update(space, law, motion, 0.0, 0.5, u, w);
    CHECK(out.values[0] == 0.0);  // clamped corner carries no wear
    for (int c = 1; c < nc; ++c)
      CHECK(out.values[c] == doctest::Approx(0.25).epsilon(1e-14));
  }

  SUBCASE("uneven steps with the same contact pressure accumulate linearly") {
    // keep p(u_nu - w) = 2 by tracking the trace 0.02 above current wear
    WearField acc = w;
    for (double k : {0.1, 0.3, 0.6}) {
      const DisplacementField u = uniform_trace(space, acc.values[1] + 0.02);
      acc = wear_update(space, law, motion, 0.0, k, u, acc);
    }
    // total = (0.1 + 0.3 + 0.6) * 0.05 * 2 = 0.1
    for (int c = 1; c < nc; ++c)
      CHECK(acc.values[c] == doctest::Approx(0.1).epsilon(1e-13));
  }

  SUBCASE("separation leaves wear untouched bitwise") {
    WearField base = w;
    for (int c = 1; c < nc; ++c) base.values[c] = 0.01 * c;
    const DisplacementField u = uniform_trace(space, -0.05);
    const WearField out = wear_update(space, law, motion, 0.0, 0.5, u, base);
    CHECK(std::memcmp(out.values.data(), base.values.data(),
                      base.values.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("zero loads evolve to the identically zero trajectory") {
  const Mesh mesh = Mesh::unit_square(2);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, 0.0}, {0.0, 0.0}, 0.04, 0.3,
                                     {1.0, 0.0}, 3);
  const TimePartition part = TimePartition::uniform(1.0, 4);
  const Trajectory traj = run(mesh, space, data, part);
  REQUIRE(traj.u.size() == 5);
  REQUIRE(traj.w.size() == 5);
  REQUIRE(traj.times == part.nodes());
  for (const auto& u : traj.u)
    for (double x : u.values) CHECK(x == 0.0);
  for (const auto& w : traj.w)
    for (double x : w.values) CHECK(x == 0.0);
}

TEST_CASE("trajectory invariants: wear starts at zero and never decreases") {
  const Mesh mesh = Mesh::unit_square(4);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, -2.0}, {0.0, 0.0}, 0.04, 0.3,
                                     {1.0, 0.0}, 5);
  const Trajectory traj =
      run(mesh, space, data, TimePartition::uniform(1.0, 4));
  REQUIRE(traj.u.size() == 5);
  for (double x : traj.w.front().values) CHECK(x == 0.0);
  for (std::size_t n = 0; n + 1 < traj.w.size(); ++n)
    for (std::size_t c = 0; c < traj.w[n].values.size(); ++c)
      CHECK(traj.w[n + 1].values[c] >= traj.w[n].values[c]);
  for (const auto& u : traj.u) CHECK(static_cast<bool>(space.is_admissible(u)));
  REQUIRE(traj.reports.size() == 5);
  for (const auto& rep : traj.reports) CHECK(rep.kkt_residual <= 1e-10);
}

TEST_CASE("uniform and hand-listed partitions give bitwise equal runs") {
  const Mesh mesh = Mesh::unit_square(2);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, -2.0}, {0.0, 0.0}, 0.04, 0.3,
                                     {1.0, 0.0}, 3);
  const Trajectory a =
      run(mesh, space, data, TimePartition::uniform(1.0, 4));
  const Trajectory b =
      run(mesh, space, data, TimePartition({0.0, 0.25, 0.5, 0.75, 1.0}));
  REQUIRE(a.u.size() == b.u.size());
  for (std::size_t n = 0; n < a.u.size(); ++n) {
    CHECK(std::memcmp(a.u[n].values.data(), b.u[n].values.data(),
                      a.u[n].values.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.w[n].values.data(), b.w[n].values.data(),
                      a.w[n].values.size() * sizeof(double)) == 0);
  }
}

// The three reference runs below are pinned against an independent dense
// enumeration solve of the same discrete scheme (exact active-set search
// per step, fixed-point iterated in the friction pressure); agreement of
// that oracle with this implementation was established to ~1e-11.

TEST_CASE("reference run: combined body and surface loads, 4x4 mesh") {
  const Mesh mesh = Mesh::unit_square(4);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {-0.5, -2.0}, {-0.5, -0.5}, 0.05,
                                     1.0, {1.0, 0.0}, 5);
  const Trajectory traj =
      run(mesh, space, data, TimePartition::uniform(1.0, 4));

  CHECK(space.v_norm(traj.u.back()) ==
        doctest::Approx(0.191267492389).epsilon(1e-9));
  CHECK(space.w_norm(traj.w.back()) ==
        doctest::Approx(0.0750398804691).epsilon(1e-9));

  const std::vector<double> wear_ref{0.0, 0.0610363260537, 0.0895321799068,
                                     0.0951176636944, 0.0719200815466};
  REQUIRE(traj.w.back().values.size() == wear_ref.size());
  for (std::size_t c = 0; c < wear_ref.size(); ++c)
    CHECK(std::abs(traj.w.back().values[c] - wear_ref[c]) <= 1e-10);

  const int corner = find_vertex(mesh, 1.0, 0.0);
  const int mid = find_vertex(mesh, 0.5, 0.5);
  REQUIRE(corner >= 0);
  REQUIRE(mid >= 0);
  const Vec2 uc = space.nodal_value(traj.u.back(), corner);
  const Vec2 um = space.nodal_value(traj.u.back(), mid);
  CHECK(std::abs(uc.x - 0.0581192003015) <= 1e-10);
  CHECK(std::abs(uc.y - -0.0923065622148) <= 1e-10);
  CHECK(std::abs(um.x - -0.0264895698038) <= 1e-10);
  CHECK(std::abs(um.y - -0.144650952907) <= 1e-10);

  // final penetrations: interior nodes sit at the gap bound
  const std::vector<double> unu_ref{0.0, 0.068405208655, 0.1, 0.1,
                                    0.0923065622148};
  for (int c = 1; c < 5; ++c)
    CHECK(std::abs(space.normal_trace(traj.u.back(), c) - unu_ref[c]) <=
          1e-10);
}

TEST_CASE("reference run: vertical compression only, 4x4 mesh") {
  const Mesh mesh = Mesh::unit_square(4);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, -2.0}, {0.0, 0.0}, 0.04, 0.3,
                                     {1.0, 0.0}, 5);
  const Trajectory traj =
      run(mesh, space, data, TimePartition::uniform(1.0, 4));

  CHECK(space.v_norm(traj.u.back()) ==
        doctest::Approx(0.114114773307).epsilon(1e-9));
  CHECK(space.w_norm(traj.w.back()) ==
        doctest::Approx(0.0459206084697).epsilon(1e-9));
  const std::vector<double> wear_ref{0.0, 0.0345019022161, 0.0522543906982,
                                     0.0589017078434, 0.0512362198234};
  for (std::size_t c = 0; c < wear_ref.size(); ++c)
    CHECK(std::abs(traj.w.back().values[c] - wear_ref[c]) <= 1e-10);

  const Vec2 uc =
      space.nodal_value(traj.u.back(), find_vertex(mesh, 1.0, 0.0));
  const Vec2 um =
      space.nodal_value(traj.u.back(), find_vertex(mesh, 0.5, 0.5));
  CHECK(std::abs(uc.x - 0.0455234721933) <= 1e-10);
  CHECK(std::abs(uc.y - -0.065068347128) <= 1e-10);
  CHECK(std::abs(um.x - 0.00798059872571) <= 1e-10);
  CHECK(std::abs(um.y - -0.0981576574618) <= 1e-10);
}

TEST_CASE("reference run: fast wear saturates at the gap, 4x4 mesh") {
  // kappa = 0.08 with k = 1/8 makes k*alpha*cp = 1: a node in contact jumps
  // straight to wear = trace, so wear caps at the gap without overshoot
  const Mesh mesh = Mesh::unit_square(4);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, -2.0}, {0.0, 0.0}, 0.08, 0.3,
                                     {1.0, 0.0}, 5);
  const Trajectory traj =
      run(mesh, space, data, TimePartition::uniform(1.0, 8));

  CHECK(space.v_norm(traj.u.back()) ==
        doctest::Approx(0.116964079979).epsilon(1e-9));
  CHECK(space.w_norm(traj.w.back()) ==
        doctest::Approx(0.0799130814991).epsilon(1e-9));
  const std::vector<double> wear_ref{0.0, 0.0564908298355, 0.0899353258112,
                                     0.1, 0.1};
  for (std::size_t c = 0; c < wear_ref.size(); ++c)
    CHECK(std::abs(traj.w.back().values[c] - wear_ref[c]) <= 1e-10);
  for (const auto& w : traj.w)
    for (double x : w.values) CHECK(x <= space.gap() + 1e-12);

  const Vec2 uc =
      space.nodal_value(traj.u.back(), find_vertex(mesh, 1.0, 0.0));
  CHECK(std::abs(uc.x - -0.00192432843087) <= 1e-10);
  CHECK(std::abs(uc.y - -0.1) <= 1e-10);
}

TEST_CASE("solver failures are annotated with the failing step") {
  const Mesh mesh = Mesh::unit_square(2);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, -2.0}, {0.0, 0.0}, 0.04, 0.3,
                                     {1.0, 0.0}, 3);
  SolverSettings st;
  st.fp_max = 1;
  st.fp_tol = 1e-15;
  try {
    (void)run(mesh, space, data, TimePartition::uniform(1.0, 2), st);
    FAIL("expected FixedPointError");
  } catch (const FixedPointError& e) {
    CHECK(std::string(e.what()).find("time step 0") != std::string::npos);
  }

  ProblemData no_law = data;
  no_law.law = nullptr;
  CHECK_THROWS_AS(run(mesh, space, no_law, TimePartition::uniform(1.0, 2)),
                  std::invalid_argument);
}

TEST_CASE("trajectory tables round-trip through text at full precision") {
  const Mesh mesh = Mesh::unit_square(2);
  const FeSpace space(mesh, 0.1);
  const LinearCompliance law(100.0);
  const ProblemData data = make_data(law, {0.0, -2.0}, {0.0, 0.0}, 0.04, 0.3,
                                     {1.0, 0.0}, 3);
  const Trajectory traj =
      run(mesh, space, data, TimePartition::uniform(1.0, 2));

  const std::string path =
      (std::filesystem::temp_directory_path() / "wearfem_traj_test.txt")
          .string();
  write_trajectory_table(traj, space, path);

  std::ifstream in(path);
  REQUIRE(static_cast<bool>(in));
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::vector<std::string> cols;
  for (std::string tok; hs >> tok;) cols.push_back(tok);
  const std::size_t nv = mesh.vertices().size();
  const std::size_t nc = mesh.contact_nodes().size();
  REQUIRE(cols.size() == 1 + 2 * nv + nc);
  CHECK(cols[0] == "t");
  CHECK(cols[1] == "ux0");
  CHECK(cols.back() == "w" + std::to_string(nc - 1));

  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::vector<double> row;
    for (double x; ls >> x;) row.push_back(x);
    REQUIRE(row.size() == cols.size());
    rows.push_back(std::move(row));
  }
  REQUIRE(rows.size() == traj.times.size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    CHECK(rows[n][0] == traj.times[n]);  // %.17g round-trips bitwise
    for (std::size_t v = 0; v < nv; ++v) {
      const Vec2 uv = space.nodal_value(traj.u[n], static_cast<int>(v));
      CHECK(rows[n][1 + 2 * v] == uv.x);
      CHECK(rows[n][2 + 2 * v] == uv.y);
    }
    for (std::size_t c = 0; c < nc; ++c)
      CHECK(rows[n][1 + 2 * nv + c] == traj.w[n].values[c]);
  }
  std::filesystem::remove(path);
}
