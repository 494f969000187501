#include "wearfem/time_stepper.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wearfem {

TimePartition::TimePartition(std::vector<double> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2)
    throw std::invalid_argument("TimePartition: need at least two nodes");
  if (nodes_.front() != 0.0)
    throw std::invalid_argument("TimePartition: first node must be 0");
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    if (!(nodes_[i + 1] > nodes_[i]))
      throw std::invalid_argument("TimePartition: nodes must be increasing");
}

TimePartition TimePartition::uniform(double total_time, int steps) {
  if (steps < 1 || !(total_time > 0.0))
    throw std::invalid_argument("TimePartition: invalid uniform partition");
  std::vector<double> nodes(steps + 1);
  for (int i = 0; i <= steps; ++i)
    nodes[i] = total_time * static_cast<double>(i) / steps;
  return TimePartition(std::move(nodes));
}

double TimePartition::max_step() const {
  double k = 0.0;
  for (int n = 0; n < steps(); ++n) k = std::max(k, step(n));
  return k;
}

WearField wear_update(const FeSpace& space, const ComplianceLaw& law,
                      const FoundationMotion& motion, double t, double k,
                      const DisplacementField& u, const WearField& w) {
  WearField out = w;
  const auto& cdofs = space.contact_dofs();
  for (std::size_t c = 0; c < cdofs.size(); ++c) {
    if (cdofs[c][0] < 0) continue;
    const int ci = static_cast<int>(c);
    const double rate = alpha(motion, t, ci) *
                        law.p(space.normal_trace(u, ci) - w.values[c]);
    out.values[c] += k * rate;
  }
  return out;
}

Trajectory run(const Mesh& mesh, const FeSpace& space, const ProblemData& data,
               const TimePartition& partition,
               const SolverSettings& settings) {
  if (!data.law) throw std::invalid_argument("run: missing compliance law");

  const SparseSymMatrix stiffness =
      assemble_stiffness(mesh, space, data.material);
  const ViSolver solver(space, stiffness, *data.law, data.motion);

  const int N = partition.steps();
  Trajectory traj;
  traj.times = partition.nodes();
  traj.u.reserve(N + 1);
  traj.w.reserve(N + 1);
  traj.reports.reserve(N + 1);

  WearField w;
  w.values.assign(mesh.contact_nodes().size(), 0.0);

  for (int n = 0; n <= N; ++n) {
    const double t = partition.nodes()[n];
    const std::vector<double> load = assemble_load(mesh, space, data.loads, t);
    const DisplacementField* warm = n > 0 ? &traj.u.back() : nullptr;
    ViSolver::Result res;
    try {
      res = solver.solve(load, w, t, settings, warm);
    } catch (const FixedPointError& e) {
      throw FixedPointError(
          "time step " + std::to_string(n) + ": " + e.what(),
          e.last_increment());
    } catch (const NewtonError& e) {
      throw NewtonError("time step " + std::to_string(n) + ": " + e.what(),
                        e.kkt_residual());
    }

    const auto adm = space.is_admissible(res.u);
    if (!adm.admissible)
      throw std::runtime_error("time step " + std::to_string(n) +
                               ": solver returned an inadmissible field");
    for (double v : w.values)
      if (!(v >= -1e-12))
        throw std::runtime_error("time step " + std::to_string(n) +
                                 ": negative wear");

    traj.u.push_back(std::move(res.u));
    traj.w.push_back(w);
    traj.reports.push_back(std::move(res.report));

    if (n < N)
      w = wear_update(space, *data.law, data.motion, t, partition.step(n),
                      traj.u.back(), w);
  }
  return traj;
}

void write_trajectory_table(const Trajectory& traj, const FeSpace& space,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  const std::size_t nv = space.mesh().vertices().size();
  const std::size_t nc = space.mesh().contact_nodes().size();
  out << "t";
  for (std::size_t v = 0; v < nv; ++v) out << " ux" << v << " uy" << v;
  for (std::size_t c = 0; c < nc; ++c) out << " w" << c;
  out << "\n";

  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, " %.17g", x);
    out << buf;
  };
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[n]);
    out << buf;
    for (std::size_t v = 0; v < nv; ++v) {
      const Vec2 uv = space.nodal_value(traj.u[n], static_cast<int>(v));
      put(uv.x);
      put(uv.y);
    }
    for (std::size_t c = 0; c < nc; ++c) put(traj.w[n].values[c]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wearfem
