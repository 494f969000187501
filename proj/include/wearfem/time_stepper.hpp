#pragma once

// Quasistatic evolution: alternate per-step contact solves with the
// explicit wear accumulation rule over an arbitrary partition of [0, T].

#include <string>
#include <vector>

#include "wearfem/assembly.hpp"
#include "wearfem/contact_law.hpp"
#include "wearfem/fe_space.hpp"
#include "wearfem/vi_solver.hpp"

namespace wearfem {

class TimePartition {
 public:
  // nodes 0 = t_0 < t_1 < ... < t_N = T
  explicit TimePartition(std::vector<double> nodes);
  static TimePartition uniform(double total_time, int steps);

  int steps() const { return static_cast<int>(nodes_.size()) - 1; }
  double total_time() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }
  double step(int n) const { return nodes_[n + 1] - nodes_[n]; }
  double max_step() const;

 private:
  std::vector<double> nodes_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DisplacementField> u;
  std::vector<WearField> w;
  std::vector<StepReport> reports;
};

struct ProblemData {
  MaterialParams material;
  const ComplianceLaw* law = nullptr;  // non-owning
  FoundationMotion motion;
  LoadSpec loads;
};

// One explicit wear step: w_next = w + k * alpha(t) * p(u_nu - w) nodally.
// The clamped corner carries no wear unknown and is left untouched.
WearField wear_update(const FeSpace& space, const ComplianceLaw& law,
                      const FoundationMotion& motion, double t, double k,
                      const DisplacementField& u, const WearField& w);

// Full scheme: w_0 = 0, then solve / accumulate alternately. Solver
// failures are rethrown annotated with the failing step index.
Trajectory run(const Mesh& mesh, const FeSpace& space, const ProblemData& data,
               const TimePartition& partition,
               const SolverSettings& settings = {});

// Checkpoint table: header line, then one whitespace-separated row per
// step with t, displacement per vertex (x y pairs, clamped ones zero),
// and wear per contact node, at full double precision.
void write_trajectory_table(const Trajectory& traj, const FeSpace& space,
                            const std::string& path);

}  // namespace wearfem
