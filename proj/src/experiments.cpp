#include "wearfem/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "wearfem/vtk.hpp"

namespace wearfem {

LoadSpec Scenario::loads() const {
  LoadSpec ls;
  const Vec2 body = f0;
  const Vec2 traction = fN;
  ls.body = [body](Vec2, double) { return body; };
  ls.traction = [traction](Vec2, double) { return traction; };
  return ls;
}

FoundationMotion Scenario::motion(int n_contact_nodes) const {
  return make_constant_motion(v_star, kappa, mu, n_contact_nodes);
}

Scenario preset(const std::string& name) {
  Scenario sc;  // defaults carry the shared benchmark data
  sc.name = name;
  if (name == "fig1") {
    // mu 0.3, kappa 0.04, v* (1,0): the defaults
  } else if (name == "fig2") {
    sc.kappa = 0.08;
  } else if (name == "fig3") {
    sc.mu = 1.0;
  } else if (name == "fig4") {
    sc.kappa = 0.02;
    sc.v_star = {-1.0, 0.0};
  } else if (name == "table1") {
    sc.f0 = {-0.5, -2.0};
    sc.fN = {-0.5, -0.5};
    sc.mu = 1.0;
    sc.kappa = 0.05;
  } else {
    throw std::invalid_argument("unknown scenario preset: " + name);
  }
  return sc;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key);
  }
  if (used != v.size())
    throw std::invalid_argument("config: trailing characters in value for " +
                                key);
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw std::invalid_argument("config: expected integer for " + key);
  return i;
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: missing '=' at " + path + ":" +
                               std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key at " + path + ":" +
                               std::to_string(lineno));
    kv[key] = value;
  }
  return kv;
}

void apply_config(Scenario& sc, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "name") sc.name = value;
    else if (key == "lambda") sc.lambda = parse_double(key, value);
    else if (key == "eta") sc.eta = parse_double(key, value);
    else if (key == "cp") sc.cp = parse_double(key, value);
    else if (key == "gap") sc.gap = parse_double(key, value);
    else if (key == "f0_x") sc.f0.x = parse_double(key, value);
    else if (key == "f0_y") sc.f0.y = parse_double(key, value);
    else if (key == "fN_x") sc.fN.x = parse_double(key, value);
    else if (key == "fN_y") sc.fN.y = parse_double(key, value);
    else if (key == "mu") sc.mu = parse_double(key, value);
    else if (key == "kappa") sc.kappa = parse_double(key, value);
    else if (key == "vstar_x") sc.v_star.x = parse_double(key, value);
    else if (key == "vstar_y") sc.v_star.y = parse_double(key, value);
    else if (key == "T") sc.T = parse_double(key, value);
    else if (key == "n") sc.n = parse_int(key, value);
    else if (key == "nsteps") sc.nsteps = parse_int(key, value);
    else throw std::invalid_argument("config: unknown key " + key);
  }
}

namespace {

struct LevelRun {
  std::unique_ptr<Mesh> mesh;
  std::unique_ptr<FeSpace> space;
  Trajectory traj;
};

LevelRun run_at(const Scenario& sc, int n, int nsteps,
                const SolverSettings& settings) {
  LevelRun r;
  r.mesh = std::make_unique<Mesh>(Mesh::unit_square(n));
  r.space = std::make_unique<FeSpace>(*r.mesh, sc.gap);
  const LinearCompliance law = sc.compliance();
  ProblemData data{sc.material(), &law,
                   sc.motion(static_cast<int>(r.mesh->contact_nodes().size())),
                   sc.loads()};
  r.traj = run(*r.mesh, *r.space, data, TimePartition::uniform(sc.T, nsteps),
               settings);
  return r;
}

DisplacementField sub(const DisplacementField& a, const DisplacementField& b) {
  DisplacementField d;
  d.values.resize(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d.values[i] = a.values[i] - b.values[i];
  return d;
}

WearField sub(const WearField& a, const WearField& b) {
  WearField d;
  d.values.resize(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d.values[i] = a.values[i] - b.values[i];
  return d;
}

}  // namespace

ConvergenceStudy convergence_study(const Scenario& sc,
                                   const std::vector<int>& levels,
                                   int ref_level,
                                   const SolverSettings& settings) {
  if (levels.empty()) throw std::invalid_argument("study: no levels");
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i + 1] <= levels[i])
      throw std::invalid_argument("study: levels must be increasing");
  if (levels.back() >= ref_level)
    throw std::invalid_argument("study: reference level must exceed levels");

  // doubling ladder from the coarsest level to the reference
  std::vector<int> ladder;
  for (int m = levels.front(); m <= ref_level; m *= 2) ladder.push_back(m);
  if (ladder.back() != ref_level)
    throw std::invalid_argument(
        "study: reference level must be a power-of-two multiple of the "
        "coarsest level");
  auto ladder_index = [&](int n) {
    for (std::size_t i = 0; i < ladder.size(); ++i)
      if (ladder[i] == n) return static_cast<int>(i);
    throw std::invalid_argument("study: level " + std::to_string(n) +
                                " is not on the refinement ladder");
  };
  for (int lv : levels) ladder_index(lv);

  std::vector<std::unique_ptr<Mesh>> meshes;
  std::vector<std::unique_ptr<FeSpace>> spaces;
  for (int m : ladder) {
    meshes.push_back(std::make_unique<Mesh>(Mesh::unit_square(m)));
    spaces.push_back(std::make_unique<FeSpace>(*meshes.back(), sc.gap));
  }
  const FeSpace& ref_space = *spaces.back();

  const int top = static_cast<int>(spaces.size()) - 1;
  auto lift_u = [&](DisplacementField u, int from_idx) {
    for (int i = from_idx; i < top; ++i)
      u = interpolate_between_levels(*spaces[i], u, *spaces[i + 1]);
    return u;
  };
  auto lift_w = [&](WearField w, int from_idx) {
    for (int i = from_idx; i < top; ++i)
      w = interpolate_between_levels(*spaces[i], w, *spaces[i + 1]);
    return w;
  };

  const LevelRun ref = run_at(sc, ref_level, ref_level, settings);
  ConvergenceStudy study;
  study.ref_u_norm = ref_space.v_norm(ref.traj.u.back());
  study.ref_w_norm = ref_space.w_norm(ref.traj.w.back());
  if (!(study.ref_u_norm > 0.0) || !(study.ref_w_norm > 0.0))
    throw std::runtime_error("study: degenerate reference solution");

  for (int lv : levels) {
    const int idx = ladder_index(lv);
    const LevelRun lr = run_at(sc, lv, lv, settings);

    ConvergenceRow row;
    row.h_plus_k = 2.0 / lv;
    row.err_u_rel =
        ref_space.v_norm(sub(ref.traj.u.back(), lift_u(lr.traj.u.back(), idx))) /
        study.ref_u_norm;
    row.err_w_rel =
        ref_space.w_norm(sub(ref.traj.w.back(), lift_w(lr.traj.w.back(), idx))) /
        study.ref_w_norm;
    row.order_u = row.order_w = std::nan("");
    if (!study.rows.empty()) {
      row.order_u = std::log2(study.rows.back().err_u_rel / row.err_u_rel);
      row.order_w = std::log2(study.rows.back().err_w_rel / row.err_w_rel);
    }
    study.rows.push_back(row);

    const int stride = ref_level / lv;
    double mu_err = 0.0, mw_err = 0.0;
    for (int j = 0; j <= lv; ++j) {
      mu_err = std::max(
          mu_err, ref_space.v_norm(sub(ref.traj.u[j * stride],
                                       lift_u(lr.traj.u[j], idx))) /
                      study.ref_u_norm);
      mw_err = std::max(
          mw_err, ref_space.w_norm(sub(ref.traj.w[j * stride],
                                       lift_w(lr.traj.w[j], idx))) /
                      study.ref_w_norm);
    }
    study.max_err_u.push_back(mu_err);
    study.max_err_w.push_back(mw_err);
  }
  return study;
}

std::vector<double> temporal_study(const Scenario& sc,
                                   const std::vector<int>& step_counts,
                                   int ref_steps,
                                   const SolverSettings& settings) {
  for (int N : step_counts)
    if (N < 1 || ref_steps % N != 0 || N >= ref_steps)
      throw std::invalid_argument(
          "temporal_study: step counts must divide the reference count");

  const LevelRun ref = run_at(sc, sc.n, ref_steps, settings);
  std::vector<double> errors;
  for (int N : step_counts) {
    const LevelRun lr = run_at(sc, sc.n, N, settings);
    const int stride = ref_steps / N;
    double m = 0.0;
    for (int j = 0; j <= N; ++j)
      m = std::max(m, ref.space->v_norm(
                          sub(ref.traj.u[j * stride], lr.traj.u[j])));
    errors.push_back(m);
  }
  return errors;
}

ExportPaths export_deformed(const Mesh& mesh, const FeSpace& space,
                            const Trajectory& traj, const Scenario& sc,
                            const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + out_dir +
                             ": " + ec.message());

  const DisplacementField& u = traj.u.back();
  const WearField& w = traj.w.back();

  std::vector<Vec2> points(mesh.vertices().size());
  std::vector<Vec2> disp(mesh.vertices().size());
  for (std::size_t v = 0; v < points.size(); ++v) {
    disp[v] = space.nodal_value(u, static_cast<int>(v));
    points[v] = mesh.vertices()[v] + disp[v];
  }

  ExportPaths paths;
  paths.vtk = (fs::path(out_dir) / (sc.name + "_deformed.vtk")).string();
  write_vtk_unstructured(paths.vtk, sc.name + " deformed configuration",
                         points, mesh.triangles(), "displacement", disp);

  paths.wear_profile =
      (fs::path(out_dir) / (sc.name + "_wear_profile.txt")).string();
  std::ofstream prof(paths.wear_profile);
  if (!prof)
    throw std::runtime_error("cannot open for writing: " + paths.wear_profile);
  prof << "# x wear\n";
  char buf[64];
  const auto& cn = mesh.contact_nodes();
  for (std::size_t c = 0; c < cn.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", mesh.vertices()[cn[c]].x,
                  w.values[c]);
    prof << buf;
  }
  if (!prof)
    throw std::runtime_error("write failed: " + paths.wear_profile);
  return paths;
}

namespace {
constexpr const char* kCsvHeader = "h_plus_k,err_u_rel,order_u,err_w_rel,order_w";

std::string fmt_field(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_field(const std::string& s) {
  if (s.empty()) return std::nan("");
  std::size_t used = 0;
  const double x = std::stod(s, &used);
  if (used != s.size())
    throw std::runtime_error("csv: malformed number: " + s);
  return x;
}
}  // namespace

void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kCsvHeader << "\n";
  for (const auto& r : rows)
    out << fmt_field(r.h_plus_k) << ',' << fmt_field(r.err_u_rel) << ','
        << fmt_field(r.order_u) << ',' << fmt_field(r.err_w_rel) << ','
        << fmt_field(r.order_w) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ConvergenceRow> read_convergence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader)
    throw std::runtime_error("csv: unexpected header in " + path);

  std::vector<ConvergenceRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    while (fields.size() < 5) fields.emplace_back();  // trailing empties
    if (fields.size() != 5)
      throw std::runtime_error("csv: expected 5 fields per row in " + path);
    ConvergenceRow r;
    r.h_plus_k = parse_field(fields[0]);
    r.err_u_rel = parse_field(fields[1]);
    r.order_u = parse_field(fields[2]);
    r.err_w_rel = parse_field(fields[3]);
    r.order_w = parse_field(fields[4]);
    rows.push_back(r);
  }
  return rows;
}

void write_loglog_data(const std::vector<ConvergenceRow>& rows,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# log10_h_plus_k log10_err_u_rel log10_err_w_rel\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n",
                  std::log10(r.h_plus_k), std::log10(r.err_u_rel),
                  std::log10(r.err_w_rel));
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wearfem
