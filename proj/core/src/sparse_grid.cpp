#include "refgp/sparse_grid.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "refgp/errors.hpp"

namespace refgp {

namespace {

constexpr int kMaxLevel = 16;
constexpr double kPi = 3.14159265358979323846;

struct LevelTables {
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> bary;
  std::vector<std::vector<int>> fresh;
};

const LevelTables& tables() {
  static const LevelTables t = [] {
    LevelTables t;
    t.points.resize(kMaxLevel + 1);
    t.bary.resize(kMaxLevel + 1);
    t.fresh.resize(kMaxLevel + 1);
    for (int i = 0; i <= kMaxLevel; ++i) {
      const int m = level_size(i);
      auto& xs = t.points[i];
      xs.resize(m);
      if (i == 0) {
        xs[0] = 0.5;
      } else {
        for (int j = 0; j < m; ++j)
          xs[j] = 0.5 * (1.0 - std::cos(kPi * j / (1 << i)));
      }
      auto& bw = t.bary[i];
      bw.resize(m);
      for (int j = 0; j < m; ++j) bw[j] = (j % 2 == 0) ? 1.0 : -1.0;
      if (m > 1) {
        bw[0] *= 0.5;
        bw[m - 1] *= 0.5;
      }
      auto& fr = t.fresh[i];
      if (i == 0) {
        fr = {0};
      } else if (i == 1) {
        fr = {0, 2};
      } else {
        for (int j = 1; j < m; j += 2) fr.push_back(j);
      }
    }
    return t;
  }();
  return t;
}

void check_level(int level) {
  if (level < 0 || level > kMaxLevel)
    throw numeric_error("sparse grid level out of supported range");
}

}  // namespace

int level_size(int level) { return level == 0 ? 1 : (1 << level) + 1; }

double level_point(int level, int index) {
  check_level(level);
  return tables().points[level][index];
}

const std::vector<double>& level_points(int level) {
  check_level(level);
  return tables().points[level];
}

const std::vector<int>& hierarchical_indices(int level) {
  check_level(level);
  return tables().fresh[level];
}

double cardinal_basis(int level, int index, double x) {
  if (level == 0) return 1.0;
  check_level(level);
  const auto& xs = tables().points[level];
  const auto& bw = tables().bary[level];
  const int m = static_cast<int>(xs.size());
  double qsum = 0.0;
  for (int j = 0; j < m; ++j) {
    const double diff = x - xs[j];
    if (diff == 0.0) return j == index ? 1.0 : 0.0;
    qsum += bw[j] / diff;
  }
  return (bw[index] / (x - xs[index])) / qsum;
}

std::vector<double> cardinal_row(int level, double x) {
  if (level == 0) return {1.0};
  check_level(level);
  const auto& xs = tables().points[level];
  const auto& bw = tables().bary[level];
  const int m = static_cast<int>(xs.size());
  std::vector<double> row(m, 0.0);
  double qsum = 0.0;
  for (int j = 0; j < m; ++j) {
    const double diff = x - xs[j];
    if (diff == 0.0) {
      row[j] = 1.0;
      return row;
    }
    qsum += bw[j] / diff;
  }
  for (int j = 0; j < m; ++j) row[j] = (bw[j] / (x - xs[j])) / qsum;
  return row;
}

double Subgrid::max_error() const {
  double e = 0.0;
  for (const GridNode& nd : nodes) e = std::max(e, nd.error);
  return e;
}

double SparseGrid::evaluate(const std::array<double, 2>& x) const {
  // All cardinal values of a level at x come from one barycentric pass;
  // computing them per level instead of per node makes evaluation linear in
  // the node count.
  std::array<std::array<std::vector<double>, kMaxLevel + 1>, 2> rows;
  double res = 0.0;
  for (const Subgrid& sg : accepted_) {
    double partial = 0.0;
    for (int k = 0; k < 2; ++k) {
      auto& row = rows[k][sg.level[k]];
      if (row.empty()) row = cardinal_row(sg.level[k], x[k]);
    }
    const auto& r0 = rows[0][sg.level[0]];
    const auto& r1 = rows[1][sg.level[1]];
    for (const GridNode& nd : sg.nodes)
      partial += nd.surplus * r0[nd.index[0]] * r1[nd.index[1]];
    res += partial;
  }
  return res;
}

bool SparseGrid::is_point_neighbor(const std::array<int, 2>& backward_level,
                                   const std::array<int, 2>& backward_index,
                                   const std::array<int, 2>& level,
                                   const std::array<int, 2>& index,
                                   int k) const {
  for (int kp = 0; kp < 2; ++kp)
    if (kp != k && backward_index[kp] != index[kp]) return false;
  const int L = backward_level[k];
  if (L <= 1) return true;
  const auto& xs = level_points(L);
  const int m = backward_index[k];
  const double c = level_point(level[k], index[k]);
  if (m - 1 >= 0 && xs[m - 1] < c && c < xs[m]) return true;
  if (m + 1 < static_cast<int>(xs.size()) && xs[m] < c && c < xs[m + 1])
    return true;
  return false;
}

bool SparseGrid::is_active(const std::array<int, 2>& level,
                           const std::array<int, 2>& index, double tau) const {
  for (int k = 0; k < 2; ++k) {
    if (level[k] == 0) continue;
    std::array<int, 2> ibwd = level;
    ibwd[k] -= 1;
    const Subgrid& sg = accepted_[index_of_.at(ibwd)];
    for (const GridNode& nd : sg.nodes) {
      if (nd.error > tau && is_point_neighbor(ibwd, nd.index, level, index, k))
        return true;
    }
  }
  return false;
}

void SparseGrid::expand(const std::array<int, 2>& level, const Func2d& f,
                        double tau, int budget) {
  Subgrid sg;
  sg.level = level;
  const bool root = level[0] == 0 && level[1] == 0;
  const auto& fresh0 = hierarchical_indices(level[0]);
  const auto& fresh1 = hierarchical_indices(level[1]);
  for (int j0 : fresh0) {
    for (int j1 : fresh1) {
      const std::array<int, 2> jc = {j0, j1};
      if (!root && !is_active(level, jc, tau)) continue;
      if (n_evals_ >= budget) {
        budget_hit_ = true;
        break;
      }
      GridNode nd;
      nd.index = jc;
      nd.x = {level_point(level[0], j0), level_point(level[1], j1)};
      nd.value = f(nd.x);
      const double yt = evaluate(nd.x);
      nd.surplus = nd.value - yt;
      nd.error = std::abs(nd.surplus);
      sg.nodes.push_back(nd);
      ++n_evals_;
    }
    if (budget_hit_) break;
  }
  fringe_.emplace(level, std::move(sg));
}

void SparseGrid::build(const Func2d& f, const Options& options) {
  if (!(options.tol > 0.0)) throw config_error("grid tolerance must be > 0");
  if (options.budget < 1) throw config_error("grid budget must be >= 1");
  accepted_.clear();
  index_of_.clear();
  fringe_.clear();
  n_evals_ = 0;
  budget_hit_ = false;
  final_error_ = 0.0;
  capped_error_ = 0.0;

  const double tau = options.refine_tau > 0.0 ? options.refine_tau : options.tol;
  expand({0, 0}, f, tau, options.budget);

  while (true) {
    // Pick the fringe subgrid with the largest node error; ties prefer the
    // smaller level sum, then the lexicographically smaller multi-index.
    bool have = false;
    std::array<int, 2> best_iv = {0, 0};
    double best_err = 0.0;
    for (const auto& [iv, sg] : fringe_) {
      const double me = sg.max_error();
      const bool better =
          !have || me > best_err ||
          (me == best_err && (iv[0] + iv[1] < best_iv[0] + best_iv[1] ||
                              (iv[0] + iv[1] == best_iv[0] + best_iv[1] &&
                               iv < best_iv)));
      if (better) {
        have = true;
        best_iv = iv;
        best_err = me;
      }
    }
    if (!have || best_err < options.tol || budget_hit_) {
      final_error_ = std::max(have ? best_err : 0.0, capped_error_);
      return;
    }

    auto it = fringe_.find(best_iv);
    Subgrid sg = std::move(it->second);
    fringe_.erase(it);
    index_of_[best_iv] = static_cast<int>(accepted_.size());
    accepted_.push_back(std::move(sg));

    for (int k = 0; k < 2; ++k) {
      std::array<int, 2> ifwd = best_iv;
      ifwd[k] += 1;
      if (ifwd[k] > kMaxLevel) {
        // Refinement wants to exceed the deepest supported level (typically
        // chasing a near-discontinuity); stop along this axis and report the
        // unresolved residual through final_error().
        capped_error_ = std::max(capped_error_, best_err);
        continue;
      }
      bool admissible = true;
      for (int kk = 0; kk < 2; ++kk) {
        if (ifwd[kk] == 0) continue;
        std::array<int, 2> ib = ifwd;
        ib[kk] -= 1;
        if (index_of_.find(ib) == index_of_.end()) {
          admissible = false;
          break;
        }
      }
      if (admissible) expand(ifwd, f, tau, options.budget);
    }
  }
}

}  // namespace refgp
