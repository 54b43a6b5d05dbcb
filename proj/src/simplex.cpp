#include "sos/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sos/error.hpp"

namespace sos {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr std::size_t kRefresh = 64;
constexpr std::size_t kDegenerateStreak = 50;

class Solver {
 public:
  explicit Solver(const LpProblem& lp) : lp_(lp), R_(lp.rows()), N_(lp.columns.size()) {
    if (lp.cost.size() != N_ || lp.equality.size() != R_) {
      throw InvalidArgument("LP dimensions are inconsistent");
    }
    for (double b : lp.rhs) {
      if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidArgument("LP right-hand sides must be >= 0");
    }
    for (const auto& col : lp.columns) {
      for (const auto& e : col) {
        if (e.row >= R_) throw InvalidArgument("LP column refers to a missing row");
      }
    }
    binv_.assign(R_ * R_, 0.0);
    head_.resize(R_);
    pos_.assign(N_ + R_, npos);
    for (std::size_t r = 0; r < R_; ++r) {
      binv_[r * R_ + r] = 1.0;
      head_[r] = N_ + r;
      pos_[N_ + r] = r;
    }
    xb_ = lp.rhs;
    pi_.assign(R_, 0.0);
    alpha_.assign(R_, 0.0);
  }

  LpResult run() {
    const std::size_t limit = 50 * (R_ + N_) + 1000;
    phase2_ = false;
    optimize(limit);
    double infeas = 0.0;
    for (std::size_t r = 0; r < R_; ++r) {
      if (artificial(head_[r])) infeas += std::max(0.0, xb_[r]);
    }
    double scale = 1.0;
    for (double b : lp_.rhs) scale += b;
    if (infeas > 1e-9 * scale) throw NumericalError("LP is infeasible");

    phase2_ = true;
    for (int attempt = 0;; ++attempt) {
      refresh();
      optimize(limit);
      auto res = extract();
      if (certified(res)) return res;
      if (attempt == 3) {
        throw NumericalError("simplex could not certify optimality (residual " +
                             std::to_string(res.primal_residual) + ")");
      }
      reinvert();
    }
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  bool artificial(std::size_t j) const { return j >= N_ && lp_.equality[j - N_]; }

  double cost(std::size_t j) const {
    if (!phase2_) return artificial(j) ? 1.0 : 0.0;
    return j < N_ ? lp_.cost[j] : 0.0;
  }

  double reduced(std::size_t j) const {
    double d = cost(j);
    if (j < N_) {
      for (const auto& e : lp_.columns[j]) d -= pi_[e.row] * e.value;
    } else {
      d -= pi_[j - N_];
    }
    return d;
  }

  void ftran(std::size_t j) {
    std::fill(alpha_.begin(), alpha_.end(), 0.0);
    auto add = [&](std::size_t row, double v) {
      for (std::size_t i = 0; i < R_; ++i) alpha_[i] += v * binv_[i * R_ + row];
    };
    if (j < N_) {
      for (const auto& e : lp_.columns[j]) add(e.row, e.value);
    } else {
      add(j - N_, 1.0);
    }
  }

  void refresh() {
    for (std::size_t i = 0; i < R_; ++i) {
      double v = 0.0;
      const double* row = &binv_[i * R_];
      for (std::size_t c = 0; c < R_; ++c) v += row[c] * lp_.rhs[c];
      xb_[i] = (v < 0.0 && v > -1e-10) ? 0.0 : v;
    }
    std::fill(pi_.begin(), pi_.end(), 0.0);
    for (std::size_t i = 0; i < R_; ++i) {
      const double cb = cost(head_[i]);
      if (cb == 0.0) continue;
      const double* row = &binv_[i * R_];
      for (std::size_t c = 0; c < R_; ++c) pi_[c] += cb * row[c];
    }
  }

  std::size_t price(bool bland) const {
    std::size_t best = npos;
    double best_d = -kCostTol;
    for (std::size_t j = 0; j < N_ + R_; ++j) {
      if (pos_[j] != npos) continue;
      if (phase2_ && artificial(j)) continue;
      const double d = reduced(j);
      if (d < best_d || (bland && d < -kCostTol && best == npos)) {
        best = j;
        best_d = d;
        if (bland) break;
      }
    }
    return best;
  }

  std::size_t ratio_test(bool bland, double& theta) const {
    std::size_t leave = npos;
    theta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < R_; ++i) {
      const double a = alpha_[i];
      double ratio;
      if (phase2_ && artificial(head_[i]) && std::abs(a) > kPivotTol) {
        ratio = 0.0;
      } else if (a > kPivotTol) {
        ratio = std::max(xb_[i], 0.0) / a;
      } else {
        continue;
      }
      bool take = ratio < theta - 1e-12;
      if (!take && leave != npos && ratio <= theta + 1e-12) {
        take = bland ? head_[i] < head_[leave] : std::abs(a) > std::abs(alpha_[leave]);
      }
      if (take || leave == npos) {
        leave = i;
        theta = std::min(theta, ratio);
      }
    }
    return leave;
  }

  void pivot(std::size_t enter, std::size_t r, double theta, double d) {
    const double ar = alpha_[r];
    for (std::size_t i = 0; i < R_; ++i) xb_[i] -= theta * alpha_[i];
    xb_[r] = theta;

    double* prow = &binv_[r * R_];
    for (std::size_t c = 0; c < R_; ++c) prow[c] /= ar;
    for (std::size_t i = 0; i < R_; ++i) {
      const double a = alpha_[i];
      if (i == r || a == 0.0) continue;
      double* row = &binv_[i * R_];
      for (std::size_t c = 0; c < R_; ++c) row[c] -= a * prow[c];
    }
    for (std::size_t c = 0; c < R_; ++c) pi_[c] += d * prow[c];

    pos_[head_[r]] = npos;
    head_[r] = enter;
    pos_[enter] = r;
  }

  void optimize(std::size_t limit) {
    refresh();
    std::size_t streak = 0;
    for (;;) {
      if (++iterations_ > limit) throw NumericalError("simplex iteration limit reached");
      const bool bland = streak > kDegenerateStreak;
      const std::size_t enter = price(bland);
      if (enter == npos) return;
      const double d = reduced(enter);
      ftran(enter);
      double theta;
      const std::size_t r = ratio_test(bland, theta);
      if (r == npos) throw NumericalError("LP is unbounded");
      pivot(enter, r, theta, d);
      streak = theta <= 1e-12 ? streak + 1 : 0;
      if (iterations_ % kRefresh == 0) refresh();
    }
  }

  void reinvert() {
    std::vector<double> b(R_ * R_, 0.0);
    for (std::size_t k = 0; k < R_; ++k) {
      const std::size_t j = head_[k];
      if (j < N_) {
        for (const auto& e : lp_.columns[j]) b[e.row * R_ + k] = e.value;
      } else {
        b[(j - N_) * R_ + k] = 1.0;
      }
    }
    std::vector<double> inv(R_ * R_, 0.0);
    for (std::size_t r = 0; r < R_; ++r) inv[r * R_ + r] = 1.0;
    for (std::size_t col = 0; col < R_; ++col) {
      std::size_t p = col;
      for (std::size_t r = col + 1; r < R_; ++r) {
        if (std::abs(b[r * R_ + col]) > std::abs(b[p * R_ + col])) p = r;
      }
      if (std::abs(b[p * R_ + col]) < 1e-14) throw NumericalError("basis became singular");
      if (p != col) {
        for (std::size_t c = 0; c < R_; ++c) {
          std::swap(b[p * R_ + c], b[col * R_ + c]);
          std::swap(inv[p * R_ + c], inv[col * R_ + c]);
        }
      }
      const double piv = b[col * R_ + col];
      for (std::size_t c = 0; c < R_; ++c) {
        b[col * R_ + c] /= piv;
        inv[col * R_ + c] /= piv;
      }
      for (std::size_t r = 0; r < R_; ++r) {
        const double f = b[r * R_ + col];
        if (r == col || f == 0.0) continue;
        for (std::size_t c = 0; c < R_; ++c) {
          b[r * R_ + c] -= f * b[col * R_ + c];
          inv[r * R_ + c] -= f * inv[col * R_ + c];
        }
      }
    }
    binv_ = std::move(inv);
  }

  LpResult extract() const {
    LpResult res;
    res.iterations = iterations_;
    res.x.assign(N_, 0.0);
    for (std::size_t i = 0; i < R_; ++i) {
      if (head_[i] < N_) res.x[head_[i]] = std::max(0.0, xb_[i]);
    }
    res.duals = pi_;
    std::vector<double> ax(R_, 0.0);
    for (std::size_t j = 0; j < N_; ++j) {
      res.objective += lp_.cost[j] * res.x[j];
      for (const auto& e : lp_.columns[j]) ax[e.row] += e.value * res.x[j];
    }
    for (std::size_t r = 0; r < R_; ++r) {
      const double v = ax[r] - lp_.rhs[r];
      res.primal_residual = std::max(res.primal_residual, lp_.equality[r] ? std::abs(v) : v);
      res.dual_objective += lp_.rhs[r] * pi_[r];
    }
    res.min_reduced_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < N_ + R_; ++j) {
      if (artificial(j)) continue;
      res.min_reduced_cost = std::min(res.min_reduced_cost, reduced(j));
    }
    if (N_ + R_ == 0) res.min_reduced_cost = 0.0;
    return res;
  }

  bool certified(const LpResult& res) const {
    const double scale = std::max(1.0, std::abs(res.objective));
    return res.primal_residual <= 1e-9 && res.min_reduced_cost >= -1e-7 &&
           std::abs(res.objective - res.dual_objective) <= 1e-8 * scale;
  }

  const LpProblem& lp_;
  std::size_t R_, N_;
  std::vector<double> binv_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> pos_;
  std::vector<double> xb_, pi_, alpha_;
  bool phase2_ = false;
  std::size_t iterations_ = 0;
};

}  // namespace

LpResult solve_lp(const LpProblem& lp) { return Solver(lp).run(); }

}  // namespace sos
