#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sos {

/// Deterministic counterpart of a job on one machine: the mean processing
/// time stands in for the random one.
struct VirtualJob {
  int id = 0;
  double weight = 0.0;
  double release = 0.0;
  double mean = 0.0;
};

/// WSPT priority: larger weight / mean first, ties by smaller id. Every
/// component that orders jobs (virtual schedule, cost formula, alpha-point
/// order) goes through this.
inline double wspt_ratio(double weight, double mean) { return weight / mean; }
bool wspt_precedes(const VirtualJob& a, const VirtualJob& b);

/// Preemptive WSPT schedule of deterministic counterparts on one machine,
/// built online. After each insertion the stored pieces are the schedule of
/// all inserted jobs assuming nothing else arrives, so every inserted job is
/// complete in it. Inserting a job released at r only rewrites the part of
/// the schedule after r.
///
/// Processing indicators are left-continuous: a piece (job, start, end)
/// covers the half-open interval (start, end]. Zero-length pieces are never
/// stored and consecutive pieces of the same job are merged.
class VirtualSchedule {
 public:
  struct Piece {
    int job;
    double start;
    double end;
    double remaining_at_start;  // job's unprocessed amount when the piece starts

    friend bool operator==(const Piece&, const Piece&) = default;
  };

  VirtualSchedule() = default;

  /// Event-driven construction from the full job set (offline).
  static VirtualSchedule build(std::span<const VirtualJob> jobs);

  /// Online arrival. Requires release >= every earlier release and mean > 0.
  void insert(const VirtualJob& job);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::vector<VirtualJob>& jobs() const noexcept { return jobs_; }
  std::size_t size() const noexcept { return jobs_.size(); }
  bool contains(int id) const noexcept { return index_.count(id) != 0; }
  const VirtualJob& job(int id) const;
  double last_release() const noexcept { return last_release_; }

  /// First time at which alpha * mean of the job has been processed.
  double alpha_point(int id, double alpha) const;
  double start_time(int id) const;
  double completion_time(int id) const;

  /// (1 / mean) * integral of t over the job's processing intervals.
  double mean_busy_time(int id) const;

  /// Fraction of the job processed in (0, t]; 0 for unknown jobs.
  double processed_fraction_before(int id, double t) const;
  /// 1 - processed_fraction_before.
  double remaining_fraction(int id, double t) const;

  /// Sum over jobs of weight * (mean busy time + mean / 2).
  double surrogate_cost() const;
  /// Sum over jobs of weight * mean busy time.
  double weighted_mean_busy_time() const;

  /// Jobs in WSPT priority order.
  std::vector<int> priority_order() const;

  /// Maximal sets of the k highest-priority jobs that are processed without
  /// idle time in the preemptive WSPT schedule of those k jobs alone.
  std::vector<std::vector<int>> canonical_decomposition(std::size_t k) const;

  /// Pieces as "(job, start, end)" lines.
  std::string dump() const;

 private:
  std::size_t index(int id) const;
  void reindex();

  std::vector<VirtualJob> jobs_;
  std::unordered_map<int, std::size_t> index_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<std::size_t>> job_pieces_;
  double last_release_ = 0.0;
};

}  // namespace sos
