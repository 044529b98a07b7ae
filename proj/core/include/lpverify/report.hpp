#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace lpv {

enum class Status { Pass, Fail, Vacuous, NotApplicable };

std::string_view to_string(Status s) noexcept;

/// One checked identity: the largest residual seen over the sample set.
struct IdentityEntry {
  std::string id;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::Pass;
  std::size_t samples_used = 0;
  /// Diagnostic entries are reported but never decide the exit status.
  bool informational = false;
  std::vector<std::string> flags;
  std::string note;
};

struct IdentityReport {
  std::string suite;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<IdentityEntry> entries;
  /// Reading/ambiguity annotations raised while running the suite.
  std::vector<std::string> flags;

  const IdentityEntry* find(std::string_view id) const;
  /// True when no gating entry failed.
  bool passed() const;
  void add_flag(std::string flag);
};

/// Running max of absolute residuals. A NaN anywhere poisons the result so
/// that it can never compare <= tolerance.
class Residual {
 public:
  void add(double r) {
    ++count_;
    if (std::isnan(r)) nan_ = true;
    else if (std::abs(r) > max_) max_ = std::abs(r);
  }
  void add(const Eigen::VectorXd& v) {
    ++count_;
    if (v.hasNaN()) nan_ = true;
    else if (v.size() > 0) max_ = std::max(max_, v.cwiseAbs().maxCoeff());
  }
  void merge(const Residual& o) {
    nan_ = nan_ || o.nan_;
    max_ = std::max(max_, o.max_);
    count_ += o.count_;
  }
  double value() const noexcept { return nan_ ? std::numeric_limits<double>::quiet_NaN() : max_; }
  std::size_t evaluations() const noexcept { return count_; }

 private:
  double max_ = 0.0;
  bool nan_ = false;
  std::size_t count_ = 0;
};

/// Entry whose status is Pass iff the residual is <= tolerance.
IdentityEntry make_entry(std::string id, const Residual& r, double tolerance, std::size_t samples,
                         bool informational = false);
IdentityEntry make_entry(std::string id, double residual, double tolerance, std::size_t samples,
                         bool informational = false);
/// Entry for a statement quantified over an empty set or with a vanishing
/// multiplier; reported with the given flag.
IdentityEntry vacuous_entry(std::string id, double tolerance, std::string flag, double residual = 0.0);
IdentityEntry not_applicable_entry(std::string id, double tolerance, std::string note);

}  // namespace lpv
