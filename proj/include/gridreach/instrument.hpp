#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridreach {

enum class Channel : std::uint8_t { core = 0, connectivity = 1 };

class AccountingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Word-granular live/peak counters, one pair per channel.
class Workspace {
 public:
  void track(std::int64_t delta_words, Channel ch);

  std::int64_t live(Channel ch) const { return live_[idx(ch)]; }
  std::int64_t peak(Channel ch) const { return peak_[idx(ch)]; }
  void reset() { live_ = {}; peak_ = {}; }

 private:
  static std::size_t idx(Channel ch) { return static_cast<std::size_t>(ch); }
  std::array<std::int64_t, 2> live_{};
  std::array<std::int64_t, 2> peak_{};
};

/// Workspace that counted allocators constructed on this thread report to.
Workspace* current_workspace();

/// Installs `ws` as the current workspace for the lifetime of the scope.
class WorkspaceScope {
 public:
  explicit WorkspaceScope(Workspace* ws);
  ~WorkspaceScope();
  WorkspaceScope(const WorkspaceScope&) = delete;
  WorkspaceScope& operator=(const WorkspaceScope&) = delete;

 private:
  Workspace* prev_;
};

inline std::int64_t words_for_bytes(std::size_t bytes) { return std::int64_t((bytes + 7) / 8); }

/// Allocator that charges every allocation to the workspace that was current
/// when the allocator was created. With no workspace it only allocates.
template <class T, Channel C>
class CountedAllocator {
 public:
  using value_type = T;
  using propagate_on_container_move_assignment = std::true_type;
  using propagate_on_container_copy_assignment = std::true_type;
  using propagate_on_container_swap = std::true_type;
  using is_always_equal = std::false_type;

  CountedAllocator() noexcept : ws_(current_workspace()) {}
  template <class U>
  CountedAllocator(const CountedAllocator<U, C>& o) noexcept : ws_(o.workspace()) {}

  T* allocate(std::size_t n) {
    T* p = std::allocator<T>().allocate(n);
    if (ws_) ws_->track(words_for_bytes(n * sizeof(T)), C);
    return p;
  }
  void deallocate(T* p, std::size_t n) noexcept {
    std::allocator<T>().deallocate(p, n);
    if (ws_) ws_->track(-words_for_bytes(n * sizeof(T)), C);
  }

  Workspace* workspace() const noexcept { return ws_; }

  template <class U>
  struct rebind {
    using other = CountedAllocator<U, C>;
  };

  friend bool operator==(const CountedAllocator& a, const CountedAllocator& b) noexcept {
    return a.ws_ == b.ws_;
  }

 private:
  Workspace* ws_;
};

template <class T>
using core_vector = std::vector<T, CountedAllocator<T, Channel::core>>;
template <class T>
using conn_vector = std::vector<T, CountedAllocator<T, Channel::connectivity>>;

/// Charges a fixed number of words for as long as it lives (recursion frames).
class FrameCharge {
 public:
  FrameCharge(std::int64_t words, Channel ch = Channel::core)
      : ws_(current_workspace()), words_(words), ch_(ch) {
    if (ws_) ws_->track(words_, ch_);
  }
  ~FrameCharge() {
    if (ws_) ws_->track(-words_, ch_);
  }
  FrameCharge(const FrameCharge&) = delete;
  FrameCharge& operator=(const FrameCharge&) = delete;

 private:
  Workspace* ws_;
  std::int64_t words_;
  Channel ch_;
};

struct Metrics {
  std::int64_t peak_core = 0;
  std::int64_t peak_conn = 0;
  std::int64_t oracle_queries = 0;  // block row queries answered by a backend
  std::int64_t subgrid_calls = 0;   // recursive GridReach invocations on blocks
  std::int32_t recursion_depth = 0; // deepest AuxReach nesting within one grid level
  std::int32_t grid_depth = 0;      // deepest GridReach nesting
  double wall_ms = 0.0;
};

struct RunInfo {
  std::int64_t n = 0;
  std::int32_t m = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string mode;
};

/// {n, m, alpha, beta, mode, peak_core, peak_conn, queries, depth, ms}
std::string metrics_json(const RunInfo& info, const Metrics& mt);

struct ScalingFit {
  std::vector<std::pair<double, double>> points;  // (n, peak_words)
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool valid = false;  // >= 4 points spanning >= 2 decades of n
};

/// Least-squares slope of log(peak) against log(n). Needs at least two
/// distinct n; throws std::invalid_argument otherwise.
ScalingFit fit_scaling(std::vector<std::pair<double, double>> series);

}  // namespace gridreach
