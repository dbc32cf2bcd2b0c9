#include "superosc/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "superosc/errors.hpp"

namespace superosc {

std::string to_string(Direction d) { return d == Direction::Left ? "left" : "right"; }

std::string to_string(StopReason reason, int stop_after_fails) {
  switch (reason) {
    case StopReason::Exhausted:
      return "exhausted";
    case StopReason::MaxPoints:
      return "max-points";
    case StopReason::ConsecutiveFails:
      return stop_after_fails == 2 ? "two-consecutive-fails" : std::to_string(stop_after_fails) + "-consecutive-fails";
  }
  return "exhausted";
}

namespace {

ProfilePoint evaluate(const BandlimitedFunction& f, double anchor, double b, CriterionMode mode, double c,
                      const CriterionConfig& config) {
  const Interval iv = b > anchor ? Interval(anchor, b) : Interval(b, anchor);
  const QReport r = check_criterion(f, mode, c, iv, config);
  return {b, r.q, r.passes};
}

}  // namespace

ScanProfile scan_profile(const BandlimitedFunction& f, double anchor, CriterionMode mode, double c,
                         Direction direction, const ScanOptions& options) {
  if (options.max_points < 1) throw std::invalid_argument("max_points must be >= 1");
  if (options.stop_after_fails < 0) throw std::invalid_argument("stop_after_fails must be >= 0");
  if (!f.is_real_valued()) {
    throw PreconditionError("criteria apply to real-valued functions; wrap '" + f.label() + "' in re() or im()");
  }

  ScanProfile profile;
  profile.anchor = anchor;
  profile.mode = mode;
  profile.c = mode == CriterionMode::Sine ? c : 0.0;
  profile.direction = direction;
  profile.stop_after_fails = options.stop_after_fails;

  const double period = f.band_edge() > 0.0 ? 2.0 * std::numbers::pi / f.band_edge() : 2.0 * std::numbers::pi;
  const double extent = options.extent.value_or(64.0 * period);
  if (!(extent > 0.0)) throw std::invalid_argument("scan extent must be > 0");
  const Interval range =
      direction == Direction::Right ? Interval(anchor, anchor + extent) : Interval(anchor - extent, anchor);

  const double scale = function_scale(f, range);
  const double residual =
      mode == CriterionMode::Sine ? std::abs(f.real(anchor) - profile.c) : std::abs(f.real_derivative(anchor));
  if (residual > endpoint_tolerance(scale)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "anchor %.9g is not an admissible endpoint (residual %.3g)", anchor, residual);
    throw PreconditionError(buf);
  }

  const double step = options.step.value_or(default_root_step(f.band_edge(), range));
  const RootList roots =
      mode == CriterionMode::Sine ? find_roots(f, profile.c, range, step) : find_extrema(f, range, step);
  std::vector<double> ends;
  const double same = 1e-7 * std::max(1.0, std::abs(anchor));
  for (double x : roots.points) {
    if (std::abs(x - anchor) > same) ends.push_back(x);
  }
  if (direction == Direction::Left) std::reverse(ends.begin(), ends.end());
  if (ends.empty()) throw PreconditionError("no admissible endpoints found in the scan range");

  const std::size_t batch =
      options.parallel ? std::max<std::size_t>(1, std::min(8u, std::thread::hardware_concurrency())) : 1;
  int fails = 0;
  std::size_t next = 0;
  for (;;) {
    if (next >= ends.size()) {
      profile.stop_reason = StopReason::Exhausted;
      break;
    }
    const std::size_t count = std::min({batch, ends.size() - next,
                                        static_cast<std::size_t>(options.max_points) - profile.points.size()});
    std::vector<ProfilePoint> computed(count);
    if (count == 1) {
      computed[0] = evaluate(f, anchor, ends[next], mode, profile.c, options.criterion);
    } else {
      std::vector<std::future<ProfilePoint>> jobs;
      for (std::size_t i = 0; i < count; ++i) {
        jobs.push_back(std::async(std::launch::async, evaluate, std::cref(f), anchor, ends[next + i], mode,
                                  profile.c, std::cref(options.criterion)));
      }
      for (std::size_t i = 0; i < count; ++i) computed[i] = jobs[i].get();
    }
    next += count;

    // Apply the stop rules in order; anything computed past the stop is dropped.
    bool stopped = false;
    for (const auto& p : computed) {
      profile.points.push_back(p);
      fails = p.passes ? 0 : fails + 1;
      if (options.stop_after_fails > 0 && fails >= options.stop_after_fails) {
        profile.stop_reason = StopReason::ConsecutiveFails;
        stopped = true;
        break;
      }
      if (static_cast<int>(profile.points.size()) >= options.max_points) {
        profile.stop_reason = StopReason::MaxPoints;
        stopped = true;
        break;
      }
    }
    if (stopped) break;
  }
  return profile;
}

std::pair<ScanProfile, ScanProfile> scan_two_sided(const BandlimitedFunction& f, double anchor, CriterionMode mode,
                                                   double c, const ScanOptions& options) {
  return {scan_profile(f, anchor, mode, c, Direction::Left, options),
          scan_profile(f, anchor, mode, c, Direction::Right, options)};
}

}  // namespace superosc
