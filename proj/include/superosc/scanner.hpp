#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superosc/criteria.hpp"

namespace superosc {

enum class Direction { Left, Right };
enum class StopReason { Exhausted, ConsecutiveFails, MaxPoints };

std::string to_string(Direction d);

struct ProfilePoint {
  double b = 0.0;
  std::optional<double> q;  // empty when Q is undefined on [anchor, b]
  bool passes = false;
};

struct ScanProfile {
  double anchor = 0.0;
  CriterionMode mode = CriterionMode::Sine;
  double c = 0.0;
  Direction direction = Direction::Right;
  int stop_after_fails = 2;
  std::vector<ProfilePoint> points;
  StopReason stop_reason = StopReason::Exhausted;
};

std::string to_string(StopReason reason, int stop_after_fails);

struct ScanOptions {
  int max_points = 40;
  int stop_after_fails = 2;       // 0 disables the stop rule
  std::optional<double> extent;   // default: 64 periods 2 pi / B
  std::optional<double> step;     // root scan step; default from the band edge
  CriterionConfig criterion;
  bool parallel = true;           // result is identical either way
};

/// Q on [anchor, b] (or [b, anchor]) for consecutive admissible endpoints b
/// moving away from the anchor. Each Q is computed independently.
ScanProfile scan_profile(const BandlimitedFunction& f, double anchor, CriterionMode mode, double c,
                         Direction direction, const ScanOptions& options = {});

/// Left and right profiles sharing one anchor.
std::pair<ScanProfile, ScanProfile> scan_two_sided(const BandlimitedFunction& f, double anchor, CriterionMode mode,
                                                   double c, const ScanOptions& options = {});

}  // namespace superosc
