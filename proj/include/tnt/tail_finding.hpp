#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tnt/geometry.hpp"
#include "tnt/material.hpp"
#include "tnt/net.hpp"
#include "tnt/rng.hpp"
#include "tnt/scene.hpp"
#include "tnt/tactile.hpp"

namespace tnt {

struct TraceResult {
  double d1 = 0.0;        // first-run traversal, m
  double d2 = 0.0;        // second-run traversal, m
  double l_thread = 0.0;  // recovered thread length, m
  double l_tail = 0.0;    // d1 - d2, m
  double theta = 0.0;     // grip-image line orientation, degrees
  Pose p_tac;             // grasp pose at stop
};

struct TipSample {
  double l_tail = 0.0;
  double theta = 0.0;
  Pose p_tac;
  Vec3 offset_true = Vec3::Zero();  // p_tip - p_tac
};

// Four dense layers mapping (l_tail, theta, p_tac position, grip axis) to the
// 3D tip offset; inputs z-scored with constants frozen at training time.
struct TipModel {
  DenseNet net;
  std::vector<double> input_mean, input_std;
  double train_error = 0.0;  // held-out mean distance error, m
};

// First run: glide from the beginning point until the imprint endpoint
// reaches the sensor center row. Returns the traversal d1 and the recovered
// total thread length.
std::pair<double, double> trace_to_tip(WorldState& world, const SensorSpec& sensor);

// Second run: stop at d2 = d1 - l_tail_target, close the grip, and measure
// theta from the final grip image.
TraceResult trace_to_offset(WorldState& world, const SensorSpec& sensor,
                            double d1, double l_tail_target);

std::vector<TipSample> collect_tip_dataset(int count, Rng& rng);

// Gradient-descent regression on squared offset error with a 400/100-style
// split; returns the model and its held-out mean Euclidean distance error.
TipModel train_tip_model(const std::vector<TipSample>& dataset, int train_count,
                         int epochs, double lr, std::uint64_t seed);

// p_tip = f(l_tail, theta, p_tac) + p_tac. If inputs fall outside the range
// seen in training (|z| > 4 after normalization), *extrapolating is set.
Vec3 estimate_tip(const TipModel& model, double l_tail, double theta,
                  const Pose& p_tac, bool* extrapolating = nullptr);

// Small-deflection cantilever self-weight droop: q L^4 / (8 E I), q = rho A g.
// If applicable is given, it reports whether the small-deflection regime
// (droop < 0.2 L) holds.
double cantilever_droop_oracle(double l_tail, const MaterialSpec& material,
                               bool* applicable = nullptr);

std::vector<double> tip_model_inputs(double l_tail, double theta, const Pose& p_tac);

void save_tip_model(const TipModel& model, const std::string& path);
TipModel load_tip_model(const std::string& path);

}  // namespace tnt
