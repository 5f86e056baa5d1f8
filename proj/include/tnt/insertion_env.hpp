#pragma once

#include <cstdint>
#include <optional>

#include "tnt/percept.hpp"
#include "tnt/rng.hpp"
#include "tnt/scene.hpp"
#include "tnt/tactile.hpp"

namespace tnt {

struct Action {
  double du = 0.0;  // m, along gel u
  double dv = 0.0;  // m, along gel v
};

inline constexpr double kActionBound = 0.01;

Action clip_action(const Action& a);

struct RewardSpec {
  double r_terminal = 100.0;
  int n_samples = 500;
  double image_diag = 0.0;   // px
  int pixel_threshold = 0;   // scaled from 500 @ 1600x1200 by area
  int step_cap = 5;
};

RewardSpec make_reward_spec(int width_px, int height_px);

enum class EpisodeOutcome { Running, Success, FailTooFewPixels, FailStepLimit };

const char* outcome_name(EpisodeOutcome o);

// bump/hole may be null when the segmenter found none.
EpisodeOutcome classify_outcome(const Mask* bump, const Mask* hole, int steps,
                                const RewardSpec& spec);

// Success +r, failures -r; Running averages the distances from c to the
// sampled eyelet pixels over the image diagonal (negated), or -1 when the
// bump is absent.
double compute_reward(const Observation& obs, EpisodeOutcome outcome,
                      const RewardSpec& spec);

struct EnvConfig {
  int needle_index = 2;
  int thread_index = 2;
  double angle_deg = 60.0;
  double noise_bound = 0.03;      // reset calibration error, m
  int width_px = 400;
  int height_px = 300;
  double indent_depth = 1.5e-3;   // commanded poke indentation, m
  double retract = 2e-3;          // per-step retraction before translating, m
  double tail_length = 0.02;      // grasped free tail, m
  double stiffness_scale = 1.0;   // Young's modulus multiplier
  double exec_gain = 0.7;         // achieved = gain * cmd + bias + noise
  double exec_bias_u = 0.0;       // m
  double exec_bias_v = 0.7e-3;    // m
  double exec_noise = 0.8e-3;     // m, per-axis sigma
  double sensor_noise = 0.0;
  std::uint64_t seed = 0;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool done = false;
  EpisodeOutcome outcome = EpisodeOutcome::Running;
};

// Goal-conditioned insertion: reset drops the tip near the (estimated) slot
// center with a bounded in-plane calibration error and executes the first
// poke; step retracts, translates in-plane, and pokes again.
class InsertionEnv {
 public:
  explicit InsertionEnv(const EnvConfig& cfg);

  Observation reset(std::uint64_t episode_seed);
  StepResult step(const Action& action);

  const RewardSpec& reward_spec() const { return reward_; }
  const SensorSpec& sensor() const { return sensor_; }
  const EnvConfig& config() const { return cfg_; }
  double mm_per_px() const;
  int steps_taken() const { return steps_; }
  EpisodeOutcome outcome() const { return outcome_; }
  bool done() const { return outcome_ != EpisodeOutcome::Running; }
  // Tip position on the gel plane relative to the slot center, m.
  Vec2 tip_uv() const { return tip_uv_; }
  TactileImage last_image() const { return last_image_; }
  const WorldState& world() const { return world_; }

 private:
  Observation observe_after_poke();

  EnvConfig cfg_;
  SensorSpec sensor_;
  RewardSpec reward_;
  WorldState world_;
  Rng rng_;
  Vec2 tip_uv_ = Vec2::Zero();
  int steps_ = 0;
  EpisodeOutcome outcome_ = EpisodeOutcome::Running;
  TactileImage last_image_;
};

}  // namespace tnt
