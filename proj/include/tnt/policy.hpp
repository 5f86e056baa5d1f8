#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnt/insertion_env.hpp"
#include "tnt/net.hpp"
#include "tnt/percept.hpp"
#include "tnt/rng.hpp"

namespace tnt {

inline constexpr int kFeatureDim = 8;

// Compact observation encoding: poke centroid (2), eyelet COM (2), eyelet
// angle (1), eyelet half-extents (2), bump-present flag (1); coordinates
// centered and scaled to [-1, 1] by the image dimensions. An absent bump
// substitutes prev_c (image center when null) and drops the flag to -1.
std::vector<double> featurize(const Observation& obs,
                              const Vec2* prev_c = nullptr);

// Ablation encoding: c (2) + 32 evenly strided eyelet pixels (64) + flag (1).
std::vector<double> featurize_raw(const Observation& obs,
                                  const Vec2* prev_c = nullptr);

struct PolicyParams {
  DenseNet actor;   // features -> 2, tanh-squashed times action_scale
  DenseNet critic;  // features + action/action_scale -> scalar
  std::vector<double> log_std;  // stochastic head (on-policy trainer)
  double action_scale = kActionBound;
  std::uint64_t seed = 0;
};

// Deterministic actor output; bounded by the squash, never by clipping.
Action policy_action(const PolicyParams& params,
                     const std::vector<double>& features);

// (eyelet COM - c) * mm_per_px, clipped to bounds; zero action and *no_bump
// set when the bump is absent.
Action vs_baseline(const Observation& obs, double mm_per_px,
                   bool* no_bump = nullptr);

// Abstract rollout interface so the trainers run on both the insertion
// environment and the contrived sanity environments in the tests.
class RolloutEnv {
 public:
  virtual ~RolloutEnv() = default;
  virtual int feature_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual double action_scale() const = 0;

  struct Step {
    std::vector<double> features;
    double reward = 0.0;
    bool done = false;
    bool success = false;
  };
  virtual std::vector<double> reset(std::uint64_t episode_seed) = 0;
  virtual Step step(const std::vector<double>& action) = 0;
};

// InsertionEnv exposed through the RolloutEnv interface (owns the featurize
// prev-c state).
class InsertionRollout : public RolloutEnv {
 public:
  explicit InsertionRollout(const EnvConfig& cfg) : env_(cfg) {}
  int feature_dim() const override { return kFeatureDim; }
  int action_dim() const override { return 2; }
  double action_scale() const override { return kActionBound; }
  std::vector<double> reset(std::uint64_t episode_seed) override;
  Step step(const std::vector<double>& action) override;
  InsertionEnv& env() { return env_; }

 private:
  InsertionEnv env_;
  Vec2 prev_c_ = Vec2::Zero();
  bool have_c_ = false;
};

struct Transition {
  std::vector<double> features;
  std::vector<double> action;  // in action units (m)
  double reward = 0.0;
  std::vector<double> next_features;
  bool done = false;
};

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}
  void push(Transition t);
  std::size_t size() const { return data_.size(); }
  const Transition& sample(Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> data_;
};

struct TrainConfig {
  double lr = 3e-4;
  long total_steps = 100000;
  std::uint64_t seed = 0;
  double gamma = 0.95;
  // off-policy
  int batch = 64;
  std::size_t replay_capacity = 50000;
  long warmup_steps = 1000;
  double tau = 0.005;  // target-network mixing
  double noise_sigma_start = 2e-3;
  double noise_sigma_end = 0.2e-3;
  // on-policy
  long horizon = 2048;
  double clip_eps = 0.2;
  double gae_lambda = 0.95;
  int epochs = 10;
  int minibatch = 64;
  double entropy_coef = 1e-3;
  double value_coef = 0.5;
};

struct CurvePoint {
  long step = 0;            // env steps completed at episode end
  double episode_reward = 0.0;
  int success = 0;
};

struct TrainResult {
  PolicyParams params;
  std::vector<CurvePoint> curve;
};

// Deterministic actor-critic with replay buffer, target networks mixed by
// tau, and linearly decayed clipped Gaussian exploration noise.
TrainResult train_offpolicy(RolloutEnv& env, const TrainConfig& cfg);

// Clipped-surrogate stochastic policy gradient with episodic GAE advantages.
TrainResult train_onpolicy(RolloutEnv& env, const TrainConfig& cfg);

void save_policy(const PolicyParams& params, const std::string& path);
PolicyParams load_policy(const std::string& path);

}  // namespace tnt
