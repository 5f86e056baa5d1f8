#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tnt/insertion_env.hpp"
#include "tnt/policy.hpp"
#include "tnt/tail_finding.hpp"

namespace tnt {

// Key-value configuration: one `key = value` per line, '#' comments.
struct Config {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key, long fallback) const;
  double get_double(const std::string& key, double fallback) const;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Thread #3 does not fit needle #1; thread #4 fits only needle #3.
bool cell_excluded(int needle_index, int thread_index);

std::uint64_t episode_seed(std::uint64_t master, int needle_index,
                           int thread_index, double angle_deg, int episode);

struct CampaignConfig {
  std::vector<int> needles = {1, 2, 3};
  std::vector<int> threads = {1, 2, 3, 4};
  std::vector<double> angles = {60.0};
  int episodes_per_cell = 20;
  std::uint64_t master_seed = 0;
  EnvConfig env;  // per-cell overrides applied on top
};

struct CellResult {
  int needle_index = 0;
  int thread_index = 0;
  double angle_deg = 0.0;
  bool excluded = false;
  int episodes = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_steps = 0.0;
  double mean_final_offset = 0.0;  // m, |tip uv| at episode end
};

struct ResultsTable {
  std::vector<CellResult> cells;
  double aggregate_success = 0.0;  // over executed episodes
  double aggregate_steps = 0.0;
};

struct StepRecord {
  Action action;
  double reward = 0.0;
  EpisodeOutcome outcome = EpisodeOutcome::Running;
  std::optional<Vec2> c;
  Vec2 eyelet_com = Vec2::Zero();
};

struct EpisodeRecord {
  int needle_index = 0;
  int thread_index = 0;
  double angle_deg = 0.0;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  EpisodeOutcome outcome = EpisodeOutcome::Running;
  double final_offset = 0.0;  // m
  double total_reward = 0.0;
};

// How eval episodes pick actions: a trained policy or the servoing baseline.
struct PolicyChoice {
  const PolicyParams* params = nullptr;  // null -> VS baseline
};

EpisodeRecord run_episode(InsertionEnv& env, const PolicyChoice& policy,
                          std::uint64_t seed);

ResultsTable run_campaign(const CampaignConfig& campaign,
                          const PolicyChoice& policy,
                          std::vector<EpisodeRecord>* episodes = nullptr);

// results.csv (+ optional table.txt grid with '*' for excluded cells).
void report(const ResultsTable& results, const std::string& out_dir,
            bool grid = false);

std::string results_csv(const ResultsTable& results);
ResultsTable parse_results_csv(const std::string& csv);

struct PipelineRecord {
  TraceResult trace;
  Vec3 tip_estimate = Vec3::Zero();
  double tip_error = 0.0;  // m, vs sim ground truth
  Pose approach;
  EpisodeRecord episode;
  std::string failure;  // stage failure note, empty on success
};

struct PipelineConfig {
  EnvConfig env;
  const TipModel* tip_model = nullptr;  // null -> droop oracle fallback
  PolicyChoice policy;
};

// Trace twice, estimate the tip, plan the approach, then run one insertion
// episode; stage failures are recorded, never thrown.
PipelineRecord run_full_pipeline(const PipelineConfig& cfg, std::uint64_t seed);

}  // namespace tnt
