#pragma once

#include <string>
#include <vector>

#include "tnt/harness.hpp"
#include "tnt/net.hpp"
#include "tnt/percept.hpp"
#include "tnt/policy.hpp"
#include "tnt/tactile.hpp"

namespace tnt {

// Binary 8-bit PGM (P5).
void write_pgm(const TactileImage& img, const std::string& path);
void write_pgm(const Mask& mask, const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// JSON with a format-version field.
std::string net_to_json(const DenseNet& net);
DenseNet net_from_json(const std::string& json_text);

std::string learning_curve_csv(const std::vector<CurvePoint>& curve);

std::string episodes_jsonl(const std::vector<EpisodeRecord>& episodes);

std::string tip_dataset_csv(const std::vector<TipSample>& samples);
std::vector<TipSample> parse_tip_dataset_csv(const std::string& csv);

}  // namespace tnt
