#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "tnt/geometry.hpp"
#include "tnt/rng.hpp"
#include "tnt/tactile.hpp"

namespace tnt {

enum class MaskLabel { Line, Bump, Hole };

struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // row-major
  MaskLabel label = MaskLabel::Line;
  int pixel_count = 0;

  bool at(int row, int col) const { return bits[row * width + col] != 0; }
  void set(int row, int col) {
    auto& b = bits[row * width + col];
    pixel_count += b == 0;
    b = 1;
  }
};

Mask make_mask(int width, int height, MaskLabel label);

// Adaptive threshold, 8-connected components (>= 5 px), then rule-based
// labels: a component whose columns bracket a background run becomes the
// frame of a Hole (the mask is that bracketed interior, poke pixels
// included); elongation > 4 makes a Line; compactness 4*pi*A/P^2 > 0.6
// makes a Bump. Only labels in `expected` are returned.
std::vector<Mask> segment(const TactileImage& img,
                          const std::set<MaskLabel>& expected);

// Pixel-count centroid as (row, col).
Vec2 mask_com(const Mask& m);

// N pixels drawn uniformly with replacement from the mask.
std::vector<Vec2> sample_pixels(const Mask& m, int count, Rng& rng);

// Angle (degrees, in (-90, 90]) of the line vs the image u axis, v taken
// upward: least-squares fit through the bottom contour (bottom-most pixel of
// each occupied column), or through the side contour for row-dominant masks
// so near-vertical lines resolve to ~90 degrees. Requires >= 10 occupied
// columns (rows for the row-dominant branch).
double line_orientation(const Mask& m);

// Free end of a line component: when the component touches exactly one image
// border (ties between adjacent borders break toward the longer entry), the
// set pixel farthest from that border along the principal axis; absent when
// it spans two opposite borders.
std::optional<Vec2> line_endpoint(const Mask& m);

// Principal-axis distance (m) from the entry border to the endpoint.
double residual_length(const Mask& m, double mm_per_px);

// Half-extents (du, dv) of the mask's bounding box in pixels.
Vec2 mask_half_extents(const Mask& m);

struct Observation {
  std::optional<Vec2> poke_com;       // (row, col) of the bump centroid
  std::vector<Vec2> eyelet_pixels;    // sampled from the hole mask
  Vec2 eyelet_com = Vec2::Zero();
  double eyelet_angle = 0.0;          // degrees
  Vec2 eyelet_half_extents = Vec2::Zero();  // px
  bool hole_visible = false;
  int width = 0;
  int height = 0;
  double mm_per_px = 0.0;
};

Observation make_observation(const TactileImage& img, int n_samples, Rng& rng);

}  // namespace tnt
