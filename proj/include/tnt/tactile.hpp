#pragma once

#include <cstdint>
#include <vector>

#include "tnt/geometry.hpp"
#include "tnt/rng.hpp"
#include "tnt/scene.hpp"

namespace tnt {

struct SensorSpec {
  int width_px = 400;
  int height_px = 300;
  double fov_u = 0.020;  // m, along image columns
  double fov_v = 0.015;  // m, along image rows
  double gel_young_modulus = 0.123e6;  // Pa
  double noise_sigma = 0.0;            // additive intensity noise
};

SensorSpec sensor_spec(int width_px, int height_px);

// Millimeters of gel per pixel; requires square pixels.
double sensor_mm_per_px(const SensorSpec& s);

struct TactileImage {
  int width = 0;
  int height = 0;
  std::vector<double> intensities;  // row-major, row 0 at the image top
  double mm_per_px = 0.0;           // mm

  double at(int row, int col) const { return intensities[row * width + col]; }
  double& at(int row, int col) { return intensities[row * width + col]; }
};

// Indentation depths (m) used by the renderers, and the depth mapped to
// full-scale intensity 1.0.
inline constexpr double kIndentFull = 2.0e-3;
inline constexpr double kPlatePress = 0.5e-3;
inline constexpr double kGripPress = 1.0e-3;

// Contact force of a rounded tip pressed `depth` into the gel.
double hertz_force(double gel_young_modulus, double thread_thickness,
                   double depth);

// Grip-side sensor centered on the gripper, v axis up along the hanging
// thread: renders the clamped thread as a pressed line, including the free
// end when it lies inside the field of view.
TactileImage render_grip_image(const WorldState& w, const SensorSpec& s,
                               Rng* noise_rng = nullptr);

// Eyelet-side sensor spanning the gel patch: static plate imprint with the
// slot cutout, plus the poke bump when the thread tip currently indents the
// gel and poke_force stays at or below the tail's buckling load.
TactileImage render_eyelet_image(const WorldState& w, const SensorSpec& s,
                                 double poke_force, Rng* noise_rng = nullptr);

// Pixel (row, col) of a gel-plane point given in meters relative to the gel
// center, u right, v up.
Vec2 gel_to_pixel(const SensorSpec& s, double u, double v);
Vec2 pixel_to_gel(const SensorSpec& s, double row, double col);

}  // namespace tnt
