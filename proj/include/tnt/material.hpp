#pragma once

#include <stdexcept>

namespace tnt {

struct MaterialSpec {
  double young_modulus = 0.0;  // Pa
  double density = 0.0;        // kg/m^3
  double thickness = 0.0;      // m, circular cross-section diameter
};

inline void validate(const MaterialSpec& m) {
  if (m.young_modulus <= 0.0 || m.density <= 0.0 || m.thickness <= 0.0)
    throw std::invalid_argument("material fields must be strictly positive");
  if (m.thickness < 1e-4 || m.thickness > 5e-3)
    throw std::invalid_argument("thickness outside supported range [1e-4, 5e-3] m");
}

inline double cross_section_area(const MaterialSpec& m) {
  double r = m.thickness / 2.0;
  return M_PI * r * r;
}

inline double second_moment(const MaterialSpec& m) {
  double t = m.thickness;
  return M_PI * t * t * t * t / 64.0;
}

// Stock threads #1..#4. Young's moduli and thicknesses follow the supported
// material set (glass fiber, nylon, and two steel gauges); densities are
// engineering handbook values.
inline MaterialSpec thread_material(int index) {
  switch (index) {
    case 1: return {90e9, 2500.0, 0.2e-3};
    case 2: return {8.3e9, 1150.0, 0.5e-3};
    case 3: return {50e9, 7800.0, 1.0e-3};
    case 4: return {50e9, 7800.0, 2.0e-3};
    default: throw std::invalid_argument("thread index must be 1..4");
  }
}

}  // namespace tnt
