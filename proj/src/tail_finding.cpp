#include "tnt/tail_finding.hpp"

#include <cmath>
#include <stdexcept>

#include "tnt/material.hpp"

namespace tnt {

double cantilever_droop_oracle(double l_tail, const MaterialSpec& material,
                               bool* applicable) {
  if (!(l_tail > 0.0)) throw std::invalid_argument("tail length must be positive");
  validate(material);
  double q = material.density * cross_section_area(material) * kGravity;
  double ei = material.young_modulus * second_moment(material);
  double droop = q * std::pow(l_tail, 4) / (8.0 * ei);
  if (applicable) *applicable = droop < 0.2 * l_tail;
  return droop;
}

}  // namespace tnt
