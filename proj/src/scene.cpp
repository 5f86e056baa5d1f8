#include "tnt/scene.hpp"

#include <cmath>
#include <stdexcept>

#include "tnt/material.hpp"

namespace tnt {

NeedleSpec needle_spec(int index) {
  switch (index) {
    case 1: return {0.6e-3, 7.5e-3, 1.0e-3, 90.0};
    case 2: return {1.6e-3, 15.0e-3, 1.0e-3, 90.0};
    case 3: return {2.4e-3, 9.0e-3, 1.0e-3, 90.0};
    default: throw std::invalid_argument("needle index must be 1..3");
  }
}

namespace {

Quat frame_quat(const Vec3& u, const Vec3& v, const Vec3& n) {
  Eigen::Matrix3d m;
  m.col(0) = u;
  m.col(1) = v;
  m.col(2) = n;
  return Quat(m).normalized();
}

}  // namespace

Vec3 gel_center(const WorldState& w) { return w.eyelet_gel.origin; }
Vec3 gel_normal(const WorldState& w) { return w.eyelet_gel.normal; }
Vec3 gel_u_axis(const WorldState& w) { return w.eyelet_gel.u_axis; }
Vec3 gel_v_axis(const WorldState& w) { return w.eyelet_gel.v_axis; }

CollisionPlane needle_plate_plane(const WorldState& w) {
  CollisionPlane p = make_plane(
      gel_center(w) + w.needle.plate_thickness * gel_normal(w), gel_normal(w),
      std::min(w.needle.slot_height + 2.0 * kPlateBorder, kGelSize),
      std::min(w.needle.slot_width + 2.0 * kPlateBorder, kGelSize),
      gel_u_axis(w));
  // Slot cutout: the long clearance dimension runs along u.
  p.holes.push_back({0.0, 0.0, w.needle.slot_height, w.needle.slot_width});
  return p;
}

WorldState make_world(const WorldConfig& cfg, Rng& rng) {
  if (cfg.needle_index < 1 || cfg.needle_index > 3)
    throw std::invalid_argument("needle index must be 1..3");
  if (cfg.angle_deg < 45.0 || cfg.angle_deg > 90.0)
    throw std::invalid_argument("mount angle must lie in [45, 90] degrees");
  if (!(cfg.stiffness_scale > 0.0))
    throw std::invalid_argument("stiffness scale must be positive");
  MaterialSpec material = thread_material(cfg.thread_index);
  material.young_modulus *= cfg.stiffness_scale;

  WorldState w;
  w.rng_seed = cfg.seed;
  w.needle = needle_spec(cfg.needle_index);
  w.needle.mount_angle = cfg.angle_deg;

  w.spool_pose.position = Vec3(0.0, 0.0, 0.5);
  w.spool_pose.orientation = Quat::Identity();
  w.beginning_point = w.spool_pose.position - Vec3(0.0, 0.0, kBeginningOffset);

  // Base support placed uniformly inside a 20 x 20 cm region.
  double bx = rng.uniform(-0.1, 0.1);
  double by = rng.uniform(-0.1, 0.1);
  Vec3 center(bx, by, 0.25);

  double theta = cfg.angle_deg * M_PI / 180.0;
  Vec3 n(std::sin(theta), 0.0, std::cos(theta));
  Vec3 u(0.0, 1.0, 0.0);
  Vec3 v = n.cross(u);

  w.eyelet_gel = make_plane(center, n, kGelSize, kGelSize, u);
  w.needle_pose.position = center;
  w.needle_pose.orientation = frame_quat(u, v, n);

  // Marker rigidly attached to the needle mount; T_0 calibrated exactly.
  w.marker_pose.position = center + 0.02 * u + 0.01 * n;
  w.marker_pose.orientation = frame_quat(u, v, n);
  w.marker_to_gel = w.marker_pose.inverse().compose(w.needle_pose);

  // Thread hanging straight from the spool: the exact equilibrium up to
  // micro-extension, so later settles converge in one probe window.
  w.thread = new_chain(cfg.thread_length, material, cfg.spacing, cfg.damping);
  for (std::size_t i = 0; i < w.thread.size(); ++i)
    w.thread.positions[i] =
        w.spool_pose.position - Vec3(0.0, 0.0, double(i) * w.thread.rest_spacing);
  w.thread.inverse_masses[0] = 0.0;
  w.brake_engaged = true;

  w.gripper_pose.position = w.beginning_point;
  w.gripper_pose.orientation = Quat::Identity();
  return w;
}

double thread_rest_length(const WorldState& w) {
  return double(w.thread.size() - 1) * w.thread.rest_spacing;
}

double tail_length(const WorldState& w) {
  if (!w.grip_closed || w.grip_index < 0) return 0.0;
  long below = long(w.thread.size()) - 1 - (w.grip_index + 1);
  return below > 0 ? double(below) * w.thread.rest_spacing : 0.0;
}

EyeletEstimate estimate_eyelet_pose(const WorldState& w, double noise_bound,
                                    Rng& rng) {
  if (noise_bound < 0.0)
    throw std::invalid_argument("noise bound must be non-negative");
  EyeletEstimate e;
  e.pose = w.marker_pose.compose(w.marker_to_gel);
  if (noise_bound > 0.0) {
    Vec2 d = rng.in_disk(noise_bound);
    e.injected_error = d.x() * gel_u_axis(w) + d.y() * gel_v_axis(w);
    e.pose.position += e.injected_error;
  }
  return e;
}

Pose plan_approach(const Pose& tip_estimate, const EyeletEstimate& eyelet) {
  Vec3 n = eyelet.pose.rotate(Vec3::UnitZ());
  Pose goal;
  goal.position = eyelet.pose.position + 0.01 * n;
  goal.orientation = eyelet.pose.orientation;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(goal.position[k]) > kWorkspaceHalf ||
        std::abs(tip_estimate.position[k]) > kWorkspaceHalf)
      throw std::runtime_error("planned approach leaves the workspace");
  }
  return goal;
}

namespace {

// Rest length of thread between the spool and the grasp.
double paid_out_length(const WorldState& w) {
  return w.grip_index > 0 ? double(w.grip_index) * w.thread.rest_spacing : 0.0;
}

void extend_at_spool(WorldState& w, long segments) {
  auto& c = w.thread;
  Vec3 top = c.positions.front();
  double mass_inv = c.inverse_masses[1];  // free-particle inverse mass
  for (long k = 0; k < segments; ++k) {
    c.positions.insert(c.positions.begin() + 1, top);
    c.velocities.insert(c.velocities.begin() + 1, Vec3::Zero());
    c.inverse_masses.insert(c.inverse_masses.begin() + 1, mass_inv);
  }
  if (w.grip_index >= 0) w.grip_index += int(segments);
}

}  // namespace

void move_gripper(WorldState& w, const Pose& delta, bool payout_allowed) {
  Vec3 t = delta.position;
  Vec3 pivot = w.gripper_pose.position;

  if (w.grip_closed && w.grip_index >= 0) {
    Vec3 grip_now = w.thread.positions[w.grip_index];
    Vec3 grip_target = pivot + t + delta.rotate(grip_now - pivot);
    double need = (grip_target - w.spool_pose.position).norm();
    double have = paid_out_length(w);
    if (need > have) {
      if (payout_allowed) {
        long extra = long(std::ceil((need - have) / w.thread.rest_spacing));
        extend_at_spool(w, extra);
      } else {
        // Clip the translation where the span goes taut.
        double lo = 0.0, hi = 1.0;
        Vec3 fixed_part = pivot + delta.rotate(grip_now - pivot);
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          double span = (fixed_part + mid * t - w.spool_pose.position).norm();
          (span > have ? hi : lo) = mid;
        }
        t *= lo;
      }
    }
  }

  w.gripper_pose.position = pivot + t;
  w.gripper_pose.orientation =
      (delta.orientation * w.gripper_pose.orientation).normalized();
  if (w.grip_closed && w.grip_index >= 0) {
    for (std::size_t i = 0; i < w.thread.size(); ++i) {
      if (w.thread.inverse_masses[i] > 0.0) continue;
      if (int(i) != w.grip_index && int(i) != w.grip_index + 1) continue;
      w.thread.positions[i] =
          pivot + t + delta.rotate(w.thread.positions[i] - pivot);
      w.thread.velocities[i].setZero();
    }
  }
}

double glide_along_thread(WorldState& w, double step) {
  if (step < 0.0) throw std::invalid_argument("glide step must be non-negative");
  if (w.grip_closed) throw std::logic_error("cannot glide with the grip closed");
  w.grip_sliding = true;
  double limit = thread_rest_length(w) - kBeginningOffset;
  w.glide_traversed = std::min(w.glide_traversed + step, limit);
  if (kBeginningOffset + w.glide_traversed + kGlideFlagMargin >=
      thread_rest_length(w))
    w.glide_clipped = true;
  w.gripper_pose.position =
      w.beginning_point - Vec3(0.0, 0.0, w.glide_traversed);
  return w.glide_traversed;
}

void grasp_here(WorldState& w) {
  double depth =
      (w.spool_pose.position - w.gripper_pose.position).norm();
  long k = long(std::floor(depth / w.thread.rest_spacing));
  if (k >= long(w.thread.size()) - 1) k = long(w.thread.size()) - 2;
  if (k < 1) k = 1;  // particle 0 stays the spool pin
  w.grip_index = int(k);
  w.thread.inverse_masses[k] = 0.0;
  w.thread.inverse_masses[k + 1] = 0.0;
  w.grip_closed = true;
  w.grip_sliding = false;
}

}  // namespace tnt
