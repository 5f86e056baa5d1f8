#pragma once

#include <cstdint>

#include "tnt/chain.hpp"
#include "tnt/geometry.hpp"
#include "tnt/rng.hpp"

namespace tnt {

struct NeedleSpec {
  double slot_width = 0.0;      // m, narrow clearance dimension
  double slot_height = 0.0;     // m, long clearance dimension
  double plate_thickness = 0.0; // m
  double mount_angle = 90.0;    // degrees in [45, 90]
};

// Stock eyelets #1..#3: clearances 0.6x7.5, 1.6x15, 2.4x9 mm^2, 1 mm plate.
NeedleSpec needle_spec(int index);

// Metal border of the plate around the slot cutout.
inline constexpr double kPlateBorder = 1.2e-3;
// Distance from spool center to the glide beginning point.
inline constexpr double kBeginningOffset = 0.02;
// The eyelet-side gel patch is fixed at 15 x 15 mm.
inline constexpr double kGelSize = 0.015;
// Reachability guard around the base.
inline constexpr double kWorkspaceHalf = 0.5;
// Default grip-sensor half-height: the glide clip flag raises once the
// footprint reaches the thread tip.
inline constexpr double kGlideFlagMargin = 7.5e-3;

struct EyeletEstimate {
  Pose pose;
  Vec3 injected_error = Vec3::Zero();
};

struct WorldState {
  ParticleChain thread;
  Pose gripper_pose;
  bool grip_closed = false;
  bool grip_sliding = false;
  Pose spool_pose;
  bool brake_engaged = true;
  NeedleSpec needle;
  Pose needle_pose;         // origin at the slot center; rotation maps local
                            // x->gel u (slot long axis), y->gel v, z->normal
  CollisionPlane eyelet_gel;
  Pose marker_pose;
  Pose marker_to_gel;       // T_0: marker frame -> gel center frame
  std::uint64_t rng_seed = 0;

  // glide/grasp bookkeeping
  Vec3 beginning_point = Vec3::Zero();
  double glide_traversed = 0.0;
  bool glide_clipped = false;
  int grip_index = -1;  // first pinned particle when grasped
};

struct WorldConfig {
  int thread_index = 2;
  int needle_index = 2;
  double angle_deg = 60.0;
  double thread_length = 0.14;
  double spacing = 0.7 * 0.01;
  double damping = 0.9;
  double noise_bound = 0.03;
  double stiffness_scale = 1.0;  // scales Young's modulus, for the soft-thread limit
  std::uint64_t seed = 0;
};

WorldState make_world(const WorldConfig& cfg, Rng& rng);

// Gel-plane basis accessors.
Vec3 gel_center(const WorldState& w);
Vec3 gel_normal(const WorldState& w);
Vec3 gel_u_axis(const WorldState& w);
Vec3 gel_v_axis(const WorldState& w);

// The needle plate as collision geometry: a plate-sized patch, coplanar with
// the gel but offset by plate_thickness along the normal, with the slot as a
// cutout.
CollisionPlane needle_plate_plane(const WorldState& w);

// p_eyelet = p_marker composed with T_0, plus a uniform in-plane error of
// magnitude <= noise_bound.
EyeletEstimate estimate_eyelet_pose(const WorldState& w, double noise_bound,
                                    Rng& rng);

// Pose placing the estimated tip on the gel normal through the estimated
// eyelet center, 0.01 m off the surface, tail axis along -normal. Throws
// when the target leaves the workspace box.
Pose plan_approach(const Pose& tip_estimate, const EyeletEstimate& eyelet);

// Rigid motion of the gripper: translation in world frame plus rotation about
// the gripper position. Grasped (pinned) particles follow. With the brake
// engaged the motion is clipped at taut-thread length; with payout allowed
// the chain is extended at the spool end in rest_spacing increments instead.
void move_gripper(WorldState& w, const Pose& delta, bool payout_allowed);

// Sliding grip moving down the straightened thread from the beginning point;
// returns cumulative traversed distance. Motion clips at the thread tip.
double glide_along_thread(WorldState& w, double step);

// Close the grip at the current glide position: pins the two nearest chain
// particles and records the grasp pose.
void grasp_here(WorldState& w);

double thread_rest_length(const WorldState& w);

// Free tail length below the grasp (m); 0 when not grasped.
double tail_length(const WorldState& w);

}  // namespace tnt
