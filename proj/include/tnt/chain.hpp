#pragma once

#include <vector>

#include "tnt/geometry.hpp"
#include "tnt/material.hpp"

namespace tnt {

struct CollisionPlane {
  Vec3 origin = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Vec3 u_axis = Vec3::UnitX();
  Vec3 v_axis = Vec3::UnitY();
  double extent_u = 0.0;  // full widths of the patch; <= 0 means unbounded
  double extent_v = 0.0;

  struct Hole {
    double cu = 0.0, cv = 0.0;  // center in plane coordinates
    double width = 0.0, height = 0.0;
  };
  std::vector<Hole> holes;
};

// Builds an orthonormal plane frame and validates extents/holes.
CollisionPlane make_plane(const Vec3& origin, const Vec3& normal,
                          double extent_u, double extent_v,
                          const Vec3& u_hint = Vec3::UnitX());

struct ParticleChain {
  std::vector<Vec3> positions;
  std::vector<Vec3> velocities;
  std::vector<double> inverse_masses;  // 0 => pinned
  double rest_spacing = 0.0;
  double stretch_compliance = 0.0;  // XPBD alpha for the spacing constraint
  double bend_compliance = 0.0;     // XPBD alpha for the bending constraint
  double damping = 1.0;             // per-step velocity factor
  double gravity = kGravity;        // m/s^2, along -z
  MaterialSpec material;
  bool converged = false;  // set by settle
  long step_count = 0;

  std::size_t size() const { return positions.size(); }
};

// Straight vertical chain hanging from the origin along -z, at rest.
ParticleChain new_chain(double length, const MaterialSpec& material,
                        double spacing, double damping);

struct ConstraintDelta {
  Vec3 dxi = Vec3::Zero();
  Vec3 dxj = Vec3::Zero();
  double dlambda = 0.0;
};

ConstraintDelta solve_distance_constraint(const Vec3& xi, const Vec3& xj,
                                          double wi, double wj, double rest,
                                          double compliance, double lambda,
                                          double dt);

// One XPBD step: gravity prediction, `iterations` Gauss-Seidel sweeps over
// stretch, bend, and plane projections, then damped velocity update with
// tangential velocity zeroing at contacts.
void step(ParticleChain& chain, const std::vector<CollisionPlane>& planes,
          double dt, int iterations);

// Default position tolerance for settle: well below any physical feature,
// comfortably above the solver's steady-state jitter floor.
inline constexpr double kSettleTol = 1e-8;

// Quasi-static equilibrium: internally relaxes with a staged substep schedule
// (bending equilibria in the micrometer range need far smaller substeps than
// the dynamic rate) until no particle moves more than tol meters across a
// whole measurement window of steps — a velocity threshold would sit inside
// the projection jitter at the finest substep. Returns the converged flag;
// max_steps is the total substep budget.
bool settle(ParticleChain& chain, const std::vector<CollisionPlane>& planes,
            double tol = kSettleTol, long max_steps = 400000);

// Euler critical load of a cantilever column: pi^2 EI / (4 L^2).
double buckling_load(const MaterialSpec& material, double free_length);

// Signed distance from point to plane; valid.second is false outside the
// patch extents or inside a hole (shrunk by clearance_radius).
struct PlaneProbe {
  double signed_distance = 0.0;
  bool blocking = false;
};
PlaneProbe probe_plane(const CollisionPlane& plane, const Vec3& point,
                       double clearance_radius);

}  // namespace tnt
