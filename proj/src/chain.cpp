#include "tnt/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tnt {

CollisionPlane make_plane(const Vec3& origin, const Vec3& normal,
                          double extent_u, double extent_v, const Vec3& u_hint) {
  if (std::abs(normal.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("plane normal must be unit length");
  CollisionPlane p;
  p.origin = origin;
  p.normal = normal;
  Vec3 u = u_hint - normal * normal.dot(u_hint);
  if (u.norm() < 1e-9) u = orthogonal_unit(normal);
  p.u_axis = u.normalized();
  p.v_axis = normal.cross(p.u_axis);
  p.extent_u = extent_u;
  p.extent_v = extent_v;
  return p;
}

ParticleChain new_chain(double length, const MaterialSpec& material,
                        double spacing, double damping) {
  if (length <= 0.0 || spacing <= 0.0)
    throw std::invalid_argument("length and spacing must be positive");
  if (length < 2.0 * spacing)
    throw std::invalid_argument("length must cover at least two spacings");
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("damping must lie in (0, 1]");
  validate(material);

  int segments = static_cast<int>(std::ceil(length / spacing - 1e-12));
  int count = segments + 1;
  double mass = material.density * cross_section_area(material) * spacing;

  ParticleChain c;
  c.positions.resize(count);
  c.velocities.assign(count, Vec3::Zero());
  c.inverse_masses.assign(count, 1.0 / mass);
  for (int i = 0; i < count; ++i) c.positions[i] = Vec3(0, 0, -i * spacing);
  c.rest_spacing = spacing;
  c.damping = damping;
  c.material = material;

  double EA = material.young_modulus * cross_section_area(material);
  double EI = material.young_modulus * second_moment(material);
  c.stretch_compliance = spacing / EA;

  // The bending constraint C = |u x w| with alpha = s^5/(EI) reproduces the
  // discrete elastica (joint moment EI*beta/s) exactly, but an N-segment
  // cantilever under self-weight then overshoots the continuum droop
  // q L^4/(8EI) by the closed-form factor 4*sum_{r=1..N} r^2(r+1) / N^4
  // (endpoint quadrature of the moment integral plus the full tip-node mass).
  // Folding the inverse factor into alpha cancels the bias; the extra 0.9
  // keeps equilibrium droop strictly below the small-deflection bound.
  long n_free = std::max(1, segments - 1);
  double sum = 0.0;
  for (long r = 1; r <= n_free; ++r) sum += double(r) * r * (r + 1);
  double c_n = std::pow(double(n_free), 4) / (4.0 * sum);
  c.bend_compliance = 0.9 * c_n * std::pow(spacing, 5) / EI;
  return c;
}

ConstraintDelta solve_distance_constraint(const Vec3& xi, const Vec3& xj,
                                          double wi, double wj, double rest,
                                          double compliance, double lambda,
                                          double dt) {
  if (rest <= 0.0) throw std::invalid_argument("rest length must be positive");
  if (wi + wj <= 0.0) throw std::invalid_argument("at least one endpoint must be free");

  Vec3 d = xi - xj;
  double dist = d.norm();
  if (dist < 1e-12) {
    d = Vec3(1e-9, 0, 0);  // degenerate-gradient guard
    dist = d.norm();
  }
  Vec3 n = d / dist;
  double C = dist - rest;
  double alpha_t = compliance / (dt * dt);
  double dlambda = (-C - alpha_t * lambda) / (wi + wj + alpha_t);

  ConstraintDelta out;
  out.dlambda = dlambda;
  out.dxi = dlambda * wi * n;
  out.dxj = -dlambda * wj * n;
  return out;
}

PlaneProbe probe_plane(const CollisionPlane& plane, const Vec3& point,
                       double clearance_radius) {
  Vec3 rel = point - plane.origin;
  PlaneProbe probe;
  probe.signed_distance = plane.normal.dot(rel);
  double u = plane.u_axis.dot(rel);
  double v = plane.v_axis.dot(rel);
  if (plane.extent_u > 0.0 &&
      (std::abs(u) > plane.extent_u / 2.0 || std::abs(v) > plane.extent_v / 2.0))
    return probe;  // off the patch
  for (const auto& h : plane.holes) {
    double hw = h.width / 2.0 - clearance_radius;
    double hh = h.height / 2.0 - clearance_radius;
    if (hw > 0.0 && hh > 0.0 && std::abs(u - h.cu) <= hw && std::abs(v - h.cv) <= hh)
      return probe;  // passes through the cutout
  }
  probe.blocking = true;
  return probe;
}

namespace {

// Bending as C = |u x w| over the particle triple; linear in the bend angle
// near straight (C ~ s^2 * beta), so the compliant equilibrium follows beam
// statics instead of collapsing.
void solve_bend_constraint(ParticleChain& c, int j, double alpha_t,
                           double& lambda) {
  Vec3& p0 = c.positions[j];
  Vec3& p1 = c.positions[j + 1];
  Vec3& p2 = c.positions[j + 2];
  Vec3 u = p1 - p0;
  Vec3 w = p2 - p1;
  Vec3 cr = u.cross(w);
  double cn = cr.norm();
  if (cn < 1e-18) return;
  Vec3 chat = cr / cn;
  Vec3 g0 = -w.cross(chat);
  Vec3 g2 = chat.cross(u);
  Vec3 g1 = -g0 - g2;
  double w0 = c.inverse_masses[j];
  double w1 = c.inverse_masses[j + 1];
  double w2 = c.inverse_masses[j + 2];
  double denom = w0 * g0.squaredNorm() + w1 * g1.squaredNorm() +
                 w2 * g2.squaredNorm() + alpha_t;
  if (denom <= 0.0) return;
  double dlambda = (-cn - alpha_t * lambda) / denom;
  lambda += dlambda;
  p0 += dlambda * w0 * g0;
  p1 += dlambda * w1 * g1;
  p2 += dlambda * w2 * g2;
}

void step_impl(ParticleChain& c, const std::vector<CollisionPlane>& planes,
               double dt, int iterations, std::vector<Vec3>& prev,
               std::vector<char>& contact) {
  const int n = static_cast<int>(c.size());
  prev.assign(c.positions.begin(), c.positions.end());
  contact.assign(n, 0);

  for (int i = 0; i < n; ++i) {
    if (c.inverse_masses[i] <= 0.0) continue;
    c.velocities[i].z() -= c.gravity * dt;
    c.positions[i] += c.velocities[i] * dt;
  }

  std::vector<double> lam_s(std::max(0, n - 1), 0.0);
  std::vector<double> lam_b(std::max(0, n - 2), 0.0);
  double radius = c.material.thickness / 2.0;
  double alpha_bt = c.bend_compliance / (dt * dt);

  for (int it = 0; it < iterations; ++it) {
    for (int j = 0; j + 1 < n; ++j) {
      if (c.inverse_masses[j] <= 0.0 && c.inverse_masses[j + 1] <= 0.0)
        continue;  // rigidly held pair
      ConstraintDelta d = solve_distance_constraint(
          c.positions[j], c.positions[j + 1], c.inverse_masses[j],
          c.inverse_masses[j + 1], c.rest_spacing, c.stretch_compliance,
          lam_s[j], dt);
      lam_s[j] += d.dlambda;
      c.positions[j] += d.dxi;
      c.positions[j + 1] += d.dxj;
    }
    for (int j = 0; j + 2 < n; ++j) solve_bend_constraint(c, j, alpha_bt, lam_b[j]);
    for (int i = 0; i < n; ++i) {
      if (c.inverse_masses[i] <= 0.0) continue;
      for (const auto& plane : planes) {
        PlaneProbe probe = probe_plane(plane, c.positions[i], radius);
        if (probe.blocking && probe.signed_distance < 0.0) {
          c.positions[i] -= probe.signed_distance * plane.normal;
          contact[i] = 1;
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    if (c.inverse_masses[i] <= 0.0) {
      c.velocities[i].setZero();
      continue;
    }
    c.velocities[i] = (c.positions[i] - prev[i]) / dt * c.damping;
    if (contact[i]) {
      // Sticky contact: keep only the separating normal component.
      double vn = 0.0;
      Vec3 nsum = Vec3::Zero();
      for (const auto& plane : planes) {
        PlaneProbe probe = probe_plane(plane, c.positions[i], radius);
        if (probe.blocking && probe.signed_distance < 1e-9) nsum += plane.normal;
      }
      if (nsum.norm() > 1e-12) {
        nsum.normalize();
        vn = std::max(0.0, c.velocities[i].dot(nsum));
        c.velocities[i] = vn * nsum;
      }
    }
    if (!c.positions[i].allFinite())
      throw std::runtime_error("non-finite particle state at step " +
                               std::to_string(c.step_count));
  }
  ++c.step_count;
}

}  // namespace

void step(ParticleChain& c, const std::vector<CollisionPlane>& planes,
          double dt, int iterations) {
  if (!(dt > 0.0 && dt <= 0.02))
    throw std::invalid_argument("dt must lie in (0, 0.02] s");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  std::vector<Vec3> prev;
  std::vector<char> contact;
  step_impl(c, planes, dt, iterations, prev, contact);
}

bool settle(ParticleChain& c, const std::vector<CollisionPlane>& planes,
            double tol, long max_steps) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  constexpr int kIters = 20;
  constexpr double kStages[] = {1e-3, 1e-4, 1e-5};

  constexpr int kWindow = 25;

  std::vector<Vec3> prev;
  std::vector<char> contact;
  long budget = max_steps;

  // One window of steps; true when no particle drifted more than tol from
  // where the window started.
  std::vector<Vec3> mark;
  auto quiet_window = [&](double dt) {
    mark.assign(c.positions.begin(), c.positions.end());
    for (int k = 0; k < kWindow && budget > 0; ++k) {
      step_impl(c, planes, dt, kIters, prev, contact);
      --budget;
    }
    double drift = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
      drift = std::max(drift, (c.positions[i] - mark[i]).norm());
    return drift < tol;
  };

  // Probe at the finest substep first so an already-settled chain returns
  // after a single window instead of being kicked by the coarse stages.
  if (quiet_window(kStages[2])) {
    c.converged = true;
    return true;
  }

  bool ok = false;
  for (double dt : kStages) {
    ok = false;
    while (budget > 0) {
      if (quiet_window(dt)) {
        ok = true;
        break;
      }
    }
    if (!ok) break;  // budget exhausted in this stage
  }
  c.converged = ok;
  return ok;
}

double buckling_load(const MaterialSpec& material, double free_length) {
  if (free_length <= 0.0) throw std::invalid_argument("free_length must be positive");
  double EI = material.young_modulus * second_moment(material);
  return M_PI * M_PI * EI / (4.0 * free_length * free_length);
}

}  // namespace tnt
