#pragma once

#include <cstdint>
#include <vector>

#include "confdiam/mesh.hpp"
#include "confdiam/plateau.hpp"

namespace confdiam {

/// Flat polar disk in the z = 0 plane: a center vertex plus `rings` circles
/// of `sectors` vertices. Every rim vertex has a straight spoke path through
/// the center, so the graph diameter of the fixture is exact. A nonzero bump
/// lifts the interior out of plane deterministically from the seed (the rim
/// stays planar).
ImmersedMesh make_disk(double radius, int rings, int sectors, double bump = 0.0,
                       std::uint64_t seed = 0);

/// Planar annulus between the two radii; two boundary loops.
ImmersedMesh make_annulus(double r_inner, double r_outer, int rings, int sectors);

/// Icosphere: subdivided icosahedron projected to the sphere.
ImmersedMesh make_icosphere(int subdivisions, double radius = 1.0);

/// Latitude-longitude sphere; meridians are inscribed in great circles, so
/// pole-to-pole graph paths realize the diameter without lattice overhead.
ImmersedMesh make_uv_sphere(int sectors, int stacks, double radius = 1.0);

/// Geodesic cap of the unit sphere around the +x axis with opening angle
/// theta_max (the s3 fixture: on |p| = 1 the stereographic factor is 1).
ImmersedMesh make_spherical_cap(double theta_max, int rings, int sectors);

/// Open hemisphere (z >= 0) of the unit sphere; boundary on the equator.
ImmersedMesh make_hemisphere(int rings, int sectors);

/// Open cylinder band of the given radius between z = -height/2 and
/// z = +height/2: the initial surface and boundary pair for the catenoid
/// experiments.
ImmersedMesh make_cylinder_band(double radius, double height, int sectors, int stacks);

/// Square patch of the plane z = z0, n x n quads (the horosphere fixture).
ImmersedMesh make_plane_patch(double half_width, int n, double z0);

/// Two parallel circles of the given radius in planes z = +-separation/2.
std::vector<NamedCurve> make_circle_pair(double radius, double separation, int points);

}  // namespace confdiam
