#pragma once

#include "radolab/ball.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace radolab {

PolytopeBall cube_ball(int dim);             // unit ball of the max norm
PolytopeBall cross_polytope_ball(int dim);   // unit ball of the l1 norm
PolytopeBall square_ball();
PolytopeBall l1_plane_ball();
/// Symmetric hexagon with vertices ±(1,0), ±(0,1), ±(1,1).
PolytopeBall hexagon_ball();
/// hexagon ⊕∞ [-1,1]
PolytopeBall hexagonal_prism_ball();

/// Unit ball of (A ⊕ B)_∞: all concatenations of a vertex of A with a vertex of B.
PolytopeBall linf_sum(const PolytopeBall& a, const PolytopeBall& b);

/// Resolves square, hexagon, hexagonal_prism, l1_plane, cube_<d> and
/// cross_polytope_<d> (1 <= d <= 4). Throws Errc::unknown_builtin.
PolytopeBall builtin_ball(std::string_view name);
std::vector<std::string> builtin_names();

/// Seeded random symmetric polytope: either a symmetrized integer point cloud,
/// an ℓ∞-sum of such a cloud with a cube, or an integer linear image of one of
/// those. Always a valid ball of dimension `dim`.
PolytopeBall random_symmetric_ball(int dim, std::uint64_t seed);

}  // namespace radolab
