// Copyright 2026 The hopfmin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <random>
#include <vector>

#include "hopfmin/mapping.hpp"

namespace hopfmin {

/// Compactly supported bump displacement: amplitude * (1 - |z-c|^2/r^2)^4 on |z-c| < r.
struct Bump {
  Point center;
  double radius = 1.0;
  Complex amplitude;
};

/// z -> affine(z + sum of bumps). A diffeomorphism whenever the bump
/// displacement has Lipschitz constant below one; the generator enforces that.
struct SmoothMap {
  AffineMap affine;
  std::vector<Bump> bumps;

  Point operator()(Point z) const;
  /// Analytic (f_z, f_zbar) at z.
  std::pair<Complex, Complex> wirtinger(Point z) const;
  /// Newton inversion; throws NumericalError when it fails to converge.
  Point inverse(Point w) const;
};

/// Bumps with centers in `support` and disks kept inside it, so the map is
/// the affine part on the boundary. `strength` bounds the Lipschitz constant
/// of the total bump displacement. Radii are at least `min_radius` times
/// the support's extent.
SmoothMap random_smooth_map(std::mt19937_64& rng, const Domain& support, int n_bumps, double strength,
                            const AffineMap& affine = {}, double min_radius = 0.03);

/// Affine map with |b| < |a|, |a| in [0.5, 2], |b|/|a| <= max_ratio.
AffineMap random_affine(std::mt19937_64& rng, double max_ratio);

}  // namespace hopfmin
