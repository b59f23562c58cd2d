#pragma once

#include <cstdint>

#include "modelset/point_set.hpp"
#include "modelset/scheme.hpp"
#include "modelset/window.hpp"

// Shipped reference schemes, all in exact arithmetic.
namespace modelset::fixtures {

/// tau = (1 + sqrt 5) / 2 and its conjugate.
QuadraticNumber golden();
QuadraticNumber golden_conjugate();

/// Columns (1, 1) and (tau, tau'); covolume sqrt 5.
LatticeScheme fibonacci_scheme();
/// (-1, tau - 1], length tau; both endpoints are star images (singular).
WindowSpec fibonacci_window();
/// The Fibonacci window shifted by -1/10; no lattice star on its boundary.
WindowSpec fibonacci_generic_window();

/// Columns (1, 1) and (1 + sqrt 2, 1 - sqrt 2); covolume 2 sqrt 2.
LatticeScheme silver_mean_scheme();
/// [-sqrt2/2, sqrt2/2), length sqrt 2: tiles of length 1 and 1 + sqrt 2.
WindowSpec silver_mean_window();

/// Eightfold scheme in R^2 x R^2; covolume 4.
LatticeScheme ammann_beenker_scheme();
/// Regular octagon of edge 1 centred at the origin, boundary included.
WindowSpec ammann_beenker_window();

/// Z^d as a scheme without internal space.
LatticeScheme integer_crystal_scheme(int d = 1);

/// Seeded renewal process on [lo, hi] with gaps uniform in [0.5, 1.5]:
/// uniformly discrete and relatively dense but neither FLC nor Meyer.
IndexedPointSet random_fixture(double lo, double hi, std::uint64_t seed);

}  // namespace modelset::fixtures
