#pragma once

#include <cstddef>
#include <span>

#include "confdiam/error.hpp"

namespace confdiam {

/// Gauss-Legendre node/weight pair on the unit interval [0, 1].
struct GaussPoint {
    double node;
    double weight;
};

/// Rules of order 1..5 (exact for polynomials of degree 2n-1). Order 2 is the
/// default for curve quadrature; order 5 backs the geodesic edge weights where
/// the extrinsic-dominance invariant leaves essentially no error budget.
std::span<const GaussPoint> gauss_rule(int order);

constexpr int kMaxGaussOrder = 5;

}  // namespace confdiam
