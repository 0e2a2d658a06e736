#pragma once

#include <array>
#include <complex>
#include <span>

#include "flowsig/image.hpp"

namespace flowsig {

inline constexpr int kZernikeMaxOrder = 8;
inline constexpr int kZernikeFeatureCount = 25;

// Order n, repetition m with m <= n and n - m even.
struct ZernikeIndex {
    int n = 0;
    int m = 0;

    bool operator==(const ZernikeIndex&) const = default;
};

// Centroid-centered unit-disk mapping for a ROI. Every foreground pixel lands
// at rho <= 1 because the radius is the farthest pixel's distance.
struct DiskMapping {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 1.0;
};

using ZernikeFeatures = std::array<double, kZernikeFeatureCount>;

// The 25 (n, m) pairs with 0 <= m <= n <= 8 and n - m even, ordered by
// n then m. Position in this list fixes the persisted feature order.
std::span<const ZernikeIndex, kZernikeFeatureCount> canonical_index_set();

// Radial polynomial R_{n,m}(rho). Throws InvalidIndexError for m > n or
// odd n - m.
double radial_polynomial(int n, int m, double rho);

DiskMapping disk_mapping(const BinaryRoi& roi);

// Discrete moment A_{n,m} = ((n+1)/pi) * sum R_{n,m}(rho) e^{-i m theta} dA
// over foreground pixels with rho <= 1, dA = 1 / radius^2.
std::complex<double> zernike_moment(const BinaryRoi& roi, const DiskMapping& map,
                                    ZernikeIndex idx);

// Magnitudes of all 25 canonical moments, single pass over the pixels.
ZernikeFeatures zernike_feature_set(const BinaryRoi& roi);

}  // namespace flowsig
