#include "flowsig/zernike.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "flowsig/errors.hpp"

namespace flowsig {

namespace {

constexpr std::array<ZernikeIndex, kZernikeFeatureCount> kCanonicalIndices = {{
    {0, 0},
    {1, 1},
    {2, 0}, {2, 2},
    {3, 1}, {3, 3},
    {4, 0}, {4, 2}, {4, 4},
    {5, 1}, {5, 3}, {5, 5},
    {6, 0}, {6, 2}, {6, 4}, {6, 6},
    {7, 1}, {7, 3}, {7, 5}, {7, 7},
    {8, 0}, {8, 2}, {8, 4}, {8, 6}, {8, 8},
}};

constexpr std::int64_t factorial(int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

bool index_valid(int n, int m) {
    return n >= 0 && m >= 0 && m <= n && (n - m) % 2 == 0;
}

// Integer radial coefficients, cached per canonical index. For each s the
// term is (-1)^s (n-s)! / (s! ((n+m)/2-s)! ((n-m)/2-s)!) * rho^(n-2s).
struct RadialCoefficients {
    int m = 0;
    // coeff[k] multiplies rho^(m + 2k), k = 0 .. (n-m)/2.
    std::vector<double> coeff;
};

RadialCoefficients build_coefficients(int n, int m) {
    RadialCoefficients rc;
    rc.m = m;
    const int terms = (n - m) / 2 + 1;
    rc.coeff.assign(static_cast<std::size_t>(terms), 0.0);
    for (int s = 0; s < terms; ++s) {
        const std::int64_t num = factorial(n - s);
        const std::int64_t den =
            factorial(s) * factorial((n + m) / 2 - s) * factorial((n - m) / 2 - s);
        const std::int64_t c = (s % 2 == 0 ? 1 : -1) * (num / den);
        // rho^(n-2s) = rho^(m + 2((n-m)/2 - s))
        rc.coeff[static_cast<std::size_t>((n - m) / 2 - s)] = static_cast<double>(c);
    }
    return rc;
}

const RadialCoefficients& cached_coefficients(int n, int m) {
    // Index into a triangular table over the canonical set.
    static const auto table = [] {
        std::array<RadialCoefficients, kZernikeFeatureCount> t;
        for (std::size_t k = 0; k < kCanonicalIndices.size(); ++k) {
            t[k] = build_coefficients(kCanonicalIndices[k].n, kCanonicalIndices[k].m);
        }
        return t;
    }();
    for (std::size_t k = 0; k < kCanonicalIndices.size(); ++k) {
        if (kCanonicalIndices[k].n == n && kCanonicalIndices[k].m == m) return table[k];
    }
    static thread_local RadialCoefficients scratch;
    scratch = build_coefficients(n, m);
    return scratch;
}

double eval_radial(const RadialCoefficients& rc, double rho) {
    const double rho2 = rho * rho;
    double poly = 0.0;
    for (std::size_t k = rc.coeff.size(); k-- > 0;) {
        poly = poly * rho2 + rc.coeff[k];
    }
    double rho_m = 1.0;
    for (int p = 0; p < rc.m; ++p) rho_m *= rho;
    return poly * rho_m;
}

}  // namespace

std::span<const ZernikeIndex, kZernikeFeatureCount> canonical_index_set() {
    return kCanonicalIndices;
}

double radial_polynomial(int n, int m, double rho) {
    if (!index_valid(n, m)) {
        throw InvalidIndexError("invalid Zernike index n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
    }
    return eval_radial(cached_coefficients(n, m), rho);
}

DiskMapping disk_mapping(const BinaryRoi& roi) {
    double sum_x = 0.0, sum_y = 0.0;
    std::int64_t count = 0;
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (roi.get(x, y)) {
                sum_x += x;
                sum_y += y;
                ++count;
            }
        }
    }
    DiskMapping map;
    map.cx = sum_x / static_cast<double>(count);
    map.cy = sum_y / static_cast<double>(count);
    double max_d2 = 0.0;
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (!roi.get(x, y)) continue;
            const double dx = x - map.cx;
            const double dy = y - map.cy;
            max_d2 = std::max(max_d2, dx * dx + dy * dy);
        }
    }
    map.radius = std::max(1.0, std::sqrt(max_d2));
    return map;
}

std::complex<double> zernike_moment(const BinaryRoi& roi, const DiskMapping& map,
                                    ZernikeIndex idx) {
    if (!index_valid(idx.n, idx.m)) {
        throw InvalidIndexError("invalid Zernike index n=" + std::to_string(idx.n) +
                                " m=" + std::to_string(idx.m));
    }
    const RadialCoefficients& rc = cached_coefficients(idx.n, idx.m);
    std::complex<double> sum = 0.0;
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (!roi.get(x, y)) continue;
            const double dx = x - map.cx;
            const double dy = y - map.cy;
            const double rho = std::sqrt(dx * dx + dy * dy) / map.radius;
            if (rho > 1.0) continue;
            const double theta = std::atan2(dy, dx);
            const double radial = eval_radial(rc, rho);
            const double angle = -idx.m * theta;
            sum += radial * std::complex<double>(std::cos(angle), std::sin(angle));
        }
    }
    const double scale = (idx.n + 1) / (std::numbers::pi * map.radius * map.radius);
    return sum * scale;
}

ZernikeFeatures zernike_feature_set(const BinaryRoi& roi) {
    const DiskMapping map = disk_mapping(roi);

    // Single pass: per pixel share rho powers and the e^{-i m theta} ladder
    // across all 25 indices.
    std::array<std::complex<double>, kZernikeFeatureCount> sums{};
    std::array<const RadialCoefficients*, kZernikeFeatureCount> coeffs{};
    for (std::size_t k = 0; k < kCanonicalIndices.size(); ++k) {
        coeffs[k] = &cached_coefficients(kCanonicalIndices[k].n, kCanonicalIndices[k].m);
    }

    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (!roi.get(x, y)) continue;
            const double dx = x - map.cx;
            const double dy = y - map.cy;
            const double rho = std::sqrt(dx * dx + dy * dy) / map.radius;
            if (rho > 1.0) continue;
            const double theta = std::atan2(dy, dx);

            double rho_pow[kZernikeMaxOrder + 1];
            rho_pow[0] = 1.0;
            for (int p = 1; p <= kZernikeMaxOrder; ++p) rho_pow[p] = rho_pow[p - 1] * rho;

            const std::complex<double> step(std::cos(theta), -std::sin(theta));
            std::complex<double> phase[kZernikeMaxOrder + 1];
            phase[0] = 1.0;
            for (int p = 1; p <= kZernikeMaxOrder; ++p) phase[p] = phase[p - 1] * step;

            for (std::size_t k = 0; k < kCanonicalIndices.size(); ++k) {
                const RadialCoefficients& rc = *coeffs[k];
                const double rho2 = rho * rho;
                double poly = 0.0;
                for (std::size_t c = rc.coeff.size(); c-- > 0;) {
                    poly = poly * rho2 + rc.coeff[c];
                }
                const double radial = poly * rho_pow[rc.m];
                sums[k] += radial * phase[kCanonicalIndices[k].m];
            }
        }
    }

    ZernikeFeatures out{};
    const double inv_area = 1.0 / (std::numbers::pi * map.radius * map.radius);
    for (std::size_t k = 0; k < kCanonicalIndices.size(); ++k) {
        out[k] = std::abs(sums[k]) * (kCanonicalIndices[k].n + 1) * inv_area;
    }
    return out;
}

}  // namespace flowsig
