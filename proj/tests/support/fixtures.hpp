#pragma once

// Shared fixture builders for the unit and acceptance suites: canned ROIs,
// raster rotations, colored frame rendering, random masks, temp dirs.

#include <filesystem>
#include <string>

#include "flowsig/image.hpp"
#include "flowsig/imaging.hpp"
#include "flowsig/rng.hpp"

namespace flowsig::testing {

BinaryRoi make_solid_rect(int width, int height);
BinaryRoi make_solid_disk(int radius);          // (2r+1)^2 canvas
BinaryRoi make_plus_sign(int size, int arm);    // centered cross, arm = stroke width

BinaryMask random_mask(SplitMix64& rng, int width, int height, double density);

// Exact lossless rotation by quarter turns (1 = 90 degrees clockwise).
BinaryRoi rotate_exact(const BinaryRoi& roi, int quarter_turns);

// Nearest-neighbor resampled rotation about the foreground centroid,
// re-cropped tight. Lossy; for invariance-with-tolerance checks.
BinaryRoi rotate_resampled(const BinaryRoi& roi, double angle_deg);

// Embeds the ROI into a dark frame as a saturated blue or red overlay.
// speckle_seed != 0 adds unsaturated speckle plus tiny colored specks below
// the area filter; 0 renders a clean frame.
RgbFrame render_frame(const BinaryRoi& roi, ColorChannel channel, int pad,
                      std::uint64_t speckle_seed);

// RAII temp directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& path);

}  // namespace flowsig::testing
