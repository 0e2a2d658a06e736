#pragma once

#include <optional>
#include <vector>

#include "flowsig/image.hpp"

namespace flowsig {

enum class ColorChannel { Blue, Red };

struct Hsv {
    double h = 0.0;  // degrees, [0, 360)
    double s = 0.0;  // [0, 1]
    double v = 0.0;  // [0, 1]
};

// Inclusive hue interval in degrees; lo > hi means the range wraps through 0
// (the red Doppler overlay straddles 0 degrees).
struct HueRange {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double hue) const {
        if (lo <= hi) return hue >= lo && hue <= hi;
        return hue >= lo || hue <= hi;
    }
};

struct SegmentationConfig {
    HueRange blue_hue{190.0, 260.0};
    HueRange red_hue{330.0, 25.0};
    double sat_min = 0.35;
    double val_min = 0.25;
    int open_radius = 1;
    int min_component_area = 20;

    const HueRange& hue_range(ColorChannel channel) const {
        return channel == ColorChannel::Blue ? blue_hue : red_hue;
    }
};

// One 8-connected foreground component; ids follow raster discovery order.
struct Component {
    int id = 0;
    int pixel_count = 0;
    int min_x = 0;
    int min_y = 0;
    int max_x = 0;  // inclusive
    int max_y = 0;  // inclusive

    bool operator==(const Component&) const = default;
};

// Standard RGB -> HSV. Achromatic input yields h = 0, s = 0.
Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Foreground = pixels whose hue falls in the channel's range and whose
// saturation/value clear the config minima.
BinaryMask color_mask(const RgbFrame& frame, ColorChannel channel,
                      const SegmentationConfig& cfg);

// Erosion then dilation with a square structuring element of side
// 2*radius + 1. Pixels outside the image count as background.
BinaryMask morphological_open(const BinaryMask& mask, int radius);

// 8-connected components in raster discovery order.
std::vector<Component> connected_components(const BinaryMask& mask);

// Drops components below cfg.min_component_area and crops to the tight
// bounding box of the survivors. Empty result -> nullopt.
std::optional<BinaryRoi> try_extract_roi(const BinaryMask& mask,
                                         const SegmentationConfig& cfg);

// Throwing variant of try_extract_roi (NoForegroundError when nothing
// survives the area filter).
BinaryRoi extract_roi(const BinaryMask& mask, const SegmentationConfig& cfg);

// Full per-frame segmentation: color mask, opening, ROI crop.
std::optional<BinaryRoi> segment_frame(const RgbFrame& frame, ColorChannel channel,
                                       const SegmentationConfig& cfg);

}  // namespace flowsig
