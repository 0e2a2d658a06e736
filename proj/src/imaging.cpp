#include "flowsig/imaging.hpp"

#include <algorithm>

#include "flowsig/errors.hpp"

namespace flowsig {

Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    const double r = r8 / 255.0;
    const double g = g8 / 255.0;
    const double b = b8 / 255.0;
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double delta = hi - lo;

    Hsv out;
    out.v = hi;
    out.s = hi > 0.0 ? delta / hi : 0.0;
    if (delta > 0.0) {
        double h;
        if (hi == r) {
            h = 60.0 * ((g - b) / delta);
        } else if (hi == g) {
            h = 60.0 * ((b - r) / delta) + 120.0;
        } else {
            h = 60.0 * ((r - g) / delta) + 240.0;
        }
        if (h < 0.0) h += 360.0;
        if (h >= 360.0) h -= 360.0;
        out.h = h;
    }
    return out;
}

BinaryMask color_mask(const RgbFrame& frame, ColorChannel channel,
                      const SegmentationConfig& cfg) {
    const HueRange& range = cfg.hue_range(channel);
    BinaryMask mask(frame.width, frame.height);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        const Rgb& px = frame.pixels[i];
        const Hsv hsv = rgb_to_hsv(px.r, px.g, px.b);
        if (hsv.s >= cfg.sat_min && hsv.v >= cfg.val_min && range.contains(hsv.h)) {
            mask.bits[i] = 1;
        }
    }
    return mask;
}

namespace {

// One separable min/max sweep of the square structuring element; pixels
// outside the image count as background.
BinaryMask sweep(const BinaryMask& in, int radius, bool erode, bool horizontal) {
    BinaryMask out(in.width, in.height);
    for (int y = 0; y < in.height; ++y) {
        for (int x = 0; x < in.width; ++x) {
            bool acc = erode;
            for (int d = -radius; d <= radius; ++d) {
                const int xx = horizontal ? x + d : x;
                const int yy = horizontal ? y : y + d;
                const bool v = xx >= 0 && xx < in.width && yy >= 0 && yy < in.height &&
                               in.get(xx, yy) != 0;
                if (erode) {
                    if (!v) {
                        acc = false;
                        break;
                    }
                } else if (v) {
                    acc = true;
                    break;
                }
            }
            out.set(x, y, acc);
        }
    }
    return out;
}

// Union-find labeling, ids densified by first raster encounter. Fills
// `owner` with the component id per pixel (-1 for background).
std::vector<Component> label_components(const BinaryMask& mask, std::vector<int>& owner) {
    const int w = mask.width;
    const int h = mask.height;
    std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
    std::vector<int> parent;
    auto find = [&parent](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!mask.bits[i]) continue;
            // Previously scanned 8-neighbors: W, NW, N, NE.
            const int nx[4] = {x - 1, x - 1, x, x + 1};
            const int ny[4] = {y, y - 1, y - 1, y - 1};
            int best = -1;
            int neigh[4];
            int n_neigh = 0;
            for (int k = 0; k < 4; ++k) {
                if (nx[k] < 0 || nx[k] >= w || ny[k] < 0) continue;
                const int l = label[static_cast<std::size_t>(ny[k]) * w + nx[k]];
                if (l >= 0) {
                    neigh[n_neigh++] = l;
                    if (best < 0 || l < best) best = l;
                }
            }
            if (best < 0) {
                const int fresh = static_cast<int>(parent.size());
                parent.push_back(fresh);
                label[i] = fresh;
            } else {
                label[i] = best;
                for (int k = 0; k < n_neigh; ++k) {
                    const int a = find(best);
                    const int b = find(neigh[k]);
                    if (a != b) parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }

    owner.assign(label.size(), -1);
    std::vector<int> root_to_id(parent.size(), -1);
    std::vector<Component> components;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (label[i] < 0) continue;
            const int root = find(label[i]);
            int id = root_to_id[root];
            if (id < 0) {
                id = static_cast<int>(components.size());
                root_to_id[root] = id;
                components.push_back(Component{id, 0, x, y, x, y});
            }
            owner[i] = id;
            Component& c = components[static_cast<std::size_t>(id)];
            c.pixel_count += 1;
            c.min_x = std::min(c.min_x, x);
            c.min_y = std::min(c.min_y, y);
            c.max_x = std::max(c.max_x, x);
            c.max_y = std::max(c.max_y, y);
        }
    }
    return components;
}

}  // namespace

BinaryMask morphological_open(const BinaryMask& mask, int radius) {
    if (radius <= 0) return mask;
    const BinaryMask eroded = sweep(sweep(mask, radius, true, true), radius, true, false);
    return sweep(sweep(eroded, radius, false, true), radius, false, false);
}

std::vector<Component> connected_components(const BinaryMask& mask) {
    std::vector<int> owner;
    return label_components(mask, owner);
}

std::optional<BinaryRoi> try_extract_roi(const BinaryMask& mask,
                                         const SegmentationConfig& cfg) {
    std::vector<int> owner;
    const std::vector<Component> components = label_components(mask, owner);

    std::vector<bool> survives(components.size(), false);
    int min_x = mask.width, min_y = mask.height, max_x = -1, max_y = -1;
    int survivor_count = 0;
    for (const Component& c : components) {
        if (c.pixel_count >= cfg.min_component_area) {
            survives[static_cast<std::size_t>(c.id)] = true;
            ++survivor_count;
            min_x = std::min(min_x, c.min_x);
            min_y = std::min(min_y, c.min_y);
            max_x = std::max(max_x, c.max_x);
            max_y = std::max(max_y, c.max_y);
        }
    }
    if (survivor_count == 0) return std::nullopt;

    BinaryRoi roi;
    roi.width = max_x - min_x + 1;
    roi.height = max_y - min_y + 1;
    roi.bits.assign(static_cast<std::size_t>(roi.width) * roi.height, 0);
    roi.polygon_count = survivor_count;
    for (int y = min_y; y <= max_y; ++y) {
        for (int x = min_x; x <= max_x; ++x) {
            const int id = owner[static_cast<std::size_t>(y) * mask.width + x];
            if (id >= 0 && survives[static_cast<std::size_t>(id)]) {
                roi.bits[static_cast<std::size_t>(y - min_y) * roi.width + (x - min_x)] = 1;
            }
        }
    }
    return roi;
}

BinaryRoi extract_roi(const BinaryMask& mask, const SegmentationConfig& cfg) {
    auto roi = try_extract_roi(mask, cfg);
    if (!roi) {
        throw NoForegroundError("no component reaches min_component_area " +
                                std::to_string(cfg.min_component_area));
    }
    return std::move(*roi);
}

std::optional<BinaryRoi> segment_frame(const RgbFrame& frame, ColorChannel channel,
                                       const SegmentationConfig& cfg) {
    BinaryMask mask = color_mask(frame, channel, cfg);
    mask = morphological_open(mask, cfg.open_radius);
    return try_extract_roi(mask, cfg);
}

}  // namespace flowsig
