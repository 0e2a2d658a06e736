#include "support/fixtures.hpp"

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "flowsig/errors.hpp"

namespace flowsig::testing {

BinaryRoi make_solid_rect(int width, int height) {
    BinaryRoi roi;
    roi.width = width;
    roi.height = height;
    roi.bits.assign(static_cast<std::size_t>(width) * height, 1);
    roi.polygon_count = 1;
    return roi;
}

BinaryRoi make_solid_disk(int radius) {
    const int side = 2 * radius + 1;
    BinaryRoi roi;
    roi.width = side;
    roi.height = side;
    roi.bits.assign(static_cast<std::size_t>(side) * side, 0);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            const int dx = x - radius, dy = y - radius;
            if (dx * dx + dy * dy <= radius * radius) {
                roi.bits[static_cast<std::size_t>(y) * side + x] = 1;
            }
        }
    }
    roi.polygon_count = 1;
    return roi;
}

BinaryRoi make_plus_sign(int size, int arm) {
    BinaryRoi roi;
    roi.width = size;
    roi.height = size;
    roi.bits.assign(static_cast<std::size_t>(size) * size, 0);
    const int lo = (size - arm) / 2;
    const int hi = lo + arm - 1;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            if ((y >= lo && y <= hi) || (x >= lo && x <= hi)) {
                roi.bits[static_cast<std::size_t>(y) * size + x] = 1;
            }
        }
    }
    roi.polygon_count = 1;
    return roi;
}

BinaryMask random_mask(SplitMix64& rng, int width, int height, double density) {
    BinaryMask mask(width, height);
    const std::uint64_t threshold = static_cast<std::uint64_t>(density * 1000.0);
    for (auto& b : mask.bits) b = rng.below(1000) < threshold ? 1 : 0;
    return mask;
}

BinaryRoi rotate_exact(const BinaryRoi& roi, int quarter_turns) {
    const int q = ((quarter_turns % 4) + 4) % 4;
    if (q == 0) return roi;
    BinaryRoi out;
    const bool swap = q % 2 == 1;
    out.width = swap ? roi.height : roi.width;
    out.height = swap ? roi.width : roi.height;
    out.bits.assign(roi.bits.size(), 0);
    out.polygon_count = roi.polygon_count;
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (!roi.get(x, y)) continue;
            int nx, ny;
            switch (q) {
                case 1:  // 90 degrees clockwise
                    nx = roi.height - 1 - y;
                    ny = x;
                    break;
                case 2:
                    nx = roi.width - 1 - x;
                    ny = roi.height - 1 - y;
                    break;
                default:  // 270
                    nx = y;
                    ny = roi.width - 1 - x;
                    break;
            }
            out.bits[static_cast<std::size_t>(ny) * out.width + nx] = 1;
        }
    }
    return out;
}

BinaryRoi rotate_resampled(const BinaryRoi& roi, double angle_deg) {
    const double rad = angle_deg * 3.14159265358979323846 / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);

    // Rotate about the foreground centroid into a canvas big enough for any
    // angle, then crop tight again.
    double cx = 0, cy = 0;
    long count = 0;
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (roi.get(x, y)) {
                cx += x;
                cy += y;
                ++count;
            }
        }
    }
    cx /= static_cast<double>(count);
    cy /= static_cast<double>(count);

    // Canvas must hold the farthest pixel swung around the centroid.
    double max_d = 1.0;
    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (roi.get(x, y)) max_d = std::max(max_d, std::hypot(x - cx, y - cy));
        }
    }
    const int diag = 2 * (static_cast<int>(std::ceil(max_d)) + 3);
    BinaryMask canvas(diag, diag);
    const double ox = diag / 2.0, oy = diag / 2.0;
    // Inverse map with 3x3 subpixel majority vote.
    const double sub[3] = {-1.0 / 3.0, 0.0, 1.0 / 3.0};
    for (int y = 0; y < diag; ++y) {
        for (int x = 0; x < diag; ++x) {
            int votes = 0;
            for (double fy : sub) {
                for (double fx : sub) {
                    const double tx = x + fx - ox, ty = y + fy - oy;
                    const double sx = c * tx + s * ty + cx;
                    const double sy = -s * tx + c * ty + cy;
                    const int ix = static_cast<int>(std::lround(sx));
                    const int iy = static_cast<int>(std::lround(sy));
                    if (ix >= 0 && ix < roi.width && iy >= 0 && iy < roi.height &&
                        roi.get(ix, iy)) {
                        ++votes;
                    }
                }
            }
            if (votes >= 5) canvas.set(x, y);
        }
    }
    SegmentationConfig cfg;
    cfg.min_component_area = 1;
    return extract_roi(canvas, cfg);
}

RgbFrame render_frame(const BinaryRoi& roi, ColorChannel channel, int pad,
                      std::uint64_t speckle_seed) {
    const int w = roi.width + 2 * pad;
    const int h = roi.height + 2 * pad;
    RgbFrame frame(w, h);
    const Rgb background{24, 24, 28};
    const Rgb overlay = channel == ColorChannel::Blue ? Rgb{20, 40, 230} : Rgb{230, 40, 20};
    for (auto& px : frame.pixels) px = background;

    if (speckle_seed != 0) {
        SplitMix64 rng(speckle_seed);
        // Unsaturated speckle everywhere; the saturation gate must reject it.
        const int speckles = w * h / 40;
        for (int i = 0; i < speckles; ++i) {
            const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(w)));
            const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(h)));
            const std::uint8_t g = static_cast<std::uint8_t>(60 + rng.below(120));
            frame.at(x, y) = Rgb{g, g, g};
        }
        // A few tiny saturated specks below the component area filter.
        for (int i = 0; i < 3; ++i) {
            const int x =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, w - 2))));
            const int y =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, h - 2))));
            frame.at(x, y) = overlay;
            frame.at(x + 1, y) = overlay;
        }
    }

    for (int y = 0; y < roi.height; ++y) {
        for (int x = 0; x < roi.width; ++x) {
            if (roi.get(x, y)) frame.at(x + pad, y + pad) = overlay;
        }
    }
    return frame;
}

TempDir::TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("flowsig_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace flowsig::testing
