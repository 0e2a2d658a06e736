#include "flowsig/synthgen.hpp"

#include <cmath>
#include <cstdlib>

#include "flowsig/errors.hpp"
#include "flowsig/imaging.hpp"
#include "flowsig/rng.hpp"

namespace flowsig {

namespace {

// Q14 sine, integer degrees 0..90. Trig through this table keeps the whole
// rasterizer in integer arithmetic, so identical seeds give identical bits
// on every platform.
constexpr int kQ14 = 14;
constexpr std::int64_t kQ14One = 1 << kQ14;
constexpr std::int64_t kSinQ14[91] = {
    0, 286, 572, 857, 1143, 1428, 1713, 1997, 2280, 2563,
    2845, 3126, 3406, 3686, 3964, 4240, 4516, 4790, 5063, 5334,
    5604, 5872, 6138, 6402, 6664, 6924, 7182, 7438, 7692, 7943,
    8192, 8438, 8682, 8923, 9162, 9397, 9630, 9860, 10087, 10311,
    10531, 10749, 10963, 11174, 11381, 11585, 11786, 11982, 12176, 12365,
    12551, 12733, 12911, 13085, 13255, 13421, 13583, 13741, 13894, 14044,
    14189, 14330, 14466, 14598, 14726, 14849, 14968, 15082, 15191, 15296,
    15396, 15491, 15582, 15668, 15749, 15826, 15897, 15964, 16026, 16083,
    16135, 16182, 16225, 16262, 16294, 16322, 16344, 16362, 16374, 16382,
    16384,
};

int norm_deg(int deg) {
    deg %= 360;
    return deg < 0 ? deg + 360 : deg;
}

std::int64_t sin_q14(int deg) {
    deg = norm_deg(deg);
    if (deg <= 90) return kSinQ14[deg];
    if (deg <= 180) return kSinQ14[180 - deg];
    if (deg <= 270) return -kSinQ14[deg - 180];
    return -kSinQ14[360 - deg];
}

std::int64_t cos_q14(int deg) { return sin_q14(deg + 90); }

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;
};

int round_q14(std::int64_t v) {
    const std::int64_t half = kQ14One / 2;
    return static_cast<int>((v + (v >= 0 ? half : -half)) / kQ14One);
}

Point offset_along(Point base, int deg, std::int64_t len) {
    return Point{base.x + round_q14(len * cos_q14(deg)),
                 base.y + round_q14(len * sin_q14(deg))};
}

int clamp_coord(std::int64_t v, int lo, int hi) {
    if (v < lo) return lo;
    if (v > hi) return hi;
    return static_cast<int>(v);
}

// Thick segment: pixels whose center lies within stroke/2 of AB. All
// comparisons are exact (squared distances scaled by 4).
void draw_segment(BinaryMask& mask, Point a, Point b, int stroke) {
    const std::int64_t w2 = static_cast<std::int64_t>(stroke) * stroke;
    const std::int64_t abx = b.x - a.x, aby = b.y - a.y;
    const std::int64_t t_den = abx * abx + aby * aby;
    const int pad = stroke / 2 + 1;
    const int x0 = clamp_coord(std::min(a.x, b.x) - pad, 0, mask.width - 1);
    const int x1 = clamp_coord(std::max(a.x, b.x) + pad, 0, mask.width - 1);
    const int y0 = clamp_coord(std::min(a.y, b.y) - pad, 0, mask.height - 1);
    const int y1 = clamp_coord(std::max(a.y, b.y) + pad, 0, mask.height - 1);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const std::int64_t pax = x - a.x, pay = y - a.y;
            const std::int64_t pa2 = pax * pax + pay * pay;
            bool inside;
            if (t_den == 0) {
                inside = 4 * pa2 <= w2;
            } else {
                const std::int64_t t_num = pax * abx + pay * aby;
                if (t_num <= 0) {
                    inside = 4 * pa2 <= w2;
                } else if (t_num >= t_den) {
                    const std::int64_t pbx = x - b.x, pby = y - b.y;
                    inside = 4 * (pbx * pbx + pby * pby) <= w2;
                } else {
                    inside = 4 * (pa2 * t_den - t_num * t_num) <= w2 * t_den;
                }
            }
            if (inside) mask.set(x, y);
        }
    }
}

// Filled rotated ellipse with integer semi-axes.
void draw_ellipse(BinaryMask& mask, Point c, int a, int b, int theta_deg) {
    const std::int64_t cq = cos_q14(theta_deg);
    const std::int64_t sq = sin_q14(theta_deg);
    const int r = std::max(a, b) + 1;
    const int x0 = clamp_coord(c.x - r, 0, mask.width - 1);
    const int x1 = clamp_coord(c.x + r, 0, mask.width - 1);
    const int y0 = clamp_coord(c.y - r, 0, mask.height - 1);
    const int y1 = clamp_coord(c.y + r, 0, mask.height - 1);
    const __int128 a2 = static_cast<std::int64_t>(a) * a;
    const __int128 b2 = static_cast<std::int64_t>(b) * b;
    const __int128 rhs = a2 * b2 << (2 * kQ14);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const std::int64_t dx = x - c.x, dy = y - c.y;
            const std::int64_t u = dx * cq + dy * sq;
            const std::int64_t v = -dx * sq + dy * cq;
            const __int128 lhs = static_cast<__int128>(u) * u * b2 +
                                 static_cast<__int128>(v) * v * a2;
            if (lhs <= rhs) mask.set(x, y);
        }
    }
}

int jitter_amp(double jitter, int scale) {
    return static_cast<int>(std::floor(jitter * scale));
}

int draw_jitter(SplitMix64& rng, int amp) {
    return amp > 0 ? rng.range(-amp, amp) : 0;
}

BinaryMask raster_attempt(const ShapeSpec& spec, SplitMix64& rng) {
    const int n = spec.canvas;
    const int w = spec.stroke;
    const int margin = w / 2 + 1;
    const int beta = norm_deg(spec.angle_deg);
    BinaryMask mask(n, n);
    const Point center{n / 2, n / 2};

    switch (spec.kind) {
        case ShapeKind::V: {
            const int leg = std::max(24, 2 * n / 5);
            const int amp = jitter_amp(spec.jitter, leg);
            const Point vertex = clamp_point(
                Point{center.x + rng.range(-n / 8, n / 8),
                      center.y + rng.range(-n / 8, n / 8)},
                margin, n);
            const int opening = rng.range(40, 100);
            const int d1 = beta - opening / 2;
            const int d2 = d1 + opening;
            for (int d : {d1, d2}) {
                Point tip = offset_along(vertex, d, leg);
                tip.x += draw_jitter(rng, amp);
                tip.y += draw_jitter(rng, amp);
                draw_segment(mask, vertex, clamp_point(tip, margin, n), w);
            }
            break;
        }
        case ShapeKind::X: {
            const int half = std::max(14, 3 * n / 10);
            const int amp = jitter_amp(spec.jitter, half);
            // Perpendicular drift small enough that both strokes still cover
            // the crossing point.
            const int perp_cap = std::max(0, w / 2 - 1);
            const Point cross = clamp_point(
                Point{center.x + rng.range(-n / 8, n / 8),
                      center.y + rng.range(-n / 8, n / 8)},
                margin, n);
            const int d1 = beta + rng.range(-15, 15);
            const int d2 = d1 + rng.range(50, 130);
            for (int d : {d1, d2}) {
                const int la = half + draw_jitter(rng, amp);
                const int lb = half + draw_jitter(rng, amp);
                const int drift = draw_jitter(rng, std::min(perp_cap, amp));
                const Point shifted = offset_along(cross, d + 90, drift);
                const Point a = clamp_point(offset_along(shifted, d, -la), margin, n);
                const Point b = clamp_point(offset_along(shifted, d, lb), margin, n);
                draw_segment(mask, a, b, w);
            }
            break;
        }
        case ShapeKind::Parallel: {
            const int len = std::max(20, n / 2);
            const int amp = jitter_amp(spec.jitter, len);
            // Separation floor 2*stroke + 4 leaves >= 2*stroke + 2 after the
            // two centers round to the pixel grid.
            const int sep = 2 * w + 4 + static_cast<int>(rng.below(std::max(1, n / 6)));
            const int d = beta;
            const Point base{center.x + rng.range(-n / 10, n / 10),
                             center.y + rng.range(-n / 10, n / 10)};
            for (int side : {-1, 1}) {
                const Point line_center = offset_along(base, d + 90, side * sep / 2);
                const int slide = rng.range(-n / 8, n / 8);
                const int l = len + draw_jitter(rng, amp);
                const Point a =
                    clamp_point(offset_along(line_center, d, slide - l / 2), margin, n);
                const Point b =
                    clamp_point(offset_along(line_center, d, slide + l / 2), margin, n);
                draw_segment(mask, a, b, w);
            }
            break;
        }
        case ShapeKind::OtherBlob: {
            const int blobs = 1 + static_cast<int>(rng.below(4));
            for (int i = 0; i < blobs; ++i) {
                const int a = rng.range(std::max(4, n / 12), std::max(6, n / 5));
                const int b = rng.range(3, std::max(4, n / 8));
                const int theta = rng.range(0, 179);
                const int rm = std::max(a, b) + 1;
                const Point c{rng.range(rm, n - 1 - rm), rng.range(rm, n - 1 - rm)};
                draw_ellipse(mask, c, a, b, theta);
            }
            break;
        }
        case ShapeKind::OtherLine: {
            const int len = std::max(24, 3 * n / 5);
            const int amp = jitter_amp(spec.jitter, len);
            const Point c{center.x + rng.range(-n / 8, n / 8),
                          center.y + rng.range(-n / 8, n / 8)};
            Point a = offset_along(c, beta, -len / 2);
            Point b = offset_along(c, beta, len / 2);
            a.x += draw_jitter(rng, amp);
            a.y += draw_jitter(rng, amp);
            b.x += draw_jitter(rng, amp);
            b.y += draw_jitter(rng, amp);
            draw_segment(mask, clamp_point(a, margin, n), clamp_point(b, margin, n), w);
            break;
        }
    }
    return mask;
}

bool kind_invariant_holds(ShapeKind kind, const BinaryRoi& roi) {
    switch (kind) {
        case ShapeKind::V:
        case ShapeKind::X:
        case ShapeKind::OtherLine:
            return roi.polygon_count == 1;
        case ShapeKind::Parallel:
            return roi.polygon_count == 2;
        case ShapeKind::OtherBlob:
            return roi.polygon_count >= 1;
    }
    return false;
}

void validate_spec(const ShapeSpec& spec) {
    if (spec.canvas < 32 || spec.canvas > 1024) {
        throw DegenerateSpecError("canvas must be in [32, 1024], got " +
                                  std::to_string(spec.canvas));
    }
    if (spec.stroke < 1 || spec.stroke > spec.canvas / 2) {
        throw DegenerateSpecError("stroke must be in [1, canvas/2], got " +
                                  std::to_string(spec.stroke));
    }
    if (!(spec.jitter >= 0.0 && spec.jitter <= 0.3)) {
        throw DegenerateSpecError("jitter must be in [0, 0.3]");
    }
}

ShapeKind kind_for_label(ClassLabel label, SplitMix64& rng) {
    switch (label) {
        case ClassLabel::V: return ShapeKind::V;
        case ClassLabel::X: return ShapeKind::X;
        case ClassLabel::Parallel: return ShapeKind::Parallel;
        case ClassLabel::Other:
            return rng.below(2) == 0 ? ShapeKind::OtherBlob : ShapeKind::OtherLine;
    }
    return ShapeKind::OtherBlob;
}

}  // namespace

BinaryRoi generate(const ShapeSpec& spec) {
    validate_spec(spec);
    SegmentationConfig cfg;  // min_component_area 20, the generator's fitness floor
    SplitMix64 rng(spec.seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const BinaryMask mask = raster_attempt(spec, rng);
        auto roi = try_extract_roi(mask, cfg);
        if (roi && kind_invariant_holds(spec.kind, *roi)) return std::move(*roi);
    }
    throw DegenerateSpecError("shape generation failed 8 resampling attempts");
}

std::vector<SynthSample> generate_corpus(const std::map<ClassLabel, int>& counts,
                                         Problem problem, std::uint64_t master_seed) {
    for (const auto& [label, count] : counts) {
        if (!label_valid_for(problem, label)) {
            throw InvalidLabelError("count given for label " + std::string(to_string(label)) +
                                    ", invalid for problem " +
                                    std::string(to_string(problem)));
        }
        if (count < 0) throw DegenerateSpecError("negative sample count");
    }

    std::vector<SynthSample> out;
    for (ClassLabel label : problem_labels(problem)) {
        const auto it = counts.find(label);
        if (it == counts.end()) continue;
        for (int index = 0; index < it->second; ++index) {
            const std::string label_name(to_string(label));
            SplitMix64 rng(derive_seed(master_seed, label_name, static_cast<std::uint64_t>(index)));
            ShapeSpec spec;
            spec.kind = kind_for_label(label, rng);
            spec.canvas = 96;
            spec.stroke = 5 + static_cast<int>(rng.below(4));
            spec.angle_deg = static_cast<int>(rng.below(360));
            spec.jitter = 0.15;
            spec.seed = rng.next();

            char id[64];
            std::snprintf(id, sizeof(id), "synth_%s_%03d", label_name.c_str(), index);
            try {
                BinaryRoi roi = generate(spec);
                LabeledSample sample{id, label, featurize(roi)};
                out.push_back(SynthSample{std::move(sample), std::move(roi)});
            } catch (const DegenerateSpecError& e) {
                throw DegenerateSpecError(std::string(id) + ": " + e.what());
            }
        }
    }
    return out;
}

std::vector<LabeledSample> generate_dataset(const std::map<ClassLabel, int>& counts,
                                            Problem problem, std::uint64_t master_seed) {
    std::vector<SynthSample> corpus = generate_corpus(counts, problem, master_seed);
    std::vector<LabeledSample> samples;
    samples.reserve(corpus.size());
    for (SynthSample& s : corpus) samples.push_back(std::move(s.sample));
    return samples;
}

}  // namespace flowsig
