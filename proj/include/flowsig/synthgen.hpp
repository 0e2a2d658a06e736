#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "flowsig/classifier.hpp"
#include "flowsig/features.hpp"
#include "flowsig/image.hpp"

namespace flowsig {

enum class ShapeKind { V, X, Parallel, OtherBlob, OtherLine };

// Deterministic shape recipe. Identical spec (seed included) yields a
// bit-identical ROI; all raster math is integer so outputs are platform
// independent.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::V;
    int canvas = 96;        // square side, >= 32
    int stroke = 6;         // thickness in pixels, >= 1
    int angle_deg = 0;      // global rotation
    double jitter = 0.15;   // endpoint perturbation fraction, [0, 0.3]
    std::uint64_t seed = 0;
};

// Rasterizes the shape and crops it through the ROI semantics (area filter
// at 20 px, tight crop). Resamples internally up to 8 times before giving
// up with DegenerateSpecError.
BinaryRoi generate(const ShapeSpec& spec);

// Featurized corpus with per-sample seeds split off the master seed; ids are
// synth_<label>_<index>.
std::vector<LabeledSample> generate_dataset(const std::map<ClassLabel, int>& counts,
                                            Problem problem, std::uint64_t master_seed);

// The generated ROIs in the same order as generate_dataset's samples, for
// callers that also persist the rasters.
struct SynthSample {
    LabeledSample sample;
    BinaryRoi roi;
};
std::vector<SynthSample> generate_corpus(const std::map<ClassLabel, int>& counts,
                                         Problem problem, std::uint64_t master_seed);

}  // namespace flowsig
