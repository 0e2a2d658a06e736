#include <doctest.h>

#include "flowsig/errors.hpp"
#include "flowsig/imaging.hpp"
#include "flowsig/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace flowsig;

namespace {

RgbFrame uniform_frame(int w, int h, Rgb color) {
    RgbFrame frame(w, h);
    for (auto& px : frame.pixels) px = color;
    return frame;
}

BinaryMask mask_from_rows(const std::vector<std::string>& rows) {
    BinaryMask mask(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            mask.set(x, y, rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == '#');
        }
    }
    return mask;
}

}  // namespace

TEST_SUITE("imaging") {

TEST_CASE("rgb_to_hsv fixed points") {
    Hsv red = rgb_to_hsv(255, 0, 0);
    CHECK(red.h == doctest::Approx(0.0));
    CHECK(red.s == doctest::Approx(1.0));
    CHECK(red.v == doctest::Approx(1.0));

    Hsv blue = rgb_to_hsv(0, 0, 255);
    CHECK(blue.h == doctest::Approx(240.0));
    CHECK(blue.s == doctest::Approx(1.0));
    CHECK(blue.v == doctest::Approx(1.0));

    Hsv gray = rgb_to_hsv(128, 128, 128);
    CHECK(gray.h == 0.0);
    CHECK(gray.s == 0.0);
    CHECK(gray.v == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("rgb_to_hsv stays in range") {
    SplitMix64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Hsv hsv = rgb_to_hsv(static_cast<std::uint8_t>(rng.below(256)),
                                   static_cast<std::uint8_t>(rng.below(256)),
                                   static_cast<std::uint8_t>(rng.below(256)));
        CHECK(hsv.h >= 0.0);
        CHECK(hsv.h < 360.0);
        CHECK(hsv.s >= 0.0);
        CHECK(hsv.s <= 1.0);
        CHECK(hsv.v >= 0.0);
        CHECK(hsv.v <= 1.0);
    }
}

TEST_CASE("color_mask uniform frames") {
    SegmentationConfig cfg;
    const auto blue_frame = uniform_frame(8, 6, Rgb{0, 0, 255});
    const auto red_frame = uniform_frame(8, 6, Rgb{255, 0, 0});
    const auto gray_frame = uniform_frame(8, 6, Rgb{90, 90, 90});

    CHECK(color_mask(blue_frame, ColorChannel::Blue, cfg).foreground_count() == 48);
    CHECK(color_mask(red_frame, ColorChannel::Blue, cfg).foreground_count() == 0);
    CHECK(color_mask(red_frame, ColorChannel::Red, cfg).foreground_count() == 48);
    CHECK(color_mask(gray_frame, ColorChannel::Blue, cfg).foreground_count() == 0);
    CHECK(color_mask(gray_frame, ColorChannel::Red, cfg).foreground_count() == 0);

    const auto blue = color_mask(blue_frame, ColorChannel::Blue, cfg);
    CHECK(blue.width == 8);
    CHECK(blue.height == 6);
}

TEST_CASE("color_mask blue and red never overlap with default ranges") {
    SegmentationConfig cfg;
    SplitMix64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        RgbFrame frame(16, 16);
        for (auto& px : frame.pixels) {
            px = Rgb{static_cast<std::uint8_t>(rng.below(256)),
                     static_cast<std::uint8_t>(rng.below(256)),
                     static_cast<std::uint8_t>(rng.below(256))};
        }
        const auto blue = color_mask(frame, ColorChannel::Blue, cfg);
        const auto red = color_mask(frame, ColorChannel::Red, cfg);
        for (std::size_t i = 0; i < blue.bits.size(); ++i) {
            CHECK_FALSE((blue.bits[i] && red.bits[i]));
        }
    }
}

TEST_CASE("morphological_open radius 0 is the identity") {
    SplitMix64 rng(31);
    const auto mask = testing::random_mask(rng, 24, 16, 0.4);
    CHECK(morphological_open(mask, 0) == mask);
}

TEST_CASE("morphological_open removes isolated pixels") {
    BinaryMask mask(9, 9);
    mask.set(4, 4);
    CHECK(morphological_open(mask, 1).foreground_count() == 0);
}

TEST_CASE("morphological_open keeps a solid square") {
    BinaryMask mask(14, 14);
    for (int y = 2; y < 12; ++y)
        for (int x = 2; x < 12; ++x) mask.set(x, y);
    CHECK(morphological_open(mask, 1) == mask);
}

TEST_CASE("opening is anti-extensive") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mask = testing::random_mask(rng, 32, 32, 0.55);
        const auto opened = morphological_open(mask, 1 + static_cast<int>(rng.below(2)));
        for (std::size_t i = 0; i < mask.bits.size(); ++i) {
            if (opened.bits[i]) CHECK(mask.bits[i]);
        }
    }
}

TEST_CASE("connected_components splits distant squares") {
    const auto mask = mask_from_rows({
        "###...###",
        "###...###",
        "###...###",
    });
    const auto comps = connected_components(mask);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].pixel_count == 9);
    CHECK(comps[1].pixel_count == 9);
    CHECK(comps[0].min_x == 0);
    CHECK(comps[0].max_x == 2);
    CHECK(comps[1].min_x == 6);
    CHECK(comps[1].max_x == 8);
}

TEST_CASE("connected_components of empty mask") {
    CHECK(connected_components(BinaryMask(5, 5)).empty());
}

TEST_CASE("diagonal pixels join under 8-connectivity") {
    const auto mask = mask_from_rows({
        "#.",
        ".#",
    });
    CHECK(connected_components(mask).size() == 1);
}

TEST_CASE("components match the flood-fill oracle on random masks") {
    SplitMix64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const auto mask = testing::random_mask(rng, 32, 32, 0.45);
        const auto got = connected_components(mask);
        const auto want = oracle::flood_components(mask);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
    }
}

TEST_CASE("components partition the foreground") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mask = testing::random_mask(rng, 32, 32, 0.5);
        const auto comps = connected_components(mask);
        std::size_t covered = 0;
        for (const auto& c : comps) covered += static_cast<std::size_t>(c.pixel_count);
        CHECK(covered == mask.foreground_count());
    }
}

TEST_CASE("extract_roi crops one rectangle tight") {
    BinaryMask mask(20, 12);
    for (int y = 3; y < 8; ++y)
        for (int x = 4; x < 14; ++x) mask.set(x, y);
    SegmentationConfig cfg;
    cfg.min_component_area = 20;
    const auto roi = try_extract_roi(mask, cfg);
    REQUIRE(roi.has_value());
    CHECK(roi->width == 10);
    CHECK(roi->height == 5);
    CHECK(roi->polygon_count == 1);
}

TEST_CASE("extract_roi rejects a blob below the area floor") {
    BinaryMask mask(10, 10);
    mask.set(1, 1);
    mask.set(2, 1);
    mask.set(3, 1);
    SegmentationConfig cfg;
    cfg.min_component_area = 20;
    CHECK_FALSE(try_extract_roi(mask, cfg).has_value());
    CHECK_THROWS_AS(extract_roi(mask, cfg), NoForegroundError);
}

TEST_CASE("extract_roi bbox spans all survivors") {
    BinaryMask mask(50, 12);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            mask.set(x, y);
            mask.set(x + 30, y);
        }
    }
    SegmentationConfig cfg;
    cfg.min_component_area = 20;
    const auto roi = try_extract_roi(mask, cfg);
    REQUIRE(roi.has_value());
    CHECK(roi->width == 40);
    CHECK(roi->height == 10);
    CHECK(roi->polygon_count == 2);
}

TEST_CASE("extract_roi drops small components from the bits") {
    BinaryMask mask(30, 10);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) mask.set(x, y);
    mask.set(20, 2);  // 1-px speck inside the candidate box span
    SegmentationConfig cfg;
    cfg.min_component_area = 20;
    const auto roi = try_extract_roi(mask, cfg);
    REQUIRE(roi.has_value());
    CHECK(roi->width == 6);
    CHECK(roi->polygon_count == 1);
    std::size_t fg = 0;
    for (auto b : roi->bits) fg += b;
    CHECK(fg == 36);
}

TEST_CASE("extract_roi output is tight on every border") {
    SplitMix64 rng(71);
    SegmentationConfig cfg;
    cfg.min_component_area = 5;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto mask = testing::random_mask(rng, 32, 32, 0.35);
        const auto roi = try_extract_roi(mask, cfg);
        if (!roi) continue;
        ++checked;
        CHECK(roi->width <= mask.width);
        CHECK(roi->height <= mask.height);
        bool top = false, bottom = false, left = false, right = false;
        for (int x = 0; x < roi->width; ++x) {
            top = top || roi->get(x, 0);
            bottom = bottom || roi->get(x, roi->height - 1);
        }
        for (int y = 0; y < roi->height; ++y) {
            left = left || roi->get(0, y);
            right = right || roi->get(roi->width - 1, y);
        }
        CHECK(top);
        CHECK(bottom);
        CHECK(left);
        CHECK(right);
    }
    CHECK(checked > 0);
}

TEST_CASE("segment_frame finds a rendered blue blob") {
    SegmentationConfig cfg;
    const auto roi_in = testing::make_solid_rect(12, 8);
    const auto frame = testing::render_frame(roi_in, ColorChannel::Blue, 6, 0);
    const auto roi = segment_frame(frame, ColorChannel::Blue, cfg);
    REQUIRE(roi.has_value());
    CHECK(roi->polygon_count == 1);
    CHECK(roi->width == 12);
    CHECK(roi->height == 8);
    CHECK_FALSE(segment_frame(frame, ColorChannel::Red, cfg).has_value());
}

}  // TEST_SUITE
