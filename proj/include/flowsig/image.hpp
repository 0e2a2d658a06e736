#pragma once

#include <cstdint>
#include <vector>

namespace flowsig {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

// Decoded color frame, row-major.
struct RgbFrame {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;  // size = width * height

    RgbFrame() = default;
    RgbFrame(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h) {}

    Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

// Row-major binary image; nonzero = foreground.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // size = width * height, values 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t get(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    void set(int x, int y, bool fg = true) {
        bits[static_cast<std::size_t>(y) * width + x] = fg ? 1 : 0;
    }
    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto b : bits) n += b != 0;
        return n;
    }

    bool operator==(const BinaryMask&) const = default;
};

// Tight binary crop of the surviving components of one frame, plus how many
// components survived the area filter.
struct BinaryRoi {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // size = width * height, values 0 or 1
    int polygon_count = 0;

    std::uint8_t get(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }

    BinaryMask as_mask() const {
        BinaryMask m(width, height);
        m.bits = bits;
        return m;
    }

    bool operator==(const BinaryRoi&) const = default;
};

}  // namespace flowsig
