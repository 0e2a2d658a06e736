#include "flowsig/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "flowsig/errors.hpp"
#include "flowsig/imaging.hpp"

namespace flowsig {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());
    return buf.str();
}

// PNM header tokens: whitespace separated, '#' comments to end of line.
class PnmParser {
public:
    PnmParser(const std::string& data, std::string name)
        : data_(data), name_(std::move(name)) {}

    std::string token() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
        const std::size_t start = pos_;
        while (pos_ < data_.size() &&
               !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) throw ParseError(name_ + ": truncated PNM header");
        return data_.substr(start, pos_ - start);
    }

    int int_token() {
        const std::string t = token();
        try {
            return std::stoi(t);
        } catch (...) {
            throw ParseError(name_ + ": bad PNM header token '" + t + "'");
        }
    }

    // Raster starts one whitespace byte after the maxval token.
    const unsigned char* raster(std::size_t need) {
        if (pos_ >= data_.size()) throw ParseError(name_ + ": missing PNM raster");
        ++pos_;  // single whitespace separator
        if (data_.size() - pos_ < need) {
            throw ParseError(name_ + ": PNM raster shorter than header promises");
        }
        return reinterpret_cast<const unsigned char*>(data_.data() + pos_);
    }

private:
    const std::string& data_;
    std::string name_;
    std::size_t pos_ = 0;
};

RgbFrame decode_pnm(const std::string& data, const std::string& name) {
    PnmParser parser(data, name);
    const std::string magic = parser.token();
    const bool gray = magic == "P5";
    if (!gray && magic != "P6") {
        throw ParseError(name + ": unsupported PNM magic '" + magic + "'");
    }
    const int width = parser.int_token();
    const int height = parser.int_token();
    const int maxval = parser.int_token();
    if (width < 1 || height < 1) throw ParseError(name + ": bad PNM dimensions");
    if (maxval < 1 || maxval > 255) {
        throw ParseError(name + ": only 8-bit PNM supported (maxval " +
                         std::to_string(maxval) + ")");
    }
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    const unsigned char* p = parser.raster(pixels * (gray ? 1 : 3));
    RgbFrame frame(width, height);
    for (std::size_t i = 0; i < pixels; ++i) {
        if (gray) {
            const std::uint8_t v = p[i];
            frame.pixels[i] = Rgb{v, v, v};
        } else {
            frame.pixels[i] = Rgb{p[3 * i], p[3 * i + 1], p[3 * i + 2]};
        }
    }
    return frame;
}

struct PngReadState {
    const unsigned char* data;
    std::size_t size;
    std::size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (state->pos + count > state->size) {
        png_error(png, "unexpected end of PNG stream");
    }
    std::memcpy(out, state->data + state->pos, count);
    state->pos += count;
}

RgbFrame decode_png(const std::string& data, const std::string& name) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError(name + ": libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError(name + ": libpng initialization failed");
    }

    std::vector<png_byte> row_data;
    std::vector<png_bytep> rows;
    RgbFrame frame;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError(name + ": PNG decode failed");
    }

    PngReadState state{reinterpret_cast<const unsigned char*>(data.data()), data.size(), 0};
    png_set_read_fn(png, &state, png_read_from_memory);
    png_read_info(png, info);

    // Normalize every color type to 8-bit RGB.
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    if (png_get_rowbytes(png, info) != width * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError(name + ": unexpected PNG row layout after normalization");
    }

    row_data.resize(static_cast<std::size_t>(width) * height * 3);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = row_data.data() + static_cast<std::size_t>(y) * width * 3;
    }
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    frame.width = static_cast<int>(width);
    frame.height = static_cast<int>(height);
    frame.pixels.resize(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        frame.pixels[i] = Rgb{row_data[3 * i], row_data[3 * i + 1], row_data[3 * i + 2]};
    }
    return frame;
}

bool has_png_signature(const std::string& data) {
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    return data.size() >= 8 && std::memcmp(data.data(), sig, 8) == 0;
}

}  // namespace

RgbFrame read_frame(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    const std::string name = path.filename().string();
    if (has_png_signature(data)) return decode_png(data, name);
    if (data.size() >= 2 && data[0] == 'P' && (data[1] == '5' || data[1] == '6')) {
        return decode_pnm(data, name);
    }
    throw ParseError(name + ": not a PNG or binary PGM/PPM file");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failure on " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string());
    }
}

namespace {

std::string pgm_text(int width, int height, const std::vector<std::uint8_t>& bits) {
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.reserve(out.size() + bits.size());
    for (std::uint8_t b : bits) out.push_back(b ? static_cast<char>(0xFF) : '\0');
    return out;
}

}  // namespace

void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
    write_file_atomic(path, pgm_text(mask.width, mask.height, mask.bits));
}

void write_roi_pgm(const BinaryRoi& roi, const std::filesystem::path& path) {
    write_file_atomic(path, pgm_text(roi.width, roi.height, roi.bits));
}

BinaryRoi read_roi_pgm(const std::filesystem::path& path) {
    const RgbFrame frame = read_frame(path);
    BinaryRoi roi;
    roi.width = frame.width;
    roi.height = frame.height;
    roi.bits.resize(frame.pixels.size());
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        roi.bits[i] = frame.pixels[i].r >= 128 ? 1 : 0;
    }
    roi.polygon_count = static_cast<int>(connected_components(roi.as_mask()).size());
    if (roi.polygon_count == 0) {
        throw ParseError(path.filename().string() + ": ROI file has no foreground");
    }
    return roi;
}

void write_frame_ppm(const RgbFrame& frame, const std::filesystem::path& path) {
    std::string out =
        "P6\n" + std::to_string(frame.width) + " " + std::to_string(frame.height) + "\n255\n";
    out.reserve(out.size() + frame.pixels.size() * 3);
    for (const Rgb& px : frame.pixels) {
        out.push_back(static_cast<char>(px.r));
        out.push_back(static_cast<char>(px.g));
        out.push_back(static_cast<char>(px.b));
    }
    write_file_atomic(path, out);
}

}  // namespace flowsig
