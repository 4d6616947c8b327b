#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trc {

/// Image with pixel values normalized to [0, 1] (value = byte / 255).
/// Storage is interleaved row-major: pixels[(h * width + w) * channels + c].
struct ImageBuffer {
    std::int64_t height = 0;
    std::int64_t width = 0;
    std::int64_t channels = 1;  // 1 (grayscale) or 3 (RGB)
    std::vector<double> pixels;

    double at(std::int64_t h, std::int64_t w, std::int64_t c) const {
        return pixels[static_cast<std::size_t>((h * width + w) * channels + c)];
    }
    double& at(std::int64_t h, std::int64_t w, std::int64_t c) {
        return pixels[static_cast<std::size_t>((h * width + w) * channels + c)];
    }
};

class PixmapParseError : public std::runtime_error {
public:
    PixmapParseError(const std::string& what, std::int64_t offset)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), byte_offset(offset) {}
    std::int64_t byte_offset;
};

namespace detail {

inline std::int64_t parse_pixmap_int(const std::string& buf, std::size_t& pos, const char* field) {
    while (pos < buf.size() && std::isspace(static_cast<unsigned char>(buf[pos]))) ++pos;
    if (pos >= buf.size() || !std::isdigit(static_cast<unsigned char>(buf[pos]))) {
        throw PixmapParseError(std::string("expected ") + field, static_cast<std::int64_t>(pos));
    }
    std::int64_t v = 0;
    while (pos < buf.size() && std::isdigit(static_cast<unsigned char>(buf[pos]))) {
        v = v * 10 + (buf[pos] - '0');
        if (v > (std::int64_t{1} << 32)) {
            throw PixmapParseError(std::string("unreasonably large ") + field,
                                   static_cast<std::int64_t>(pos));
        }
        ++pos;
    }
    return v;
}

}  // namespace detail

/// Load a binary portable pixmap: P5 (grayscale) or P6 (RGB), 8-bit,
/// maxval 255. Header is magic, width, height, maxval separated by
/// whitespace, then exactly one whitespace byte before the payload.
inline ImageBuffer load_pixmap(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 2 || buf[0] != 'P' || (buf[1] != '5' && buf[1] != '6')) {
        throw PixmapParseError("not a binary P5/P6 pixmap", 0);
    }
    ImageBuffer img;
    img.channels = buf[1] == '6' ? 3 : 1;
    std::size_t pos = 2;
    img.width = detail::parse_pixmap_int(buf, pos, "width");
    img.height = detail::parse_pixmap_int(buf, pos, "height");
    const auto maxval_pos = pos;
    const std::int64_t maxval = detail::parse_pixmap_int(buf, pos, "maxval");
    if (maxval != 255) {
        throw PixmapParseError("unsupported maxval " + std::to_string(maxval) + " (must be 255)",
                               static_cast<std::int64_t>(maxval_pos));
    }
    if (img.width < 1 || img.height < 1) {
        throw PixmapParseError("image dimensions must be positive", 2);
    }
    if (pos >= buf.size() || !std::isspace(static_cast<unsigned char>(buf[pos]))) {
        throw PixmapParseError("expected single whitespace after maxval", static_cast<std::int64_t>(pos));
    }
    ++pos;
    const std::size_t payload = static_cast<std::size_t>(img.width * img.height * img.channels);
    if (buf.size() - pos < payload) {
        throw PixmapParseError("truncated payload: need " + std::to_string(payload) + " bytes, have " +
                                   std::to_string(buf.size() - pos),
                               static_cast<std::int64_t>(buf.size()));
    }
    img.pixels.resize(payload);
    for (std::size_t i = 0; i < payload; ++i) {
        img.pixels[i] = static_cast<double>(static_cast<unsigned char>(buf[pos + i])) / 255.0;
    }
    return img;
}

/// Save as P5 (1 channel) or P6 (3 channels); values are clamped to [0, 1]
/// and rounded to the 8-bit grid, so save/load round-trips bytes exactly.
inline void save_pixmap(const ImageBuffer& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3) {
        throw std::invalid_argument("pixmap channels must be 1 or 3, got " +
                                    std::to_string(img.channels));
    }
    if (static_cast<std::int64_t>(img.pixels.size()) != img.height * img.width * img.channels) {
        throw std::invalid_argument("pixel count does not match image dimensions");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open image file for writing: " + path);
    out << (img.channels == 3 ? "P6" : "P5") << "\n"
        << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> bytes(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = std::clamp(img.pixels[i], 0.0, 1.0);
        bytes[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing image file: " + path);
}

}  // namespace trc
