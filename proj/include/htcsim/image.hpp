#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace htcsim {

// Row-major 8-bit grayscale raster.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;  // width * height entries

    GrayImage() = default;
    GrayImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0) {}

    uint8_t at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }

    bool operator==(const GrayImage& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

// PGM parsing failures, one kind per distinct malformation.
struct PgmError : std::runtime_error {
    enum class Kind { OpenFailed, BadHeader, BadMaxval, Truncated };
    Kind kind;
    PgmError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Reads P5 (binary) or P2 (ASCII) with '#' comments anywhere in the header
// and maxval <= 255. Throws PgmError.
GrayImage pgm_read(const std::string& path);

// Writes binary P5 with maxval 255. Byte-exact read-back.
void pgm_write(const GrayImage& img, const std::string& path);

// Closed-form natural-like test image: low-frequency shading, soft blobs,
// a hard-edged patch and strong fine texture, so a 6-tap blur costs roughly
// what it costs on the usual photographic test images (~20 dB range).
GrayImage synth_image(int width, int height);

}  // namespace htcsim
