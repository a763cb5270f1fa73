#include "htcsim/image.hpp"

#include <cmath>
#include <fstream>

namespace htcsim {

namespace {

// Next header token, skipping whitespace and '#' comments. Empty on EOF.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {}
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

long parse_header_int(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw PgmError(PgmError::Kind::BadHeader,
                       std::string("PGM header: bad ") + what + " field");
    return std::stol(tok);
}

}  // namespace

GrayImage pgm_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PgmError(PgmError::Kind::OpenFailed, "cannot open PGM file: " + path);

    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5")
        throw PgmError(PgmError::Kind::BadHeader, "PGM header: magic is not P2/P5");

    const long w = parse_header_int(in, "width");
    const long h = parse_header_int(in, "height");
    const long maxval = parse_header_int(in, "maxval");
    if (w < 1 || h < 1)
        throw PgmError(PgmError::Kind::BadHeader, "PGM header: non-positive dimensions");
    if (maxval < 1 || maxval > 255)
        throw PgmError(PgmError::Kind::BadMaxval,
                       "PGM maxval " + std::to_string(maxval) + " unsupported (need 1..255)");

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const size_t n = img.data.size();
    if (magic == "P5") {
        // Exactly one whitespace byte separates the header from the raster.
        in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in.gcount()) != n)
            throw PgmError(PgmError::Kind::Truncated, "PGM raster: fewer samples than width*height");
    } else {
        for (size_t i = 0; i < n; ++i) {
            const std::string tok = next_token(in);
            if (tok.empty())
                throw PgmError(PgmError::Kind::Truncated,
                               "PGM raster: fewer samples than width*height");
            if (tok.find_first_not_of("0123456789") != std::string::npos)
                throw PgmError(PgmError::Kind::BadHeader, "PGM raster: non-numeric sample");
            const long v = std::stol(tok);
            if (v < 0 || v > maxval)
                throw PgmError(PgmError::Kind::BadHeader, "PGM raster: sample exceeds maxval");
            img.data[i] = static_cast<uint8_t>(v);
        }
    }
    return img;
}

void pgm_write(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw PgmError(PgmError::Kind::OpenFailed, "cannot create PGM file: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out)
        throw PgmError(PgmError::Kind::Truncated, "PGM write failed: " + path);
}

GrayImage synth_image(int width, int height) {
    GrayImage img(width, height);
    const double pi = 3.14159265358979323846;
    const double w = width, h = height;
    for (int yi = 0; yi < height; ++yi) {
        for (int xi = 0; xi < width; ++xi) {
            const double x = xi, y = yi;
            double v = 128.0
                + 26.0 * std::sin(2.0 * pi * x / 97.0) * std::cos(2.0 * pi * y / 71.0)
                + 14.0 * std::sin(2.0 * pi * (x + 2.0 * y) / 181.0)
                + 10.0 * std::cos(2.0 * pi * (3.0 * x - y) / 43.0)
                + 18.0 * std::sin(2.0 * pi * x / 7.3) * std::sin(2.0 * pi * y / 11.1)
                + 14.0 * std::cos(2.0 * pi * (2.0 * x + 3.0 * y) / 5.7)
                + 7.0 * std::sin(2.0 * pi * x / 3.1) * std::sin(2.0 * pi * y / 2.7);
            static const struct { double cx, cy, r, amp; } blobs[] = {
                {0.3, 0.35, 0.18, 18.0}, {0.72, 0.62, 0.25, -16.0}, {0.55, 0.2, 0.1, 12.0}};
            for (const auto& b : blobs) {
                const double dx = x / w - b.cx, dy = y / h - b.cy;
                v += b.amp * std::exp(-((dx * dx + dy * dy) / (b.r * b.r)));
            }
            if (std::fabs(x / w - 0.62) < 0.14 && std::fabs(y / h - 0.78) < 0.1) v += 14.0;
            double q = std::nearbyint(v);
            if (q < 0.0) q = 0.0;
            if (q > 255.0) q = 255.0;
            img.at(yi, xi) = static_cast<uint8_t>(q);
        }
    }
    return img;
}

}  // namespace htcsim
