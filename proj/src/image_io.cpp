#include "dsinpaint/image_io.hpp"

#include "dsinpaint/error.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dsinpaint {

namespace {

constexpr std::array<unsigned char, 8> kPngSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::vector<unsigned char> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    if (s.size() < suffix.size())
        return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(), [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) == b;
    });
}

ImageGrid from_bytes(int width, int height, const unsigned char* data)
{
    ImageGrid img(width, height);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.values()[i] = data[i];
    return img;
}

/// P5 with optional header comments; maxval must be 255.
ImageGrid decode_pgm(const std::vector<unsigned char>& bytes, const std::string& path)
{
    std::size_t pos = 2;
    auto next_token = [&]() -> long {
        for (;;) {
            while (pos < bytes.size() && std::isspace(bytes[pos]))
                ++pos;
            if (pos < bytes.size() && bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
                continue;
            }
            break;
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
            throw IoError("malformed PGM header in '" + path + "'");
        long v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1'000'000)
                throw IoError("malformed PGM header in '" + path + "'");
            ++pos;
        }
        return v;
    };
    const long width = next_token();
    const long height = next_token();
    const long maxval = next_token();
    if (width < 1 || height < 1)
        throw IoError("PGM '" + path + "' has empty dimensions");
    if (maxval != 255)
        throw IoError("unsupported PGM maxval " + std::to_string(maxval) + " in '" + path +
                      "' (expected 255)");
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw IoError("malformed PGM header in '" + path + "'");
    ++pos;
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - pos < count)
        throw IoError("truncated PGM data in '" + path + "'");
    return from_bytes(static_cast<int>(width), static_cast<int>(height), bytes.data() + pos);
}

std::uint32_t read_be32(const unsigned char* p)
{
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
           std::uint32_t{p[3]};
}

ImageGrid decode_png(const std::vector<unsigned char>& bytes, const std::string& path)
{
    // IHDR is always the first chunk: length, "IHDR", width, height, depth, colour type.
    if (bytes.size() < 33 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0)
        throw IoError("malformed PNG header in '" + path + "'");
    const int bit_depth = bytes[24];
    const int color_type = bytes[25];
    if (color_type != PNG_COLOR_TYPE_GRAY)
        throw IoError("unsupported color type " + std::to_string(color_type) + " in '" + path +
                      "' (expected 8-bit greyscale)");
    if (bit_depth != 8)
        throw IoError("unsupported bit depth " + std::to_string(bit_depth) + " in '" + path +
                      "' (expected 8)");
    if (read_be32(bytes.data() + 16) == 0 || read_be32(bytes.data() + 20) == 0)
        throw IoError("PNG '" + path + "' has empty dimensions");

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw IoError("cannot decode PNG '" + path + "': " + image.message);
    image.format = PNG_FORMAT_GRAY;
    std::vector<unsigned char> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("cannot decode PNG '" + path + "': " + msg);
    }
    return from_bytes(static_cast<int>(image.width), static_cast<int>(image.height),
                      pixels.data());
}

std::vector<unsigned char> to_bytes(const ImageGrid& img)
{
    std::vector<unsigned char> out(img.size());
    std::transform(img.values().begin(), img.values().end(), out.begin(), quantise);
    return out;
}

} // namespace

std::uint8_t quantise(double value) noexcept
{
    const double v = std::clamp(value, 0.0, 255.0);
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

ImageGrid load_image(const std::string& path)
{
    const auto bytes = read_file(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return decode_pgm(bytes, path);
    if (bytes.size() >= kPngSignature.size() &&
        std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin()))
        return decode_png(bytes, path);
    throw IoError("unrecognised image format in '" + path + "' (expected binary PGM or PNG)");
}

void save_image(const ImageGrid& img, const std::string& path)
{
    assert_finite(img);
    const auto bytes = to_bytes(img);
    if (ends_with(path, ".pgm")) {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open '" + path + "' for writing");
        out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError("failed writing '" + path + "'");
        return;
    }
    if (ends_with(path, ".png")) {
        png_image image;
        std::memset(&image, 0, sizeof image);
        image.version = PNG_IMAGE_VERSION;
        image.width = static_cast<png_uint_32>(img.width());
        image.height = static_cast<png_uint_32>(img.height());
        image.format = PNG_FORMAT_GRAY;
        if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr))
            throw IoError("cannot write PNG '" + path + "': " + image.message);
        return;
    }
    throw IoError("cannot infer image format from '" + path + "' (use .pgm or .png)");
}

MaskGrid load_mask(const std::string& path)
{
    const ImageGrid img = load_image(path);
    MaskGrid mask(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        mask.set(i, img.values()[i] >= 128.0);
    return mask;
}

MaskGrid load_mask(const std::string& path, const ImageGrid& img)
{
    MaskGrid mask = load_mask(path);
    if (!mask.matches(img))
        throw PreconditionError("mask '" + path + "' is " + std::to_string(mask.width()) + "x" +
                                std::to_string(mask.height()) + " but the image is " +
                                std::to_string(img.width()) + "x" + std::to_string(img.height()));
    return mask;
}

void save_mask(const MaskGrid& mask, const std::string& path)
{
    ImageGrid img(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i)
        img.values()[i] = mask.known(i) ? 255.0 : 0.0;
    save_image(img, path);
}

} // namespace dsinpaint
