#include <png.h>

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <map>
#include <memory>

#include "nucmorph/data_io.hpp"
#include "nucmorph/error.hpp"

namespace nucmorph {

namespace {

struct ErrorSink {
    char message[256] = {};
};

extern "C" void on_png_error(png_structp png, png_const_charp msg) {
    auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
    std::snprintf(sink->message, sizeof sink->message, "%s", msg);
    png_longjmp(png, 1);
}

extern "C" void on_png_warning(png_structp, png_const_charp) {}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw Error(ErrorKind::io, path.string() + ": cannot open");
    return f;
}

struct RawPng {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    int channels = 0;
    std::size_t rowbytes = 0;
    std::vector<png_byte> pixels;
};

enum class ReadMode { as_is, expand8 };

// Only trivially destructible locals live across setjmp/longjmp here.
bool read_png_raw(std::FILE* file, RawPng& out, ReadMode mode, ErrorSink& sink) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, on_png_error, on_png_warning);
    if (png == nullptr) {
        std::snprintf(sink.message, sizeof sink.message, "out of memory");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        std::snprintf(sink.message, sizeof sink.message, "out of memory");
        return false;
    }
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_init_io(png, file);
    png_read_info(png, info);
    if (mode == ReadMode::expand8) {
        png_set_expand(png);
        png_set_strip_16(png);
    } else if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    png_read_update_info(png, info);
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    out.color_type = png_get_color_type(png, info);
    out.channels = png_get_channels(png, info);
    out.rowbytes = png_get_rowbytes(png, info);
    out.pixels.resize(out.rowbytes * out.height);
    rows.resize(out.height);
    for (png_uint_32 y = 0; y < out.height; ++y) rows[y] = out.pixels.data() + y * out.rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

RawPng read_png(const std::filesystem::path& path, ReadMode mode) {
    FilePtr file = open_file(path, "rb");
    png_byte signature[8];
    if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
        throw Error(ErrorKind::schema, path.string() + ": not a PNG file");
    }
    std::rewind(file.get());
    RawPng raw;
    ErrorSink sink;
    if (!read_png_raw(file.get(), raw, mode, sink)) {
        throw Error(ErrorKind::schema, path.string() + ": " + sink.message);
    }
    return raw;
}

bool write_png_raw(std::FILE* file, png_uint_32 width, png_uint_32 height, int bit_depth, int color_type,
                   const std::vector<png_byte>& pixels, std::size_t rowbytes, ErrorSink& sink) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, on_png_error, on_png_warning);
    if (png == nullptr) {
        std::snprintf(sink.message, sizeof sink.message, "out of memory");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        std::snprintf(sink.message, sizeof sink.message, "out of memory");
        return false;
    }
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = const_cast<png_bytep>(pixels.data() + y * rowbytes);
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_init_io(png, file);
    png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

void write_png(const std::filesystem::path& path, png_uint_32 width, png_uint_32 height, int bit_depth,
               int color_type, const std::vector<png_byte>& pixels, std::size_t rowbytes) {
    FilePtr file = open_file(path, "wb");
    ErrorSink sink;
    if (!write_png_raw(file.get(), width, height, bit_depth, color_type, pixels, rowbytes, sink)) {
        throw Error(ErrorKind::io, path.string() + ": " + sink.message);
    }
    if (std::fflush(file.get()) != 0) throw Error(ErrorKind::io, path.string() + ": write failed");
}

}  // namespace

MaskMode parse_mask_mode(std::string_view text) {
    if (text == "binary") return MaskMode::binary;
    if (text == "label") return MaskMode::label;
    throw Error(ErrorKind::invalid_argument, "unknown mask mode '" + std::string(text) + "' (expected binary or label)");
}

LoadedMask load_mask(const std::filesystem::path& path, double mpp, MaskMode mode) {
    if (!(mpp > 0.0)) throw Error(ErrorKind::invalid_argument, "mpp must be > 0");
    const RawPng raw = read_png(path, ReadMode::as_is);
    if (raw.color_type != PNG_COLOR_TYPE_GRAY || raw.channels != 1) {
        throw Error(ErrorKind::schema, path.string() + ": mask must be single-channel grayscale (got " +
                                           std::to_string(raw.channels) + " channel(s), color type " +
                                           std::to_string(raw.color_type) + ")");
    }
    const int w = static_cast<int>(raw.width);
    const int h = static_cast<int>(raw.height);
    std::vector<Label> values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) {
        const png_byte* row = raw.pixels.data() + static_cast<std::size_t>(y) * raw.rowbytes;
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
            if (raw.bit_depth == 16) {
                values[i] = static_cast<Label>((row[2 * x] << 8) | row[2 * x + 1]);
            } else {
                values[i] = row[x];
            }
        }
    }

    LoadedMask out{PixelGrid(w, h, mpp), {}};
    if (mode == MaskMode::binary) {
        for (auto& v : values) v = v != 0 ? 1 : 0;
        out.grid = label_components(PixelGrid(w, h, mpp, std::move(values)));
        return out;
    }

    std::vector<Label> distinct;
    {
        std::vector<bool> seen(65536, false);
        for (Label v : values) {
            if (v != 0 && !seen[v]) {
                seen[v] = true;
                distinct.push_back(v);
            }
        }
    }
    std::sort(distinct.begin(), distinct.end());
    std::vector<Label> remap(65536, 0);
    for (std::size_t k = 0; k < distinct.size(); ++k) {
        remap[distinct[k]] = static_cast<Label>(k + 1);
        out.label_mapping.emplace_back(distinct[k], static_cast<Label>(k + 1));
    }
    for (auto& v : values) v = remap[v];
    out.grid = PixelGrid(w, h, mpp, std::move(values));
    return out;
}

void save_mask(const std::filesystem::path& path, const PixelGrid& grid, MaskMode mode) {
    const auto w = static_cast<std::size_t>(grid.width());
    const auto h = static_cast<std::size_t>(grid.height());
    const auto labels = grid.labels();
    if (mode == MaskMode::binary) {
        std::vector<png_byte> pixels(w * h);
        for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = labels[i] != 0 ? 255 : 0;
        write_png(path, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8, PNG_COLOR_TYPE_GRAY, pixels, w);
        return;
    }
    if (grid.max_label() > 65535) {
        throw Error(ErrorKind::invalid_argument, "label mask has ids above 65535; cannot store as 16-bit PNG");
    }
    std::vector<png_byte> pixels(2 * w * h);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        pixels[2 * i] = static_cast<png_byte>(labels[i] >> 8);
        pixels[2 * i + 1] = static_cast<png_byte>(labels[i] & 0xff);
    }
    write_png(path, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 16, PNG_COLOR_TYPE_GRAY, pixels, 2 * w);
}

Image8 load_image(const std::filesystem::path& path) {
    RawPng raw = read_png(path, ReadMode::expand8);
    Image8 image;
    image.width = static_cast<int>(raw.width);
    image.height = static_cast<int>(raw.height);
    image.channels = raw.channels;
    const std::size_t packed = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.channels);
    image.data.resize(packed * raw.height);
    for (png_uint_32 y = 0; y < raw.height; ++y) {
        std::memcpy(image.data.data() + y * packed, raw.pixels.data() + y * raw.rowbytes, packed);
    }
    return image;
}

void save_image(const std::filesystem::path& path, const Image8& image) {
    static const std::map<int, int> color_types = {{1, PNG_COLOR_TYPE_GRAY},
                                                   {2, PNG_COLOR_TYPE_GRAY_ALPHA},
                                                   {3, PNG_COLOR_TYPE_RGB},
                                                   {4, PNG_COLOR_TYPE_RGBA}};
    const auto it = color_types.find(image.channels);
    if (it == color_types.end()) throw Error(ErrorKind::invalid_argument, "image must have 1 to 4 channels");
    if (image.width < 1 || image.height < 1 ||
        image.data.size() != static_cast<std::size_t>(image.width) * image.height * image.channels) {
        throw Error(ErrorKind::dimension_mismatch, "image buffer does not match its dimensions");
    }
    write_png(path, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8, it->second,
              image.data, static_cast<std::size_t>(image.width) * image.channels);
}

}  // namespace nucmorph
