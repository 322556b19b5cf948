#include "fraclbp/imagio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace fraclbp {

namespace imagio {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        fail(ErrorCode::FileNotFound, "no such file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::IoError, "write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// PGM
// ---------------------------------------------------------------------------

class PgmCursor {
public:
    explicit PgmCursor(const std::string& bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        long value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) fail(ErrorCode::CorruptHeader, std::string("PGM ") + what + " too large");
            ++pos_;
            ++digits;
        }
        if (digits == 0) fail(ErrorCode::CorruptHeader, std::string("PGM: expected ") + what);
        return value;
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }

private:
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// PNG (classic libpng API; setjmp frames hold no objects with destructors)
// ---------------------------------------------------------------------------

struct MemoryReader {
    const unsigned char* data;
    std::size_t size;
    std::size_t offset;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
    auto* src = static_cast<MemoryReader*>(png_get_io_ptr(png));
    if (src->offset + count > src->size) {
        png_error(png, "truncated PNG stream");
    }
    std::memcpy(out, src->data + src->offset, count);
    src->offset += count;
}

struct PngErrorSink {
    char message[256];
};

void png_on_error(png_structp png, png_const_charp msg) {
    auto* sink = static_cast<PngErrorSink*>(png_get_error_ptr(png));
    std::snprintf(sink->message, sizeof(sink->message), "%s", msg);
    png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

struct PngHeader {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
    int channels = 0;
};

// Returns false on a libpng error; sink->message holds the reason.
bool png_read_header(png_structp png, png_infop info, PngHeader* header) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_read_info(png, info);
    header->bit_depth = png_get_bit_depth(png, info);
    header->color_type = png_get_color_type(png, info);
    if (header->bit_depth == 16) return true;  // caller rejects
    if (header->color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (header->color_type == PNG_COLOR_TYPE_GRAY && header->bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    if (header->color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);
    header->width = png_get_image_width(png, info);
    header->height = png_get_image_height(png, info);
    header->channels = png_get_channels(png, info);
    return true;
}

bool png_read_rows(png_structp png, png_infop info, png_bytepp rows) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_read_image(png, rows);
    png_read_end(png, info);
    return true;
}

GrayImage decode_png(const std::string& bytes) {
    PngErrorSink sink{};
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, png_on_error, png_on_warning);
    if (png == nullptr) fail(ErrorCode::IoError, "libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(ErrorCode::IoError, "libpng initialisation failed");
    }
    struct Guard {
        png_structp* png;
        png_infop* info;
        ~Guard() { png_destroy_read_struct(png, info, nullptr); }
    } guard{&png, &info};

    MemoryReader reader{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), 0};
    png_set_read_fn(png, &reader, png_read_from_memory);

    PngHeader header;
    if (!png_read_header(png, info, &header)) {
        fail(ErrorCode::CorruptHeader, std::string("PNG: ") + sink.message);
    }
    if (header.bit_depth == 16) fail(ErrorCode::UnsupportedFormat, "PNG: 16-bit depth is not supported");
    if (header.channels != 1 && header.channels != 3) {
        fail(ErrorCode::UnsupportedFormat, "PNG: unexpected channel layout");
    }
    if (header.width == 0 || header.height == 0 || header.width > 1u << 20 || header.height > 1u << 20) {
        fail(ErrorCode::CorruptHeader, "PNG: implausible dimensions");
    }

    const std::size_t stride = static_cast<std::size_t>(header.width) * header.channels;
    std::vector<png_byte> buffer(stride * header.height);
    std::vector<png_bytep> rows(header.height);
    for (png_uint_32 y = 0; y < header.height; ++y) rows[y] = buffer.data() + y * stride;
    if (!png_read_rows(png, info, rows.data())) {
        fail(ErrorCode::CorruptHeader, std::string("PNG: ") + sink.message);
    }

    const int w = static_cast<int>(header.width);
    const int h = static_cast<int>(header.height);
    GrayImage img(w, h);
    auto out = img.pixels();
    if (header.channels == 1) {
        std::copy(buffer.begin(), buffer.end(), out.begin());
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = luminance(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]);
        }
    }
    return img;
}

void png_write_to_string(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::string*>(png_get_io_ptr(png));
    out->append(reinterpret_cast<const char*>(data), length);
}

void png_flush_noop(png_structp) {}

bool png_write_all(png_structp png, png_infop info, png_uint_32 w, png_uint_32 h, png_bytepp rows) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows);
    png_write_end(png, nullptr);
    return true;
}

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

}  // namespace

GrayImage decode_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        fail(ErrorCode::UnsupportedFormat, "not a P2/P5 PGM stream");
    }
    const bool ascii = bytes[1] == '2';
    PgmCursor cur(bytes);
    cur.advance(2);
    const long width = cur.read_uint("width");
    const long height = cur.read_uint("height");
    const long maxval = cur.read_uint("maxval");
    if (width <= 0 || height <= 0) fail(ErrorCode::CorruptHeader, "PGM: zero dimension");
    if (maxval <= 0) fail(ErrorCode::CorruptHeader, "PGM: maxval must be positive");
    if (maxval > 255) fail(ErrorCode::UnsupportedFormat, "PGM: only 8-bit (maxval <= 255) is supported");
    if (width > (1L << 20) || height > (1L << 20)) fail(ErrorCode::CorruptHeader, "PGM: implausible dimensions");

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> data(count);
    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = cur.read_uint("pixel value");
            if (v > maxval) fail(ErrorCode::CorruptHeader, "PGM: pixel value exceeds maxval");
            data[i] = static_cast<std::uint8_t>(v);
        }
    } else {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.at_end() || !std::isspace(static_cast<unsigned char>(bytes[cur.pos()]))) {
            fail(ErrorCode::CorruptHeader, "PGM: missing separator before raster");
        }
        cur.advance(1);
        if (bytes.size() - cur.pos() < count) {
            fail(ErrorCode::CorruptHeader, "PGM: truncated raster payload");
        }
        std::memcpy(data.data(), bytes.data() + cur.pos(), count);
        for (std::uint8_t v : data) {
            if (v > maxval) fail(ErrorCode::CorruptHeader, "PGM: pixel value exceeds maxval");
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

GrayImage load_gray(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    try {
        if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
            return decode_pgm(bytes);
        }
        if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
            return decode_png(bytes);
        }
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
    fail(ErrorCode::UnsupportedFormat, path.string() + ": not a PGM (P2/P5) or PNG file");
}

std::string encode_pgm(const GrayImage& img, PgmEncoding encoding) {
    std::ostringstream out;
    out << (encoding == PgmEncoding::Binary ? "P5" : "P2") << '\n'
        << img.width() << ' ' << img.height() << "\n255\n";
    if (encoding == PgmEncoding::Binary) {
        auto px = img.pixels();
        out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    } else {
        for (int y = 0; y < img.height(); ++y) {
            auto row = img.row(y);
            for (std::size_t x = 0; x < row.size(); ++x) {
                out << (x ? " " : "") << static_cast<int>(row[x]);
            }
            out << '\n';
        }
    }
    return out.str();
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path, PgmEncoding encoding) {
    write_file(path, encode_pgm(img, encoding));
}

void save_png(const GrayImage& img, const std::filesystem::path& path) {
    if (img.empty()) fail(ErrorCode::InvalidArgument, "cannot write an empty image");
    PngErrorSink sink{};
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, png_on_error, png_on_warning);
    if (png == nullptr) fail(ErrorCode::IoError, "libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp* png;
        png_infop* info;
        ~Guard() { png_destroy_write_struct(png, info); }
    } guard{&png, &info};
    if (info == nullptr) fail(ErrorCode::IoError, "libpng initialisation failed");

    std::string encoded;
    png_set_write_fn(png, &encoded, png_write_to_string, png_flush_noop);
    std::vector<std::uint8_t> copy(img.data());
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
    for (int y = 0; y < img.height(); ++y) {
        rows[static_cast<std::size_t>(y)] = copy.data() + static_cast<std::size_t>(y) * img.width();
    }
    if (!png_write_all(png, info, static_cast<png_uint_32>(img.width()),
                       static_cast<png_uint_32>(img.height()), rows.data())) {
        fail(ErrorCode::IoError, std::string("PNG encode failed: ") + sink.message);
    }
    write_file(path, encoded);
}

std::size_t count_white(const BinaryImage& img) noexcept {
    auto px = img.pixels();
    return static_cast<std::size_t>(std::count_if(px.begin(), px.end(), [](std::uint8_t v) { return v != 0; }));
}

}  // namespace imagio
}  // namespace fraclbp
