#include "dwmc/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dwmc/errors.hpp"

namespace dwmc {
namespace {

// Reads one whitespace/comment-separated header token.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw ConfigError("pgm: truncated header");
    return tok;
}

struct RawPgm {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<int> samples;
};

RawPgm read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("pgm: cannot open " + path);
    std::string magic = next_token(in);
    if (magic != "P5") throw ConfigError("pgm: unsupported format '" + magic + "' in " + path);

    RawPgm p;
    auto parse_int = [&](const std::string& what) {
        std::string tok = next_token(in);
        try {
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("pgm: malformed " + what + " in " + path);
        }
    };
    p.width = parse_int("width");
    p.height = parse_int("height");
    p.maxval = parse_int("maxval");
    if (p.width < 1 || p.height < 1) throw ConfigError("pgm: bad dimensions in " + path);
    if (p.maxval != 255 && p.maxval != 65535) throw ConfigError("pgm: maxval must be 255 or 65535 in " + path);

    const std::size_t n = static_cast<std::size_t>(p.width) * p.height;
    const int bytes_per = p.maxval > 255 ? 2 : 1;
    std::vector<char> buf(n * bytes_per);
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size()) throw ConfigError("pgm: truncated payload in " + path);

    p.samples.resize(n);
    if (bytes_per == 1) {
        for (std::size_t i = 0; i < n; ++i) p.samples[i] = static_cast<unsigned char>(buf[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int hi = static_cast<unsigned char>(buf[2 * i]);
            const int lo = static_cast<unsigned char>(buf[2 * i + 1]);
            p.samples[i] = (hi << 8) | lo;
        }
    }
    return p;
}

void write_pgm(const std::string& path, int width, int height, int maxval, const std::vector<int>& samples) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("pgm: cannot write " + path);
    out << "P5\n" << width << " " << height << "\n" << maxval << "\n";
    if (maxval > 255) {
        std::vector<char> buf(samples.size() * 2);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            buf[2 * i] = static_cast<char>((samples[i] >> 8) & 0xff);
            buf[2 * i + 1] = static_cast<char>(samples[i] & 0xff);
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    } else {
        std::vector<char> buf(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) buf[i] = static_cast<char>(samples[i] & 0xff);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw ConfigError("pgm: write failed for " + path);
}

}  // namespace

Band read_band(const std::string& path) {
    RawPgm p = read_pgm(path);
    std::vector<double> v(p.samples.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(p.samples[i]) / p.maxval;
    return Band(Grid{p.width, p.height}, std::move(v));
}

void write_band(const Band& band, const std::string& path, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) throw ConfigError("pgm: bit_depth must be 8 or 16");
    const int maxval = bit_depth == 8 ? 255 : 65535;
    std::vector<int> samples(band.values().size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = static_cast<int>(std::floor(band.values()[i] * maxval + 0.5));  // round half up
    write_pgm(path, band.grid().width, band.grid().height, maxval, samples);
}

LabelMap read_label_map(const std::string& path, int class_count) {
    RawPgm p = read_pgm(path);
    if (p.maxval != 255) throw ConfigError("pgm: label maps must be 8-bit: " + path);
    int max_label = 0;
    for (int s : p.samples) max_label = std::max(max_label, s);
    if (class_count == 0) class_count = max_label + 1;
    if (max_label >= class_count) throw ConfigError("pgm: label exceeds class_count in " + path);
    return LabelMap(Grid{p.width, p.height}, std::vector<int>(p.samples.begin(), p.samples.end()), class_count);
}

void write_label_map(const LabelMap& map, const std::string& path) {
    if (map.class_count() > 256) throw ConfigError("pgm: cannot store more than 256 classes");
    write_pgm(path, map.grid().width, map.grid().height, 255, map.labels());
}

BinaryImage read_binary_image(const std::string& path) {
    RawPgm p = read_pgm(path);
    std::vector<std::uint8_t> bits(p.samples.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = p.samples[i] > 0 ? 1 : 0;
    return BinaryImage(Grid{p.width, p.height}, std::move(bits));
}

void write_binary_image(const BinaryImage& img, const std::string& path) {
    std::vector<int> samples(img.bits().size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = img.bits()[i] ? 255 : 0;
    write_pgm(path, img.grid().width, img.grid().height, 255, samples);
}

}  // namespace dwmc
