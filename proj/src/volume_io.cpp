#include "dwmc/volume_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dwmc/errors.hpp"
#include "dwmc/pgm.hpp"

namespace dwmc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slice_band_name(int s, int i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "slice%02d_band%d.pgm", s, i);
    return buf;
}

std::string slice_truth_name(int s) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "slice%02d_truth.pgm", s);
    return buf;
}

void atomic_write_text(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp);
        out << text;
        if (!out) throw ConfigError("write failed for " + tmp);
    }
    fs::rename(tmp, path);
}

void write_volume(const Volume& volume, const std::string& dir, int bit_depth) {
    fs::create_directories(dir);
    const Grid& g = volume.slice(0).grid();
    for (int s = 0; s < volume.slice_count(); ++s)
        for (int i = 0; i < volume.slice(0).band_count(); ++i) {
            const std::string path = (fs::path(dir) / slice_band_name(s, i)).string();
            write_band(volume.slice(s).band(i), path + ".tmp", bit_depth);
            fs::rename(path + ".tmp", path);
        }
    json manifest;
    manifest["schema_version"] = 1;
    manifest["width"] = g.width;
    manifest["height"] = g.height;
    manifest["slices"] = volume.slice_count();
    manifest["bands"] = volume.slice(0).band_count();
    manifest["b_values"] = volume.slice(0).b_values();
    manifest["bit_depth"] = bit_depth;
    atomic_write_text((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

void write_truth(const std::vector<LabelMap>& truth, const std::string& dir) {
    fs::create_directories(dir);
    for (std::size_t s = 0; s < truth.size(); ++s) {
        const std::string path = (fs::path(dir) / slice_truth_name(static_cast<int>(s))).string();
        write_label_map(truth[s], path + ".tmp");
        fs::rename(path + ".tmp", path);
    }
}

VolumeOnDisk read_volume(const std::string& dir) {
    const fs::path manifest_path = fs::path(dir) / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw ConfigError("volume: cannot open " + manifest_path.string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("volume: invalid manifest: ") + e.what());
    }

    int slices = 0, bands = 0, width = 0, height = 0;
    std::vector<double> b_values;
    try {
        width = manifest.at("width").get<int>();
        height = manifest.at("height").get<int>();
        slices = manifest.at("slices").get<int>();
        bands = manifest.at("bands").get<int>();
        b_values = manifest.at("b_values").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("volume: bad manifest: ") + e.what());
    }

    VolumeOnDisk result;
    std::vector<MultispectralImage> imgs;
    imgs.reserve(slices);
    for (int s = 0; s < slices; ++s) {
        std::vector<Band> bs;
        bs.reserve(bands);
        for (int i = 0; i < bands; ++i) {
            Band b = read_band((fs::path(dir) / slice_band_name(s, i)).string());
            if (b.grid().width != width || b.grid().height != height)
                throw ConfigError("volume: band grid disagrees with manifest in " + slice_band_name(s, i));
            bs.push_back(std::move(b));
        }
        imgs.emplace_back(std::move(bs), b_values);
    }
    result.volume = Volume(std::move(imgs));

    if (fs::exists(fs::path(dir) / slice_truth_name(0))) {
        int m = 0;  // common class count across slices
        std::vector<LabelMap> raw;
        for (int s = 0; s < slices; ++s) {
            raw.push_back(read_label_map((fs::path(dir) / slice_truth_name(s)).string()));
            m = std::max(m, raw.back().class_count());
        }
        for (LabelMap& t : raw) result.truth.emplace_back(t.grid(), t.labels(), m);
    }
    return result;
}

}  // namespace dwmc
