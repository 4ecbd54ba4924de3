#pragma once

// Shared case fixtures.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "nucmorph/heterogeneity.hpp"

namespace fixture {

struct Table3Column {
    std::size_t hotspots;
    std::size_t rois;
    std::size_t deaths;
    std::size_t other;
};

// Hotspot ROI counts and outcomes of the 96 outcome cases; the zero column
// spans 1 case with 3 ROIs and 3 with 4 ROIs, the rest have 5.
inline std::vector<nucmorph::HotspotCase> table3_cases() {
    const std::vector<Table3Column> columns{{0, 3, 0, 1},  {0, 4, 0, 3}, {0, 5, 1, 43}, {1, 5, 0, 18},
                                            {2, 5, 3, 6},  {2, 4, 0, 1}, {3, 5, 0, 6},  {4, 5, 2, 3},
                                            {5, 5, 7, 2}};
    std::vector<nucmorph::HotspotCase> out;
    for (const auto& c : columns) {
        for (std::size_t i = 0; i < c.deaths + c.other; ++i) {
            nucmorph::HotspotCase hc;
            hc.case_id = "case" + std::to_string(out.size() + 1);
            hc.hotspots = c.hotspots;
            hc.rois = c.rois;
            hc.tumor_death = i < c.deaths;
            out.push_back(hc);
        }
    }
    return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("nucmorph_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace fixture
