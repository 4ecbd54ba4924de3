#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nucmorph/biostats.hpp"
#include "nucmorph/morphometry.hpp"

namespace nucmorph::cli {

/// Parses `args` (without the program name), runs the subcommand and returns
/// the process exit code. Diagnostics go to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct MeasureOptions {
    std::filesystem::path input;  // directory of <case>__<roi>.{png,json}
    std::optional<std::filesystem::path> manifest;
    std::optional<double> mpp;
    MaskMode mask_mode = MaskMode::binary;
    FilterConfig filter;
    std::filesystem::path out;
    bool force = false;
    unsigned threads = 1;
};

struct PrognoseOptions {
    std::filesystem::path features;
    std::filesystem::path cases;
    std::string param;
    Endpoint endpoint = Endpoint::tumor_death_any_time;
    std::vector<double> target_sens = {0.769, 0.538};
    std::vector<double> cutoffs;
    std::optional<std::uint64_t> seed;
    std::size_t bootstrap_n = 2000;
    std::filesystem::path out;
    bool force = false;
};

struct AgreeOptions {
    std::optional<std::filesystem::path> estimates;
    std::optional<std::filesystem::path> measurements;
    KappaWeights weights = KappaWeights::linear;
    std::filesystem::path out;
    bool force = false;
};

struct SegEvalOptions {
    std::filesystem::path pred;  // directory of <image>.png or <image>.json
    std::filesystem::path gt;    // directory of <image>.json or <image>.png
    std::optional<double> mpp;
    MaskMode mask_mode = MaskMode::binary;
    double iou_min = 0.5;
    FilterConfig filter;
    bool strict = false;
    std::filesystem::path out;
    bool force = false;
    unsigned threads = 1;
};

struct OverlayOptions {
    std::filesystem::path mask;
    std::filesystem::path image;
    MaskMode mask_mode = MaskMode::binary;
    std::filesystem::path out;  // PNG file
    bool force = false;
};

struct SynthOptions {
    std::uint64_t seed = 0;
    std::string case_id = "synth";
    std::size_t n_rois = 5;
    int width = 400;
    int height = 300;
    double mpp = 0.25;
    std::size_t n_nuclei = 50;
    double log_area_mu = 3.0;
    double log_area_sigma = 0.3;
    double ecc_min = 0.0;
    double ecc_max = 0.8;
    std::filesystem::path out;
    bool force = false;
};

struct SampleOptions {
    std::filesystem::path mask;
    std::optional<double> mpp;
    MaskMode mask_mode = MaskMode::binary;
    std::uint64_t seed = 0;
    int cols = 5;
    int rows = 6;
    std::size_t min_count = 100;
    FilterConfig filter;
    std::filesystem::path out;
    bool force = false;
};

int cmd_measure(const MeasureOptions& opt, std::ostream& out, std::ostream& err);
int cmd_prognose(const PrognoseOptions& opt, std::ostream& out, std::ostream& err);
int cmd_agree(const AgreeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_seg_eval(const SegEvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_overlay(const OverlayOptions& opt, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace nucmorph::cli
