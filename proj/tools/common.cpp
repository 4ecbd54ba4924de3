#include "common.hpp"

#include "nucmorph/data_io.hpp"
#include "nucmorph/format.hpp"

namespace nucmorph::cli {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument:
        case ErrorKind::invalid_polygon:
        case ErrorKind::dimension_mismatch:
        case ErrorKind::schema:
        case ErrorKind::io:
            return exit_input;
        default:
            return exit_compute;
    }
}

void check_writable(const std::filesystem::path& path, bool force) {
    if (std::filesystem::exists(path) && !force) {
        throw Error(ErrorKind::io, path.string() + ": already exists (use --force to overwrite)");
    }
}

void OutputSet::add_writer(const std::string& name, std::function<void(const std::filesystem::path&)> writer) {
    if (!files_.emplace(name, std::move(writer)).second) {
        throw Error(ErrorKind::invalid_argument, "output '" + name + "' produced twice");
    }
}

void OutputSet::add_text(const std::string& name, std::string content) {
    add_writer(name, [content = std::move(content)](const std::filesystem::path& p) { write_text_file(p, content); });
}

void OutputSet::add_json(const std::string& name, const json& doc) {
    add_text(name, doc.dump(2) + "\n");
}

void OutputSet::commit() const {
    for (const auto& [name, writer] : files_) check_writable(dir_ / name, force_);
    for (const auto& [name, writer] : files_) {
        const auto path = dir_ / name;
        if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
        writer(path);
    }
}

void Manifest::add_input(const std::filesystem::path& path) {
    inputs_.emplace_back(path.generic_string(), file_sha256(path));
}

json Manifest::to_json() const {
    json inputs = json::array();
    for (const auto& [path, digest] : inputs_) inputs.push_back({{"path", path}, {"sha256", digest}});
    return {{"tool", "nucmorph"}, {"version", NUCMORPH_VERSION}, {"command", command_},
            {"inputs", std::move(inputs)}, {"config", config_}};
}

PixelGrid load_roi(const std::filesystem::path& path, const std::optional<double>& mpp, MaskMode mode) {
    const std::string ext = path.extension().string();
    if (ext == ".json") {
        const AnnotationSet set = load_annotations(path);
        if (mpp && *mpp != set.image.mpp) {
            throw Error(ErrorKind::invalid_argument, path.string() + ": --mpp " + format_double(*mpp) +
                                                         " conflicts with the file's mpp " +
                                                         format_double(set.image.mpp));
        }
        return annotations_to_labels(set);
    }
    if (ext == ".png") {
        if (!mpp) throw Error(ErrorKind::invalid_argument, path.string() + ": --mpp is required for PNG masks");
        return load_mask(path, *mpp, mode).grid;
    }
    throw Error(ErrorKind::invalid_argument, path.string() + ": unsupported input type (expected .png or .json)");
}

Error with_context(const Error& e, const std::filesystem::path& path, const char* stage) {
    return Error(e.kind(), path.string() + ": " + stage + ": " + e.what());
}

json optional_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json filter_config_json(const FilterConfig& cfg) {
    return {{"min_area_um2", cfg.min_area_um2},
            {"large_thresholds_um2", cfg.large_thresholds_um2},
            {"indent_thresholds", cfg.indent_thresholds},
            {"exclude_border_touching", cfg.exclude_border_touching}};
}

json rates_json(const ConfusionRates& r) {
    return {{"sensitivity", r.sensitivity},
            {"specificity", optional_json(r.specificity)},
            {"precision", optional_json(r.precision)},
            {"false_omission_rate", optional_json(r.false_omission_rate)}};
}

Endpoint parse_endpoint(const std::string& text) {
    if (text == "tumor_death_any_time") return Endpoint::tumor_death_any_time;
    if (text == "tumor_death_12mo") return Endpoint::tumor_death_12mo;
    if (text == "overall_death_12mo") return Endpoint::overall_death_12mo;
    throw Error(ErrorKind::invalid_argument, "unknown endpoint '" + text +
                                                 "' (allowed: tumor_death_any_time, tumor_death_12mo, "
                                                 "overall_death_12mo)");
}

const char* endpoint_name(Endpoint e) {
    switch (e) {
        case Endpoint::tumor_death_any_time: return "tumor_death_any_time";
        case Endpoint::tumor_death_12mo: return "tumor_death_12mo";
        case Endpoint::overall_death_12mo: return "overall_death_12mo";
    }
    return "?";
}

KappaWeights parse_kappa_weights(const std::string& text) {
    if (text == "linear") return KappaWeights::linear;
    if (text == "quadratic") return KappaWeights::quadratic;
    throw Error(ErrorKind::invalid_argument, "unknown kappa weights '" + text + "' (allowed: linear, quadratic)");
}

}  // namespace nucmorph::cli
