#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nucmorph/biostats.hpp"
#include "nucmorph/grid.hpp"
#include "nucmorph/mask_geometry.hpp"
#include "nucmorph/morphometry.hpp"

namespace nucmorph {

// ---------------------------------------------------------------------------
// Annotation JSON
// ---------------------------------------------------------------------------

struct ImageMeta {
    std::string id;
    int width = 0;
    int height = 0;
    double mpp = 0.0;
    friend bool operator==(const ImageMeta&, const ImageMeta&) = default;
};

struct AnnotationSet {
    ImageMeta image;
    std::vector<PolygonAnnotation> annotations;
    friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

/// Parses {"image": {...}, "annotations": [...]}; unknown keys are ignored.
/// Throws ErrorKind::schema with a JSON path such as "$.image.mpp".
AnnotationSet parse_annotations(std::string_view json_text);
AnnotationSet load_annotations(const std::filesystem::path& path);

std::string dump_annotations(const AnnotationSet& set);
void save_annotations(const std::filesystem::path& path, const AnnotationSet& set);

/// Rasterizes every polygon into one label grid (later polygons overwrite
/// earlier ones where they overlap); ids are densified in annotation order.
PixelGrid annotations_to_labels(const AnnotationSet& set);

// ---------------------------------------------------------------------------
// PNG masks and images
// ---------------------------------------------------------------------------

struct LoadedMask {
    PixelGrid grid;
    /// (value in file, dense label) for label-mode loads; empty in binary mode.
    std::vector<std::pair<std::uint32_t, Label>> label_mapping;
};

/// Single-channel 8- or 16-bit PNG. Binary mode: non-zero is foreground and
/// components are labelled. Label mode: distinct values are objects, densified
/// by ascending value.
LoadedMask load_mask(const std::filesystem::path& path, double mpp, MaskMode mode);

MaskMode parse_mask_mode(std::string_view text);

/// Binary mode writes 8-bit 0/255; label mode writes 16-bit labels.
void save_mask(const std::filesystem::path& path, const PixelGrid& grid, MaskMode mode);

/// 8-bit image with 1 (gray), 2 (gray+alpha), 3 (RGB) or 4 (RGBA) channels.
struct Image8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;  // row-major, interleaved
    friend bool operator==(const Image8&, const Image8&) = default;
};

Image8 load_image(const std::filesystem::path& path);
void save_image(const std::filesystem::path& path, const Image8& image);

// ---------------------------------------------------------------------------
// CSV (RFC 4180)
// ---------------------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line of each row

    /// Index of a header column, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text, const std::string& source = "<memory>");
CsvTable read_csv(const std::filesystem::path& path);

std::string csv_field(std::string_view value);
std::string csv_line(const std::vector<std::string>& fields);

// ---------------------------------------------------------------------------
// Case tables
// ---------------------------------------------------------------------------

enum class Grade { low, high };

struct RaterEstimate {
    std::string case_id;
    std::string rater_id;
    int timepoint = 1;           // 1 or 2
    bool karyomegaly = false;    // absent / present
    int anisokaryosis = 1;       // 1 none-mild, 2 moderate, 3 severe
    friend bool operator==(const RaterEstimate&, const RaterEstimate&) = default;
};

struct CaseRecord {
    std::string case_id;
    std::vector<std::string> roi_refs;  // in manifest order
    SurvivalRecord outcome;
    std::optional<Grade> grade;
    std::optional<double> mitotic_count;  // per 2.37 mm^2
    std::vector<RaterEstimate> estimates;
};

SurvivalStatus parse_status(std::string_view token);

/// Header row required: case_id,time_months,status[,grade][,mitotic_count].
/// Rejects unknown status tokens, non-positive times and duplicate ids with
/// the offending line number.
std::vector<CaseRecord> parse_case_table(std::string_view text, const std::string& source = "<memory>");
std::vector<CaseRecord> load_case_table(const std::filesystem::path& path);
std::string dump_case_table(const std::vector<CaseRecord>& cases);

/// case_id,rater_id,timepoint,karyomegaly,anisokaryosis
std::vector<RaterEstimate> load_estimates(const std::filesystem::path& path);
std::vector<RaterEstimate> parse_estimates(std::string_view text, const std::string& source = "<memory>");

struct Measurement {
    std::string case_id;
    std::string rater_id;
    double value = 0.0;
};

/// case_id,rater_id,value
std::vector<Measurement> parse_measurements(std::string_view text, const std::string& source = "<memory>");
std::vector<Measurement> load_measurements(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Feature tables
// ---------------------------------------------------------------------------

/// One row of a features CSV: level is "roi" or "case".
struct FeatureRow {
    std::string level;
    std::string case_id;
    std::string roi_id;
    std::size_t n_nuclei = 0;
    std::vector<std::optional<double>> values;  // parallel to FeatureTable::parameters
};

struct FeatureTable {
    std::vector<std::string> parameters;
    std::vector<FeatureRow> rows;

    std::optional<std::size_t> parameter_index(std::string_view name) const;
};

/// Columns: level,case_id,roi_id,n_nuclei,<parameters...>; ROI rows of a
/// case precede its case row.
std::string dump_features(const std::vector<CaseFeatureSet>& cases,
                          const std::vector<std::vector<std::string>>& roi_ids);
FeatureTable parse_features(std::string_view text, const std::string& source = "<memory>");
FeatureTable load_features(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// ROI manifests
// ---------------------------------------------------------------------------

struct ManifestEntry {
    std::string case_id;
    std::string roi_id;
    std::filesystem::path path;  // resolved against the manifest's directory
};

/// case_id,roi_id,path; row order is ROI order. Duplicate (case, roi) pairs
/// are rejected.
std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                                          const std::string& source = "<memory>");
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

/// Entries for the files of a directory named "<case>__<roi>.<ext>" (ext one
/// of `extensions`), in sorted file-name order; other files are ignored.
std::vector<ManifestEntry> scan_directory(const std::filesystem::path& dir,
                                          const std::vector<std::string>& extensions);

// ---------------------------------------------------------------------------
// Misc
// ---------------------------------------------------------------------------

/// Lower-case hex SHA-256 of a byte string / a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

/// Strict decimal parse (no trailing characters, finite); throws ErrorKind::schema
/// with `what` in the message.
double parse_number(std::string_view text, const std::string& what);

std::string read_text_file(const std::filesystem::path& path);

/// Writes atomically enough for batch use (truncate + write); throws ErrorKind::io.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nucmorph
