#include "nucmorph/data_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "nucmorph/error.hpp"
#include "nucmorph/format.hpp"

namespace nucmorph {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::schema, path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(path + "." + key, "required key missing");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) schema_error(path + "." + key, "expected a string");
    return v.get<std::string>();
}

int require_positive_int(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) schema_error(path + "." + key, "expected an integer");
    const auto n = v.get<std::int64_t>();
    if (n < 1 || n > (1 << 30)) schema_error(path + "." + key, "must be a positive integer");
    return static_cast<int>(n);
}

double require_number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) schema_error(path, "must be finite");
    return d;
}

std::string line_ref(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

}  // namespace

// ---------------------------------------------------------------------------
// Annotation JSON
// ---------------------------------------------------------------------------

AnnotationSet parse_annotations(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        schema_error("$", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_error("$", "expected an object");

    AnnotationSet set;
    const json& image = require(doc, "image", "$");
    if (!image.is_object()) schema_error("$.image", "expected an object");
    set.image.id = require_string(image, "id", "$.image");
    set.image.width = require_positive_int(image, "width", "$.image");
    set.image.height = require_positive_int(image, "height", "$.image");
    set.image.mpp = require_number(require(image, "mpp", "$.image"), "$.image.mpp");
    if (!(set.image.mpp > 0.0)) schema_error("$.image.mpp", "must be > 0");

    const json& anns = require(doc, "annotations", "$");
    if (!anns.is_array()) schema_error("$.annotations", "expected an array");
    for (std::size_t i = 0; i < anns.size(); ++i) {
        const std::string path = "$.annotations[" + std::to_string(i) + "]";
        const json& a = anns[i];
        if (!a.is_object()) schema_error(path, "expected an object");
        PolygonAnnotation poly;
        poly.id = require_string(a, "id", path);
        poly.label = require_string(a, "label", path);
        const json& verts = require(a, "polygon", path);
        if (!verts.is_array()) schema_error(path + ".polygon", "expected an array of [x, y] pairs");
        if (verts.size() < 3) schema_error(path + ".polygon", "needs at least 3 vertices");
        for (std::size_t k = 0; k < verts.size(); ++k) {
            const std::string vpath = path + ".polygon[" + std::to_string(k) + "]";
            const json& v = verts[k];
            if (!v.is_array() || v.size() != 2) schema_error(vpath, "expected [x, y]");
            poly.vertices.push_back({require_number(v[0], vpath + "[0]"), require_number(v[1], vpath + "[1]")});
        }
        set.annotations.push_back(std::move(poly));
    }
    return set;
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_annotations(text);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

std::string dump_annotations(const AnnotationSet& set) {
    json doc;
    doc["image"] = {{"id", set.image.id},
                    {"width", set.image.width},
                    {"height", set.image.height},
                    {"mpp", set.image.mpp}};
    json anns = json::array();
    for (const auto& a : set.annotations) {
        json verts = json::array();
        for (const auto& v : a.vertices) verts.push_back({v.x, v.y});
        anns.push_back({{"id", a.id}, {"label", a.label}, {"polygon", std::move(verts)}});
    }
    doc["annotations"] = std::move(anns);
    return doc.dump(2) + "\n";
}

void save_annotations(const std::filesystem::path& path, const AnnotationSet& set) {
    write_text_file(path, dump_annotations(set));
}

PixelGrid annotations_to_labels(const AnnotationSet& set) {
    PixelGrid out(set.image.width, set.image.height, set.image.mpp);
    Label next = 0;
    for (const auto& a : set.annotations) {
        const PixelGrid mask = rasterize_polygon(a, set.image.width, set.image.height, set.image.mpp);
        const auto src = mask.labels();
        auto dst = out.labels();
        bool any = false;
        for (std::size_t i = 0; i < src.size(); ++i) any = any || src[i] != 0;
        if (!any) continue;
        ++next;
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (src[i] != 0) dst[i] = next;
        }
    }
    // A polygon fully covered by later ones leaves a gap in the ids.
    std::vector<Label> remap(static_cast<std::size_t>(next) + 1, 0);
    for (Label v : out.labels()) remap[v] = 1;
    Label dense = 0;
    remap[0] = 0;
    for (std::size_t v = 1; v < remap.size(); ++v) remap[v] = remap[v] != 0 ? ++dense : 0;
    for (Label& v : out.labels()) v = remap[v];
    return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> starts;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_quoted = false;
    bool record_open = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && record[0].empty();
        if (!blank) {
            records.push_back(std::move(record));
            starts.push_back(record_line);
        }
        record.clear();
        record_open = false;
    };

    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!record_open) {
            record_open = true;
            record_line = line;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            if (!field.empty() || field_quoted) {
                throw Error(ErrorKind::schema, line_ref(source, line) + ": stray quote inside an unquoted field");
            }
            in_quotes = true;
            field_quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            ++line;
        } else {
            if (field_quoted) {
                throw Error(ErrorKind::schema, line_ref(source, line) + ": text after a closing quote");
            }
            field.push_back(c);
        }
    }
    if (in_quotes) throw Error(ErrorKind::schema, line_ref(source, record_line) + ": unterminated quoted field");
    if (record_open) end_record();

    CsvTable table;
    if (records.empty()) throw Error(ErrorKind::schema, source + ": missing header row");
    table.header = std::move(records.front());
    std::set<std::string> seen;
    for (const auto& h : table.header) {
        if (!seen.insert(h).second) throw Error(ErrorKind::schema, source + ": duplicate column '" + h + "'");
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw Error(ErrorKind::schema, line_ref(source, starts[r]) + ": expected " +
                                               std::to_string(table.header.size()) + " fields, found " +
                                               std::to_string(records[r].size()));
        }
        table.rows.push_back(std::move(records[r]));
        table.line_numbers.push_back(starts[r]);
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    return parse_csv(read_text_file(path), path.string());
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += csv_field(fields[i]);
    }
    out.push_back('\n');
    return out;
}

double parse_number(std::string_view text, const std::string& what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorKind::schema, what + ": '" + std::string(text) + "' is not a number");
    }
    return value;
}

namespace {

std::size_t require_column(const CsvTable& t, std::string_view name, const std::string& source) {
    const auto c = t.column(name);
    if (!c) throw Error(ErrorKind::schema, source + ": missing required column '" + std::string(name) + "'");
    return *c;
}

int parse_int_in(std::string_view text, std::initializer_list<int> allowed, const std::string& what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    const bool ok = !text.empty() && ec == std::errc() && ptr == text.data() + text.size() &&
                    std::find(allowed.begin(), allowed.end(), value) != allowed.end();
    if (!ok) {
        std::string list;
        for (int a : allowed) list += (list.empty() ? "" : ", ") + std::to_string(a);
        throw Error(ErrorKind::schema, what + ": '" + std::string(text) + "' is not one of {" + list + "}");
    }
    return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Case tables
// ---------------------------------------------------------------------------

SurvivalStatus parse_status(std::string_view token) {
    if (token == "tumor_death") return SurvivalStatus::tumor_death;
    if (token == "other_death") return SurvivalStatus::other_death;
    if (token == "censored") return SurvivalStatus::censored;
    throw Error(ErrorKind::schema,
                "unknown status '" + std::string(token) + "' (allowed: tumor_death, other_death, censored)");
}

std::vector<CaseRecord> parse_case_table(std::string_view text, const std::string& source) {
    const CsvTable t = parse_csv(text, source);
    const std::size_t c_id = require_column(t, "case_id", source);
    const std::size_t c_time = require_column(t, "time_months", source);
    const std::size_t c_status = require_column(t, "status", source);
    const auto c_grade = t.column("grade");
    const auto c_mc = t.column("mitotic_count");

    std::vector<CaseRecord> out;
    std::unordered_set<std::string> ids;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::string where = line_ref(source, t.line_numbers[r]);
        try {
            CaseRecord rec;
            rec.case_id = row[c_id];
            if (rec.case_id.empty()) throw Error(ErrorKind::schema, "empty case_id");
            if (!ids.insert(rec.case_id).second) {
                throw Error(ErrorKind::schema, "duplicate case_id '" + rec.case_id + "'");
            }
            rec.outcome.case_id = rec.case_id;
            rec.outcome.time_months = parse_number(row[c_time], "time_months");
            if (!(rec.outcome.time_months > 0.0)) {
                throw Error(ErrorKind::schema, "time_months must be > 0 (got " + row[c_time] + ")");
            }
            rec.outcome.status = parse_status(row[c_status]);
            if (c_grade && !row[*c_grade].empty()) {
                const std::string& g = row[*c_grade];
                if (g == "low") {
                    rec.grade = Grade::low;
                } else if (g == "high") {
                    rec.grade = Grade::high;
                } else {
                    throw Error(ErrorKind::schema, "unknown grade '" + g + "' (allowed: low, high)");
                }
            }
            if (c_mc && !row[*c_mc].empty()) {
                const double mc = parse_number(row[*c_mc], "mitotic_count");
                if (mc < 0.0) throw Error(ErrorKind::schema, "mitotic_count must be >= 0");
                rec.mitotic_count = mc;
            }
            out.push_back(std::move(rec));
        } catch (const Error& e) {
            throw Error(e.kind(), where + ": " + e.what());
        }
    }
    return out;
}

std::vector<CaseRecord> load_case_table(const std::filesystem::path& path) {
    return parse_case_table(read_text_file(path), path.string());
}

std::string dump_case_table(const std::vector<CaseRecord>& cases) {
    std::string out = csv_line({"case_id", "time_months", "status", "grade", "mitotic_count"});
    for (const auto& c : cases) {
        std::string grade;
        if (c.grade) grade = *c.grade == Grade::low ? "low" : "high";
        out += csv_line({c.case_id, format_double(c.outcome.time_months), to_string(c.outcome.status), grade,
                         format_optional(c.mitotic_count)});
    }
    return out;
}

std::vector<RaterEstimate> parse_estimates(std::string_view text, const std::string& source) {
    const CsvTable t = parse_csv(text, source);
    const std::size_t c_case = require_column(t, "case_id", source);
    const std::size_t c_rater = require_column(t, "rater_id", source);
    const std::size_t c_tp = require_column(t, "timepoint", source);
    const std::size_t c_km = require_column(t, "karyomegaly", source);
    const std::size_t c_ak = require_column(t, "anisokaryosis", source);

    std::vector<RaterEstimate> out;
    std::set<std::tuple<std::string, std::string, int>> keys;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        try {
            RaterEstimate e;
            e.case_id = row[c_case];
            e.rater_id = row[c_rater];
            if (e.case_id.empty() || e.rater_id.empty()) throw Error(ErrorKind::schema, "empty case_id or rater_id");
            e.timepoint = parse_int_in(row[c_tp], {1, 2}, "timepoint");
            if (row[c_km] == "absent") {
                e.karyomegaly = false;
            } else if (row[c_km] == "present") {
                e.karyomegaly = true;
            } else {
                throw Error(ErrorKind::schema, "karyomegaly '" + row[c_km] + "' (allowed: absent, present)");
            }
            e.anisokaryosis = parse_int_in(row[c_ak], {1, 2, 3}, "anisokaryosis");
            if (!keys.insert({e.case_id, e.rater_id, e.timepoint}).second) {
                throw Error(ErrorKind::schema, "duplicate (case_id, rater_id, timepoint)");
            }
            out.push_back(std::move(e));
        } catch (const Error& e) {
            throw Error(e.kind(), line_ref(source, t.line_numbers[r]) + ": " + e.what());
        }
    }
    return out;
}

std::vector<RaterEstimate> load_estimates(const std::filesystem::path& path) {
    return parse_estimates(read_text_file(path), path.string());
}

std::vector<Measurement> parse_measurements(std::string_view text, const std::string& source) {
    const CsvTable t = parse_csv(text, source);
    const std::size_t c_case = require_column(t, "case_id", source);
    const std::size_t c_rater = require_column(t, "rater_id", source);
    const std::size_t c_value = require_column(t, "value", source);
    std::vector<Measurement> out;
    std::set<std::pair<std::string, std::string>> keys;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        try {
            Measurement m{row[c_case], row[c_rater], parse_number(row[c_value], "value")};
            if (m.case_id.empty() || m.rater_id.empty()) throw Error(ErrorKind::schema, "empty case_id or rater_id");
            if (!keys.insert({m.case_id, m.rater_id}).second) {
                throw Error(ErrorKind::schema, "duplicate (case_id, rater_id)");
            }
            out.push_back(std::move(m));
        } catch (const Error& e) {
            throw Error(e.kind(), line_ref(source, t.line_numbers[r]) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Measurement> load_measurements(const std::filesystem::path& path) {
    return parse_measurements(read_text_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Feature tables
// ---------------------------------------------------------------------------

std::optional<std::size_t> FeatureTable::parameter_index(std::string_view name) const {
    const auto it = std::find(parameters.begin(), parameters.end(), name);
    if (it == parameters.end()) return std::nullopt;
    return static_cast<std::size_t>(it - parameters.begin());
}

std::string dump_features(const std::vector<CaseFeatureSet>& cases,
                          const std::vector<std::vector<std::string>>& roi_ids) {
    if (roi_ids.size() != cases.size()) {
        throw Error(ErrorKind::dimension_mismatch, "one ROI id list per case required");
    }
    std::vector<std::string> header = {"level", "case_id", "roi_id", "n_nuclei"};
    std::vector<std::string> params;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        std::vector<std::string> names;
        for (const auto& [name, value] : cases[c].means) names.push_back(name);
        if (c == 0) {
            params = names;
        } else if (names != params) {
            throw Error(ErrorKind::invalid_argument, "cases were measured with different parameter sets");
        }
        if (roi_ids[c].size() != cases[c].rois.size()) {
            throw Error(ErrorKind::dimension_mismatch, "case " + cases[c].case_id + ": ROI id count mismatch");
        }
    }
    header.insert(header.end(), params.begin(), params.end());
    std::string out = csv_line(header);
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& cs = cases[c];
        for (std::size_t r = 0; r < cs.rois.size(); ++r) {
            std::vector<std::string> row = {"roi", cs.case_id, roi_ids[c][r], std::to_string(cs.rois[r].n_nuclei)};
            for (const auto& [name, value] : named_values(cs.rois[r])) row.push_back(format_optional(value));
            out += csv_line(row);
        }
        std::vector<std::string> row = {"case", cs.case_id, "", std::to_string(cs.n_nuclei)};
        for (const auto& [name, value] : cs.means) row.push_back(format_optional(value));
        out += csv_line(row);
    }
    return out;
}

FeatureTable parse_features(std::string_view text, const std::string& source) {
    const CsvTable t = parse_csv(text, source);
    static const std::vector<std::string> fixed = {"level", "case_id", "roi_id", "n_nuclei"};
    if (t.header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), t.header.begin())) {
        throw Error(ErrorKind::schema, source + ": header must start with level,case_id,roi_id,n_nuclei");
    }
    FeatureTable out;
    out.parameters.assign(t.header.begin() + 4, t.header.end());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        try {
            FeatureRow fr;
            fr.level = row[0];
            if (fr.level != "roi" && fr.level != "case") {
                throw Error(ErrorKind::schema, "level '" + fr.level + "' (allowed: roi, case)");
            }
            fr.case_id = row[1];
            fr.roi_id = row[2];
            if (fr.case_id.empty()) throw Error(ErrorKind::schema, "empty case_id");
            const double n = parse_number(row[3], "n_nuclei");
            if (n < 0 || n != std::floor(n)) throw Error(ErrorKind::schema, "n_nuclei must be a non-negative integer");
            fr.n_nuclei = static_cast<std::size_t>(n);
            for (std::size_t k = 4; k < row.size(); ++k) {
                if (row[k].empty()) {
                    fr.values.emplace_back();
                } else {
                    fr.values.emplace_back(parse_number(row[k], t.header[k]));
                }
            }
            out.rows.push_back(std::move(fr));
        } catch (const Error& e) {
            throw Error(e.kind(), line_ref(source, t.line_numbers[r]) + ": " + e.what());
        }
    }
    return out;
}

FeatureTable load_features(const std::filesystem::path& path) {
    return parse_features(read_text_file(path), path.string());
}

// ---------------------------------------------------------------------------
// ROI manifests
// ---------------------------------------------------------------------------

std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                                          const std::string& source) {
    const CsvTable t = parse_csv(text, source);
    const std::size_t c_case = require_column(t, "case_id", source);
    const std::size_t c_roi = require_column(t, "roi_id", source);
    const std::size_t c_path = require_column(t, "path", source);
    std::vector<ManifestEntry> out;
    std::set<std::pair<std::string, std::string>> keys;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::string where = line_ref(source, t.line_numbers[r]);
        if (row[c_case].empty() || row[c_roi].empty() || row[c_path].empty()) {
            throw Error(ErrorKind::schema, where + ": case_id, roi_id and path must be non-empty");
        }
        if (!keys.insert({row[c_case], row[c_roi]}).second) {
            throw Error(ErrorKind::schema, where + ": duplicate ROI '" + row[c_case] + "/" + row[c_roi] + "'");
        }
        std::filesystem::path p = row[c_path];
        if (p.is_relative()) p = base_dir / p;
        out.push_back({row[c_case], row[c_roi], p});
    }
    return out;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
    return parse_manifest(read_text_file(path), path.parent_path(), path.string());
}

std::vector<ManifestEntry> scan_directory(const std::filesystem::path& dir,
                                          const std::vector<std::string>& extensions) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::io, dir.string() + ": not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    std::vector<ManifestEntry> out;
    for (const auto& f : files) {
        const std::string stem = f.stem().string();
        const auto sep = stem.find("__");
        if (sep == std::string::npos || sep == 0 || sep + 2 >= stem.size()) continue;
        out.push_back({stem.substr(0, sep), stem.substr(sep + 2), f});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Misc
// ---------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, path.string() + ": cannot open for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorKind::io, path.string() + ": read failed");
    return text;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, path.string() + ": cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::io, path.string() + ": write failed");
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::io, "SHA-256 computation failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string file_sha256(const std::filesystem::path& path) {
    return sha256_hex(read_text_file(path));
}

}  // namespace nucmorph
