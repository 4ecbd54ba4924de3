#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nucmorph/biostats.hpp"
#include "nucmorph/error.hpp"
#include "nucmorph/grid.hpp"
#include "nucmorph/morphometry.hpp"

namespace nucmorph::cli {

using json = nlohmann::json;

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_compute = 2 };

/// 1 for malformed invocations or inputs, 2 for analyses that cannot be
/// carried out on valid inputs.
int exit_code_for(ErrorKind kind);

/// Files of one run. Nothing touches the disk until commit(), which first
/// checks every target so a refused overwrite leaves no partial output.
class OutputSet {
public:
    OutputSet(std::filesystem::path dir, bool force) : dir_(std::move(dir)), force_(force) {}

    void add_text(const std::string& name, std::string content);
    void add_json(const std::string& name, const json& doc);
    void add_writer(const std::string& name, std::function<void(const std::filesystem::path&)> writer);
    const std::filesystem::path& dir() const { return dir_; }
    void commit() const;

private:
    std::filesystem::path dir_;
    bool force_;
    std::map<std::string, std::function<void(const std::filesystem::path&)>> files_;
};

/// Refuses to proceed if `path` exists and `force` is not set.
void check_writable(const std::filesystem::path& path, bool force);

/// Report header shared by every command: tool, version, command, input
/// digests and the effective configuration. No timestamps.
class Manifest {
public:
    explicit Manifest(std::string command) : command_(std::move(command)) {}
    void add_input(const std::filesystem::path& path);
    json& config() { return config_; }
    json to_json() const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    json config_ = json::object();
};

/// Label raster from a PNG mask (needs `mpp`) or an annotation JSON (carries
/// its own mpp; a conflicting `mpp` is an error).
PixelGrid load_roi(const std::filesystem::path& path, const std::optional<double>& mpp, MaskMode mode);

/// Message prefix naming the file and pipeline stage of a failure.
Error with_context(const Error& e, const std::filesystem::path& path, const char* stage);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Exceptions are
/// captured per index; the one with the lowest index is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

json optional_json(const std::optional<double>& v);
json filter_config_json(const FilterConfig& cfg);
json rates_json(const ConfusionRates& r);

Endpoint parse_endpoint(const std::string& text);
const char* endpoint_name(Endpoint e);
KappaWeights parse_kappa_weights(const std::string& text);

}  // namespace nucmorph::cli
