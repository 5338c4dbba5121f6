// manifest.hpp: Output bookkeeping: file digests and per-stage wall times

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace srotto::cli {

std::string sha256_hex(const std::string& bytes);

struct OutputFile {
    std::string path; // relative to the output directory
    std::string sha256;
    std::size_t bytes;
};

class RunManifest {
public:
    RunManifest(std::string command, nlohmann::json config, std::filesystem::path out_dir);

    // Writes `content` under the output directory and records its digest.
    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const nlohmann::json& j);

    // Times a stage; the returned value is the stage body's result.
    template <class F>
    auto stage(const std::string& name, F&& body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        struct Record {
            RunManifest* m;
            std::string name;
            std::chrono::steady_clock::time_point t0;
            ~Record()
            {
                m->stages_.push_back(
                    {name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
            }
        } rec{this, name, t0};
        return body();
    }

    const std::filesystem::path& out_dir() const noexcept { return out_dir_; }
    const std::vector<OutputFile>& files() const noexcept { return files_; }
    // Writes manifest_<command>.json; the manifest does not list itself.
    std::string finish();

private:
    std::string command_;
    nlohmann::json config_;
    std::filesystem::path out_dir_;
    std::vector<std::pair<std::string, double>> stages_;
    std::vector<OutputFile> files_;
};

} // namespace srotto::cli
