// manifest.cpp: Output bookkeeping: file digests and per-stage wall times

#include "manifest.hpp"

#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "srotto/errors.hpp"

namespace srotto::cli {

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        fail(ErrorKind::InvalidState, "SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

RunManifest::RunManifest(std::string command, nlohmann::json config, std::filesystem::path out_dir)
    : command_(std::move(command)), config_(std::move(config)), out_dir_(std::move(out_dir))
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir_, ec);
    if (ec) {
        fail(ErrorKind::Config, "output_dir: cannot create '" + out_dir_.string() + "': " + ec.message());
    }
}

void RunManifest::write(const std::string& name, const std::string& content)
{
    const auto path = out_dir_ / name;
    std::ofstream os(path, std::ios::binary);
    os << content;
    os.close();
    if (!os) {
        fail(ErrorKind::Config, "output_dir: cannot write '" + path.string() + "'");
    }
    files_.push_back({name, sha256_hex(content), content.size()});
}

void RunManifest::write_json(const std::string& name, const nlohmann::json& j)
{
    write(name, j.dump(2) + "\n");
}

std::string RunManifest::finish()
{
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : files_) {
        files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    nlohmann::json stages = nlohmann::json::array();
    double total = 0.0;
    for (const auto& [name, secs] : stages_) {
        stages.push_back({{"stage", name}, {"wall_seconds", secs}});
        total += secs;
    }
    const nlohmann::json m = {
        {"command", command_},
        {"tool_version", SROTTO_VERSION},
        {"config", config_},
        {"stages", stages},
        {"total_wall_seconds", total},
        {"files", files},
    };
    const std::string name = "manifest_" + command_ + ".json";
    const auto path = out_dir_ / name;
    std::ofstream os(path);
    os << m.dump(2) << "\n";
    if (!os) {
        fail(ErrorKind::Config, "output_dir: cannot write '" + path.string() + "'");
    }
    return name;
}

} // namespace srotto::cli
