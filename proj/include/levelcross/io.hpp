#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "levelcross/crossings.hpp"
#include "levelcross/harness.hpp"
#include "levelcross/osc.hpp"
#include "levelcross/spectrum.hpp"

// Text artifacts: CSV tables (%.12g), gnuplot-style grid matrices (%.9g),
// and the run manifest (config echo plus SHA-256 of every artifact).
// Files are written to <name>.tmp and renamed on success, so failed runs
// leave no partial outputs.

namespace lcross::io {

std::string format_g(double x, int precision = 12);

class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    std::string hex_digest();  // finalizes

private:
    std::uint32_t state_[8];
    std::uint64_t length_ = 0;
    unsigned char buffer_[64];
    std::size_t buffered_ = 0;
    void process(const unsigned char* chunk);
};

std::string sha256_hex(const std::string& data);

// Streams lines into <path>.tmp, hashing as it goes; commit() renames to
// the final path and returns the digest. Destruction without commit
// removes the temporary.
class ArtifactWriter {
public:
    explicit ArtifactWriter(const std::filesystem::path& path);
    ~ArtifactWriter();
    ArtifactWriter(const ArtifactWriter&) = delete;
    ArtifactWriter& operator=(const ArtifactWriter&) = delete;
    void write(const std::string& text);
    void line(const std::string& text) { write(text + "\n"); }
    std::string commit();

private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    FILE* file_ = nullptr;
    Sha256 hash_;
    bool committed_ = false;
};

// artifact name -> sha256 hex, in emission order
using ArtifactList = std::vector<std::pair<std::string, std::string>>;

std::string write_levels_csv(const std::filesystem::path& path, const std::vector<Level>& levels);
std::string write_crossings_csv(const std::filesystem::path& path,
                                const std::vector<Crossing>& crossings);
std::string write_table_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& columns);
std::string write_histogram_csv(const std::filesystem::path& path, const harness::Histogram& hist,
                                const std::vector<double>& prediction, double param_width);
std::string write_grid(const std::filesystem::path& path, const osc::GridWindow& window,
                       const std::vector<double>& values);

void write_manifest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& config,
                    const ArtifactList& artifacts);

// Parses the [config] section of a manifest back into key/value pairs.
std::map<std::string, std::string> read_manifest_config(const std::filesystem::path& path);

}  // namespace lcross::io
