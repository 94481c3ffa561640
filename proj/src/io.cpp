#include "levelcross/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lcross::io {

std::string format_g(double x, int precision) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

// ---------------------------------------------------------------- sha256

namespace {

constexpr std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

Sha256::Sha256() {
    static constexpr std::uint32_t init[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                              0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::memcpy(state_, init, sizeof state_);
}

void Sha256::process(const unsigned char* p) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
        w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
               (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
        const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3];
    std::uint32_t e = state_[4], f = state_[5], g = state_[6], h = state_[7];
    for (int i = 0; i < 64; ++i) {
        const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        const std::uint32_t ch = (e & f) ^ (~e & g);
        const std::uint32_t t1 = h + s1 + ch + kSha256K[i] + w[i];
        const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        const std::uint32_t t2 = s0 + maj;
        h = g; g = f; f = e; e = d + t1;
        d = c; c = b; b = a; a = t1 + t2;
    }
    state_[0] += a; state_[1] += b; state_[2] += c; state_[3] += d;
    state_[4] += e; state_[5] += f; state_[6] += g; state_[7] += h;
}

void Sha256::update(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    length_ += len;
    while (len > 0) {
        const std::size_t take = std::min(len, sizeof buffer_ - buffered_);
        std::memcpy(buffer_ + buffered_, p, take);
        buffered_ += take;
        p += take;
        len -= take;
        if (buffered_ == sizeof buffer_) {
            process(buffer_);
            buffered_ = 0;
        }
    }
}

std::string Sha256::hex_digest() {
    const std::uint64_t bit_len = length_ * 8;
    const unsigned char one = 0x80;
    update(&one, 1);
    const unsigned char zero = 0x00;
    while (buffered_ != 56) update(&zero, 1);
    unsigned char len_be[8];
    for (int i = 0; i < 8; ++i) len_be[i] = static_cast<unsigned char>(bit_len >> (56 - 8 * i));
    // bypass the length bookkeeping for the trailer
    std::memcpy(buffer_ + 56, len_be, 8);
    process(buffer_);
    char out[65];
    for (int i = 0; i < 8; ++i) std::snprintf(out + 8 * i, 9, "%08x", state_[i]);
    return std::string(out, 64);
}

std::string sha256_hex(const std::string& data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex_digest();
}

// --------------------------------------------------------- artifact writer

ArtifactWriter::ArtifactWriter(const std::filesystem::path& path)
    : path_(path), tmp_(path.string() + ".tmp") {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    file_ = std::fopen(tmp_.c_str(), "wb");
    if (!file_) throw std::runtime_error("cannot open " + tmp_.string() + " for writing");
}

ArtifactWriter::~ArtifactWriter() {
    if (!committed_) {
        if (file_) std::fclose(file_);
        std::error_code ec;
        std::filesystem::remove(tmp_, ec);
    }
}

void ArtifactWriter::write(const std::string& text) {
    if (std::fwrite(text.data(), 1, text.size(), file_) != text.size())
        throw std::runtime_error("short write to " + tmp_.string());
    hash_.update(text.data(), text.size());
}

std::string ArtifactWriter::commit() {
    if (std::fclose(file_) != 0) throw std::runtime_error("close failed: " + tmp_.string());
    file_ = nullptr;
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
    return hash_.hex_digest();
}

// ----------------------------------------------------------------- tables

std::string write_levels_csv(const std::filesystem::path& path, const std::vector<Level>& levels) {
    ArtifactWriter w(path);
    w.line("n1,n2,energy");
    for (const auto& lv : levels)
        w.line(std::to_string(lv.key.n1) + "," + std::to_string(lv.key.n2) + "," +
               format_g(lv.energy));
    return w.commit();
}

std::string write_crossings_csv(const std::filesystem::path& path,
                                const std::vector<Crossing>& crossings) {
    ArtifactWriter w(path);
    w.line("n1,n2,n1p,n2p,mu_star,energy,V,v,sign");
    for (const auto& c : crossings)
        w.line(std::to_string(c.a.n1) + "," + std::to_string(c.a.n2) + "," +
               std::to_string(c.b.n1) + "," + std::to_string(c.b.n2) + "," +
               format_g(c.mu_star) + "," + format_g(c.energy) + "," + format_g(c.V) + "," +
               format_g(c.v) + "," + std::string(1, c.sign_class));
    return w.commit();
}

std::string write_table_csv(const std::filesystem::path& path,
                            const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_table_csv: header/column mismatch");
    ArtifactWriter w(path);
    std::string head;
    for (std::size_t i = 0; i < header.size(); ++i)
        head += (i ? "," : "") + header[i];
    w.line(head);
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns)
        if (col.size() != rows) throw std::invalid_argument("write_table_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        std::string row;
        for (std::size_t cidx = 0; cidx < columns.size(); ++cidx)
            row += (cidx ? "," : "") + format_g(columns[cidx][r]);
        w.line(row);
    }
    return w.commit();
}

std::string write_histogram_csv(const std::filesystem::path& path, const harness::Histogram& hist,
                                const std::vector<double>& prediction, double param_width) {
    ArtifactWriter w(path);
    w.line("bin_left,bin_right,count,density,prediction,residual");
    const auto dens = hist.density(param_width);
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double pred = i < prediction.size() ? prediction[i] : 0.0;
        const double resid = static_cast<double>(hist.counts[i]) - pred;
        w.line(format_g(hist.edges[i]) + "," + format_g(hist.edges[i + 1]) + "," +
               std::to_string(hist.counts[i]) + "," + format_g(dens[i]) + "," + format_g(pred) +
               "," + format_g(resid));
    }
    return w.commit();
}

std::string write_grid(const std::filesystem::path& path, const osc::GridWindow& window,
                       const std::vector<double>& values) {
    ArtifactWriter w(path);
    const double dmu = (window.mu_max - window.mu_min) / window.n_mu;
    const double deps = (window.eps_max - window.eps_min) / window.n_eps;
    for (int row = 0; row < window.n_eps; ++row) {
        const double eps = window.eps_min + (row + 0.5) * deps;
        for (int col = 0; col < window.n_mu; ++col) {
            const double mu = window.mu_min + (col + 0.5) * dmu;
            w.line(format_g(mu, 9) + " " + format_g(eps, 9) + " " +
                   format_g(values[static_cast<std::size_t>(row) * window.n_mu + col], 9));
        }
        if (row + 1 < window.n_eps) w.line("");
    }
    return w.commit();
}

void write_manifest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& config,
                    const ArtifactList& artifacts) {
    ArtifactWriter w(path);
    w.line("[config]");
    for (const auto& [k, v] : config) w.line(k + " = " + v);
    w.line("[artifacts]");
    for (const auto& [name, digest] : artifacts) w.line(digest + "  " + name);
    w.commit();
}

std::map<std::string, std::string> read_manifest_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path.string());
    std::map<std::string, std::string> config;
    std::string line;
    bool in_config = false;
    while (std::getline(in, line)) {
        if (line == "[config]") {
            in_config = true;
            continue;
        }
        if (!line.empty() && line.front() == '[') in_config = false;
        if (!in_config) continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        config[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return config;
}

}  // namespace lcross::io
