#pragma once
// Streaming SHA-256 (OpenSSL EVP) used for file change detection.

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "kfc/error.hpp"

namespace kfc {

using Sha256Digest = std::array<unsigned char, 32>;

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
            raise(ErrorKind::internal, "SHA-256 context init failed");
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const void* data, size_t n) {
        if (EVP_DigestUpdate(ctx_, data, n) != 1)
            raise(ErrorKind::internal, "SHA-256 update failed");
    }

    Sha256Digest finish() {
        Sha256Digest digest{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_, digest.data(), &len) != 1 || len != digest.size())
            raise(ErrorKind::internal, "SHA-256 finalize failed");
        return digest;
    }

private:
    EVP_MD_CTX* ctx_;
};

inline Sha256Digest sha256_bytes(std::string_view bytes) {
    Sha256 h;
    h.update(bytes.data(), bytes.size());
    return h.finish();
}

// SHA-256 of the exact file bytes, streamed in chunks.
inline Sha256Digest compute_file_signature(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::io, "cannot open file for hashing: " + path.string());
    Sha256 h;
    char buf[256 * 1024];
    while (in) {
        in.read(buf, sizeof(buf));
        const auto got = in.gcount();
        if (got > 0) h.update(buf, static_cast<size_t>(got));
    }
    if (in.bad()) raise(ErrorKind::io, "read error while hashing: " + path.string());
    return h.finish();
}

inline std::string to_hex(const Sha256Digest& d) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (unsigned char b : d) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0x0F]);
    }
    return out;
}

} // namespace kfc
