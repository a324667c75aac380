#include "aga/digest.hpp"

#include <fstream>

#include <openssl/evp.h>

#include "aga/error.hpp"

namespace aga {
namespace {

std::string to_hex(const unsigned char* digest, unsigned len) {
  static const char* kHex = "0123456789abcdef";
  std::string out(len * 2, '0');
  for (unsigned i = 0; i < len; ++i) {
    out[2 * i] = kHex[digest[i] >> 4];
    out[2 * i + 1] = kHex[digest[i] & 0x0f];
  }
  return out;
}

struct EvpCtx {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~EvpCtx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::string sha256_hex(const uint8_t* bytes, size_t size) {
  EvpCtx c;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!c.ctx || EVP_DigestInit_ex(c.ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(c.ctx, bytes, size) != 1 ||
      EVP_DigestFinal_ex(c.ctx, digest, &len) != 1)
    fail(ErrorCode::FatalIOError, "sha256: digest computation failed");
  return to_hex(digest, len);
}

std::string sha256_hex(const std::vector<uint8_t>& bytes) {
  return sha256_hex(bytes.data(), bytes.size());
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FatalIOError, "sha256: cannot open " + path);

  EvpCtx c;
  if (!c.ctx || EVP_DigestInit_ex(c.ctx, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::FatalIOError, "sha256: digest init failed");

  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    if (EVP_DigestUpdate(c.ctx, buffer, static_cast<size_t>(in.gcount())) != 1)
      fail(ErrorCode::FatalIOError, "sha256: digest update failed");
  }
  if (in.bad()) fail(ErrorCode::FatalIOError, "sha256: read error on " + path);

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_DigestFinal_ex(c.ctx, digest, &len) != 1)
    fail(ErrorCode::FatalIOError, "sha256: digest final failed");
  return to_hex(digest, len);
}

}  // namespace aga
