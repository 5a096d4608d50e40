#include "leakscope/digest.hpp"

#include "leakscope/textutil.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <stdexcept>

namespace leakscope::digest {

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &md_len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    return text::hex_encode(md, md_len);
}

std::string hmac_sha256_hex(std::string_view key, std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
              reinterpret_cast<const unsigned char*>(data.data()), data.size(), md, &md_len))
        throw std::runtime_error("hmac-sha256 failed");
    return text::hex_encode(md, md_len);
}

} // namespace leakscope::digest
