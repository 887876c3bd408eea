#pragma once

#include "alberich/core/error.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#ifndef ALBERICH_VERSION
#define ALBERICH_VERSION "0.0.0"
#endif

namespace alberich::pipeline {

inline std::string sha256_hex(std::istream& in) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("cannot initialise SHA-256");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    const auto got = in.gcount();
    if (got > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got)) != 1) {
      throw Error("SHA-256 update failed");
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw Error("SHA-256 finalisation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

inline std::string sha256_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + p.string() + " for hashing");
  }
  return sha256_hex(in);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Provenance of one run: inputs and outputs with content digests.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;

  [[nodiscard]] nlohmann::json to_json(const std::filesystem::path& base) const {
    auto listing = [&](const std::vector<std::filesystem::path>& files) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& f : files) {
        arr.push_back({{"path", std::filesystem::relative(f, base).generic_string()}, {"sha256", sha256_file(f)}});
      }
      return arr;
    };
    return {{"tool", "alberich"},
            {"tool_version", ALBERICH_VERSION},
            {"command", command},
            {"seed", seed},
            {"started_utc", started_utc},
            {"finished_utc", finished_utc},
            {"inputs", listing(inputs)},
            {"outputs", listing(outputs)}};
  }
};

} // namespace alberich::pipeline
