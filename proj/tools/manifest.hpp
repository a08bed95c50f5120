#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flatcover/io/json.hpp"

namespace flatcover::tools {

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

/// Provenance block embedded in every output. Wall time is opt-in because
/// it is the only field that differs between identical runs.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv, std::uint64_t seed)
      : command_(std::move(command)), argv_(std::move(argv)), seed_(seed), start_(std::chrono::steady_clock::now()) {}

  void add_input(const std::string& path) { inputs_.emplace_back(path, sha256_hex(io::read_text(path))); }
  void record_time(bool on) { timed_ = on; }

  io::Json json() const {
    io::Json in = io::Json::array();
    for (const auto& [p, h] : inputs_) in.push_back({{"path", p}, {"sha256", h}});
    io::Json j = {{"command", command_}, {"argv", argv_}, {"inputs", in}, {"rng_seed", seed_}, {"version", FLATCOVER_VERSION}};
    if (timed_)
      j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return j;
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::uint64_t seed_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  bool timed_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace flatcover::tools
