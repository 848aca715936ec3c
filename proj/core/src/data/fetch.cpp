// SPDX-License-Identifier: Apache-2.0

#include "gig/data/fetch.hpp"

#include <cstdio>

#include <curl/curl.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "gig/data/hash.hpp"
#include "gig/error.hpp"

namespace gig::data {

namespace {

std::size_t write_to_file(char* data, std::size_t size, std::size_t count, void* user) {
  return std::fwrite(data, size, count, static_cast<std::FILE*>(user)) * size;
}

// Returns an empty string on success, otherwise the failure reason.
std::string download(const std::string& url, const std::filesystem::path& dest, long timeout) {
  std::FILE* out = std::fopen(dest.c_str(), "wb");
  if (!out) return "cannot open " + dest.string();
  CURL* curl = curl_easy_init();
  if (!curl) {
    std::fclose(out);
    return "curl initialisation failed";
  }
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_to_file);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, out);
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT, timeout);
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  const bool closed = std::fclose(out) == 0;
  if (rc != CURLE_OK) return curl_easy_strerror(rc);
  if (!closed) return "write error on " + dest.string();
  return {};
}

}  // namespace

std::vector<FetchEntry> load_fetch_manifest(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("fetch manifest " + path.string() + ": " + e.what());
  }
  if (!j.contains("files") || !j["files"].is_object()) {
    throw FormatError("fetch manifest " + path.string() + ": missing \"files\" object");
  }
  std::vector<FetchEntry> out;
  for (const auto& [key, value] : j["files"].items()) {
    FetchEntry e;
    e.key = key;
    if (value.contains("url") && value["url"].is_string()) e.url = value["url"].get<std::string>();
    if (value.contains("sha256") && value["sha256"].is_string()) e.sha256 = value["sha256"].get<std::string>();
    out.push_back(std::move(e));
  }
  return out;
}

FetchReport fetch(const std::vector<FetchEntry>& entries, const std::filesystem::path& raw_dir,
                  const FetchOptions& options) {
  for (const auto& e : entries) {
    if (e.url.empty()) {
      throw DataError("fetch manifest entry '" + e.key + "' has no url; set files." + e.key + ".url");
    }
  }
  curl_global_init(CURL_GLOBAL_DEFAULT);
  FetchReport report;
  for (const auto& e : entries) {
    const auto dest = raw_dir / e.key;
    if (std::filesystem::exists(dest) && (e.sha256.empty() || sha256_file(dest) == e.sha256)) {
      report.skipped.push_back(e.key);
      continue;
    }
    std::filesystem::create_directories(dest.parent_path());
    const auto part = std::filesystem::path(dest.string() + ".part");
    std::string error;
    for (int attempt = 1; attempt <= options.attempts; ++attempt) {
      error = download(e.url, part, options.timeout_seconds);
      if (error.empty()) break;
      spdlog::warn("fetch {} attempt {}/{} failed: {}", e.key, attempt, options.attempts, error);
    }
    if (!error.empty()) {
      std::filesystem::remove(part);
      curl_global_cleanup();
      throw DataError("fetch of '" + e.key + "' failed after " + std::to_string(options.attempts) +
                      " attempts: " + error);
    }
    if (!e.sha256.empty()) {
      const std::string got = sha256_file(part);
      if (got != e.sha256) {
        std::filesystem::remove(part);
        curl_global_cleanup();
        throw DataError("checksum mismatch for '" + e.key + "': expected " + e.sha256 + ", got " + got);
      }
    }
    std::filesystem::rename(part, dest);
    report.downloaded.push_back(e.key);
  }
  curl_global_cleanup();
  return report;
}

}  // namespace gig::data
