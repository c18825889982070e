#include "runbinom/oeis.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <curl/curl.h>

#include "runbinom/error.hpp"

namespace runbinom {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(std::size_t line, std::string_view why) {
  throw Error(ErrorCode::parse_error, "b-file line " + std::to_string(line) + ": " + std::string(why));
}

std::int64_t parse_index(std::string_view token, std::size_t line) {
  BigInt value;
  try {
    value = parse_bigint(token);
  } catch (const Error&) {
    malformed(line, "bad index '" + std::string(token) + "'");
  }
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
    malformed(line, "index out of range");
  }
  return value.convert_to<std::int64_t>();
}

std::mutex fetch_mutex;
std::optional<std::chrono::steady_clock::time_point> last_fetch;
constexpr std::chrono::milliseconds fetch_spacing{1000};

std::size_t write_body(char* data, std::size_t size, std::size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

}  // namespace

BFile parse_bfile(std::string_view text, std::string anumber) {
  BFile bfile{std::move(anumber), {}};
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto gap = line.find_first_of(" \t");
    if (gap == std::string_view::npos) malformed(line_no, "expected '<index> <value>'");
    const std::string_view index_token = line.substr(0, gap);
    const std::string_view value_token = trim(line.substr(gap));
    if (value_token.find_first_of(" \t") != std::string_view::npos) malformed(line_no, "trailing fields");
    const std::int64_t index = parse_index(index_token, line_no);
    BigInt value;
    try {
      value = parse_bigint(value_token);
    } catch (const Error&) {
      malformed(line_no, "bad value '" + std::string(value_token) + "'");
    }
    if (!bfile.entries.empty() && index != bfile.entries.back().first + 1) {
      throw Error(ErrorCode::gap_error, "b-file line " + std::to_string(line_no) + ": index " +
                                            std::to_string(index) + " does not follow " +
                                            std::to_string(bfile.entries.back().first));
    }
    bfile.entries.emplace_back(index, std::move(value));
  }
  return bfile;
}

bool is_valid_anumber(std::string_view anumber) {
  if (anumber.size() != 7 || anumber.front() != 'A') return false;
  for (char ch : anumber.substr(1)) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

std::string bfile_url(std::string_view anumber) {
  return "https://oeis.org/" + std::string(anumber) + "/b" + std::string(anumber.substr(1)) + ".txt";
}

std::string http_get(const std::string& url) {
  static const bool initialized = curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK;
  if (!initialized) throw Error(ErrorCode::network_error, "libcurl initialization failed");
  CURL* curl = curl_easy_init();
  if (curl == nullptr) throw Error(ErrorCode::network_error, "libcurl handle allocation failed");
  std::string body;
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT, 60L);
  curl_easy_setopt(curl, CURLOPT_USERAGENT, "runbinom");
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_body);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl);
  long status = 0;
  curl_easy_getinfo(curl, CURLINFO_RESPONSE_CODE, &status);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) throw Error(ErrorCode::network_error, url + ": " + curl_easy_strerror(rc));
  if (status != 200) throw Error(ErrorCode::network_error, url + ": HTTP " + std::to_string(status));
  return body;
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("RUNBINOM_OEIS_CACHE"); env != nullptr && *env != '\0') return env;
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "runbinom" / "oeis";
  }
  return std::filesystem::path(".runbinom-cache") / "oeis";
}

BFile fetch_bfile(std::string_view anumber, const std::filesystem::path& cache_dir, bool offline,
                  const Fetcher& fetcher) {
  if (!is_valid_anumber(anumber)) {
    throw Error(ErrorCode::usage, "malformed A-number '" + std::string(anumber) + "'");
  }
  const auto path = cache_dir / (std::string(anumber) + ".txt");
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
    std::ostringstream bytes;
    bytes << in.rdbuf();
    return parse_bfile(bytes.str(), std::string(anumber));
  }
  if (offline) throw Error(ErrorCode::offline_miss, std::string(anumber) + " is not cached in " + cache_dir.string());

  std::string body;
  {
    std::lock_guard lock(fetch_mutex);
    if (last_fetch) {
      const auto ready = *last_fetch + fetch_spacing;
      if (std::chrono::steady_clock::now() < ready) std::this_thread::sleep_until(ready);
    }
    try {
      body = fetcher(bfile_url(anumber));
    } catch (...) {
      last_fetch = std::chrono::steady_clock::now();
      throw;
    }
    last_fetch = std::chrono::steady_clock::now();
  }
  BFile parsed = parse_bfile(body, std::string(anumber));

  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create " + cache_dir.string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  return parsed;
}

Comparison compare(const BFile& bfile, const std::vector<BigInt>& computed, std::optional<std::int64_t> offset) {
  Comparison result;
  if (bfile.entries.empty()) {
    result.unchecked = computed.size();
    return result;
  }
  const std::int64_t first = bfile.entries.front().first;
  const std::int64_t start = offset.value_or(first);
  for (std::size_t i = 0; i < computed.size(); ++i) {
    const std::int64_t index = start + static_cast<std::int64_t>(i);
    const std::int64_t pos = index - first;
    if (pos < 0 || pos >= static_cast<std::int64_t>(bfile.entries.size())) {
      ++result.unchecked;
      continue;
    }
    const BigInt& expected = bfile.entries[static_cast<std::size_t>(pos)].second;
    if (expected != computed[i]) {
      result.first_mismatch = Mismatch{index, expected, computed[i]};
      return result;
    }
    ++result.matched;
  }
  return result;
}

std::string to_text(const Comparison& comparison) {
  std::string text;
  if (comparison.first_mismatch) {
    const Mismatch& m = *comparison.first_mismatch;
    text = "MISMATCH at index " + std::to_string(m.index) + ": b-file " + to_string(m.expected) +
           ", computed " + to_string(m.computed) + " (" + std::to_string(comparison.matched) +
           " terms matched before)";
  } else {
    text = "MATCH " + std::to_string(comparison.matched) + " terms";
  }
  if (comparison.unchecked > 0) text += ", " + std::to_string(comparison.unchecked) + " beyond the b-file";
  return text;
}

}  // namespace runbinom
