#pragma once

#include "aah/error.hpp"

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>

namespace aah {

struct FetchPolicy {
  int max_attempts = 3;
  int base_backoff_ms = 500;  // doubles per retry
  int timeout_ms = 15000;
  int min_interval_ms = 250;  // global spacing between request starts

  // Throws Error(invalid_argument) when a field is out of bounds.
  void validate() const;
};

struct FetchResult {
  std::string url;
  std::string body;
  int status = 200;
  int attempts_used = 1;
};

struct LiveSource {};
struct FixtureSource {
  std::filesystem::path root;
};
struct MockSource {
  std::string endpoint;  // e.g. "http://127.0.0.1:8080"
};
using Source = std::variant<LiveSource, FixtureSource, MockSource>;

// "live" | "fixture:<dir>" | "mock:<url>"
Source parse_source(std::string_view spec);
std::string describe(const Source& source);

// Base URL every page of the source resolves against, and the entry (index) page.
std::string site_root(const Source& source);
std::string index_url(const Source& source);

inline constexpr std::string_view kUserAgent = "anthology-harvester/0.1 (literature harvesting tool)";

// Raised by fetch() for NotFound / Exhausted / Unresolvable outcomes.
class FetchError : public Error {
 public:
  FetchError(Errc code, const std::string& message, int attempts_used, int last_status)
      : Error(code, message), attempts_used_(attempts_used), last_status_(last_status) {}

  int attempts_used() const noexcept { return attempts_used_; }
  // Last HTTP status seen, 0 when no response arrived.
  int last_status() const noexcept { return last_status_; }

 private:
  int attempts_used_;
  int last_status_;
};

// Spaces request starts at least `spacing` apart across every caller.
class RateGate {
 public:
  using Clock = std::chrono::steady_clock;

  explicit RateGate(std::chrono::milliseconds spacing) : spacing_(spacing) {}

  // Blocks until the caller may start a request; returns the granted start time.
  Clock::time_point acquire();

 private:
  std::chrono::milliseconds spacing_;
  std::mutex mu_;
  Clock::time_point last_{};
  bool first_ = true;
};

// Thread-safe page retriever. Copies share one rate gate.
class Fetcher {
 public:
  Fetcher(FetchPolicy policy, Source source);

  FetchResult fetch(std::string_view url) const;

  const FetchPolicy& policy() const { return policy_; }
  const Source& source() const { return source_; }

 private:
  FetchResult fetch_fixture(const FixtureSource& fixture, std::string_view url) const;
  FetchResult fetch_http(std::string_view url) const;

  FetchPolicy policy_;
  Source source_;
  std::shared_ptr<RateGate> gate_;
};

// One-shot convenience wrapper with its own rate gate.
FetchResult fetch(std::string_view url, const FetchPolicy& policy, const Source& source);

}  // namespace aah
