#include "aah/fetcher.hpp"

#include "aah/url.hpp"

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

namespace aah {
namespace {

constexpr std::string_view kLiveRoot = "https://aclanthology.org";
constexpr std::string_view kFixtureRoot = "fixture://corpus";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void FetchPolicy::validate() const {
  if (max_attempts < 1) throw Error(Errc::invalid_argument, "max_attempts must be >= 1");
  if (base_backoff_ms < 0) throw Error(Errc::invalid_argument, "base_backoff_ms must be >= 0");
  if (timeout_ms <= 0) throw Error(Errc::invalid_argument, "timeout_ms must be > 0");
  if (min_interval_ms < 0) throw Error(Errc::invalid_argument, "min_interval_ms must be >= 0");
}

Source parse_source(std::string_view spec) {
  if (spec == "live") return LiveSource{};
  if (spec.rfind("fixture:", 0) == 0 && spec.size() > 8) return FixtureSource{std::filesystem::path(spec.substr(8))};
  if (spec.rfind("mock:", 0) == 0 && spec.size() > 5) {
    std::string endpoint(spec.substr(5));
    while (!endpoint.empty() && endpoint.back() == '/') endpoint.pop_back();
    if (!url::is_absolute(endpoint)) throw Error(Errc::invalid_argument, "mock endpoint must be an absolute URL");
    return MockSource{std::move(endpoint)};
  }
  throw Error(Errc::invalid_argument, "source must be live, fixture:<dir> or mock:<url>, got '" + std::string(spec) + "'");
}

std::string describe(const Source& source) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LiveSource>) {
          return "live";
        } else if constexpr (std::is_same_v<T, FixtureSource>) {
          return "fixture:" + s.root.string();
        } else {
          return "mock:" + s.endpoint;
        }
      },
      source);
}

std::string site_root(const Source& source) {
  if (std::holds_alternative<LiveSource>(source)) return std::string(kLiveRoot);
  if (std::holds_alternative<FixtureSource>(source)) return std::string(kFixtureRoot);
  return std::get<MockSource>(source).endpoint;
}

std::string index_url(const Source& source) {
  if (std::holds_alternative<LiveSource>(source)) return std::string(kLiveRoot) + "/";
  return site_root(source) + "/index.html";
}

RateGate::Clock::time_point RateGate::acquire() {
  // The lock is held while waiting so grants are issued strictly in order and
  // each one is measured from the previous grant's actual start.
  std::lock_guard lock(mu_);
  auto now = Clock::now();
  while (!first_ && now < last_ + spacing_) {
    std::this_thread::sleep_until(last_ + spacing_);
    now = Clock::now();
  }
  first_ = false;
  last_ = now;
  return now;
}

namespace {

// Extra spacing so the interval still holds where requests arrive, after
// connection setup and scheduling jitter have shifted individual starts.
std::chrono::milliseconds gate_spacing(int min_interval_ms) {
  return std::chrono::milliseconds(min_interval_ms + std::min(min_interval_ms / 2, 10));
}

}  // namespace

Fetcher::Fetcher(FetchPolicy policy, Source source)
    : policy_(policy), source_(std::move(source)), gate_(std::make_shared<RateGate>(gate_spacing(policy.min_interval_ms))) {
  policy_.validate();
}

FetchResult Fetcher::fetch(std::string_view target) const {
  if (const auto* fixture = std::get_if<FixtureSource>(&source_)) return fetch_fixture(*fixture, target);
  return fetch_http(target);
}

FetchResult Fetcher::fetch_fixture(const FixtureSource& fixture, std::string_view target) const {
  std::string relative;
  if (url::is_absolute(target)) {
    relative = url::parse(target)->path;
  } else {
    relative = std::string(target);
  }
  if (const auto q = relative.find_first_of("?#"); q != std::string::npos) relative.erase(q);
  while (!relative.empty() && relative.front() == '/') relative.erase(relative.begin());
  const auto normal = std::filesystem::path(relative).lexically_normal();
  if (relative.empty() || normal.empty() || *normal.begin() == "..") {
    throw FetchError(Errc::unresolvable, "cannot map '" + std::string(target) + "' into the fixture root", 1, 0);
  }
  const auto path = fixture.root / normal;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw FetchError(Errc::not_found, "fixture page not found: " + path.string(), 1, 404);
  }
  return FetchResult{std::string(target), read_file(path), 200, 1};
}

FetchResult Fetcher::fetch_http(std::string_view target) const {
  auto parts = url::parse(target);
  if (!parts || (parts->scheme != "http" && parts->scheme != "https")) {
    throw FetchError(Errc::unresolvable, "not an http(s) URL: '" + std::string(target) + "'", 0, 0);
  }
  const auto timeout = std::chrono::milliseconds(policy_.timeout_ms);
  constexpr int kMaxRedirects = 5;
  int redirects = 0;
  int last_status = 0;
  std::string last_problem;
  for (int attempt = 1; attempt <= policy_.max_attempts; ++attempt) {
    if (attempt > 1 && policy_.base_backoff_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(policy_.base_backoff_ms) * (1 << std::min(attempt - 2, 20)));
    }
    httplib::Client client(parts->origin());
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_keep_alive(false);
    const httplib::Headers headers = {{"User-Agent", std::string(kUserAgent)}};

    gate_->acquire();
    const auto response = client.Get(parts->path, headers);
    if (!response) {
      last_status = 0;
      last_problem = "transport error: " + httplib::to_string(response.error());
      continue;
    }
    last_status = response->status;
    if (last_status >= 200 && last_status < 300) {
      return FetchResult{std::string(target), response->body, last_status, attempt};
    }
    if (last_status >= 300 && last_status < 400 && response->has_header("Location") && redirects < kMaxRedirects) {
      // Redirect hops go back through the gate but do not consume an attempt.
      const auto next = url::parse(url::resolve(parts->origin() + parts->path, response->get_header_value("Location")));
      if (next && (next->scheme == "http" || next->scheme == "https")) {
        parts = next;
        ++redirects;
        --attempt;
        continue;
      }
    }
    if (last_status >= 400 && last_status < 500) {
      throw FetchError(Errc::not_found, "HTTP " + std::to_string(last_status) + " for " + std::string(target), attempt,
                       last_status);
    }
    last_problem = "HTTP " + std::to_string(last_status);
  }
  throw FetchError(Errc::exhausted,
                   "gave up on " + std::string(target) + " after " + std::to_string(policy_.max_attempts) +
                       " attempts (" + last_problem + ")",
                   policy_.max_attempts, last_status);
}

FetchResult fetch(std::string_view target, const FetchPolicy& policy, const Source& source) {
  return Fetcher(policy, source).fetch(target);
}

}  // namespace aah
