#include "levelraiser/lmfdb_client.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "levelraiser/error.hpp"
#include "levelraiser/json_io.hpp"

namespace levelraiser::lmfdb {

namespace fs = std::filesystem;
using json_io::json;

#ifndef LEVELRAISER_DEFAULT_FIXTURES
#define LEVELRAISER_DEFAULT_FIXTURES "fixtures/lmfdb"
#endif

ClientOptions default_options() {
  ClientOptions o;
  const char* dir = std::getenv("LEVELRAISER_FIXTURES");
  o.fixture_dir = dir ? dir : LEVELRAISER_DEFAULT_FIXTURES;
  if (const char* url = std::getenv("LEVELRAISER_LMFDB_URL")) o.base_url = url;
  return o;
}

CurveRecord load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::NotFound, "no fixture at " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "malformed fixture " + path + ": " + e.what());
  }
  CurveRecord r = json_io::parse_record(j);
  r.source = "fixture";
  return r;
}

namespace {

bool is_ainvs_query(const std::string& q) { return q.find(',') != std::string::npos; }

std::optional<CurveRecord> find_fixture(const std::string& query, const std::string& dir) {
  if (dir.empty() || !fs::is_directory(dir)) return std::nullopt;
  if (!is_ainvs_query(query)) {
    fs::path path = fs::path(dir) / (query + ".json");
    if (!fs::exists(path)) return std::nullopt;
    return load_fixture(path.string());
  }
  const auto wanted = ec::EllipticCurve::parse(query).ainvs();
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    CurveRecord r = load_fixture(path.string());
    if (r.ainvs == wanted) return r;
  }
  return std::nullopt;
}

// Serializes live calls and spaces them at least one second apart.
class RateLimiter {
 public:
  std::unique_lock<std::mutex> acquire() {
    std::unique_lock<std::mutex> lock(mutex_);
    auto now = std::chrono::steady_clock::now();
    if (now < next_) std::this_thread::sleep_for(next_ - now);
    next_ = std::chrono::steady_clock::now() + std::chrono::seconds(1);
    return lock;
  }

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::time_point next_{};
};

RateLimiter& limiter() {
  static RateLimiter instance;
  return instance;
}

json get_json(const std::string& base_url, const std::string& path) {
  auto lock = limiter().acquire();
  httplib::Client client(base_url);
  client.set_connection_timeout(10);
  client.set_read_timeout(20);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res) {
    throw Error(ErrorKind::NetworkUnavailable,
                "request to " + base_url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::NetworkUnavailable, "HTTP " + std::to_string(res->status) + " from " + base_url);
  }
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::NetworkUnavailable, std::string("unparseable response: ") + e.what());
  }
}

CurveRecord fetch_live(const std::string& query, const ClientOptions& options) {
  std::string filter;
  if (is_ainvs_query(query)) {
    auto a = ec::EllipticCurve::parse(query).ainvs();
    filter = "ainvs=li";
    for (std::size_t i = 0; i < 5; ++i) filter += (i ? "," : "") + to_string(a[i]);
  } else {
    filter = "lmfdb_label=" + query;
  }
  json curves = get_json(options.base_url, "/api/ec_curvedata/?_format=json&" + filter);
  if (!curves.contains("data") || curves["data"].empty()) throw Error(ErrorKind::NotFound, "no LMFDB curve " + query);
  const json& c = curves["data"][0];

  CurveRecord r;
  r.label = c.at("lmfdb_label").get<std::string>();
  const auto& a = c.at("ainvs");
  for (std::size_t i = 0; i < 5; ++i) r.ainvs[i] = json_io::to_integer(a.at(i));
  r.conductor = json_io::to_integer(c.at("conductor")).get_si();
  r.isogeny_class_size = c.value("class_size", 0);

  const std::string iso = c.at("lmfdb_iso").get<std::string>();
  json classes = get_json(options.base_url, "/api/ec_classdata/?_format=json&lmfdb_iso=" + iso);
  if (classes.contains("data") && !classes["data"].empty()) {
    const json& cls = classes["data"][0];
    if (r.isogeny_class_size == 0) r.isogeny_class_size = cls.value("class_size", 0);
    if (cls.contains("aplist")) {
      auto primes = primes_up_to(1000);
      std::size_t i = 0;
      for (const auto& ap : cls["aplist"]) {
        if (i >= primes.size()) break;
        r.aplist.emplace_back(primes[i++], ap.get<std::int64_t>());
      }
    }
  }
  r.source = "live";
  return r;
}

}  // namespace

CurveRecord fetch_curve(const std::string& query, const ClientOptions& options) {
  if (auto r = find_fixture(query, options.fixture_dir)) return *r;
  if (options.offline) throw Error(ErrorKind::NetworkUnavailable, "offline and no fixture for " + query);
  return fetch_live(query, options);
}

CrosscheckReport crosscheck_ap(const ec::EllipticCurve& curve, const CurveRecord& record, std::int64_t bound) {
  CrosscheckReport report;
  report.bound = bound;
  const ec::EllipticCurve minimal = ec::minimal_model(curve);
  for (const auto& [p, expected] : record.aplist) {
    if (p > bound) continue;
    if (minimal.discriminant() % p == 0) continue;
    std::int64_t got = ec::ap(minimal, p);
    if (got != expected) {
      throw Error(ErrorKind::Mismatch, "a_" + std::to_string(p) + ": computed " + std::to_string(got) +
                                           ", record " + std::to_string(expected));
    }
    ++report.compared;
  }
  return report;
}

}  // namespace levelraiser::lmfdb
