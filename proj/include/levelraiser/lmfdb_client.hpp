#pragma once

// Read-only access to LMFDB elliptic-curve data, either from committed
// fixtures (fixtures/lmfdb/<label>.json) or from the live HTTP API.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "levelraiser/ec_arith.hpp"
#include "levelraiser/numtheory.hpp"

namespace levelraiser::lmfdb {

struct CurveRecord {
  std::string label;
  std::array<Integer, 5> ainvs;
  std::int64_t conductor = 0;
  int isogeny_class_size = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> aplist;  // (p, a_p)
  std::string source;                                         // "fixture" or "live"

  ec::EllipticCurve curve() const { return ec::EllipticCurve(ainvs); }
};

struct ClientOptions {
  std::string fixture_dir;
  std::string base_url = "https://www.lmfdb.org";
  bool offline = false;
};

/// Fixture directory from LEVELRAISER_FIXTURES (else the build default),
/// base URL from LEVELRAISER_LMFDB_URL.
ClientOptions default_options();

/// `query` is an LMFDB label ("11.a2") or comma-separated a-invariants.
/// Fixtures are consulted first; live queries only when not offline.
CurveRecord fetch_curve(const std::string& query, const ClientOptions& options = default_options());

/// Fixture lookup only; nullopt-like behavior is expressed by NotFound.
CurveRecord load_fixture(const std::string& path);

struct CrosscheckReport {
  std::int64_t bound = 0;
  std::size_t compared = 0;
};

/// Compares ap(E, p) with the record for all common good p <= bound;
/// throws Mismatch naming the first disagreeing prime.
CrosscheckReport crosscheck_ap(const ec::EllipticCurve& curve, const CurveRecord& record, std::int64_t bound);

}  // namespace levelraiser::lmfdb
