#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "schottky/numeric.hpp"
#include "schottky/oracle.hpp"
#include "schottky/pingpong.hpp"
#include "schottky/projection.hpp"
#include "schottky/torus.hpp"

namespace schottky::report {

using Json = nlohmann::ordered_json;

/// Two-space indentation, keys in insertion order, every float as "%.17g",
/// trailing newline. Exact integers are stored as decimal strings upstream.
std::string dump(const Json& value);

Json to_json(const HugeInt& value);
Json to_json(const torus::ThickParams& params);
Json to_json(const projection::PairGeometry& geometry);
Json to_json(const projection::Thresholds& thresholds);
Json to_json(const pingpong::PingPongCertificate& cert);
/// wall_time is left out so that repeated runs serialize identically.
Json to_json(const oracle::WordReport& report);

/// Reads back what to_json(PingPongCertificate) wrote. Paper-mode constants
/// are not reconstructed; the mode is kept so callers can refuse them.
pingpong::PingPongCertificate certificate_from_json(const Json& value);

}  // namespace schottky::report
