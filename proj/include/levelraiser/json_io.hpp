#pragma once

// JSON encoders and decoders shared by the CLI and the Python bindings.

#include "json.hpp"

#include "levelraiser/coeff_arith.hpp"
#include "levelraiser/ec_arith.hpp"
#include "levelraiser/lmfdb_client.hpp"
#include "levelraiser/modsym.hpp"

namespace levelraiser::json_io {

using nlohmann::json;

/// Integers that fit in 64 bits are emitted as numbers, larger ones as strings.
json integer(const Integer& n);
Integer to_integer(const json& j);
json rational(const Rational& q);

json mod_matrix(const ModMatrix& m);
ModMatrix parse_mod_matrix(const json& j);

json curve(const ec::EllipticCurve& e);
json characteristic(const coeff::CongruenceCharacteristic& c);
json polynomial(const std::vector<Integer>& coeffs);

json witness(const modsym::EigensystemWitness& w);
modsym::EigensystemWitness parse_witness(const json& j);

json record(const lmfdb::CurveRecord& r);
lmfdb::CurveRecord parse_record(const json& j);

}  // namespace levelraiser::json_io
