#pragma once

#include "levelraiser/family.hpp"
#include "levelraiser/json_io.hpp"
#include "levelraiser/levelraise.hpp"

// JSON payloads shared by the command-line tool and the Python module.
namespace levelraiser::reports {

json_io::json plan_json(const raise::RaisePlan& pl);
json_io::json hypotheses_json(const raise::HypothesisReport& r);
json_io::json member_json(const family::FamilyMember& m);
json_io::json certificate_1427_json(const family::Certificate1427& c);

}  // namespace levelraiser::reports
