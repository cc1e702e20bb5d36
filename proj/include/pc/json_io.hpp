#pragma once

#include "pc/bounds.hpp"
#include "pc/chabauty.hpp"
#include "pc/expectation.hpp"
#include "pc/model.hpp"
#include "pc/projred.hpp"
#include "pc/series.hpp"

#include <json.hpp>

namespace pc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "padic-chabauty/1";

// Exact rationals serialize as "num" or "num/den".
std::string rational_string(const Rational& r);

Json to_json(const PadicNumber& x);
Json to_json(const PadicPoly& f);
Json to_json(const TruncatedSeries& s);
Json to_json(const ProjPointFp& pt);
Json to_json(const ReductionImage& img);
Json to_json(const NewtonPolygon& np);
Json to_json(const NAndN& nn);
Json to_json(const WeierstrassFactorization& w);
Json to_json(const PatchNode& node);
Json to_json(const DecentModel& model);
Json to_json(const MCResult& r);
Json to_json(const EnumResult& r);
Json to_json(const X0Report& r);
Json to_json(const FrequencyTable& t);
Json to_json(const ResidueDisk& d);
Json to_json(const DiskExpansion& e);
Json to_json(const DiskResult& r);
Json to_json(const HypothesesReport& r);
Json to_json(const RhoLogResult& r);
Json to_json(const BoundReport& b);

// Wraps a payload as {"schema": ..., "command": ..., "result": payload}.
Json document(const std::string& command, Json result);

}  // namespace pc
