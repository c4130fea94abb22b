#ifndef LCSGEO_JSON_IO_HPP
#define LCSGEO_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "lcsgeo/blocks.hpp"
#include "lcsgeo/bounds.hpp"
#include "lcsgeo/gamma.hpp"
#include "lcsgeo/geometry.hpp"
#include "lcsgeo/property.hpp"

namespace lcsgeo {

using Json = nlohmann::json;

/// Non-finite doubles become null.
Json json_number(double v);
/// {"ln", "log10", "value"}.
Json to_json(const LogValue& v);

Json to_json(const TheoremParams& p);
Json to_json(const BoundReport& r);
Json to_json(const BinomialBound& b);
Json to_json(const CardinalityBound& c);
Json to_json(const ImprovedConditions& c);
Json to_json(const FeasibilityReport& r);

Json to_json(const BlockPartition& p);
Json to_json(const EventAReport& r);
Json to_json(const LemmaGapReport& r);
Json to_json(const EventBReport& r);
Json to_json(const QkEstimate& q);

Json to_json(const GammaEstimate& g);
Json to_json(const GammaCurve& c);
Json to_json(const DeltaEstimate& d);

Json to_json(const Envelope& e);
Json to_json(const DiagonalCheck& d);

/// Keys sorted, two-space indent, trailing newline.
std::string dump_report(const Json& j);

}  // namespace lcsgeo

#endif  // LCSGEO_JSON_IO_HPP
