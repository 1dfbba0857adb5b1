#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "instsym/adhm.hpp"
#include "instsym/fields.hpp"
#include "instsym/symmetry.hpp"

namespace instsym {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quaternions are [w, x, y, z]; matrices {"rows", "cols", "data": [[q, ...], ...]}.
json to_json(const Quaternion& q);
json to_json(const QuatMatrix& m);
json to_json(const RMat& m);
json to_json(const StandardData& d);
json to_json(const ADHMPair& p);
json to_json(const GaugeElement& g);
json to_json(const ValidationReport& r);
json to_json(const SymmetryCertificate& c);
json to_json(const SolveResult& r);
json to_json(const MonopoleSample& s);
json to_json(const HolonomySpectrum& h);

Quaternion quat_from_json(const json& j);
QuatMatrix quatmat_from_json(const json& j);
RMat realmat_from_json(const json& j);
StandardData standard_from_json(const json& j);
ADHMPair pair_from_json(const json& j);
SymmetryCertificate certificate_from_json(const json& j);

// A data file holds either standard data (keys L, M) or a raw pair (keys a, b).
using DataFile = std::variant<StandardData, ADHMPair>;
DataFile data_from_json(const json& j);
json parse_json_text(const std::string& text);

}  // namespace instsym
