#pragma once

// Canonical JSON forms of the library's value types. Field names follow the
// C++ members; element lists are always explicit.

#include <json.hpp>

#include "fup/baker.hpp"
#include "fup/cantor.hpp"
#include "fup/diophantine.hpp"
#include "fup/rational.hpp"
#include "fup/spectral.hpp"
#include "fup/testfn.hpp"

namespace fup {

using json = nlohmann::ordered_json;

void to_json(json& j, const ExactRational& r);
void from_json(const json& j, ExactRational& r);

void to_json(json& j, const Alphabet& a);
Alphabet alphabet_from_json(const json& j);

void to_json(json& j, const CantorSet& c);
CantorSet cantor_from_json(const json& j);  // re-derives and checks elements

void to_json(json& j, const DilatedCantorSet& d);
DilatedCantorSet dilated_from_json(const json& j);

void to_json(json& j, const NormCertificate& c);
void to_json(json& j, const FupExponentReport& r);
void to_json(json& j, const ZCertificate& z);
void to_json(json& j, const TailBoundCheck& t);
void to_json(json& j, const Theorem1Certificate& c);
void to_json(json& j, const RationalApprox& r);
void to_json(json& j, const ExpSumBounds& b);
void to_json(json& j, const Theorem2Report& r);
void to_json(json& j, const PowerNorm& p);
void to_json(json& j, const GelfandReport& r);

}  // namespace fup
