// JSON / CSV serialization of reports and the layout dump schema. All JSON
// uses ordered keys and shortest round-trip doubles, so equal runs produce
// byte-identical payloads.
#pragma once

#include <string>

#include <json.hpp>

#include "boolsim/estimators.hpp"
#include "boolsim/layout.hpp"
#include "boolsim/multiscale.hpp"
#include "boolsim/slice.hpp"

namespace boolsim {

using Json = nlohmann::ordered_json;

Json to_json(const BernoulliEstimate& e);
Json to_json(const Rect& r);
Json to_json(const Lemma1Layout& layout);
Json to_json(const KnittingReport& rep);
Json to_json(const LayoutInvariantReport& rep);
Json to_json(const RecursionCheck& rc);
Json to_json(const BoundChain& bc);
Json to_json(const ScaleTerm& t);
Json to_json(const SummabilityCertificate& cert);
Json to_json(const HJCheck& hj);
Json to_json(const VacancyCertificate& vc);
Json to_json(const SliceReport& rep);
Json to_json(const ThresholdEstimate& est);
Json to_json(const DiameterEstimate& est);
Json to_json(const CensorBracket& cb);
Json to_json(const EEventReport& rep);
Json grains_to_json(const GrainSet& set, bool include_grains = true);
Json witness_to_json(const Rect& rect, const GrainSet& set,
                     const std::vector<int>& chain);

// CSV emitters for the tabular outputs (full double precision).
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string certificate_csv(const SummabilityCertificate& cert);
std::string threshold_csv(const ThresholdEstimate& est);

void write_text_file(const std::string& path, const std::string& content);

} // namespace boolsim
