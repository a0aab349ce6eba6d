#pragma once

// JSON forms of configurations and reports. Non-finite numbers are written
// as null and read back as NaN.

#include "varest/bandwidth.hpp"
#include "varest/diffseq.hpp"
#include "varest/estimator.hpp"
#include "varest/scenario.hpp"
#include "varest/simlab.hpp"
#include "varest/smoother.hpp"

#include <nlohmann/json.hpp>

namespace varest {

using json = nlohmann::json;

void to_json(json& j, const SmootherConfig& c);
void from_json(const json& j, SmootherConfig& c);

void to_json(json& j, const SequenceSpec& s);
void from_json(const json& j, SequenceSpec& s);

void to_json(json& j, const BandwidthRule& r);
void from_json(const json& j, BandwidthRule& r);

void to_json(json& j, const EstimatorConfig& e);
void from_json(const json& j, EstimatorConfig& e);

void to_json(json& j, const FunctionSpec& f);
void from_json(const json& j, FunctionSpec& f);

void to_json(json& j, const ErrorLaw& e);
void from_json(const json& j, ErrorLaw& e);

void to_json(json& j, const HoelderClassSpec& h);
void from_json(const json& j, HoelderClassSpec& h);

void to_json(json& j, const Scenario& s);
void from_json(const json& j, Scenario& s);

void to_json(json& j, const GridSpec& g);
void from_json(const json& j, GridSpec& g);

void to_json(json& j, const PointRisk& p);
void from_json(const json& j, PointRisk& p);

void to_json(json& j, const RiskReport& r);
void from_json(const json& j, RiskReport& r);

void to_json(json& j, const RatePoint& p);
void from_json(const json& j, RatePoint& p);

void to_json(json& j, const RateReport& r);
void from_json(const json& j, RateReport& r);

void to_json(json& j, const NormalityReport& r);
void from_json(const json& j, NormalityReport& r);

void to_json(json& j, const MeanEffectPoint& p);
void from_json(const json& j, MeanEffectPoint& p);

void to_json(json& j, const MeanEffectReport& r);
void from_json(const json& j, MeanEffectReport& r);

void to_json(json& j, const BiasVarianceReport& r);

void to_json(json& j, const CvScore& s);
void from_json(const json& j, CvScore& s);

void to_json(json& j, const CvReport& r);
void from_json(const json& j, CvReport& r);

//! Provenance sidecar of a variance estimate (everything except values).
json provenance_json(const VarianceEstimate& estimate);

//! Difference sequence summary: coefficients, order, C and (2r+1)/r.
json sequence_summary(const DifferenceSequence& seq);

//! Canonical text form used for every emitted JSON file.
std::string dump(const json& j);

} // namespace varest

namespace nlohmann {

template<>
struct adl_serializer<varest::DifferenceSequence>
{
  static varest::DifferenceSequence from_json(const json& j)
  {
    return varest::DifferenceSequence::validate(j.get<std::vector<double>>());
  }
  static void to_json(json& j, const varest::DifferenceSequence& s)
  {
    j = std::vector<double>(s.coeffs().begin(), s.coeffs().end());
  }
};

} // namespace nlohmann
