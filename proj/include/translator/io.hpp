#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "translator/approx.hpp"
#include "translator/picard.hpp"
#include "translator/series.hpp"
#include "translator/shooting.hpp"
#include "translator/validation.hpp"

namespace translator::io {

using Json = nlohmann::json;  // std::map backed, so keys come out sorted

/// Ordered key/value pairs recorded in the `#` comment line of every CSV.
using RunInfo = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits, enough to round-trip a double.
std::string fmt(double x);

void write_comment(std::ostream& os, const RunInfo& info);

// CSV ------------------------------------------------------------------------

/// l, numerator, denominator, float_value
void write_coefficients_csv(std::ostream& os, const CoefficientTable& table, const RunInfo& info);
/// l, sigma2, sigma3 (exact), sigma2_float, sigma3_float
void write_sums_csv(std::ostream& os, const SumTable& sums, const RunInfo& info);
/// r, phi, phi_prime
void write_profile_csv(std::ostream& os, const RadialProfile& profile, const RunInfo& info);
/// r, psi, w = exp(r) psi, upper_barrier = exp(-r)/(n-1)
void write_psi_csv(std::ostream& os, const Trajectory& psi, Dimension n, const RunInfo& info);
/// r, then one column per family member (empty where undefined), then limit
void write_family_csv(std::ostream& os, const FamilySweep& sweep, const RunInfo& info);
/// curve, parameter, r, y, log10_abs_y; y is psi or phi depending on the caller
void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves, const RunInfo& info);

// JSON -----------------------------------------------------------------------

Json to_json(const SumBoundReport& rep);
Json to_json(const DecayReport& rep);
Json to_json(const PicardDiagnostics& diag, const PicardConfig& config, Dimension n);
Json to_json(const ShootingResult& res);
Json to_json(const BoundCheck& check);
Json to_json(const FamilySweep& sweep);
Json to_json(const ResidualReport& rep);
Json to_json(const OriginReport& rep);
Json to_json(const PsiAsymptoticsReport& rep);
Json to_json(const ExpansionFit& fit);
Json to_json(const ComparisonMatrix& cmp);
Json to_json(const ValidationReport& rep);

}  // namespace translator::io
