#pragma once

#include <string>

#include "revcone/groundstate.hpp"
#include "revcone/spectra.hpp"
#include "revcone/symmetry.hpp"

// single-header nlohmann/json from vendor/
#include "json.hpp"

namespace revcone::io {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;

json to_json(const geometry::ExponentReport& r);
json to_json(const cones::MembershipReport& r);
json to_json(const elliptic::SolveStats& s);
json to_json(const groundstate::GroundStateResult& r);
json to_json(const spectra::SpectralResult& r);
json to_json(const groundstate::MoserSequence& s);
json to_json(const groundstate::DecayReport& r);
json to_json(const symmetry::BreakingVerdict& v);

// field CSV: r,theta[,phi],value,weight rows over active cells, plus a JSON
// sidecar <path>.meta.json with domain id, split, class and cell counts
void write_field_csv(const discretize::Field& f, const std::string& path);
discretize::Field read_field_csv(const std::string& path);

void write_profile_csv(const spectra::Profile1D& p, const std::string& path,
                       const std::string& xname, const std::string& vname);

void write_trace_csv(const std::vector<groundstate::TraceRow>& trace, const std::string& path);

void write_residual_history_csv(const elliptic::SolveStats& stats, const std::string& path);

void write_text(const std::string& path, const std::string& content);

}  // namespace revcone::io
