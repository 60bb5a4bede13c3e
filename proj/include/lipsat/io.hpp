#pragma once

// Input files, JSON encodings of verdicts and result sets, and the SVG plot.

#include "lipsat/saturation.hpp"
#include "lipsat/semigroup.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lipsat::io {

using intlin::IntegerVector;
using semigroup::AffineSemigroup;
using semigroup::Box;

struct SemigroupFile {
  std::string name;
  AffineSemigroup semigroup;
};

/// Accepts {"dim": d, "generators": [[...], ...], "name": "..."} or plain
/// text with one generator per line ('#' starts a comment). Negative
/// entries, zero vectors and duplicate generators are rejected.
SemigroupFile parse_semigroup(std::string_view text);

nlohmann::json integer_to_json(const intlin::Integer &x);
intlin::Integer integer_from_json(const nlohmann::json &j);
nlohmann::json vector_to_json(const IntegerVector &v);
IntegerVector vector_from_json(const nlohmann::json &j);
nlohmann::json points_to_json(const std::vector<IntegerVector> &pts);
nlohmann::json semigroup_to_json(const AffineSemigroup &s, std::string_view name = {});

nlohmann::json certificate_to_json(const saturation::MembershipVerdict &v);
nlohmann::json verdict_to_json(const saturation::MembershipVerdict &v, bool with_certificate = true);
/// Throws Error(Parse) on malformed input.
saturation::MembershipVerdict verdict_from_json(const nlohmann::json &j);

struct VerifySummary {
  std::size_t checked = 0;
  std::vector<std::size_t> failed; ///< positions in results.verdicts
};

/// Re-verifies every verdict of a report that carries a certificate.
/// Throws Error(Parse) when the report lacks the input semigroup.
VerifySummary verify_report(const nlohmann::json &report);

/// Lattice points of a planar box in four classes: the semigroup, the
/// Campillo closure minus the semigroup, the saturation minus the closure,
/// and everything else.
std::string render_plot_svg(const AffineSemigroup &s, const Box &box, unsigned jobs = 1);

} // namespace lipsat::io
